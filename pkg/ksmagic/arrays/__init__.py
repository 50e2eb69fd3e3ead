from ksmagic.arrays.magic import Permutation, MagicArray, CommutationReport, ContextReport, build, m_of, \
    count_zx_orderings, row_product, col_product, context_products, grand_product, commutation_report, \
    find_contradiction_perm, derangements, fixed_point_free_involutions
from ksmagic.arrays.forms import XksForm, ContextTerm, mermin_peres_form, generalized_form, make_form, \
    AVAILABLE_FORMS
