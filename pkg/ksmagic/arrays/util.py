from typing import Optional

from ksmagic.arrays.magic import Permutation, find_contradiction_perm

AVAILABLE_PERMUTATIONS = ["cycle", "pairs", "reversal", "swap", "contradiction", "commuting-contradiction"]


def prepare_permutation(setting: Optional[str], q: int) -> Optional[Permutation]:
    """Return the permutation requested by name or as an explicit comma separated list.

    None selects the cycle (2, 3, ..., q, 1), which is a contradiction array for every q. The contradiction
    settings may yield None when no such permutation exists.
    """
    if setting is None or setting.strip() == "":
        return Permutation.cycle(q)

    setting = setting.strip().lower()

    if setting[0].isdigit():
        perm = Permutation.parse(setting)
        if len(perm) != q:
            raise ValueError(f"Permutation {perm} acts on {len(perm)} qubits, expected {q}.")
        return perm
    elif setting == "cycle":
        return Permutation.cycle(q)
    elif setting in ["pairs", "involution"]:
        return Permutation.pairs(q)
    elif setting == "reversal":
        return Permutation.reversal(q)
    elif setting == "swap":
        if q != 2:
            raise ValueError(f"The swap permutation exists for q=2 only, got q={q}.")
        return Permutation.swap()
    elif setting == "contradiction":
        return find_contradiction_perm(q)
    elif setting == "commuting-contradiction":
        return find_contradiction_perm(q, require_commuting_contexts=True)
    else:
        raise ValueError(f"Unknown permutation setting '{setting}', expected one of "
                         f"{', '.join(AVAILABLE_PERMUTATIONS)} or a list like 2,3,1.")
