"""
Tests for ksmagic.arrays.forms and ksmagic.classical.oracle: noncontextual assignments and exhaustive bounds.
"""
import pytest

from ksmagic.arrays.forms import GENERALIZED, MERMIN_PERES, ORIENTED, generalized_form, make_form, \
    mermin_peres_form
from ksmagic.arrays.magic import Permutation, build, find_contradiction_perm
from ksmagic.classical.oracle import Assignment, brute_max, cell_index, eval_xks2, eval_xksq, evaluate_form, \
    quantum_value_of, verify_parity_identity
from ksmagic.exceptions import BudgetExceeded


def _with_cell(q, i, j, value):
    values = [1] * (3 * (q + 1))
    values[cell_index(q, i, j)] = value
    return Assignment(q, tuple(values))


class TestAssignment:

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            Assignment(2, (1,) * 8)

    def test_rejects_non_unit_values(self):
        with pytest.raises(ValueError):
            Assignment(2, (1,) * 8 + (0,))

    def test_index_order(self):
        assert Assignment.all_plus(2).to_index() == 0
        assert Assignment.from_index(2, 1).values[-1] == -1
        assert Assignment.from_index(2, 2 ** 8).value(1, 1) == -1
        with pytest.raises(ValueError):
            Assignment.from_index(2, 2 ** 9)

    def test_index_round_trip(self, rng):
        for _ in range(20):
            a = Assignment.random(3, rng)
            assert Assignment.from_index(3, a.to_index()) == a


class TestEvaluation:

    def test_two_qubit_all_plus(self):
        assert eval_xks2(Assignment.all_plus(2)) == 4

    def test_two_qubit_corner_flip(self):
        # R3 and C3 both flip; with C3 entering negatively the two changes cancel
        assert eval_xks2(_with_cell(2, 3, 3, -1)) == 4

    def test_two_qubit_single_flip(self):
        assert eval_xks2(_with_cell(2, 1, 1, -1)) == 0

    def test_two_qubit_needs_q2(self):
        with pytest.raises(ValueError):
            eval_xks2(Assignment.all_plus(3))

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 6])
    def test_generalized_all_plus(self, q):
        array = build(q, Permutation.cycle(q))
        assert eval_xksq(array, Assignment.all_plus(q)) == q + 2

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            eval_xksq(build(3, Permutation.cycle(3)), Assignment.all_plus(2))

    def test_oriented_matches_generalized_on_contradictions(self, rng):
        array = build(4, Permutation.cycle(4))
        generalized, oriented = make_form(GENERALIZED, array), make_form(ORIENTED, array)
        for _ in range(50):
            a = Assignment.random(4, rng)
            assert evaluate_form(generalized, a) == evaluate_form(oriented, a)

    def test_unknown_form(self):
        with pytest.raises(ValueError):
            make_form("chsh", build(2, Permutation.swap()))
        with pytest.raises(ValueError):
            mermin_peres_form(build(3, Permutation.cycle(3)))


class TestParityIdentity:

    def test_mermin_peres(self, rng):
        array = build(2, Permutation.swap())
        for _ in range(50):
            assert verify_parity_identity(array, Assignment.random(2, rng)) == 1

    def test_all_minus(self):
        array = build(3, Permutation.cycle(3))
        assert verify_parity_identity(array, Assignment(3, (-1,) * 12)) == 1

    def test_random_assignments(self, rng):
        for _ in range(1000):
            q = int(rng.integers(2, 7))
            array = build(q, Permutation.cycle(q))
            assert verify_parity_identity(array, Assignment.random(q, rng)) == 1


class TestQuantumValue:

    def test_mermin_peres(self):
        array = build(2, Permutation.swap())
        assert quantum_value_of(mermin_peres_form(array), array) == 6

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 6])
    def test_contradiction_arrays(self, q):
        array = build(q, find_contradiction_perm(q))
        assert quantum_value_of(generalized_form(array), array) == q + 4

    def test_reversal(self):
        array = build(4, Permutation.reversal(4))
        assert quantum_value_of(generalized_form(array), array) == 6
        assert quantum_value_of(generalized_form(array, oriented=True), array) == 8


class TestBruteMax:

    def test_mermin_peres_bound(self):
        result = brute_max(build(2, Permutation.swap()), form=MERMIN_PERES)
        assert result.classical_max == 4
        assert result.quantum_value == 6
        assert result.search_space_size == 512
        assert result.argmax == Assignment.all_plus(2)

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 6])
    def test_contradiction_bound(self, q):
        array = build(q, find_contradiction_perm(q))
        result = brute_max(array)
        assert result.classical_max == q + 2
        assert result.quantum_value == q + 4
        assert eval_xksq(array, result.argmax) == q + 2

    def test_generalized_bound_for_any_permutation(self):
        result = brute_max(build(4, Permutation.reversal(4)), form=GENERALIZED)
        assert result.classical_max == 6

    def test_reversal_without_contradiction(self):
        result = brute_max(build(4, Permutation.reversal(4)))
        assert result.classical_max == 8
        assert result.quantum_value == 8
        assert result.argmax == Assignment.all_plus(4)

    def test_argmax_is_lexicographically_smallest(self):
        array = build(2, Permutation.swap())
        result = brute_max(array, form=GENERALIZED)
        form = make_form(GENERALIZED, array)
        maximizers = [i for i in range(512) if evaluate_form(form, Assignment.from_index(2, i)) == 4]
        assert result.argmax.to_index() == min(maximizers)

    def test_budget(self, monkeypatch):
        monkeypatch.setenv("KSMAGIC_MAX_BRUTE_QUBITS", "2")
        with pytest.raises(BudgetExceeded):
            brute_max(build(3, Permutation.cycle(3)))

    def test_budget_override_must_be_integer(self, monkeypatch):
        monkeypatch.setenv("KSMAGIC_MAX_BRUTE_QUBITS", "many")
        with pytest.raises(ValueError):
            brute_max(build(2, Permutation.swap()))
