"""Noncontextual hidden-variable assignments and exhaustive classical bounds.

Cells are numbered row-major. For enumeration an assignment is an integer whose most significant bit belongs to
cell (1, 1); a set bit means -1. Integer order is then the lexicographic order of value tuples with +1 < -1.
"""
import sys
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy
from tqdm import tqdm

from ksmagic.arrays.forms import XksForm, generalized_form, make_form, mermin_peres_form, ORIENTED
from ksmagic.arrays.magic import MagicArray, N_ROWS, Permutation, build
from ksmagic.config import CONFIG, brute_force_budget
from ksmagic.core.pauli import scalar_value
from ksmagic.exceptions import BudgetExceeded, InvariantViolation
from ksmagic.utilities.util import signs


@dataclass(frozen=True)
class Assignment:
    q: int
    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)

        expected = N_ROWS * (self.q + 1)
        if len(values) != expected:
            raise ValueError(f"Incomplete assignment: {len(values)} values for {expected} cells (q={self.q}).")
        if any(v not in (1, -1) for v in values):
            raise ValueError(f"Assignment values must be +1 or -1, got {sorted(set(values))}.")

    @property
    def n_cells(self) -> int:
        return len(self.values)

    def value(self, i: int, j: int) -> int:
        return self.values[cell_index(self.q, i, j)]

    def to_index(self) -> int:
        index = 0
        for v in self.values:
            index = (index << 1) | (v == -1)
        return index

    @classmethod
    def from_index(cls, q: int, index: int) -> "Assignment":
        n = N_ROWS * (q + 1)
        if not 0 <= index < 2 ** n:
            raise ValueError(f"Assignment index {index} outside 0..2^{n}-1.")
        return cls(q, tuple(-1 if (index >> (n - 1 - c)) & 1 else 1 for c in range(n)))

    @classmethod
    def all_plus(cls, q: int) -> "Assignment":
        return cls(q, (1,) * (N_ROWS * (q + 1)))

    @classmethod
    def random(cls, q: int, rng: numpy.random.Generator) -> "Assignment":
        return cls(q, tuple(rng.choice([1, -1], size=N_ROWS * (q + 1)).tolist()))


@dataclass(frozen=True)
class BoundResult:
    q: int
    form: str
    classical_max: int
    quantum_value: int
    argmax: Assignment
    search_space_size: int

    def to_dict(self) -> dict:
        return dict(
            q=self.q,
            classical_max=self.classical_max,
            quantum_value=self.quantum_value,
            argmax=list(self.argmax.values),
            search_space_size=self.search_space_size,
            form=self.form,
        )


def cell_index(q: int, i: int, j: int) -> int:
    if not (1 <= i <= N_ROWS and 1 <= j <= q + 1):
        raise ValueError(f"Cell ({i}, {j}) outside a 3 x {q + 1} array.")
    return (i - 1) * (q + 1) + (j - 1)


def cell_mask(q: int, cells: Sequence[Tuple[int, int]]) -> int:
    """Bit mask of the cells in the enumeration encoding; repeated cells cancel."""
    n = N_ROWS * (q + 1)
    mask = 0
    for i, j in cells:
        mask ^= 1 << (n - 1 - cell_index(q, i, j))
    return mask


def _check_shape(array: MagicArray, assignment: Assignment):
    if assignment.q != array.q:
        raise ValueError(f"Assignment for q={assignment.q} does not fit an array with q={array.q}.")


def context_value(assignment: Assignment, cells: Sequence[Tuple[int, int]]) -> int:
    value = 1
    for cell in cells:
        value *= assignment.value(*cell)
    return value


def evaluate_form(form: XksForm, assignment: Assignment) -> int:
    if assignment.q != form.q:
        raise ValueError(f"Assignment for q={assignment.q} does not fit a {form.name} form with q={form.q}.")
    return form.constant + sum(t.coefficient * context_value(assignment, t.cells) for t in form.terms)


def eval_xks2(assignment: Assignment) -> int:
    """R1 + R2 + R3 + C1 + C2 - C3 on the two-qubit array."""
    if assignment.q != 2:
        raise ValueError(f"The two-qubit expression needs a q=2 assignment, got q={assignment.q}.")
    return evaluate_form(mermin_peres_form(build(2, Permutation.swap())), assignment)


def eval_xksq(array: MagicArray, assignment: Assignment) -> int:
    """1 + R1 + R2 + sum_j C_j - R3.C_{q+1}, the corner cell cancelling in the last term."""
    _check_shape(array, assignment)
    return evaluate_form(generalized_form(array), assignment)


def quantum_value_of(form: XksForm, array: MagicArray) -> int:
    """The quantum prediction of a form. Every context operator is a scalar, so no state is needed."""
    total = complex(form.constant)
    for term in form.terms:
        value = scalar_value(term.operator(array))
        if value is None:
            raise InvariantViolation(f"Context {term.label} of array with perm {array.perm} is not a scalar.")
        total += term.coefficient * value

    if abs(total.imag) > CONFIG.REAL_TOLERANCE:
        raise InvariantViolation(f"Quantum value {total} of form {form.name} is not real.")
    return int(round(total.real))


def verify_parity_identity(array: MagicArray, assignment: Assignment) -> int:
    """Product of every row value and every column value; each cell enters twice, so this is always +1."""
    _check_shape(array, assignment)
    total = 1
    for i in range(1, N_ROWS + 1):
        total *= context_value(assignment, [(i, j) for j in range(1, array.n_columns + 1)])
    for j in range(1, array.n_columns + 1):
        total *= context_value(assignment, [(i, j) for i in range(1, N_ROWS + 1)])
    return total


def brute_max(array: MagicArray, form: str = ORIENTED, verbose: bool = False) -> BoundResult:
    """Exact classical maximum of a form by enumerating all 2^(3(q+1)) assignments.

    The argmax is the lexicographically smallest maximizer (row-major cells, +1 before -1).
    """
    budget = brute_force_budget()
    if array.q > budget:
        raise BudgetExceeded(f"Enumerating 2^{N_ROWS * (array.q + 1)} assignments for q={array.q} exceeds the "
                             f"budget q <= {budget} (set {CONFIG.BUDGET_ENV_VARIABLE} to raise it).")

    xks = make_form(form, array)
    n = xks.n_cells
    total = 2 ** n
    masks = [(t.coefficient, cell_mask(array.q, t.cells)) for t in xks.terms]

    best_value, best_index = None, None
    chunks = range(0, total, CONFIG.BRUTE_CHUNK)
    for start in tqdm(chunks, disable=not verbose, desc=f"Enumerating q={array.q}", leave=False, file=sys.stderr):
        indices = numpy.arange(start, min(start + CONFIG.BRUTE_CHUNK, total), dtype=numpy.uint64)
        scores = numpy.full(indices.shape, xks.constant, dtype=numpy.int64)
        for coefficient, mask in masks:
            scores += coefficient * signs(indices, mask)

        position = int(numpy.argmax(scores))
        if best_value is None or scores[position] > best_value:
            best_value, best_index = int(scores[position]), start + position

    result = BoundResult(
        q=array.q,
        form=xks.name,
        classical_max=best_value,
        quantum_value=quantum_value_of(xks, array),
        argmax=Assignment.from_index(array.q, best_index),
        search_space_size=total,
    )

    if verbose:
        print(f"[{xks.name}] classical max {result.classical_max} vs quantum {result.quantum_value} "
              f"over {total} assignments.", file=sys.stderr)

    return result
