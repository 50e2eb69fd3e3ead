"""The X_KS expressions as data, so the classical oracle and the quantum engine evaluate the very same sum.

A form is a constant plus signed context terms. A term lists the cells whose values (classically) or operators
(quantum mechanically) are multiplied in order. The generalized product term R3.C_{q+1} lists the corner cell twice;
classically its value squares away, quantum mechanically it is measured as one observable.
"""
from dataclasses import dataclass
from typing import Tuple

from ksmagic.arrays.magic import MagicArray, N_ROWS, grand_product
from ksmagic.core.pauli import PauliString, product

MERMIN_PERES = "mermin-peres"
GENERALIZED = "generalized"
ORIENTED = "oriented"
AVAILABLE_FORMS = [GENERALIZED, MERMIN_PERES, ORIENTED]

Cell = Tuple[int, int]


@dataclass(frozen=True)
class ContextTerm:
    label: str
    coefficient: int
    cells: Tuple[Cell, ...]
    single_observable: bool = False

    def operator(self, array: MagicArray) -> PauliString:
        return product(array.cell(*c) for c in self.cells)


@dataclass(frozen=True)
class XksForm:
    name: str
    q: int
    constant: int
    terms: Tuple[ContextTerm, ...]

    @property
    def n_cells(self) -> int:
        return N_ROWS * (self.q + 1)


def _row_cells(q: int, i: int) -> Tuple[Cell, ...]:
    return tuple((i, j) for j in range(1, q + 2))


def _column_cells(j: int) -> Tuple[Cell, ...]:
    return tuple((i, j) for i in range(1, N_ROWS + 1))


def mermin_peres_form(array: MagicArray) -> XksForm:
    """R1 + R2 + R3 + C1 + C2 - C3 on the two-qubit array; classical bound 4, quantum value 6."""
    if array.q != 2:
        raise ValueError(f"The Mermin-Peres form is defined for q=2 only, got q={array.q}.")

    terms = [ContextTerm(f"R{i}", 1, _row_cells(2, i)) for i in range(1, N_ROWS + 1)]
    terms += [ContextTerm(f"C{j}", -1 if j == 3 else 1, _column_cells(j)) for j in range(1, 4)]
    return XksForm(MERMIN_PERES, 2, 0, tuple(terms))


def generalized_form(array: MagicArray, oriented: bool = False) -> XksForm:
    """1 + R1 + R2 + sum_j C_j - R3.C_{q+1}; classical bound q+2, quantum value q+4 for contradiction arrays.

    With `oriented` the product term is signed by the array's grand product instead of a fixed minus, so the
    quantum value is q+4 whether or not the array is a contradiction.
    """
    q = array.q
    sign = grand_product(array) if oriented else -1

    terms = [ContextTerm(f"R{i}", 1, _row_cells(q, i)) for i in (1, 2)]
    terms += [ContextTerm(f"C{j}", 1, _column_cells(j)) for j in range(1, q + 1)]
    terms.append(ContextTerm(f"R3.C{q + 1}", sign, _row_cells(q, 3) + _column_cells(q + 1), single_observable=True))
    return XksForm(ORIENTED if oriented else GENERALIZED, q, 1, tuple(terms))


def make_form(name: str, array: MagicArray) -> XksForm:
    name = name.strip().lower()
    if name == MERMIN_PERES:
        return mermin_peres_form(array)
    elif name == GENERALIZED:
        return generalized_form(array)
    elif name == ORIENTED:
        return generalized_form(array, oriented=True)
    else:
        raise ValueError(f"Unknown form '{name}', expected one of {', '.join(AVAILABLE_FORMS)}.")
