"""The 3 x (q+1) magic array over q qubits.

Row 1 holds Z on qubit j in column j, row 2 holds X on qubit perm(j), row 3 their products. The last column holds
Z...Z, X...X and Y...Y. Rows are indexed 1..3 and columns 1..q+1; products run left to right / top to bottom.
"""
import itertools
import sys
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ksmagic.config import CONFIG
from ksmagic.core.pauli import PauliString, commutes, embed, mul, parse, product, scalar_value, uniform
from ksmagic.exceptions import InvariantViolation

N_ROWS = 3


@dataclass(frozen=True)
class Permutation:
    """perm(j) = qubit of the X placed in column j of row 2; 1-based, bijective, fixed-point-free."""
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)

        q = len(images)
        if sorted(images) != list(range(1, q + 1)):
            raise ValueError(f"Permutation {list(images)} is not a bijection on 1..{q}.")
        fixed = [j for j, image in enumerate(images, start=1) if image == j]
        if fixed:
            raise ValueError(f"Permutation {list(images)} has fixed point(s) {fixed}; "
                             f"Z and X would act on the same qubit.")

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def __len__(self):
        return len(self.images)

    def __str__(self):
        return ",".join(map(str, self.images))

    @property
    def is_involution(self) -> bool:
        return all(self(self(j)) == j for j in range(1, len(self) + 1))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        try:
            images = [int(token) for token in text.replace(" ", "").split(",") if token != ""]
        except ValueError:
            raise ValueError(f"Cannot read permutation '{text}', expected comma separated integers.")
        return cls(tuple(images))

    @classmethod
    def swap(cls) -> "Permutation":
        return cls((2, 1))

    @classmethod
    def cycle(cls, q: int) -> "Permutation":
        """(2, 3, ..., q, 1); always m = 1."""
        _check_size(q)
        return cls(tuple(list(range(2, q + 1)) + [1]))

    @classmethod
    def pairs(cls, q: int) -> "Permutation":
        """(2, 1, 4, 3, ...), the lexicographically first fixed-point-free involution (even q only)."""
        _check_size(q)
        if q % 2:
            raise ValueError(f"No fixed-point-free involution exists for odd q={q}.")
        return cls(tuple(j + 1 if j % 2 else j - 1 for j in range(1, q + 1)))

    @classmethod
    def reversal(cls, q: int) -> "Permutation":
        """(q, ..., 2, 1); fixed-point-free for even q only."""
        _check_size(q)
        return cls(tuple(range(q, 0, -1)))


def _check_size(q: int):
    if q < 2:
        raise ValueError(f"Magic arrays need q >= 2 (no derangement of {q} element(s) exists), got q={q}.")


@dataclass(frozen=True)
class MagicArray:
    q: int
    perm: Permutation
    grid: Tuple[Tuple[PauliString, ...], ...]

    @property
    def n_columns(self) -> int:
        return self.q + 1

    def cell(self, i: int, j: int) -> PauliString:
        _check_row(self, i)
        _check_column(self, j)
        return self.grid[i - 1][j - 1]

    def row(self, i: int) -> Tuple[PauliString, ...]:
        _check_row(self, i)
        return self.grid[i - 1]

    def column(self, j: int) -> Tuple[PauliString, ...]:
        _check_column(self, j)
        return tuple(self.grid[i][j - 1] for i in range(N_ROWS))

    def to_dict(self) -> dict:
        return dict(
            q=self.q,
            perm=list(self.perm.images),
            grid=[[str(p) for p in row] for row in self.grid],
        )

    @classmethod
    def from_dict(cls, document: dict) -> "MagicArray":
        """Rebuild from the JSON schema and check the stored grid against the canonical one."""
        array = build(int(document["q"]), Permutation(tuple(document["perm"])))
        if "grid" in document:
            stored = [[parse(text) for text in row] for row in document["grid"]]
            if stored != [list(row) for row in array.grid]:
                raise ValueError(f"Stored grid does not match the array built from perm {array.perm}.")
        return array


def _check_row(array: MagicArray, i: int):
    if not 1 <= i <= N_ROWS:
        raise ValueError(f"Row index {i} out of range 1..{N_ROWS}.")


def _check_column(array: MagicArray, j: int):
    if not 1 <= j <= array.n_columns:
        raise ValueError(f"Column index {j} out of range 1..{array.n_columns}.")


def build(q: int, perm: Permutation) -> MagicArray:
    _check_size(q)
    if len(perm) != q:
        raise ValueError(f"Permutation {perm} acts on {len(perm)} qubits, array has q={q}.")

    first = [embed("Z", j, q) for j in range(1, q + 1)]
    second = [embed("X", perm(j), q) for j in range(1, q + 1)]
    third = [mul(z, x) for z, x in zip(first, second)]

    first.append(uniform("Z", q))
    second.append(uniform("X", q))
    third.append(uniform("Y", q))

    return MagicArray(q=q, perm=perm, grid=(tuple(first), tuple(second), tuple(third)))


def m_of(perm: Permutation) -> int:
    """Number of qubits whose Z precedes its X in row 3, i.e. #{j : perm(j) < j}."""
    return sum(1 for j in range(1, len(perm) + 1) if perm(j) < j)


def count_zx_orderings(array: MagicArray) -> int:
    """m by direct collection: walk row 3 left to right and note, per qubit, whether Z or X shows up first."""
    first_seen: Dict[int, str] = {}
    for cell in array.row(3)[:-1]:
        for k in range(1, array.q + 1):
            letter = cell.letter(k)
            if letter in "ZX" and k not in first_seen:
                first_seen[k] = letter

    return sum(1 for letter in first_seen.values() if letter == "Z")


def row_product(array: MagicArray, i: int) -> PauliString:
    return product(array.row(i))


def col_product(array: MagicArray, j: int) -> PauliString:
    return product(array.column(j))


def context_products(array: MagicArray) -> Dict[str, PauliString]:
    """All row and column products keyed 'R1'..'R3', 'C1'..'C{q+1}'."""
    products = {f"R{i}": row_product(array, i) for i in range(1, N_ROWS + 1)}
    products.update({f"C{j}": col_product(array, j) for j in range(1, array.n_columns + 1)})
    return products


def grand_product(array: MagicArray) -> int:
    """Scalar value of the product of every row and column product; -1 is the Kochen-Specker contradiction."""
    total = product(context_products(array).values())
    value = scalar_value(total)
    if value is None:
        raise InvariantViolation(f"Grand product {total} of array with perm {array.perm} is not a scalar.")
    if value not in (1, -1):
        raise InvariantViolation(f"Grand product {total} of array with perm {array.perm} is not real.")

    return value


@dataclass
class ContextReport:
    kind: str
    index: int
    violations: List[Tuple[Tuple[int, int], Tuple[int, int]]] = field(default_factory=list)

    @property
    def label(self) -> str:
        return f"{'R' if self.kind == 'row' else 'C'}{self.index}"

    @property
    def mutually_commuting(self) -> bool:
        return len(self.violations) == 0

    def to_dict(self) -> dict:
        return dict(context=self.label, mutually_commuting=self.mutually_commuting,
                    violations=[[list(a), list(b)] for a, b in self.violations])


@dataclass
class CommutationReport:
    rows: List[ContextReport]
    columns: List[ContextReport]

    @property
    def contexts(self) -> List[ContextReport]:
        return self.rows + self.columns

    @property
    def all_commuting(self) -> bool:
        return all(c.mutually_commuting for c in self.contexts)

    def context(self, label: str) -> ContextReport:
        for report in self.contexts:
            if report.label == label:
                return report
        raise ValueError(f"No context labelled '{label}'.")

    def to_dict(self) -> dict:
        return dict(all_commuting=self.all_commuting, contexts=[c.to_dict() for c in self.contexts])


def _context_report(kind: str, index: int, positions: Sequence[Tuple[int, int]], array: MagicArray) -> ContextReport:
    report = ContextReport(kind=kind, index=index)
    for a, b in itertools.combinations(positions, 2):
        if not commutes(array.cell(*a), array.cell(*b)):
            report.violations.append((a, b))
    return report


def commutation_report(array: MagicArray) -> CommutationReport:
    rows = [_context_report("row", i, [(i, j) for j in range(1, array.n_columns + 1)], array)
            for i in range(1, N_ROWS + 1)]
    columns = [_context_report("column", j, [(i, j) for i in range(1, N_ROWS + 1)], array)
               for j in range(1, array.n_columns + 1)]
    return CommutationReport(rows=rows, columns=columns)


def derangements(q: int) -> Iterator[Permutation]:
    """All fixed-point-free permutations of 1..q in lexicographic order."""
    for images in itertools.permutations(range(1, q + 1)):
        if all(image != j for j, image in enumerate(images, start=1)):
            yield Permutation(images)


def _lexicographic_derangements(q: int) -> Iterator[Permutation]:
    """Depth-first derangements in lexicographic order, pruning fixed points early; usable for large q."""
    images: List[int] = []
    used = [False] * (q + 1)

    def extend(j: int):
        if j > q:
            yield Permutation(tuple(images))
            return
        for image in range(1, q + 1):
            if used[image] or image == j:
                continue
            used[image] = True
            images.append(image)
            yield from extend(j + 1)
            images.pop()
            used[image] = False

    yield from extend(1)


def fixed_point_free_involutions(q: int) -> Iterator[Permutation]:
    """Fixed-point-free involutions of 1..q in lexicographic order."""
    if q % 2:
        return
    images = [0] * (q + 1)

    def extend():
        try:
            j = images.index(0, 1)
        except ValueError:
            yield Permutation(tuple(images[1:]))
            return
        for partner in range(j + 1, q + 1):
            if images[partner]:
                continue
            images[j], images[partner] = partner, j
            yield from extend()
            images[j], images[partner] = 0, 0

    yield from extend()


def _is_witness(array: MagicArray, require_commuting_contexts: bool) -> bool:
    if grand_product(array) != -1:
        return False
    return not require_commuting_contexts or commutation_report(array).all_commuting


def find_contradiction_perm(q: int, require_commuting_contexts: bool = False,
                            verbose: bool = False) -> Optional[Permutation]:
    """Lexicographically smallest fixed-point-free permutation whose array has grand product -1.

    Up to CONFIG.MAX_EXHAUSTIVE_PERM_QUBITS every derangement is checked symbolically. Beyond that limit the
    unconstrained search still walks derangements in lexicographic order; with commuting contexts required only
    fixed-point-free involutions can keep row 3 commuting, so at most CONFIG.HEURISTIC_CANDIDATES of them are
    tried. Every returned permutation is certified by building its array.
    """
    _check_size(q)
    if q > sys.getrecursionlimit() // 2:
        raise ValueError(f"q={q} is too large for the permutation search.")

    if q <= CONFIG.MAX_EXHAUSTIVE_PERM_QUBITS:
        candidates = derangements(q)
    elif require_commuting_contexts:
        candidates = itertools.islice(fixed_point_free_involutions(q), CONFIG.HEURISTIC_CANDIDATES)
    else:
        candidates = _lexicographic_derangements(q)

    for checked, perm in enumerate(candidates, start=1):
        if _is_witness(build(q, perm), require_commuting_contexts):
            if verbose:
                print(f"Found contradiction permutation {perm} (m={m_of(perm)}) after {checked} candidate(s).",
                      file=sys.stderr)
            return perm

    if verbose:
        print(f"No contradiction permutation for q={q}"
              f"{' with commuting contexts' if require_commuting_contexts else ''}.", file=sys.stderr)
    return None
