"""Phase-tracked Pauli strings in symplectic form.

A string over q qubits is stored as the operator

    i^s * X^x_1 Z^z_1 (x) X^x_2 Z^z_2 (x) ... (x) X^x_q Z^z_q

with s an integer mod 4 and the x/z bits packed into Python integers. Qubit 1 is the most significant bit of
each mask, so the masks line up with the basis-state index of a statevector in kron order. Because Y = i X Z, a
string showing a "+Y" letter carries one unit of i in its stored phase; the text form hides this bookkeeping.
"""
import functools
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from ksmagic.utilities.util import popcount

PHASE_PREFIXES = ("+", "i", "-", "-i")
PHASE_VALUES = (1, 1j, -1, -1j)
LETTERS = ("I", "X", "Z", "Y")  # indexed by x + 2 z

_TEXT_PATTERN = re.compile(r"(\+|-i|-|i)?([A-Za-z]*)")


@dataclass(frozen=True)
class PauliString:
    num_qubits: int
    phase_exp: int
    x_bits: int
    z_bits: int

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError(f"A Pauli string needs at least one qubit, got {self.num_qubits}.")
        if not 0 <= self.phase_exp < 4:
            raise ValueError(f"Phase exponent must lie in 0..3, got {self.phase_exp}.")
        if self.x_bits >> self.num_qubits or self.z_bits >> self.num_qubits:
            raise ValueError(f"Bit masks exceed the {self.num_qubits} available qubits.")

    def __str__(self):
        return format_pauli(self)

    def __repr__(self):
        return f"PauliString('{format_pauli(self)}')"

    def __mul__(self, other: "PauliString") -> "PauliString":
        return mul(self, other)

    def bit(self, k: int) -> int:
        """Mask bit of qubit k (1-based, qubit 1 leftmost)."""
        return 1 << (self.num_qubits - k)

    def letter(self, k: int) -> str:
        b = self.bit(k)
        return LETTERS[bool(self.x_bits & b) + 2 * bool(self.z_bits & b)]

    @property
    def letters(self) -> str:
        return "".join(self.letter(k) for k in range(1, self.num_qubits + 1))

    @property
    def y_count(self) -> int:
        return popcount(self.x_bits & self.z_bits)

    @property
    def weight(self) -> int:
        return popcount(self.x_bits | self.z_bits)

    @property
    def is_scalar(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    @property
    def is_hermitian(self) -> bool:
        # (i^s X^x Z^z)^dagger = i^-s (-1)^|x&z| X^x Z^z
        return (self.phase_exp - self.y_count) % 2 == 0


def identity(q: int) -> PauliString:
    if q < 1:
        raise ValueError(f"Invalid size: identity needs q >= 1, got {q}.")
    return PauliString(q, 0, 0, 0)


def embed(letter: str, k: int, q: int) -> PauliString:
    """The single-qubit Pauli `letter` acting on qubit k of q, identity elsewhere, phase +1."""
    if q < 1:
        raise ValueError(f"Invalid size: q must be positive, got {q}.")
    if not 1 <= k <= q:
        raise ValueError(f"Qubit index {k} out of range 1..{q}.")

    letter = letter.upper()
    bit = 1 << (q - k)
    if letter == "X":
        return PauliString(q, 0, bit, 0)
    elif letter == "Z":
        return PauliString(q, 0, 0, bit)
    elif letter == "Y":
        return PauliString(q, 1, bit, bit)
    else:
        raise ValueError(f"Cannot embed letter '{letter}', expected one of X, Y, Z.")


def uniform(letter: str, q: int) -> PauliString:
    """The same letter on every qubit, e.g. Z(x)Z(x)...(x)Z."""
    return product([embed(letter, k, q) for k in range(1, q + 1)])


def _check_sizes(a: PauliString, b: PauliString):
    if a.num_qubits != b.num_qubits:
        raise ValueError(f"Qubit-count mismatch: {a.num_qubits} vs {b.num_qubits}.")


def mul(a: PauliString, b: PauliString) -> PauliString:
    """Operator product a.b (b applied first).

    Moving Z^z_a past X^x_b costs (-1)^(z_a . x_b), which is two units of i per anticommuting qubit.
    """
    _check_sizes(a, b)
    phase = (a.phase_exp + b.phase_exp + 2 * popcount(a.z_bits & b.x_bits)) % 4
    return PauliString(a.num_qubits, phase, a.x_bits ^ b.x_bits, a.z_bits ^ b.z_bits)


def product(strings: Iterable[PauliString], q: Optional[int] = None) -> PauliString:
    """Left-to-right product of a sequence; an empty sequence yields identity(q)."""
    strings = list(strings)
    if not strings:
        if q is None:
            raise ValueError("The product of no strings needs an explicit qubit count.")
        return identity(q)

    return functools.reduce(mul, strings)


def adjoint(p: PauliString) -> PauliString:
    return PauliString(p.num_qubits, (-p.phase_exp + 2 * p.y_count) % 4, p.x_bits, p.z_bits)


def commutes(a: PauliString, b: PauliString) -> bool:
    _check_sizes(a, b)
    return (popcount(a.x_bits & b.z_bits) + popcount(a.z_bits & b.x_bits)) % 2 == 0


def scalar_value(p: PauliString) -> Optional[Union[int, complex]]:
    """The phase of p if p is a multiple of the identity, otherwise None."""
    if not p.is_scalar:
        return None
    return PHASE_VALUES[p.phase_exp]


def displayed_phase(p: PauliString) -> int:
    """Phase exponent in front of the letters, i.e. with Y taken as the Pauli matrix."""
    return (p.phase_exp - p.y_count) % 4


def format_pauli(p: PauliString) -> str:
    return PHASE_PREFIXES[displayed_phase(p)] + p.letters


def parse(text: str) -> PauliString:
    """Parse '[+|-|i|-i]LETTERS', qubit 1 leftmost. A missing prefix means '+'."""
    match = _TEXT_PATTERN.fullmatch(text.strip())
    if match is None:
        raise ValueError(f"Malformed phase prefix in Pauli string '{text}'.")

    prefix, body = match.group(1) or "+", match.group(2)
    if body == "":
        raise ValueError(f"Pauli string '{text}' has an empty body.")
    illegal = sorted(set(body) - set(LETTERS))
    if illegal:
        raise ValueError(f"Illegal letter(s) {', '.join(illegal)} in Pauli string '{text}'.")

    q = len(body)
    x_bits, z_bits = 0, 0
    for k, letter in enumerate(body, start=1):
        bit = 1 << (q - k)
        if letter in "XY":
            x_bits |= bit
        if letter in "ZY":
            z_bits |= bit

    y_count = popcount(x_bits & z_bits)
    return PauliString(q, (PHASE_PREFIXES.index(prefix) + y_count) % 4, x_bits, z_bits)
