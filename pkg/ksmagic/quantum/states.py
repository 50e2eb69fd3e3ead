from dataclasses import dataclass
from typing import Optional

import numpy

from ksmagic.config import CONFIG
from ksmagic.exceptions import BudgetExceeded

AVAILABLE_STATES = ["basis", "random", "ghz"]


@dataclass
class Statevector:
    """Normalized amplitudes in kron order, qubit 1 the most significant index bit."""
    amplitudes: numpy.ndarray

    def __post_init__(self):
        self.amplitudes = numpy.asarray(self.amplitudes, dtype=numpy.complex128)
        dim = self.amplitudes.shape[0]
        if self.amplitudes.ndim != 1 or dim < 2 or dim & (dim - 1):
            raise ValueError(f"Statevector length must be a power of two >= 2, got shape {self.amplitudes.shape}.")
        if abs(self.norm - 1) > CONFIG.NORM_TOLERANCE:
            raise ValueError(f"Statevector is not normalized (norm {self.norm}).")

    @property
    def num_qubits(self) -> int:
        return self.amplitudes.shape[0].bit_length() - 1

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def norm(self) -> float:
        return float(numpy.linalg.norm(self.amplitudes))

    def copy(self) -> "Statevector":
        return Statevector(self.amplitudes.copy())


def check_qubit_budget(q: int, cap: int, purpose: str):
    if q > cap:
        raise BudgetExceeded(f"A dense statevector for {purpose} is capped at {cap} qubits, got q={q}.")


def make_state(kind: str, q: int, index: int = 0, seed: Optional[int] = None) -> Statevector:
    """basis(index), Haar-random(seed) or GHZ state on q qubits."""
    if q < 1:
        raise ValueError(f"A state needs at least one qubit, got q={q}.")
    check_qubit_budget(q, CONFIG.MAX_EXPECTATION_QUBITS, "state preparation")

    dim = 2 ** q
    kind = kind.strip().lower()
    if kind == "basis":
        if not 0 <= index < dim:
            raise ValueError(f"Basis index {index} out of range 0..{dim - 1}.")
        amplitudes = numpy.zeros(dim, dtype=numpy.complex128)
        amplitudes[index] = 1
    elif kind == "random":
        rng = numpy.random.default_rng(seed)
        amplitudes = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        amplitudes /= numpy.linalg.norm(amplitudes)
    elif kind == "ghz":
        amplitudes = numpy.zeros(dim, dtype=numpy.complex128)
        amplitudes[0] = amplitudes[-1] = 1 / numpy.sqrt(2)
    else:
        raise ValueError(f"Unknown state kind '{kind}', expected one of {', '.join(AVAILABLE_STATES)}.")

    return Statevector(amplitudes)


def parse_state(text: str, q: int) -> Statevector:
    """Read 'basis:I', 'random:SEED' or 'ghz'."""
    kind, _, argument = text.strip().partition(":")
    kind = kind.lower()
    if kind == "ghz":
        if argument:
            raise ValueError(f"The ghz state takes no argument, got '{text}'.")
        return make_state("ghz", q)

    if kind not in ("basis", "random") or argument == "":
        raise ValueError(f"Cannot read state '{text}', expected basis:I, random:SEED or ghz.")
    try:
        value = int(argument)
    except ValueError:
        raise ValueError(f"State argument in '{text}' must be an integer.")

    if kind == "basis":
        return make_state("basis", q, index=value)
    return make_state("random", q, seed=value)
