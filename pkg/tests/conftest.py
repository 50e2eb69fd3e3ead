import functools

import numpy
import pytest

from ksmagic.core.pauli import PHASE_VALUES, PauliString, displayed_phase

MATRICES = {
    "I": numpy.eye(2, dtype=complex),
    "X": numpy.array([[0, 1], [1, 0]], dtype=complex),
    "Y": numpy.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": numpy.array([[1, 0], [0, -1]], dtype=complex),
}


def dense(p: PauliString) -> numpy.ndarray:
    """Matrix of a Pauli string built independently of the symplectic arithmetic: displayed phase times the
    Kronecker product of the printed letters, qubit 1 leftmost."""
    matrix = functools.reduce(numpy.kron, [MATRICES[letter] for letter in p.letters])
    return PHASE_VALUES[displayed_phase(p)] * matrix


def random_pauli(rng: numpy.random.Generator, q: int) -> PauliString:
    return PauliString(q, int(rng.integers(4)), int(rng.integers(2 ** q)), int(rng.integers(2 ** q)))


@pytest.fixture
def rng():
    return numpy.random.default_rng(20201018)
