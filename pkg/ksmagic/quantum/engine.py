from typing import Tuple

import numpy

from ksmagic.arrays.forms import GENERALIZED, make_form
from ksmagic.arrays.magic import MagicArray
from ksmagic.config import CONFIG
from ksmagic.core.pauli import PHASE_PREFIXES, PHASE_VALUES, PauliString, format_pauli
from ksmagic.exceptions import InvariantViolation
from ksmagic.quantum.states import Statevector, check_qubit_budget
from ksmagic.utilities.util import signs


def _check_dimensions(p: PauliString, psi: Statevector):
    if p.num_qubits != psi.num_qubits:
        raise ValueError(f"Dimension mismatch: {p.num_qubits}-qubit string on a {psi.num_qubits}-qubit state.")


def apply_to_amplitudes(p: PauliString, amplitudes: numpy.ndarray) -> numpy.ndarray:
    """(P a)[j] = i^s (-1)^{z.(j^x)} a[j^x] for P = i^s X^x Z^z."""
    source = numpy.arange(amplitudes.shape[-1], dtype=numpy.uint64) ^ numpy.uint64(p.x_bits)
    return PHASE_VALUES[p.phase_exp] * signs(source, p.z_bits) * amplitudes[..., source]


def apply(p: PauliString, psi: Statevector) -> numpy.ndarray:
    _check_dimensions(p, psi)
    return apply_to_amplitudes(p, psi.amplitudes)


def expectation(p: PauliString, psi: Statevector) -> complex:
    _check_dimensions(p, psi)
    check_qubit_budget(psi.num_qubits, CONFIG.MAX_EXPECTATION_QUBITS, "expectation values")
    return complex(numpy.vdot(psi.amplitudes, apply_to_amplitudes(p, psi.amplitudes)))


def check_observable(p: PauliString):
    if not p.is_hermitian:
        raise ValueError(f"Cannot measure non-Hermitian {format_pauli(p)}: its phase "
                         f"'{PHASE_PREFIXES[(p.phase_exp - p.y_count) % 4]}' makes the eigenvalues imaginary.")


def project(p: PauliString, amplitudes: numpy.ndarray) -> Tuple[numpy.ndarray, numpy.ndarray]:
    """Unnormalized branches (I + P)/2 a and (I - P)/2 a."""
    image = apply_to_amplitudes(p, amplitudes)
    return (amplitudes + image) / 2, (amplitudes - image) / 2


def measure(p: PauliString, psi: Statevector, rng: numpy.random.Generator) -> Tuple[int, Statevector]:
    """Projective measurement of a Hermitian Pauli string; returns the outcome and the collapsed state."""
    _check_dimensions(p, psi)
    check_observable(p)
    check_qubit_budget(psi.num_qubits, CONFIG.MAX_SAMPLING_QUBITS, "measurement")

    plus, minus = project(p, psi.amplitudes)
    p_plus = float(numpy.clip(numpy.vdot(plus, plus).real, 0.0, 1.0))
    if rng.random() < p_plus:
        return 1, Statevector(plus / numpy.sqrt(p_plus))
    return -1, Statevector(minus / numpy.sqrt(1.0 - p_plus))


def exact_xks(array: MagicArray, psi: Statevector, form: str = GENERALIZED) -> float:
    """Expectation of the X_KS form on psi, each bracket the expectation of the context operator product."""
    if psi.num_qubits != array.q:
        raise ValueError(f"Dimension mismatch: {array.q}-qubit array on a {psi.num_qubits}-qubit state.")

    xks = make_form(form, array)
    total = complex(xks.constant)
    for term in xks.terms:
        total += term.coefficient * expectation(term.operator(array), psi)

    if abs(total.imag) > CONFIG.REAL_TOLERANCE:
        raise InvariantViolation(f"X_KS value {total} on array with perm {array.perm} is not real.")
    return float(total.real)
