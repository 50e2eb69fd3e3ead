"""Sequential measurement of contexts with independent outcome flips.

Each context is measured cell by cell on a fresh copy of the state; every outcome is then flipped with
probability epsilon. Shots are drawn from the exact distribution of sequential outcomes, which is enumerated
branch by branch, so 10^5 shots cost little more than one.
"""
import itertools
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy
from scipy.optimize import brentq

from ksmagic.arrays.forms import ContextTerm, GENERALIZED, make_form
from ksmagic.arrays.magic import MagicArray
from ksmagic.config import CONFIG
from ksmagic.core.pauli import PauliString, commutes
from ksmagic.core.statistics import combined_standard_error, standard_error
from ksmagic.exceptions import BudgetExceeded
from ksmagic.quantum.engine import check_observable, exact_xks, measure, project
from ksmagic.quantum.states import Statevector, check_qubit_budget


@dataclass(frozen=True)
class ShotRecord:
    context: str
    outcomes: Tuple[int, ...]
    product: int
    flips: int
    order_dependent: bool = False

    def to_dict(self) -> dict:
        return dict(context=self.context, outcomes=list(self.outcomes), product=self.product, flips=self.flips,
                    order_dependent=self.order_dependent)


@dataclass
class ContextSamples:
    context: str
    outcomes: numpy.ndarray  # shots x cells, noisy
    flips: numpy.ndarray  # shots x cells, bool
    order_dependent: bool

    @property
    def shots(self) -> int:
        return self.outcomes.shape[0]

    @property
    def products(self) -> numpy.ndarray:
        return numpy.prod(self.outcomes, axis=1)

    def records(self):
        for outcomes, products, flips in zip(self.outcomes.tolist(), self.products.tolist(),
                                             self.flips.sum(axis=1).tolist()):
            yield ShotRecord(self.context, tuple(outcomes), int(products), int(flips), self.order_dependent)


@dataclass
class XksEstimate:
    q: int
    form: str
    shots: int
    epsilon: float
    value: float
    standard_error: float
    exact: float
    contexts: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return dict(q=self.q, form=self.form, shots=self.shots, epsilon=self.epsilon, value=self.value,
                    standard_error=self.standard_error, exact=self.exact, contexts=self.contexts)


def check_epsilon(epsilon: float):
    if not 0.0 <= epsilon <= 0.5:
        raise ValueError(f"Flip probability epsilon must lie in [0, 1/2], got {epsilon}.")


def is_order_dependent(cells: Sequence[PauliString]) -> bool:
    return any(not commutes(a, b) for a, b in itertools.combinations(cells, 2))


def _check_cells(cells: Sequence[PauliString], psi: Statevector):
    if len(cells) == 0:
        raise ValueError("A context needs at least one cell.")
    for cell in cells:
        if cell.num_qubits != psi.num_qubits:
            raise ValueError(f"Dimension mismatch: {cell.num_qubits}-qubit cell on a {psi.num_qubits}-qubit state.")
        check_observable(cell)
    check_qubit_budget(psi.num_qubits, CONFIG.MAX_SAMPLING_QUBITS, "sampling")


def run_context(cells: Sequence[PauliString], psi: Statevector, epsilon: float, rng: numpy.random.Generator,
                context: str = "") -> ShotRecord:
    """One shot: measure the cells in order on a copy of psi and flip each outcome with probability epsilon."""
    _check_cells(cells, psi)
    check_epsilon(epsilon)

    state = psi.copy()
    outcomes, flips = [], 0
    for cell in cells:
        outcome, state = measure(cell, state, rng)
        if rng.random() < epsilon:
            outcome, flips = -outcome, flips + 1
        outcomes.append(outcome)

    return ShotRecord(context, tuple(outcomes), int(numpy.prod(outcomes)), flips, is_order_dependent(cells))


def context_distribution(cells: Sequence[PauliString], psi: Statevector) -> Tuple[numpy.ndarray, numpy.ndarray]:
    """All noiseless outcome sequences of measuring the cells in order, with their probabilities.

    Returns outcomes (branches x cells, entries +-1) and matching probabilities; branches below the branch
    tolerance are dropped. The collapsed states of one level are kept in memory, capped by
    CONFIG.MAX_BRANCH_AMPLITUDES.
    """
    _check_cells(cells, psi)

    outcomes = numpy.zeros((1, 0), dtype=numpy.int8)
    branches = psi.amplitudes[numpy.newaxis, :]
    for depth, cell in enumerate(cells):
        plus, minus = project(cell, branches)
        stacked = numpy.concatenate((plus, minus), axis=0)
        weights = numpy.einsum("ij,ij->i", stacked.conj(), stacked).real
        keep = weights > CONFIG.BRANCH_TOLERANCE

        labels = numpy.repeat(numpy.array([1, -1], dtype=numpy.int8), len(outcomes))
        outcomes = numpy.column_stack((numpy.concatenate((outcomes, outcomes)), labels))[keep]
        if depth == len(cells) - 1:
            probabilities = weights[keep]
            return outcomes, probabilities / probabilities.sum()

        branches = stacked[keep]
        if branches.size > CONFIG.MAX_BRANCH_AMPLITUDES:
            raise BudgetExceeded(f"Sequential measurement of {len(cells)} cells branches into {branches.shape[0]} "
                                 f"states, beyond the amplitude budget {CONFIG.MAX_BRANCH_AMPLITUDES}.")


def sample_context(cells: Sequence[PauliString], psi: Statevector, shots: int, epsilon: float,
                   rng: numpy.random.Generator, context: str = "") -> ContextSamples:
    """`shots` independent runs of a context. Falls back to shot-by-shot collapse when branching is too wide."""
    if shots < 1:
        raise ValueError(f"Need at least one shot, got {shots}.")
    check_epsilon(epsilon)

    try:
        outcomes, probabilities = context_distribution(cells, psi)
        ideal = outcomes[rng.choice(len(probabilities), size=shots, p=probabilities)]
    except BudgetExceeded:
        ideal = numpy.array([run_context(cells, psi, 0.0, rng).outcomes for _ in range(shots)], dtype=numpy.int8)

    flips = rng.random(ideal.shape) < epsilon
    noisy = numpy.where(flips, -ideal, ideal).astype(numpy.int8)
    return ContextSamples(context, noisy, flips, is_order_dependent(cells))


def term_cells(term: ContextTerm, array: MagicArray) -> List[PauliString]:
    """What is measured for a term: its cells in order, or the product operator as a single observable."""
    if term.single_observable:
        return [term.operator(array)]
    return [array.cell(*c) for c in term.cells]


def _check_array_state(array: MagicArray, psi: Statevector):
    if psi.num_qubits != array.q:
        raise ValueError(f"Dimension mismatch: {array.q}-qubit array on a {psi.num_qubits}-qubit state.")


def estimate_xks(array: MagicArray, psi: Statevector, shots: int, epsilon: float, rng: numpy.random.Generator,
                 form: str = GENERALIZED, logger=None) -> XksEstimate:
    """Monte-Carlo estimate of X_KS from `shots` runs of every context, with its standard error."""
    if shots < 1:
        raise ValueError(f"Need at least one shot, got {shots}.")
    check_epsilon(epsilon)
    _check_array_state(array, psi)

    xks = make_form(form, array)
    means, errors, coefficients, contexts = [], [], [], {}
    for term in xks.terms:
        samples = sample_context(term_cells(term, array), psi, shots, epsilon, rng, context=term.label)
        products = samples.products
        means.append(float(products.mean()))
        errors.append(standard_error(products))
        coefficients.append(term.coefficient)
        contexts[term.label] = means[-1]

        if logger is not None:
            for record in samples.records():
                logger.log(record)

    return XksEstimate(
        q=array.q,
        form=xks.name,
        shots=shots,
        epsilon=epsilon,
        value=xks.constant + float(numpy.dot(coefficients, means)),
        standard_error=combined_standard_error(errors, coefficients),
        exact=exact_xks(array, psi, form=form),
        contexts=contexts,
    )


def noisy_xks_value(array: MagicArray, psi: Statevector, epsilon: float, form: str = GENERALIZED) -> float:
    """Expected estimate under flip noise: every context mean damped by (1 - 2 epsilon)^(cells measured)."""
    check_epsilon(epsilon)
    _check_array_state(array, psi)

    xks = make_form(form, array)
    total = float(xks.constant)
    for term in xks.terms:
        cells = term_cells(term, array)
        outcomes, probabilities = context_distribution(cells, psi)
        ideal_mean = float(numpy.dot(probabilities, numpy.prod(outcomes, axis=1)))
        total += term.coefficient * (1 - 2 * epsilon) ** len(cells) * ideal_mean

    return total


def epsilon_sweep(array: MagicArray, psi: Statevector, shots: int, rng: numpy.random.Generator,
                  epsilons: Optional[Sequence[float]] = None, form: str = GENERALIZED,
                  verbose: bool = False) -> List[XksEstimate]:
    epsilons = CONFIG.EPSILON_SWEEP if epsilons is None else epsilons
    estimates = []
    for epsilon in epsilons:
        estimate = estimate_xks(array, psi, shots, epsilon, rng, form=form)
        estimates.append(estimate)
        if verbose:
            print(f"[epsilon={epsilon:.3f}] X_KS = {estimate.value:.4f} +- {estimate.standard_error:.4f}",
                  file=sys.stderr)

    return estimates


def find_crossing_epsilon(array: MagicArray, psi: Statevector, form: str = GENERALIZED,
                          bound: Optional[float] = None) -> Optional[float]:
    """Flip probability at which the noisy quantum value drops to the classical bound (q+2 by default)."""
    bound = array.q + 2 if bound is None else bound

    def excess(epsilon: float) -> float:
        return noisy_xks_value(array, psi, epsilon, form=form) - bound

    if excess(0.0) <= 0 or excess(0.5) >= 0:
        return None
    return float(brentq(excess, 0.0, 0.5, xtol=1e-12))
