from ksmagic.quantum.states import Statevector, make_state, parse_state, AVAILABLE_STATES
from ksmagic.quantum.engine import apply, expectation, measure, exact_xks
from ksmagic.quantum.sampling import ShotRecord, XksEstimate, ContextSamples, run_context, sample_context, \
    context_distribution, estimate_xks, noisy_xks_value, epsilon_sweep, find_crossing_epsilon
