"""Command line front end: build arrays, verify the contradiction, bound it classically and quantum mechanically,
sample it with noisy instruments and tabulate the classical limit.

Exit codes: 0 success, 1 internal invariant violated, 2 invalid input, 3 `verify` found no contradiction.
"""
import argparse
import sys
from contextlib import nullcontext
from typing import List, Optional, Tuple

import numpy
import simplejson as json

from ksmagic.analysis.convergence import converge_frame, crossover_q, render_csv, render_json
from ksmagic.arrays.forms import AVAILABLE_FORMS, GENERALIZED, ORIENTED
from ksmagic.arrays.magic import MagicArray, build, commutation_report, context_products, count_zx_orderings, \
    find_contradiction_perm, grand_product, m_of
from ksmagic.arrays.util import prepare_permutation
from ksmagic.classical.oracle import brute_max
from ksmagic.config import CONFIG
from ksmagic.exceptions import InvariantViolation
from ksmagic.quantum.engine import exact_xks
from ksmagic.quantum.sampling import check_epsilon, epsilon_sweep, estimate_xks, find_crossing_epsilon, \
    noisy_xks_value
from ksmagic.quantum.states import check_qubit_budget, parse_state
from ksmagic.utilities.log import ShotLogger

EXIT_OK, EXIT_INVARIANT, EXIT_INVALID, EXIT_NO_CONTRADICTION = 0, 1, 2, 3


def _dump(document: dict) -> str:
    return json.dumps(document, indent=2) + "\n"


def _number(value: float) -> str:
    return f"{value:.10g}"


def resolve_array(args) -> MagicArray:
    if args.contradiction:
        perm = find_contradiction_perm(args.qubits, require_commuting_contexts=args.commuting_contexts,
                                       verbose=args.verbose)
        if perm is None:
            raise ValueError(f"No contradiction permutation exists for q={args.qubits}"
                             f"{' with commuting contexts' if args.commuting_contexts else ''}.")
    else:
        perm = prepare_permutation(args.perm, args.qubits)
        if perm is None:
            raise ValueError(f"Permutation setting '{args.perm}' has no solution for q={args.qubits}.")

    return build(args.qubits, perm)


def render_grid(array: MagicArray) -> str:
    cells = [[str(p) for p in row] for row in array.grid]
    width = max(len(c) for row in cells for c in row)
    lines = [f"q={array.q} perm={array.perm}"]
    lines += ["  ".join(c.rjust(width) for c in row) for row in cells]
    return "\n".join(lines) + "\n"


def run_array(args) -> Tuple[int, str]:
    array = resolve_array(args)
    if args.format == "json":
        return EXIT_OK, _dump(array.to_dict())
    return EXIT_OK, render_grid(array)


def run_verify(args) -> Tuple[int, str]:
    array = resolve_array(args)

    m = m_of(array.perm)
    if count_zx_orderings(array) != m:
        raise InvariantViolation(f"Closed-form m={m} disagrees with the collected row 3 for perm {array.perm}.")
    gp = grand_product(array)
    products = {label: str(p) for label, p in context_products(array).items()}
    report = commutation_report(array)
    code = EXIT_OK if gp == -1 else EXIT_NO_CONTRADICTION

    if args.format == "json":
        return code, _dump(dict(q=array.q, perm=list(array.perm.images), m=m, grand_product=gp,
                                contradiction=gp == -1, products=products, commutation=report.to_dict()))

    lines = [f"q={array.q} perm={array.perm}", f"m={m}", f"grand product: {gp:+d}",
             f"contradiction: {'yes' if gp == -1 else 'no'}", "context products:"]
    lines += [f"  {label}: {text}" for label, text in products.items()]
    lines.append(f"commutation: {'all contexts commuting' if report.all_commuting else 'violations found'}")
    for context in report.contexts:
        if not context.mutually_commuting:
            pairs = ", ".join(f"{a}-{b}" for a, b in context.violations)
            lines.append(f"  {context.label}: {pairs}")
    return code, "\n".join(lines) + "\n"


def run_classical(args) -> Tuple[int, str]:
    array = resolve_array(args)
    result = brute_max(array, form=args.form, verbose=args.verbose)

    if args.format == "json":
        return EXIT_OK, _dump(result.to_dict())
    return EXIT_OK, (f"q={result.q} form={result.form}\n"
                     f"classical_max: {result.classical_max}\n"
                     f"quantum_value: {result.quantum_value}\n"
                     f"argmax: {' '.join(f'{v:+d}' for v in result.argmax.values)}\n"
                     f"search_space_size: {result.search_space_size}\n")


def run_quantum(args) -> Tuple[int, str]:
    array = resolve_array(args)
    psi = parse_state(args.state, array.q)
    value = exact_xks(array, psi, form=args.form)

    if args.format == "json":
        return EXIT_OK, _dump(dict(q=array.q, perm=list(array.perm.images), form=args.form, state=args.state,
                                   x_ks=value))
    return EXIT_OK, f"q={array.q} perm={array.perm} form={args.form} state={args.state}\nX_KS: {_number(value)}\n"


def _sampling_inputs(args):
    if args.shots < 1:
        raise ValueError(f"--shots must be at least 1, got {args.shots}.")
    array = resolve_array(args)
    check_qubit_budget(array.q, CONFIG.MAX_SAMPLING_QUBITS, "sampling")
    state = args.state if args.state is not None else f"random:{args.seed}"
    return array, state, parse_state(state, array.q)


def run_sample(args) -> Tuple[int, str]:
    check_epsilon(args.epsilon)
    array, state, psi = _sampling_inputs(args)
    rng = numpy.random.default_rng(args.seed)

    logger = None
    if args.dump is not None:
        logger = ShotLogger(args.dump, dict(q=array.q, perm=list(array.perm.images), form=args.form, state=state,
                                            shots=args.shots, epsilon=args.epsilon, seed=args.seed))
    with (logger if logger is not None else nullcontext()):
        estimate = estimate_xks(array, psi, args.shots, args.epsilon, rng, form=args.form, logger=logger)
        if logger is not None:
            logger.finalize(estimate.to_dict())

    if args.format == "json":
        return EXIT_OK, _dump(dict(**estimate.to_dict(), perm=list(array.perm.images), state=state, seed=args.seed))
    return EXIT_OK, (f"q={array.q} perm={array.perm} form={estimate.form} state={state} seed={args.seed}\n"
                     f"shots per context: {estimate.shots}\n"
                     f"epsilon: {_number(estimate.epsilon)}\n"
                     f"X_KS estimate: {_number(estimate.value)} +- {_number(estimate.standard_error)}\n"
                     f"X_KS exact: {_number(estimate.exact)}\n")


def run_sweep(args) -> Tuple[int, str]:
    epsilons = [float(e) for e in args.epsilons.split(",")] if args.epsilons else list(CONFIG.EPSILON_SWEEP)
    for epsilon in epsilons:
        check_epsilon(epsilon)
    array, state, psi = _sampling_inputs(args)
    rng = numpy.random.default_rng(args.seed)

    estimates = epsilon_sweep(array, psi, args.shots, rng, epsilons=epsilons, form=args.form, verbose=args.verbose)
    expected = [noisy_xks_value(array, psi, e, form=args.form) for e in epsilons]
    crossing = find_crossing_epsilon(array, psi, form=args.form)

    if args.format == "json":
        return EXIT_OK, _dump(dict(q=array.q, form=args.form, state=state, seed=args.seed, crossing_epsilon=crossing,
                                   sweep=[dict(**e.to_dict(), expected=x) for e, x in zip(estimates, expected)]))
    lines = [f"q={array.q} perm={array.perm} form={args.form} state={state} seed={args.seed}",
             "epsilon,estimate,standard_error,expected"]
    lines += [f"{_number(e.epsilon)},{_number(e.value)},{_number(e.standard_error)},{_number(x)}"
              for e, x in zip(estimates, expected)]
    lines.append(f"crossing epsilon: {'none' if crossing is None else _number(crossing)}")
    return EXIT_OK, "\n".join(lines) + "\n"


def run_converge(args) -> Tuple[int, str]:
    frame = converge_frame(args.max_q, args.epsilon)
    text = render_csv(frame) if args.format == "csv" else render_json(frame, args.epsilon)

    if args.out is not None:
        with open(args.out, "w", newline="\n") as f:
            f.write(text)
        return EXIT_OK, ""

    if args.verbose:
        print(f"KS gap exceeds the GHZ comparator from q={crossover_q(args.epsilon)} on.", file=sys.stderr)
    return EXIT_OK, text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ksmagic", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    subparsers = parser.add_subparsers(dest="command", required=True)

    array_options = argparse.ArgumentParser(add_help=False)
    array_options.add_argument("-q", "--qubits", type=int, required=True, help="number of qubits q >= 2")
    array_options.add_argument("--perm", type=str, default=None,
                               help="row 2 ordering: a list like 2,3,1 or one of cycle, pairs, reversal, swap, "
                                    "contradiction, commuting-contradiction (default: cycle)")
    array_options.add_argument("--contradiction", action="store_true",
                               help="use the lexicographically smallest permutation with grand product -1")
    array_options.add_argument("--commuting-contexts", action="store_true",
                               help="with --contradiction, also require every row and column to commute")
    array_options.add_argument("-v", "--verbose", action="store_true", help="progress and status on stderr")

    text_or_json = argparse.ArgumentParser(add_help=False)
    text_or_json.add_argument("--format", type=str, choices=["text", "json"], default="text")

    sampling_options = argparse.ArgumentParser(add_help=False)
    sampling_options.add_argument("--shots", type=int, required=True, help="shots per context")
    sampling_options.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    sampling_options.add_argument("--state", type=str, default=None,
                                  help="basis:I, random:SEED or ghz (default: random:<seed>)")
    sampling_options.add_argument("--form", type=str, choices=AVAILABLE_FORMS, default=GENERALIZED)

    p = subparsers.add_parser("array", parents=[array_options, text_or_json], help="print the magic array")
    p.set_defaults(handler=run_array)

    p = subparsers.add_parser("verify", parents=[array_options, text_or_json],
                              help="grand product, m, context products and commutation report")
    p.set_defaults(handler=run_verify)

    p = subparsers.add_parser("classical", parents=[array_options, text_or_json],
                              help="exhaustive classical maximum of X_KS")
    p.add_argument("--form", type=str, choices=AVAILABLE_FORMS, default=ORIENTED)
    p.set_defaults(handler=run_classical)

    p = subparsers.add_parser("quantum", parents=[array_options, text_or_json], help="exact X_KS on a state")
    p.add_argument("--state", type=str, default="random:0", help="basis:I, random:SEED or ghz")
    p.add_argument("--form", type=str, choices=AVAILABLE_FORMS, default=GENERALIZED)
    p.set_defaults(handler=run_quantum)

    p = subparsers.add_parser("sample", parents=[array_options, text_or_json, sampling_options],
                              help="Monte-Carlo estimate of X_KS with outcome flips")
    p.add_argument("--epsilon", type=float, default=0.0, help="flip probability per outcome, in [0, 1/2]")
    p.add_argument("--dump", type=str, default=None, help="write every shot as JSON lines to this path")
    p.set_defaults(handler=run_sample)

    p = subparsers.add_parser("sweep", parents=[array_options, text_or_json, sampling_options],
                              help="X_KS estimates over a range of flip probabilities")
    p.add_argument("--epsilons", type=str, default=None,
                   help=f"comma separated flip probabilities (default: {','.join(map(str, CONFIG.EPSILON_SWEEP))})")
    p.set_defaults(handler=run_sweep)

    p = subparsers.add_parser("converge", help="classical-limit table (q+2)/(q+4) against (1-2e)^q")
    p.add_argument("--max-q", type=int, required=True, help="largest q in the table")
    p.add_argument("--epsilon", type=float, default=CONFIG.DEFAULT_EPSILON,
                   help=f"GHZ comparator imperfection (default: {CONFIG.DEFAULT_EPSILON})")
    p.add_argument("--out", type=str, default=None, help="write the table to this file instead of stdout")
    p.add_argument("--format", type=str, choices=["csv", "json"], default="csv")
    p.add_argument("-v", "--verbose", action="store_true", help="status on stderr")
    p.set_defaults(handler=run_converge)

    return parser


def cli_main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code not in (0, None) else EXIT_OK

    try:
        code, output = args.handler(args)
    except InvariantViolation as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"error: cannot write {e.filename}: {e.strerror}", file=sys.stderr)
        return EXIT_INVALID

    sys.stdout.write(output)
    return code


if __name__ == '__main__':
    sys.exit(cli_main())
