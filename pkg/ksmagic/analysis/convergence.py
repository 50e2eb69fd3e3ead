"""Closed-form classical-limit table: classical bound q+2 against quantum value q+4, next to the (1-2e)^q decay of
the GHZ argument with imperfect instruments."""
import math
from dataclasses import dataclass, asdict
from typing import List

import numpy
import pandas as pd
import simplejson as json

from ksmagic.config import CONFIG
from ksmagic.exceptions import BudgetExceeded

CSV_COLUMNS = ["q", "classical_bound", "quantum_value", "ratio", "gap", "ghz_comparator"]
FLOAT_FORMAT = "%.12g"


@dataclass(frozen=True)
class ConvergenceRow:
    q: int
    classical_bound: int
    quantum_value: int
    ratio: float
    gap: float
    ghz_comparator: float
    asymptote: float  # 1 - 2/q, the large-q shorthand for the ratio
    past_crossover: bool  # q >= 1/epsilon
    ks_gap_exceeds_ghz: bool


def check_table_arguments(q_max: int, epsilon: float):
    if int(q_max) != q_max or q_max < 2:
        raise ValueError(f"q_max must be an integer >= 2, got {q_max}.")
    if q_max - 1 > CONFIG.MAX_TABLE_ROWS:
        raise BudgetExceeded(f"A table up to q_max={q_max} exceeds the row budget {CONFIG.MAX_TABLE_ROWS}.")
    if not 0.0 < epsilon < 0.5:
        raise ValueError(f"epsilon must lie in (0, 1/2), got {epsilon}.")


def converge_frame(q_max: int, epsilon: float) -> pd.DataFrame:
    check_table_arguments(q_max, epsilon)

    q = numpy.arange(2, int(q_max) + 1, dtype=numpy.int64)
    gap = 2.0 / (q + 4)
    ghz = numpy.power(1.0 - 2.0 * epsilon, q.astype(numpy.float64))

    return pd.DataFrame(dict(
        q=q,
        classical_bound=q + 2,
        quantum_value=q + 4,
        ratio=(q + 2) / (q + 4),
        gap=gap,
        ghz_comparator=ghz,
        asymptote=1.0 - 2.0 / q,
        past_crossover=q >= 1.0 / epsilon,
        ks_gap_exceeds_ghz=gap > ghz,
    ))


def converge_table(q_max: int, epsilon: float) -> List[ConvergenceRow]:
    return converge_table_from_frame(converge_frame(q_max, epsilon))


def first_q_below_gap(threshold: float) -> int:
    """Smallest q >= 2 with 2/(q+4) < threshold."""
    if not 0.0 < threshold:
        raise ValueError(f"Gap threshold must be positive, got {threshold}.")

    q = max(2, math.floor(2.0 / threshold) - 5)
    while q > 2 and 2.0 / (q + 3) < threshold:
        q -= 1
    while 2.0 / (q + 4) >= threshold:
        q += 1
    return q


def _log_gap_excess(q: int, epsilon: float) -> float:
    # log(2/(q+4)) - log((1-2e)^q); finite where (1-2e)^q underflows
    return math.log(2.0 / (q + 4)) - q * math.log1p(-2.0 * epsilon)


def crossover_q(epsilon: float) -> int:
    """Smallest q >= 2 at which the gap 2/(q+4) is larger than the GHZ comparator (1-2e)^q.

    The log excess is convex in q, so past its minimum it only grows; search outward from there and bisect.
    """
    check_table_arguments(2, epsilon)
    if _log_gap_excess(2, epsilon) > 0:
        return 2

    low = max(2, int(-1.0 / math.log1p(-2.0 * epsilon)) - 4)
    high = low + 1
    while _log_gap_excess(high, epsilon) <= 0:
        low, high = high, 2 * high
    while high - low > 1:
        middle = (low + high) // 2
        if _log_gap_excess(middle, epsilon) > 0:
            high = middle
        else:
            low = middle
    return high


def render_csv(frame: pd.DataFrame) -> str:
    return frame[CSV_COLUMNS].to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def render_json(frame: pd.DataFrame, epsilon: float) -> str:
    rows = [asdict(row) for row in converge_table_from_frame(frame)]
    return json.dumps(dict(epsilon=epsilon, crossover_q=crossover_q(epsilon), rows=rows), indent=2) + "\n"


def converge_table_from_frame(frame: pd.DataFrame) -> List[ConvergenceRow]:
    return [ConvergenceRow(q=int(r.q), classical_bound=int(r.classical_bound), quantum_value=int(r.quantum_value),
                           ratio=float(r.ratio), gap=float(r.gap), ghz_comparator=float(r.ghz_comparator),
                           asymptote=float(r.asymptote), past_crossover=bool(r.past_crossover),
                           ks_gap_exceeds_ghz=bool(r.ks_gap_exceeds_ghz))
            for r in frame.itertuples(index=False)]
