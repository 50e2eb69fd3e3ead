from typing import Sequence, Tuple

import numpy
import scipy.stats


def standard_error(samples: Sequence[float]) -> float:
    """Standard error of the mean; zero for fewer than two samples or constant samples."""
    a = numpy.asarray(samples, dtype=numpy.float64)
    if a.size < 2:
        return 0.0

    se = scipy.stats.sem(a)
    return 0.0 if numpy.isnan(se) else float(se)


def combined_standard_error(errors: Sequence[float], coefficients: Sequence[float]) -> float:
    """Standard error of sum(c_k * mean_k) for independently sampled means."""
    e = numpy.asarray(errors, dtype=numpy.float64)
    c = numpy.asarray(coefficients, dtype=numpy.float64)
    return float(numpy.sqrt(numpy.sum((c * e) ** 2)))


def sigma_band(value: float, error: float, n_sigma: float = 3.0) -> Tuple[float, float]:
    return value - n_sigma * error, value + n_sigma * error


def within_sigma(value: float, target: float, error: float, n_sigma: float = 3.0) -> bool:
    """Whether target lies in the n-sigma band around value. A zero error demands exact agreement up to round-off."""
    low, high = sigma_band(value, error, n_sigma)
    return low - 1e-12 <= target <= high + 1e-12
