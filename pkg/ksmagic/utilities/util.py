import numpy


def popcount(value: int) -> int:
    """Number of set bits of a non-negative Python integer."""
    return bin(value).count("1")


def parity(values: numpy.ndarray) -> numpy.ndarray:
    """Vectorized parity (popcount mod 2) of non-negative 64 bit integers."""
    folded = numpy.asarray(values, dtype=numpy.uint64).copy()
    for shift in (32, 16, 8, 4, 2, 1):
        folded ^= folded >> numpy.uint64(shift)

    return (folded & numpy.uint64(1)).astype(numpy.int64)


def signs(values: numpy.ndarray, mask: int) -> numpy.ndarray:
    """(-1) raised to the parity of `values & mask`, elementwise."""
    return 1 - 2 * parity(numpy.asarray(values, dtype=numpy.uint64) & numpy.uint64(mask))
