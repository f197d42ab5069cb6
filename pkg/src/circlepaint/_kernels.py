"""Compiled inner loop for the clique number of an interval system."""
import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True)
def max_chain_over_gaps(lefts, rights, candidates):
    """Longest dominance chain among intervals containing each candidate gap.

    ``lefts``/``rights`` are sorted by left rank; ``candidates[j]`` flags that
    the gap right after ``lefts[j]`` must be inspected. Returns the best chain
    length and the rightmost gap achieving it (-1 if there is none).
    """
    m = lefts.shape[0]
    tails = np.empty(m + 1, dtype=np.int64)
    best = 0
    best_gap = -1
    for j in range(m):
        if not candidates[j]:
            continue
        g = lefts[j]
        length = 0
        for i in range(j + 1):
            r = rights[i]
            if r <= g:
                continue
            lo, hi = 0, length
            while lo < hi:
                mid = (lo + hi) >> 1
                if tails[mid] < r:
                    lo = mid + 1
                else:
                    hi = mid
            tails[lo] = r
            if lo == length:
                length += 1
        if length >= best:
            best = length
            best_gap = g
    return best, best_gap
