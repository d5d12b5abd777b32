"""Active set and per-column dual weights nu_j(t), evaluated from the cache.

For a column with reverse-sorted magnitudes y and running sums z, the dual
weight at slack level t is nu = (z_k - t)/(k*lam) where k is the number of
entries surviving the soft threshold. Membership of index i in the support
is decided by the sign of y_i - (z_i - t)/i (the penalty weight cancels out
of the comparison y_i > lam*nu(t, i)). That statistic is positive up to the
optimal k and nonpositive beyond it, with exactly one change, so a bisection
over the index finds the boundary in O(log n) without materializing the
whole sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ColumnCache
from .validation import check_positive


@dataclass(frozen=True)
class DualEval:
    """Dual weights at one slack level: nu (zero off the active set),
    per-column support sizes, and the sum of nu in column order."""

    nu: np.ndarray
    support_sizes: np.ndarray
    sum_nu: float


def active_set(cache: ColumnCache, t: float) -> np.ndarray:
    """Columns whose l1 norm strictly exceeds t, ascending. O(m)."""
    return np.flatnonzero(cache.col_norms > t)


def nu_of_t_column(sorted_abs_col, cumsum_col, t: float, lam: float):
    """Dual weight of one active column at slack level t.

    Returns (nu, support_size) with sum_i max(y_i - lam*nu, 0) = t held
    exactly by the rational form nu = (z_k - t)/(k*lam). The column must
    be active: ||x||_1 > t > 0.
    """
    check_positive(lam, "lam")
    y = sorted_abs_col
    z = cumsum_col
    n = len(y)
    if t <= 0:
        raise ValueError(f"slack level must be positive, got {t!r}")
    if z[n - 1] <= t:
        raise ValueError(
            f"column is not active: l1 norm {z[n - 1]!r} does not exceed t={t!r}"
        )
    # Support test at index i (1-based): y_i - (z_i - t)/i > 0, strictly,
    # so entries shrunk exactly to zero do not count toward the support.
    # A tied index would yield the same nu, only a larger reported size.
    # At i=1 the statistic equals t > 0, so lo starts valid.
    if y[n - 1] - (z[n - 1] - t) / n > 0.0:
        k = n
    else:
        lo, hi = 1, n  # statistic > 0 at lo, <= 0 at hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if y[mid - 1] - (z[mid - 1] - t) / mid > 0.0:
                lo = mid
            else:
                hi = mid
        k = lo
    return float((z[k - 1] - t) / (k * lam)), k


def nu_vector(cache: ColumnCache, t: float, lam: float) -> DualEval:
    """Dual weights of every column at slack level t in (0, t_max_global).

    Inactive columns get nu_j = 0; active ones go through the per-column
    index search, O(m log n) total. sum_nu is accumulated in column order.
    """
    if not 0.0 < t < cache.t_max_global:
        raise ValueError(
            f"t={t!r} is outside the open bracket (0, {cache.t_max_global!r})"
        )
    check_positive(lam, "lam")
    n, m = cache.shape
    nu = np.zeros(m)
    sizes = np.zeros(m, dtype=np.intp)
    Y = cache.sorted_abs
    Z = cache.cumsum
    for j in active_set(cache, t):
        nu[j], sizes[j] = nu_of_t_column(Y[:, j], Z[:, j], t, lam)
    return DualEval(nu=nu, support_sizes=sizes, sum_nu=float(nu.sum()))
