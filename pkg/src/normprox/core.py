"""Core data containers, matrix norms, and the per-column sort cache.

Everything the bisection needs per probe is precomputed once here: the
columns of |X| sorted in decreasing order and their running sums. All
containers are frozen; the cached arrays are additionally marked read-only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .validation import check_matrix, check_positive


@dataclass(frozen=True)
class ColumnCache:
    """Sorted-column view of a matrix, shared by every dual evaluation.

    sorted_abs holds |X| with each column sorted in nonincreasing order,
    cumsum its column-wise running sums, col_norms the column l1 norms
    (the last cumsum row), norm_order the column indices by decreasing
    norm (ties by index), and t_max_global the largest column norm.
    """

    sorted_abs: np.ndarray
    cumsum: np.ndarray
    col_norms: np.ndarray
    norm_order: np.ndarray
    t_max_global: float

    @property
    def shape(self) -> tuple[int, int]:
        return self.sorted_abs.shape


@dataclass(frozen=True)
class ProxConfig:
    """Solver settings: penalty weight lam, bracket width delta, iteration cap.

    max_iters None means the adaptive default ceil(log2(t_max/delta)) + 8,
    resolved per instance once t_max is known.
    """

    lam: float
    delta: float = 1e-8
    max_iters: int | None = None

    def __post_init__(self):
        check_positive(self.lam, "lam")
        check_positive(self.delta, "delta")
        if self.max_iters is not None and int(self.max_iters) < 1:
            raise ValueError(f"max_iters must be at least 1, got {self.max_iters}")


@dataclass(frozen=True)
class ProxSolution:
    """Solver output: the shrunk matrix plus the dual side of the optimum.

    active_set lists (0-based, ascending) the columns whose l1 norm strictly
    exceeds t. t_interval is the final bisection bracket (t_lo, t_hi) with
    t its midpoint; the true slack lies inside the bracket, so every dual
    weight is within delta/lam of its exact value and every entry of U
    within delta. active_set_certified is True when no column norm falls
    within delta of t, which pins the reported active set exactly.
    """

    U: np.ndarray
    t: float
    nu: np.ndarray
    active_set: np.ndarray
    iterations: int
    active_set_certified: bool
    t_interval: tuple[float, float]


@dataclass(frozen=True)
class KktReport:
    """Residuals of the five optimality conditions at a reported solution.

    All fields are nonnegative; zero everywhere means an exact optimum.
    dual_sum_gap is |sum(nu) - 1|, which is intentionally nonzero when the
    penalty exceeds the shrink-to-zero threshold (see prox_l11).
    """

    primal_feasibility: float
    dual_feasibility: float
    dual_sum_gap: float
    complementary_slackness: float
    stationarity: float

    def max_residual(self) -> float:
        return max(
            self.primal_feasibility,
            self.dual_feasibility,
            self.dual_sum_gap,
            self.complementary_slackness,
            self.stationarity,
        )


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def build_column_cache(X) -> ColumnCache:
    """Sort |X| column-wise in decreasing order and accumulate running sums.

    O(n log n * m). Ties among equal absolute values do not affect the
    sorted values; ties among column norms are broken by column index in
    norm_order (stable argsort).
    """
    X = check_matrix(X)
    sorted_abs = np.abs(X)
    sorted_abs.sort(axis=0)
    sorted_abs = np.ascontiguousarray(sorted_abs[::-1])
    cumsum = np.cumsum(sorted_abs, axis=0)
    col_norms = cumsum[-1].copy()
    norm_order = np.argsort(-col_norms, kind="stable")
    t_max_global = float(col_norms[norm_order[0]])
    return ColumnCache(
        sorted_abs=_freeze(sorted_abs),
        cumsum=_freeze(cumsum),
        col_norms=_freeze(col_norms),
        norm_order=_freeze(norm_order),
        t_max_global=t_max_global,
    )


def l11_norm(X) -> float:
    """Largest column l1 norm of X."""
    X = check_matrix(X)
    return float(np.abs(X).sum(axis=0).max())


def linfinf_norm(X) -> float:
    """Largest row l1 norm of X; equals l11_norm of the transpose."""
    X = check_matrix(X)
    return float(np.abs(X).sum(axis=1).max())


def lambda_max(X) -> float:
    """Sum of the column-wise maxima of |X|.

    The smallest penalty weight at which the prox output collapses to the
    zero matrix; also the dual norm of X for the max-column-l1 norm.
    """
    X = check_matrix(X)
    return float(np.abs(X).max(axis=0).sum())
