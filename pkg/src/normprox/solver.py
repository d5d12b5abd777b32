"""Bisection solver for the matrix prox, plus certification and KKT reporting.

prox_l11 minimizes  max_j ||U_j||_1 + ||U - X||_F^2 / (2*lam)  by bisecting
on the slack level t shared by all tight columns: the dual weights nu_j(t)
sum to more than 1 left of the optimum and less than 1 right of it, so the
sign of sum(nu) - 1 steers a plain interval halving. prox_linfinf is the
same operator applied through the transpose.
"""

from __future__ import annotations

import math

import numpy as np

from .core import ColumnCache, KktReport, ProxConfig, ProxSolution, build_column_cache
from .dual import active_set, nu_vector
from .validation import check_matrix, check_positive

# |sum(nu) - 1| at or below this counts as an exact interior hit and ends
# the bisection at the probed t.
_EXACT_HIT = 1e-14


class IterationLimitError(RuntimeError):
    """Bisection hit its iteration cap before the bracket closed.

    Unreachable when the cap is at least ceil(log2(t_max/delta)); carries
    the open bracket for diagnosis.
    """

    def __init__(self, t_lo: float, t_hi: float, iterations: int):
        super().__init__(
            f"iteration cap {iterations} reached with bracket ({t_lo!r}, {t_hi!r}) still open"
        )
        self.t_lo = t_lo
        self.t_hi = t_hi
        self.iterations = iterations


def default_max_iters(t_max: float, delta: float) -> int:
    """Iteration cap with headroom: ceil(log2(t_max/delta)) + 8."""
    if t_max <= delta:
        return 8
    return math.ceil(math.log2(t_max / delta)) + 8


def prox_l11(X, config: ProxConfig) -> ProxSolution:
    """Prox of lam times the largest column l1 norm, to precision delta.

    When lam >= lambda_max(X) the output is exactly the zero matrix with
    t = 0 and nu_j = (max_i |x_ij|)/lam reported as-is (their sum falls
    below 1 once lam exceeds the threshold strictly; kkt_report surfaces
    that in dual_sum_gap). Otherwise t is bisected over [0, t_max] until
    the bracket is narrower than delta, which puts every entry of U within
    delta of the exact prox and every nu_j within delta/lam.

    Zero columns never enter the active set; they pass through with
    U_j = 0 and nu_j = 0.
    """
    X = check_matrix(X)
    if not isinstance(config, ProxConfig):
        config = ProxConfig(**dict(config))
    lam, delta = config.lam, config.delta
    n, m = X.shape
    absX = np.abs(X)
    col_maxes = absX.max(axis=0)
    if lam >= float(col_maxes.sum()):
        # everything clips; all nonzero columns are tight at t = 0
        nu = col_maxes / lam
        active = np.flatnonzero(absX.sum(axis=0) > 0)
        return ProxSolution(
            U=np.zeros_like(X),
            t=0.0,
            nu=nu,
            active_set=active,
            iterations=0,
            active_set_certified=True,
            t_interval=(0.0, 0.0),
        )

    col_norms = absX.sum(axis=0)
    keep = np.flatnonzero(col_norms > 0)
    solve_all = keep.size == m
    cache = build_column_cache(X if solve_all else X[:, keep])
    cap = config.max_iters
    if cap is None:
        cap = default_max_iters(cache.t_max_global, delta)

    t_lo, t_hi = 0.0, cache.t_max_global
    t = 0.5 * t_hi
    iterations = 0
    while t_hi - t_lo > delta:
        if iterations >= cap:
            raise IterationLimitError(t_lo, t_hi, iterations)
        gap = nu_vector(cache, t, lam).sum_nu - 1.0
        if abs(gap) <= _EXACT_HIT:
            t_lo = t_hi = t
            break
        if gap > 0.0:
            t_lo = t
        else:
            t_hi = t
        t = 0.5 * (t_lo + t_hi)
        iterations += 1

    # final duals recomputed once at the reported t so U, t, nu agree
    ev = nu_vector(cache, t, lam)
    if solve_all:
        nu = ev.nu
        active = active_set(cache, t)
    else:
        nu = np.zeros(m)
        nu[keep] = ev.nu
        active = keep[active_set(cache, t)]
    U = np.sign(X) * np.maximum(absX - lam * nu, 0.0)
    return ProxSolution(
        U=U,
        t=float(t),
        nu=nu,
        active_set=active,
        iterations=iterations,
        active_set_certified=certify_active_set(cache, t, delta),
        t_interval=(float(t_lo), float(t_hi)),
    )


def prox_linfinf(X, config: ProxConfig) -> ProxSolution:
    """Prox of lam times the largest row l1 norm.

    Computed as the transposed prox of the transpose; t, nu, and
    active_set therefore refer to rows of X.
    """
    X = check_matrix(X)
    sol = prox_l11(X.T, config)
    return ProxSolution(
        U=sol.U.T,
        t=sol.t,
        nu=sol.nu,
        active_set=sol.active_set,
        iterations=sol.iterations,
        active_set_certified=sol.active_set_certified,
        t_interval=sol.t_interval,
    )


def certify_active_set(cache: ColumnCache, t_hat: float, delta: float) -> bool:
    """True when no column norm lies in (t_hat - delta, t_hat + delta].

    The active set is then the same at every t the final bracket could
    contain, so the reported set is exactly the optimal one rather than a
    delta-approximation of it.
    """
    c = cache.col_norms
    return not bool(np.any((c > t_hat - delta) & (c <= t_hat + delta)))


def kkt_report(X, lam: float, sol) -> KktReport:
    """Residuals of the optimality system at a reported solution.

    sol may be any object with U, t, nu attributes. Pure measurement; all
    residuals are exactly zero at a true optimum with lam below the
    shrink-to-zero threshold.
    """
    X = check_matrix(X)
    lam = check_positive(lam, "lam")
    U = np.asarray(sol.U, dtype=float)
    nu = np.asarray(sol.nu, dtype=float)
    t = float(sol.t)
    if U.shape != X.shape:
        raise ValueError(f"U has shape {U.shape}, expected {X.shape}")
    if nu.shape != (X.shape[1],):
        raise ValueError(f"nu has shape {nu.shape}, expected ({X.shape[1]},)")
    u_norms = np.abs(U).sum(axis=0)
    shrunk = np.sign(X) * np.maximum(np.abs(X) - lam * nu, 0.0)
    return KktReport(
        primal_feasibility=float(max(np.max(u_norms - t), 0.0)),
        dual_feasibility=float(np.max(np.maximum(-nu, 0.0))),
        dual_sum_gap=float(abs(nu.sum() - 1.0)),
        complementary_slackness=float(np.max(nu * np.abs(t - u_norms))),
        stationarity=float(np.max(np.abs(U - shrunk))),
    )
