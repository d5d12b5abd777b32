"""Independent reference solvers for small instances.

exhaustive_kkt_solve enumerates every candidate optimality system (active
set times per-column support sizes), solves each one in closed form, and
keeps the unique candidate that verifies all conditions. It is the ground
truth the bisection solver is measured against. subgradient_solve is a
slower, statistically independent cross-check for sizes where enumeration
is out of reach.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import ProxConfig, build_column_cache, lambda_max
from .solver import kkt_report, prox_l11
from .validation import check_matrix, check_positive

_MAX_SIDE = 8


@dataclass(frozen=True)
class OracleSolution:
    """Exact small-instance optimum with its dual certificate.

    n_candidates is the number of candidate systems enumerated, kept so
    tests can detect silent pruning.
    """

    U: np.ndarray
    t: float
    nu: np.ndarray
    verified: bool
    n_candidates: int


def exhaustive_kkt_solve(X, lam: float) -> OracleSolution:
    """Solve the matrix prox exactly by enumerating optimality systems.

    Every nonempty set of tight columns I and every support-size tuple
    (k_j) for j in I yields one linear equation for t from the dual-sum
    condition; the candidate passes when t > 0, every implied nu_j is
    positive, each support is bracketed by the sorted magnitudes
    (y_kj > lam*nu_j and the next magnitude, if any, is <= lam*nu_j), and
    every column outside I has l1 norm at most t. The all-clipped
    candidate (U = 0, t = 0) passes exactly when lam >= lambda_max(X).

    Exactly one candidate may verify; ties in the input can break that and
    are the caller's responsibility to avoid. Rejects matrices with more
    than 8 rows or columns.
    """
    X = check_matrix(X)
    lam = check_positive(lam, "lam")
    n, m = X.shape
    if n > _MAX_SIDE or m > _MAX_SIDE:
        raise ValueError(
            f"instance {n}x{m} is too large for exhaustive enumeration "
            f"(limit {_MAX_SIDE} per side)"
        )
    cache = build_column_cache(X)
    Y = cache.sorted_abs
    Z = cache.cumsum
    lmax = lambda_max(X)

    verified: list[tuple[float, np.ndarray]] = []
    n_candidates = 1  # the all-clipped candidate
    if lam >= lmax:
        # exact dual certificate for U = 0: lift each nu_j to at least
        # y_1j/lam and spread the remaining mass so the sum is exactly 1
        nu = Y[0] / lam + (1.0 - lmax / lam) / m
        verified.append((0.0, nu))

    for mask in range(1, 1 << m):
        cols = np.array([j for j in range(m) if mask >> j & 1])
        r = cols.size
        K = np.array(list(itertools.product(range(1, n + 1), repeat=r)))
        n_candidates += K.shape[0]
        inv = 1.0 / K
        Zsel = Z[K - 1, cols]
        Ysel = Y[K - 1, cols]
        t_cand = ((Zsel * inv).sum(axis=1) - lam) / inv.sum(axis=1)
        nu_cand = (Zsel - t_cand[:, None]) * inv / lam
        thr = lam * nu_cand
        ok = (t_cand > 0) & (nu_cand > 0).all(axis=1) & (Ysel > thr).all(axis=1)
        has_next = K < n
        nxt = Y[np.where(has_next, K, n - 1), cols]
        ok &= np.where(has_next, nxt <= thr, True).all(axis=1)
        inactive = np.setdiff1d(np.arange(m), cols)
        if inactive.size:
            ok &= (cache.col_norms[inactive] <= t_cand[:, None]).all(axis=1)
        for row in np.flatnonzero(ok):
            nu = np.zeros(m)
            nu[cols] = nu_cand[row]
            verified.append((float(t_cand[row]), nu))

    if not verified:
        raise RuntimeError(
            "no candidate verified the optimality system; the input likely has ties"
        )
    solutions = [
        (t, nu, np.sign(X) * np.maximum(np.abs(X) - lam * nu, 0.0))
        for t, nu in verified
    ]
    t0, nu0, U0 = solutions[0]
    for t1, nu1, U1 in solutions[1:]:
        if np.max(np.abs(U1 - U0)) > 1e-10:
            raise RuntimeError(
                f"{len(solutions)} verified candidates disagree; uniqueness violated"
            )
    return OracleSolution(U=U0, t=t0, nu=nu0, verified=True, n_candidates=n_candidates)


def subgradient_solve(X, lam: float, iters: int, step_scale: float | None = None):
    """Diminishing-step subgradient descent on the prox objective.

    Steps are step_scale/sqrt(k), additionally capped at lam so the
    quadratic term cannot destabilize the iterates, with best-iterate
    tracking (the reported matrix is the iterate with the lowest objective
    seen, starting from X itself). Accuracy is loose by nature; use it as
    a cross-check, not as a solver.
    """
    X = check_matrix(X)
    lam = check_positive(lam, "lam")
    iters = int(iters)
    if iters < 1:
        raise ValueError(f"iters must be at least 1, got {iters}")
    n, m = X.shape
    if step_scale is None:
        step_scale = 4.0 * lam * math.sqrt(n) / math.sqrt(iters)

    def objective(U):
        return np.abs(U).sum(axis=0).max() + ((U - X) ** 2).sum() / (2.0 * lam)

    U = X.copy()
    best = U.copy()
    best_val = objective(U)
    for k in range(1, iters + 1):
        j = int(np.argmax(np.abs(U).sum(axis=0)))
        g = (U - X) / lam
        g[:, j] += np.sign(U[:, j])
        U -= min(step_scale / math.sqrt(k), lam) * g
        val = objective(U)
        if val < best_val:
            best_val = val
            best = U.copy()
    return best


@dataclass(frozen=True)
class TrialFailure:
    """One suite trial whose solver/oracle disagreement exceeded the tolerance."""

    index: int
    n: int
    m: int
    lam: float
    error: float


@dataclass(frozen=True)
class SuiteReport:
    """Outcome of the randomized solver-vs-oracle comparison suite."""

    trials: int
    tol: float
    max_elementwise_error: float
    max_oracle_residual: float
    failures: tuple[TrialFailure, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


_GOLDEN = 0.6180339887498949


def random_instance(rng: np.random.Generator, max_n: int, max_m: int):
    """Draw one tie-free test instance and a penalty weight for it.

    Entries are uniform in [-1, 1] plus a deterministic index-keyed jitter
    at the 1e-7 scale (kills partial-sum ties without moving any value
    meaningfully); lam is uniform in (0.05, 1.2) times lambda_max, so both
    sides of the shrink-to-zero threshold are exercised.
    """
    n = int(rng.integers(1, max_n + 1))
    m = int(rng.integers(1, max_m + 1))
    X = rng.uniform(-1.0, 1.0, size=(n, m))
    idx = np.arange(n * m, dtype=float).reshape(n, m)
    X += 2e-7 * (((idx + 1.0) * _GOLDEN) % 1.0 - 0.5)
    lam = float(rng.uniform(0.05, 1.2)) * lambda_max(X)
    return X, lam


def oracle_comparison_suite(
    trials: int = 500,
    max_n: int = 5,
    max_m: int = 4,
    seed: int = 0,
    tol: float = 1e-8,
    delta: float = 1e-10,
) -> SuiteReport:
    """Compare the bisection solver against the exhaustive oracle.

    Runs `trials` seeded random instances, records the worst elementwise
    disagreement and the worst KKT residual of the oracle's own solutions,
    and lists every trial whose disagreement exceeds tol.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if max_n < 1 or max_n > _MAX_SIDE or max_m < 1 or max_m > _MAX_SIDE:
        raise ValueError(
            f"max_n and max_m must be in [1, {_MAX_SIDE}], got {max_n} and {max_m}"
        )
    rng = np.random.default_rng(seed)
    worst_err = 0.0
    worst_resid = 0.0
    failures = []
    for index in range(trials):
        X, lam = random_instance(rng, max_n, max_m)
        reference = exhaustive_kkt_solve(X, lam)
        sol = prox_l11(X, ProxConfig(lam=lam, delta=delta))
        err = float(np.max(np.abs(sol.U - reference.U)))
        resid = kkt_report(X, lam, reference).max_residual()
        worst_err = max(worst_err, err)
        worst_resid = max(worst_resid, resid)
        if err > tol:
            failures.append(
                TrialFailure(index=index, n=X.shape[0], m=X.shape[1], lam=lam, error=err)
            )
    return SuiteReport(
        trials=trials,
        tol=tol,
        max_elementwise_error=worst_err,
        max_oracle_residual=worst_resid,
        failures=tuple(failures),
    )
