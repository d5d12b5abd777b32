"""Independent brute-force references used to pin expected values in the tests.

Nothing in here calls into normprox; these implementations are deliberately
naive so they can serve as ground truth for the fast code paths.
"""

import itertools

import numpy as np


def simplex_qp_oracle(v):
    """Projection of v onto the probability simplex by support enumeration.

    For every nonempty support S the equality-constrained least squares
    solution is w_S = v_S + (1 - sum(v_S))/|S|; the projection is the
    feasible candidate with the smallest distance to v.
    """
    v = np.asarray(v, dtype=float)
    d = v.size
    best = None
    best_obj = np.inf
    for r in range(1, d + 1):
        for support in itertools.combinations(range(d), r):
            w = np.zeros(d)
            vs = v[list(support)]
            w[list(support)] = vs + (1.0 - vs.sum()) / r
            if np.all(w >= -1e-15):
                obj = float(((w - v) ** 2).sum())
                if obj < best_obj:
                    best_obj = obj
                    best = np.maximum(w, 0.0)
    assert best is not None
    return best


def grid_minimize(f, lo, hi, rounds=60, pts=33):
    """Nested grid search for the minimizer of f over the box [lo, hi].

    Coordinate-wise refinement; only used in low dimension (d <= 2) where
    it converges well past 1e-12.
    """
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    d = lo.size
    grids = [np.linspace(lo[q], hi[q], pts) for q in range(d)]
    for _ in range(rounds):
        axes = np.meshgrid(*grids, indexing="ij")
        vals = f(*axes)
        flat = int(np.argmin(vals))
        idx = np.unravel_index(flat, vals.shape)
        new_grids = []
        for q in range(d):
            g = grids[q]
            i = idx[q]
            a = g[max(i - 1, 0)]
            b = g[min(i + 1, pts - 1)]
            new_grids.append(np.linspace(a, b, pts))
        grids = new_grids
    return np.array([g[pts // 2] for g in grids])


def linf_prox_oracle(x, lam):
    """Brute-force minimizer of lam*max|u| + 0.5*||u - x||^2 (d <= 2)."""
    x = np.asarray(x, dtype=float)
    span = np.abs(x).max() + lam + 1.0
    if x.size == 1:
        def f(u):
            return lam * np.abs(u) + 0.5 * (u - x[0]) ** 2
        return grid_minimize(f, [-span], [span])
    if x.size == 2:
        def f(u1, u2):
            return (lam * np.maximum(np.abs(u1), np.abs(u2))
                    + 0.5 * ((u1 - x[0]) ** 2 + (u2 - x[1]) ** 2))
        return grid_minimize(f, [-span, -span], [span, span])
    raise ValueError("oracle only covers d <= 2")


def nu_scalar_oracle(y, t, lam, iters=200):
    """Solve sum_i max(y_i - lam*nu, 0) = t for nu by bisection on nu.

    Independent of any index search: g(nu) is continuous and strictly
    decreasing until it hits zero, and g(0) = ||x||_1 > t pins a root in
    (0, y_1/lam).
    """
    y = np.asarray(y, dtype=float)
    assert y.sum() > t > 0

    def g(nu):
        return np.maximum(y - lam * nu, 0.0).sum()

    lo, hi = 0.0, float(y[0] / lam)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if g(mid) > t:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def prox_objective(X, lam, U):
    """F(U) = max_j ||U_j||_1 + ||U - X||_F^2 / (2 lam)."""
    X = np.asarray(X, dtype=float)
    U = np.asarray(U, dtype=float)
    return float(np.abs(U).sum(axis=0).max() + ((U - X) ** 2).sum() / (2.0 * lam))
