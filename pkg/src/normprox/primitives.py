"""Scalar and vector building blocks: soft thresholding, exact simplex
projection, and the vector max-norm prox.

These are exact (no iteration, no tolerance), which lets the degenerate
shapes of the matrix solver be checked against them directly.
"""

from __future__ import annotations

import numpy as np

from .validation import check_positive, check_vector


def soft_threshold(x: float, theta: float) -> float:
    """sign(x) * max(|x| - theta, 0) for a scalar x."""
    if theta < 0:
        raise ValueError(f"threshold must be nonnegative, got {theta!r}")
    return float(np.sign(x) * max(abs(x) - theta, 0.0))


def soft_threshold_column(x, theta: float) -> np.ndarray:
    """Entrywise soft threshold of a vector at level theta >= 0.

    Entries at zero stay exactly zero (sign 0 convention).
    """
    if theta < 0:
        raise ValueError(f"threshold must be nonnegative, got {theta!r}")
    x = check_vector(x)
    return np.sign(x) * np.maximum(np.abs(x) - theta, 0.0)


def project_simplex(v) -> np.ndarray:
    """Euclidean projection of v onto the probability simplex.

    Sort-based pivot rule: with u the reverse-sorted entries and css their
    running sums, the pivot rho is the last index with
    u_rho + (1 - css_rho)/rho > 0 and the shift is (css_rho - 1)/rho.
    Exact in one pass, O(d log d).
    """
    v = check_vector(v)
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    ind = np.arange(1, v.size + 1)
    rho = int(np.nonzero(u + (1.0 - css) / ind > 0)[0][-1])
    tau = (css[rho] - 1.0) / (rho + 1.0)
    return np.maximum(v - tau, 0.0)


def prox_linf_vector(x, lam: float) -> np.ndarray:
    """Prox of lam * max|.| for a vector.

    minimizes lam*||u||_inf + 0.5*||u - x||^2. The residual x - u is the
    projection of x onto the l1 ball of radius lam, so when ||x||_1 <= lam
    the output is exactly zero; otherwise it is
    x - lam * w * sign(x) with w the simplex projection of |x|/lam.
    """
    lam = check_positive(lam, "lam")
    x = check_vector(x)
    if np.abs(x).sum() <= lam:
        return np.zeros_like(x)
    w = project_simplex(np.abs(x) / lam)
    return x - lam * w * np.sign(x)
