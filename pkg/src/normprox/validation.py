"""Input checking helpers shared by the solvers, the estimator, and the CLI."""

from __future__ import annotations

import numpy as np


def check_matrix(X) -> np.ndarray:
    """Coerce X to a 2-d float array with at least one row and column.

    Non-finite entries are rejected here, naming the first offending
    position, so nothing downstream has to reason about NaN or Inf.
    """
    A = np.asarray(X, dtype=float)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got {A.ndim} dimension(s)")
    if A.shape[0] < 1 or A.shape[1] < 1:
        raise ValueError(f"matrix must be at least 1x1, got shape {A.shape}")
    if not np.isfinite(A).all():
        i, j = map(int, np.argwhere(~np.isfinite(A))[0])
        raise ValueError(f"non-finite entry {A[i, j]!r} at row {i}, column {j}")
    return A


def check_vector(x) -> np.ndarray:
    """Coerce x to a nonempty 1-d float array, rejecting non-finite entries."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-d vector, got {v.ndim} dimension(s)")
    if v.size < 1:
        raise ValueError("vector must not be empty")
    if not np.isfinite(v).all():
        i = int(np.flatnonzero(~np.isfinite(v))[0])
        raise ValueError(f"non-finite entry {v[i]!r} at index {i}")
    return v


def check_positive(value: float, name: str) -> float:
    """Validate a strictly positive finite scalar parameter."""
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")
    return value
