"""Scikit-learn style wrapper around the functional solver."""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from .core import ProxConfig, ProxSolution, lambda_max
from .solver import prox_l11, prox_linfinf
from .validation import check_matrix


class InducedNormProx(BaseEstimator, TransformerMixin):
    """Transformer that maps a matrix to its induced-norm prox.

    Parameters
    ----------
    lam : float, default=1.0
        Penalty weight. Ignored when `lam_frac` is set.
    lam_frac : float or None, default=None
        If set, the penalty is `lam_frac` times the smallest weight that
        shrinks the input to zero (computed per call from the input), so
        the same fraction gives comparable shrinkage across scales. Must
        lie in (0, 1].
    norm : {"l11", "linfinf"}, default="l11"
        Which induced norm to penalize: "l11" treats columns, "linfinf"
        treats rows.
    delta : float, default=1e-8
        Bisection tolerance on the shared norm bound t.
    max_iters : int or None, default=None
        Optional hard cap on bisection iterations.

    The estimator is stateless apart from bookkeeping: `fit` only records
    the input width, and `transform` solves each matrix independently.
    """

    def __init__(self, lam: float = 1.0, lam_frac=None, norm: str = "l11",
                 delta: float = 1e-8, max_iters=None):
        self.lam = lam
        self.lam_frac = lam_frac
        self.norm = norm
        self.delta = delta
        self.max_iters = max_iters

    def _config_for(self, X) -> ProxConfig:
        if self.norm not in ("l11", "linfinf"):
            raise ValueError(f"norm must be 'l11' or 'linfinf', got {self.norm!r}")
        if self.lam_frac is not None:
            if not 0.0 < self.lam_frac <= 1.0:
                raise ValueError(f"lam_frac must be in (0, 1], got {self.lam_frac}")
            base = lambda_max(X) if self.norm == "l11" else lambda_max(X.T)
            lam = self.lam_frac * base
        else:
            lam = self.lam
        return ProxConfig(lam=lam, delta=self.delta, max_iters=self.max_iters)

    def fit(self, X, y=None):
        X = check_matrix(X)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        return self.solve(X).U

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X).transform(X)

    def solve(self, X) -> ProxSolution:
        """Full solve, exposing duals and the certificate alongside U."""
        X = check_matrix(X)
        config = self._config_for(X)
        if self.norm == "l11":
            return prox_l11(X, config)
        return prox_linfinf(X, config)
