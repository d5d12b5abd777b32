"""Proximal operators of the l1,1 and linf,inf induced matrix norms.

The induced l1,1 norm of a matrix is the largest column l1 norm; the
induced linf,inf norm is the largest row l1 norm. Their proximal
operators shrink every column (or row) whose norm exceeds a shared bound
t, found here by bisection to a caller-chosen tolerance, with dual
certificates and KKT residual reporting along the way.
"""

from .core import (
    ColumnCache,
    KktReport,
    ProxConfig,
    ProxSolution,
    build_column_cache,
    l11_norm,
    lambda_max,
    linfinf_norm,
)
from .dual import DualEval, active_set, nu_of_t_column, nu_vector
from .estimator import InducedNormProx
from .oracle import (
    OracleSolution,
    SuiteReport,
    TrialFailure,
    exhaustive_kkt_solve,
    oracle_comparison_suite,
    random_instance,
    subgradient_solve,
)
from .primitives import (
    project_simplex,
    prox_linf_vector,
    soft_threshold,
    soft_threshold_column,
)
from .solver import (
    IterationLimitError,
    certify_active_set,
    default_max_iters,
    kkt_report,
    prox_l11,
    prox_linfinf,
)

__version__ = "0.1.0"

__all__ = [
    "ColumnCache",
    "DualEval",
    "InducedNormProx",
    "IterationLimitError",
    "KktReport",
    "OracleSolution",
    "ProxConfig",
    "ProxSolution",
    "SuiteReport",
    "TrialFailure",
    "active_set",
    "build_column_cache",
    "certify_active_set",
    "default_max_iters",
    "exhaustive_kkt_solve",
    "kkt_report",
    "l11_norm",
    "lambda_max",
    "linfinf_norm",
    "nu_of_t_column",
    "nu_vector",
    "oracle_comparison_suite",
    "project_simplex",
    "prox_l11",
    "prox_linf_vector",
    "prox_linfinf",
    "random_instance",
    "soft_threshold",
    "soft_threshold_column",
    "subgradient_solve",
    "__version__",
]
