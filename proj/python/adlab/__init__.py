"""Python access to the adlab experiment library."""

import json

from ._core import (
    AdlabError,
    InputError,
    PartialFn,
    PreconditionError,
    ResourceError,
    SolverError,
    approx_degree,
    approx_gamma2,
    build_named,
    comm_matrix,
    composition_sweep as _composition_sweep,
    gamma2_exact,
    grid_size,
    kronecker_deviation,
    parse_truth_table,
    robustness_margin,
    witness_report as _witness_report,
)

__all__ = [
    "AdlabError",
    "InputError",
    "PartialFn",
    "PreconditionError",
    "ResourceError",
    "SolverError",
    "approx_degree",
    "approx_gamma2",
    "build_named",
    "comm_matrix",
    "composition_sweep",
    "gamma2_exact",
    "grid_size",
    "kronecker_deviation",
    "parse_truth_table",
    "robustness_margin",
    "witness_report",
]


def witness_report(n, tol_psd=1e-8, tol_constraint=1e-6, jobs=1):
    """Build and verify the adversary witness for size n; returns a dict."""
    return json.loads(_witness_report(n, tol_psd, tol_constraint, jobs))


def composition_sweep(spec, jobs=1):
    """Run a composition sweep. `spec` is a list of dicts or a JSON string."""
    if not isinstance(spec, str):
        spec = json.dumps(spec)
    return _composition_sweep(spec, jobs)
