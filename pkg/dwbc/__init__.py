"""DWBC Toolkit Package.

Exact computations for the six-vertex model with domain wall boundary
conditions: partition functions, row configuration probabilities and the
emptiness formation probability, each computed by several independent routes
and cross-checked against a direct monodromy-matrix oracle.
"""

from importlib.metadata import PackageNotFoundError
from importlib.metadata import version as _get_pkg_version

try:
    __version__: str = _get_pkg_version("dwbc-toolkit")
except PackageNotFoundError:
    # Running from a source checkout: read pyproject.toml.
    try:
        import re as _re
        from pathlib import Path as _Path

        _pyproject = _Path(__file__).parent.parent / "pyproject.toml"
        _match = _re.search(r'^version\s*=\s*"([^"]+)"', _pyproject.read_text(), _re.MULTILINE)
        __version__ = _match.group(1) if _match else "0.0.0"
        del _re, _Path, _pyproject, _match
    except Exception:
        __version__ = "0.0.0"

__author__ = "DWBC Toolkit Team"
__license__ = "MIT"


def get_version() -> str:
    """Return the semantic version string.

    Example:
        >>> import dwbc
        >>> dwbc.get_version()
        '0.3.0'
    """
    return __version__


from .backend import RATIONAL, FloatBackend, RationalBackend, ScalarBackend, get_backend
from .config import DwbcSettings, RunConfig, load_config, resolve_config
from .correlation import RunContext, RunIdFilter, get_run_context
from .determinant import PhiKernel, ik_det_hom, ik_det_inhom
from .efp_engine import EfpQuery, efp_double, efp_rep1, efp_rep2, efp_routes, phi_s_at_ones
from .errors import (
    BackendError,
    BoundExceededError,
    DegenerateWeightsError,
    DwbcError,
    InvalidQueryError,
    NotDivisibleError,
    ResidueError,
    SingularParameterError,
)
from .logging_config import LoggingConfig, get_logger, setup_logging
from .model import BoundaryGenerating, Lattice, RowConfig, SpectralParams, VertexWeights
from .oracle import (
    boundary_generating,
    efp_oracle,
    enumerate_dfs,
    partition_qism,
    row_prob_oracle,
    zbot_oracle,
    ztop_oracle,
)
from .records import ResultRecord
from .row_engine import (
    h_multi_build,
    row_prob_formula,
    zbot_residue,
    zbot_sum_inhom,
    ztop_bethe,
    ztop_residue,
)
from .verifier import CheckResult, VerificationReport, cross_check_suite

__all__ = [
    "__version__",
    "get_version",
    # Backends
    "RATIONAL",
    "ScalarBackend",
    "RationalBackend",
    "FloatBackend",
    "get_backend",
    # Configuration
    "RunConfig",
    "DwbcSettings",
    "load_config",
    "resolve_config",
    # Logging
    "LoggingConfig",
    "setup_logging",
    "get_logger",
    "RunContext",
    "RunIdFilter",
    "get_run_context",
    # Errors
    "DwbcError",
    "BoundExceededError",
    "InvalidQueryError",
    "SingularParameterError",
    "DegenerateWeightsError",
    "BackendError",
    "NotDivisibleError",
    "ResidueError",
    # Model
    "VertexWeights",
    "SpectralParams",
    "Lattice",
    "RowConfig",
    "BoundaryGenerating",
    # Oracle
    "partition_qism",
    "enumerate_dfs",
    "ztop_oracle",
    "zbot_oracle",
    "row_prob_oracle",
    "boundary_generating",
    "efp_oracle",
    # Formula engines
    "PhiKernel",
    "ik_det_inhom",
    "ik_det_hom",
    "ztop_bethe",
    "ztop_residue",
    "zbot_sum_inhom",
    "zbot_residue",
    "h_multi_build",
    "row_prob_formula",
    "EfpQuery",
    "efp_rep1",
    "efp_rep2",
    "efp_double",
    "phi_s_at_ones",
    "efp_routes",
    # Verification and records
    "CheckResult",
    "VerificationReport",
    "cross_check_suite",
    "ResultRecord",
]
