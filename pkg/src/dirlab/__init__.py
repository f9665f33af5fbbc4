"""Numerical toolkit for composition operators on the Dirichlet space of the disk."""

from .config import DEFAULTS
from .counting import (
    area_field,
    change_of_variable_residual,
    count_preimages,
    counting_field,
    fullness_defect,
    is_essentially_radial,
)
from .errors import (
    ContourTooCloseError,
    ContractError,
    ConvergenceError,
    NotASelfMapError,
    QuadratureError,
    SymbolSpecError,
)
from .operators import (
    build_matrix,
    essential_norm_profile,
    isometry_defect,
    norm_formula,
    operator_norm,
    restricted_norm_D0,
)
from .series import TruncatedSeries
from .space import gram_powers, inner, kernel, norm
from .symbols import SymbolMap, parse_symbol
from .verify import VerificationReport, verify_all

__version__ = "0.1.0"

__all__ = [
    "DEFAULTS", "TruncatedSeries", "SymbolMap", "parse_symbol",
    "inner", "norm", "kernel", "gram_powers",
    "count_preimages", "counting_field", "area_field", "is_essentially_radial",
    "fullness_defect", "change_of_variable_residual",
    "build_matrix", "operator_norm", "restricted_norm_D0", "essential_norm_profile",
    "isometry_defect", "norm_formula",
    "VerificationReport", "verify_all",
    "ContractError", "NotASelfMapError", "SymbolSpecError", "ContourTooCloseError",
    "QuadratureError", "ConvergenceError",
]
