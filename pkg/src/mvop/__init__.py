"""Matrix-valued orthogonal polynomials for exponential weights.

The package builds monic matrix orthogonal families two ways: a
quadrature Gram-Schmidt oracle that works for any admissible weight,
and a recursion pipeline for Gaussian ladder weights.  On top of the
families it implements the difference-operator algebra, ladder and
string relations, Pearson identities, integral ladder coefficients,
and the deformation lattice, each exposed with residual checks.
"""

from .config import ConfigError, load_config, parse_config, weight_from_config
from .hermite_fast import FastHermiteFamily, fast_family
from .linalg import rel_residual
from .ops import DiffOp, recurrence_operator
from .oracle import (DEFAULT_GRID, TRUSTED_N_MAX, ConditioningError,
                     MVOPFamily, gram_schmidt_family, three_term_residual)
from .poly import MatrixPoly
from .quadrature import QuadratureError, build_quadrature
from .suites import Check, SUITE_NAMES, run_suite, suite_report
from .weights import (ExponentialWeight, freud_weight, hermite_alpha_weight,
                      normalize_weight, pearson_alpha_parameters,
                      pearson_hermite_weight, scalar_weight)

__version__ = "0.1.0"

__all__ = [
    "Check",
    "ConfigError",
    "ConditioningError",
    "DEFAULT_GRID",
    "DiffOp",
    "ExponentialWeight",
    "FastHermiteFamily",
    "MatrixPoly",
    "MVOPFamily",
    "QuadratureError",
    "SUITE_NAMES",
    "TRUSTED_N_MAX",
    "build_quadrature",
    "fast_family",
    "freud_weight",
    "gram_schmidt_family",
    "hermite_alpha_weight",
    "load_config",
    "normalize_weight",
    "parse_config",
    "pearson_alpha_parameters",
    "pearson_hermite_weight",
    "recurrence_operator",
    "rel_residual",
    "run_suite",
    "scalar_weight",
    "suite_report",
    "three_term_residual",
    "weight_from_config",
    "__version__",
]
