"""High-precision resummation of divergent asymptotic series.

Levin-type nonlinear sequence transformations (Levin d, Weniger delta)
applied to the large-order Debye expansion of Bessel functions, to the
Bessel series solution of the Kepler equation, and to a numerical probe
of the Stieltjes character of the rearranged expansions.
"""

from .arith import (
    BigComplex,
    BigRational,
    BigReal,
    DEFAULT_DIGITS,
    MIN_DIGITS,
    with_precision,
    working_digits,
)
from .errors import (
    ConfigurationError,
    ConvergenceError,
    DegenerateTermError,
    DomainError,
    FitError,
    KeplevinError,
    RangeError,
)
from .seqxform import (
    LEVIN_D,
    WENIGER_DELTA,
    TermSequence,
    TransformTable,
    levin_d,
    partial_sums,
    weniger_delta,
)
from .debye import DebyeTable, generate, eval_poly
from .bessel import DebyeSeriesSpec, jn_reference, jn_resummed, rho
from .kapteyn import KapteynParams, UQuery, polylog, stieltjes_measure, u_resummed
from .kepler import KeplerProblem, ComplexKeplerProblem, solve_newton, solve_series

__version__ = "0.1.0"

__all__ = [
    "BigComplex",
    "BigRational",
    "BigReal",
    "ComplexKeplerProblem",
    "ConfigurationError",
    "ConvergenceError",
    "DEFAULT_DIGITS",
    "DebyeSeriesSpec",
    "DebyeTable",
    "DegenerateTermError",
    "DomainError",
    "FitError",
    "KeplerProblem",
    "KeplevinError",
    "KapteynParams",
    "LEVIN_D",
    "MIN_DIGITS",
    "RangeError",
    "TermSequence",
    "TransformTable",
    "UQuery",
    "WENIGER_DELTA",
    "eval_poly",
    "generate",
    "jn_reference",
    "jn_resummed",
    "levin_d",
    "partial_sums",
    "polylog",
    "rho",
    "solve_newton",
    "solve_series",
    "stieltjes_measure",
    "u_resummed",
    "weniger_delta",
    "with_precision",
    "working_digits",
]
