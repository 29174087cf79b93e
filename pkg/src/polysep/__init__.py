"""Integer polynomials with abnormally close roots: construction, exact checks, separation exponents."""

from .errors import (BracketNotFoundError, ConvergenceError, DegreeError, ParameterError, PolysepError,
                     ThresholdError)
from .family import (ClosePairPrediction, FamilyInstance, build, catalan, construct_compact, construct_expanded,
                     g_poly, height_formula, mignotte_family, predict, refine_x0)
from .irreducible import EisensteinCertificate, eisenstein_check, verify_family_irreducible
from .poly import (IntPolynomial, add, degree, derivative, discriminant, eval_complex, eval_rational, height, mul,
                   reciprocal, scale)
from .rootfind import (RealBracket, RootSet, aberth_all_roots, adaptive_roots, bisect_bracket, error_radius,
                       isolate_close_pair)
from .sep import (ScanRow, SepReport, analyze, analyze_reciprocal, certify_exponent, exponent, scan, separation,
                  slope_fit)

__version__ = "0.1.0"
