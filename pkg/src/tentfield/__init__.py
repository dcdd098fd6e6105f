from ._version import __version__
from .bijection import BijectionTable, PiPermutation, build_bijection, multiply_indices, pi_recursive, verify_frobenius
from .chebyshev import cheb_bijection, cheb_coeffs, cheb_eval, cheb_fixed_points
from .dynamics import UpSet, eval_g, fixed_points, orbit_partition, periodic_count
from .errors import TentfieldError
from .ffield import FieldContext, FieldElement, PolyFp, count_irreducibles, make_field

__all__ = [
    "BijectionTable",
    "FieldContext",
    "FieldElement",
    "PiPermutation",
    "PolyFp",
    "TentfieldError",
    "UpSet",
    "__version__",
    "build_bijection",
    "cheb_bijection",
    "cheb_coeffs",
    "cheb_eval",
    "cheb_fixed_points",
    "count_irreducibles",
    "eval_g",
    "fixed_points",
    "make_field",
    "multiply_indices",
    "orbit_partition",
    "periodic_count",
    "pi_recursive",
    "verify_frobenius",
]
