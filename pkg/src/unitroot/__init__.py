"""p-adic limits of coefficient matrices of powers of Laurent polynomials."""

from .doublecover import (
    FrobeniusPolyInput,
    asd_check,
    corollary_check,
    delta,
    limit_via_delta,
    make_double_cover,
    split_double_cover,
)
from .laurent import LaurentPoly, parse, power, render
from .linalg import LabeledMatrix, NonUnitDeterminant, charpoly, matrix_inverse
from .padic import Residue, digits, reduce, valuation
from .polytope import interior_points, newton_polytope
from .stienstra import (
    EmptyInterior,
    alpha,
    beta,
    check_det_power,
    check_theorem1_i,
    check_theorem1_ii,
    limit_alpha,
    make_context,
    unit_root_charpoly,
)

__all__ = [
    "EmptyInterior",
    "FrobeniusPolyInput",
    "LabeledMatrix",
    "LaurentPoly",
    "NonUnitDeterminant",
    "Residue",
    "alpha",
    "asd_check",
    "beta",
    "charpoly",
    "check_det_power",
    "check_theorem1_i",
    "check_theorem1_ii",
    "corollary_check",
    "delta",
    "digits",
    "interior_points",
    "limit_alpha",
    "limit_via_delta",
    "make_context",
    "make_double_cover",
    "matrix_inverse",
    "newton_polytope",
    "parse",
    "power",
    "reduce",
    "render",
    "split_double_cover",
    "unit_root_charpoly",
    "valuation",
]
