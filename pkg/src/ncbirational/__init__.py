"""Sklyanin algebras, sub-Z-algebras of their Veroneses, and the quadric-to-plane
and Cremona transforms, computed by exact linear algebra."""

__version__ = "0.1.0"

from .exactlin import PrimeField, RationalField, Subspace, make_field
from .curve import EllipticCurve, CurvePoint, Divisor, PicClass, FunctionFieldElement
from .freealg import GradedAlgebra, GradedPresentation, materialize, betti_table
from .sklyanin import GeometricData, construct_sklyanin, sklyanin_algebra
from .zalgebra import Window, ZSubalgebra, build_D, certify_as_regular
from .transform import cremona, quadric_to_plane, validate_genericity, function_field_witness

__all__ = [
    "PrimeField", "RationalField", "Subspace", "make_field",
    "EllipticCurve", "CurvePoint", "Divisor", "PicClass", "FunctionFieldElement",
    "GradedAlgebra", "GradedPresentation", "materialize", "betti_table",
    "GeometricData", "construct_sklyanin", "sklyanin_algebra",
    "Window", "ZSubalgebra", "build_D", "certify_as_regular",
    "cremona", "quadric_to_plane", "validate_genericity", "function_field_witness",
]
