"""Deformed derivatives on finite fields and the integer arithmetic derivative."""

from . import errors
from .deform import Deformation, OperatorMatrix, parse_deformation_spec
from .field import (
    NEG_INFINITY,
    Field,
    FieldElement,
    find_primitive_poly,
    make_field,
    parse_field_spec,
)
from .intderiv import Factorization, arith_derivative, factorize, is_prime

__version__ = "0.1.0"

__all__ = [
    "Deformation",
    "Factorization",
    "Field",
    "FieldElement",
    "NEG_INFINITY",
    "OperatorMatrix",
    "arith_derivative",
    "errors",
    "factorize",
    "find_primitive_poly",
    "is_prime",
    "make_field",
    "parse_deformation_spec",
    "parse_field_spec",
]
