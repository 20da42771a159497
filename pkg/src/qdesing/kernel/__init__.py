"""Exact fields, polynomials, Groebner bases and truncated linear algebra."""
from .fields import FieldElement, FractionField, field_to_json, make_field
from .groebner import Ideal, eliminate, groebner_basis, normal_form, saturate
from .linalg import truncated_length, truncation_basis
from .parse import parse_polynomial
from .polys import INF, QQ, Poly, Ring, deglex_compare, deglex_key, monomials_up_to

__all__ = [
    "QQ", "INF", "Ring", "Poly", "FractionField", "FieldElement", "make_field", "field_to_json",
    "Ideal", "groebner_basis", "normal_form", "eliminate", "saturate",
    "truncation_basis", "truncated_length", "parse_polynomial",
    "deglex_compare", "deglex_key", "monomials_up_to",
]
