"""Computer algebra kernel for weighted canonical rings of stable surfaces."""

from .coeff import DEFAULT_PRIME, FieldElement, FieldSpec, field_arith, field_random
from .ring import GREVLEX, Monomial, MonomialOrder, Polynomial, RingSpec, evaluate_at_point, poly_arith, substitute
from .parse import ParseError, parse_poly, print_poly, read_ideal_text, format_ideal

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRIME", "FieldElement", "FieldSpec", "field_arith", "field_random",
    "GREVLEX", "Monomial", "MonomialOrder", "Polynomial", "RingSpec", "evaluate_at_point",
    "poly_arith", "substitute", "ParseError", "parse_poly", "print_poly", "read_ideal_text",
    "format_ideal",
]
