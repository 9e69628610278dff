"""Exact rational linear algebra, sparse polynomials and Pfaffians."""

from .matrix import (
    RatMatrix, as_matrix, frac, format_rational, rank, kernel_basis, solve, rref,
    image_basis, preimage, annihilator, inverse, det, is_nilpotent_matrix,
    charpoly, trace, in_span, span_rank, independent_subset,
)
from .poly import SparsePoly, parse_poly, poly_vars, PolyParseError
from .pfaffian import pfaffian, pfaffian_generic, PfaffianError, MAX_PFAFFIAN_SIZE

__all__ = [
    "RatMatrix", "as_matrix", "frac", "format_rational", "rank", "kernel_basis", "solve",
    "rref", "image_basis", "preimage", "annihilator", "inverse", "det",
    "is_nilpotent_matrix", "charpoly", "trace", "in_span", "span_rank",
    "independent_subset", "SparsePoly", "parse_poly", "poly_vars", "PolyParseError",
    "pfaffian", "pfaffian_generic", "PfaffianError", "MAX_PFAFFIAN_SIZE",
]
