"""Exact field arithmetic and dense exact linear algebra.

Public surface: the field descriptors (``QQ``, ``GF``), the dense
``ExactMatrix`` with deterministic elimination, and polynomial matrices
over k[a_0..a_n] with exact rank/kernel over the fraction field.
"""

from .fields import BIG_PRIME, GF, QQ, TEST_PRIME, PrimeField, RationalField, field_from_name
from .matrix import ExactMatrix, column_echelon, maximal_minors
from .polymatrix import (
    FracPoly,
    LinearPolyMatrix,
    MPoly,
    function_field_kernel,
    poly_rank,
    poly_row_echelon,
    rank_over_function_field,
)


def rank(m: ExactMatrix) -> int:
    """Rank of an exact matrix over its field."""
    return m.rank()


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Canonical right-kernel basis (columns, reduced column echelon form)."""
    return m.right_kernel()


__all__ = [
    "BIG_PRIME",
    "GF",
    "QQ",
    "TEST_PRIME",
    "PrimeField",
    "RationalField",
    "field_from_name",
    "ExactMatrix",
    "column_echelon",
    "maximal_minors",
    "FracPoly",
    "LinearPolyMatrix",
    "MPoly",
    "function_field_kernel",
    "poly_rank",
    "poly_row_echelon",
    "rank_over_function_field",
    "rank",
    "kernel_basis",
]
