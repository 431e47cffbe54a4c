"""hilbeq: exact Pluecker-style defining equations of Hilbert schemes.

The package generates the linear and quadratic forms cutting out
Hilb^p(P^n) in its Grassmannian Pluecker embedding, evaluates them at
points built from polynomial ideals, and cross-validates the verdicts
against independent oracles (colon-codimension criterion, generic-form
conductors, and a quiver-representation model).
"""

__version__ = "0.1.0"

from .exactalg import GF, QQ
from .macaulay import (
    HilbertPolynomialSpec,
    NotAdmissible,
    eval_hilbert,
    hilbert_spec_from_coefficients,
    macaulay_lower,
    macaulay_rep,
    macaulay_upper,
    parse_hilbert_spec,
)

__all__ = [
    "GF",
    "QQ",
    "HilbertPolynomialSpec",
    "NotAdmissible",
    "eval_hilbert",
    "hilbert_spec_from_coefficients",
    "macaulay_lower",
    "macaulay_rep",
    "macaulay_upper",
    "parse_hilbert_spec",
    "__version__",
]
