"""Read-once polynomials over prime fields.

Indices are 0-based; the text formats name variables x1..xn.
"""

from ._core import (
    Error,
    Formula,
    Poly,
    b_poly,
    brute_force_is_rop,
    characterize,
    commutator,
    decompose,
    is_good_assignment,
    is_locally_rop,
    local_rop_fraction,
    parse_formula,
    parse_poly,
    property_test,
    q_n,
    random_formula,
    read_once_test,
    trivariate_is_rop,
)

__all__ = [
    "Error",
    "Formula",
    "Poly",
    "b_poly",
    "brute_force_is_rop",
    "characterize",
    "commutator",
    "decompose",
    "is_good_assignment",
    "is_locally_rop",
    "local_rop_fraction",
    "parse_formula",
    "parse_poly",
    "property_test",
    "q_n",
    "random_formula",
    "read_once_test",
    "trivariate_is_rop",
]
