"""Exact algebra on k[u, v] for certifying a non-polynomial adele on the affine plane."""

from .errors import AlgebraError
from .fields import QQ, field_from_tag, prime_field
from .forge import certify_not_polynomial, forge_counterexample, verify_certificate
from .groebner import Ideal, groebner_basis, ideal_membership, ideal_power, ideal_product
from .poly import Poly2
from .primes import EnumerationBudget, enumerate_primes, is_prime

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "EnumerationBudget",
    "Ideal",
    "Poly2",
    "QQ",
    "certify_not_polynomial",
    "enumerate_primes",
    "field_from_tag",
    "forge_counterexample",
    "groebner_basis",
    "ideal_membership",
    "ideal_power",
    "ideal_product",
    "is_prime",
    "prime_field",
    "verify_certificate",
]
