"""Exact arithmetic core: integer polynomials, real roots, factorization."""

from .integers import (
    IntegerFactorization,
    factor_integer,
    integer_nth_root,
    is_prime,
    is_probable_prime,
    is_square,
    legendre,
    next_prime,
    primes_from,
    squarefree_part,
    valuation,
)
from .modp import FactorPattern, factor_mod_p, factor_pattern_mod_p
from .poly import (
    IntPolynomial,
    NotSeparableError,
    discriminant,
    format_poly,
    gcd,
    is_squarefree,
    resultant,
)
from .realroots import (
    Signature,
    count_real_roots,
    is_totally_real,
    real_roots_isolated,
    signature_of,
    sturm_sequence,
)
from .zfactor import factor_over_integers, is_irreducible, squarefree_decomposition

__all__ = [
    "FactorPattern",
    "IntPolynomial",
    "IntegerFactorization",
    "NotSeparableError",
    "Signature",
    "count_real_roots",
    "discriminant",
    "factor_integer",
    "factor_mod_p",
    "factor_over_integers",
    "factor_pattern_mod_p",
    "format_poly",
    "gcd",
    "integer_nth_root",
    "is_irreducible",
    "is_prime",
    "is_probable_prime",
    "is_square",
    "is_squarefree",
    "is_totally_real",
    "legendre",
    "next_prime",
    "primes_from",
    "real_roots_isolated",
    "resultant",
    "signature_of",
    "squarefree_decomposition",
    "squarefree_part",
    "sturm_sequence",
    "valuation",
]
