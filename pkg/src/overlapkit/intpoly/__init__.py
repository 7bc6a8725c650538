"""Exact integer polynomials: arithmetic, parsing, factorization, and the
nonneg-tail divisibility search."""

from .factor import Factorization, factor, is_irreducible
from .poly import (
    IntPoly,
    exact_div,
    family_poly,
    gcd_poly,
    moran_poly,
    parse_poly,
)
from .search import (
    DEFAULT_SEARCH_CEILING,
    PartitionStat,
    SearchReport,
    SearchStrategy,
    nonneg_tail_search,
)

__all__ = [
    "DEFAULT_SEARCH_CEILING",
    "Factorization",
    "IntPoly",
    "PartitionStat",
    "SearchReport",
    "SearchStrategy",
    "exact_div",
    "factor",
    "family_poly",
    "gcd_poly",
    "is_irreducible",
    "moran_poly",
    "nonneg_tail_search",
    "parse_poly",
]
