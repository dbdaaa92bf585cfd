"""Information-theoretic lower bound: exact family counting, the asymptotic
main term, and rate computation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

from .core import FamilyParams


@dataclass(frozen=True)
class RatePoint:
    """A finite-t sample of the rate log2(t) / queries."""

    t: int
    queries: int
    rate: float


def family_size_exact(params: FamilyParams) -> int:
    """Exact number of hypergraphs with at most s distinct nonempty edges of
    size at most l on t labeled vertices (the empty hypergraph included)."""
    t, s, l = params.t, params.s, params.l
    n_edges = sum(comb(t, j) for j in range(1, l + 1))
    return sum(comb(n_edges, k) for k in range(0, s + 1))


def family_size_asymptotic(params: FamilyParams) -> float:
    """Leading term t**(s*l) / ((l!)**s * s!), computed in log space."""
    t, s, l = params.t, params.s, params.l
    log_value = (
        s * l * math.log(t)
        - s * math.lgamma(l + 1)
        - math.lgamma(s + 1)
    )
    try:
        return math.exp(log_value)
    except OverflowError:
        return math.inf


def info_lower_bound(params: FamilyParams) -> int:
    """Minimum worst-case query count of any searching algorithm:
    ceil(log2 of the exact family size)."""
    size = family_size_exact(params)
    return (size - 1).bit_length()


def rate_point(t: int, queries: int) -> RatePoint:
    if queries < 1:
        raise ValueError("queries must be at least 1")
    if t < 2:
        raise ValueError("t must be at least 2")
    return RatePoint(t=t, queries=queries, rate=math.log2(t) / queries)
