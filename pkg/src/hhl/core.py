"""Core domain types: vertex sets, edges, hypergraphs, family parameters.

Vertices are 1-based integers in {1..t}. Edges are canonical sorted tuples
of distinct vertices, so hypergraph equality and deduplication are plain
value comparisons.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator

Edge = tuple[int, ...]


class GenerationError(RuntimeError):
    """Rejection sampling exhausted its retry budget."""


def canonical_edge(vertices: Iterable[int], t: int | None = None) -> Edge:
    """Return the sorted tuple form of an edge, validating its contents.

    Raises ValueError for empty edges, repeated vertices, or (when ``t``
    is given) vertices outside {1..t}.
    """
    vs = tuple(sorted(vertices))
    if not vs:
        raise ValueError("edge must be nonempty")
    if any(vs[i] == vs[i + 1] for i in range(len(vs) - 1)):
        raise ValueError(f"edge has repeated vertices: {vs}")
    if vs[0] < 1:
        raise ValueError(f"vertices are 1-based, got {vs[0]}")
    if t is not None and vs[-1] > t:
        raise ValueError(f"vertex {vs[-1]} outside universe of size {t}")
    return vs


def edge_mask(edge: Iterable[int]) -> int:
    """Bitmask of an edge (bit v-1 set for each vertex v)."""
    m = 0
    for v in edge:
        m |= 1 << (v - 1)
    return m


class VertexSet:
    """Immutable subset of {1..t} backed by an int bitmask (bit v-1 = vertex v).

    Every set operation costs O(t/word), which keeps the learner's
    exhaustive loops cheap even for t in the hundreds of thousands.
    """

    __slots__ = ("t", "mask")

    def __init__(self, t: int, members: Iterable[int] = ()) -> None:
        if t < 1:
            raise ValueError("universe size must be positive")
        mask = 0
        for v in members:
            if not 1 <= v <= t:
                raise ValueError(f"vertex {v} outside universe of size {t}")
            mask |= 1 << (v - 1)
        self.t = t
        self.mask = mask

    @classmethod
    def _from_mask(cls, t: int, mask: int) -> "VertexSet":
        # Internal fast path: trusts 0 <= mask < 2**t.
        vs = object.__new__(cls)
        vs.t = t
        vs.mask = mask
        return vs

    @classmethod
    def empty(cls, t: int) -> "VertexSet":
        return cls._from_mask(t, 0)

    @classmethod
    def full(cls, t: int) -> "VertexSet":
        if t < 1:
            raise ValueError("universe size must be positive")
        return cls._from_mask(t, (1 << t) - 1)

    @classmethod
    def singleton(cls, t: int, v: int) -> "VertexSet":
        return cls(t, (v,))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return 1 <= v <= self.t and (self.mask >> (v - 1)) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length()
            m ^= low

    def members(self) -> tuple[int, ...]:
        return tuple(self)

    def _check(self, other: "VertexSet") -> None:
        if self.t != other.t:
            raise ValueError(f"universe mismatch: {self.t} != {other.t}")

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet._from_mask(self.t, self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet._from_mask(self.t, self.mask & other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet._from_mask(self.t, self.mask & ~other.mask)

    def issubset(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.mask & other.mask == self.mask

    __le__ = issubset

    def complement(self) -> "VertexSet":
        return VertexSet._from_mask(self.t, self.mask ^ ((1 << self.t) - 1))

    def split_lowest(self, k: int) -> tuple["VertexSet", "VertexSet"]:
        """Split into (k lowest-numbered members, the rest)."""
        n = len(self)
        if not 0 <= k <= n:
            raise ValueError(f"cannot take {k} of {n} members")
        if k == 0:
            return VertexSet.empty(self.t), self
        if k == n:
            return self, VertexSet.empty(self.t)
        # Binary search the shortest prefix of bit positions holding k members.
        lo, hi = 1, self.t
        while lo < hi:
            mid = (lo + hi) // 2
            if (self.mask & ((1 << mid) - 1)).bit_count() >= k:
                hi = mid
            else:
                lo = mid + 1
        low_mask = self.mask & ((1 << lo) - 1)
        return (
            VertexSet._from_mask(self.t, low_mask),
            VertexSet._from_mask(self.t, self.mask ^ low_mask),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.t == other.t and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.t, self.mask))

    def __repr__(self) -> str:
        n = len(self)
        if n > 20:
            return f"VertexSet(t={self.t}, |S|={n})"
        return f"VertexSet(t={self.t}, {{{', '.join(map(str, self))}}})"


class Hypergraph:
    """Vertex count plus a set of distinct nonempty edges."""

    __slots__ = ("t", "edges")

    def __init__(self, t: int, edges: Iterable[Iterable[int]] = ()) -> None:
        if t < 1:
            raise ValueError("vertex count must be positive")
        self.t = t
        self.edges: frozenset[Edge] = frozenset(canonical_edge(e, t) for e in edges)

    @property
    def dim(self) -> int:
        """Cardinality of the largest edge (0 if there are no edges)."""
        return max((len(e) for e in self.edges), default=0)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def edge_masks(self) -> tuple[int, ...]:
        return tuple(edge_mask(e) for e in self.sorted_edges())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.t == other.t and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.t, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(t={self.t}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class FamilyParams:
    """Instance family bounds: t vertices, at most s edges, each of size at most l."""

    t: int
    s: int
    l: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValueError("t must be positive")
        if self.s < 1:
            raise ValueError("s must be positive")
        if self.l < 1:
            raise ValueError("l must be positive")


def member_of_family(h: Hypergraph, params: FamilyParams) -> bool:
    """True iff h has at most s edges, each of cardinality at most l."""
    if h.t != params.t:
        raise ValueError(f"universe mismatch: {h.t} != {params.t}")
    return len(h.edges) <= params.s and all(len(e) <= params.l for e in h.edges)


def is_sperner(h: Hypergraph) -> bool:
    """True iff no edge is a proper subset of another edge."""
    masks = [edge_mask(e) for e in h.edges]
    for i, a in enumerate(masks):
        for b in masks[i + 1 :]:
            inter = a & b
            if inter == a or inter == b:
                return False
    return True


def _random_edge(rng: random.Random, t: int, max_size: int) -> Edge:
    # Uniform over nonempty subsets of {1..t} of size <= max_size: pick the
    # size with probability proportional to the number of such subsets.
    sizes = list(range(1, min(max_size, t) + 1))
    weights = [comb(t, j) for j in sizes]
    size = rng.choices(sizes, weights=weights)[0]
    return tuple(sorted(rng.sample(range(1, t + 1), size)))


def random_family_instance(
    params: FamilyParams,
    sperner_only: bool = True,
    seed: int = 0,
    max_retries: int = 10_000,
) -> Hypergraph:
    """Sample a family member: edge count uniform in {0..s}, then that many
    distinct edges uniform over nonempty subsets of size <= l.

    Not uniform over the family. With ``sperner_only`` non-antichain draws
    are rejected and redrawn; exhausting ``max_retries`` raises
    GenerationError.
    """
    rng = random.Random(seed)
    k = rng.randint(0, params.s)
    n_choices = sum(comb(params.t, j) for j in range(1, min(params.l, params.t) + 1))
    if k > n_choices:
        raise GenerationError(f"cannot draw {k} distinct edges from {n_choices}")
    for _ in range(max_retries):
        edges: set[Edge] = set()
        draws = 0
        while len(edges) < k and draws < 100 + 20 * k:
            edges.add(_random_edge(rng, params.t, params.l))
            draws += 1
        if len(edges) < k:
            continue
        h = Hypergraph(params.t, edges)
        if not sperner_only or is_sperner(h):
            return h
    raise GenerationError(f"no instance after {max_retries} retries")


def random_disjoint_instance(params: FamilyParams, seed: int = 0) -> Hypergraph:
    """Sample exactly s pairwise disjoint edges of size exactly l."""
    s, l, t = params.s, params.l, params.t
    if s * l > t:
        raise ValueError(f"impossible instance: s*l = {s * l} > t = {t}")
    rng = random.Random(seed)
    verts = rng.sample(range(1, t + 1), s * l)
    edges = [tuple(sorted(verts[i * l : (i + 1) * l])) for i in range(s)]
    return Hypergraph(t, edges)


def hypergraph_to_dict(h: Hypergraph) -> dict:
    """Canonical JSON form: edges sorted ascending, list lexicographic."""
    return {"t": h.t, "edges": [list(e) for e in h.sorted_edges()]}


def hypergraph_from_dict(d: dict) -> Hypergraph:
    """Parse the canonical JSON form, rejecting malformed input."""
    if not isinstance(d, dict) or set(d) != {"t", "edges"}:
        raise ValueError("expected an object with exactly keys 't' and 'edges'")
    t = d["t"]
    if not isinstance(t, int) or isinstance(t, bool) or t < 1:
        raise ValueError("'t' must be a positive integer")
    raw = d["edges"]
    if not isinstance(raw, list):
        raise ValueError("'edges' must be a list")
    edges: list[Edge] = []
    for item in raw:
        if not isinstance(item, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in item
        ):
            raise ValueError(f"edge must be a list of integers: {item!r}")
        edges.append(canonical_edge(item, t))
    if len(set(edges)) != len(edges):
        raise ValueError("duplicate edges")
    return Hypergraph(t, edges)


def save_hypergraph(path: str, h: Hypergraph) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(hypergraph_to_dict(h), f)
        f.write("\n")


def load_hypergraph(path: str) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as f:
        return hypergraph_from_dict(json.load(f))
