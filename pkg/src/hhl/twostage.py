"""Monte-Carlo two-stage strategy for hidden hypergraphs made of s pairwise
disjoint edges of size exactly l.

Stage one queries the blocks of random symbol layers: each layer assigns
every vertex one of s symbols, and the s symbol classes partition the
vertex set. A layer is good when all s block queries answer 1, which for
this instance family means each block contains exactly one edge. Stage two
then runs, per block, a non-adaptive single-edge identification design and
decodes one edge per block.

Both stages are committed before reading any answers within the stage:
stage one is a fixed batch of s*N queries, stage two depends only on
stage-one answers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Sequence

import numpy as np

from .core import Edge, FamilyParams, Hypergraph, VertexSet
from .coverfree import BinaryCode
from .oracle import Oracle


class DesignSearchError(RuntimeError):
    """No separating block design was found within the row budget."""


class DecodeError(RuntimeError):
    """Block answers are consistent with zero or several candidate edges."""


@dataclass(eq=False)
class LayerMatrix:
    """N x t matrix over symbols {1..s}; each row induces one query layer."""

    s: int
    symbols: np.ndarray  # shape (n_layers, t), entries in 1..s

    def __post_init__(self) -> None:
        if self.s < 1:
            raise ValueError("s must be positive")
        if self.symbols.ndim != 2 or self.symbols.size == 0:
            raise ValueError("symbols must be a nonempty 2-d array")
        if self.symbols.min() < 1 or self.symbols.max() > self.s:
            raise ValueError("symbol entries must lie in {1..s}")

    @property
    def n_layers(self) -> int:
        return int(self.symbols.shape[0])

    @property
    def t(self) -> int:
        return int(self.symbols.shape[1])


@dataclass(frozen=True)
class Partition:
    """Disjoint vertex blocks covering the whole universe (blocks may be empty)."""

    blocks: tuple[VertexSet, ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise ValueError("partition needs at least one block")
        t = self.blocks[0].t
        union = 0
        total = 0
        for b in self.blocks:
            if b.t != t:
                raise ValueError("blocks disagree on the universe size")
            union |= b.mask
            total += len(b)
        if union != (1 << t) - 1 or total != t:
            raise ValueError("blocks must partition the vertex set")

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)


@dataclass
class LayerExpansion:
    """Binary expansion of a layer matrix: s rows per layer, one per symbol."""

    source: LayerMatrix
    code: BinaryCode


def _mask_from_bools(flags: np.ndarray) -> int:
    return int.from_bytes(
        np.packbits(flags, bitorder="little").tobytes(), "little"
    )


def sample_layer_matrix(n_layers: int, t: int, s: int, seed: int) -> LayerMatrix:
    """Sample every entry i.i.d. uniform on {1..s}; deterministic in seed."""
    if n_layers < 1 or t < 1 or s < 1:
        raise ValueError("n_layers, t and s must be positive")
    rng = np.random.default_rng(seed)
    symbols = rng.integers(1, s + 1, size=(n_layers, t), dtype=np.int64)
    return LayerMatrix(s, symbols)


def layer_partition(matrix: LayerMatrix, layer: int) -> Partition:
    """Partition of {1..t} into the s symbol classes of one layer."""
    row = matrix.symbols[layer]
    blocks = tuple(
        VertexSet._from_mask(matrix.t, _mask_from_bools(row == r))
        for r in range(1, matrix.s + 1)
    )
    return Partition(blocks)


def expand_layers(matrix: LayerMatrix) -> LayerExpansion:
    """Binary (s*N x t) code whose consecutive s-row groups are the layers."""
    rows: list[int] = []
    for i in range(matrix.n_layers):
        rows.extend(b.mask for b in layer_partition(matrix, i).blocks)
    code = BinaryCode(matrix.s * matrix.n_layers, matrix.t, tuple(rows))
    return LayerExpansion(source=matrix, code=code)


def find_good_layer(
    matrix: LayerMatrix, oracle: Oracle, *, full_batch: bool = False
) -> tuple[int, Partition] | None:
    """Scan layers in order for one whose s block queries all answer 1.

    By default the scan is lazy: it stops at the first good layer and skips
    a layer's remaining blocks after its first 0. With ``full_batch`` every
    block query of every layer is issued before any answer is used, which
    is the two-stage (non-adaptive within a stage) regime; the query count
    is then exactly s * n_layers.
    """
    if matrix.t != oracle.hidden.t:
        raise ValueError(f"universe mismatch: {matrix.t} != {oracle.hidden.t}")
    good: tuple[int, Partition] | None = None
    for i in range(matrix.n_layers):
        part = layer_partition(matrix, i)
        answers = []
        for block in part.blocks:
            answers.append(oracle.query(block))
            if not full_batch and not answers[-1]:
                break
        if len(answers) == matrix.s and all(answers):
            if not full_batch:
                return i, part
            if good is None:
                good = (i, part)
    return good


def layer_success_probability(s: int, l: int) -> float:
    """Probability that one random layer is good: s! / s**(s*l)."""
    if s < 1 or l < 1:
        raise ValueError("s and l must be positive")
    try:
        return factorial(s) / s ** (s * l)
    except OverflowError:
        return math.exp(math.lgamma(s + 1) - s * l * math.log(s))


def required_layers(epsilon: float, s: int, l: int) -> int:
    """Smallest N with (1 - s!/s**(s*l))**N <= epsilon."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    p = layer_success_probability(s, l)
    if p >= 1.0:
        return 1
    q = 1.0 - p
    n = max(1, math.ceil(math.log(epsilon) / math.log(q)))
    while q**n > epsilon:
        n += 1
    while n > 1 and q ** (n - 1) <= epsilon:
        n -= 1
    return n


def _candidate_indices(n_cols: int, max_size: int) -> list[np.ndarray]:
    """0-based column index arrays, one (count, size) array per size."""
    out = []
    for size in range(1, min(max_size, n_cols) + 1):
        idx = np.fromiter(
            (j for tup in combinations(range(n_cols), size) for j in tup),
            dtype=np.int64,
            count=comb(n_cols, size) * size,
        ).reshape(-1, size)
        out.append(idx)
    return out


def _distinct_signatures(support: np.ndarray, cand: list[np.ndarray]) -> bool:
    # support: (n_rows, n_cols) bool. A design separates the candidates iff
    # the per-candidate answer columns are pairwise distinct.
    sigs = [support[:, idx].all(axis=2) for idx in cand]
    allsig = np.concatenate(sigs, axis=1)
    packed = np.packbits(allsig, axis=0)
    n_cand = allsig.shape[1]
    return len(np.unique(packed.T, axis=0)) == n_cand


def is_separating_design(code: BinaryCode, max_edge_size: int) -> bool:
    """True iff distinct candidate edges (nonempty, size <= max_edge_size)
    always produce distinct answer patterns under the code's rows."""
    support = np.array(
        [[(r >> j) & 1 for j in range(code.n_cols)] for r in code.rows],
        dtype=bool,
    )
    return _distinct_signatures(support, _candidate_indices(code.n_cols, max_edge_size))


def build_block_design(
    n_cols: int, max_edge_size: int, seed: int, *, max_rows: int = 4096
) -> BinaryCode:
    """Random search for a verified single-edge identification design.

    Samples the bit-complement of i.i.d. Bernoulli(1/(max_edge_size+1))
    codes at doubling lengths and returns the first one that passes the
    exhaustive separation check. Raises DesignSearchError when the row
    budget is exhausted.
    """
    if max_edge_size < 1:
        raise ValueError("max_edge_size must be positive")
    if n_cols < max_edge_size:
        raise ValueError(f"block of {n_cols} cannot hold an edge of {max_edge_size}")
    rng = np.random.default_rng(seed)
    cand = _candidate_indices(n_cols, max_edge_size)
    n = 1
    while n <= max_rows:
        cf_style = rng.random((n, n_cols)) < 1.0 / (max_edge_size + 1)
        support = ~cf_style
        if _distinct_signatures(support, cand):
            rows = tuple(_mask_from_bools(row) for row in support)
            return BinaryCode(n, n_cols, rows)
        if n == max_rows:
            break
        n = min(2 * n, max_rows)
    raise DesignSearchError(
        f"no separating design for {n_cols} columns within {max_rows} rows"
    )


def decode_block(
    design: BinaryCode, answers: Sequence[bool], max_edge_size: int
) -> Edge:
    """Identify the unique candidate edge consistent with the row answers.

    Candidates are pruned to the intersection of all positively answered
    rows (a consistent edge must lie inside every positive row), then each
    survivor is checked against the full answer vector. Raises DecodeError
    unless exactly one candidate remains.
    """
    if len(answers) != design.n_rows:
        raise ValueError(f"expected {design.n_rows} answers, got {len(answers)}")
    hull = (1 << design.n_cols) - 1
    for row, ans in zip(design.rows, answers):
        if ans:
            hull &= row
    members = []
    m = hull
    while m:
        low = m & -m
        members.append(low.bit_length())
        m ^= low
    matches: list[Edge] = []
    for size in range(1, min(max_edge_size, len(members)) + 1):
        for cand in combinations(members, size):
            cmask = 0
            for c in cand:
                cmask |= 1 << (c - 1)
            if all(
                ((row & cmask) == cmask) == bool(ans)
                for row, ans in zip(design.rows, answers)
            ):
                matches.append(cand)
    if len(matches) != 1:
        raise DecodeError(
            f"{len(matches)} candidates consistent with the answers"
        )
    return matches[0]


@dataclass
class TrialReport:
    """Outcome of one two-stage run."""

    t: int
    s: int
    l: int
    epsilon: float
    layers: int
    stage1_queries: int
    stage2_queries: int
    success: bool
    hypergraph: Hypergraph | None

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "s": self.s,
            "l": self.l,
            "epsilon": self.epsilon,
            "layers": self.layers,
            "stage1_queries": self.stage1_queries,
            "stage2_queries": self.stage2_queries,
            "success": self.success,
            "recovered_edges": (
                None
                if self.hypergraph is None
                else [list(e) for e in self.hypergraph.sorted_edges()]
            ),
        }


def _derive_seed(seed: int, salt: int) -> int:
    return int(np.random.SeedSequence([seed, salt]).generate_state(1)[0])


def two_stage_trial(
    oracle: Oracle,
    params: FamilyParams,
    epsilon: float,
    seed: int,
    *,
    n_layers: int | None = None,
    design_max_rows: int = 4096,
) -> TrialReport:
    """Run both stages against an oracle hiding s disjoint l-edges.

    Stage one always issues the full fixed batch of s*N block queries and
    then picks the first good layer; no good layer (or an exhausted design
    search in stage two) is a declared failure, never a fallback. Transcript
    entries are tagged "stage1" / "stage2".
    """
    t, s, l = params.t, params.s, params.l
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    layers = n_layers if n_layers is not None else required_layers(epsilon, s, l)
    matrix = sample_layer_matrix(layers, t, s, _derive_seed(seed, 0))
    start = oracle.count
    old_tag = oracle.tag
    try:
        oracle.tag = "stage1"
        good = find_good_layer(matrix, oracle, full_batch=True)
        stage1 = oracle.count - start
        if good is None:
            return TrialReport(t, s, l, epsilon, layers, stage1, 0, False, None)
        _, part = good

        # Commit every stage-two query before reading any stage-two answer:
        # designs depend only on the partition (a stage-one outcome) and the
        # seed, so the whole batch is fixed up front.
        try:
            blocks = [
                (
                    block.members(),
                    build_block_design(
                        len(block), l, _derive_seed(seed, bi), max_rows=design_max_rows
                    ),
                )
                for bi, block in enumerate(part.blocks, start=1)
            ]
        except DesignSearchError:
            return TrialReport(t, s, l, epsilon, layers, stage1, 0, False, None)

        oracle.tag = "stage2"
        mid = oracle.count
        block_answers: list[list[bool]] = []
        for verts, design in blocks:
            vert_bits = [1 << (v - 1) for v in verts]
            answers = []
            for row in design.rows:
                gmask = 0
                m = row
                while m:
                    low = m & -m
                    gmask |= vert_bits[low.bit_length() - 1]
                    m ^= low
                answers.append(oracle.query(VertexSet._from_mask(t, gmask)))
            block_answers.append(answers)
        stage2 = oracle.count - mid

        edges: list[Edge] = []
        for (verts, design), answers in zip(blocks, block_answers):
            local = decode_block(design, answers, l)
            edges.append(tuple(verts[j - 1] for j in local))
        return TrialReport(
            t, s, l, epsilon, layers, stage1, stage2, True, Hypergraph(t, edges)
        )
    finally:
        oracle.tag = old_tag


def two_stage_learn(
    oracle: Oracle,
    params: FamilyParams,
    epsilon: float,
    seed: int,
    *,
    n_layers: int | None = None,
) -> Hypergraph | None:
    """Recover the hidden hypergraph, or None when the trial declares failure."""
    return two_stage_trial(
        oracle, params, epsilon, seed, n_layers=n_layers
    ).hypergraph
