from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest

from hhl import (
    DecodeError,
    DesignSearchError,
    FamilyParams,
    Hypergraph,
    Oracle,
    VertexSet,
    build_block_design,
    decode_block,
    expand_layers,
    find_good_layer,
    is_separating_design,
    layer_partition,
    layer_success_probability,
    random_disjoint_instance,
    required_layers,
    sample_layer_matrix,
    two_stage_learn,
    two_stage_trial,
)
from hhl.coverfree import BinaryCode
from hhl.twostage import LayerMatrix


def complement_of_identity(t: int) -> BinaryCode:
    full = (1 << t) - 1
    return BinaryCode(t, t, tuple(full ^ (1 << j) for j in range(t)))


def test_sample_layer_matrix_singleton_alphabet():
    m = sample_layer_matrix(5, 7, 1, seed=0)
    assert (m.symbols == 1).all()


def test_sample_layer_matrix_deterministic():
    a = sample_layer_matrix(4, 9, 3, seed=123)
    b = sample_layer_matrix(4, 9, 3, seed=123)
    assert (a.symbols == b.symbols).all()
    c = sample_layer_matrix(4, 9, 3, seed=124)
    assert (a.symbols != c.symbols).any()


def test_sample_layer_matrix_symbol_frequencies():
    s = 4
    m = sample_layer_matrix(40, 2500, s, seed=9)
    total = m.symbols.size
    sigma = (total * (1 / s) * (1 - 1 / s)) ** 0.5
    for r in range(1, s + 1):
        count = int((m.symbols == r).sum())
        assert abs(count - total / s) <= 3 * sigma


def test_layer_partition_blocks():
    m = LayerMatrix(2, np.array([[1, 1, 2, 2]]))
    part = layer_partition(m, 0)
    assert part.blocks[0] == VertexSet(4, [1, 2])
    assert part.blocks[1] == VertexSet(4, [3, 4])
    assert part.sizes == (2, 2)


def test_expand_layers_each_column_once_per_layer():
    m = sample_layer_matrix(6, 11, 3, seed=2)
    expansion = expand_layers(m)
    assert expansion.code.n_rows == 18
    for i in range(m.n_layers):
        layer_rows = expansion.code.rows[i * 3 : (i + 1) * 3]
        combined = 0
        for r in layer_rows:
            assert combined & r == 0
            combined |= r
        assert combined == (1 << 11) - 1


def test_find_good_layer_examples():
    hidden = Hypergraph(4, [(1, 2), (3, 4)])
    good = LayerMatrix(2, np.array([[1, 1, 2, 2]]))
    res = find_good_layer(good, Oracle(hidden))
    assert res is not None
    assert res[0] == 0
    assert res[1].blocks[0] == VertexSet(4, [1, 2])

    bad = LayerMatrix(2, np.array([[1, 2, 1, 2]]))
    assert find_good_layer(bad, Oracle(hidden)) is None


def test_find_good_layer_singleton_alphabet():
    hidden = Hypergraph(6, [(2, 5)])
    m = sample_layer_matrix(3, 6, 1, seed=0)
    res = find_good_layer(m, Oracle(hidden))
    assert res is not None
    assert res[0] == 0
    assert res[1].blocks == (VertexSet.full(6),)


def test_find_good_layer_early_exit_vs_full_batch():
    hidden = Hypergraph(4, [(1, 2), (3, 4)])
    m = LayerMatrix(2, np.array([[1, 2, 1, 2], [1, 1, 2, 2]]))
    lazy = Oracle(hidden)
    assert find_good_layer(m, lazy)[0] == 1
    assert lazy.count == 3  # first block of layer 0 answers 0, layer skipped

    batch = Oracle(hidden)
    assert find_good_layer(m, batch, full_batch=True)[0] == 1
    assert batch.count == 4  # every designed query is issued


def test_layer_success_probability():
    assert layer_success_probability(1, 3) == 1.0
    assert layer_success_probability(2, 2) == 0.125


def test_layer_success_probability_empirical():
    hits = 0
    n_layers = 100
    n_instances = 100
    for seed in range(n_instances):
        hidden = random_disjoint_instance(FamilyParams(64, 2, 2), seed=seed)
        m = sample_layer_matrix(n_layers, 64, 2, seed=10_000 + seed)
        o = Oracle(hidden)
        for i in range(m.n_layers):
            part = layer_partition(m, i)
            if all(o.query(b) for b in part.blocks):
                hits += 1
    total = n_layers * n_instances
    p = 0.125
    sigma = (p * (1 - p) / total) ** 0.5
    assert abs(hits / total - p) <= 3 * sigma


def test_required_layers():
    assert required_layers(0.5, 1, 2) == 1
    assert required_layers(0.01, 2, 2) == 35
    with pytest.raises(ValueError):
        required_layers(0.0, 2, 2)
    with pytest.raises(ValueError):
        required_layers(1.0, 2, 2)


def test_required_layers_bracketing():
    for eps in (0.3, 0.1, 0.01):
        for s in (2, 3):
            for l in (1, 2):
                n = required_layers(eps, s, l)
                q = 1 - layer_success_probability(s, l)
                assert q**n <= eps
                assert n == 1 or q ** (n - 1) > eps


def test_complement_of_identity_separates_singletons():
    design = complement_of_identity(5)
    assert is_separating_design(design, 1)
    for v in range(1, 6):
        answers = [(r >> (v - 1)) & 1 == 1 for r in design.rows]
        assert decode_block(design, answers, 1) == (v,)


def test_identity_rows_do_not_separate_pairs():
    identity = BinaryCode(3, 3, (1, 2, 4))
    assert not is_separating_design(identity, 2)


@pytest.mark.parametrize("l", [1, 2])
def test_block_design_round_trip(l):
    for t_block in range(l, 9):
        design = build_block_design(t_block, l, seed=42)
        for size in range(1, l + 1):
            for cand in combinations(range(1, t_block + 1), size):
                cmask = sum(1 << (c - 1) for c in cand)
                answers = [(r & cmask) == cmask for r in design.rows]
                assert decode_block(design, answers, l) == cand


def test_block_design_deterministic():
    a = build_block_design(6, 2, seed=5)
    b = build_block_design(6, 2, seed=5)
    assert a == b


def test_block_design_budget_exhaustion():
    with pytest.raises(DesignSearchError):
        build_block_design(6, 2, seed=0, max_rows=0)
    with pytest.raises(ValueError):
        build_block_design(1, 2, seed=0)


def test_decode_block_error_cases():
    design = complement_of_identity(3)
    with pytest.raises(DecodeError):
        decode_block(design, [True, True, True], 1)  # no singleton fits
    wide = BinaryCode(1, 2, (3,))  # one all-ones row cannot tell {1} from {2}
    with pytest.raises(DecodeError):
        decode_block(wide, [True], 1)
    with pytest.raises(ValueError):
        decode_block(design, [True], 1)


def test_two_stage_trial_success():
    params = FamilyParams(16, 2, 2)
    hidden = random_disjoint_instance(params, seed=4)
    oracle = Oracle(hidden)
    report = two_stage_trial(oracle, params, 0.5, seed=4, n_layers=1)
    assert report.success
    assert report.hypergraph == hidden
    assert report.stage1_queries == 2  # s * n_layers, the full fixed batch
    tags = [r.tag for r in oracle.transcript]
    assert set(tags) == {"stage1", "stage2"}
    assert tags == sorted(tags)  # stage1 strictly precedes stage2
    assert oracle.tag is None


def test_two_stage_trial_declared_failure():
    params = FamilyParams(16, 2, 2)
    hidden = random_disjoint_instance(params, seed=0)
    oracle = Oracle(hidden)
    report = two_stage_trial(oracle, params, 0.5, seed=0, n_layers=1)
    assert not report.success
    assert report.hypergraph is None
    assert report.stage1_queries == 2
    assert report.stage2_queries == 0
    assert two_stage_learn(Oracle(hidden), params, 0.5, seed=0, n_layers=1) is None


def test_two_stage_singleton_family_always_succeeds():
    params = FamilyParams(12, 1, 2)
    for seed in range(10):
        hidden = random_disjoint_instance(params, seed=seed)
        got = two_stage_learn(Oracle(hidden), params, 0.2, seed=seed)
        assert got == hidden


def test_two_stage_end_to_end():
    params = FamilyParams(32, 2, 2)
    successes = 0
    for seed in range(15):
        hidden = random_disjoint_instance(params, seed=seed)
        report = two_stage_trial(Oracle(hidden), params, 0.05, seed=seed)
        assert report.layers == required_layers(0.05, 2, 2)
        assert report.stage1_queries == 2 * report.layers
        if report.success:
            successes += 1
            assert report.hypergraph == hidden
    assert successes >= 12  # expected failure rate is below 5 percent


def test_two_stage_tiny_universe():
    # blocks must take sizes (2, 2) for a layer to be good at t=4
    params = FamilyParams(4, 2, 2)
    hidden = Hypergraph(4, [(1, 2), (3, 4)])
    successes = 0
    for seed in range(20):
        report = two_stage_trial(Oracle(hidden), params, 0.05, seed=seed)
        if report.success:
            successes += 1
            assert report.hypergraph == hidden
            assert report.hypergraph.sorted_edges() == [(1, 2), (3, 4)]
    assert successes >= 17


def test_two_stage_validates_epsilon():
    params = FamilyParams(8, 2, 2)
    hidden = random_disjoint_instance(params, seed=1)
    with pytest.raises(ValueError):
        two_stage_trial(Oracle(hidden), params, 1.5, seed=1)


def test_trial_report_dict_shape():
    params = FamilyParams(16, 2, 2)
    hidden = random_disjoint_instance(params, seed=4)
    report = two_stage_trial(Oracle(hidden), params, 0.5, seed=4, n_layers=1)
    d = report.to_dict()
    assert set(d) == {
        "t", "s", "l", "epsilon", "layers",
        "stage1_queries", "stage2_queries", "success", "recovered_edges",
    }
    assert d["recovered_edges"] == [list(e) for e in hidden.sorted_edges()]
