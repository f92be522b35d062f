import numpy as np
import pytest

from ldpclab.gf2 import SparseBinaryMatrix, rank, row_space_contains
from ldpclab.redundancy import (AssemblyError, assemble_representation,
                                build_representation_set, combine_base_rows,
                                cycle_redundant_rows, default_replace_count,
                                enumerate_combinable_pairs,
                                lift_redundant_base_row,
                                load_representation_set,
                                save_representation_set)
from ldpclab.sim import make_redundant_pool
from ldpclab.wimax import BaseMatrix, renormalize, wimax_base_matrix

from conftest import enumerate_codewords

# frozen by brute force over all 66 row pairs of the z=24 prototype
EXPECTED_PAIR_COUNT = 26
EXPECTED_WEIGHT_SPECTRUM = {10: 3, 11: 4, 12: 6, 13: 13}


def test_combine_rows_11_12(wimax_base_z24):
    row = combine_base_rows(wimax_base_z24, 10, 11)
    assert row is not None
    assert row.predicted_binary_weight == 10
    assert row.source_rows == frozenset({10, 11})
    # the only shared column is the last one, holding equal shifts
    shared = [
        j for j in range(24)
        if wimax_base_z24.entries[10][j] >= 0 and wimax_base_z24.entries[11][j] >= 0
    ]
    assert shared == [23]
    assert row.entries[23] == -1


def test_combine_unequal_shifts_incompatible():
    hb = BaseMatrix(((1, -1, 3), (2, 5, -1)))
    assert combine_base_rows(hb, 0, 1) is None


def test_combine_with_empty_row_is_identity():
    hb = BaseMatrix(((1, -1, 3), (-1, -1, -1)))
    row = combine_base_rows(hb, 0, 1)
    assert row.entries == (1, -1, 3)
    assert row.predicted_binary_weight == 2


def test_combine_invalid_indices_are_distinct_from_incompatible(wimax_base_z24):
    with pytest.raises(IndexError):
        combine_base_rows(wimax_base_z24, 0, 12)
    with pytest.raises(IndexError):
        combine_base_rows(wimax_base_z24, 3, 3)


def test_enumerate_pairs_fixture(wimax_base_z24):
    pairs = enumerate_combinable_pairs(wimax_base_z24)
    assert len(pairs) == EXPECTED_PAIR_COUNT
    spectrum = {}
    for i, j, row in pairs:
        assert i < j
        spectrum[row.predicted_binary_weight] = \
            spectrum.get(row.predicted_binary_weight, 0) + 1
    assert spectrum == EXPECTED_WEIGHT_SPECTRUM
    assert (10, 11) in [(i, j) for i, j, _ in pairs]
    weights = [row.predicted_binary_weight for _, _, row in pairs]
    assert weights == sorted(weights)


def test_enumerate_pairs_never_self():
    hb = renormalize(wimax_base_matrix(), 40)
    assert all(i != j for i, j, _ in enumerate_combinable_pairs(hb))


def test_lifted_rows_have_predicted_weight(wimax576, wimax_base_z24):
    for i, j, row in enumerate_combinable_pairs(wimax_base_z24):
        lifted = lift_redundant_base_row(row, 24)
        assert len(lifted) == 24
        assert all(r.weight == row.predicted_binary_weight for r in lifted)
        # lifted row equals the XOR of its two source rows of H
        sample = lifted[7]
        acc = np.zeros(576, dtype=np.uint8)
        for s in sample.source_rows:
            acc[list(wimax576.rows[s])] ^= 1
        expected = np.zeros(576, dtype=np.uint8)
        expected[list(sample.support)] = 1
        assert (acc == expected).all()


def test_lifted_rows_in_row_space(wimax576, wimax_base_z24):
    row = combine_base_rows(wimax_base_z24, 10, 11)
    for lifted in lift_redundant_base_row(row, 24):
        v = np.zeros(576, dtype=np.uint8)
        v[list(lifted.support)] = 1
        assert row_space_contains(wimax576, v)


def test_cycle_weight_bound_formula():
    # three weight-2 checks on one 6-cycle: bound 2+2+2-6, XOR cancels fully
    h = SparseBinaryMatrix.from_rows(6, [[0, 1], [1, 2], [2, 0]])
    found = cycle_redundant_rows(h, 6, 10)
    assert len(found) == 1
    meta, row = found[0]
    assert meta.cycle_length == 6
    assert meta.weight_bound == 2 + 2 + 2 - 6
    assert row.weight == 0  # the three rows close perfectly here


def test_cycle_bound_evaluations(wimax576):
    # bound = sum of check weights minus cycle length
    found = cycle_redundant_rows(wimax576, 6, 200)
    weights = wimax576.row_weights()
    for meta, _ in found:
        total = sum(weights[i] for i in meta.check_indices)
        assert meta.weight_bound == total - 6
    # three weight-6 checks give 12, three weight-7 checks give 15
    assert {m.weight_bound for m, _ in found} <= {12, 13, 14, 15}


def test_cycle_rows_wimax(wimax576):
    found = cycle_redundant_rows(wimax576, 6, 300)
    assert found
    for meta, row in found:
        assert len(meta.check_indices) == 3
        assert 12 <= meta.weight_bound <= 15
        # independent recount of the XOR weight
        acc = np.zeros(576, dtype=np.uint8)
        for idx in meta.check_indices:
            acc[list(wimax576.rows[idx])] ^= 1
        assert acc.sum() == row.weight
        assert row.weight <= meta.weight_bound
        assert row_space_contains(wimax576, acc)


def test_cycle_rows_no_four_cycles_in_wimax(wimax576):
    assert cycle_redundant_rows(wimax576, 4, 50) == []


def test_cycle_rows_respects_cap(wimax576):
    assert len(cycle_redundant_rows(wimax576, 6, 17)) == 17


def test_assemble_deterministic(wimax576, wimax576_pool):
    a = assemble_representation(wimax576, wimax576_pool, 10, seed=123)
    b = assemble_representation(wimax576, wimax576_pool, 10, seed=123)
    assert a.rows == b.rows
    c = assemble_representation(wimax576, wimax576_pool, 10, seed=124)
    assert c.rows != a.rows


def test_assemble_preserves_rank_and_differs(wimax576, wimax576_pool):
    out = assemble_representation(wimax576, wimax576_pool, 10, seed=5)
    assert rank(out) == 288
    changed = [i for i in range(288) if out.rows[i] != wimax576.rows[i]]
    assert len(changed) == 10


def test_assemble_pool_exhaustion(wimax576, wimax576_pool):
    with pytest.raises(ValueError):
        assemble_representation(wimax576, wimax576_pool[:4], 10, seed=1)


def test_assemble_bounds_checked(wimax576, wimax576_pool):
    with pytest.raises(ValueError):
        assemble_representation(wimax576, wimax576_pool, 9, seed=1)
    assemble_representation(wimax576, wimax576_pool, 9, seed=1, min_replace=9)


def test_default_replace_count_schedule():
    assert default_replace_count(576) == 10
    assert default_replace_count(960) == 16
    assert default_replace_count(768) == 13
    assert default_replace_count(500) == 10


def test_build_representation_set_degenerate(wimax576):
    reps = build_representation_set(wimax576, 1, seed=0)
    assert reps.l == 1
    assert reps.matrices[0].rows == wimax576.rows


def test_build_representation_set_invariants(wimax576, wimax576_reps):
    reps = wimax576_reps
    assert reps.l == 15
    assert reps.matrices[0].rows == wimax576.rows
    seen = set()
    for m in reps.matrices:
        assert (m.n_rows, m.n_cols) == (288, 576)
        assert rank(m) == 288
        assert m.rows not in seen
        seen.add(m.rows)


def test_representations_orthogonal_to_generator(wimax576_reps,
                                                 wimax576_generator):
    gd = wimax576_generator.generator.to_dense().astype(np.int64)
    for m in wimax576_reps.matrices:
        hd = m.to_dense().astype(np.int64)
        assert not ((gd @ hd.T) % 2).any()


def test_representation_same_codebook_tiny():
    # 6-bit code: replacing a row with a combination keeps the codeword set
    dense = np.array([
        [1, 1, 0, 0, 1, 0],
        [0, 1, 1, 0, 0, 1],
        [0, 0, 1, 1, 1, 0],
    ], dtype=np.uint8)
    h = SparseBinaryMatrix.from_dense(dense)
    assert rank(h) == 3
    from ldpclab.gf2 import systematic_generator
    from ldpclab.redundancy import RedundantRow

    combo = dense[0] ^ dense[1]
    pool = [RedundantRow(support=tuple(np.flatnonzero(combo)),
                         source_rows=frozenset({0, 1}))]
    out = assemble_representation(h, pool, 1, seed=0,
                                  min_replace=1, max_replace=1)
    assert rank(out) == 3
    words_a = {tuple(w) for w in enumerate_codewords(systematic_generator(h))}
    words_b = {tuple(w) for w in enumerate_codewords(systematic_generator(out))}
    assert words_a == words_b


def test_representation_set_roundtrip(tmp_path, wimax576_reps):
    save_representation_set(wimax576_reps, tmp_path / "reps")
    back = load_representation_set(tmp_path / "reps")
    assert back.l == wimax576_reps.l
    assert back.seeds == wimax576_reps.seeds
    assert back.replaced == wimax576_reps.replaced
    for a, b in zip(back.matrices, wimax576_reps.matrices):
        assert a.rows == b.rows
    manifest = (tmp_path / "reps" / "manifest.yaml").read_text()
    assert "origin" in manifest and "seeds" in manifest


def test_cycle_pool_for_generic_matrix():
    rng = np.random.default_rng(2)
    while True:
        dense = (rng.random((8, 16)) < 0.25).astype(np.uint8)
        h = SparseBinaryMatrix.from_dense(dense)
        if rank(h) == 8 and all(w >= 2 for w in h.row_weights()):
            break
    pool = make_redundant_pool(h, "cycle")
    for row in pool:
        v = np.zeros(16, dtype=np.uint8)
        v[list(row.support)] = 1
        assert row_space_contains(h, v)
