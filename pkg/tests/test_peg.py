import numpy as np
import pytest

from ldpclab.gf2 import rank
from ldpclab.peg import (DegreeAssignment, DegreeDistribution,
                         construct_peg_code, optimized_distribution,
                         peg_construct, quantize_degrees)
from ldpclab.tanner import girth


def test_distribution_sums_to_one():
    dist = optimized_distribution()
    assert abs(sum(dist.node_fractions.values()) - 1.0) < 1e-12
    assert min(dist.node_fractions) == 2
    assert abs(dist.mean_degree() - 3.4999) < 1e-3


def test_distribution_validation():
    with pytest.raises(ValueError):
        DegreeDistribution({1: 0.5, 2: 0.5})
    with pytest.raises(ValueError):
        DegreeDistribution({2: 0.6, 3: 0.6})


def test_quantize_largest_remainder_n1000():
    counts = quantize_degrees(optimized_distribution(), 1000).histogram()
    # floors leave three seats; remainders 0.962 (d7), 0.576 (d3),
    # 0.387 (d2) take them
    assert counts == {2: 505, 3: 296, 5: 57, 6: 36, 7: 5, 9: 29, 11: 65,
                      12: 7}
    assert sum(counts.values()) == 1000


def test_quantize_degenerate():
    counts = quantize_degrees(DegreeDistribution({2: 1.0}), 2).histogram()
    assert counts == {2: 2}


def test_quantize_exact_totals():
    dist = optimized_distribution()
    for n in (500, 600, 700, 800, 900, 1000):
        assignment = quantize_degrees(dist, n)
        assert len(assignment.degrees) == n
        assert list(assignment.degrees) == sorted(assignment.degrees)
        # per-node mean degree tracks the distribution mean within 1
        assert abs(assignment.edge_count() / n - dist.mean_degree()) < 1.0


def test_peg_first_edge_hits_empty_check():
    degrees = DegreeAssignment((2, 2, 2, 2))
    h = peg_construct(4, 2, degrees, seed=0)
    assert h.n_rows == 2 and h.n_cols == 4
    assert h.col_degrees() == [2, 2, 2, 2]


def test_peg_determinism():
    dist = optimized_distribution()
    degrees = quantize_degrees(dist, 100)
    a = peg_construct(100, 50, degrees, seed=42)
    b = peg_construct(100, 50, degrees, seed=42)
    assert a.rows == b.rows
    c = peg_construct(100, 50, degrees, seed=43)
    assert c.rows != a.rows


def test_peg_column_histogram_exact():
    degrees = quantize_degrees(optimized_distribution(), 200)
    h = peg_construct(200, 100, degrees, seed=3)
    assert tuple(sorted(h.col_degrees())) == degrees.degrees


def test_peg_no_duplicate_edges():
    degrees = quantize_degrees(optimized_distribution(), 200)
    h = peg_construct(200, 100, degrees, seed=9)
    for row in h.rows:
        assert len(row) == len(set(row))


def test_peg_check_degrees_concentrated():
    degrees = quantize_degrees(optimized_distribution(), 300)
    h = peg_construct(300, 150, degrees, seed=5)
    weights = h.row_weights()
    assert max(weights) - min(weights) <= 2


def test_peg_rejects_infeasible():
    with pytest.raises(ValueError):
        peg_construct(4, 2, DegreeAssignment((2, 2, 2, 3)), seed=0)
    with pytest.raises(ValueError):
        peg_construct(5, 2, DegreeAssignment((2, 2, 2, 2, 2)), seed=0)


def test_peg_girth_and_rank_n500():
    h = construct_peg_code(500, seed=1)
    g = girth(h)
    assert g >= 6  # no 4-cycles at this density
    assert rank(h) == 250
