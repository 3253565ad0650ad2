from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from sidonx.hypergraph import build
from sidonx.overlap import (
    CentroidStrategy,
    GridStrategy,
    RandomStrategy,
    complete_triples,
    load_embedding_csv,
    overlap_estimate,
    overlap_estimate_hypergraph,
    point_in_triangle,
    quantize_embedding,
    random_embedding,
)
from sidonx.sidon import SidonSet

TRI = ((0, 0), (4, 0), (0, 4))


def test_point_in_triangle_examples():
    assert point_in_triangle((1, 1), *TRI) == "inside"
    assert point_in_triangle((9, 9), *TRI) == "outside"
    assert point_in_triangle((2, 0), *TRI) == "boundary"


def test_point_in_triangle_vertices_are_boundary():
    for corner in TRI:
        assert point_in_triangle(corner, *TRI) == "boundary"


def test_point_in_triangle_permutation_invariant():
    pts = [(-3, 2), (5, 1), (1, 7)]
    for probe in [(1, 2), (0, 0), (50, 50), (1, 3)]:
        results = {point_in_triangle(probe, *perm) for perm in permutations(pts)}
        assert len(results) == 1


def test_point_in_triangle_translation_invariant():
    rng = np.random.default_rng(0)
    for _ in range(50):
        pts = [tuple(map(int, rng.integers(-50, 50, 2))) for _ in range(3)]
        probe = tuple(map(int, rng.integers(-50, 50, 2)))
        base = point_in_triangle(probe, *pts)
        dx, dy = map(int, rng.integers(-1000, 1000, 2))
        shifted = [(x + dx, y + dy) for x, y in pts]
        assert point_in_triangle((probe[0] + dx, probe[1] + dy), *shifted) == base


def test_degenerate_triangles_contain_only_segment_points():
    seg = ((0, 0), (2, 2), (4, 4))
    assert point_in_triangle((1, 1), *seg) == "boundary"
    assert point_in_triangle((5, 5), *seg) == "outside"  # collinear but past the end
    assert point_in_triangle((1, 2), *seg) == "outside"
    point = ((3, 3), (3, 3), (3, 3))
    assert point_in_triangle((3, 3), *point) == "boundary"
    assert point_in_triangle((3, 4), *point) == "outside"


def test_single_triple_centroid_covers():
    emb = {0: (0, 0), 1: (6, 0), 2: (0, 6)}
    rep = overlap_estimate([(0, 1, 2)], emb, GridStrategy(1))
    assert rep.fraction == 1


def test_far_candidates_cover_nothing():
    emb = {0: (0, 0), 1: (6, 0), 2: (0, 6), 3: (1000, 1000)}
    rep = overlap_estimate([(0, 1, 2)], emb, RandomStrategy(seed=1, k=5))
    # candidates live in the bounding box, most of which misses the triangle
    assert 0 <= rep.fraction <= 1


def test_monotone_in_candidates():
    # Same seed draws the same prefix, so growing k only adds candidates.
    emb = random_embedding(range(12), seed=3)
    triples = complete_triples(12)
    prev = Fraction(0)
    for k in (1, 5, 20, 60):
        frac = overlap_estimate(triples, emb, RandomStrategy(seed=8, k=k)).fraction
        assert frac >= prev
        prev = frac


def test_reported_fraction_matches_recount():
    emb = random_embedding(range(15), seed=9)
    triples = complete_triples(15)
    rep = overlap_estimate(triples, emb, GridStrategy(8))
    covered = sum(
        1 for tr in triples
        if point_in_triangle(rep.best_point, emb[tr[0]], emb[tr[1]], emb[tr[2]]) != "outside")
    assert rep.fraction == Fraction(covered, len(triples))


def test_boros_furedi_floor_on_30_points():
    emb = random_embedding(range(30), seed=5)
    rep = overlap_estimate(complete_triples(30), emb, GridStrategy(64))
    assert rep.fraction >= Fraction(1, 5)


def test_centroid_strategy():
    emb = random_embedding(range(10), seed=2)
    rep = overlap_estimate(complete_triples(10), emb, CentroidStrategy())
    assert rep.candidates_examined <= 120
    assert rep.fraction > 0


def test_hypergraph_wrapper():
    h = build(SidonSet(2, (1, 2, 3)))
    emb = random_embedding(range(4), seed=7)
    rep = overlap_estimate_hypergraph(h, emb, GridStrategy(16))
    # any point in the convex hull position of 4 points covers >= 1 of the 4
    assert rep.fraction >= Fraction(1, 4)
    assert rep.total == 4


def test_empty_triples_rejected():
    with pytest.raises(ValueError):
        overlap_estimate([], {0: (0, 0)}, GridStrategy(2))


def test_quantization_and_csv(tmp_path):
    emb = quantize_embedding({0: (0.25, 0.5), 1: (1.0, -0.125)})
    assert emb == {0: (250000, 500000), 1: (1000000, -125000)}
    path = tmp_path / "emb.csv"
    path.write_text("vertex,x,y\n0,0.25,0.5\n1,1.0,-0.125\n")
    assert load_embedding_csv(path) == emb


def test_deterministic_tie_breaking():
    emb = {0: (0, 0), 1: (10, 0), 2: (0, 10)}
    a = overlap_estimate([(0, 1, 2)], emb, GridStrategy(4))
    b = overlap_estimate([(0, 1, 2)], emb, GridStrategy(4))
    assert a.best_point == b.best_point
