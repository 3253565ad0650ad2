"""Empirical geometric-overlap estimation for planar embeddings.

Candidate points are evaluated exactly (integer orientation predicates on
coordinates quantized at 10^6 resolution), so every reported fraction is a
certified lower bound on the overlap constant of the embedding. Boundary
containment counts as covered; collinear triangles contain only their own
segment points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .hypergraph import Hypergraph3

RESOLUTION = 10**6
_VECTOR_COORD_LIMIT = 1 << 30  # int64-safe bound for vectorized cross products


def quantize(value: float) -> int:
    return round(value * RESOLUTION)


def quantize_embedding(coords: dict) -> dict[int, tuple[int, int]]:
    """Snap float coordinates onto the integer grid used by the predicates."""
    return {int(v): (quantize(x), quantize(y)) for v, (x, y) in coords.items()}


def random_embedding(vertices, seed: int) -> dict[int, tuple[int, int]]:
    """Seeded uniform points in the unit square, quantized."""
    rng = np.random.default_rng(seed)
    out = {}
    for v in vertices:
        x, y = rng.random(), rng.random()
        out[int(v)] = (quantize(x), quantize(y))
    return out


def load_embedding_csv(path) -> dict[int, tuple[int, int]]:
    """Rows "vertex,x,y" with an optional header; floats are quantized."""
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.lower().startswith("vertex"):
                continue
            v, x, y = line.split(",")
            out[int(v)] = (quantize(float(x)), quantize(float(y)))
    return out


def orient(a, b, c) -> int:
    """Sign of the signed area of the triangle (a, b, c); exact on ints."""
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (det > 0) - (det < 0)


def point_in_triangle(p, a, b, c) -> str:
    """Exact containment test returning "inside", "boundary" or "outside"."""
    if orient(a, b, c) == 0:
        # Degenerate triangle: containment means lying on the covering segment.
        pts = [a, b, c]
        if all(q == a for q in pts):
            return "boundary" if tuple(p) == tuple(a) else "outside"
        ref = next(q for q in (b, c) if q != a)
        if orient(a, ref, p) != 0:
            return "outside"
        xs = [q[0] for q in pts]
        ys = [q[1] for q in pts]
        on = min(xs) <= p[0] <= max(xs) and min(ys) <= p[1] <= max(ys)
        return "boundary" if on else "outside"
    o1 = orient(a, b, p)
    o2 = orient(b, c, p)
    o3 = orient(c, a, p)
    if (o1 < 0 or o2 < 0 or o3 < 0) and (o1 > 0 or o2 > 0 or o3 > 0):
        return "outside"
    if o1 == 0 or o2 == 0 or o3 == 0:
        return "boundary"
    return "inside"


@dataclass(frozen=True)
class GridStrategy:
    k: int


@dataclass(frozen=True)
class RandomStrategy:
    seed: int
    k: int


@dataclass(frozen=True)
class CentroidStrategy:
    """Centroids of all triples; capped because the list scales with |T|."""

    max_triples: int = 100_000


@dataclass(frozen=True)
class OverlapReport:
    best_point: tuple[int, int]
    fraction: Fraction
    covered: int
    total: int
    candidates_examined: int

    def to_json_dict(self) -> dict:
        return {
            "best_point": list(self.best_point),
            "fraction_num": self.fraction.numerator,
            "fraction_den": self.fraction.denominator,
            "covered": self.covered,
            "total": self.total,
            "candidates_examined": self.candidates_examined,
        }


def complete_triples(num_points: int) -> list[tuple[int, int, int]]:
    return list(combinations(range(num_points), 3))


def _candidates(strategy, embedding, triples) -> list[tuple[int, int]]:
    xs = [p[0] for p in embedding.values()]
    ys = [p[1] for p in embedding.values()]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    if isinstance(strategy, GridStrategy):
        if strategy.k < 1:
            raise ValueError("grid needs k >= 1")
        k = strategy.k
        if k == 1:
            return [((lo_x + hi_x) // 2, (lo_y + hi_y) // 2)]
        return [(lo_x + round(i * (hi_x - lo_x) / (k - 1)),
                 lo_y + round(j * (hi_y - lo_y) / (k - 1)))
                for i in range(k) for j in range(k)]
    if isinstance(strategy, RandomStrategy):
        if strategy.k < 1:
            raise ValueError("random strategy needs k >= 1")
        rng = np.random.default_rng(strategy.seed)
        return [(int(rng.integers(lo_x, hi_x + 1)), int(rng.integers(lo_y, hi_y + 1)))
                for _ in range(strategy.k)]
    if isinstance(strategy, CentroidStrategy):
        if len(triples) > strategy.max_triples:
            raise ValueError(f"centroid strategy capped at {strategy.max_triples} triples")
        out = []
        for (u, v, w) in triples:
            ax, ay = embedding[u]
            bx, by = embedding[v]
            cx, cy = embedding[w]
            out.append((round((ax + bx + cx) / 3), round((ay + by + cy) / 3)))
        return out
    raise ValueError(f"unknown strategy {strategy!r}")


def _covered_at(point, corners) -> int:
    """Number of triangles covering the point; exact via int64 sign tests.

    corners is a (total, 3, 2) int64 array. Degenerate triangles are
    deferred to the scalar predicate.
    """
    px, py = point
    ax, ay = corners[:, 0, 0], corners[:, 0, 1]
    bx, by = corners[:, 1, 0], corners[:, 1, 1]
    cx, cy = corners[:, 2, 0], corners[:, 2, 1]
    o1 = np.sign((bx - ax) * (py - ay) - (by - ay) * (px - ax))
    o2 = np.sign((cx - bx) * (py - by) - (cy - by) * (px - bx))
    o3 = np.sign((ax - cx) * (py - cy) - (ay - cy) * (px - cx))
    area = np.sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
    neg = (o1 < 0) | (o2 < 0) | (o3 < 0)
    pos = (o1 > 0) | (o2 > 0) | (o3 > 0)
    covered = ~(neg & pos) & (area != 0)
    count = int(covered.sum())
    for i in np.nonzero(area == 0)[0].tolist():
        a, b, c = (tuple(corners[i, 0]), tuple(corners[i, 1]), tuple(corners[i, 2]))
        if point_in_triangle((px, py), a, b, c) != "outside":
            count += 1
    return count


def overlap_estimate(triples, embedding: dict, strategy) -> OverlapReport:
    """Best covered-triple fraction over the strategy's candidate points.

    A lower bound on the true overlap constant by construction; monotone in
    the candidate set. Ties between equally good candidates break toward
    the lexicographically smallest point.
    """
    triple_list = [tuple(tr) for tr in triples]
    if not triple_list:
        raise ValueError("empty triple set")
    corners = np.array([[embedding[u], embedding[v], embedding[w]] for u, v, w in triple_list],
                       dtype=np.int64)
    if np.abs(corners).max() > _VECTOR_COORD_LIMIT:
        raise ValueError("coordinates too large for exact vectorized predicates")
    candidates = sorted(set(_candidates(strategy, embedding, triple_list)))
    best_point = None
    best_count = -1
    for point in candidates:
        count = _covered_at(point, corners)
        if count > best_count:
            best_point = point
            best_count = count
    return OverlapReport(
        best_point=best_point,
        fraction=Fraction(best_count, len(triple_list)),
        covered=best_count,
        total=len(triple_list),
        candidates_examined=len(candidates),
    )


def overlap_estimate_hypergraph(h: Hypergraph3, embedding: dict, strategy) -> OverlapReport:
    if not h.materialized:
        raise ValueError("overlap estimation needs materialized triples")
    return overlap_estimate(map(tuple, h.triples.tolist()), embedding, strategy)


def report_json(report: OverlapReport) -> str:
    return json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n"
