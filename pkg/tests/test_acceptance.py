"""Acceptance suite: one criterion per test, one printed status line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Every tolerance is pinned here; the asymptotic statements the theory
leaves unquantified are reported by the library, never asserted.
"""

import json
import time
from collections import Counter
from fractions import Fraction
from math import sqrt

import numpy as np
import pytest

from conftest import (
    oracle_count_crossing,
    oracle_neighborhood_E,
    oracle_neighborhood_T,
    oracle_neighborhood_V,
    random_sidon_elements,
)
from sidonx.cayley import CayleyGraph, mixing_lemma_check, spectrum, verify_square_relation
from sidonx.cli import main as cli_main
from sidonx.hypergraph import build, count_crossing_triples, expansion_bruteforce, expansion_certificate
from sidonx.overlap import GridStrategy, complete_triples, overlap_estimate, random_embedding
from sidonx.sidon import SidonSet, gold_sidon, random_sidon
from sidonx.walks import AuxGraph, EdgeDistribution, aux_spectral_bounds, mixing_profile

FLAGSHIP = SidonSet(2, (1, 2, 3))
CUBE = SidonSet(3, (1, 2, 4))


def _criterion(num, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {num:2d}] {status}: {detail}")
    assert ok, f"criterion {num} failed: {detail}"


def test_criterion_01_flagship_exactness():
    started = time.monotonic()
    spec = spectrum(CayleyGraph(2, FLAGSHIP.elements))
    ok = sorted(spec.values.tolist()) == [-1, -1, -1, 3]
    ok &= spec.epsilon == Fraction(2, 3)
    h = build(FLAGSHIP)
    ok &= h.num_triples == 4 and h.num_edges == 6
    he = expansion_bruteforce(h, "E").ratio
    ht = expansion_bruteforce(h, "T").ratio
    ok &= he == 1 and ht == 1
    cert = expansion_certificate(h)
    ok &= cert.edge_bound == Fraction(1, 288) and cert.triple_bound == Fraction(1, 48)
    ok &= cert.edge_bound <= he and cert.triple_bound <= ht
    g = AuxGraph(h)
    bounds = g.spectral_bounds()
    # octahedron: 6 vertices, 4-regular, spectrum {4, 0^3, (-2)^2}
    ok &= g.num_vertices == 6 and g.measured_degree == 4
    evals = sorted(round(v) for v in np.linalg.eigvalsh(g.adjacency_matrix()))
    ok &= evals == [-2, -2, 0, 0, 0, 4]
    ok &= abs(bounds.lambda_aux / g.measured_degree - 0.5) < 1e-12
    profile = mixing_profile(g, EdgeDistribution.point_mass(6, 0), 40)
    ok &= all(sq <= Fraction(1, 4) ** i for i, sq in enumerate(profile.squared_distances))
    elapsed = time.monotonic() - started
    ok &= elapsed < 1.0
    _criterion(1, ok, f"flagship spectrum/expansion/octahedron/envelope exact ({elapsed:.2f}s)")


def test_criterion_02_cube_counterexample():
    started = time.monotonic()
    spec = spectrum(CayleyGraph(3, CUBE.elements))
    ok = spec.epsilon == 0
    skel = spectrum(CayleyGraph(3, (3, 5, 6)))
    ok &= skel.lam == skel.d  # disconnected skeleton
    h = build(CUBE)
    ok &= expansion_bruteforce(h, "E").ratio == 0
    ok &= expansion_bruteforce(h, "T").ratio == 0
    g = AuxGraph(h)
    profile = mixing_profile(g, EdgeDistribution.point_mass(12, 0), 50)
    gap = profile.squared_distances[50] - Fraction(1, 12)
    ok &= 0 <= gap <= Fraction(1, 4**49)
    ok &= abs(profile.distances[50] - 1 / (2 * sqrt(3))) < 1e-12
    elapsed = time.monotonic() - started
    ok &= elapsed < 1.0
    _criterion(2, ok, f"cube: eps=0, h_E=h_T=0, walk limit exactly 1/(2*sqrt(3)) ({elapsed:.2f}s)")


def test_criterion_03_square_relation_exact():
    started = time.monotonic()
    ok = all(verify_square_relation(gold_sidon(m)) is None for m in (2, 3, 4, 5, 6))
    checked = 0
    for t in range(4, 15):
        for i in range(20):
            s = random_sidon(t, t, seed=1000 * t + i)
            ok &= verify_square_relation(s) is None
            checked += 1
    elapsed = time.monotonic() - started
    ok &= checked == 220 and elapsed < 10.0
    _criterion(3, ok, f"spectrum squaring exact on gold(2..6) and {checked} random sets ({elapsed:.2f}s)")


def test_criterion_04_degree_regularity():
    # Builds assert the degree invariants internally; exercise the suite's
    # materialized instances plus the stated gold(3) numbers.
    ok = True
    for s in (FLAGSHIP, CUBE, SidonSet(3, (1, 2, 3, 4)), gold_sidon(2), gold_sidon(3)):
        h = build(s)
        ok &= h.materialized
    g3 = build(gold_sidon(3))
    ok &= (g3.n, g3.d, g3.num_edges, g3.num_triples) == (64, 7, 672, 2240)
    pair_counts = Counter()
    for tr in map(tuple, g3.triples.tolist()):
        pair_counts[(tr[0], tr[1])] += 1
        pair_counts[(tr[0], tr[2])] += 1
        pair_counts[(tr[1], tr[2])] += 1
    ok &= set(pair_counts.values()) == {2 * 7 - 4}
    vdeg = np.bincount(g3.triples.reshape(-1), minlength=64)
    ok &= bool(np.all(vdeg == 105))  # 3 * C(7,3)
    _criterion(4, ok, "pair degree 2d-4 and vertex degree 3*C(d,3) exact, incl. gold(3)")


def test_criterion_05_mixing_envelope_gold3():
    started = time.monotonic()
    s = gold_sidon(3)
    ok = spectrum(CayleyGraph(s.t, s.elements)).epsilon > 0  # WHT oracle at build time
    h = build(s)
    g = AuxGraph(h)
    bounds = aux_spectral_bounds(g, method="dense")
    ok &= g.num_vertices == 672
    ratio = bounds.lambda_aux / g.measured_degree
    worst = -1.0
    for k in range(10):
        p0 = EdgeDistribution.point_mass(672, (k * 67) % 672, exact=False)
        profile = mixing_profile(g, p0, 50)
        worst = max(worst, profile.max_excess)
        ok &= profile.max_excess <= 1e-9
    elapsed = time.monotonic() - started
    ok &= elapsed < 30.0
    _criterion(5, ok, f"gold(3) envelope (lam/D={ratio:.4f}) holds for 10 starts, 50 steps, "
                      f"max excess {worst:.2e} ({elapsed:.1f}s)")


def test_criterion_06_count_window_gold6():
    started = time.monotonic()
    s = gold_sidon(6)
    h = build(s, materialize=False)
    count_all, incidence_all = True, True
    max_rel = 0.0
    for seed in range(10):
        perm = np.random.default_rng(seed).permutation(h.n)
        third = h.n // 3
        rep = count_crossing_triples(h, perm[:third].tolist(),
                                     perm[third:2 * third].tolist(),
                                     perm[2 * third:].tolist())
        count_all &= rep.count_within
        incidence_all &= rep.incidence_within
        max_rel = max(max_rel, abs(rep.count - rep.main_term) / rep.window)
    ok = count_all or incidence_all
    elapsed = time.monotonic() - started
    ok &= elapsed < 60.0
    _criterion(6, ok, f"gold(6) count window: unordered all-in={count_all}, "
                      f"incidence all-in={incidence_all}, max |dev|/window={max_rel:.3f} "
                      f"({elapsed:.1f}s)")


def test_criterion_07_oracle_equivalence():
    rng = np.random.default_rng(77)
    done = 0
    ok = True
    while done < 50:
        t = int(rng.integers(2, 7))
        d = int(rng.integers(3, 6))
        els = random_sidon_elements(t, d, rng)
        if els is None:
            continue
        done += 1
        h = build(SidonSet(t, tuple(els)))
        triples = {tuple(tr) for tr in h.triples.tolist()}
        n = h.n
        perm = rng.permutation(n)
        cuts = sorted(rng.integers(0, n + 1, size=2))
        a, b, c = perm[:cuts[0]].tolist(), perm[cuts[0]:cuts[1]].tolist(), perm[cuts[1]:].tolist()
        rep = count_crossing_triples(h, a, b, c)
        ok &= rep.count == oracle_count_crossing(triples, a, b, c)
        edges = [tuple(e) for e in h.edges.tolist()]
        k = int(rng.integers(1, min(6, len(edges)) + 1))
        F = [edges[i] for i in rng.choice(len(edges), size=k, replace=False)]
        from sidonx.hypergraph import neighborhood_E, neighborhood_T, neighborhood_V
        ok &= neighborhood_E(h, F) == oracle_neighborhood_E(triples, F)
        ok &= neighborhood_T(h, F) == oracle_neighborhood_T(triples, F)
        ok &= neighborhood_V(h, F) == oracle_neighborhood_V(triples, F)
    _criterion(7, ok, "count and neighborhoods match full-enumeration oracles on 50 instances")


def test_criterion_08_mixing_lemma_slack():
    rng = np.random.default_rng(88)
    ok = True
    for graph_idx in range(10):
        t = int(rng.integers(3, 7))
        k = int(rng.integers(2, min(10, 1 << t)))
        gens = tuple(sorted(rng.choice(np.arange(1, 1 << t), size=k, replace=False).tolist()))
        g = CayleyGraph(t, gens)
        for _ in range(1000):
            v = {int(x): int(rng.integers(1, 6))
                 for x in rng.choice(1 << t, size=int(rng.integers(1, 9)), replace=False)}
            w = {int(x): int(rng.integers(1, 6))
                 for x in rng.choice(1 << t, size=int(rng.integers(1, 9)), replace=False)}
            ok &= mixing_lemma_check(g, v, w).ok
    _criterion(8, ok, "expander mixing lemma slack >= 0 on 10 graphs x 1000 multiset pairs, exact")


def test_criterion_09_overlap_floor():
    started = time.monotonic()
    emb = random_embedding(range(30), seed=5)
    rep = overlap_estimate(complete_triples(30), emb, GridStrategy(64))
    elapsed = time.monotonic() - started
    ok = rep.fraction >= Fraction(1, 5) and elapsed < 20.0
    _criterion(9, ok, f"complete hypergraph on 30 points: fraction {float(rep.fraction):.3f} "
                      f">= 0.2 ({elapsed:.1f}s)")


def test_criterion_10_determinism(tmp_path, capsys):
    jobs = {
        "set.json": ["generate", "--t", "6", "--random-d", "6", "--seed", "13"],
        "spec.json": ["spectrum", "--gold-m", "3"],
        "summary.json": ["build", "--gold-m", "2"],
        "mixing.csv": ["walk", "--t", "2", "--random-d", "3", "--seed", "7", "--steps", "15"],
        "hist1.json": ["walk", "--gold-m", "2", "--monte-carlo", "--trials", "600",
                       "--walk-seed", "4", "--workers", "1"],
        "count.json": ["count", "--gold-m", "3", "--split-seed", "2"],
        "expansion.json": ["expansion", "--t", "2", "--random-d", "3", "--seed", "7",
                           "--kinds", "ETV"],
        "overlap.json": ["overlap", "--t", "2", "--random-d", "3", "--seed", "7",
                         "--grid", "32"],
    }

    def run_all(tag):
        blobs = {}
        for name, argv in jobs.items():
            path = tmp_path / f"{tag}-{name}"
            assert cli_main(argv + ["--output", str(path)]) == 0
            blobs[name] = path.read_bytes()
        capsys.readouterr()
        return blobs

    first = run_all("a")
    second = run_all("b")
    ok = first == second
    # worker count must not change the histogram bytes
    p1 = tmp_path / "w1.json"
    p3 = tmp_path / "w3.json"
    assert cli_main(["walk", "--gold-m", "2", "--monte-carlo", "--trials", "600",
                     "--walk-seed", "4", "--workers", "1", "--output", str(p1)]) == 0
    assert cli_main(["walk", "--gold-m", "2", "--monte-carlo", "--trials", "600",
                     "--walk-seed", "4", "--workers", "3", "--output", str(p3)]) == 0
    capsys.readouterr()
    ok &= p1.read_bytes() == p3.read_bytes()
    with capsys.disabled():
        _criterion(10, ok, "byte-identical outputs across reruns and worker counts")
