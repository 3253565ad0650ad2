"""Shared brute-force oracles, independent of the library's fast paths."""

from itertools import combinations

import numpy as np


def oracle_triples(t, elements):
    """All triples by the clique definition: {x+s1, x+s2, x+s3} over all x."""
    out = set()
    for x in range(1 << t):
        for s1, s2, s3 in combinations(elements, 3):
            out.add(tuple(sorted((x ^ s1, x ^ s2, x ^ s3))))
    return out


def oracle_skeleton(t, elements):
    """All skeleton edges: pairs at pairwise-sum difference."""
    sums = {a ^ b for a, b in combinations(elements, 2)}
    out = set()
    for u in range(1 << t):
        for sp in sums:
            v = u ^ sp
            if u < v:
                out.add((u, v))
    return out


def oracle_neighborhood_E(triples, F):
    fset = {tuple(sorted(e)) for e in F}
    out = set()
    for tr in triples:
        edges = [tuple(sorted(p)) for p in combinations(tr, 2)]
        for f in fset:
            if f in edges:
                out.update(e for e in edges if e != f)
    return out - fset


def oracle_neighborhood_T(triples, F):
    fset = {tuple(sorted(e)) for e in F}
    out = set()
    for tr in triples:
        edges = {tuple(sorted(p)) for p in combinations(tr, 2)}
        hit = len(edges & fset)
        if 0 < hit < 3:
            out.add(tr)
    return out


def oracle_neighborhood_V(triples, F):
    fset = {tuple(sorted(e)) for e in F}
    support = {v for e in fset for v in e}
    out = set()
    for tr in triples:
        edges = {tuple(sorted(p)) for p in combinations(tr, 2)}
        if edges & fset:
            out.update(tr)
    return out - support


def oracle_count_crossing(triples, A, B, C):
    a, b, c = set(A), set(B), set(C)
    count = 0
    for tr in triples:
        vs = set(tr)
        if len(vs & a) == 1 and len(vs & b) == 1 and len(vs & c) == 1:
            count += 1
    return count


def oracle_spectrum(t, generators):
    """Sorted eigenvalues of the dense adjacency matrix, rounded to ints."""
    n = 1 << t
    a = np.zeros((n, n))
    for x in range(n):
        for g in generators:
            a[x, x ^ g] = 1
    return sorted(int(round(v)) for v in np.linalg.eigvalsh(a))


def oracle_skeleton_triangles(t, elements):
    """Triangle enumeration of Cay(Z_2^t, S') by common neighbors."""
    sums = sorted({a ^ b for a, b in combinations(elements, 2)})
    n = 1 << t
    out = set()
    for u in range(n):
        for s1 in sums:
            v = u ^ s1
            if v <= u:
                continue
            for s2 in sums:
                w = v ^ s2
                if w <= v:
                    continue
                if (u ^ w) in sums:
                    out.add((u, v, w))
    return out


def random_sidon_elements(t, d, rng):
    """Plain rejection sampler used only to produce oracle test instances."""
    chosen, sums = [], set()
    for _ in range(50000):
        c = int(rng.integers(1, 1 << t))
        if c in chosen:
            continue
        news = [c ^ s for s in chosen]
        if any(x in sums for x in news):
            continue
        chosen.append(c)
        sums.update(news)
        if len(chosen) == d:
            return chosen
    return None
