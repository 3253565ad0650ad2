"""The 3-uniform hypergraph H(Z_2^t, S) derived from a Sidon set S.

Vertices are Z_2^t; for every center x the clique C_x = {x + s : s in S}
contributes the C(d,3) triples {x+s1, x+s2, x+s3}. The skeleton is the
Cayley graph on the pairwise sums S'. Under the Sidon property every
skeleton edge lies in exactly two cliques and every triple in exactly one,
which drives both the neighborhood machinery and the counting arguments.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, sqrt

import numpy as np

from .cayley import CayleyGraph, Spectrum, spectrum
from .errors import SizeLimitError, VerificationError
from .sidon import SidonSet, pair_sums, verify_sidon

MATERIALIZE_LIMIT = 10**9   # cap on n * C(d,3)
BRUTEFORCE_LIMIT = 24       # cap on |E| for exact expansion ratios


def canonical_edge(e) -> tuple[int, int]:
    u, v = e
    if u == v:
        raise ValueError(f"degenerate edge ({u},{v})")
    return (u, v) if u < v else (v, u)


def canonical_triple(tr) -> tuple[int, int, int]:
    a, b, c = sorted(tr)
    if a == b or b == c:
        raise ValueError(f"degenerate triple {tr!r}")
    return (a, b, c)


class Hypergraph3:
    """H(Z_2^t, S) with optional materialized skeleton and triple list.

    Materialized builds enumerate E and T in ascending lexicographic order
    and assert every degree invariant. Implicit builds answer membership
    and neighbor queries in O(d) from (t, S) alone, which carries counting
    and walking up to t around 24.
    """

    def __init__(self, sidon: SidonSet, materialize: bool = True):
        defect = verify_sidon(sidon.t, sidon.elements)
        if defect is not None:
            raise ValueError(f"not a Sidon set: {defect}")
        if sidon.d < 3:
            raise ValueError("need d >= 3 to form any triple")
        self.sidon = sidon
        self.t = sidon.t
        self.n = 1 << sidon.t
        self.d = sidon.d
        self.generators = tuple(sorted(sidon.elements))
        sums = pair_sums(sidon)
        self.s_prime = tuple(sorted(sums))
        self._s_prime_set = set(sums)
        # Each skeleton sum has a unique generating pair {s1, s2}, s1 < s2.
        self.pair_for_sum = {}
        for a, b in combinations(sidon.elements, 2):
            self.pair_for_sum[a ^ b] = (a, b) if a < b else (b, a)
        self.num_edges = self.n * comb(self.d, 2) // 2
        self.num_triples = self.n * comb(self.d, 3)
        self.edges = None
        self.triples = None
        self.triple_centers = None
        self.edge_index = None
        if materialize:
            if self.num_triples > MATERIALIZE_LIMIT:
                raise SizeLimitError(
                    f"n*C(d,3) = {self.num_triples} exceeds the materialization cap {MATERIALIZE_LIMIT}")
            self._materialize()

    @property
    def materialized(self) -> bool:
        return self.edges is not None

    def _materialize(self):
        n = self.n
        idx = np.arange(n, dtype=np.int64)
        rows = []
        centers = []
        for s1, s2, s3 in combinations(self.generators, 3):
            block = np.sort(np.stack([idx ^ s1, idx ^ s2, idx ^ s3], axis=1), axis=1)
            rows.append(block)
            centers.append(idx)
        tri = np.concatenate(rows, axis=0)
        cen = np.concatenate(centers, axis=0)
        order = np.lexsort((tri[:, 2], tri[:, 1], tri[:, 0]))
        self.triples = tri[order]
        self.triple_centers = cen[order]
        edges = []
        for u in range(n):
            for v in sorted(u ^ sp for sp in self.s_prime):
                if v > u:
                    edges.append((u, v))
        self.edges = np.array(edges, dtype=np.int64)
        self.edge_index = {e: i for i, e in enumerate(edges)}
        self._assert_invariants()

    def _assert_invariants(self):
        if len(self.edges) != self.num_edges:
            raise VerificationError(f"|E| = {len(self.edges)}, expected {self.num_edges}")
        if len(self.triples) != self.num_triples:
            raise VerificationError(f"|T| = {len(self.triples)}, expected {self.num_triples}")
        keys = (self.triples[:, 0] * self.n + self.triples[:, 1]) * self.n + self.triples[:, 2]
        if np.unique(keys).size != self.num_triples:
            raise VerificationError("duplicate triples; Sidon invariant broken")
        vdeg = np.bincount(self.triples.reshape(-1), minlength=self.n)
        if not np.all(vdeg == 3 * comb(self.d, 3)):
            raise VerificationError("vertex triple-degree is not 3*C(d,3) everywhere")
        pair_keys = np.concatenate([
            self.triples[:, 0] * self.n + self.triples[:, 1],
            self.triples[:, 0] * self.n + self.triples[:, 2],
            self.triples[:, 1] * self.n + self.triples[:, 2],
        ])
        uniq, counts = np.unique(pair_keys, return_counts=True)
        if not np.all(counts == 2 * self.d - 4):
            raise VerificationError("pair degree is not 2d-4 on every skeleton edge")
        edge_keys = self.edges[:, 0] * self.n + self.edges[:, 1]
        if not np.array_equal(np.sort(edge_keys), uniq):
            raise VerificationError("triple pair support differs from the skeleton edge set")

    def is_edge(self, u: int, v: int) -> bool:
        return u != v and (u ^ v) in self._s_prime_set

    def is_triple(self, tr) -> bool:
        a, b, c = canonical_triple(tr)
        pair = self.pair_for_sum.get(a ^ b)
        if pair is None:
            return False
        gens = set(self.generators)
        for s in pair:
            x = a ^ s
            if (x ^ b) in gens and (x ^ c) in gens:
                return True
        return False

    def skeleton_graph(self) -> CayleyGraph:
        return CayleyGraph(self.t, self.s_prime)

    def base_graph(self) -> CayleyGraph:
        return CayleyGraph(self.t, self.generators)

    def base_spectrum(self) -> Spectrum:
        if not hasattr(self, "_base_spectrum"):
            self._base_spectrum = spectrum(self.base_graph())
        return self._base_spectrum

    def triples_containing_edge(self, e) -> list[tuple[int, int, int]]:
        """The 2d-4 triples through a skeleton edge, in deterministic order.

        Enumerated center-by-center (ascending), then by the sorted
        generator completing each triple.
        """
        u, v = canonical_edge(e)
        c1, c2 = edge_cliques(self, (u, v))
        s1, s2 = self.pair_for_sum[u ^ v]
        out = []
        for x in sorted((c1, c2)):
            for s in self.generators:
                if s == s1 or s == s2:
                    continue
                out.append(canonical_triple((u, v, x ^ s)))
        return out


def build(S: SidonSet, materialize: bool = True) -> Hypergraph3:
    return Hypergraph3(S, materialize=materialize)


def edge_cliques(h: Hypergraph3, e) -> tuple[int, int]:
    """The exactly two clique centers whose clique contains the edge e."""
    u, v = canonical_edge(e)
    pair = h.pair_for_sum.get(u ^ v)
    if pair is None:
        raise ValueError(f"({u},{v}) is not a skeleton edge")
    s1, s2 = pair
    c1, c2 = u ^ s1, u ^ s2
    if c1 == c2:
        raise VerificationError("edge centers collapsed; Sidon invariant broken")
    return (c1, c2) if c1 < c2 else (c2, c1)


def _check_edge_subset(h: Hypergraph3, F) -> list[tuple[int, int]]:
    out = []
    for e in F:
        ce = canonical_edge(e)
        if not h.is_edge(*ce):
            raise ValueError(f"{ce} is not a skeleton edge")
        out.append(ce)
    return out


def neighborhood_E(h: Hypergraph3, F) -> set[tuple[int, int]]:
    """Edges outside F completing a triple with some edge of F."""
    fset = set(_check_edge_subset(h, F))
    out = set()
    for f in fset:
        u, v = f
        for (a, b, c) in h.triples_containing_edge(f):
            w = a ^ b ^ c ^ u ^ v
            out.add(canonical_edge((u, w)))
            out.add(canonical_edge((v, w)))
    return out - fset


def neighborhood_T(h: Hypergraph3, F) -> set[tuple[int, int, int]]:
    """Triples containing an edge of F but not lying entirely inside F."""
    fset = set(_check_edge_subset(h, F))
    candidates = set()
    for f in fset:
        candidates.update(h.triples_containing_edge(f))
    out = set()
    for (a, b, c) in candidates:
        edges_in = ((a, b) in fset) + ((a, c) in fset) + ((b, c) in fset)
        if 0 < edges_in < 3:
            out.add((a, b, c))
    return out


def neighborhood_V(h: Hypergraph3, F) -> set[int]:
    """Vertices outside V(F) completing a triple with some edge of F."""
    fset = set(_check_edge_subset(h, F))
    support = set()
    for u, v in fset:
        support.add(u)
        support.add(v)
    out = set()
    for f in fset:
        u, v = f
        for (a, b, c) in h.triples_containing_edge(f):
            out.add(a ^ b ^ c ^ u ^ v)
    return out - support


@dataclass(frozen=True)
class ExpansionResult:
    kind: str
    ratio: Fraction
    witness: tuple[tuple[int, int], ...]


def _popcount(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr.astype(np.uint64)).astype(np.int64)


def _union_dp(masks: list[int], m: int) -> np.ndarray:
    """out[F] = OR of masks[b] over the bits b set in F, for all F < 2^m."""
    out = np.zeros(1 << m, dtype=np.int64)
    for b in range(m):
        lo = 1 << b
        out[lo:2 * lo] = out[:lo] | np.int64(masks[b])
    return out


def expansion_bruteforce(h: Hypergraph3, kind: str) -> ExpansionResult:
    """Exact h_E, h_T or h_V by enumeration of all qualifying edge subsets F.

    Kinds E and T minimize |N(F)|/|F| over nonempty F with |F| <= |E|/2;
    kind V follows the vertex-expansion definition and minimizes
    |N_V(F)|/|V(F)| over F with |V(F)| <= n/2. Ties break toward the
    smallest witness: fewest edges, then lowest bitmask in skeleton-edge
    order.
    """
    if kind not in ("E", "T", "V"):
        raise ValueError(f"kind must be E, T or V, got {kind!r}")
    if not h.materialized:
        raise SizeLimitError("expansion_bruteforce needs a materialized build")
    m = h.num_edges
    if m > BRUTEFORCE_LIMIT:
        raise SizeLimitError(f"|E| = {m} exceeds the brute-force cap {BRUTEFORCE_LIMIT}")
    edge_list = [tuple(e) for e in h.edges.tolist()]
    total = 1 << m
    sizes = _popcount(np.arange(total, dtype=np.int64))

    if kind in ("E", "V"):
        # Per-edge masks feeding a union DP over all subsets.
        if kind == "E":
            nbr_masks = []
            for e in edge_list:
                mask = 0
                for f in neighborhood_E(h, [e]):
                    mask |= 1 << h.edge_index[f]
                nbr_masks.append(mask)
            union = _union_dp(nbr_masks, m)
            fmask = np.arange(total, dtype=np.int64)
            counts = _popcount(union & ~fmask)
            denom = sizes
            qualifying = sizes <= m // 2
        else:
            vmasks = [(1 << u) | (1 << v) for u, v in edge_list]
            wmasks = []
            for e in edge_list:
                u, v = e
                mask = 0
                for (a, b, c) in h.triples_containing_edge(e):
                    mask |= 1 << (a ^ b ^ c ^ u ^ v)
                wmasks.append(mask)
            support = _union_dp(vmasks, m)
            reach = _union_dp(wmasks, m)
            counts = _popcount(reach & ~support)
            denom = _popcount(support)
            qualifying = denom <= h.n // 2
    else:
        tri_masks = Counter()
        for (a, b, c) in map(tuple, h.triples.tolist()):
            mask = (1 << h.edge_index[(a, b)]) | (1 << h.edge_index[(a, c)]) | (1 << h.edge_index[(b, c)])
            tri_masks[mask] += 1
        inside = np.zeros(total, dtype=np.int64)
        for mask, mult in tri_masks.items():
            inside[mask] += mult
        # Zeta transform: inside[F] = number of triples with all edges in F.
        for b in range(m):
            lo = 1 << b
            view = inside.reshape(-1, 2 * lo)
            view[:, lo:] += view[:, :lo]
        fmask = np.arange(total, dtype=np.int64)
        full = total - 1
        counts = h.num_triples - inside[full ^ fmask] - inside
        denom = sizes
        qualifying = sizes <= m // 2

    qualifying = qualifying & (np.arange(total) > 0) & (denom > 0)
    ratio = np.where(qualifying, counts / np.maximum(denom, 1), np.inf)
    best_val = ratio.min()
    if not np.isfinite(best_val):
        raise VerificationError("no qualifying subset; instance too degenerate")
    near = np.nonzero(ratio <= best_val + 1e-9)[0]
    best = None
    for f in near.tolist():
        cand = (Fraction(int(counts[f]), int(denom[f])), int(sizes[f]), f)
        if best is None or cand < best:
            best = cand
    witness = tuple(edge_list[i] for i in range(m) if best[2] >> i & 1)
    return ExpansionResult(kind, best[0], witness)


@dataclass(frozen=True)
class ExpansionCertificate:
    """The spectral lower bounds epsilon^2/128 on h_E and epsilon^2 d/64 on h_T."""

    epsilon: Fraction
    edge_bound: Fraction
    triple_bound: Fraction


def expansion_certificate(h: Hypergraph3) -> ExpansionCertificate:
    eps = h.base_spectrum().epsilon
    return ExpansionCertificate(eps, eps * eps / 128, eps * eps * h.d / 64)


def _indicator(n: int, vertices) -> np.ndarray:
    out = np.zeros(n, dtype=np.int64)
    for v in vertices:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range")
        out[v] = 1
    return out


def _shift_counts(h: Hypergraph3, indicator: np.ndarray) -> np.ndarray:
    """counts[x] = #{s in S : x + s in the given set}."""
    idx = np.arange(h.n)
    out = np.zeros(h.n, dtype=np.int64)
    for s in h.generators:
        out += indicator[idx ^ s]
    return out


@dataclass(frozen=True)
class TripleCountReport:
    """Crossing-triple statistics for disjoint vertex classes A, B, C.

    count is the number of unordered triples with one vertex per class;
    incidence_count is the proof-style center-incidence tally e(W(A,B), C).
    On every instance exercised so far the two coincide exactly, but they
    are computed by independent routes and reported side by side. The main
    term and window come from the spectral count estimate; the window check
    is report-only because its counting convention is not pinned down.
    """

    count: int
    incidence_count: int
    main_term: float
    window: float
    count_within: bool
    incidence_within: bool
    lam: int
    mu: Fraction
    sizes: tuple[int, int, int]


def count_crossing_triples(h: Hypergraph3, A, B, C) -> TripleCountReport:
    """Count triples with exactly one vertex in each of the disjoint sets A, B, C.

    Works implicitly: for each center x the number of qualifying generator
    assignments is the product of per-class shift counts, and disjointness
    makes each unordered triple contribute via exactly one assignment in its
    unique clique.
    """
    a_set, b_set, c_set = set(A), set(B), set(C)
    if a_set & b_set or a_set & c_set or b_set & c_set:
        raise ValueError("A, B, C must be pairwise disjoint")
    ind_a = _indicator(h.n, a_set)
    ind_b = _indicator(h.n, b_set)
    ind_c = _indicator(h.n, c_set)
    na = _shift_counts(h, ind_a)
    nb = _shift_counts(h, ind_b)
    nc = _shift_counts(h, ind_c)
    count = int((na * nb * nc).sum())

    centers, num_cross = _center_counts(h, ind_a, ind_b)
    incidence = int((centers * nc).sum())

    spec = h.base_spectrum()
    lam, mu, d, n = spec.lam, spec.mu, h.d, h.n
    alpha, beta, gamma = len(a_set) / n, len(b_set) / n, len(c_set) / n
    main = (d**3 - d**2) * alpha * beta * gamma * n
    window = (2 * float(mu) * d * sqrt(alpha * beta) * gamma * n
              + lam * d * d * sqrt(alpha * beta * gamma) * n
              + lam * sqrt(float(mu)) * d * (alpha * beta) ** 0.25 * sqrt(gamma) * n)
    return TripleCountReport(
        count=count,
        incidence_count=incidence,
        main_term=main,
        window=window,
        count_within=abs(count - main) <= window,
        incidence_within=abs(incidence - main) <= window,
        lam=lam,
        mu=mu,
        sizes=(len(a_set), len(b_set), len(c_set)),
    )


def _center_counts(h: Hypergraph3, ind_a: np.ndarray, ind_b: np.ndarray):
    """Multiplicity vector of the center multiset W(A, B) plus |E(A, B)|.

    Each skeleton edge with one endpoint in A and one in B contributes both
    of its clique centers.
    """
    idx = np.arange(h.n)
    counts = np.zeros(h.n, dtype=np.int64)
    num_edges = 0
    for sp, (s1, s2) in h.pair_for_sum.items():
        cross = ind_a & ind_b[idx ^ sp]
        num_edges += int(cross.sum())
        counts += cross[idx ^ s1]
        counts += cross[idx ^ s2]
    return counts, num_edges


def center_multiset(h: Hypergraph3, A, B) -> Counter:
    """The multiset of clique centers of crossing edges, as a Counter."""
    a_set, b_set = set(A), set(B)
    counts, num_edges = _center_counts(h, _indicator(h.n, a_set), _indicator(h.n, b_set))
    total = int(counts.sum())
    if total != 2 * num_edges:
        raise VerificationError(f"|W| = {total} != 2|E(A,B)| = {2 * num_edges}")
    return Counter({int(x): int(c) for x, c in enumerate(counts) if c})


def summary_json_dict(h: Hypergraph3) -> dict:
    cert = expansion_certificate(h)
    return {
        "t": h.t,
        "d": h.d,
        "n": h.n,
        "edges": h.num_edges,
        "triples": h.num_triples,
        "epsilon_num": cert.epsilon.numerator,
        "epsilon_den": cert.epsilon.denominator,
        "edge_bound": [cert.edge_bound.numerator, cert.edge_bound.denominator],
        "triple_bound": [cert.triple_bound.numerator, cert.triple_bound.denominator],
    }


def triples_csv_lines(h: Hypergraph3):
    """Rows "u,v,w,center" for every materialized triple, in storage order."""
    if not h.materialized:
        raise SizeLimitError("triple dump needs a materialized build")
    yield "u,v,w,center"
    for (a, b, c), x in zip(h.triples.tolist(), h.triple_centers.tolist()):
        yield f"{a},{b},{c},{x}"
