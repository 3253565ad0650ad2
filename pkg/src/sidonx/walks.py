"""The random walk on skeleton edges and its auxiliary graph.

The walk moves from edge e to a uniform f with e u f a triple. Its carrier
is the auxiliary graph G on the skeleton edges, which decomposes into
edge-disjoint triangles (one per triple). Note that direct enumeration
gives G degree 2*(2d-4), twice the 2d-4 stated alongside the construction;
the measured value is used everywhere and both are surfaced in reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt

import numpy as np

from .errors import NonConvergenceError, SizeLimitError, VerificationError
from .hypergraph import Hypergraph3, canonical_edge, edge_cliques

EXACT_EVOLUTION_LIMIT = 512   # edges; beyond this evolve switches to float64
DENSE_SPECTRUM_LIMIT = 4096   # aux vertices; beyond this use power iteration
POWER_ITERATION_SEED = 20210  # fixed start vector seed for determinism
POWER_ITERATION_CAP = 100_000


class AuxGraph:
    """Edge-adjacency graph of a materialized hypergraph.

    Vertices are the skeleton edges in their materialized order; e ~ f iff
    e u f is a triple. Regularity of the measured degree is asserted at
    build time.
    """

    def __init__(self, h: Hypergraph3):
        if not h.materialized:
            raise SizeLimitError("AuxGraph needs a materialized hypergraph")
        self.h = h
        m = h.num_edges
        rows = [[] for _ in range(m)]
        for (a, b, c) in map(tuple, h.triples.tolist()):
            i = h.edge_index[(a, b)]
            j = h.edge_index[(a, c)]
            k = h.edge_index[(b, c)]
            rows[i] += [j, k]
            rows[j] += [i, k]
            rows[k] += [i, j]
        degrees = {len(r) for r in rows}
        if len(degrees) != 1:
            raise VerificationError(f"auxiliary graph is not regular: degrees {sorted(degrees)}")
        self.measured_degree = degrees.pop()
        self.paper_degree_formula = 2 * h.d - 4
        self.num_vertices = m
        self.neighbor_matrix = np.array([sorted(r) for r in rows], dtype=np.int64)
        self._bounds = None
        self._python_rows = None

    def _rows(self) -> list[list[int]]:
        if self._python_rows is None:
            self._python_rows = [r.tolist() for r in self.neighbor_matrix]
        return self._python_rows

    def neighbors(self, e) -> list[tuple[int, int]]:
        """All edges f with e u f a triple, enumerated deterministically.

        Order: triples through e by ascending center then completing
        generator, each contributing its two non-e edges.
        """
        u, v = canonical_edge(e)
        if not self.h.is_edge(u, v):
            raise ValueError(f"({u},{v}) is not a skeleton edge")
        out = []
        for (a, b, c) in self.h.triples_containing_edge((u, v)):
            w = a ^ b ^ c ^ u ^ v
            out.append(canonical_edge((u, w)))
            out.append(canonical_edge((v, w)))
        return out

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.num_vertices, self.num_vertices), dtype=np.float64)
        rows = np.repeat(np.arange(self.num_vertices), self.measured_degree)
        a[rows, self.neighbor_matrix.reshape(-1)] = 1.0
        return a

    def spectral_bounds(self) -> "SpectralBounds":
        if self._bounds is None:
            self._bounds = aux_spectral_bounds(self)
        return self._bounds


class EdgeDistribution:
    """Probability vector over skeleton edges, exact or floating.

    Exact mode stores integer numerators over a common denominator, which
    keeps 50-step evolutions loss-free; float mode is a float64 array.
    """

    def __init__(self, values, denominator: int | None = None):
        if denominator is not None:
            self.numerators = [int(x) for x in values]
            self.denominator = int(denominator)
            self.values = None
            if sum(self.numerators) != self.denominator:
                raise ValueError("distribution not normalized")
            if any(x < 0 for x in self.numerators):
                raise ValueError("negative probability mass")
        else:
            self.values = np.asarray(values, dtype=np.float64)
            self.numerators = None
            self.denominator = None
            if abs(float(self.values.sum()) - 1.0) > 1e-12:
                raise ValueError("distribution not normalized")
            if float(self.values.min()) < 0:
                raise ValueError("negative probability mass")

    @classmethod
    def uniform(cls, num_edges: int, exact: bool = True) -> "EdgeDistribution":
        if exact:
            return cls([1] * num_edges, num_edges)
        return cls(np.full(num_edges, 1.0 / num_edges))

    @classmethod
    def point_mass(cls, num_edges: int, index: int, exact: bool = True) -> "EdgeDistribution":
        if not 0 <= index < num_edges:
            raise ValueError(f"edge index {index} out of range")
        if exact:
            return cls([1 if i == index else 0 for i in range(num_edges)], 1)
        vec = np.zeros(num_edges)
        vec[index] = 1.0
        return cls(vec)

    @property
    def is_exact(self) -> bool:
        return self.numerators is not None

    def __len__(self) -> int:
        return len(self.numerators) if self.is_exact else self.values.shape[0]

    def as_array(self) -> np.ndarray:
        if self.is_exact:
            return np.array([x / self.denominator for x in self.numerators])
        return self.values

    def fractions(self) -> list[Fraction]:
        if not self.is_exact:
            raise ValueError("not an exact distribution")
        return [Fraction(x, self.denominator) for x in self.numerators]

    def l2sq_to_uniform(self):
        """Squared l2 distance to uniform; a Fraction in exact mode."""
        m = len(self)
        if self.is_exact:
            return Fraction(sum((m * x - self.denominator) ** 2 for x in self.numerators),
                            (m * self.denominator) ** 2)
        return float(((self.values - 1.0 / m) ** 2).sum())

    def l2_to_uniform(self) -> float:
        return sqrt(float(self.l2sq_to_uniform()))


def evolve(g: AuxGraph, p0: EdgeDistribution, steps: int,
           exact: bool | None = None) -> EdgeDistribution:
    """Apply the uniform-neighbor transition operator steps times.

    By default the exact rational path is used when p0 is exact and the
    graph has at most 512 edges, and float64 beyond; exact=True forces the
    rational path regardless of size (caller accepts the cost), exact=False
    forces float64.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if len(p0) != g.num_vertices:
        raise ValueError("distribution length does not match the edge count")
    deg = g.measured_degree
    if exact is None:
        exact = p0.is_exact and g.num_vertices <= EXACT_EVOLUTION_LIMIT
    if exact and not p0.is_exact:
        raise ValueError("exact evolution needs an exact starting distribution")
    if exact:
        rows = g._rows()
        num = list(p0.numerators)
        denom = p0.denominator
        for _ in range(steps):
            num = [sum(num[e] for e in row) for row in rows]
            denom *= deg
        return EdgeDistribution(num, denom)
    vec = p0.as_array().copy()
    for _ in range(steps):
        vec = vec[g.neighbor_matrix].sum(axis=1) / deg
    return EdgeDistribution(vec)


@dataclass
class MixingProfile:
    """l2 distances to uniform per step against the (lambda/D)^i envelope."""

    distances: list[float]
    envelope: list[float]
    squared_distances: list[Fraction] | None
    lambda_aux: float
    degree: int
    ok: bool
    max_excess: float


def mixing_profile(g: AuxGraph, p0: EdgeDistribution, steps: int,
                   exact: bool | None = None) -> MixingProfile:
    """Distance series for i = 0..steps plus the certified spectral envelope."""
    bounds = g.spectral_bounds()
    ratio = bounds.lambda_aux / g.measured_degree
    if exact is None:
        exact = p0.is_exact and g.num_vertices <= EXACT_EVOLUTION_LIMIT
    distances = []
    squared = [] if exact else None
    p = p0
    for i in range(steps + 1):
        if i:
            p = evolve(g, p, 1, exact=exact)
        if squared is not None:
            sq = p.l2sq_to_uniform()
            squared.append(sq)
            distances.append(sqrt(float(sq)))
        else:
            distances.append(p.l2_to_uniform())
    envelope = [ratio**i for i in range(steps + 1)]
    excess = max(d - e for d, e in zip(distances, envelope))
    return MixingProfile(
        distances=distances,
        envelope=envelope,
        squared_distances=squared,
        lambda_aux=bounds.lambda_aux,
        degree=g.measured_degree,
        ok=excess <= 1e-9,
        max_excess=excess,
    )


@dataclass(frozen=True)
class SpectralBounds:
    lambda2: float
    lambdaN: float
    lambda_aux: float
    method: str
    iterations: int
    bracket2: tuple[float, float]
    bracketN: tuple[float, float]


def aux_spectral_bounds(g: AuxGraph, method: str = "auto") -> SpectralBounds:
    """lambda2, lambdaN and lambda_aux = max(|lambda2|, |lambdaN|) of G.

    auto picks a dense symmetric eigensolve up to 4096 vertices and power
    iteration beyond: lambda2 from A + D*I with the all-ones eigenvector
    deflated analytically, lambdaN from D*I - A.
    """
    if method not in ("auto", "dense", "power"):
        raise ValueError(f"unknown method {method!r}")
    if method == "dense" and g.num_vertices > DENSE_SPECTRUM_LIMIT:
        raise SizeLimitError(f"dense eigensolve capped at {DENSE_SPECTRUM_LIMIT} vertices")
    if method == "auto":
        method = "dense" if g.num_vertices <= DENSE_SPECTRUM_LIMIT else "power"
    if method == "dense":
        evals = np.linalg.eigvalsh(g.adjacency_matrix())
        lam2 = float(evals[-2]) if g.num_vertices > 1 else float(evals[-1])
        lamn = float(evals[0])
        return SpectralBounds(lam2, lamn, max(abs(lam2), abs(lamn)), "dense", 0,
                              (lam2, lam2), (lamn, lamn))
    deg = g.measured_degree
    nv = g.num_vertices

    def matvec(v):
        return v[g.neighbor_matrix].sum(axis=1)

    def power(shifted_matvec, deflate: bool):
        rng = np.random.default_rng(POWER_ITERATION_SEED)
        v = rng.standard_normal(nv)
        rho_prev = None
        for it in range(1, POWER_ITERATION_CAP + 1):
            if deflate:
                v = v - v.mean()
            w = shifted_matvec(v)
            norm = np.linalg.norm(w)
            if norm == 0:
                return 0.0, it, 0.0
            v_next = w / norm
            rho = float(v_next @ shifted_matvec(v_next)) / float(v_next @ v_next)
            if rho_prev is not None and abs(rho - rho_prev) <= 1e-9 * max(1.0, abs(rho)):
                resid = float(np.linalg.norm(shifted_matvec(v_next) - rho * v_next))
                return rho, it, resid
            rho_prev = rho
            v = v_next
        raise NonConvergenceError(f"power iteration did not converge in {POWER_ITERATION_CAP} steps")

    # lambda2: dominant eigenvalue of A + D*I with the all-ones direction removed.
    rho2, it2, res2 = power(lambda v: matvec(v) + deg * v, deflate=True)
    lam2 = rho2 - deg
    # lambdaN: dominant eigenvalue of D*I - A; no deflation needed since D - lambda1 = 0.
    rhon, itn, resn = power(lambda v: deg * v - matvec(v), deflate=False)
    lamn = deg - rhon
    return SpectralBounds(lam2, lamn, max(abs(lam2), abs(lamn)), "power", it2 + itn,
                          (lam2 - res2, lam2 + res2), (lamn - resn, lamn + resn))


def regular_spectral_bounds(adjacency) -> SpectralBounds:
    """Dense-path bounds for an arbitrary regular graph matrix (sanity inputs)."""
    a = np.asarray(adjacency, dtype=np.float64)
    evals = np.linalg.eigvalsh(a)
    lam2 = float(evals[-2]) if a.shape[0] > 1 else float(evals[-1])
    lamn = float(evals[0])
    return SpectralBounds(lam2, lamn, max(abs(lam2), abs(lamn)), "dense", 0,
                          (lam2, lam2), (lamn, lamn))


@dataclass
class WalkHistogram:
    """Final-edge occupancy of seeded Monte-Carlo walks plus a TV estimate."""

    seed: int
    steps: int
    trials: int
    num_edges: int
    counts: dict
    tv_estimate: float
    tv_stderr: float

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "steps": self.steps,
            "trials": self.trials,
            "num_edges": self.num_edges,
            "counts": {f"{u},{v}": c for (u, v), c in sorted(self.counts.items())},
            "tv_estimate": self.tv_estimate,
            "tv_stderr": self.tv_stderr,
        }


def _trial_draws(seed: int, trial: int, steps: int, n: int, num_pairs: int, num_moves: int):
    rng = np.random.Generator(np.random.Philox(key=(int(seed) << 64) + trial))
    start = int(rng.integers(0, n))
    pair = int(rng.integers(0, num_pairs))
    moves = rng.integers(0, num_moves, size=steps, dtype=np.int64) if steps else np.empty(0, np.int64)
    return start, pair, moves


def monte_carlo_walk(h: Hypergraph3, seed: int, steps: int, trials: int,
                     workers: int = 1) -> WalkHistogram:
    """Independent seeded walks from uniform random start edges.

    Each trial consumes its own counter-based Philox substream keyed by
    (seed, trial index), so the histogram is identical for any worker count
    or scheduling. Runs implicitly; no materialization required (t <= 24).
    """
    if h.t > 24:
        raise SizeLimitError("monte_carlo_walk supports t <= 24")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if seed < 0:
        raise ValueError("seed must be >= 0")
    n, d = h.n, h.d
    sorted_s = np.array(h.generators, dtype=np.int64)
    pairs = [(a, b) for i, a in enumerate(h.generators) for b in h.generators[i + 1:]]
    pair_arr = np.array(pairs, dtype=np.int64)
    # Compact lookup over the sorted pair sums: the generating pair of each
    # skeleton sum and its positions in sorted generator order.
    sp_sorted = np.array(h.s_prime, dtype=np.int64)
    pos = {s: i for i, s in enumerate(h.generators)}
    sum_s = np.zeros((len(h.s_prime), 2), dtype=np.int64)
    sum_pos = np.zeros((len(h.s_prime), 2), dtype=np.int64)
    for rank, sp in enumerate(h.s_prime):
        s1, s2 = h.pair_for_sum[sp]
        sum_s[rank] = (s1, s2)
        sum_pos[rank] = (pos[s1], pos[s2])
    num_moves = 2 * (2 * d - 4)

    counts: dict[tuple[int, int], int] = {}
    chunk = max(1, (trials + max(1, workers) - 1) // max(1, workers))
    for lo in range(0, trials, chunk):
        hi = min(trials, lo + chunk)
        size = hi - lo
        starts = np.empty(size, dtype=np.int64)
        pair_idx = np.empty(size, dtype=np.int64)
        moves = np.empty((size, steps), dtype=np.int64)
        for i in range(size):
            s0, p0, mv = _trial_draws(seed, lo + i, steps, n, len(pairs), num_moves)
            starts[i] = s0
            pair_idx[i] = p0
            if steps:
                moves[i] = mv
        u = starts ^ pair_arr[pair_idx, 0]
        v = starts ^ pair_arr[pair_idx, 1]
        u, v = np.minimum(u, v), np.maximum(u, v)
        for step in range(steps):
            k = moves[:, step]
            endpoint = k & 1
            j = k >> 1
            center_choice = j // (d - 2)
            r = j % (d - 2)
            rank = np.searchsorted(sp_sorted, u ^ v)
            cen = u ^ np.where(center_choice == 0, sum_s[rank, 0], sum_s[rank, 1])
            i1 = sum_pos[rank, 0]
            i2 = sum_pos[rank, 1]
            m0 = r + (r >= i1)
            m0 = m0 + (m0 >= i2)
            w = cen ^ sorted_s[m0]
            anchor = np.where(endpoint == 0, u, v)
            u, v = np.minimum(anchor, w), np.maximum(anchor, w)
        keys, key_counts = np.unique(u * n + v, return_counts=True)
        for key, c in zip(keys.tolist(), key_counts.tolist()):
            edge = (key // n, key % n)
            counts[edge] = counts.get(edge, 0) + int(c)

    num_edges = h.num_edges
    tv = 0.0
    signed = 0.0
    # Fixed summation order so the report is bit-identical across worker counts.
    for _, c in sorted(counts.items()):
        p_hat = c / trials
        tv += abs(p_hat - 1.0 / num_edges)
        signed += p_hat * (1.0 if p_hat > 1.0 / num_edges else -1.0)
    tv += (num_edges - len(counts)) / num_edges
    tv /= 2.0
    stderr = sqrt(max(0.0, 1.0 - signed * signed) / (4.0 * trials))
    return WalkHistogram(seed, steps, trials, num_edges, counts, tv, stderr)


@dataclass
class RapidMixingReport:
    """Observed contraction of the edge walk against the spectral ratio.

    certified means lambda_aux/degree < 1, which the theory guarantees
    whenever the base Cayley graph has a spectral gap. The empirical
    constant (1 - ratio)/epsilon^4 is reported, never asserted, because the
    theory only promises it is bounded below by some positive constant.
    """

    epsilon: Fraction
    lambda_aux_ratio: float
    alpha_observed: float
    certified: bool
    empirical_constant: float | None
    measured_degree: int
    paper_degree_formula: int


def rapid_mixing_check(h: Hypergraph3, steps: int = 30) -> RapidMixingReport:
    g = AuxGraph(h)
    bounds = g.spectral_bounds()
    ratio = bounds.lambda_aux / g.measured_degree
    profile = mixing_profile(g, EdgeDistribution.point_mass(g.num_vertices, 0,
                                                            exact=g.num_vertices <= EXACT_EVOLUTION_LIMIT),
                             steps)
    dist = profile.distances
    alpha = 0.0
    for i in range(1, len(dist)):
        if dist[i] <= 1e-300 or dist[0] <= 1e-300:
            break
        alpha = (dist[i] / dist[0]) ** (1.0 / i)
    eps = h.base_spectrum().epsilon
    return RapidMixingReport(
        epsilon=eps,
        lambda_aux_ratio=ratio,
        alpha_observed=alpha,
        certified=ratio < 1.0 - 1e-9,
        empirical_constant=(1.0 - ratio) / float(eps) ** 4 if eps > 0 else None,
        measured_degree=g.measured_degree,
        paper_degree_formula=g.paper_degree_formula,
    )


def mixing_csv_lines(profile: MixingProfile):
    yield "step,l2_distance,envelope"
    for i, (dist, env) in enumerate(zip(profile.distances, profile.envelope)):
        yield f"{i},{dist!r},{env!r}"


def histogram_json(hist: WalkHistogram) -> str:
    return json.dumps(hist.to_json_dict(), indent=2, sort_keys=True) + "\n"
