"""Cayley graphs over Z_2^t: exact integer spectra and spectral-lemma checkers.

Eigenvalues of Cay(Z_2^t, S) are character sums over the generators, so the
full spectrum is the Walsh-Hadamard transform of the generator indicator
vector. Everything here stays in integer (or rational) arithmetic; floating
point appears only in oracle comparisons and in reported slack values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import SizeLimitError
from .gf2 import check_dimension, check_element
from .sidon import SidonSet


def walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """In-place-style integer Walsh-Hadamard transform of a length-2^t vector.

    Butterfly recursion; intermediates stay within int64 for t <= 30 because
    every partial sum is bounded by the vector's l1 norm.
    """
    v = np.asarray(values, dtype=np.int64).copy()
    n = v.shape[0]
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < n:
        v = v.reshape(-1, 2 * h)
        left = v[:, :h].copy()
        right = v[:, h:].copy()
        v[:, :h] = left + right
        v[:, h:] = left - right
        v = v.reshape(-1)
        h *= 2
    return v


@dataclass(frozen=True)
class CayleyGraph:
    """Cay(Z_2^t, generators): x ~ y iff x + y is a generator.

    Generators must be distinct and nonzero, so the graph is simple,
    loop-free and |generators|-regular. An empty generator set (the empty
    graph) is allowed; it shows up as the skeleton of a d=1 Sidon set.
    """

    t: int
    generators: tuple[int, ...]

    def __post_init__(self):
        check_dimension(self.t)
        gens = tuple(self.generators)
        seen = set()
        for g in gens:
            check_element(g, self.t)
            if g == 0:
                raise ValueError("generators must be nonzero (loop-free graph)")
            if g in seen:
                raise ValueError(f"duplicate generator {g}")
            seen.add(g)
        object.__setattr__(self, "generators", gens)

    @property
    def n(self) -> int:
        return 1 << self.t

    @property
    def d(self) -> int:
        return len(self.generators)

    def has_edge(self, x: int, y: int) -> bool:
        return (x ^ y) in set(self.generators)

    def adjacency(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix; only for small t."""
        if self.t > 14:
            raise SizeLimitError("dense adjacency capped at t <= 14")
        n = self.n
        a = np.zeros((n, n), dtype=np.int64)
        idx = np.arange(n)
        for g in self.generators:
            a[idx, idx ^ g] = 1
        return a


@dataclass
class Spectrum:
    """Full eigenvalue multiset of a Cayley graph plus derived quantities.

    values[chi] is the eigenvalue belonging to the character chi. lam is the
    largest nontrivial absolute eigenvalue, epsilon = 1 - lam/d the spectral
    gap, and mu = (lam^2 + d)/2 the derived bound that governs the skeleton
    graph through the spectrum-squaring relation.
    """

    t: int
    d: int
    values: np.ndarray
    lam: int = field(init=False)
    epsilon: Fraction = field(init=False)
    mu: Fraction = field(init=False)

    def __post_init__(self):
        nontrivial = np.abs(self.values[1:]) if self.values.shape[0] > 1 else np.array([0])
        self.lam = int(nontrivial.max()) if nontrivial.size else 0
        self.epsilon = Fraction(self.d - self.lam, self.d) if self.d else Fraction(0)
        self.mu = Fraction(self.lam * self.lam + self.d, 2)

    @property
    def n(self) -> int:
        return 1 << self.t

    def histogram(self) -> list[tuple[int, int]]:
        """(value, multiplicity) pairs sorted descending by value."""
        vals, counts = np.unique(self.values, return_counts=True)
        return [(int(v), int(c)) for v, c in zip(vals[::-1], counts[::-1])]

    def to_json_dict(self) -> dict:
        return {
            "t": self.t,
            "d": self.d,
            "lambda": self.lam,
            "epsilon_num": self.epsilon.numerator,
            "epsilon_den": self.epsilon.denominator,
            "histogram": [[v, c] for v, c in self.histogram()],
        }


def spectrum(g: CayleyGraph) -> Spectrum:
    """All 2^t eigenvalues, exactly, via the WHT of the generator indicator."""
    check_dimension(g.t, materialized=True)
    indicator = np.zeros(1 << g.t, dtype=np.int64)
    for s in g.generators:
        indicator[s] = 1
    return Spectrum(g.t, g.d, walsh_hadamard(indicator))


@dataclass(frozen=True)
class SquareRelationCounterexample:
    chi: int
    expected: int
    actual: int


def verify_square_relation(S: SidonSet) -> None | SquareRelationCounterexample:
    """Check that Cay(Z_2^t, S') has eigenvalues (lam_i^2 - d)/2.

    For a Sidon set the relation holds character-by-character, which implies
    the multiset identity. Returns None on success, else the first character
    where the two sides differ. Feeding a non-Sidon set past the
    precondition typically trips at chi = 0 because |S'| collapses below
    C(d,2).
    """
    base = spectrum(CayleyGraph(S.t, S.elements))
    # Dedupe rather than calling pair_sums: a non-Sidon set fed past the
    # precondition should surface as a counterexample, not an exception.
    sums = {a ^ b for a, b in combinations(S.elements, 2)}
    derived = spectrum(CayleyGraph(S.t, tuple(sorted(sums))))
    predicted = (base.values * base.values - S.d) // 2
    diffs = np.nonzero(predicted != derived.values)[0]
    if diffs.size == 0:
        return None
    chi = int(diffs[0])
    return SquareRelationCounterexample(chi, int(predicted[chi]), int(derived.values[chi]))


def check_multiset(t: int, ms: dict) -> dict:
    for x, mult in ms.items():
        check_element(x, t)
        if mult <= 0:
            raise ValueError(f"multiplicity of {x} must be positive, got {mult}")
    return ms


@dataclass(frozen=True)
class MixingLemmaReport:
    """Exact evaluation of the multiset expander mixing lemma on one pair.

    e(V, W) counts ordered pairs (v, w) with multiplicity; ok is decided by
    comparing squared deviation against the squared bound in integers, so no
    floating point enters the verdict.
    """

    e_vw: int
    expected: Fraction
    deviation: Fraction
    bound: float
    slack: float
    ok: bool


def mixing_lemma_check(g: CayleyGraph, V: dict, W: dict) -> MixingLemmaReport:
    """Evaluate |e(V,W) - (d/n)|V||W|| <= lam * sqrt((sum v^2 - |V|^2/n)(sum w^2 - |W|^2/n))."""
    check_multiset(g.t, V)
    check_multiset(g.t, W)
    spec = spectrum(g)
    n, d, lam = g.n, g.d, spec.lam
    size_v = sum(V.values())
    size_w = sum(W.values())
    sq_v = sum(m * m for m in V.values())
    sq_w = sum(m * m for m in W.values())
    gens = set(g.generators)
    e_vw = 0
    for x, vm in V.items():
        for y, wm in W.items():
            if (x ^ y) in gens:
                e_vw += vm * wm
    expected = Fraction(d * size_v * size_w, n)
    deviation = e_vw - expected
    # Integer comparison: (n e - d|V||W|)^2 <= lam^2 (n sum v^2 - |V|^2)(n sum w^2 - |W|^2)
    lhs = (n * e_vw - d * size_v * size_w) ** 2
    rhs = lam * lam * (n * sq_v - size_v * size_v) * (n * sq_w - size_w * size_w)
    bound = lam * ((sq_v - size_v * size_v / n) * (sq_w - size_w * size_w / n)) ** 0.5
    return MixingLemmaReport(
        e_vw=e_vw,
        expected=expected,
        deviation=deviation,
        bound=bound,
        slack=bound - abs(float(deviation)),
        ok=lhs <= rhs,
    )


@dataclass(frozen=True)
class DeCaenReport:
    sum_squares: int
    bound: Fraction
    ok: bool


def decaen_check(degree_sequence, n: int, m: int) -> DeCaenReport:
    """de Caen's bound: sum d_i^2 <= m (2m/(n-1) + n - 2), in exact rationals."""
    degrees = list(degree_sequence)
    if len(degrees) != n:
        raise ValueError(f"degree sequence has {len(degrees)} entries for n={n} vertices")
    if sum(degrees) != 2 * m:
        raise ValueError(f"sum of degrees {sum(degrees)} != 2m = {2 * m}")
    sum_squares = sum(x * x for x in degrees)
    if m == 0:
        bound = Fraction(0)
    else:
        bound = m * (Fraction(2 * m, n - 1) + (n - 2))
    return DeCaenReport(sum_squares, bound, sum_squares <= bound)


@dataclass(frozen=True)
class CheegerReport:
    """lambda2 against the discrete Cheeger bound D - h^2/(2D).

    h is exact (full subset enumeration) only up to 20 vertices; beyond that
    a seeded sample of subsets yields an upper bound on h that certifies
    nothing, and ok is None.
    """

    degree: int
    lambda2: float
    h: Fraction
    h_exact: bool
    bound: float
    ok: bool | None


def _edge_expansion_exact(adj_masks, degree, nvert) -> Fraction:
    best = None
    half = nvert // 2
    for u_mask in range(1, 1 << nvert):
        size = u_mask.bit_count()
        if size > half:
            continue
        comp = ~u_mask
        crossing = 0
        mm = u_mask
        while mm:
            v = (mm & -mm).bit_length() - 1
            crossing += (adj_masks[v] & comp).bit_count()
            mm &= mm - 1
        ratio = Fraction(crossing, size)
        if best is None or ratio < best:
            best = ratio
    return best


def cheeger_check(adjacency=None, cayley: CayleyGraph | None = None,
                  sample_size: int = 2000, seed: int = 0) -> CheegerReport:
    """Verify lambda2 <= D - h(G)^2 / (2D) for a regular graph.

    Either a dense adjacency matrix or a CayleyGraph may be given; the
    Cayley path computes lambda2 exactly by WHT instead of a floating
    eigensolve.
    """
    if (adjacency is None) == (cayley is None):
        raise ValueError("give exactly one of adjacency or cayley")
    if cayley is not None:
        spec = spectrum(cayley)
        lambda2 = float(np.sort(spec.values)[-2]) if spec.n > 1 else float(spec.d)
        adjacency = cayley.adjacency()
    a = np.asarray(adjacency)
    nvert = a.shape[0]
    if nvert > 1 << 14:
        raise SizeLimitError("cheeger_check is capped at 2^14 vertices")
    if a.shape[0] != a.shape[1] or not np.array_equal(a, a.T) or np.any(np.diag(a)):
        raise ValueError("adjacency must be symmetric with zero diagonal")
    degrees = a.sum(axis=1)
    if not np.all(degrees == degrees[0]):
        raise ValueError("graph is not regular")
    degree = int(degrees[0])
    if cayley is None:
        lambda2 = float(np.sort(np.linalg.eigvalsh(a.astype(np.float64)))[-2])
    adj_masks = [sum(1 << u for u in np.nonzero(a[v])[0].tolist()) for v in range(nvert)]
    if nvert <= 20:
        h = _edge_expansion_exact(adj_masks, degree, nvert)
        h_exact = True
    else:
        rng = np.random.default_rng(seed)
        best = None
        for _ in range(sample_size):
            size = int(rng.integers(1, nvert // 2 + 1))
            subset = rng.choice(nvert, size=size, replace=False)
            u_mask = 0
            for v in subset:
                u_mask |= 1 << int(v)
            crossing = sum((adj_masks[int(v)] & ~u_mask).bit_count() for v in subset)
            ratio = Fraction(crossing, size)
            if best is None or ratio < best:
                best = ratio
        h = best
        h_exact = False
    bound = degree - float(h) ** 2 / (2 * degree)
    ok = (lambda2 <= bound + 1e-9) if h_exact else None
    return CheegerReport(degree, lambda2, h, h_exact, bound, ok)
