"""Sidon sets over Z_2^t.

A Sidon set S has all pairwise sums of distinct elements distinct, which
over Z_2^t is the same as having no nontrivial solution of
s1 + s2 = s1' + s2'. Three constructors are provided: verification of a
candidate, seeded rejection sampling, and the explicit Gold construction
{(x, x^3) : x in GF(2^m), x != 0}.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations

from .errors import SearchExhaustedError, VerificationError
from .gf2 import GF2m, IRREDUCIBLE, check_dimension, check_element


@dataclass(frozen=True)
class SidonSet:
    """A Sidon set: t-bit elements, all distinct and nonzero, sums distinct.

    The element order is meaningful (generation order) and round-trips
    through serialization bit-exactly.
    """

    t: int
    elements: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.elements)

    def __post_init__(self):
        check_dimension(self.t)
        object.__setattr__(self, "elements", tuple(self.elements))


@dataclass(frozen=True)
class SidonViolation:
    """Witness of a nontrivial solution s1 + s2 = s1p + s2p."""

    s1: int
    s2: int
    s1p: int
    s2p: int

    @property
    def common_sum(self) -> int:
        return self.s1 ^ self.s2


@dataclass(frozen=True)
class StructuralDefect:
    """Zero element or duplicate in a candidate set."""

    reason: str
    element: int


def verify_sidon(t: int, candidate) -> None | SidonViolation | StructuralDefect:
    """Return None if candidate is a Sidon set over Z_2^t, else the first defect.

    Zero elements and duplicates are structural defects. Violations are
    scanned deterministically: index pairs (i,j) with i<j are ordered
    lexicographically, and pairs of such pairs likewise, so the first
    reported violation is stable across runs.
    """
    elements = list(candidate)
    for x in elements:
        check_element(x, t)
        if x == 0:
            return StructuralDefect("zero element", 0)
    seen = set()
    for x in elements:
        if x in seen:
            return StructuralDefect("duplicate element", x)
        seen.add(x)
    sums = {}
    collision = False
    for i, j in combinations(range(len(elements)), 2):
        s = elements[i] ^ elements[j]
        if s in sums:
            collision = True
            break
        sums[s] = (i, j)
    if not collision:
        return None
    # Rescan pairs of index pairs in lexicographic order for the first witness.
    pairs = list(combinations(range(len(elements)), 2))
    for a in range(len(pairs)):
        i, j = pairs[a]
        s = elements[i] ^ elements[j]
        for b in range(a + 1, len(pairs)):
            k, l = pairs[b]
            if elements[k] ^ elements[l] == s:
                return SidonViolation(elements[i], elements[j], elements[k], elements[l])
    raise AssertionError("collision detected but no witness found")


def is_sidon(t: int, candidate) -> bool:
    return verify_sidon(t, candidate) is None


def random_sidon(t: int, target_d: int, seed: int, max_attempts: int | None = None) -> SidonSet:
    """Seeded rejection sampling of a Sidon set of exactly target_d elements.

    A uniform candidate c is accepted iff c != 0, c is new, and c + s avoids
    the running pairwise-sum set for every s already accepted. The result is
    deterministic given (t, target_d, seed). Raises SearchExhaustedError
    after max_attempts rejections (default 1000 * target_d), carrying the
    partial size reached.
    """
    check_dimension(t)
    if target_d < 1:
        raise ValueError("target_d must be >= 1")
    if max_attempts is None:
        max_attempts = 1000 * target_d
    rng = random.Random(seed)
    accepted: list[int] = []
    members: set[int] = set()
    pairwise: set[int] = set()
    rejections = 0
    while len(accepted) < target_d:
        c = rng.getrandbits(t)
        ok = c != 0 and c not in members
        if ok:
            for s in accepted:
                if c ^ s in pairwise:
                    ok = False
                    break
        if not ok:
            rejections += 1
            if rejections >= max_attempts:
                raise SearchExhaustedError(
                    f"no Sidon set of size {target_d} found in Z_2^{t} after "
                    f"{max_attempts} rejections (reached {len(accepted)})",
                    partial_size=len(accepted),
                )
            continue
        for s in accepted:
            pairwise.add(c ^ s)
        accepted.append(c)
        members.add(c)
    return SidonSet(t, tuple(accepted))


def gold_sidon(m: int) -> SidonSet:
    """The explicit set {(x, x^3) : x in GF(2^m), x != 0} inside Z_2^(2m).

    Encoded with x in the high m bits and x^3 in the low m bits; x = 0 is
    dropped to keep 0 out of the set. Sidon because x -> x^3 is almost
    perfect nonlinear over GF(2^m) for every m. The result is re-verified on
    the way out.
    """
    if m not in IRREDUCIBLE:
        raise ValueError(f"unsupported field degree m={m}; shipped moduli cover m in {sorted(IRREDUCIBLE)}")
    field = GF2m(m)
    elements = tuple((x << m) | field.cube(x) for x in range(1, 1 << m))
    result = SidonSet(2 * m, elements)
    defect = verify_sidon(result.t, result.elements)
    if defect is not None:
        raise VerificationError(f"gold_sidon({m}) failed self-check: {defect}")
    return result


def pair_sums(S: SidonSet) -> tuple[int, ...]:
    """All C(d,2) pairwise sums of distinct elements, in index-pair scan order.

    The Sidon invariant guarantees distinctness, which is re-asserted here;
    failure means the SidonSet was corrupted after construction.
    """
    out = []
    seen = set()
    for a, b in combinations(S.elements, 2):
        s = a ^ b
        if s in seen:
            raise VerificationError(f"pairwise sums collide at {s}; SidonSet invariant broken")
        seen.add(s)
        out.append(s)
    return tuple(out)


def to_json_dict(S: SidonSet) -> dict:
    return {"t": S.t, "S": list(S.elements)}


def from_json_dict(obj: dict) -> SidonSet:
    return SidonSet(int(obj["t"]), tuple(int(x) for x in obj["S"]))


def save_json(S: SidonSet, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_json_dict(S), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_json(path) -> SidonSet:
    with open(path) as fh:
        return from_json_dict(json.load(fh))


def save_text(S: SidonSet, path) -> None:
    """One decimal element per line."""
    with open(path, "w") as fh:
        for x in S.elements:
            fh.write(f"{x}\n")


def load_text(path, t: int) -> SidonSet:
    with open(path) as fh:
        elements = tuple(int(line) for line in fh if line.strip())
    for x in elements:
        check_element(x, t)
    return SidonSet(t, elements)
