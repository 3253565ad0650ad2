"""Bit-vector arithmetic over Z_2^t and the small binary fields GF(2^m).

Group elements are plain Python ints with the dimension t carried alongside.
Addition is XOR and every element is its own inverse. Validation happens at
module boundaries; hot loops use ``^`` directly on ints.
"""

from __future__ import annotations

from .errors import SizeLimitError

# Materialized structures hold 2^t entries; larger t must use implicit mode.
MAX_DIMENSION = 30

# Irreducible polynomials over GF(2), bitmask encoded (x^3 + x + 1 -> 0b1011).
IRREDUCIBLE = {
    2: 0b111,        # x^2 + x + 1
    3: 0b1011,       # x^3 + x + 1
    4: 0b10011,      # x^4 + x + 1
    5: 0b100101,     # x^5 + x^2 + 1
    6: 0b1000011,    # x^6 + x + 1
    7: 0b10000011,   # x^7 + x + 1
    8: 0b100011011,  # x^8 + x^4 + x^3 + x + 1 (the AES polynomial)
}


def check_dimension(t: int, *, materialized: bool = False) -> int:
    if not isinstance(t, int) or t < 1:
        raise ValueError(f"dimension t must be a positive integer, got {t!r}")
    if materialized and t > MAX_DIMENSION:
        raise SizeLimitError(f"t={t} exceeds the materialization cap t<={MAX_DIMENSION}")
    return t


def check_element(x: int, t: int) -> int:
    """Validate that x is a t-bit group element (no stray high bits)."""
    if not isinstance(x, int) or x < 0 or x >> t:
        raise ValueError(f"{x!r} is not an element of Z_2^{t}")
    return x


def add(a: int, b: int, t: int) -> int:
    """Group addition in Z_2^t (bitwise XOR). Validates both operands."""
    check_element(a, t)
    check_element(b, t)
    return a ^ b


def character(chi: int, x: int, t: int) -> int:
    """Value of the character indexed by chi at x: (-1)^<chi, x>.

    The exponent is the parity of the bitwise AND, so the return value is
    +1 or -1. Characters are exactly the homomorphisms Z_2^t -> {+1, -1}.
    """
    check_element(chi, t)
    check_element(x, t)
    return -1 if (chi & x).bit_count() & 1 else 1


def element_to_string(x: int, t: int, binary: bool = False) -> str:
    """Render an element as decimal, or as 0b-prefixed binary of exactly t digits."""
    check_element(x, t)
    if binary:
        return "0b" + format(x, f"0{t}b")
    return str(x)


def parse_element(s: str, t: int) -> int:
    """Parse a decimal or 0b-prefixed binary element string."""
    s = s.strip()
    x = int(s, 2) if s.startswith("0b") else int(s)
    return check_element(x, t)


def _poly_degree(p: int) -> int:
    return p.bit_length() - 1


def _poly_mod(a: int, b: int) -> int:
    """Remainder of carry-less polynomial division of a by b (b != 0)."""
    db = _poly_degree(b)
    while _poly_degree(a) >= db and a:
        a ^= b << (_poly_degree(a) - db)
    return a


def is_irreducible(poly: int, m: int) -> bool:
    """Exhaustive factor search; only supported for degree m <= 16.

    A wrong modulus silently breaks the Sidon property downstream, so
    user-supplied moduli are always screened through here.
    """
    if m > 16:
        raise SizeLimitError("irreducibility search is exhaustive and capped at degree 16")
    if _poly_degree(poly) != m:
        return False
    for f in range(2, 1 << (m // 2 + 1)):
        if _poly_mod(poly, f) == 0:
            return False
    return True


class GF2m:
    """The finite field GF(2^m) with a fixed irreducible modulus polynomial.

    Elements are ints in [0, 2^m); addition is XOR. Multiplication is the
    carry-less product reduced modulo the modulus.
    """

    def __init__(self, m: int, modulus: int | None = None):
        if m < 2:
            raise ValueError("field degree m must be >= 2")
        if modulus is None:
            if m not in IRREDUCIBLE:
                raise ValueError(f"no shipped modulus for m={m}; supply one explicitly")
            modulus = IRREDUCIBLE[m]
        if not is_irreducible(modulus, m):
            raise ValueError(f"modulus {bin(modulus)} is not irreducible of degree {m}")
        self.m = m
        self.modulus = modulus
        self.order = 1 << m

    def check(self, a: int) -> int:
        if not isinstance(a, int) or a < 0 or a >> self.m:
            raise ValueError(f"{a!r} is not an element of GF(2^{self.m})")
        return a

    def mul(self, a: int, b: int) -> int:
        """Carry-less product of a and b reduced modulo the modulus."""
        self.check(a)
        self.check(b)
        r = 0
        top = 1 << self.m
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= self.modulus
        return r

    def cube(self, a: int) -> int:
        """The Gold map a -> a^3."""
        return self.mul(self.mul(a, a), a)

    def pow(self, a: int, e: int) -> int:
        self.check(a)
        if e < 0:
            raise ValueError("negative exponents unsupported")
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r
