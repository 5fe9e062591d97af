"""Exact arithmetic in GF(2^h), 1 <= h <= 16.

Field elements are plain ints in [0, 2^h): bit i holds the coefficient of
x^i in the polynomial basis, so addition is XOR.  A field is described by
its extension degree h and an irreducible modulus of degree h encoded the
same way.  Unless a modulus is supplied explicitly, the lexicographically
least irreducible polynomial of degree h (coefficient vector read as an
integer) is chosen, which pins every numeric value this package produces.

Multiplication and inversion run on log/exp tables over a generator of the
multiplicative group.  The absolute trace a -> a + a^2 + ... + a^(2^(h-1))
is evaluated through a precomputed GF(2)-linear mask, and the affine
quadratic x^2 + x = c is solved from the echelonized image of the
Artin-Schreier map x -> x^2 + x.
"""

from __future__ import annotations

import functools
from typing import Iterable, Optional

MAX_H = 16


def _clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials encoded as ints."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _polymod(a: int, m: int) -> int:
    """Remainder of a modulo m in GF(2)[x]."""
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible(poly: int, h: int) -> bool:
    """Whether poly encodes an irreducible polynomial of degree exactly h."""
    if poly.bit_length() - 1 != h or not poly & 1:
        return False
    if h == 1:
        return True
    # trial division by every polynomial of degree 1 .. h // 2
    for d in range(2, 1 << (h // 2 + 1)):
        if _polymod(poly, d) == 0:
            return False
    return True


def least_irreducible(h: int) -> int:
    """The lexicographically least irreducible polynomial of degree h."""
    for cand in range((1 << h) + 1, 1 << (h + 1), 2):
        if is_irreducible(cand, h):
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {h}")


def _build_log_exp(q: int, modulus: int) -> tuple[list[int], list[int]]:
    if q == 2:
        return [1], [0, 0]
    for g in range(2, q):
        exp = []
        x = 1
        for _ in range(q - 1):
            exp.append(x)
            x = _polymod(_clmul(x, g), modulus)
        if x == 1 and len(set(exp)) == q - 1:
            log = [0] * q
            for i, v in enumerate(exp):
                log[v] = i
            return exp, log
    raise ValueError("multiplicative group is not cyclic; modulus is not irreducible")


class GF:
    """GF(2^h); immutable, hashable, with elements represented as ints."""

    __slots__ = ("h", "q", "modulus", "_exp", "_log", "_trace_mask", "_aq_pivots")

    def __init__(self, h: int, modulus: Optional[int] = None):
        if not isinstance(h, int) or not 1 <= h <= MAX_H:
            raise ValueError(f"extension degree must be an int in 1..{MAX_H}, got {h!r}")
        if modulus is None:
            modulus = least_irreducible(h)
        elif not is_irreducible(modulus, h):
            raise ValueError(
                f"modulus {modulus:#b} is not an irreducible polynomial of degree {h}"
            )
        self.h = h
        self.q = 1 << h
        self.modulus = modulus
        self._exp, self._log = _build_log_exp(self.q, modulus)
        self._trace_mask = self._build_trace_mask()
        self._aq_pivots = self._build_artin_schreier_pivots()

    # -- construction helpers -------------------------------------------------

    def _build_trace_mask(self) -> int:
        # trace is GF(2)-linear, so one bit per basis element suffices
        mask = 0
        for i in range(self.h):
            e = 1 << i
            acc = x = e
            for _ in range(self.h - 1):
                x = self.mul(x, x)
                acc ^= x
            if acc == 1:
                mask |= 1 << i
            elif acc:
                raise AssertionError("trace landed outside the prime field")
        return mask

    def _build_artin_schreier_pivots(self) -> dict[int, tuple[int, int]]:
        # echelon basis of the image of x -> x^2 + x, keeping preimages
        pivots: dict[int, tuple[int, int]] = {}
        for i in range(self.h):
            e = 1 << i
            v = self.mul(e, e) ^ e
            p = e
            while v:
                lead = v.bit_length() - 1
                if lead in pivots:
                    pv, pp = pivots[lead]
                    v ^= pv
                    p ^= pp
                else:
                    pivots[lead] = (v, p)
                    break
        return pivots

    # -- identity -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.h, self.modulus) == (other.h, other.modulus)

    def __hash__(self) -> int:
        return hash((self.h, self.modulus))

    def __repr__(self) -> str:
        return f"GF(2^{self.h}, modulus={self.modulus:#b})"

    # -- element ranges ---------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def nonzero_elements(self) -> range:
        return range(1, self.q)

    # -- arithmetic -------------------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def sqrt(self, a: int) -> int:
        """The unique square root: squaring is a field automorphism here."""
        for _ in range(self.h - 1):
            a = self.mul(a, a)
        return a

    def trace(self, a: int) -> int:
        """Absolute trace onto GF(2)."""
        return (a & self._trace_mask).bit_count() & 1

    def solve_affine_quadratic(self, c: int) -> Optional[tuple[int, int]]:
        """Both roots of x^2 + x = c, or None when trace(c) = 1."""
        if self.trace(c):
            return None
        v, p = c, 0
        while v:
            pv, pp = self._aq_pivots[v.bit_length() - 1]
            v ^= pv
            p ^= pp
        return (min(p, p ^ 1), max(p, p ^ 1))

    def additive_span(self, generators: Iterable[int]) -> set[int]:
        """The GF(2)-linear span of the given elements (always contains 0)."""
        span = {0}
        for g in generators:
            if not 0 <= g < self.q:
                raise ValueError(f"element {g!r} is outside GF(2^{self.h})")
            if g not in span:
                span |= {g ^ s for s in span}
        return span

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        return {"h": self.h, "modulus": self.modulus}

    @staticmethod
    def from_json(obj: dict) -> "GF":
        if not isinstance(obj, dict) or set(obj) != {"h", "modulus"}:
            raise ValueError("field object must have exactly the keys 'h' and 'modulus'")
        h, modulus = obj["h"], obj["modulus"]
        if not isinstance(h, int) or not isinstance(modulus, int):
            raise ValueError("field 'h' and 'modulus' must be integers")
        return make_field(h, modulus)


@functools.lru_cache(maxsize=None)
def make_field(h: int, modulus: Optional[int] = None) -> GF:
    """GF(2^h) with the default (least irreducible) or a caller-chosen modulus."""
    return GF(h, modulus)
