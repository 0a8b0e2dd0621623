"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored as sparse Laurent "group algebra" combinations
sum_e c_e * zeta_m^e with Fraction coefficients, and reduced to the
canonical basis 1, zeta, ..., zeta^(phi(m)-1) modulo the m-th cyclotomic
polynomial only when equality, serialization or inversion is needed.
This keeps the hot path (multiplying by roots of unity, summing many
character values) cheap while equality stays exactly decidable.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import cyclotomic_poly, Symbol

_X = Symbol("x")


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(m: int) -> tuple:
    """Coefficients of the m-th cyclotomic polynomial, highest degree first."""
    poly = cyclotomic_poly(m, _X)
    if m == 1:
        return (1, -1)
    return tuple(int(c) for c in poly.as_poly(_X).all_coeffs())


def _poly_rem(coeffs: list, mod: tuple) -> list:
    """Remainder of coeffs (index = degree, Fractions) modulo mod (monic, int)."""
    r = list(coeffs)
    dm = len(mod) - 1
    while len(r) > dm:
        lead = r[-1]
        if lead:
            d = len(r) - 1 - dm
            # mod is monic so no division is needed
            for i, c in enumerate(reversed(mod)):
                if c:
                    r[d + i] -= lead * c
        r.pop()
    while r and not r[-1]:
        r.pop()
    return r


def _poly_divmod(a: list, b: list):
    """Division with remainder in Q[x]; lists index by degree."""
    r = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    db = len(b) - 1
    binv = Fraction(1) / b[-1]
    while len(r) - 1 >= db and any(r):
        while r and not r[-1]:
            r.pop()
        if len(r) - 1 < db:
            break
        coef = r[-1] * binv
        d = len(r) - 1 - db
        q[d] = coef
        for i, c in enumerate(b):
            r[d + i] -= coef * c
        r.pop()
    while r and not r[-1]:
        r.pop()
    return q, r


def _poly_ext_gcd(a: list, b: list):
    """Extended Euclid in Q[x]: returns (g, s, t) with s*a + t*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], [Fraction(0)]
    t0, t1 = [Fraction(0)], [Fraction(1)]
    while any(r1):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
    return r0, s0, t0


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    while out and not out[-1]:
        out.pop()
    return out


def _poly_sub(a: list, b: list) -> list:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    while out and not out[-1]:
        out.pop()
    return out


class CyclotomicNumber:
    """An element of Q(zeta_m), exact.

    Coefficients are Fractions; equality is decided via the canonical
    reduced form modulo the m-th cyclotomic polynomial, after embedding
    both operands into the lcm order.
    """

    __slots__ = ("order", "coeffs", "_canon")

    def __init__(self, order: int, coeffs=None):
        if order < 1:
            raise ValueError("order must be >= 1")
        self.order = order
        terms = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
            for e, c in items:
                c = Fraction(c)
                if c:
                    e %= order
                    terms[e] = terms.get(e, Fraction(0)) + c
        self.coeffs = {e: c for e, c in terms.items() if c}
        self._canon = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(order: int = 1) -> "CyclotomicNumber":
        return CyclotomicNumber(order, {})

    @staticmethod
    def one(order: int = 1) -> "CyclotomicNumber":
        return CyclotomicNumber(order, {0: Fraction(1)})

    @staticmethod
    def from_rational(c) -> "CyclotomicNumber":
        return CyclotomicNumber(1, {0: Fraction(c)})

    @staticmethod
    def root_of_unity(m: int, k: int) -> "CyclotomicNumber":
        """Canonical form of zeta_m^k."""
        if m < 1:
            raise ValueError("order must be >= 1")
        k %= m
        g = gcd(k, m) if k else m
        # store at the primitive order so trivial roots collapse to order 1
        return CyclotomicNumber(m // g, {k // g: Fraction(1)})

    # -- canonical form -----------------------------------------------

    def reduced(self) -> tuple:
        """Coefficient tuple of the canonical representative, degree-indexed,
        length phi(order), reduced modulo the cyclotomic polynomial."""
        if self._canon is None:
            mod = _cyclotomic_coeffs(self.order)
            deg = len(mod) - 1
            dense = [Fraction(0)] * self.order
            for e, c in self.coeffs.items():
                dense[e] += c
            rem = _poly_rem(dense, mod)
            rem += [Fraction(0)] * (deg - len(rem))
            self._canon = tuple(rem)
        return self._canon

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def is_rational(self):
        r = self.reduced()
        if any(r[1:]):
            return None
        return r[0] if r else Fraction(0)

    def embed(self, order: int) -> "CyclotomicNumber":
        """Rewrite in Q(zeta_order); order must be a multiple of self.order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("can only embed into a multiple of the order")
        step = order // self.order
        return CyclotomicNumber(order, {e * step: c for e, c in self.coeffs.items()})

    def _pair(self, other: "CyclotomicNumber"):
        m = self.order * other.order // gcd(self.order, other.order)
        return self.embed(m), other.embed(m), m

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        a, b, m = self._pair(other)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return CyclotomicNumber(m, out)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        a, b, m = self._pair(other)
        out = {}
        for e1, c1 in a.coeffs.items():
            for e2, c2 in b.coeffs.items():
                e = (e1 + e2) % m
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return CyclotomicNumber(m, out)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        red = list(self.reduced())
        while red and not red[-1]:
            red.pop()
        if not red:
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        mod = [Fraction(c) for c in reversed(_cyclotomic_coeffs(self.order))]
        g, s, _ = _poly_ext_gcd(red, mod)
        # g is a nonzero constant: the cyclotomic polynomial is irreducible
        const = g[0]
        inv = {i: c / const for i, c in enumerate(s)}
        return CyclotomicNumber(self.order, inv)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = CyclotomicNumber.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "CyclotomicNumber":
        """The ring involution zeta_m -> zeta_m^(-1) (complex conjugation)."""
        return CyclotomicNumber(self.order, {(-e) % self.order: c for e, c in self.coeffs.items()})

    # -- comparison & misc ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b, _ = self._pair(other)
        return a.reduced() == b.reduced()

    __hash__ = None

    def evaluate(self, embedding: int = 1) -> complex:
        """Numerical value with zeta_m -> exp(2*pi*i*embedding/m). Sanity tool only."""
        z = cmath.exp(2j * cmath.pi * embedding / self.order)
        return sum(complex(c) * z**e for e, c in self.coeffs.items()) if self.coeffs else 0j

    def __repr__(self):
        if not self.coeffs:
            return "Cyc(0)"
        parts = [f"{c}*z{self.order}^{e}" for e, c in sorted(self.coeffs.items())]
        return "Cyc(" + " + ".join(parts) + ")"


def _coerce(x) -> CyclotomicNumber:
    if isinstance(x, CyclotomicNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CyclotomicNumber.from_rational(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to CyclotomicNumber")
