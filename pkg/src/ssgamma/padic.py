"""Exact arithmetic in Q_p via rational representatives.

Elements are plain rationals tagged with the residue characteristic;
valuation, residue classes and subset membership are all computed
exactly from the fraction, so no truncation or rounding ever happens.
The uniformizer is p itself and the residue field has q = p elements.

Measures follow vol(o) = q^(1/2) (additive) and vol(o^x) = 1
(multiplicative); RepSet.enumerate realizes compact(-ly truncated) sets
as finite lists of representatives with exact measure weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .scalars import ExactScalar

INF = math.inf


class PAdicError(Exception):
    pass


class NegativeValuation(PAdicError):
    pass


def rational_valuation(x: Fraction, p: int):
    """v_p(x) for a rational x; v(0) = +inf."""
    if x == 0:
        return INF
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


@dataclass(frozen=True)
class PAdicNumber:
    """An element of F = Q_p, stored as an exact rational."""

    value: Fraction
    prime: int

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    # -- field operations ----------------------------------------------

    def _check(self, other):
        if isinstance(other, PAdicNumber):
            if other.prime != self.prime:
                raise PAdicError("mixing different primes")
            return other.value
        return Fraction(other)

    def __add__(self, other):
        return PAdicNumber(self.value + self._check(other), self.prime)

    __radd__ = __add__

    def __neg__(self):
        return PAdicNumber(-self.value, self.prime)

    def __sub__(self, other):
        return PAdicNumber(self.value - self._check(other), self.prime)

    def __rsub__(self, other):
        return PAdicNumber(self._check(other) - self.value, self.prime)

    def __mul__(self, other):
        return PAdicNumber(self.value * self._check(other), self.prime)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return PAdicNumber(self.value / self._check(other), self.prime)

    def __rtruediv__(self, other):
        return PAdicNumber(self._check(other) / self.value, self.prime)

    def __eq__(self, other):
        if isinstance(other, PAdicNumber):
            return self.prime == other.prime and self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash((self.value, self.prime))

    # -- p-adic structure ----------------------------------------------

    def valuation(self):
        return rational_valuation(self.value, self.prime)

    def unit_part(self) -> Fraction:
        """x * p^(-v(x)); x must be nonzero."""
        v = self.valuation()
        if v is INF:
            raise PAdicError("unit part of zero")
        return self.value * Fraction(self.prime) ** (-v)

    def residue(self, k: int = 1) -> int:
        """The class of x in o/p^k as an integer in [0, p^k)."""
        if k < 1:
            raise ValueError("k must be >= 1")
        v = self.valuation()
        if v is not INF and v < 0:
            raise NegativeValuation(f"residue of {self.value} with v = {v}")
        mod = self.prime**k
        n, d = self.value.numerator, self.value.denominator
        return n * pow(d, -1, mod) % mod

    def in_subset(self, subset: str) -> bool:
        """Membership in one of o, p, p2, units, 1+p, pi(1+p)."""
        v = self.valuation()
        if subset == "o":
            return v >= 0
        if subset == "p":
            return v >= 1
        if subset == "p2":
            return v >= 2
        if subset == "units":
            return v == 0
        if subset == "1+p":
            return v == 0 and (self - 1).valuation() >= 1
        if subset == "pi(1+p)":
            return v == 1 and (self / self.prime - 1).valuation() >= 1
        raise ValueError(f"unknown subset {subset!r}")

    def __repr__(self):
        return f"PAdic({self.value}, p={self.prime})"


# ---------------------------------------------------------------------------
# finite sets of representatives with measure weights


@dataclass(frozen=True)
class RepSet:
    """A compact piece of F or F^x, cut into classes at level N.

    kinds (additive measure dv, vol(o) = q^(1/2)):
      "o_mod_pN"       o modulo p^N
      "p_mod_pN"       p modulo p^N
      "p-V_o_mod_pN"   p^(-V) o modulo p^N
    kinds (multiplicative measure, vol(o^x) = 1):
      "units_mod"      o^x modulo 1 + p^N
      "1+p_mod"        1 + p modulo 1 + p^N
      "piv_units_mod"  pi^V o^x modulo 1 + p^N   (V may be negative)
    """

    prime: int
    kind: str
    level: int
    shift: int = 0
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level N must be >= 1")

    def volume(self) -> ExactScalar:
        p, N, V = self.prime, self.level, self.shift
        s = Fraction(self.scale)
        if self.kind == "o_mod_pN":
            return ExactScalar.from_coeff(p, s, q_half=1)
        if self.kind == "p_mod_pN":
            return ExactScalar.from_coeff(p, s, q_half=-1)
        if self.kind == "p-V_o_mod_pN":
            return ExactScalar.from_coeff(p, s, q_half=1 + 2 * V)
        if self.kind == "units_mod":
            return ExactScalar.from_coeff(p, s)
        if self.kind == "1+p_mod":
            return ExactScalar.from_coeff(p, s / (p - 1))
        if self.kind == "piv_units_mod":
            return ExactScalar.from_coeff(p, s)
        raise ValueError(f"unknown RepSet kind {self.kind!r}")

    def count(self) -> int:
        p, N, V = self.prime, self.level, self.shift
        if self.kind == "o_mod_pN":
            return p**N
        if self.kind == "p_mod_pN":
            return p ** (N - 1)
        if self.kind == "p-V_o_mod_pN":
            return p ** (N + V)
        if self.kind == "units_mod":
            return (p - 1) * p ** (N - 1)
        if self.kind == "1+p_mod":
            return p ** (N - 1)
        if self.kind == "piv_units_mod":
            return (p - 1) * p ** (N - 1)
        raise ValueError(f"unknown RepSet kind {self.kind!r}")

    def weight(self) -> ExactScalar:
        return self.volume() / ExactScalar.from_coeff(self.prime, self.count())

    def representatives(self):
        p, N, V = self.prime, self.level, self.shift
        F = Fraction
        if self.kind == "o_mod_pN":
            vals = (F(a) for a in range(p**N))
        elif self.kind == "p_mod_pN":
            vals = (F(p * a) for a in range(p ** (N - 1)))
        elif self.kind == "p-V_o_mod_pN":
            vals = (F(a, p**V) for a in range(p ** (N + V)))
        elif self.kind == "units_mod":
            vals = (F(a) for a in range(1, p**N) if a % p)
        elif self.kind == "1+p_mod":
            vals = (F(1 + p * a) for a in range(p ** (N - 1)))
        elif self.kind == "piv_units_mod":
            piv = F(p) ** V
            vals = (piv * a for a in range(1, p**N) if a % p)
        else:
            raise ValueError(f"unknown RepSet kind {self.kind!r}")
        for v in vals:
            yield PAdicNumber(v, p)

    def enumerate(self):
        """Yield (representative, weight) pairs; weights sum to the volume."""
        w = self.weight()
        for x in self.representatives():
            yield x, w
