"""Exact truncated formal power series in one variable t over the rationals.

A :class:`TruncatedSeries` is a finite association exponent -> nonzero
rational coefficient together with a precision bound: every exponent
below ``precision`` is represented faithfully, exponents at or beyond it
are unknown.  All coefficients are :class:`fractions.Fraction`, so every
operation is exact below the propagated precision.

Values are immutable; all operations are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import (
    EpsilonBeyondPrecision,
    InsufficientPrecision,
    NonMonic,
    NotAPerfectPower,
    ZeroUpToPrecision,
)

Rat = Union[Fraction, int]


@dataclass(frozen=True)
class TruncatedSeries:
    """Sparse exact series: sorted (exponent, coefficient) pairs + precision."""

    terms: tuple[tuple[int, Fraction], ...]
    precision: int

    def __post_init__(self):
        if self.precision < 1:
            raise ValueError(f"precision must be >= 1, got {self.precision}")
        last = -1
        for e, c in self.terms:
            if e <= last:
                raise ValueError("exponents must be strictly increasing")
            if e < 0:
                raise ValueError("negative exponent")
            if e >= self.precision:
                raise ValueError(f"exponent {e} >= precision {self.precision}")
            if c == 0:
                raise ValueError("zero coefficient stored")
            last = e

    # -- construction -------------------------------------------------

    @classmethod
    def make(cls, terms: Mapping[int, Rat] | Iterable[tuple[int, Rat]],
             precision: int) -> "TruncatedSeries":
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for e, c in items:
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        kept = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        return cls(kept, precision)

    @classmethod
    def zero(cls, precision: int) -> "TruncatedSeries":
        return cls((), precision)

    @classmethod
    def one(cls, precision: int) -> "TruncatedSeries":
        return cls(((0, Fraction(1)),), precision)

    @classmethod
    def monomial(cls, exponent: int, precision: int,
                 coefficient: Rat = 1) -> "TruncatedSeries":
        return cls.make({exponent: coefficient}, precision)

    # -- inspection ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    def coefficient(self, exponent: int) -> Fraction:
        for e, c in self.terms:
            if e == exponent:
                return c
            if e > exponent:
                break
        return Fraction(0)

    def order(self) -> int:
        """Least exponent with nonzero coefficient."""
        if not self.terms:
            raise ZeroUpToPrecision(
                f"zero up to precision {self.precision}: order undefined")
        return self.terms[0][0]

    def lead_coefficient(self) -> Fraction:
        if not self.terms:
            raise ZeroUpToPrecision("zero series has no leading coefficient")
        return self.terms[0][1]

    # -- ring operations ----------------------------------------------

    def _with_terms(self, acc: dict[int, Fraction],
                    precision: int) -> "TruncatedSeries":
        kept = tuple(sorted(
            (e, c) for e, c in acc.items() if c != 0 and e < precision))
        return TruncatedSeries(kept, precision)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        prec = min(self.precision, other.precision)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return self._with_terms(acc, prec)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(
            tuple((e, -c) for e, c in self.terms), self.precision)

    def scale(self, c: Rat) -> "TruncatedSeries":
        c = Fraction(c)
        if c == 0:
            return TruncatedSeries.zero(self.precision)
        return TruncatedSeries(
            tuple((e, c * v) for e, v in self.terms), self.precision)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.terms and other.terms:
            prec = min(self.precision + other.order(),
                       other.precision + self.order())
        else:
            prec = min(self.precision, other.precision)
        acc: dict[int, Fraction] = {}
        for ea, ca in self.terms:
            if ea >= prec:
                break
            for eb, cb in other.terms:
                e = ea + eb
                if e >= prec:
                    break
                acc[e] = acc.get(e, Fraction(0)) + ca * cb
        return self._with_terms(acc, max(prec, 1))

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 0:
            raise ValueError("negative power")
        if n == 0:
            return TruncatedSeries.one(self.precision)
        result = self
        base = self
        n -= 1
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t**k (k may be negative if all exponents allow it)."""
        if k < 0 and self.terms and self.terms[0][0] < -k:
            raise ValueError("shift would create negative exponents")
        return TruncatedSeries(
            tuple((e + k, c) for e, c in self.terms), self.precision + k)

    def truncate(self, precision: int) -> "TruncatedSeries":
        prec = min(self.precision, precision)
        return TruncatedSeries(
            tuple((e, c) for e, c in self.terms if e < prec), prec)

    def divide(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Exact quotient self/other, a power series (order(self) >= order(other))."""
        ob = other.order()
        if self.is_zero:
            prec = min(self.precision, other.precision) - ob
            if prec < 1:
                raise InsufficientPrecision("quotient precision exhausted")
            return TruncatedSeries.zero(prec)
        oa = self.order()
        if oa < ob:
            raise ValueError("quotient would not be a power series")
        prec = min(self.precision, other.precision + oa - ob) - ob
        if prec < 1:
            raise InsufficientPrecision("quotient precision exhausted")
        lead = other.lead_coefficient()
        quot: dict[int, Fraction] = {}
        rem = self
        while rem.terms:
            o = rem.terms[0][0]
            e = o - ob
            if e >= prec:
                break
            c = rem.terms[0][1] / lead
            quot[e] = c
            rem = rem - other.shift(e).scale(c).truncate(rem.precision)
        return self._with_terms(quot, prec)

    # -- reparametrization and roots ------------------------------------

    def reparametrize(self, u: "TruncatedSeries") -> "TruncatedSeries":
        """Substitute t <- t*(1+u(t)) with order(u) >= 1."""
        if u.terms and u.order() < 1:
            raise ValueError("reparametrization requires order(u) >= 1")
        if self.is_zero:
            return self
        prec = min(self.precision, self.order() + u.precision)
        acc: dict[int, Fraction] = {}
        for n, c in self.terms:
            if n >= prec:
                break
            # t^n (1+u)^n = sum_j C(n,j) t^n u^j, u^j of order >= j
            upow = TruncatedSeries.one(max(prec - n, 1))
            for j in range(0, prec - n):
                coeff = c * math.comb(n, j)
                for e, v in upow.terms:
                    ee = n + e
                    if ee >= prec:
                        break
                    acc[ee] = acc.get(ee, Fraction(0)) + coeff * v
                if j + 1 >= prec - n or upow.is_zero or u.is_zero:
                    break
                upow = (upow * u).truncate(max(prec - n, 1))
        return self._with_terms(acc, prec)

    def formal_root(self, m: int) -> "TruncatedSeries":
        """A series tau with tau**m == self, for monic self of order m*q."""
        o = self.order()
        if o % m != 0:
            raise NotAPerfectPower(f"order {o} not divisible by {m}")
        if self.lead_coefficient() != 1:
            raise NonMonic(
                f"leading coefficient {self.lead_coefficient()} != 1")
        q = o // m
        u = self.shift(-o) - TruncatedSeries.one(self.precision - o)
        prec = u.precision
        # (1+u)^(1/m) via the generalized binomial series
        alpha = Fraction(1, m)
        acc: dict[int, Fraction] = {0: Fraction(1)}
        coeff = Fraction(1)
        upow = TruncatedSeries.one(prec)
        for j in range(1, prec):
            coeff = coeff * (alpha - (j - 1)) / j
            upow = (upow * u).truncate(prec)
            if upow.is_zero:
                break
            for e, v in upow.terms:
                acc[e] = acc.get(e, Fraction(0)) + coeff * v
        root = self._with_terms(acc, prec)
        return root.shift(q)


def eval_poly(coeffs: Mapping[tuple[int, int], Rat], x: TruncatedSeries,
              y: TruncatedSeries) -> TruncatedSeries:
    """Evaluate sum c_ab x^a y^b at the given series."""
    xpow: dict[int, TruncatedSeries] = {0: TruncatedSeries.one(x.precision)}
    ypow: dict[int, TruncatedSeries] = {0: TruncatedSeries.one(y.precision)}

    def power(cache, s, n):
        if n not in cache:
            cache[n] = s ** n
        return cache[n]

    result = None
    for (a, b), c in sorted(coeffs.items()):
        if Fraction(c) == 0:
            continue
        term = (power(xpow, x, a) * power(ypow, y, b)).scale(c)
        result = term if result is None else result + term
    if result is None:
        return TruncatedSeries.zero(min(x.precision, y.precision))
    return result


@dataclass(frozen=True)
class DVector:
    """For each divisor d_s, the least stored exponent not divisible by d_s."""

    divisors: tuple[int, ...]
    epsilons: tuple[int, ...]

    def __post_init__(self):
        if len(self.divisors) != len(self.epsilons):
            raise ValueError("divisors and epsilons must have equal length")
        for a, b in zip(self.divisors, self.divisors[1:]):
            if b >= a:
                raise ValueError("divisors must be strictly decreasing")


def dvector(g: TruncatedSeries, divisors: Iterable[int]) -> DVector:
    """Scan the support of g (order 0, unit constant term) for epsilons."""
    if g.order() != 0:
        raise ValueError("dvector requires a nonzero constant term")
    divisors = tuple(divisors)
    epsilons = []
    for d in divisors:
        for e, _ in g.terms:
            if e % d != 0:
                epsilons.append(e)
                break
        else:
            raise EpsilonBeyondPrecision(
                f"every stored exponent is divisible by {d}")
    return DVector(divisors, tuple(epsilons))
