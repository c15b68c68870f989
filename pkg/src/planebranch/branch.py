"""Plane branches given by a parametrization (x(t), y(t)).

Normalization, standardization, characteristic exponents, blowup,
Apery bases, the value semigroup, multiplicity and conductor-degree
sequences, witness generators, and formal equivalence.

A regular branch that has been reduced to C[[t]] is represented with a
zero y series (the "0-marker"); every invariant degenerates gracefully
on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Mapping, Optional

from . import multseq as ms
from . import semigroup as sg
from .errors import (
    GcdNotOne,
    InsufficientPrecision,
    InternalMismatch,
    NonMonic,
    ZeroUpToPrecision,
)
from .series import TruncatedSeries, eval_poly

Poly = dict[tuple[int, int], Fraction]


def _poly_mul(a: Mapping[tuple[int, int], Fraction],
              b: Mapping[tuple[int, int], Fraction]) -> Poly:
    out: Poly = {}
    for (ax, ay), ac in a.items():
        for (bx, by), bc in b.items():
            key = (ax + bx, ay + by)
            out[key] = out.get(key, Fraction(0)) + ac * bc
    return {k: v for k, v in out.items() if v != 0}


def _poly_add_scaled(a: Mapping[tuple[int, int], Fraction],
                     b: Mapping[tuple[int, int], Fraction],
                     c: Fraction) -> Poly:
    out: Poly = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + c * v
    return {k: v for k, v in out.items() if v != 0}


def _poly_scale(a: Mapping[tuple[int, int], Fraction], c: Fraction) -> Poly:
    return {k: c * v for k, v in a.items()} if c != 0 else {}


@dataclass(frozen=True)
class CharExponents:
    """Characteristic exponents (delta_0..delta_k) with their gcd chain."""

    delta: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self):
        if len(self.delta) != len(self.d) or not self.delta:
            raise ValueError("delta and d must be nonempty and equally long")
        if any(b <= a for a, b in zip(self.delta, self.delta[1:])):
            raise ValueError("delta must be strictly increasing")
        if self.d[0] != self.delta[0] or self.d[-1] != 1:
            raise ValueError("gcd chain must start at delta_0 and end at 1")
        for i in range(1, len(self.d)):
            if self.d[i] != math.gcd(self.d[i - 1], self.delta[i]) \
                    or self.d[i] >= self.d[i - 1]:
                raise ValueError("gcd chain must strictly decrease")

    def conductor(self) -> int:
        """Conductor of the value semigroup, in delta terms."""
        return sum((self.d[i - 1] - self.d[i]) * self.delta[i]
                   for i in range(1, len(self.delta))) + 1 - self.d[0]

    def semigroup_generators(self) -> tuple[int, ...]:
        """The minimal generators deltabar_i by the blowup recursion."""
        delta, d = self.delta, self.d
        gens = [delta[0]]
        if len(delta) > 1:
            gens.append(delta[1])
        for i in range(2, len(delta)):
            gens.append(gens[i - 1] * (d[i - 2] // d[i - 1])
                        + delta[i] - delta[i - 1])
        return tuple(gens)


@dataclass(frozen=True)
class AperyBasisElement:
    """An expression in x, y whose order is the i-th ordered Apery value."""

    poly: tuple[tuple[tuple[int, int], Fraction], ...]
    value: int

    @classmethod
    def of(cls, poly: Mapping[tuple[int, int], Fraction],
           value: int) -> "AperyBasisElement":
        return cls(tuple(sorted(poly.items())), value)

    def as_dict(self) -> Poly:
        return dict(self.poly)


@dataclass(frozen=True)
class WitnessGenerator:
    """A monic element of the branch ring with order deltabar_i."""

    poly: tuple[tuple[tuple[int, int], Fraction], ...]
    value: int

    def as_dict(self) -> Poly:
        return dict(self.poly)


@dataclass(frozen=True)
class EquivalenceEvidence:
    equivalent: bool
    semigroups: tuple[sg.NumericalSemigroup, sg.NumericalSemigroup]
    multiplicity_sequences: tuple[ms.MultiplicitySequence,
                                  ms.MultiplicitySequence]
    conductor_degrees: tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class PlaneBranch:
    """A subring C[[x(t), y(t)]] of C[[t]]; y may be zero for a regular branch."""

    x: TruncatedSeries
    y: TruncatedSeries

    def __post_init__(self):
        if self.x.order() < 1:
            raise ValueError("x must have order >= 1")
        support = set(self.x.support)
        if not self.y.is_zero:
            if self.y.order() < 1:
                raise ValueError("y must have order >= 1")
            support |= set(self.y.support)
        if reduce(math.gcd, support) != 1:
            raise GcdNotOne(
                f"supports visible within precision have gcd "
                f"{reduce(math.gcd, support)}")

    @property
    def precision(self) -> int:
        if self.y.is_zero:
            return self.x.precision
        return min(self.x.precision, self.y.precision)

    @property
    def multiplicity(self) -> int:
        if self.y.is_zero:
            return self.x.order()
        return min(self.x.order(), self.y.order())

    @property
    def is_regular_marker(self) -> bool:
        return self.y.is_zero

    def truncate(self, precision: int) -> "PlaneBranch":
        return PlaneBranch(self.x.truncate(precision),
                           self.y.truncate(precision))

    # -- normal forms ----------------------------------------------------

    def normalize(self) -> "PlaneBranch":
        """Equivalent branch with order(x) < order(y), or a regular marker."""
        x, y = self.x, self.y
        while not y.is_zero:
            ox, oy = x.order(), y.order()
            if ox < oy:
                break
            if oy < ox:
                x, y = y, x
                continue
            c = y.lead_coefficient() / x.lead_coefficient()
            y = y - x.scale(c)
        if y.is_zero and x.order() > 1:
            raise InsufficientPrecision(
                "y cancelled to zero within precision but x is singular")
        return PlaneBranch(x, y)

    def standardize(self) -> "PlaneBranch":
        """Equivalent branch whose x is exactly t^delta_0 within precision."""
        x, y = self.x, self.y
        m = x.order()
        c = x.lead_coefficient()
        if c != 1:
            lam = _rational_root(1 / c, m)
            if lam is None:
                raise NonMonic(
                    f"leading coefficient {c} of x is not the inverse of a "
                    f"{m}-th power in Q")
            x = _dilate(x, lam)
            y = _dilate(y, lam) if not y.is_zero else y
        if len(x.terms) == 1:
            return PlaneBranch(x, y)
        tau = x.formal_root(m)  # tau has order 1 and tau^m = x
        sigma = _invert_series(tau)
        new_x = _compose(x, sigma)
        new_y = _compose(y, sigma) if not y.is_zero else y.truncate(
            new_x.precision)
        if new_x.terms != ((m, Fraction(1)),):
            raise InternalMismatch(
                f"standardization left x = {new_x.terms} instead of t^{m}")
        return PlaneBranch(new_x, new_y)

    def _standard_form(self) -> "PlaneBranch":
        """Like standardize, but never demands a rational root of the unit.

        Rescaling the generator x by its leading unit leaves the subring
        of C[[t]] (hence every invariant) unchanged, so a non-monic x is
        made monic by scaling instead of by reparametrization.
        """
        x = self.x
        c = x.lead_coefficient()
        if c != 1:
            x = x.scale(1 / c)
        b = PlaneBranch(x, self.y)
        if len(x.terms) == 1:
            return b
        return b.standardize()

    def characteristic_exponents(self) -> CharExponents:
        """Scan the support of y for the gcd-dropping exponents (x = c*t^d0)."""
        if len(self.x.terms) != 1:
            raise ValueError("characteristic exponents need a monomial x; "
                             "standardize first")
        d0 = self.x.order()
        if d0 == 1:
            return CharExponents((1,), (1,))
        delta = [d0]
        d = [d0]
        for e, _ in self.y.terms:
            g = math.gcd(d[-1], e)
            if g < d[-1]:
                delta.append(e)
                d.append(g)
                if g == 1:
                    break
        if d[-1] != 1:
            raise GcdNotOne(
                f"gcd chain stuck at {d[-1]} within precision "
                f"{self.precision}")
        return CharExponents(tuple(delta), tuple(d))

    def blowup(self) -> "PlaneBranch":
        """The quadratic transform C[[x, y/x]], normalized."""
        b = self.normalize()
        if b.is_regular_marker or b.multiplicity == 1:
            raise ValueError("blowup of a regular branch")
        quotient = b.y.divide(b.x)
        return PlaneBranch(b.x.truncate(quotient.precision + b.x.order()),
                           quotient).normalize()

    # -- invariants --------------------------------------------------------

    def multiplicity_sequence(self) -> ms.MultiplicitySequence:
        """Computed by iterated blowup and by Euclidean blocks, cross-checked.

        If the blowup chain runs out of precision, the block form (which
        only needs the characteristic exponents) is returned alone.
        """
        fast: Optional[ms.MultiplicitySequence] = None
        conductor: Optional[int] = None
        try:
            exponents = self.normalize()._standard_form() \
                .characteristic_exponents()
            fast = ms.from_char_exponents(exponents)
            conductor = exponents.conductor()
        except (InsufficientPrecision, NonMonic, GcdNotOne,
                ZeroUpToPrecision):
            pass
        try:
            slow = self._multiplicity_by_blowup(conductor)
        except (InsufficientPrecision, GcdNotOne, ZeroUpToPrecision):
            slow = None
        if fast is None and slow is None:
            raise InsufficientPrecision(
                "multiplicity sequence not determined at this precision")
        if fast is not None and slow is not None and fast != slow:
            raise InternalMismatch(
                f"blowup chain gives {slow} but Euclidean blocks give {fast}")
        return fast if fast is not None else slow

    def _multiplicity_by_blowup(
            self, conductor: Optional[int]) -> ms.MultiplicitySequence:
        entries = []
        b = self.normalize()
        while True:
            e = b.multiplicity
            if e == 1:
                break
            entries.append(e)
            if conductor is not None:
                # the remaining chain never needs exponents past the
                # current conductor; trimming keeps deep chains cheap
                b = b.truncate(min(b.precision, conductor + 2 * e + 2))
                conductor -= e * (e - 1)
            b = b.blowup()
        return ms.MultiplicitySequence.from_entries(entries)

    def value_semigroup(self, cross_check: bool = True) -> sg.NumericalSemigroup:
        """Generators by the deltabar recursion, checked against the Apery basis."""
        std = self.normalize()._standard_form()
        exponents = std.characteristic_exponents()
        S = sg.from_generators(exponents.semigroup_generators())
        m = std.multiplicity
        # the Apery cross-check is quadratic in the conductor; skip it for
        # very large inputs so pipelines stay interactive
        small = (m - 1) * S.conductor <= 6000
        if cross_check and m > 1 and small \
                and std.precision >= S.conductor + 2 * m:
            values = [el.value for el in std.apery_basis()]
            from_basis = sg.from_generators(
                sorted({m} | {v for v in values if v > 0}))
            if from_basis != S:
                raise InternalMismatch(
                    f"Apery basis generates {from_basis}, recursion gives {S}")
        return S

    def apery_basis(self) -> list[AperyBasisElement]:
        """Elements y_0..y_{m-1} whose orders form the ordered Apery set."""
        b = self.normalize()
        m = b.multiplicity
        if m == 1:
            return [AperyBasisElement.of({(0, 0): Fraction(1)}, 0)]
        exponents = b._standard_form().characteristic_exponents()
        conductor = exponents.conductor()
        if b.precision < conductor + 2 * m:
            raise InsufficientPrecision(
                f"Apery basis needs precision >= {conductor + 2 * m}, "
                f"have {b.precision}")
        x, y = b.x, b.y
        xpow: dict[int, TruncatedSeries] = {}

        def x_power(q: int) -> TruncatedSeries:
            if q not in xpow:
                xpow[q] = x ** q
            return xpow[q]

        omegas = [0]
        series_list = [TruncatedSeries.one(b.precision)]
        polys: list[Poly] = [{(0, 0): Fraction(1)}]
        by_residue = {0: 0}
        out = [AperyBasisElement.of(polys[0], 0)]
        for k in range(1, m):
            series = y * series_list[k - 1]
            poly = _poly_mul(polys[k - 1], {(0, 1): Fraction(1)})
            while True:
                try:
                    o = series.order()
                except ZeroUpToPrecision as exc:
                    raise InsufficientPrecision(
                        f"reduction of y_{k} exhausted precision") from exc
                j = by_residue.get(o % m)
                if j is None:
                    break
                q, rem = divmod(o - omegas[j], m)
                if rem or q < 0:
                    raise InternalMismatch("order below its residue minimum")
                reducer = x_power(q) * series_list[j]
                c = series.lead_coefficient() / reducer.lead_coefficient()
                series = series - reducer.scale(c).truncate(series.precision)
                poly = _poly_add_scaled(
                    poly, {(a + q, bdeg): v
                           for (a, bdeg), v in polys[j].items()}, -c)
            if o <= omegas[-1]:
                raise InternalMismatch("Apery values must strictly increase")
            by_residue[o % m] = k
            omegas.append(o)
            series_list.append(series)
            polys.append(poly)
            out.append(AperyBasisElement.of(poly, o))
        return out

    def witness_generators(self) -> list[WitnessGenerator]:
        """Monic elements f_0..f_k with orders deltabar_0..deltabar_k."""
        b = self.normalize()._standard_form()
        exponents = b.characteristic_exponents()
        gens = exponents.semigroup_generators()
        d = exponents.d
        conductor = exponents.conductor()
        if b.precision < conductor + 2 * gens[0]:
            raise InsufficientPrecision(
                f"witness generators need precision >= "
                f"{conductor + 2 * gens[0]}, have {b.precision}")
        x, y = b.x, b.y
        witnesses = [WitnessGenerator(
            tuple(sorted({(1, 0): Fraction(1)}.items())), gens[0])]
        series_list = [x]
        polys: list[Poly] = [{(1, 0): Fraction(1)}]
        if len(gens) == 1:
            return witnesses
        powers: dict[tuple[int, int], TruncatedSeries] = {}

        def witness_power(j: int, n: int) -> TruncatedSeries:
            if (j, n) not in powers:
                powers[(j, n)] = series_list[j] ** n
            return powers[(j, n)]

        for i in range(1, len(gens)):
            if i == 1:
                series, poly = y, {(0, 1): Fraction(1)}
            else:
                p = d[i - 2] // d[i - 1]
                series = series_list[i - 1] ** p
                poly = polys[i - 1]
                for _ in range(p - 1):
                    poly = _poly_mul(poly, polys[i - 1])
            while True:
                try:
                    o = series.order()
                except ZeroUpToPrecision as exc:
                    raise InsufficientPrecision(
                        f"reduction of f_{i} exhausted precision") from exc
                if o % d[i - 1] != 0:
                    break
                rep = _bounded_representation(gens[:i], o)
                prod = TruncatedSeries.one(b.precision)
                prod_poly: Poly = {(0, 0): Fraction(1)}
                for j, n in enumerate(rep):
                    if n:
                        prod = prod * witness_power(j, n)
                        for _ in range(n):
                            prod_poly = _poly_mul(prod_poly, polys[j])
                c = series.lead_coefficient() / prod.lead_coefficient()
                series = series - prod.scale(c).truncate(series.precision)
                poly = _poly_add_scaled(poly, prod_poly, -c)
            lead = series.lead_coefficient()
            series = series.scale(1 / lead)
            poly = _poly_scale(poly, 1 / lead)
            if o != gens[i]:
                raise InternalMismatch(
                    f"f_{i} stabilized at order {o}, expected {gens[i]}")
            witnesses.append(WitnessGenerator(tuple(sorted(poly.items())), o))
            series_list.append(series)
            polys.append(poly)
        return witnesses

    def singularity_invariants(self) -> tuple[tuple[int, ...],
                                              tuple[int, ...], int]:
        """Conductor-degree and singularity-degree sequences, Hironaka sum."""
        S = self.value_semigroup()
        sequence = self.multiplicity_sequence()
        degrees = [S.conductor]
        current = S
        while not current.is_natural_numbers:
            down = sg.descend(sg.apery_set(current, current.multiplicity))
            if isinstance(down, sg.DescentFailure):
                raise InternalMismatch(
                    f"descent failed on a branch semigroup: {down.reason}")
            current = sg.semigroup_from_apery(down)
            degrees.append(current.conductor)
        hironaka = sequence.hironaka_sum()
        if degrees[0] != hironaka:
            raise InternalMismatch(
                f"conductor {degrees[0]} != Hironaka sum {hironaka}")
        if any(c % 2 for c in degrees):
            raise InternalMismatch("conductor degrees must be even")
        return tuple(degrees), tuple(c // 2 for c in degrees), hironaka

    def evaluate(self, poly: Mapping[tuple[int, int], Fraction]
                 ) -> TruncatedSeries:
        return eval_poly(poly, self.x, self.y)


def formally_equivalent(b1: PlaneBranch, b2: PlaneBranch
                        ) -> EquivalenceEvidence:
    """Equal value semigroups <=> equal multiplicity sequences
    <=> equal conductor-degree sequences; all three are computed and
    must agree."""
    s1, s2 = b1.value_semigroup(), b2.value_semigroup()
    m1, m2 = b1.multiplicity_sequence(), b2.multiplicity_sequence()
    c1 = b1.singularity_invariants()[0]
    c2 = b2.singularity_invariants()[0]
    verdicts = (s1 == s2, m1 == m2, c1 == c2)
    if len(set(verdicts)) != 1:
        raise InternalMismatch(
            f"equivalence certificates disagree: {verdicts}")
    return EquivalenceEvidence(verdicts[0], (s1, s2), (m1, m2), (c1, c2))


def _integer_root(n: int, m: int) -> Optional[int]:
    if n < 0:
        if m % 2 == 0:
            return None
        r = _integer_root(-n, m)
        return -r if r is not None else None
    r = round(n ** (1.0 / m)) if n else 0
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** m == n:
            return cand
    return None


def _rational_root(c: Fraction, m: int) -> Optional[Fraction]:
    num = _integer_root(c.numerator, m)
    den = _integer_root(c.denominator, m)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _dilate(s: TruncatedSeries, lam: Fraction) -> TruncatedSeries:
    """Substitute t <- lam*t (lam a nonzero rational)."""
    return TruncatedSeries(
        tuple((e, c * lam ** e) for e, c in s.terms), s.precision)


def _derivative(s: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(
        tuple((e - 1, e * c) for e, c in s.terms if e >= 1),
        max(s.precision - 1, 1))


def _compose(s: TruncatedSeries, sigma: TruncatedSeries) -> TruncatedSeries:
    """s(sigma(t)) by Horner over the sparse support; order(sigma) = 1."""
    prec = min(s.precision, sigma.precision)
    sigma = sigma.truncate(prec)
    result = TruncatedSeries.zero(prec)
    prev = None
    for e, c in reversed(s.terms):
        if prev is not None:
            result = result * (sigma ** (prev - e))
        result = result + TruncatedSeries.make({0: c}, prec)
        prev = e
    if prev is None:
        return result
    return (result * (sigma ** prev)).truncate(prec)


def _invert_series(tau: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of tau (order 1, unit lead) by Newton steps."""
    if tau.order() != 1 or tau.lead_coefficient() != 1:
        raise NonMonic("inversion needs a series t + higher order terms")
    prec = tau.precision
    sigma = TruncatedSeries.monomial(1, min(2, prec))
    correct = 2
    while correct < prec:
        correct = min(2 * correct, prec)
        # widening the precision is sound here: the Newton step below
        # recomputes every coefficient up to `correct`
        sigma = TruncatedSeries(sigma.terms, correct)
        t_k = tau.truncate(correct)
        err = _compose(t_k, sigma) - TruncatedSeries.monomial(1, correct)
        slope = _compose(_derivative(t_k), sigma)
        sigma = (sigma - err.divide(slope).truncate(correct)).truncate(correct)
    return sigma


def _bounded_representation(gens: tuple[int, ...], value: int) -> tuple[int, ...]:
    """Coordinates n with sum n_j*gens_j = value, n_j < d_{j-1}/d_j for j >= 1.

    The generators need not be coprime; value must be a multiple of their
    gcd and at least the corresponding d-conductor.
    """
    d = []
    g = 0
    for a in gens:
        g = math.gcd(g, a)
        d.append(g)
    if value % d[-1] != 0:
        raise InternalMismatch(f"{value} not a multiple of gcd {d[-1]}")
    scale = d[-1]
    v = value // scale
    scaled = [a // scale for a in gens]
    dd = [a // scale for a in d]
    coords = [0] * len(gens)
    for j in range(len(gens) - 1, 0, -1):
        modulus = dd[j - 1]
        ratio = modulus // dd[j]
        inv = pow((scaled[j] // dd[j]) % ratio, -1, ratio) if ratio > 1 else 0
        n = ((v // dd[j]) * inv) % ratio if ratio > 1 else 0
        coords[j] = n
        v -= n * scaled[j]
    if v < 0 or v % scaled[0] != 0:
        raise InternalMismatch(
            f"no bounded representation of {value} over {gens}")
    coords[0] = v // scaled[0]
    return tuple(coords)
