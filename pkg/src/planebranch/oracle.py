"""Independent brute-force verifiers.

A linear-elimination valuation oracle over truncated series, and
exhaustive semigroup closure / Apery computations.  These deliberately
share no code with the main pipelines; tests and the ``verify`` command
compare the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .branch import PlaneBranch
from .errors import InsufficientPrecision
from .semigroup import AperySet


@dataclass(frozen=True)
class ValueTable:
    """Attained values on [0, bound], inclusive at both ends."""

    bound: int
    attained: tuple[bool, ...]

    def __post_init__(self):
        if len(self.attained) != self.bound + 1 or not self.attained[0]:
            raise ValueError("table must cover 0..bound with 0 attained")

    def values(self) -> tuple[int, ...]:
        return tuple(n for n, hit in enumerate(self.attained) if hit)

    def __contains__(self, n: int) -> bool:
        return 0 <= n <= self.bound and self.attained[n]


def valuation_oracle(b: PlaneBranch, bound: int) -> ValueTable:
    """Orders attained by polynomials in x, y, by exact row reduction.

    Enumerates the monomials x^a y^c with a*v(x) + c*v(y) <= bound and
    eliminates their coefficient vectors; the pivot exponents are exactly
    the attained orders (see docs/oracle.md for why the cutoff suffices).
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if b.precision < bound + 1:
        raise InsufficientPrecision(
            f"oracle to bound {bound} needs precision >= {bound + 1}, "
            f"have {b.precision}")
    x = b.x.truncate(bound + 1)
    rows = []
    if b.y.is_zero:
        xa = x ** 0
        a = 0
        while a * x.order() <= bound:
            rows.append(_dense(xa, bound))
            xa = (xa * x).truncate(bound + 1)
            a += 1
    else:
        y = b.y.truncate(bound + 1)
        vx, vy = x.order(), y.order()
        xa = x ** 0
        for a in range(bound // vx + 1):
            xayc = xa
            for c in range((bound - a * vx) // vy + 1):
                rows.append(_dense(xayc, bound))
                xayc = (xayc * y).truncate(bound + 1)
            xa = (xa * x).truncate(bound + 1)
    return _pivot_table(rows, bound)


def _dense(s, bound: int) -> list[Fraction]:
    row = [Fraction(0)] * (bound + 1)
    for e, c in s.terms:
        if e <= bound:
            row[e] = c
    return row


def _first_nonzero(row: Sequence[Fraction], start: int) -> int:
    for i in range(start, len(row)):
        if row[i]:
            return i
    return -1


def _pivot_table(rows: list[list[Fraction]], bound: int) -> ValueTable:
    rows.sort(key=lambda r: (_first_nonzero(r, 0) % (bound + 2), r))
    pivots: dict[int, list[Fraction]] = {}
    for row in rows:
        lead = _first_nonzero(row, 0)
        while lead != -1:
            pivot = pivots.get(lead)
            if pivot is None:
                inv = 1 / row[lead]
                pivots[lead] = [c * inv for c in row]
                break
            factor = row[lead]
            for i in range(lead, bound + 1):
                if pivot[i]:
                    row[i] -= factor * pivot[i]
            lead = _first_nonzero(row, lead + 1)
    attained = [False] * (bound + 1)
    for e in pivots:
        attained[e] = True
    return ValueTable(bound, tuple(attained))


def brute_semigroup(gens: Iterable[int], bound: int) -> ValueTable:
    """Additive closure of the generators on [0, bound]."""
    gens = sorted(set(gens))
    if not gens or gens[0] < 1 or reduce(math.gcd, gens) != 1:
        raise ValueError("generators must be positive with gcd 1")
    table = [False] * (bound + 1)
    table[0] = True
    for n in range(1, bound + 1):
        table[n] = any(g <= n and table[n - g] for g in gens)
    return ValueTable(bound, tuple(table))


def brute_apery(gens: Iterable[int], a: int) -> AperySet:
    """Per-residue minima of the closure, by upward scan."""
    gens = sorted(set(gens))
    bound = (gens[0] - 1) * (gens[-1] - 1) + 1 + a if gens[0] > 1 else a
    table = brute_semigroup(gens, bound)
    if a < 1 or a not in table:
        raise ValueError(f"{a} is not a nonzero element of the closure")
    found: dict[int, int] = {}
    n = 0
    while len(found) < a:
        if n in table and n % a not in found:
            found[n % a] = n
        n += 1
    return AperySet(a, tuple(sorted(found.values())))
