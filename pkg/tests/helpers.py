"""Deterministic test corpora: plane semigroups and plane branches."""

from __future__ import annotations

import math
import random
from functools import lru_cache

from planebranch import PlaneBranch, TruncatedSeries, from_generators, realize
from planebranch.semigroup import NumericalSemigroup

SEED = 20240817


def _plane_chains(max_conductor: int, max_gen: int) -> list[tuple[int, ...]]:
    """All plane generator chains with conductor <= max_conductor and
    every generator <= max_gen."""
    chains: list[tuple[int, ...]] = []

    def search(gens: list[int], d_prev_prev: int, d_prev: int,
               partial: int) -> None:
        lo = math.lcm(d_prev_prev, gens[-1]) + 1
        for a in range(lo, max_gen + 1):
            d = math.gcd(d_prev, a)
            if d == d_prev:
                continue
            total = partial + (d_prev // d - 1) * (a - d)
            if total > max_conductor:
                continue
            if d == 1:
                chains.append(tuple(gens) + (a,))
            else:
                search(gens + [a], d_prev, d, total)

    for a0 in range(2, max_gen + 1):
        for a1 in range(a0 + 1, max_gen + 1):
            d1 = math.gcd(a0, a1)
            if d1 == a0:
                continue
            step = (a0 // d1 - 1) * (a1 - d1)
            if step > max_conductor:
                continue
            if d1 == 1:
                chains.append((a0, a1))
            else:
                search([a0, a1], a0, d1, step)
    return chains


@lru_cache(maxsize=None)
def plane_semigroup_corpus(count: int = 220,
                           max_gen: int = 120) -> tuple[NumericalSemigroup, ...]:
    """`count` plane semigroups with generators <= max_gen, smallest
    conductors first (deterministic)."""
    chains = _plane_chains(max_conductor=200, max_gen=max_gen)
    semigroups = [from_generators(c) for c in set(chains)]
    semigroups.sort(key=lambda S: (S.conductor, S.min_generators))
    assert len(semigroups) >= count
    return tuple(semigroups[:count])


@lru_cache(maxsize=None)
def plane_branch_corpus(count: int = 55) -> tuple[PlaneBranch, ...]:
    """Plane branches with multiplicity <= 8 and conductor <= 200:
    canonical realizations plus value-preserving variants."""
    rng = random.Random(SEED)
    small = [S for S in plane_semigroup_corpus()
             if S.multiplicity <= 8 and 0 < S.conductor <= 80]
    branches: list[PlaneBranch] = []
    for S in small:
        if len(branches) >= count:
            break
        b = realize(S, extra_precision=25)
        branches.append(b)
        kind = rng.randrange(3)
        if kind == 0 and len(branches) < count:
            # scaling y spans the same subring
            c = rng.choice([2, 3, -1, 5])
            branches.append(PlaneBranch(b.x, b.y.scale(c)))
        elif kind == 1 and len(branches) < count:
            # adding a term of order >= conductor preserves every value
            e = S.conductor + rng.randrange(0, 2 * S.multiplicity)
            extra = TruncatedSeries.monomial(
                e, b.y.precision, rng.choice([1, -2, 3]))
            branches.append(PlaneBranch(b.x, b.y + extra))
    assert len(branches) >= 50
    return tuple(branches[:count])
