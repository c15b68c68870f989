"""Numerical semigroup arithmetic.

Membership, Apery sets, Frobenius number and conductor, symmetry,
d-conductors, the descend/lift pair that mirrors blowup at the semigroup
level, the plane-branch criteria, and realization of a plane semigroup
as an explicit parametrization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, TYPE_CHECKING, Union

from .errors import (
    BaseNotInSemigroup,
    LiftNotSemigroup,
    NotNumericalSemigroup,
    NotPlane,
)

if TYPE_CHECKING:
    from .branch import CharExponents, PlaneBranch
    from .multseq import MultiplicitySequence


@dataclass(frozen=True)
class NumericalSemigroup:
    """Minimal generators, conductor, and a membership table below the conductor."""

    min_generators: tuple[int, ...]
    conductor: int
    members_below_conductor: tuple[bool, ...]

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        if n >= self.conductor:
            return True
        return self.members_below_conductor[n]

    def __contains__(self, n: int) -> bool:
        return self.contains(n)

    @property
    def frobenius(self) -> int:
        return self.conductor - 1

    @property
    def multiplicity(self) -> int:
        return self.min_generators[0]

    @property
    def is_natural_numbers(self) -> bool:
        return self.conductor == 0

    def gaps(self) -> tuple[int, ...]:
        return tuple(n for n in range(self.conductor) if not self.contains(n))

    @property
    def genus(self) -> int:
        return len(self.gaps())

    def d_chain(self) -> tuple[int, ...]:
        chain = []
        g = 0
        for a in self.min_generators:
            g = math.gcd(g, a)
            chain.append(g)
        return tuple(chain)

    def elements(self, bound: int) -> tuple[int, ...]:
        return tuple(n for n in range(bound + 1) if self.contains(n))

    def __str__(self) -> str:
        return "<" + ",".join(str(a) for a in self.min_generators) + ">"


@dataclass(frozen=True)
class AperySet:
    """The ordered Apery set of a semigroup with respect to a member `base`."""

    base: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.base < 1:
            raise ValueError("base must be >= 1")
        if len(self.values) != self.base or self.values[0] != 0:
            raise ValueError("need exactly `base` values starting at 0")
        if sorted(self.values) != list(self.values):
            raise ValueError("ordered Apery set must be sorted")
        if len({v % self.base for v in self.values}) != self.base:
            raise ValueError("residues mod base must be pairwise distinct")


@dataclass(frozen=True)
class DescentFailure:
    """Verdict when the candidate values are not an ordered Apery set."""

    reason: str  # "negative_value" | "not_increasing" | "not_a_semigroup"
    candidate: tuple[int, ...]


def from_generators(gens: Iterable[int]) -> NumericalSemigroup:
    """Closure of the generators; gcd must be 1."""
    gens = sorted(set(gens))
    if not gens or gens[0] < 1:
        raise NotNumericalSemigroup("generators must be positive")
    if reduce(math.gcd, gens) != 1:
        raise NotNumericalSemigroup(f"gcd of {gens} is not 1")
    if gens[0] == 1:
        return NumericalSemigroup((1,), 0, ())
    # Frobenius < (g0-1)(gmax-1) for any gcd-1 set, so this bound is safe.
    bound = (gens[0] - 1) * (gens[-1] - 1) + 1
    table = [False] * (bound + gens[-1] + 1)
    table[0] = True
    for n in range(1, len(table)):
        for g in gens:
            if g > n:
                break
            if table[n - g]:
                table[n] = True
                break
    conductor = 0
    for n in range(len(table) - 1, -1, -1):
        if not table[n]:
            conductor = n + 1
            break
    minimal = []
    for g in gens:
        if not any(table[a] and table[g - a] for a in range(1, g // 2 + 1)):
            minimal.append(g)
    return NumericalSemigroup(tuple(minimal), conductor,
                              tuple(table[:conductor]))


def apery_set(S: NumericalSemigroup, a: int) -> AperySet:
    """The a smallest elements of S in distinct residue classes mod a, sorted."""
    if a < 1 or not S.contains(a):
        raise BaseNotInSemigroup(f"{a} is not a nonzero element of {S}")
    values = []
    for r in range(a):
        n = r
        while not S.contains(n):
            n += a
        values.append(n)
    return AperySet(a, tuple(sorted(values)))


def frobenius_and_conductor(S: NumericalSemigroup) -> tuple[int, int]:
    return S.frobenius, S.conductor


def is_symmetric(S: NumericalSemigroup) -> bool:
    g = S.frobenius
    return all(S.contains(z) != S.contains(g - z) for z in range(g + 1))


def d_conductor(S: NumericalSemigroup, d: int) -> int:
    """Least nd such that every multiple md with m >= n lies in S."""
    if d < 1:
        raise ValueError("d must be >= 1")
    m = (S.conductor - 1) // d if S.conductor > 0 else -1
    while m >= 0 and S.contains(m * d):
        m -= 1
    return (m + 1) * d


def semigroup_from_apery(A: AperySet) -> NumericalSemigroup:
    """Reconstruct the semigroup whose ordered Apery set wrt A.base is A."""
    by_residue = {v % A.base: v for v in A.values}
    top = A.values[-1]

    def member(n: int) -> bool:
        return n >= by_residue[n % A.base]

    gens = []
    for n in range(1, top + 1):
        if member(n) and not any(
                member(a) and member(n - a) for a in range(1, n // 2 + 1)):
            gens.append(n)
    return from_generators(gens or [1])


def _is_apery_of_semigroup(base: int, values: Sequence[int]) -> bool:
    """Closure check for a candidate ordered Apery value set."""
    by_residue = {v % base: v for v in values}
    for i, v in enumerate(values):
        for w in values[i:]:
            s = v + w
            if s < by_residue[s % base]:
                return False
    return True


def descend(A: AperySet) -> Union[AperySet, DescentFailure]:
    """One semigroup-level blowup step: candidate values omega_i - i*m."""
    m = A.base
    candidate = tuple(v - i * m for i, v in enumerate(A.values))
    if any(v < 0 for v in candidate):
        return DescentFailure("negative_value", candidate)
    if any(b <= a for a, b in zip(candidate, candidate[1:])):
        return DescentFailure("not_increasing", candidate)
    if not _is_apery_of_semigroup(m, candidate):
        return DescentFailure("not_a_semigroup", candidate)
    return AperySet(m, candidate)


def lift(A: AperySet, m: int) -> AperySet:
    """Inverse of descend: values omega'_i + i*m, validated for closure."""
    if m != A.base:
        raise ValueError("lift base must equal the Apery base")
    values = tuple(v + i * m for i, v in enumerate(A.values))
    if not _is_apery_of_semigroup(m, values):
        raise LiftNotSemigroup(
            f"lift of {A.values} by {m} is not additively closed")
    return AperySet(m, values)


@dataclass(frozen=True)
class PlaneVerdict:
    verdict: bool
    reason: str


def is_plane(S: NumericalSemigroup) -> PlaneVerdict:
    """Closed-form plane-branch criterion on the minimal generators."""
    gens = S.min_generators
    d = S.d_chain()
    for i in range(1, len(d)):
        if not d[i] < d[i - 1]:
            return PlaneVerdict(False, f"d_{i} = {d[i]} does not drop below "
                                       f"d_{i-1} = {d[i-1]}")
    for i in range(2, len(gens)):
        bound = math.lcm(d[i - 2], gens[i - 1])
        if not gens[i] > bound:
            return PlaneVerdict(
                False, f"a_{i} = {gens[i]} <= lcm(d_{i-2}, a_{i-1}) = {bound}")
    return PlaneVerdict(True, "generator conditions hold")


@dataclass(frozen=True)
class DescentStep:
    semigroup: NumericalSemigroup
    multiplicity: int
    apery: tuple[int, ...]
    result: Union[tuple[int, ...], DescentFailure]


@dataclass(frozen=True)
class DescentTrace:
    verdict: bool
    reason: str
    chain: tuple[int, ...]
    steps: tuple[DescentStep, ...]


def is_plane_iterative(S: NumericalSemigroup) -> DescentTrace:
    """Repeated descend at the multiplicity; the chain must be plane-admissible."""
    from .errors import InternalMismatch
    from .multseq import MultiplicitySequence, is_plane_admissible

    steps = []
    chain = []
    current = S
    verdict = True
    reason = "reached N with a plane-admissible multiplicity chain"
    while not current.is_natural_numbers:
        m = current.multiplicity
        A = apery_set(current, m)
        down = descend(A)
        if isinstance(down, DescentFailure):
            steps.append(DescentStep(current, m, A.values, down))
            verdict = False
            reason = f"descent failed: {down.reason} {down.candidate}"
            break
        steps.append(DescentStep(current, m, A.values, down.values))
        chain.append(m)
        current = semigroup_from_apery(down)
    else:
        check = is_plane_admissible(MultiplicitySequence.from_entries(chain))
        if not check.verdict:
            verdict = False
            reason = (f"multiplicity sequence {','.join(map(str, chain))} "
                      f"not plane-admissible: {check.reason}")
    closed_form = is_plane(S)
    if closed_form.verdict != verdict:
        raise InternalMismatch(
            f"iterative verdict {verdict} disagrees with the generator "
            f"criterion {closed_form.verdict} on {S}")
    return DescentTrace(verdict, reason, tuple(chain), tuple(steps))


def realize(S: NumericalSemigroup, extra_precision: int = 0) -> "PlaneBranch":
    """A plane branch whose value semigroup is S (plane S only)."""
    from .branch import PlaneBranch
    from .series import TruncatedSeries

    check = is_plane(S)
    if not check.verdict:
        raise NotPlane(f"{S}: {check.reason}")
    gens = S.min_generators
    d = S.d_chain()
    precision = S.conductor + 2 * gens[0] + extra_precision
    if S.is_natural_numbers:
        return PlaneBranch(TruncatedSeries.monomial(1, max(precision, 2)),
                           TruncatedSeries.zero(max(precision, 2)))
    exponents = []
    e = 0
    for i in range(1, len(gens)):
        e += gens[i]
        if i >= 2:
            e -= math.lcm(d[i - 2], gens[i - 1])
        exponents.append(e)
    x = TruncatedSeries.monomial(gens[0], precision)
    y = TruncatedSeries.make({e: 1 for e in exponents}, precision)
    return PlaneBranch(x, y)


def from_multseq(e: "MultiplicitySequence") -> NumericalSemigroup:
    """Rebuild the semigroup by lifting from N through the entries, last first."""
    S = from_generators([1])
    for m in reversed(e.entries()):
        if not S.contains(m):
            raise BaseNotInSemigroup(
                f"lift base {m} is not in the intermediate semigroup {S}")
        A = apery_set(S, m)
        S = semigroup_from_apery(lift(A, m))
    return S


@dataclass(frozen=True)
class ConductorForms:
    c_via_deltabar: int
    c_via_delta: int
    c_d: tuple[tuple[int, int], ...]  # (d_i, c_{d_i})


def conductor_closed_forms(S: NumericalSemigroup,
                           exponents: "CharExponents") -> ConductorForms:
    """Both closed conductor forms and the c_{d_i} family, cross-checked."""
    from .errors import InternalMismatch

    gens = S.min_generators
    d = S.d_chain()
    delta = exponents.delta
    k = len(gens) - 1
    c_bar = sum((d[i - 1] // d[i] - 1) * (gens[i] - d[i])
                for i in range(1, k + 1))
    c_delta = sum((exponents.d[i - 1] - exponents.d[i]) * delta[i]
                  for i in range(1, len(delta))) + 1 - exponents.d[0]
    family = []
    for i in range(k + 1):
        closed = sum((d[j - 1] // d[j] - 1) * (gens[j] - d[j])
                     for j in range(1, i + 1))
        brute = d_conductor(S, d[i])
        if closed != brute:
            raise InternalMismatch(
                f"c_d({d[i]}) closed form {closed} != brute scan {brute}")
        family.append((d[i], closed))
    if c_bar != S.conductor or c_delta != S.conductor:
        raise InternalMismatch(
            f"closed forms {c_bar}, {c_delta} != conductor {S.conductor}")
    return ConductorForms(c_bar, c_delta, tuple(family))
