"""Semigroup-ring presentations for plane semigroups.

Unique bounded exponent representations, the minimal lattice vectors,
the complete-intersection binomial relations, the associated graded
relations, and the rational generating function with exact expansion.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import InternalMismatch, NotMember, NotPlane
from .semigroup import NumericalSemigroup, is_plane


@dataclass(frozen=True)
class ExponentVector:
    """Coordinates (n_0, ..., n_k) over the minimal generators."""

    n: tuple[int, ...]

    def __post_init__(self):
        if any(v < 0 for v in self.n):
            raise ValueError("coordinates must be nonnegative")

    def value(self, gens: tuple[int, ...]) -> int:
        return sum(a * g for a, g in zip(self.n, gens))

    def total_degree(self) -> int:
        return sum(self.n)


@dataclass(frozen=True)
class Relation:
    """Y_j ** power = monomial, with the monomial supported on indices < j."""

    index: int
    power: int
    monomial: ExponentVector


@dataclass(frozen=True)
class Presentation:
    generators: tuple[int, ...]
    relations: tuple[Relation, ...]
    best_effort: bool = False

    def __post_init__(self):
        for rel in self.relations:
            lhs = rel.power * self.generators[rel.index]
            if lhs != rel.monomial.value(self.generators):
                raise ValueError(f"degree balance fails for Y_{rel.index}")
            if any(rel.monomial.n[i] for i in range(rel.index, len(self.generators))):
                raise ValueError(
                    f"monomial of Y_{rel.index} uses indices >= {rel.index}")


def _quotients(gens: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    d = []
    g = 0
    for a in gens:
        g = math.gcd(g, a)
        d.append(g)
    quotients = tuple(d[i - 1] // d[i] for i in range(1, len(d)))
    return tuple(d), quotients


def normal_form(S: NumericalSemigroup, value: int) -> ExponentVector:
    """The unique representation with n_i < d_{i-1}/d_i for i >= 1.

    Found by residue extraction from the top of the gcd chain for plane S;
    for non-plane S a bounded brute search is used instead.
    """
    if value < 0 or not S.contains(value):
        raise NotMember(f"{value} is not in {S}")
    gens = S.min_generators
    d, quotients = _quotients(gens)
    if is_plane(S).verdict:
        coords = [0] * len(gens)
        v = value
        for j in range(len(gens) - 1, 0, -1):
            ratio = quotients[j - 1]
            if ratio > 1:
                inv = pow((gens[j] // d[j]) % ratio, -1, ratio)
                coords[j] = ((v // d[j]) * inv) % ratio
            v -= coords[j] * gens[j]
        if v < 0 or v % gens[0] != 0:
            raise InternalMismatch(
                f"residue extraction failed on {value} in {S}")
        coords[0] = v // gens[0]
        return ExponentVector(tuple(coords))
    for tail in itertools.product(*(range(q) for q in quotients)):
        rest = value - sum(n * g for n, g in zip(tail, gens[1:]))
        if rest >= 0 and rest % gens[0] == 0:
            return ExponentVector((rest // gens[0],) + tail)
    raise NotMember(f"no bounded representation of {value} over {gens}")


def minimals(S: NumericalSemigroup) -> list[ExponentVector]:
    """The unit-direction vectors with entry d_{j-1}/d_j at position j."""
    if not is_plane(S).verdict:
        raise NotPlane(f"{S} is not plane")
    gens = S.min_generators
    _, quotients = _quotients(gens)
    out = []
    for j in range(1, len(gens)):
        n = [0] * len(gens)
        n[j] = quotients[j - 1]
        out.append(ExponentVector(tuple(n)))
    return out


def relations(S: NumericalSemigroup) -> Presentation:
    """The k binomial relations Y_j^{d_{j-1}/d_j} = m_j.

    For plane S the monomials are the bounded normal forms and the result
    is the complete-intersection presentation.  For non-plane S with at
    most three generators a brute bounded search is attempted and the
    result is flagged best-effort.
    """
    gens = S.min_generators
    d, quotients = _quotients(gens)
    plane = is_plane(S).verdict
    if not plane and len(gens) > 3:
        raise NotPlane(f"{S} is not plane and has more than 3 generators")
    rels = []
    for j in range(1, len(gens)):
        target = quotients[j - 1] * gens[j]
        if plane:
            mono = normal_form(S, target)
            if any(mono.n[i] for i in range(j, len(gens))):
                raise InternalMismatch(
                    f"normal form of {target} uses indices >= {j}")
        else:
            mono = _brute_prefix_form(gens, quotients, j, target)
            if mono is None:
                raise NotPlane(
                    f"no bounded relation for Y_{j} in non-plane {S}")
        rels.append(Relation(j, quotients[j - 1], mono))
    return Presentation(gens, tuple(rels), best_effort=not plane)


def _brute_prefix_form(gens: tuple[int, ...], quotients: tuple[int, ...],
                       j: int, value: int) -> ExponentVector | None:
    for tail in itertools.product(*(range(quotients[i - 1])
                                    for i in range(1, j))):
        rest = value - sum(n * g for n, g in zip(tail, gens[1:j]))
        if rest >= 0 and rest % gens[0] == 0:
            coords = (rest // gens[0],) + tail + (0,) * (len(gens) - j)
            return ExponentVector(coords)
    return None


def graded_relations(S: NumericalSemigroup) -> list[tuple[int, int]]:
    """Initial forms: the pure powers Y_j^{d_{j-1}/d_j}."""
    if not is_plane(S).verdict:
        raise NotPlane(f"{S} is not plane")
    out = []
    for rel in relations(S).relations:
        if rel.monomial.total_degree() <= rel.power:
            raise InternalMismatch(
                f"initial form of Y_{rel.index} relation is not the pure "
                f"power: monomial degree {rel.monomial.total_degree()} "
                f"<= {rel.power}")
        out.append((rel.index, rel.power))
    return out


@dataclass(frozen=True)
class GeneratingFunction:
    """Product of (1-t^e) factors over a like product: sum_{i in S} t^i."""

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def __str__(self) -> str:
        num = "".join(f"(1-t^{e})" for e in self.numerator) or "1"
        den = "".join(f"(1-t^{e})" for e in self.denominator)
        return f"{num}/{den}"


def generating_function(S: NumericalSemigroup) -> GeneratingFunction:
    if not is_plane(S).verdict:
        raise NotPlane(f"{S} is not plane")
    gens = S.min_generators
    if S.is_natural_numbers:
        return GeneratingFunction((), (1,))
    _, quotients = _quotients(gens)
    numerator = tuple(q * g for q, g in zip(quotients, gens[1:]))
    return GeneratingFunction(numerator, gens)


def expand_gf(gf: GeneratingFunction, N: int) -> list[int]:
    """Exact expansion of the rational function to degree N inclusive."""
    if N < 1:
        raise ValueError("N must be >= 1")
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    for e in gf.numerator:
        for i in range(N, e - 1, -1):
            coeffs[i] -= coeffs[i - e]
    for e in gf.denominator:
        for i in range(e, N + 1):
            coeffs[i] += coeffs[i - e]
    return coeffs
