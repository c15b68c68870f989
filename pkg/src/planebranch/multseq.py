"""Multiplicity-sequence combinatorics.

Euclidean blocks M(m,n), admissibility for branches and for plane
branches, and the conversion from characteristic exponents to the
multiplicity sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, TYPE_CHECKING

from .errors import BaseNotInSemigroup, LiftNotSemigroup, NotNonIncreasing

if TYPE_CHECKING:
    from .branch import CharExponents
    from .semigroup import NumericalSemigroup


@dataclass(frozen=True)
class MultiplicitySequence:
    """Run-length-encoded non-increasing entries > 1; the 1-tail is implicit."""

    runs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for e, h in self.runs:
            if e <= 1 or h < 1:
                raise ValueError("runs must have entry > 1 and count >= 1")
        for (a, _), (b, _) in zip(self.runs, self.runs[1:]):
            if b >= a:
                raise ValueError("run entries must strictly decrease")

    @classmethod
    def from_entries(cls, entries: Iterable[int]) -> "MultiplicitySequence":
        entries = list(entries)
        for a, b in zip(entries, entries[1:]):
            if b > a:
                raise NotNonIncreasing(
                    f"multiplicities increase: {a} then {b}")
        runs: list[tuple[int, int]] = []
        for e in entries:
            if e < 1:
                raise ValueError("multiplicities must be positive")
            if e == 1:
                continue
            if runs and runs[-1][0] == e:
                runs[-1] = (e, runs[-1][1] + 1)
            else:
                runs.append((e, 1))
        return cls(tuple(runs))

    def entries(self) -> list[int]:
        out: list[int] = []
        for e, h in self.runs:
            out.extend([e] * h)
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.runs

    def hironaka_sum(self) -> int:
        return sum(e * (e - 1) for e in self.entries())

    def __str__(self) -> str:
        if not self.runs:
            return "1"
        return ",".join(f"{e}^{h}" if h > 1 else str(e)
                        for e, h in self.runs)


def euclid_M(m: int, n: int) -> list[int]:
    """Remainder sequence with quotient multiplicities, ending at gcd(m,n)."""
    if m < 1 or n < 1:
        raise ValueError("arguments must be >= 1")
    out: list[int] = []
    a, b = m, n
    while b:
        q, r = divmod(a, b)
        out.extend([b] * q)
        a, b = b, r
    return out


def is_branch_admissible(e: MultiplicitySequence) -> bool:
    """The partial sums 0, e0, e0+e1, ... must form a numerical semigroup."""
    sums = {0}
    total = 0
    for entry in e.entries():
        total += entry
        sums.add(total)
    # past `total` the 1-tail makes every integer a partial sum
    bound = 2 * total

    def member(n: int) -> bool:
        return n in sums or n >= total

    members = [n for n in range(bound + 1) if member(n)]
    return all(member(a + b) or a + b > bound
               for a in members for b in members)


@dataclass(frozen=True)
class PlaneAdmissibility:
    verdict: bool
    reason: str
    semigroup: "NumericalSemigroup | None"
    blocks: tuple[tuple[int, int], ...]  # Euclidean block parameters (m, n)


def is_plane_admissible(e: MultiplicitySequence) -> PlaneAdmissibility:
    """Round-trip test: lift to a semigroup, require it plane, re-derive e."""
    from . import semigroup as sg

    try:
        S = sg.from_multseq(e)
    except (LiftNotSemigroup, BaseNotInSemigroup) as exc:
        return PlaneAdmissibility(False, f"lift chain fails: {exc}", None, ())
    plane = sg.is_plane(S)
    if not plane.verdict:
        return PlaneAdmissibility(
            False, f"lifted semigroup {S} is not plane: {plane.reason}", S, ())
    branch = sg.realize(S)
    if branch.multiplicity_sequence() != e:
        return PlaneAdmissibility(
            False, f"realization of {S} has multiplicity sequence "
                   f"{branch.multiplicity_sequence()}, not {e}", S, ())
    exponents = branch.normalize().standardize().characteristic_exponents()
    blocks = _blocks(exponents.delta, exponents.d)
    return PlaneAdmissibility(True, "round-trip succeeded", S, blocks)


def _blocks(delta: Sequence[int], d: Sequence[int]) -> tuple[tuple[int, int], ...]:
    if len(delta) == 1:
        return ()
    blocks = [(delta[0], delta[1])]
    for i in range(2, len(delta)):
        blocks.append((d[i - 1], delta[i] - delta[i - 1]))
    return tuple(blocks)


def from_char_exponents(exponents: "CharExponents") -> MultiplicitySequence:
    """Concatenated Euclidean blocks M(delta0,delta1), M(d1,delta2-delta1), ..."""
    entries: list[int] = []
    for m, n in _blocks(exponents.delta, exponents.d):
        entries.extend(euclid_M(m, n))
    return MultiplicitySequence.from_entries(entries)
