"""Command-line interface.

Exit codes: 0 success, 1 negative verdict (not plane, not equivalent,
not admissible, verification mismatch), 2 input error, 3 insufficient
precision.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import branch as br
from . import multseq as ms
from . import oracle as orc
from . import parser as psr
from . import presentation as pst
from . import semigroup as sg
from .errors import (
    BranchError,
    GcdNotOne,
    InsufficientPrecision,
    NotMember,
    NotNumericalSemigroup,
    ParseError,
    SemigroupError,
    SeriesError,
    ZeroUpToPrecision,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_PRECISION = 3


@dataclass(frozen=True)
class InvariantsReport:
    input: str
    delta: tuple[int, ...]
    d: tuple[int, ...]
    generators: tuple[int, ...]
    conductor: int
    frobenius: int
    gaps: int
    apery: tuple[int, ...]
    multiplicity_sequence: ms.MultiplicitySequence
    conductor_degrees: tuple[int, ...]
    singularity_degrees: tuple[int, ...]
    hironaka_sum: int
    relations: tuple[str, ...]
    generating_function: str


def _emit(args, report: dict | InvariantsReport, lines: list[str]) -> None:
    if args.json:
        print(psr.render_json(report))
    else:
        print("\n".join(lines))


def _monomial_str(vec: pst.ExponentVector) -> str:
    parts = []
    for i, n in enumerate(vec.n):
        if n == 1:
            parts.append(f"Y{i}")
        elif n > 1:
            parts.append(f"Y{i}^{n}")
    return "*".join(parts) or "1"


def _relation_strs(S: sg.NumericalSemigroup) -> tuple[str, ...]:
    if not sg.is_plane(S).verdict:
        return ()
    return tuple(f"Y{rel.index}^{rel.power} = {_monomial_str(rel.monomial)}"
                 for rel in pst.relations(S).relations)


def _cmd_invariants(args) -> int:
    b = psr.parse_branch(args.branch)
    std = b.normalize().standardize()
    exponents = std.characteristic_exponents()
    S = b.value_semigroup()
    sequence = b.multiplicity_sequence()
    degrees, halves, hironaka = b.singularity_invariants()
    apery = sg.apery_set(S, S.multiplicity).values if not S.is_natural_numbers \
        else (0,)
    if S.genus * 2 != hironaka:
        raise BranchError(
            f"gap count {S.genus} is not half the Hironaka sum {hironaka}")
    report = InvariantsReport(
        input=psr.render_branch(b),
        delta=exponents.delta,
        d=exponents.d,
        generators=S.min_generators,
        conductor=S.conductor,
        frobenius=S.frobenius,
        gaps=S.genus,
        apery=apery,
        multiplicity_sequence=sequence,
        conductor_degrees=degrees,
        singularity_degrees=halves,
        hironaka_sum=hironaka,
        relations=_relation_strs(S),
        generating_function=str(pst.generating_function(S))
        if sg.is_plane(S).verdict else "",
    )
    _emit(args, report, [
        f"input: {report.input}",
        f"characteristic exponents: {','.join(map(str, report.delta))}"
        f" (gcd chain {','.join(map(str, report.d))})",
        f"semigroup: {S} conductor {S.conductor} frobenius {S.frobenius}"
        f" gaps {S.genus}",
        f"apery set wrt {S.min_generators[0]}: "
        f"{{{','.join(map(str, report.apery))}}}",
        f"multiplicity sequence: {sequence}",
        f"conductor degrees: {','.join(map(str, degrees))}",
        f"singularity degrees: {','.join(map(str, halves))}",
        f"hironaka sum: {hironaka}",
        *(f"relation: {r}" for r in report.relations),
        f"generating function: {report.generating_function}",
    ])
    return EXIT_OK


def _cmd_check_plane(args) -> int:
    S = sg.from_generators(psr.parse_semigroup(args.semigroup))
    verdict = sg.is_plane(S)
    trace = sg.is_plane_iterative(S)
    report = {
        "semigroup": S,
        "plane": verdict.verdict,
        "reason": trace.reason if not verdict.verdict else verdict.reason,
        "criterion_reason": verdict.reason,
        "descent_chain": list(trace.chain),
        "descent_steps": [
            {"semigroup": step.semigroup, "multiplicity": step.multiplicity,
             "apery": list(step.apery),
             "result": step.result if not isinstance(step.result, tuple)
             else list(step.result)}
            for step in trace.steps],
    }
    lines = [f"semigroup: {S}",
             f"plane: {verdict.verdict}",
             f"reason: {report['reason']}",
             f"descent chain: {','.join(map(str, trace.chain)) or '(empty)'}"]
    if verdict.verdict and not S.is_natural_numbers:
        b = sg.realize(S)
        report["realization"] = psr.render_branch(b)
        lines.append(f"realization: {report['realization']}")
    _emit(args, report, lines)
    return EXIT_OK if verdict.verdict else EXIT_NEGATIVE


def _cmd_realize(args) -> int:
    S = sg.from_generators(psr.parse_semigroup(args.semigroup))
    b = sg.realize(S)
    report = {"semigroup": S, "realization": psr.render_branch(b)}
    _emit(args, report, [report["realization"]])
    return EXIT_OK


def _cmd_equiv(args) -> int:
    b1 = psr.parse_branch(args.branch1)
    b2 = psr.parse_branch(args.branch2)
    ev = br.formally_equivalent(b1, b2)
    report = {
        "equivalent": ev.equivalent,
        "semigroups": list(ev.semigroups),
        "multiplicity_sequences": list(ev.multiplicity_sequences),
        "conductor_degrees": [list(c) for c in ev.conductor_degrees],
    }
    _emit(args, report, [
        f"equivalent: {ev.equivalent}",
        f"semigroups: {ev.semigroups[0]} vs {ev.semigroups[1]}",
        f"multiplicity sequences: {ev.multiplicity_sequences[0]} vs "
        f"{ev.multiplicity_sequences[1]}",
        f"conductor degrees: "
        f"{','.join(map(str, ev.conductor_degrees[0]))} vs "
        f"{','.join(map(str, ev.conductor_degrees[1]))}",
    ])
    return EXIT_OK if ev.equivalent else EXIT_NEGATIVE


def _cmd_multseq(args) -> int:
    e = psr.parse_multseq(args.sequence)
    branch_ok = ms.is_branch_admissible(e)
    plane = ms.is_plane_admissible(e)
    report = {
        "sequence": e,
        "branch_admissible": branch_ok,
        "plane_admissible": plane.verdict,
        "reason": plane.reason,
        "semigroup": plane.semigroup,
        "blocks": [list(b) for b in plane.blocks],
    }
    _emit(args, report, [
        f"sequence: {e}",
        f"branch admissible: {branch_ok}",
        f"plane admissible: {plane.verdict}",
        f"reason: {plane.reason}",
        f"semigroup: {plane.semigroup if plane.semigroup else '(none)'}",
    ])
    return EXIT_OK if plane.verdict else EXIT_NEGATIVE


def _cmd_present(args) -> int:
    S = sg.from_generators(psr.parse_semigroup(args.semigroup))
    pres = pst.relations(S)
    report = {
        "semigroup": S,
        "relations": pres,
        "best_effort": pres.best_effort,
    }
    lines = [f"semigroup: {S}"]
    if not pres.best_effort:
        report["minimals"] = pst.minimals(S)
        report["graded"] = [list(g) for g in pst.graded_relations(S)]
    for rel in pres.relations:
        lines.append(f"Y{rel.index}^{rel.power} = {_monomial_str(rel.monomial)}")
    if pres.best_effort:
        lines.append("note: semigroup is not plane; relations are best-effort")
    _emit(args, report, lines)
    return EXIT_OK


def _cmd_genfun(args) -> int:
    S = sg.from_generators(psr.parse_semigroup(args.semigroup))
    gf = pst.generating_function(S)
    report = {"semigroup": S, "numerator": list(gf.numerator),
              "denominator": list(gf.denominator), "text": str(gf)}
    lines = [str(gf)]
    if args.expand:
        coeffs = pst.expand_gf(gf, args.expand)
        mismatch = [n for n, c in enumerate(coeffs)
                    if c != (1 if S.contains(n) else 0)]
        if mismatch:
            raise BranchError(
                f"expansion disagrees with membership at {mismatch[:5]}")
        report["expansion"] = coeffs
        lines.append("expansion: " + ",".join(map(str, coeffs)))
    _emit(args, report, lines)
    return EXIT_OK


def _cmd_verify(args) -> int:
    b = psr.parse_branch(args.branch)
    bound = args.bound if args.bound else b.precision - 1
    table = orc.valuation_oracle(b, bound)
    S = b.value_semigroup()
    expected = orc.brute_semigroup(S.min_generators, bound)
    agree = table.attained == expected.attained
    report = {"branch": psr.render_branch(b), "bound": bound,
              "semigroup": S, "agree": agree}
    lines = [f"semigroup: {S}", f"oracle bound: {bound}",
             f"agree: {agree}"]
    if not agree:
        diff = [n for n in range(bound + 1)
                if (n in table) != (n in expected)]
        report["differences"] = diff
        lines.append(f"differences: {diff}")
    _emit(args, report, lines)
    return EXIT_OK if agree else EXIT_NEGATIVE


def _cmd_descend(args) -> int:
    S = sg.from_generators(psr.parse_semigroup(args.semigroup))
    trace = sg.is_plane_iterative(S)
    report = {
        "semigroup": S,
        "plane": trace.verdict,
        "reason": trace.reason,
        "chain": list(trace.chain),
        "steps": [
            {"semigroup": step.semigroup, "multiplicity": step.multiplicity,
             "apery": list(step.apery),
             "result": step.result if not isinstance(step.result, tuple)
             else list(step.result)}
            for step in trace.steps],
    }
    lines = [f"semigroup: {S}"]
    for step in trace.steps:
        result = (f"-> {','.join(map(str, step.result))}"
                  if isinstance(step.result, tuple)
                  else f"FAILED: {step.result.reason} {step.result.candidate}")
        lines.append(f"  {step.semigroup} apery wrt {step.multiplicity}: "
                     f"{{{','.join(map(str, step.apery))}}} {result}")
    lines.append(f"chain: {','.join(map(str, trace.chain)) or '(empty)'}")
    lines.append(f"plane: {trace.verdict} ({trace.reason})")
    _emit(args, report, lines)
    return EXIT_OK if trace.verdict else EXIT_NEGATIVE


def catalog_enumerate(max_conductor: int, out_path=None,
                      include_regular: bool = False) -> int:
    """Write all plane semigroups with conductor <= max_conductor as JSONL."""
    import math

    if max_conductor < 2:
        raise ValueError("max_conductor must be >= 2")
    chains: list[tuple[int, ...]] = []

    def search(gens: list[int], d_prev_prev: int, d_prev: int,
               partial: int) -> None:
        # next generator a > lcm(d_prev_prev, a_last), gcd drop required
        lo = math.lcm(d_prev_prev, gens[-1]) + 1
        a = lo
        while True:
            d = math.gcd(d_prev, a)
            if d < d_prev:
                step = (d_prev // d - 1) * (a - d)
                total = partial + step
                if total <= max_conductor:
                    if d == 1:
                        chains.append(tuple(gens) + (a,))
                    else:
                        search(gens + [a], d_prev, d, total)
            # minimal possible future contribution grows with a
            if a - d_prev >= max_conductor - partial + d_prev:
                break
            a += 1

    for a0 in range(2, max_conductor + 2):
        for a1 in range(a0 + 1, a0 + max_conductor + 1):
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

    records = []
    if include_regular:
        records.append((
            (1,),
            {"generators": [1], "delta": [1], "conductor": 0,
             "multiplicity_sequence": {"runs": []},
             "generating_function": {"numerator": [], "denominator": [1]}}))
    for gens in sorted(set(chains)):
        S = sg.from_generators(gens)
        if S.conductor > max_conductor or not sg.is_plane(S).verdict:
            continue
        b = sg.realize(S)
        exponents = b.normalize().standardize().characteristic_exponents()
        gf = pst.generating_function(S)
        records.append((gens, {
            "generators": list(gens),
            "delta": list(exponents.delta),
            "conductor": S.conductor,
            "multiplicity_sequence": b.multiplicity_sequence(),
            "generating_function": {"numerator": list(gf.numerator),
                                    "denominator": list(gf.denominator)},
        }))
    records.sort(key=lambda r: r[0])
    text = "".join(psr.render_json(rec) + "\n" for _, rec in records)
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)
    return len(records)


def _cmd_catalog(args) -> int:
    count = catalog_enumerate(args.max_conductor, args.out,
                              args.include_regular)
    if args.out:
        print(f"wrote {count} records to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="planebranch",
        description="Invariants of plane algebroid branches and their "
                    "numerical semigroups.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        c = sub.add_parser(name, **kwargs)
        c.set_defaults(fn=fn)
        c.add_argument("--json", action="store_true",
                       help="machine-readable output")
        return c

    c = add("invariants", _cmd_invariants,
            help="all invariants of a parametrized branch")
    c.add_argument("branch")
    c = add("check-plane", _cmd_check_plane,
            help="is the semigroup the value semigroup of a plane branch")
    c.add_argument("semigroup")
    c = add("realize", _cmd_realize, help="realize a plane semigroup")
    c.add_argument("semigroup")
    c = add("equiv", _cmd_equiv, help="formal equivalence of two branches")
    c.add_argument("branch1")
    c.add_argument("branch2")
    c = add("multseq", _cmd_multseq,
            help="admissibility of a multiplicity sequence")
    c.add_argument("sequence")
    c = add("present", _cmd_present, help="semigroup ring presentation")
    c.add_argument("semigroup")
    c = add("genfun", _cmd_genfun, help="generating function of a semigroup")
    c.add_argument("semigroup")
    c.add_argument("--expand", type=int, default=0, metavar="N",
                   help="also expand to degree N and check membership")
    c = add("verify", _cmd_verify,
            help="cross-check the value semigroup with the valuation oracle")
    c.add_argument("branch")
    c.add_argument("--bound", type=int, default=0, metavar="N",
                   help="oracle bound (default: precision - 1)")
    c = add("descend", _cmd_descend, help="full semigroup descent trace")
    c.add_argument("semigroup")
    c = add("catalog", _cmd_catalog,
            help="enumerate plane semigroups up to a conductor bound")
    c.add_argument("max_conductor", type=int)
    c.add_argument("--out", default=None, help="output JSONL path")
    c.add_argument("--include-regular", action="store_true",
                   help="include the regular branch (semigroup N)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InsufficientPrecision as exc:
        print(f"error: insufficient precision: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ZeroUpToPrecision as exc:
        print(f"error: insufficient precision: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (NotNumericalSemigroup, NotMember, GcdNotOne) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SemigroupError, BranchError) as exc:
        print(f"verdict: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (SeriesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
