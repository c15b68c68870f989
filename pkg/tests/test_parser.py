"""Text grammar, error positions, and deterministic serialization."""

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import helpers
from planebranch import (
    DuplicateVariable,
    NonPositiveExponent,
    NotNonIncreasing,
    NotNumericalSemigroup,
    ParseError,
    PlaneBranch,
    TruncatedSeries,
    from_generators,
    parse_branch,
    parse_multseq,
    parse_semigroup,
    render_branch,
    render_json,
    render_multseq,
    render_semigroup,
    render_series,
)

T = TruncatedSeries


class TestParseBranch:
    def test_basic(self):
        b = parse_branch("x = t^8; y = t^12 + t^14 + t^15; prec = 40")
        assert b.x.terms == ((8, Fraction(1)),)
        assert b.y.support == (12, 14, 15)
        assert b.precision == 40

    def test_default_precision_covers_written_exponents(self):
        b = parse_branch("x = t^4; y = t^6 + t^7")
        assert b.precision == 8

    def test_any_order_and_whitespace(self):
        b = parse_branch("prec=20;y=t^3;x=t^2")
        assert (b.x.order(), b.y.order(), b.precision) == (2, 3, 20)

    def test_coefficients(self):
        b = parse_branch("x = t^2; y = 3*t^3 - 1/2*t^5 + t^7; prec = 10")
        assert b.y.terms == ((3, Fraction(3)), (5, Fraction(-1, 2)),
                             (7, Fraction(1)))

    def test_leading_minus(self):
        b = parse_branch("x = -t^2 + t^3; y = t^3; prec = 9")
        assert b.x.terms[0] == (2, Fraction(-1))

    def test_zero_series(self):
        b = parse_branch("x = t^1; y = 0")
        assert b.is_regular_marker

    def test_coefficients_accumulate(self):
        b = parse_branch("x = t^2; y = t^3 + 2*t^3; prec = 8")
        assert b.y.terms == ((3, Fraction(3)),)

    def test_duplicate_variable(self):
        with pytest.raises(DuplicateVariable):
            parse_branch("x = t^2; x = t^3; y = t^3")
        with pytest.raises(DuplicateVariable):
            parse_branch("x = t^2; y = t^3; prec = 9; prec = 9")

    def test_zero_exponent_rejected(self):
        with pytest.raises(NonPositiveExponent):
            parse_branch("x = t^0 + t^2; y = t^3")

    def test_insufficient_declared_precision(self):
        with pytest.raises(ParseError):
            parse_branch("x = t^2; y = t^9; prec = 5")

    def test_missing_variable(self):
        with pytest.raises(ParseError):
            parse_branch("x = t^2")

    def test_error_position(self):
        err = None
        try:
            parse_branch("x = t^2;\ny = t^3 + t^q")
        except ParseError as e:
            err = e
        assert err is not None
        assert err.line == 2
        assert err.column >= 12

    def test_garbage(self):
        with pytest.raises(ParseError):
            parse_branch("x = t^2; y = t^3 ???")


class TestParseSemigroup:
    def test_bracketed_and_bare(self):
        assert parse_semigroup("<8,12,26,53>") == [8, 12, 26, 53]
        assert parse_semigroup("8, 12, 26, 53") == [8, 12, 26, 53]

    def test_gcd_rejected(self):
        with pytest.raises(NotNumericalSemigroup):
            parse_semigroup("4,6")

    def test_zero_rejected(self):
        with pytest.raises(ParseError):
            parse_semigroup("0,3")

    def test_trailing_rejected(self):
        with pytest.raises(ParseError):
            parse_semigroup("<2,3> x")
        with pytest.raises(ParseError):
            parse_semigroup("<2,3")


class TestParseMultseq:
    def test_runs(self):
        e = parse_multseq("30,12^2,6^13,4,2^9")
        assert e.runs == ((30, 1), (12, 2), (6, 13), (4, 1), (2, 9))

    def test_ones_absorbed(self):
        assert parse_multseq("4,2,2,1^3").entries() == [4, 2, 2]

    def test_increase_rejected(self):
        with pytest.raises(NotNonIncreasing):
            parse_multseq("2,4")

    def test_zero_entry_rejected(self):
        with pytest.raises(ParseError):
            parse_multseq("4,0")

    def test_zero_run_rejected(self):
        with pytest.raises(ParseError):
            parse_multseq("4^0")


class TestRender:
    def test_series(self):
        s = T.make({2: 1, 4: Fraction(-1, 2), 6: 3}, 10)
        assert render_series(s) == "t^2 - 1/2*t^4 + 3*t^6"
        assert render_series(T.zero(5)) == "0"
        assert render_series(T.make({3: -1}, 5)) == "-t^3"

    def test_branch_round_trip_example(self):
        text = "x = t^4; y = t^6 + t^7; prec = 24"
        assert render_branch(parse_branch(text)) == text

    def test_semigroup(self):
        assert render_semigroup(from_generators([8, 12, 26, 53])) == \
            "<8,12,26,53>"

    def test_multseq(self):
        assert render_multseq(parse_multseq("6,4,2^2")) == "6,4,2^2"

    def test_round_trip_on_corpus(self):
        for b in helpers.plane_branch_corpus()[:20]:
            again = parse_branch(render_branch(b))
            assert again.x == b.x.truncate(b.precision)
            assert again.y == b.y.truncate(b.precision)


class TestRenderJson:
    def test_deterministic_insertion_order(self):
        out = render_json({"b": 1, "a": 2})
        assert out == '{"b":1,"a":2}'

    def test_big_integers_become_strings(self):
        big = 2 ** 60
        assert render_json({"n": big}) == f'{{"n":"{big}"}}'
        assert render_json({"n": 2 ** 53 - 1}) == f'{{"n":{2 ** 53 - 1}}}'

    def test_fractions(self):
        assert render_json(Fraction(-1, 2)) == '"-1/2"'

    def test_semigroup_and_branch(self):
        S = from_generators([4, 6, 13])
        assert json.loads(render_json(S)) == {
            "generators": [4, 6, 13], "conductor": 16}
        b = parse_branch("x = t^2; y = t^3; prec = 8")
        assert json.loads(render_json(b)) == {
            "x": {"terms": [[2, "1/1"]], "precision": 8},
            "y": {"terms": [[3, "1/1"]], "precision": 8}}

    def test_byte_stable(self):
        S = from_generators([8, 12, 26, 53])
        assert render_json(S) == render_json(from_generators([8, 12, 26, 53]))


_coeffs = st.fractions(min_value=-9, max_value=9).filter(lambda c: c != 0)


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.integers(min_value=1, max_value=12), _coeffs,
                       min_size=1, max_size=5),
       st.dictionaries(st.integers(min_value=1, max_value=12), _coeffs,
                       max_size=5))
def test_parse_render_branch_round_trip(x_terms, y_terms):
    import math
    from functools import reduce
    support = set(x_terms) | set(y_terms)
    if reduce(math.gcd, support) != 1:
        x_terms = dict(x_terms)
        x_terms[1] = x_terms.get(1, Fraction(0)) + 1
        if x_terms[1] == 0:
            del x_terms[1]
        if not x_terms:
            x_terms = {1: Fraction(1)}
    prec = max(set(x_terms) | set(y_terms)) + 1
    b = PlaneBranch(T.make(x_terms, prec), T.make(y_terms, prec))
    assert parse_branch(render_branch(b)) == b
