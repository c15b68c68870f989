"""Brute-force verifiers against the main pipelines."""

import pytest

import helpers
from planebranch import (
    InsufficientPrecision,
    ValueTable,
    brute_apery,
    brute_semigroup,
    from_generators,
    parse_branch,
    valuation_oracle,
)


class TestValueTable:
    def test_must_cover_zero(self):
        with pytest.raises(ValueError):
            ValueTable(2, (False, True, True))
        with pytest.raises(ValueError):
            ValueTable(2, (True, True))

    def test_values_and_contains(self):
        t = ValueTable(4, (True, False, True, False, True))
        assert t.values() == (0, 2, 4)
        assert 2 in t and 3 not in t and 7 not in t


class TestValuationOracle:
    def test_example(self):
        b = parse_branch("x = t^4; y = t^6 + t^7; prec = 40")
        table = valuation_oracle(b, 20)
        assert table.values() == tuple(
            n for n in range(21) if n in from_generators([4, 6, 13]))

    def test_needs_precision(self):
        b = parse_branch("x = t^4; y = t^6 + t^7; prec = 10")
        with pytest.raises(InsufficientPrecision):
            valuation_oracle(b, 10)

    def test_regular_marker(self):
        b = parse_branch("x = t^1; y = 0; prec = 8")
        assert valuation_oracle(b, 6).values() == tuple(range(7))

    def test_insensitive_to_unit_coefficients(self):
        plain = parse_branch("x = t^4; y = t^6 + t^7; prec = 40")
        scaled = parse_branch("x = 3*t^4; y = -1/2*t^6 - 1/2*t^7; prec = 40")
        assert valuation_oracle(plain, 25) == valuation_oracle(scaled, 25)


class TestBruteSemigroup:
    def test_example(self):
        t = brute_semigroup([4, 6, 13], 20)
        assert t.values() == (0, 4, 6, 8, 10, 12, 13, 14, 16, 17, 18, 19, 20)

    def test_rejects_bad_generators(self):
        with pytest.raises(ValueError):
            brute_semigroup([4, 6], 20)
        with pytest.raises(ValueError):
            brute_semigroup([], 20)

    def test_agrees_with_main_pipeline(self):
        for S in helpers.plane_semigroup_corpus()[:60]:
            bound = S.conductor + 10
            table = brute_semigroup(S.min_generators, bound)
            assert table.values() == tuple(
                n for n in range(bound + 1) if n in S)


class TestBruteApery:
    def test_examples(self):
        assert brute_apery([4, 5, 6], 4).values == (0, 5, 6, 11)
        assert brute_apery([8, 12, 26, 53], 8).values == \
            (0, 12, 26, 38, 53, 65, 79, 91)
        assert brute_apery([1], 5).values == (0, 1, 2, 3, 4)

    def test_non_member_base_rejected(self):
        with pytest.raises(ValueError):
            brute_apery([4, 5, 6], 3)


class TestOracleAgreesWithValueSemigroup:
    def test_corpus(self):
        corpus = helpers.plane_branch_corpus()
        assert len(corpus) >= 50
        for b in corpus:
            S = b.value_semigroup()
            bound = S.conductor + 20
            table = valuation_oracle(b, bound)
            assert table.values() == tuple(
                n for n in range(bound + 1) if n in S)
