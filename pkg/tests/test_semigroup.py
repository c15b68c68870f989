"""Numerical semigroups: closure, Apery sets, descent/lift, plane criteria."""

import pytest

import helpers
from planebranch import (
    AperySet,
    BaseNotInSemigroup,
    CharExponents,
    DescentFailure,
    LiftNotSemigroup,
    NotNumericalSemigroup,
    NotPlane,
    apery_set,
    conductor_closed_forms,
    d_conductor,
    descend,
    from_generators,
    from_multseq,
    is_plane,
    is_plane_iterative,
    is_symmetric,
    lift,
    parse_multseq,
    realize,
    render_branch,
    semigroup_from_apery,
)
from planebranch.semigroup import frobenius_and_conductor


class TestFromGenerators:
    def test_small(self):
        S = from_generators([4, 5, 6])
        assert S.conductor == 8 and S.frobenius == 7
        assert S.min_generators == (4, 5, 6)

    def test_minimalization(self):
        assert from_generators([4, 5, 6, 9, 10]).min_generators == (4, 5, 6)

    def test_conductor_of_multi_chain(self):
        assert from_generators([8, 12, 26, 53]).conductor == 84
        assert from_generators([30, 42, 280, 855]).conductor == 1554

    def test_naturals(self):
        S = from_generators([1])
        assert S.is_natural_numbers and S.conductor == 0 and S.frobenius == -1

    def test_gcd_rejected(self):
        with pytest.raises(NotNumericalSemigroup):
            from_generators([2, 4])
        with pytest.raises(NotNumericalSemigroup):
            from_generators([])

    def test_membership(self):
        S = from_generators([4, 6, 13])
        assert [n for n in range(18) if n in S] == \
            [0, 4, 6, 8, 10, 12, 13, 14, 16, 17]


class TestApery:
    def test_known_sets(self):
        assert apery_set(from_generators([4, 5, 6]), 4).values == (0, 5, 6, 11)
        assert apery_set(from_generators([6, 10, 29]), 6).values == \
            (0, 10, 20, 29, 39, 49)
        assert apery_set(from_generators([1]), 5).values == (0, 1, 2, 3, 4)

    def test_base_must_be_member(self):
        with pytest.raises(BaseNotInSemigroup):
            apery_set(from_generators([4, 5, 6]), 3)

    def test_frobenius_from_apery(self):
        S = from_generators([4, 6, 13])
        g, c = frobenius_and_conductor(S)
        assert (g, c) == (15, 16)
        for a in [n for n in range(1, 31) if n in S]:
            assert apery_set(S, a).values[-1] - a == g


class TestSymmetry:
    def test_examples(self):
        assert is_symmetric(from_generators([4, 5, 6]))
        assert is_symmetric(from_generators([8, 12, 26, 53]))
        assert not is_symmetric(from_generators([3, 5, 7]))

    def test_symmetric_iff_half_gaps(self):
        for S in helpers.plane_semigroup_corpus()[:40]:
            assert is_symmetric(S) == (2 * S.genus == S.conductor)


class TestDConductor:
    def test_closed_form_values(self):
        S = from_generators([8, 12, 26, 53])
        assert d_conductor(S, 4) == 8
        assert d_conductor(S, 2) == 32
        assert d_conductor(S, 1) == S.conductor

    def test_conductor_forms(self):
        S = from_generators([8, 12, 26, 53])
        forms = conductor_closed_forms(
            S, CharExponents((8, 12, 14, 15), (8, 4, 2, 1)))
        assert forms.c_via_deltabar == forms.c_via_delta == 84
        S = from_generators([2, 3])
        forms = conductor_closed_forms(S, CharExponents((2, 3), (2, 1)))
        assert forms.c_via_deltabar == 2


class TestDescendLift:
    def test_negative_value(self):
        out = descend(apery_set(from_generators([4, 5, 6]), 4))
        assert isinstance(out, DescentFailure)
        assert out.reason == "negative_value"
        assert out.candidate == (0, 1, -2, -1)

    def test_not_increasing(self):
        out = descend(AperySet(4, (0, 9, 10, 19)))
        assert isinstance(out, DescentFailure)
        assert out.reason == "not_increasing"
        assert out.candidate == (0, 5, 2, 7)

    def test_descent_chain(self):
        out = descend(apery_set(from_generators([6, 10, 29]), 6))
        assert out == AperySet(6, (0, 4, 8, 11, 15, 19))
        assert semigroup_from_apery(out).min_generators == (4, 6, 11)

    def test_lift_round_trip(self):
        S = from_generators([8, 12, 26, 53])
        A = apery_set(S, 8)
        down = descend(A)
        assert lift(down, 8) == A
        assert lift(apery_set(from_generators([1]), 2), 2).values == (0, 3)

    def test_descend_then_lift_identity_on_corpus(self):
        for S in helpers.plane_semigroup_corpus()[:60]:
            if S.is_natural_numbers:
                continue
            A = apery_set(S, S.multiplicity)
            down = descend(A)
            assert not isinstance(down, DescentFailure)
            assert lift(down, S.multiplicity) == A

    def test_descent_preserves_symmetry(self):
        for S in helpers.plane_semigroup_corpus()[:60]:
            if S.is_natural_numbers:
                continue
            down = descend(apery_set(S, S.multiplicity))
            if not isinstance(down, DescentFailure):
                assert is_symmetric(semigroup_from_apery(down))


class TestPlaneCriteria:
    def test_examples(self):
        assert is_plane(from_generators([30, 42, 280, 855])).verdict
        assert not is_plane(from_generators([6, 10, 29])).verdict
        assert not is_plane(from_generators([4, 5, 6])).verdict
        assert is_plane(from_generators([1])).verdict

    def test_iterative_agrees_everywhere(self):
        cases = [[6, 10, 29], [4, 5, 6], [8, 12, 26, 53], [1], [2, 3],
                 [4, 6, 7], [3, 5, 7], [30, 42, 280, 855]]
        for gens in cases:
            S = from_generators(gens)
            assert is_plane_iterative(S).verdict == is_plane(S).verdict

    def test_iterative_trace(self):
        trace = is_plane_iterative(from_generators([6, 10, 29]))
        assert not trace.verdict
        assert trace.chain == (6, 4, 2)
        assert trace.reason.startswith(
            "multiplicity sequence 6,4,2 not plane-admissible")

    def test_naturals_trace(self):
        trace = is_plane_iterative(from_generators([1]))
        assert trace.verdict and trace.chain == ()


class TestRealize:
    def test_known_realizations(self):
        b = realize(from_generators([30, 42, 280, 855]))
        assert b.x.terms == ((30, 1),)
        assert b.y.support == (42, 112, 127)
        b = realize(from_generators([8, 12, 26, 53]))
        assert b.y.support == (12, 14, 15)
        b = realize(from_generators([2, 3]))
        assert (b.x.support, b.y.support) == ((2,), (3,))

    def test_not_plane(self):
        with pytest.raises(NotPlane):
            realize(from_generators([6, 10, 29]))

    def test_naturals(self):
        b = realize(from_generators([1]))
        assert b.x.support == (1,) and b.y.is_zero

    def test_round_trip_on_corpus(self):
        for S in helpers.plane_semigroup_corpus()[:80]:
            assert realize(S).value_semigroup() == S

    def test_render(self):
        assert render_branch(realize(from_generators([4, 6, 13]))) == \
            "x = t^4; y = t^6 + t^7; prec = 24"


class TestFromMultseq:
    def test_examples(self):
        assert from_multseq(parse_multseq("4,2,2")).min_generators == (4, 6, 13)
        assert from_multseq(parse_multseq("2")).min_generators == (2, 3)
        assert from_multseq(parse_multseq("1,1")).is_natural_numbers

    def test_inverse_of_descent_chain(self):
        for S in helpers.plane_semigroup_corpus()[:60]:
            chain = is_plane_iterative(S).chain
            assert from_multseq(parse_multseq(
                ",".join(map(str, chain)) or "1")) == S

    def test_lift_failure_modes(self):
        # 5 is not in <2,3>, so the chain 5,2 cannot be lifted
        with pytest.raises((BaseNotInSemigroup, LiftNotSemigroup)):
            from_multseq(parse_multseq("5,2"))
