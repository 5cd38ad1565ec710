import re

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ivwidth.constructions import (
    AOAlpha,
    BestRep,
    Construct1,
    Construct2,
    Construct3,
    IvCompose,
    KLambdaAggregation,
    SpecError,
    eval_ao_alpha,
    eval_best_rep,
    eval_construct1,
    eval_construct2,
    eval_construct3,
    iv_eval,
    min_width_threshold_arrays,
)
from ivwidth.interval import Interval, d_alpha, k_alpha_point
from ivwidth.scalar import AM, MAX, O_GM, O_M, O_P, O_T, KAlpha, dual

X1, Y1 = Interval(0.2, 0.8), Interval(0.5, 1.0)
X2, Y2 = Interval(0.6, 0.9), Interval(0.8, 0.8)
X3 = Interval(0.1, 0.4)

unit = st.floats(0.0, 1.0, allow_nan=False)


@st.composite
def intervals(draw):
    a, b = draw(unit), draw(unit)
    return Interval(min(a, b), max(a, b))


def close(R, expected, atol=1e-9):
    np.testing.assert_allclose(R.as_tuple(), expected, atol=atol)


SPECS = [
    BestRep(O_P),
    Construct1(O_P, MAX, 0.5),
    Construct1(O_GM, dual(O_P), 0.01),
    Construct2(O_P, O_M, 0.3),
    Construct3(O_P, MAX, 0.7, 1.0),
    AOAlpha(O_GM, 0.5),
]


class TestBestRep:
    def test_examples(self):
        close(iv_eval(BestRep(O_P), X1, Y1), (0.1, 0.8))
        close(eval_best_rep(O_P, O_P, X2, Y2), (0.48, 0.72))
        close(eval_best_rep(O_P, O_P, X3, X3), (0.01, 0.16))

    def test_pair_requires_order(self):
        with pytest.raises(SpecError):
            BestRep(MAX, O_P)
        close(BestRep(O_P, MAX)(X1, Y1), (0.1, 1.0))

    @given(unit, unit)
    def test_degenerate(self, x, y):
        R = BestRep(O_T)(Interval.point(x), Interval.point(y))
        assert R.is_degenerate
        assert R.lo == pytest.approx(O_T.eval(x, y))


class TestConstruct1:
    def test_examples(self):
        close(eval_construct1(O_P, MAX, 0.5, 0, X1, Y1), (0.15, 0.75))
        close(eval_construct1(O_P, MAX, 1, 0, X1, Y1), (0.2, 0.8))
        # center 0.107, width 0.6: lower endpoint 0.107 - 0.01 * 0.6
        close(eval_construct1(O_P, MAX, 0.01, 0, X1, Y1), (0.101, 0.701))

    def test_second_operands(self):
        for a in (0.01, 0.5, 1.0):
            close(Construct1(O_P, MAX, a)(X2, Y2), (0.48, 0.72))
        close(Construct1(O_P, O_M, 0.01)(X2, Y2), (0.4824, 0.4824))
        close(Construct1(O_P, O_M, 0.5)(X2, Y2), (0.6, 0.6))
        close(Construct1(O_P, O_M, 1.0)(X2, Y2), (0.72, 0.72))
        close(Construct1(O_P, dual(O_P), 0.5)(X1, Y1), (0.1, 0.8))

    def test_breakdown(self):
        b = Construct1(O_P, MAX, 0.5).breakdown(X1, Y1)
        np.testing.assert_allclose([b["K_alpha"], b["width"], b["m"]], [0.45, 0.6, 0.6])

    def test_alpha_one_top_defect(self):
        # with alpha = 1 the center is the upper endpoint, so a top-valued
        # center no longer forces [1,1] inputs
        R = Construct1(O_P, O_M, 1.0)(Interval(0.0, 1.0), Interval(1.0, 1.0))
        assert R == Interval(1.0, 1.0)

    @pytest.mark.parametrize("kw,msg", [
        (dict(alpha=0.0), "alpha outside (0,1]"),
        (dict(alpha=2.0), "alpha outside (0,1]"),
        (dict(alpha=0.5, beta=0.5), "beta must satisfy"),
    ])
    def test_invariants(self, kw, msg):
        with pytest.raises(SpecError, match=re.escape(msg)):
            Construct1(O_P, MAX, **kw)

    def test_requires_strict_overlap(self):
        with pytest.raises(SpecError):
            Construct1(O_M, MAX, 0.5)
        with pytest.raises(SpecError):
            Construct1(AM, MAX, 0.5)

    @settings(max_examples=300)
    @given(intervals(), intervals(), st.sampled_from([0.01, 0.5, 1.0]), st.sampled_from([MAX, O_M, dual(O_P)]))
    def test_containment_and_center(self, X, Y, a, B):
        R = Construct1(O_P, B, a)(X, Y)
        O = BestRep(O_P)(X, Y)
        assert O.lo - 1e-12 <= R.lo and R.hi <= O.hi + 1e-12
        assert abs(k_alpha_point(R, a) - k_alpha_point(O, a)) <= 1e-12

    @settings(max_examples=300)
    @given(intervals(), intervals(), st.sampled_from([0.01, 0.5, 1.0]))
    def test_equals_best_rep_for_dual_bound(self, X, Y, a):
        R = Construct1(O_P, dual(O_P), a)(X, Y)
        assert R.isclose(BestRep(O_P)(X, Y), 1e-12)


class TestConstruct2:
    def test_examples(self):
        close(eval_construct2(O_P, O_M, 0.5, 0, X1, Y1), (0.1875, 0.5625))
        close(eval_construct2(O_P, O_M, 0.99, 0, X1, Y1), (0.5822, 0.7921), atol=1e-4)
        close(eval_construct2(O_P, O_M, 0.01, 0, X1, Y1), (0.103, 0.207), atol=1e-3)

    def test_degenerate_operand(self):
        close(Construct2(O_P, O_M, 0.01)(X2, Y2), (0.4824, 0.4824))
        # K_0.5([0.6,0.9]) = 0.75 and 0.75 * 0.8 = 0.6
        close(Construct2(O_P, O_M, 0.5)(X2, Y2), (0.6, 0.6))
        close(Construct2(O_P, O_M, 0.99)(X2, Y2), (0.7176, 0.7176))

    def test_requires_conjunctive(self):
        with pytest.raises(SpecError):
            Construct2(O_P, MAX, 0.5)
        with pytest.raises(SpecError):
            Construct2(O_P, dual(O_P), 0.5)

    @pytest.mark.parametrize("kw,msg", [
        (dict(alpha=1.0), r"alpha outside \(0,1\)"),
        (dict(alpha=0.0), r"alpha outside \(0,1\)"),
        (dict(alpha=0.5, beta=0.5), "alpha and beta must differ"),
        (dict(alpha=0.5, beta=1.5), r"beta outside \[0,1\]"),
    ])
    def test_invariants(self, kw, msg):
        with pytest.raises(SpecError, match=msg):
            Construct2(O_P, O_M, **kw)

    def test_matches_ao(self):
        rng = np.random.default_rng(0)
        u = np.sort(rng.random((2, 2, 20_000)), axis=1)
        for O in (O_P, O_GM):
            for a in (0.01, 0.5, 0.99):
                c2 = Construct2(O, O_M, a).evaluate(u[0, 0], u[0, 1], u[1, 0], u[1, 1])
                ao = AOAlpha(O, a).evaluate(u[0, 0], u[0, 1], u[1, 0], u[1, 1])
                np.testing.assert_array_equal(c2, ao)

    @settings(max_examples=300)
    @given(intervals(), intervals(), st.sampled_from([0.01, 0.5, 0.99]))
    def test_center(self, X, Y, a):
        R = Construct2(O_GM, O_M, a)(X, Y)
        assert abs(k_alpha_point(R, a) - O_GM.eval(X.k_alpha(a), Y.k_alpha(a))) <= 1e-12


class TestAOAlpha:
    def test_formula_value(self):
        R = eval_ao_alpha(O_P, 0.99, 0, X3, X3)
        close(R, (0.001576, 0.159185), atol=1e-6)
        # lies partly below the best representation's lower endpoint
        assert R.lo < BestRep(O_P)(X3, X3).lo

    def test_same_as_construct2(self):
        assert AOAlpha(O_P, 0.5)(X1, Y1) == Construct2(O_P, O_M, 0.5)(X1, Y1)


class TestConstruct3:
    def test_examples(self):
        close(eval_construct3(O_P, MAX, 0.01, 0, X1, Y1), (0.098, 0.698), atol=1e-3)
        close(eval_construct3(O_P, MAX, 0.5, 0, X1, Y1), (0.075, 0.675))
        close(eval_construct3(O_P, MAX, 0.99, 0, X1, Y1), (0.196, 0.796), atol=1e-3)
        close(eval_construct3(O_P, MAX, 0.01, 0, X2, Y2), (0.4794, 0.7794), atol=1e-4)
        close(eval_construct3(O_P, MAX, 0.5, 0, X2, Y2), (0.45, 0.75))
        close(eval_construct3(O_P, MAX, 0.99, 0, X2, Y2), (0.48, 0.72), atol=1e-4)

    def test_min_bound(self):
        close(Construct3(O_P, O_M, 0.01)(X2, Y2), (0.4824, 0.4824))
        # center O_P(0.75, 0.8) = 0.6, width forced to 0 by the degenerate Y
        close(Construct3(O_P, O_M, 0.5)(X2, Y2), (0.6, 0.6))
        close(Construct3(O_P, O_M, 0.99)(X2, Y2), (0.7176, 0.7176))

    def test_requires_aggregation(self):
        with pytest.raises(SpecError):
            Construct3(O_P, KAlpha(0.2), 0.5)  # not commutative
        with pytest.raises(SpecError):
            Construct3(O_P, MAX, 1.0)

    def test_breakdown(self):
        b = Construct3(O_P, MAX, 0.5).breakdown(X1, Y1)
        np.testing.assert_allclose([b["K_alpha"], b["width"], b["d_alpha"]], [0.375, 0.6, 0.75])

    def test_feasibility(self):
        rng = np.random.default_rng(1)
        u = np.sort(rng.random((2, 2, 50_000)), axis=1)
        for B in (MAX, O_M, AM, dual(O_P)):
            for a in (0.01, 0.5, 0.99):
                spec = Construct3(O_P, B, a)
                c, w, d = spec.parts(u[0, 0], u[0, 1], u[1, 0], u[1, 1])
                assert np.all(w <= d + 1e-12)
                lo, hi = spec.raw(u[0, 0], u[0, 1], u[1, 0], u[1, 1])
                assert np.all(lo >= -1e-12) and np.all(hi <= 1 + 1e-12)


class TestUniversal:
    @pytest.mark.parametrize("spec", SPECS, ids=str)
    def test_top_and_bottom(self, spec):
        one = Interval(1.0, 1.0)
        assert spec(one, one) == one
        assert spec(Interval(0.0, 0.0), Y1) == Interval(0.0, 0.0)

    @pytest.mark.parametrize("spec", SPECS, ids=str)
    def test_valid_outputs(self, spec):
        rng = np.random.default_rng(2)
        u = np.sort(rng.random((2, 2, 10_000)), axis=1)
        lo, hi = spec.evaluate(u[0, 0], u[0, 1], u[1, 0], u[1, 1])
        assert np.all((0 <= lo) & (lo <= hi) & (hi <= 1))

    @pytest.mark.parametrize("spec", [Construct2(O_P, O_M, 0.4), Construct3(O_GM, O_M, 0.4)], ids=str)
    def test_degenerate_input_forces_degenerate_output(self, spec):
        rng = np.random.default_rng(3)
        for _ in range(200):
            a, b, x = rng.random(3)
            R = spec(Interval(min(a, b), max(a, b)), Interval.point(x))
            assert R.width <= 1e-12


class TestMisc:
    def test_threshold_noncommutative(self):
        spec = BestRep(O_P)
        B = KAlpha(0.2)
        xl, xh, yl, yh = (np.array([v]) for v in (0.2, 0.8, 0.5, 1.0))
        m = min_width_threshold_arrays(spec, B, xl, xh, yl, yh)
        np.testing.assert_allclose(m, min(0.7, B.eval(0.6, 0.5), B.eval(0.5, 0.6)))

    def test_klambda(self):
        spec = KLambdaAggregation(O_P, AM, 0.5)
        R = spec(X1, Y1)
        c = O_P.eval(0.5, 0.75)
        assert abs(R.k_alpha(0.5) - c) <= 1e-12
        assert R.width <= d_alpha(c, 0.5) + 1e-12

    def test_compose(self):
        spec = IvCompose(BestRep(AM), BestRep(O_P), BestRep(dual(O_P)))
        R = spec(X1, Y1)
        close(R, ((0.1 + 0.6) / 2, (0.8 + 1.0) / 2))
        assert spec.text == "ivcompose(bestrep(AM),bestrep(Op),bestrep(dual(Op)))"
