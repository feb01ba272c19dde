import math
import random
from fractions import Fraction

import pytest

from lpdelta.core.operator_engine import OperatorSpec
from lpdelta.core.poly_core import I, GaussianRational, Poly, from_roots, scale
from lpdelta.core.preserver_classifier import (
    CONSTANT_UNIMODULAR,
    HB_PAIR,
    NONE,
    V_CUBIC_NOT_REAL,
    V_H2_NOT_REAL,
    V_M2_NOT_REAL_ROOTED,
    V_RE_H,
    V_WRONG_SIDE,
    Verdict,
    classify_lp_preserver,
    classify_operator,
    necessary_filter,
    sample_points,
    unimodular_proportional,
)

Z = Poly((0, 1))
ONE = Poly((1,))


def names(violations):
    return [v.name for v in violations]


def test_necessary_filter_flags_complex_h_squared():
    assert names(necessary_filter(OperatorSpec(ONE, ONE, GaussianRational(1, 1)))) == [V_H2_NOT_REAL]


def test_necessary_filter_skips_vanishing_difference():
    assert necessary_filter(OperatorSpec(Z + 1, Z + 1, I)) == []
    assert names(necessary_filter(OperatorSpec(Z, Z, GaussianRational(2, 1)))) == [V_H2_NOT_REAL]


def test_necessary_filter_passes_polya_case():
    assert necessary_filter(OperatorSpec(ONE, ONE, I)) == []


def test_necessary_filter_uses_cubic_when_sum_vanishes():
    found = names(necessary_filter(OperatorSpec(ONE, -ONE, GaussianRational(1, 1))))
    assert V_CUBIC_NOT_REAL in found
    assert V_H2_NOT_REAL not in found


def test_necessary_filter_ignores_common_constant_phase():
    assert necessary_filter(OperatorSpec(I * ONE, ONE, I)) == []
    assert necessary_filter(OperatorSpec(I * (Z + I), Z - I, I)) == []


def test_sample_points_include_extras():
    assert sample_points(2, ["1/2", 1]) == [0, 1, 2, Fraction(1, 2)]


@pytest.mark.parametrize("a, b, theta", [
    (I * Z + I, Z + 1, math.pi / 2),
    (Z + 1, Z + 2, None),
    (2 * Z, Z, None),
    (scale(GaussianRational(Fraction(3, 5), Fraction(4, 5)), Z - 3), Z - 3, math.atan2(4, 3)),
])
def test_unimodular_proportional(a, b, theta):
    got = unimodular_proportional(a, b)
    if theta is None:
        assert got is None
    else:
        assert got == pytest.approx(theta)


def test_polya_operator_is_constant_unimodular():
    verdict = classify_operator(OperatorSpec(ONE, ONE, I))
    assert verdict.preserving
    assert verdict.branch == CONSTANT_UNIMODULAR
    assert verdict.unimodular_constant == 1


def test_hb_pair_with_zero_on_the_right_side():
    verdict = classify_operator(OperatorSpec(Z + I, Z - I, I))
    assert verdict.preserving
    assert verdict.branch == HB_PAIR
    assert verdict.recovered_theta == pytest.approx(0.0)


def test_hb_pair_with_zero_on_the_wrong_side():
    verdict = classify_operator(OperatorSpec(Z - I, Z + I, I))
    assert not verdict.preserving
    assert verdict.branch == NONE
    assert V_WRONG_SIDE in names(verdict.violations)


def test_negative_imaginary_step_uses_lower_half_plane():
    verdict = classify_operator(OperatorSpec(Z - I, Z + I, -I))
    assert verdict.preserving
    assert verdict.branch == HB_PAIR


def test_real_step_is_never_preserving():
    verdict = classify_operator(OperatorSpec(ONE, ONE, GaussianRational(1)))
    assert not verdict.preserving
    assert V_RE_H in names(verdict.violations)


def test_constant_branch_needs_real_zeros_of_m2():
    verdict = classify_operator(OperatorSpec(Z - I, Z - I, I))
    assert not verdict.preserving
    assert V_M2_NOT_REAL_ROOTED in names(verdict.violations)


def test_float_operator_is_refused():
    with pytest.raises(ValueError):
        classify_operator(OperatorSpec(Poly((1.0,), "float"), Poly((1.0,), "float"), 1j))


def test_verdict_invariant():
    with pytest.raises(ValueError):
        Verdict(True, NONE)


def test_verdict_is_invariant_under_common_scaling():
    rng = random.Random(11)
    ops = [OperatorSpec(ONE, ONE, I), OperatorSpec(Z + I, Z - I, I), OperatorSpec(Z - I, Z + I, I),
           OperatorSpec(from_roots([1, -2]), from_roots([1, -2]), GaussianRational(0, 3)),
           OperatorSpec(ONE, ONE, GaussianRational(1, 1))]
    for _ in range(100):
        c = GaussianRational(Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                             Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
        if c == 0:
            continue
        for op in ops:
            scaled = OperatorSpec(scale(c, op.M1), scale(c, op.M2), op.h)
            assert classify_operator(scaled).preserving == classify_operator(op).preserving


def test_preserving_operators_pass_the_necessary_filter():
    for op in (OperatorSpec(ONE, ONE, I), OperatorSpec(Z + I, Z - I, I),
               OperatorSpec(I * ONE, ONE, GaussianRational(0, 2)),
               OperatorSpec(-(Z + I) * (Z - 2), (Z - I) * (Z - 2), I)):
        assert classify_operator(op).preserving
        assert necessary_filter(op) == []


def test_lp_classifier():
    assert classify_lp_preserver(OperatorSpec(Z + I, Z - I, I)).preserving
    assert classify_lp_preserver(OperatorSpec(ONE, ONE, I)).branch == CONSTANT_UNIMODULAR
    assert not classify_lp_preserver(OperatorSpec(Z - I, Z + I, I)).preserving
    assert not classify_lp_preserver(OperatorSpec(ONE, ONE, GaussianRational(1))).preserving
    # theta = pi/2 preserves real-rootedness but not the real class
    op = OperatorSpec(I * (Z + I), Z - I, I)
    assert classify_operator(op).preserving
    assert not classify_lp_preserver(op).preserving
    # swapped form of a preserving operator
    assert classify_lp_preserver(OperatorSpec(Z - I, Z + I, -I)).preserving
