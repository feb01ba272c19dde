import cmath
import math
import random

import pytest

from lpdelta.core.entire_data import (
    GENUS0,
    WITH_EXP_FACTORS,
    EntireFnData,
    blaschke_sum,
    check_hb_conditions,
    check_lp_membership,
    conj_flip_data,
    convert_convention,
    effective_beta,
    eval_partial,
    from_polynomial_roots,
)
from lpdelta.core.poly_core import GaussianRational, evaluate, from_roots, to_float


def random_data(rng, convention=WITH_EXP_FACTORS):
    upper = [complex(rng.uniform(-3, 3), rng.uniform(0.2, 3)) for _ in range(rng.randint(0, 4))]
    real = [rng.choice([-1, 1]) * rng.uniform(0.5, 4) for _ in range(rng.randint(0, 3))]
    return EntireFnData(
        C=complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)),
        n=rng.randint(0, 2),
        a=rng.uniform(0, 1),
        b=complex(rng.uniform(-2, 2), rng.uniform(-2, 2)),
        upper_zeros=tuple(upper),
        real_zeros=tuple(real),
        convention=convention,
    )


@pytest.mark.parametrize("kwargs", [
    {"C": 0},
    {"C": 1, "n": -1},
    {"C": 1, "n": 1.5},
    {"C": 1, "upper_zeros": (1.0,)},
    {"C": 1, "upper_zeros": (-1j,)},
    {"C": 1, "lower_zeros": (1j,)},
    {"C": 1, "real_zeros": (0.0,)},
    {"C": 1, "real_zeros": (1 + 1j,)},
    {"C": 1, "a": 1j},
    {"C": 1, "convention": "canonical"},
])
def test_invalid_data_is_rejected(kwargs):
    with pytest.raises(ValueError):
        EntireFnData(**kwargs)


def test_negative_a_is_recorded_not_clamped():
    d = EntireFnData(C=1, a=-0.5)
    assert d.a == -0.5
    assert not d.a_valid
    report = check_hb_conditions(d)
    assert not report.accepted
    assert any("a =" in r for r in report.reasons)


def test_lp_membership():
    assert check_lp_membership(EntireFnData(C=2, n=1, a=0, b=3, real_zeros=(1,)))
    assert not check_lp_membership(EntireFnData(C=2, b=1j))
    assert not check_lp_membership(EntireFnData(C=2, upper_zeros=(1j,)))
    assert not check_lp_membership(EntireFnData(C=1j))
    assert not check_lp_membership(EntireFnData(C=1, a=-1))


def test_hb_conditions_at_the_boundary():
    rejected = check_hb_conditions(EntireFnData(C=1, b=0, upper_zeros=(1j,)))
    assert rejected.beta == pytest.approx(-1)
    assert not rejected.accepted
    accepted = check_hb_conditions(EntireFnData(C=1, b=1j, upper_zeros=(1j,)))
    assert accepted.beta == pytest.approx(0, abs=1e-15)
    assert accepted.accepted
    assert accepted.reasons == ()


def test_real_function_is_accepted():
    report = check_hb_conditions(EntireFnData(C=3, a=0.25, b=-2, real_zeros=(1, -2)))
    assert report.accepted
    assert report.blaschke == 0


def test_genus0_beta_is_im_b():
    d = EntireFnData(C=1, b=0.5j, upper_zeros=(1j, 2 + 1j), convention=GENUS0)
    assert effective_beta(d) == pytest.approx(0.5)


def test_lower_zeros_are_rejected():
    flipped = conj_flip_data(EntireFnData(C=1, b=5j, upper_zeros=(2j,)))
    report = check_hb_conditions(flipped)
    assert not report.accepted


@pytest.mark.parametrize("zeros, expected", [
    ((1j,), 0.5),
    ((1j, 2j), 0.9),
    ((), 0.0),
])
def test_blaschke_sum(zeros, expected):
    assert blaschke_sum(EntireFnData(C=1, upper_zeros=zeros)) == pytest.approx(expected)


def test_conj_flip_data():
    d = EntireFnData(C=1j, b=1 + 1j, upper_zeros=(2j,), real_zeros=(3,))
    flipped = conj_flip_data(d)
    assert flipped.C == -1j
    assert flipped.b == 1 - 1j
    assert flipped.lower_zeros == (-2j,)
    assert flipped.upper_zeros == ()
    assert flipped.real_zeros == (3.0,)
    assert conj_flip_data(flipped) == d
    real = EntireFnData(C=2, a=1, b=-1, real_zeros=(1, 4))
    assert conj_flip_data(real) == real


def test_eval_partial_examples():
    d = from_polynomial_roots(1, [1j])
    assert d.C == -1j
    assert eval_partial(d, 1j) == 0
    assert eval_partial(EntireFnData(C=1), 3 - 2j) == 1
    assert eval_partial(EntireFnData(C=1, a=1), 2j) == pytest.approx(math.exp(4))


def test_eval_partial_term_range():
    d = EntireFnData(C=1, upper_zeros=(1j,), real_zeros=(2,))
    assert eval_partial(d, 0.5, terms=0) == pytest.approx(cmath.exp(0))
    with pytest.raises(ValueError):
        eval_partial(d, 0.5, terms=3)


def test_eval_partial_overflow():
    with pytest.raises(OverflowError):
        eval_partial(EntireFnData(C=1, a=1), 100j)


def test_from_polynomial_roots_refuses_lower_roots():
    with pytest.raises(ValueError):
        from_polynomial_roots(1, [1 - 1j])


def test_convention_conversion_preserves_verdicts_and_values():
    rng = random.Random(5)
    for _ in range(200):
        d = random_data(rng)
        g = convert_convention(d, GENUS0)
        assert g.convention == GENUS0
        assert check_hb_conditions(g).accepted == check_hb_conditions(d).accepted
        assert effective_beta(g) == pytest.approx(effective_beta(d), abs=1e-12)
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        assert eval_partial(g, z) == pytest.approx(eval_partial(d, z), rel=1e-12, abs=1e-300)
        assert convert_convention(g, WITH_EXP_FACTORS).b == pytest.approx(d.b, abs=1e-12)


def test_adding_an_upper_zero_lowers_beta_and_raises_blaschke():
    rng = random.Random(8)
    for _ in range(50):
        d = random_data(rng)
        alpha = complex(rng.uniform(-3, 3), rng.uniform(0.2, 3))
        more = EntireFnData(d.C, d.n, d.a, d.b, d.upper_zeros + (alpha,), d.real_zeros, d.convention)
        assert effective_beta(more) < effective_beta(d)
        assert blaschke_sum(more) > blaschke_sum(d)


@pytest.mark.parametrize("convention", [GENUS0, WITH_EXP_FACTORS])
def test_polynomial_data_matches_polynomial_evaluation(convention):
    rng = random.Random(13)
    roots = [GaussianRational(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(2)]
    roots += [GaussianRational(rng.randint(1, 4)), GaussianRational(-2), GaussianRational(0)]
    lead = GaussianRational(2, -1)
    p = to_float(from_roots(roots, lead=lead))
    d = from_polynomial_roots(lead, roots, convention)
    assert d.n == 1
    for _ in range(20):
        z = cmath.rect(6, rng.uniform(-math.pi, math.pi))
        assert eval_partial(d, z) == pytest.approx(evaluate(p, z), rel=1e-12)
