"""
End-to-end property suites over seeded random instances.
"""

import cmath
import math
import random
from fractions import Fraction

import pytest

from lpdelta.core.entire_data import (
    GENUS0,
    EntireFnData,
    check_hb_conditions,
    convert_convention,
)
from lpdelta.core.operator_engine import OperatorSpec, apply_delta, hb_decomposition
from lpdelta.core.poly_core import I, GaussianRational, Poly, conj_flip, from_roots, scale
from lpdelta.core.preserver_classifier import (
    CONSTANT_UNIMODULAR,
    HB_PAIR,
    V_H2_NOT_REAL,
    classify_operator,
    necessary_filter,
)
from lpdelta.core.witness_search import (
    HERMITE,
    exp_witness_params,
    find_counterexample,
    generate_family,
    quadratic_exp_check,
)
from lpdelta.core.zero_location import (
    IDENTICALLY_ZERO,
    REAL_ROOTED,
    aberth_roots,
    certify_real_rooted,
    classify_numeric_roots,
    half_plane_count,
)

ONE = Poly((1,))
Z = Poly((0, 1))

UNIMODULAR = [
    GaussianRational(1), GaussianRational(-1), I, -I,
    GaussianRational("3/5", "4/5"), GaussianRational("5/13", "-12/13"), GaussianRational("-8/17", "15/17"),
]
STEPS = [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(-1), Fraction(-3, 2)]


def gaussian(rng, bound=5, den=3):
    while True:
        c = GaussianRational(Fraction(rng.randint(-bound, bound), rng.randint(1, den)),
                             Fraction(rng.randint(-bound, bound), rng.randint(1, den)))
        if c != 0:
            return c


def real_rooted(rng, max_degree):
    return from_roots([Fraction(rng.randint(-8, 8), 2) for _ in range(rng.randint(0, max_degree))])


def constant_branch_operator(rng):
    m = from_roots([rng.randint(-3, 3) for _ in range(rng.randint(0, 6))], lead=gaussian(rng))
    return OperatorSpec(scale(rng.choice(UNIMODULAR), m), m, GaussianRational(0, rng.choice(STEPS)))


def hb_branch_operator(rng):
    s = rng.choice(STEPS)
    side = 1 if s > 0 else -1
    roots = [GaussianRational(rng.randint(-3, 3), side * rng.randint(1, 2))]
    roots += [GaussianRational(rng.randint(-3, 3), side * rng.randint(0, 2)) for _ in range(rng.randint(0, 5))]
    m2 = from_roots(roots, lead=gaussian(rng))
    return OperatorSpec(scale(rng.choice(UNIMODULAR), conj_flip(m2)), m2, GaussianRational(0, s))


def test_polya_operator_keeps_hermite_real_rooted():
    op = OperatorSpec(ONE, ONE, I)
    for p in generate_family(HERMITE, {"max_degree": 12}):
        assert certify_real_rooted(apply_delta(op, p)).verdict == REAL_ROOTED


def test_preserving_operators_map_real_rooted_to_real_rooted():
    rng = random.Random(2024)
    ops = [constant_branch_operator(rng) for _ in range(150)] + [hb_branch_operator(rng) for _ in range(150)]
    branches = {CONSTANT_UNIMODULAR: 0, HB_PAIR: 0}
    for op in ops:
        verdict = classify_operator(op)
        assert verdict.preserving, op
        branches[verdict.branch] += 1
        for _ in range(10):
            p = real_rooted(rng, 8)
            assert certify_real_rooted(apply_delta(op, p)).verdict in (REAL_ROOTED, IDENTICALLY_ZERO), (op, p)
    assert branches[CONSTANT_UNIMODULAR] >= 100
    assert branches[HB_PAIR] >= 100


def real_step_violation(rng):
    m = from_roots([rng.randint(-3, 3) for _ in range(rng.randint(0, 3))], lead=gaussian(rng))
    h = GaussianRational(Fraction(rng.choice([-1, 1]) * rng.randint(1, 4), rng.randint(1, 3)))
    if rng.random() < 0.5:
        return OperatorSpec(scale(rng.choice(UNIMODULAR), m), m, h)
    return OperatorSpec(conj_flip(m), m, h)


def wrong_side_violation(rng):
    beta = Fraction(rng.randint(1, 4), rng.randint(1, 2))
    s = Fraction(rng.randint(1, 4), rng.randint(1, 2))
    m = from_roots([rng.randint(-3, 3) for _ in range(rng.randint(0, 3))])
    if rng.random() < 0.5:
        m2 = from_roots([GaussianRational(0, -beta)]) * m
        return OperatorSpec(conj_flip(m2), m2, GaussianRational(0, s))
    m2 = from_roots([GaussianRational(0, beta)]) * m
    return OperatorSpec(conj_flip(m2), m2, GaussianRational(0, -s))


def oblique_step_violation(rng):
    h = GaussianRational(rng.choice([-1, 1]) * rng.randint(1, 3), rng.choice([-1, 1]) * rng.randint(1, 3))
    m = from_roots([rng.randint(-3, 3) for _ in range(rng.randint(0, 3))])
    if rng.random() < 0.5:
        return OperatorSpec(m, m, h)
    m2 = from_roots([GaussianRational(0, rng.randint(1, 3))]) * m
    return OperatorSpec(conj_flip(m2), m2, h)


@pytest.mark.parametrize("make", [real_step_violation, wrong_side_violation, oblique_step_violation])
def test_violation_catalogue_always_yields_a_witness(make):
    rng = random.Random(make.__name__)
    for _ in range(50):
        op = make(rng)
        assert not classify_operator(op).preserving
        assert find_counterexample(op, budget=500) is not None, op


def test_exact_and_numeric_zero_location_agree():
    rng = random.Random(77)
    tau = 1e-8
    usable = 0
    for _ in range(1000):
        roots = set()
        for _ in range(rng.randint(1, 10)):
            re = Fraction(rng.randint(-10, 10), rng.randint(1, 3))
            im = Fraction(rng.randint(-10, 10), rng.randint(1, 3)) if rng.random() < 0.5 else 0
            roots.add(GaussianRational(re, im))
        p = from_roots(sorted(roots, key=lambda r: (r.re, r.im)), lead=gaussian(rng))
        numeric_roots = aberth_roots(p)
        # too close to the band edge to call
        if any(0.1 * tau < abs(z.imag) < 1e-6 for z in numeric_roots):
            continue
        usable += 1
        exact = half_plane_count(p)
        assert (exact.upper, exact.on_axis, exact.lower) == classify_numeric_roots(numeric_roots, tau), p
    assert usable >= 500


def test_exact_and_numeric_zero_location_agree_on_random_coefficients():
    rng = random.Random(78)
    tau = 1e-8
    usable = 0
    for _ in range(1000):
        coeffs = []
        for _ in range(rng.randint(2, 11)):
            while True:
                c = complex(rng.randint(-10, 10), rng.randint(-10, 10))
                if abs(c) <= 10:
                    break
            coeffs.append(GaussianRational(int(c.real), int(c.imag)))
        p = Poly(coeffs)
        if p.degree < 1:
            continue
        numeric_roots = aberth_roots(p)
        if any(0.1 * tau < abs(z.imag) < 1e-6 for z in numeric_roots):
            continue
        usable += 1
        exact = half_plane_count(p)
        assert (exact.upper, exact.on_axis, exact.lower) == classify_numeric_roots(numeric_roots, tau), p
    assert usable >= 900


def test_hermite_biehler_identity_for_quasi_hb_multipliers():
    rng = random.Random(31)
    for _ in range(200):
        roots = [GaussianRational(rng.randint(-3, 3), rng.randint(0, 2)) for _ in range(rng.randint(0, 5))]
        m2 = from_roots(roots, lead=gaussian(rng))
        op = OperatorSpec(conj_flip(m2), m2, I)
        p = real_rooted(rng, 6) * (Z - rng.randint(-3, 3))
        dec = hb_decomposition(op, p)
        assert dec.identity_holds
        assert dec.method == "exact"
        assert certify_real_rooted(dec.RF).verdict == REAL_ROOTED


def test_witness_formulas():
    rng = random.Random(6)
    for _ in range(100):
        z0 = complex(rng.uniform(-3, 3), rng.uniform(0.25, 3))
        w0 = cmath.rect(rng.uniform(1, 20), rng.uniform(-math.pi, math.pi))
        a, b = exp_witness_params(z0, w0)
        ratio = cmath.exp((-a * (z0 + 1j) ** 2 + b * (z0 + 1j)) - (-a * (z0 - 1j) ** 2 + b * (z0 - 1j)))
        assert abs(ratio - w0) <= 1e-12 * abs(w0)
        assert quadratic_exp_check(rng.uniform(0.05, 5), rng.uniform(-5, 5)) <= 1e-12


def test_entire_data_boundary_and_conventions():
    assert check_hb_conditions(EntireFnData(C=1, b=1j, upper_zeros=(1j,))).accepted
    rejected = check_hb_conditions(EntireFnData(C=1, b=0, upper_zeros=(1j,)))
    assert not rejected.accepted
    assert rejected.beta == pytest.approx(-1)
    rng = random.Random(12)
    for _ in range(200):
        d = EntireFnData(
            C=complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) or 1,
            a=rng.uniform(0, 2),
            b=complex(rng.uniform(-2, 2), rng.uniform(-1, 3)),
            upper_zeros=tuple(complex(rng.uniform(-4, 4), rng.uniform(0.1, 4)) for _ in range(rng.randint(0, 5))),
            real_zeros=tuple(rng.uniform(0.5, 4) for _ in range(rng.randint(0, 3))),
        )
        assert check_hb_conditions(convert_convention(d, GENUS0)).accepted == check_hb_conditions(d).accepted


def test_necessary_filter_on_complex_and_imaginary_steps():
    assert V_H2_NOT_REAL in [v.name for v in necessary_filter(OperatorSpec(ONE, ONE, GaussianRational(1, 1)))]
    assert necessary_filter(OperatorSpec(ONE, ONE, I)) == []
