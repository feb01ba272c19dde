"""
Classification of operators M1(z) f(z+h) + M2(z) f(z-h) with polynomial
coefficients by whether they preserve real-rootedness of real polynomials
(and, in the entire-function form, the Laguerre-Polya class).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from lpdelta.core.operator_engine import OperatorSpec, swap
from lpdelta.core.poly_core import (
    EXACT,
    GaussianRational,
    Poly,
    add,
    conj_flip,
    evaluate,
    mul,
    neg,
    proportionality_constant,
    scale,
    unit_angle,
)
from lpdelta.core.zero_location import LOWER, UPPER, half_plane_count

CONSTANT_UNIMODULAR = "constant_unimodular"
HB_PAIR = "hb_pair"
NONE = "none"

# Violation names reported by necessary_filter and the classifiers.
V_SUM_NOT_REAL = "M1+M2 not real on R"
V_DIFF_NOT_REAL = "h(M1-M2) not real on R"
V_H2_NOT_REAL = "h^2 not in R"
V_CUBIC_NOT_REAL = "h*M1*(6x^2+2h^2) not real on R"
V_RE_H = "Re h != 0"
V_NOT_PROPORTIONAL = "M1 is not a unimodular multiple of M2"
V_M2_NOT_REAL_ROOTED = "M1 = c*M2 but M2 has non-real zeros"
V_NOT_HB_PAIR = "M1 is not a unimodular multiple of conj_flip(M2)"
V_WRONG_SIDE = "zeros of M2 outside the closed half-plane Im h * Im z >= 0"
V_NOT_CONJUGATE = "M1 != conj_flip(M2)"


@dataclass(frozen=True)
class Violation:
    name: str
    evidence: str


@dataclass(frozen=True)
class Verdict:
    preserving: bool
    branch: str
    recovered_theta: Optional[float] = None
    violations: Tuple[Violation, ...] = ()
    unimodular_constant: Optional[GaussianRational] = None

    def __post_init__(self):
        if self.preserving and (self.branch == NONE or self.violations):
            raise ValueError("A preserving verdict needs a branch and no violations")


def _require_exact(op: OperatorSpec) -> None:
    if op.domain != EXACT:
        logging.error("Operator classification requires exact coefficients")
        raise ValueError("Classification requires exact (Gaussian-rational) data")


def sample_points(degree: int, extra: Iterable = ()) -> List[Fraction]:
    """
    degree + 1 distinct rational points 0, 1, ..., degree plus any extra points.

    A polynomial of degree <= `degree` that is real at degree + 1 distinct real
    points has real coefficients, so the sampled checks are exact.
    """
    points = [Fraction(k) for k in range(max(int(degree), 0) + 1)]
    for x in extra:
        x = Fraction(x)
        if x not in points:
            points.append(x)
    return points


def _first_nonreal_value(p: Poly, points: List[Fraction], phase: GaussianRational) -> Optional[str]:
    """Evidence for the first sample point where phase * p is not real, or None."""
    for x in points:
        value = evaluate(p, GaussianRational(x)) * phase
        if not value.is_real():
            return f"value {value} at x = {x}"
    return None


def _reference_phase(polys: List[Poly]) -> GaussianRational:
    """Conjugate of the leading coefficient of the first nonzero polynomial."""
    for p in polys:
        if not p.is_zero():
            return p.lead.conjugate()
    return GaussianRational(1)


def necessary_filter(op: OperatorSpec, extra_points: Iterable = ()) -> List[Violation]:
    """
    Reality constraints forced by applying the operator to 1, z, z^2, z^3.

    The images of 1 and z and the linear combinations of the images of z^2
    and z^3 give M1 + M2, h(M1 - M2) and h^2(M1 + M2), which must be real on R
    up to one common constant factor; when M1 + M2 is identically zero the cubic
    gives h*M1*(6x^2 + 2h^2) instead. The constant factor is removed by
    multiplying with the conjugate leading coefficient of the first nonzero
    constraint polynomial.
    """
    _require_exact(op)
    h = op.h
    total = add(op.M1, op.M2)
    diff = scale(h, add(op.M1, neg(op.M2)))
    if total.is_zero():
        last = scale(h, mul(op.M1, Poly((2 * h * h, 0, 6))))
        constraints = [(V_DIFF_NOT_REAL, diff), (V_CUBIC_NOT_REAL, last)]
    else:
        constraints = [(V_SUM_NOT_REAL, total), (V_DIFF_NOT_REAL, diff),
                       (V_H2_NOT_REAL, scale(h * h, total))]
    phase = _reference_phase([p for _, p in constraints])
    # zero constraints are real everywhere
    constraints = [(name, p) for name, p in constraints if not p.is_zero()]
    top = max((p.degree for _, p in constraints), default=0)
    points = sample_points(top, extra_points)

    violations = []
    for name, p in constraints:
        evidence = _first_nonreal_value(p, points, phase)
        if evidence:
            if name == V_H2_NOT_REAL:
                evidence = f"h^2 = {h * h}; {evidence}"
            violations.append(Violation(name, evidence))
    if violations:
        logging.info(f"Necessary filter: {len(violations)} violation(s): "
                     f"{', '.join(v.name for v in violations)}")
    else:
        logging.debug("Necessary filter passed")
    return violations


def unimodular_proportional(a: Poly, b: Poly) -> Optional[float]:
    """Angle theta with a = e^{i*theta} b, or None."""
    c = unimodular_constant(a, b)
    return None if c is None else unit_angle(c)


def unimodular_constant(a: Poly, b: Poly) -> Optional[GaussianRational]:
    """The exact c with a = c*b and |c| = 1, or None."""
    if a.domain != EXACT or b.domain != EXACT:
        logging.error("Unimodular proportionality requires exact polynomials")
        raise ValueError("unimodular_proportional requires exact polynomials")
    c = proportionality_constant(a, b)
    if c is None or c.abs2() != 1:
        return None
    return c


def _half_plane_side(h: GaussianRational) -> str:
    return UPPER if h.im > 0 else LOWER


def _wrong_side_evidence(m2: Poly, side: str) -> Optional[str]:
    report = half_plane_count(m2)
    bad = report.lower if side == UPPER else report.upper
    if bad == 0:
        return None
    return f"{bad} zero(s) of M2 in the open {LOWER if side == UPPER else UPPER} half-plane"


def _nonreal_zero_evidence(m2: Poly) -> Optional[str]:
    report = half_plane_count(m2)
    if report.upper == report.lower == 0:
        return None
    return f"M2 has {report.upper} upper and {report.lower} lower zero(s)"


def classify_operator(op: OperatorSpec) -> Verdict:
    """
    Real-rootedness preservation on real polynomials.

    Preserving iff Re h = 0 and either M1 = c*M2 with |c| = 1 and M2 has only
    real zeros, or M1 = c*conj_flip(M2) with |c| = 1 and every zero of M2 lies
    in the closed half-plane Im h * Im z >= 0. The image of 1 is (1 + c)*M2 in
    the first branch, hence the condition on the zeros of M2 there.

    Violations named in the verdict:
    - V_RE_H: Re h != 0.
    - V_NOT_PROPORTIONAL: M1 is no unimodular multiple of M2.
    - V_M2_NOT_REAL_ROOTED: M1 = c*M2 with |c| = 1, but M2 has non-real zeros.
    - V_NOT_HB_PAIR: M1 is no unimodular multiple of conj_flip(M2).
    - V_WRONG_SIDE: M1 = c*conj_flip(M2), but M2 has zeros in the open
      half-plane Im h * Im z < 0.
    """
    _require_exact(op)
    violations = []
    re_ok = op.h.re == 0
    if not re_ok:
        violations.append(Violation(V_RE_H, f"h = {op.h}"))

    c = unimodular_constant(op.M1, op.M2)
    if c is None:
        violations.append(Violation(V_NOT_PROPORTIONAL, "cross-multiplication or modulus check failed"))
    elif re_ok:
        evidence = _nonreal_zero_evidence(op.M2)
        if evidence is None:
            logging.info(f"Operator preserves real-rootedness ({CONSTANT_UNIMODULAR}, c = {c})")
            return Verdict(True, CONSTANT_UNIMODULAR, unit_angle(c), (), c)
        violations.append(Violation(V_M2_NOT_REAL_ROOTED, evidence))

    pair = unimodular_constant(op.M1, conj_flip(op.M2))
    if pair is None:
        violations.append(Violation(V_NOT_HB_PAIR, "cross-multiplication or modulus check failed"))
    elif re_ok:
        evidence = _wrong_side_evidence(op.M2, _half_plane_side(op.h))
        if evidence is None:
            logging.info(f"Operator preserves real-rootedness ({HB_PAIR}, c = {pair})")
            return Verdict(True, HB_PAIR, unit_angle(pair), (), pair)
        violations.append(Violation(V_WRONG_SIDE, evidence))

    constant = pair if pair is not None else c
    logging.info(f"Operator does not preserve real-rootedness: {[v.name for v in violations]}")
    return Verdict(False, NONE, None if constant is None else unit_angle(constant),
                   tuple(violations), constant)


def classify_lp_preserver(op: OperatorSpec) -> Verdict:
    """
    Laguerre-Polya class preservation for polynomial coefficients.

    Requires Re h = 0 and, written with Im h > 0 (swap otherwise),
    M1 = conj_flip(M2) with every zero of M2 in the closed upper half-plane.
    When M2/M1 is moreover constant the branch is reported as
    constant_unimodular. A polynomial M2 has no exponential factor in its
    Hadamard form, so the conditions on the linear exponent hold trivially.
    """
    _require_exact(op)
    if op.h.re != 0:
        violation = Violation(V_RE_H, f"h = {op.h}")
        logging.info("Operator does not preserve the Laguerre-Polya class (Re h != 0)")
        return Verdict(False, NONE, None, (violation,))
    oriented = op if op.h.im > 0 else swap(op)
    if oriented.M1 != conj_flip(oriented.M2):
        violation = Violation(V_NOT_CONJUGATE, f"M1 = {oriented.M1!r}, conj_flip(M2) = {conj_flip(oriented.M2)!r}")
        logging.info("Operator does not preserve the Laguerre-Polya class (M1 != conj_flip(M2))")
        return Verdict(False, NONE, None, (violation,))

    one = GaussianRational(1)
    evidence = _wrong_side_evidence(oriented.M2, UPPER)
    if evidence is not None:
        logging.info(f"Operator does not preserve the Laguerre-Polya class ({evidence})")
        return Verdict(False, NONE, 0.0, (Violation(V_WRONG_SIDE, evidence),), one)
    ratio = unimodular_constant(oriented.M2, oriented.M1)
    branch = CONSTANT_UNIMODULAR if ratio is not None else HB_PAIR
    logging.info(f"Operator preserves the Laguerre-Polya class ({branch})")
    return Verdict(True, branch, 0.0, (), one)
