"""
The central finite-difference operator

    Delta(f)(z) = M1(z) f(z + h) + M2(z) f(z - h)

acting on polynomials, and the Hermite-Biehler decomposition of its image.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

from lpdelta.core.poly_core import (
    EXACT,
    FLOAT,
    GaussianRational,
    Poly,
    Scalar,
    add,
    as_scalar,
    check_same_domain,
    conj_flip,
    evaluate,
    is_real,
    mul,
    proportionality_constant,
    re_im_parts,
    scalar_domain,
    scale,
    shift,
    to_float,
    unit_angle,
)


@dataclass(frozen=True)
class OperatorSpec:
    """
    Coefficients M1, M2 and step h of the operator, plus an optional angle
    theta in [0, 2*pi) with M1 = e^{i*theta} * conj_flip(M2).
    """

    M1: Poly
    M2: Poly
    h: Scalar
    theta: Optional[float] = None

    def __post_init__(self):
        domain = check_same_domain(self.M1, self.M2)
        if self.M1.is_zero() or self.M2.is_zero():
            logging.error("Operator coefficients must not be identically zero")
            raise ValueError("M1 and M2 must not be identically zero")
        if domain == EXACT and scalar_domain(self.h) == FLOAT:
            logging.error(f"Float step {self.h!r} given for exact coefficients")
            raise ValueError("Domain mismatch between step and coefficients")
        object.__setattr__(self, "h", as_scalar(self.h, domain))
        if self.h == 0:
            logging.error("Operator step h must be nonzero")
            raise ValueError("Zero step h")
        if self.theta is not None and not (0 <= self.theta < 2 * math.pi):
            raise ValueError("theta must lie in [0, 2*pi)")

    @property
    def domain(self) -> str:
        return self.M1.domain


def swap(op: OperatorSpec) -> OperatorSpec:
    """
    (M2, M1, -h): the same operator written with the opposite step.

    M1 = e^{i*theta} conj_flip(M2) implies M2 = e^{i*theta} conj_flip(M1), so
    theta carries over unchanged.
    """
    return OperatorSpec(op.M2, op.M1, -op.h, op.theta)


def apply_delta(op: OperatorSpec, p: Poly) -> Poly:
    """M1 * p(z + h) + M2 * p(z - h)."""
    check_same_domain(op.M1, p)
    return add(mul(op.M1, shift(p, op.h)), mul(op.M2, shift(p, -op.h)))


def apply_delta_numeric(op: OperatorSpec, f: Callable[[complex], complex], z: complex) -> complex:
    """Pointwise value M1(z) f(z+h) + M2(z) f(z-h) for an arbitrary callable f."""
    m1 = complex(evaluate(to_float(op.M1), z))
    m2 = complex(evaluate(to_float(op.M2), z))
    h = complex(op.h)
    return m1 * f(z + h) + m2 * f(z - h)


@dataclass(frozen=True)
class HBDecomposition:
    F: Poly
    RF: Poly
    identity_holds: bool
    theta: float
    method: str


def _rotation_factor(theta: float, exact: bool):
    """e^{-i*theta/2}; exact only for theta in {0, pi}."""
    if exact:
        if theta == 0:
            return GaussianRational(1)
        if theta == math.pi:
            return GaussianRational(0, -1)
        return None
    return cmath.exp(-0.5j * theta)


def _recover_theta(op: OperatorSpec):
    """Unit constant c and angle theta with M1 = c * conj_flip(M2), or (None, None)."""
    if op.domain == EXACT:
        c = proportionality_constant(op.M1, conj_flip(op.M2))
        if c is None or c.abs2() != 1:
            return None, None
        return c, unit_angle(c)
    m1 = [complex(x) for x in op.M1.coeffs]
    m2 = [complex(x).conjugate() for x in op.M2.coeffs]
    if len(m1) != len(m2):
        return None, None
    c = m1[-1] / m2[-1]
    if abs(abs(c) - 1) > 1e-12 or any(abs(a - c * b) > 1e-12 * (1 + abs(a)) for a, b in zip(m1, m2)):
        return None, None
    return c, unit_angle(c)


def hb_decomposition(op: OperatorSpec, p: Poly, tol: float = 1e-12) -> HBDecomposition:
    """
    F = e^{-i*theta/2} M2(z) p(z - h) and its real part RF.

    When M1 = e^{i*theta} conj_flip(M2), p is real and h is purely imaginary,
    e^{-i*theta/2} Delta(p) = 2 RF. The exact path is taken for theta in {0, pi}
    over exact data; otherwise the computation runs in floating point and the
    identity is checked to `tol`.
    """
    if not is_real(p):
        logging.error(f"hb_decomposition needs a real-coefficient polynomial, got {p!r}")
        raise ValueError("p must have real coefficients")
    c, recovered = _recover_theta(op)
    if c is None:
        logging.error("M1 is not a unimodular multiple of conj_flip(M2)")
        raise ValueError("Precondition violated: M1 != e^{i theta} conj_flip(M2)")
    theta = recovered if op.theta is None else op.theta
    if op.theta is not None and abs(cmath.exp(1j * op.theta) - complex(c)) > 1e-12:
        logging.error(f"Stored theta {op.theta} disagrees with the coefficients (recovered {recovered})")
        raise ValueError("Precondition violated: stored theta does not match M1 / conj_flip(M2)")

    exact = op.domain == EXACT and p.domain == EXACT and theta in (0, math.pi)
    rot = _rotation_factor(theta, exact)

    if exact:
        F = scale(rot, mul(op.M2, shift(p, -op.h)))
        RF, _ = re_im_parts(F)
        lhs = scale(rot, apply_delta(op, p))
        holds = lhs == scale(2, RF)
        method = EXACT
    else:
        fop = OperatorSpec(to_float(op.M1), to_float(op.M2), complex(op.h))
        fp = to_float(p)
        F = scale(rot, mul(fop.M2, shift(fp, -fop.h)))
        RF, _ = re_im_parts(F)
        lhs = scale(rot, apply_delta(fop, fp))
        diff = add(lhs, scale(-2, RF))
        size = max([abs(x) for x in lhs.coeffs] + [1.0])
        holds = all(abs(x) <= tol * size for x in diff.coeffs)
        method = "numeric"
    logging.debug(f"HB decomposition (theta={theta:.6g}, {method}): identity holds = {holds}")
    return HBDecomposition(F, RF, holds, theta, method)
