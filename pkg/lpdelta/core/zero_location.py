"""
Zero location of polynomials.

Exact paths (Sturm chains, gcd towers, Cauchy indices) run on sympy.Poly over
the rationals and give rigorous counts. The numeric path is an Aberth-Ehrlich
simultaneous iteration on numpy arrays, used as an oracle and for float input.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from lpdelta.core.poly_core import (
    EXACT,
    FLOAT,
    Poly,
    exact_div,
    from_sympy,
    gcd,
    is_real,
    monic,
    neg,
    re_im_parts,
    to_sympy,
)

UPPER = "upper"
LOWER = "lower"

REAL_ROOTED = "real_rooted"
NOT_REAL_ROOTED = "not_real_rooted"
IDENTICALLY_ZERO = "identically_zero"

DEFAULT_BAND_TOL = 1e-8
DEFAULT_ABERTH_TOL = 1e-12
DEFAULT_ABERTH_MAX_ITER = 200

# Angular offset of the Aberth starting circle (radians); breaks the symmetry
# with real-coefficient polynomials.
_ABERTH_ANGLE_OFFSET = (math.sqrt(5) - 1) / 2
_NOISE_FACTOR = 4.0


class ConvergenceError(RuntimeError):
    """The Aberth iteration did not reach its tolerance within the iteration cap."""

    def __init__(self, message: str, iterations: int, max_correction: float):
        super().__init__(message)
        self.iterations = iterations
        self.max_correction = max_correction


@dataclass(frozen=True)
class ZeroLocationReport:
    upper: int
    on_axis: int
    lower: int
    method: str
    witnesses: Optional[Tuple[complex, ...]] = None

    @property
    def total(self) -> int:
        return self.upper + self.on_axis + self.lower

    def swapped(self) -> "ZeroLocationReport":
        return ZeroLocationReport(self.lower, self.on_axis, self.upper, self.method,
                                  None if self.witnesses is None
                                  else tuple(z.conjugate() for z in self.witnesses))


@dataclass(frozen=True)
class RealRootedCertificate:
    verdict: str
    method: str
    detail: Dict = field(default_factory=dict)


def _real_sign(c) -> int:
    """Sign of a real exact scalar."""
    if c.im != 0:
        raise ValueError("Sign requested for a non-real coefficient")
    return (c.re > 0) - (c.re < 0)


def _sign_at_infinity(p: Poly, positive: bool) -> int:
    s = _real_sign(p.lead)
    if not positive and p.degree % 2 == 1:
        s = -s
    return s


def _variations(signs: List[int]) -> int:
    """Count sign changes in a sequence, ignoring zeros."""
    nonzero = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def _require_real_exact(p: Poly, what: str) -> None:
    if p.domain != EXACT:
        logging.error(f"{what} requires the exact domain")
        raise ValueError(f"{what} requires exact arithmetic; got a float-domain polynomial")
    if not is_real(p):
        logging.error(f"{what} requires real coefficients, got {p!r}")
        raise ValueError(f"{what} requires a real-coefficient polynomial")


def remainder_chain(f0: Poly, f1: Poly) -> List[Poly]:
    """
    Signed remainder sequence f0, f1, f2, ... with f_{k+1} = -rem(f_{k-1}, f_k),
    stopping before the first zero remainder.
    """
    chain = [to_sympy(f0, f1), to_sympy(f1, f0)]
    while not chain[-1].is_zero:
        rem = chain[-2].rem(chain[-1])
        if rem.is_zero:
            break
        chain.append(-rem)
    return [from_sympy(f) for f in chain if not f.is_zero]


def sturm_chain(p: Poly) -> List[Poly]:
    """Sturm sequence of the square-free part of p, as built by sympy."""
    _require_real_exact(p, "sturm_chain")
    return [from_sympy(f) for f in to_sympy(p).sturm()]


def _variation_difference(chain: List[Poly]) -> int:
    at_minus = _variations([_sign_at_infinity(f, positive=False) for f in chain])
    at_plus = _variations([_sign_at_infinity(f, positive=True) for f in chain])
    return at_minus - at_plus


def cauchy_index(num: Poly, den: Poly) -> int:
    """
    Cauchy index of num/den over (-inf, inf): jumps from -inf to +inf minus
    jumps from +inf to -inf, as the variation difference of the remainder chain
    started at (den, num).
    """
    _require_real_exact(num, "cauchy_index")
    _require_real_exact(den, "cauchy_index")
    if den.is_zero():
        raise ZeroDivisionError("Cauchy index with a zero denominator")
    if num.is_zero():
        return 0
    return _variation_difference(remainder_chain(den, num))


def sturm_real_count(p: Poly, multiplicity: bool = False) -> int:
    """
    Number of real roots of a real-coefficient exact polynomial.

    Distinct roots by default; with multiplicity=True the count runs over the
    gcd tower p, gcd(p, p'), ... where the k-th level holds the roots of
    multiplicity > k.
    """
    _require_real_exact(p, "sturm_real_count")
    if p.is_zero():
        logging.error("sturm_real_count called on the zero polynomial")
        raise ValueError("Real-root count of the zero polynomial is undefined")
    if not multiplicity:
        return _distinct_real_count(to_sympy(p))
    return sum(gcd_tower_counts(p))


def _distinct_real_count(level) -> int:
    if level.degree() < 1:
        return 0
    return int(level.count_roots())


def gcd_tower_counts(p: Poly) -> List[int]:
    """Distinct real-root counts of p, gcd(p, p'), gcd of that with its derivative, ..."""
    _require_real_exact(p, "gcd_tower_counts")
    counts = []
    level = to_sympy(monic(p))
    while level.degree() >= 1:
        counts.append(_distinct_real_count(level))
        level = level.gcd(level.diff())
    return counts


def real_root_count(p: Poly) -> int:
    """Real roots counted with multiplicity."""
    return sturm_real_count(p, multiplicity=True)


def certify_real_rooted(p: Poly, tol: float = DEFAULT_BAND_TOL, aberth_tol: float = DEFAULT_ABERTH_TOL,
                        max_iter: int = DEFAULT_ABERTH_MAX_ITER) -> RealRootedCertificate:
    """
    Decide whether p has only real zeros.

    Exact domain: normalize by the leading coefficient, then real-rooted iff
    the normalized coefficients are real and the real-root count with
    multiplicity equals the degree. Float domain: numeric classification.
    """
    if p.is_zero():
        return RealRootedCertificate(IDENTICALLY_ZERO, p.domain, {"normalized": "0"})
    normalized = monic(p)
    if p.domain == FLOAT:
        return _certify_numeric(normalized, tol, aberth_tol, max_iter)

    detail = {"normalized": repr(normalized), "degree": p.degree}
    if p.degree == 0:
        detail["tower"] = []
        return RealRootedCertificate(REAL_ROOTED, EXACT, detail)
    if not is_real(normalized):
        detail["reason"] = "normalized polynomial has non-real coefficients"
        logging.debug(f"Not real-rooted (complex coefficients): {p!r}")
        return RealRootedCertificate(NOT_REAL_ROOTED, EXACT, detail)
    tower = gcd_tower_counts(normalized)
    count = sum(tower)
    detail["tower"] = tower
    detail["real_roots"] = count
    verdict = REAL_ROOTED if count == p.degree else NOT_REAL_ROOTED
    logging.debug(f"Certificate for {p!r}: {verdict} ({count}/{p.degree} real roots)")
    return RealRootedCertificate(verdict, EXACT, detail)


def _certify_numeric(p: Poly, tol: float, aberth_tol: float, max_iter: int) -> RealRootedCertificate:
    coeffs_real = all(abs(c.imag) <= tol * (1 + abs(c)) for c in p.coeffs)
    detail = {"normalized": repr(p), "degree": p.degree}
    if p.degree == 0:
        return RealRootedCertificate(REAL_ROOTED, FLOAT, detail)
    report = half_plane_count(p, tol=tol, aberth_tol=aberth_tol, max_iter=max_iter)
    detail["on_axis"] = report.on_axis
    detail["witnesses"] = [complex(z) for z in report.witnesses]
    ok = coeffs_real and report.on_axis == p.degree
    return RealRootedCertificate(REAL_ROOTED if ok else NOT_REAL_ROOTED, FLOAT, detail)


def root_bound(coeffs: np.ndarray) -> float:
    """Cauchy bound 1 + max|a_k / a_n| on the modulus of every root (ascending coefficients)."""
    lead = abs(coeffs[-1])
    if len(coeffs) < 2:
        return 1.0
    return 1.0 + float(np.max(np.abs(coeffs[:-1]))) / lead


def aberth_roots(p: Poly, tol: float = DEFAULT_ABERTH_TOL,
                 max_iter: int = DEFAULT_ABERTH_MAX_ITER) -> List[complex]:
    """
    All deg(p) roots of p with multiplicity by Aberth-Ehrlich iteration.

    Starting points lie on a circle of radius given by the Cauchy root bound,
    equally spaced with a fixed angular offset, so the result is deterministic.
    Iteration stops once every correction satisfies |w| <= tol*(1 + |z|).
    """
    if p.is_zero() or p.degree < 1:
        logging.error(f"aberth_roots needs degree >= 1, got {p!r}")
        raise ValueError("aberth_roots requires a polynomial of degree >= 1")
    coeffs = np.array([complex(c) for c in p.coeffs], dtype=np.complex128)
    if not np.all(np.isfinite(coeffs)):
        raise OverflowError("Non-finite polynomial coefficients")
    coeffs = coeffs / coeffs[-1]
    n = len(coeffs) - 1
    if n == 1:
        return [complex(-coeffs[0])]

    dcoeffs = coeffs[1:] * np.arange(1, n + 1)
    abs_coeffs = np.abs(coeffs)
    radius = root_bound(coeffs)
    angles = 2 * np.pi * np.arange(n) / n + _ABERTH_ANGLE_OFFSET
    z = radius * np.exp(1j * angles)

    max_correction = math.inf
    for iteration in range(1, max_iter + 1):
        # numpy.polyval wants descending coefficients
        val = np.polyval(coeffs[::-1], z)
        dval = np.polyval(dcoeffs[::-1], z)
        # Horner rounding-error bound: below it p(z) is indistinguishable from 0
        noise = _NOISE_FACTOR * n * np.finfo(float).eps * np.polyval(abs_coeffs[::-1], np.abs(z))
        at_noise = np.abs(val) <= noise
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        recip = 1.0 / diff
        np.fill_diagonal(recip, 0.0)
        acc = recip.sum(axis=1)
        denom = dval - val * acc
        denom[np.abs(denom) == 0] = 1.0
        w = np.where(at_noise, 0.0, val / denom)
        z = z - w
        if not np.all(np.isfinite(z)):
            logging.error("Aberth iteration produced non-finite iterates")
            raise OverflowError("Aberth iteration overflow")
        max_correction = float(np.max(np.abs(w) / (1 + np.abs(z))))
        if max_correction <= tol:
            logging.debug(f"Aberth converged after {iteration} iterations")
            return [complex(r) for r in z]

    logging.error(f"Aberth iteration did not converge in {max_iter} iterations "
                  f"(last relative correction {max_correction:.3e})")
    raise ConvergenceError(f"Aberth iteration did not converge in {max_iter} iterations",
                           max_iter, max_correction)


def classify_numeric_roots(roots: List[complex], tol: float = DEFAULT_BAND_TOL) -> Tuple[int, int, int]:
    """(upper, on_axis, lower) with |Im z| <= tol*(1 + |z|) counted on the axis."""
    upper = on_axis = lower = 0
    for z in roots:
        if abs(z.imag) <= tol * (1 + abs(z)):
            on_axis += 1
        elif z.imag > 0:
            upper += 1
        else:
            lower += 1
    return upper, on_axis, lower


def half_plane_count(p: Poly, tol: float = DEFAULT_BAND_TOL, method: Optional[str] = None,
                     aberth_tol: float = DEFAULT_ABERTH_TOL,
                     max_iter: int = DEFAULT_ABERTH_MAX_ITER) -> ZeroLocationReport:
    """
    Count zeros of p in the open upper half-plane, on the real axis and in the
    open lower half-plane, with multiplicity.

    The exact method is used for exact-domain input unless method='numeric'.
    """
    if p.is_zero():
        logging.error("half_plane_count called on the zero polynomial")
        raise ValueError("Zero location of the zero polynomial is undefined")
    method = method or p.domain
    if method == EXACT:
        if p.domain != EXACT:
            logging.error("Exact half-plane count requested for float input")
            raise ValueError("Exact half-plane count requires exact input")
        return _half_plane_exact(p)
    if method not in (FLOAT, "numeric"):
        raise ValueError(f"Unknown method {method!r}")
    if p.degree == 0:
        return ZeroLocationReport(0, 0, 0, "numeric", ())
    roots = aberth_roots(p, aberth_tol, max_iter)
    upper, on_axis, lower = classify_numeric_roots(roots, tol)
    return ZeroLocationReport(upper, on_axis, lower, "numeric", tuple(roots))


def _half_plane_exact(p: Poly) -> ZeroLocationReport:
    if p.degree == 0:
        return ZeroLocationReport(0, 0, 0, EXACT)
    re_part, im_part = re_im_parts(p)
    common = gcd(re_part, im_part)

    # Real zeros of p are exactly the real zeros of gcd(Re p, Im p); its
    # non-real zeros come in conjugate pairs.
    on_axis = real_root_count(common) if common.degree >= 1 else 0
    paired = (common.degree - on_axis) // 2 if common.degree >= 1 else 0

    if common.degree >= 1:
        re_part = exact_div(re_part, common)
        im_part = exact_div(im_part, common)
    rest = max(re_part.degree, im_part.degree)
    upper = lower = 0
    if rest >= 1:
        # Keep deg(den) >= deg(num): multiplying by -i maps P + iQ to Q - iP
        # without moving any zero.
        den, num = re_part, im_part
        if num.degree > den.degree:
            den, num = im_part, neg(re_part)
        index = cauchy_index(num, den)
        upper = (rest - index) // 2
        lower = rest - upper
    report = ZeroLocationReport(upper + paired, on_axis, lower + paired, EXACT)
    logging.debug(f"Half-plane count of {p!r}: {report}")
    return report


def quasi_hb_check(p: Poly, side: str, tol: float = DEFAULT_BAND_TOL) -> bool:
    """True iff p has no zero in the open half-plane opposite to `side`."""
    if side not in (UPPER, LOWER):
        raise ValueError(f"side must be '{UPPER}' or '{LOWER}'")
    report = half_plane_count(p, tol=tol)
    return (report.lower if side == UPPER else report.upper) == 0

