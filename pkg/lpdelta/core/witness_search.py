"""
Witnesses of non-preservation.

Closed-form transcendental witnesses e^{-a z^2 + b z}, and a search over
finite families of real-rooted polynomials for one whose image under the
operator is not real-rooted.
"""

import cmath
import itertools
import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from lpdelta.core.operator_engine import OperatorSpec, apply_delta, apply_delta_numeric, swap
from lpdelta.core.poly_core import (
    EXACT,
    Poly,
    evaluate,
    from_roots,
    mul,
    scale,
    square_free,
    sub,
    to_float,
)
from lpdelta.core.zero_location import (
    NOT_REAL_ROOTED,
    REAL_ROOTED,
    aberth_roots,
    certify_real_rooted,
)

MONOMIALS = "monomials"
LINEAR_PRODUCTS = "linear_products"
HERMITE = "hermite"
RANDOM_REAL_ROOTED = "random_real_rooted"
FAMILIES = (MONOMIALS, LINEAR_PRODUCTS, HERMITE, RANDOM_REAL_ROOTED)

DEFAULT_FAMILY_PARAMS = {
    MONOMIALS: {"count": 9},
    LINEAR_PRODUCTS: {"roots": [-2, -1, 0, 1, 2], "max_degree": 3},
    HERMITE: {"max_degree": 12},
    RANDOM_REAL_ROOTED: {"max_degree": 8, "bound": 10, "max_denominator": 8},
}

DEFAULT_BUDGET = 500
DEFAULT_RATIO_TOL = 1e-12
HERMITE_MAX_DEGREE = 12


@dataclass(frozen=True)
class CounterexampleReport:
    """
    A real-rooted input whose image is not real-rooted.

    Both certificates are recomputed on construction.
    """

    input_poly: Poly
    image: Poly
    nonreal_root: complex
    family: str
    attempts: int
    skipped_zero: int = 0

    def __post_init__(self):
        if certify_real_rooted(self.input_poly).verdict != REAL_ROOTED:
            logging.error(f"Counterexample input {self.input_poly!r} is not real-rooted")
            raise ValueError("Counterexample input must certify real_rooted")
        if certify_real_rooted(self.image).verdict != NOT_REAL_ROOTED:
            logging.error(f"Counterexample image {self.image!r} is real-rooted")
            raise ValueError("Counterexample image must certify not_real_rooted")


@dataclass(frozen=True)
class TranscendentalWitness:
    """f(z) = e^{-a z^2 + b z} with Delta(f)(z0) = 0 at a non-real z0."""

    z0: complex
    w0: complex
    a: float
    b: float
    step: float
    residual: float
    swapped: bool


def _gaussian_exp_log(a: float, b: float):
    return lambda z: -a * z * z + b * z


def exp_witness_params(z0: complex, w0: complex, step: float = 1.0,
                       tol: float = DEFAULT_RATIO_TOL) -> Tuple[float, float]:
    """
    Parameters (a, b) with f(z) = e^{-a z^2 + b z} satisfying
    f(z0 + i*step) / f(z0 - i*step) = w0.

    Parameters:
    z0 (complex): Point in the open upper half-plane.
    w0 (complex): Target ratio, |w0| >= 1.
    step (float): Positive imaginary part of the operator step.
    tol (float): Relative tolerance of the ratio check.

    Returns:
    tuple: (a, b) with a >= 0 and b real.
    """
    z0, w0 = complex(z0), complex(w0)
    if not z0.imag > 0:
        logging.error(f"exp_witness_params needs Im z0 > 0, got {z0}")
        raise ValueError("z0 must lie in the open upper half-plane")
    if abs(w0) < 1:
        logging.error(f"exp_witness_params needs |w0| >= 1, got {abs(w0)}")
        raise ValueError("w0 must satisfy |w0| >= 1")
    if not step > 0:
        raise ValueError("step must be positive")

    alpha, beta = z0.real, z0.imag
    R, theta = abs(w0), cmath.phase(w0)
    a = math.log(R) / (4 * step * beta)
    b = 2 * a * alpha + theta / (2 * step)

    log_f = _gaussian_exp_log(a, b)
    ratio = cmath.exp(log_f(z0 + 1j * step) - log_f(z0 - 1j * step))
    if abs(ratio - w0) > tol * abs(w0):
        logging.error(f"Witness ratio check failed: {ratio} vs {w0}")
        raise ArithmeticError(f"Ratio identity failed: f(z0+ih)/f(z0-ih) = {ratio}, expected {w0}")
    return a, b


def quadratic_exp_check(a: float, b: float) -> float:
    """
    |g(i)| for f(z) = (z^2 - 4/(e^{4a} - 1)) e^{bz}, M(z) = -e^{-4iaz + 2bi} and
    g(z) = f(z + i) + M(z) f(z - i). The exact value is 0.
    """
    if not a > 0:
        logging.error(f"quadratic_exp_check needs a > 0, got {a}")
        raise ValueError("a must be positive")
    K = 4 / math.expm1(4 * a)

    def f(z):
        return (z * z - K) * cmath.exp(b * z)

    def M(z):
        return -cmath.exp(-4j * a * z + 2j * b)

    g = f(2j) + M(1j) * f(0j)
    return abs(g)


def _hermite(max_degree: int) -> Iterator[Poly]:
    """H_1, H_2, ... by H_{n+1} = 2z H_n - 2n H_{n-1}."""
    prev, cur = Poly((1,)), Poly((0, 2))
    two_z = Poly((0, 2))
    for n in range(1, max_degree + 1):
        yield cur
        prev, cur = cur, sub(mul(two_z, cur), scale(2 * n, prev))


def _linear_products(roots: Sequence, max_degree: int) -> Iterator[Poly]:
    roots = [Fraction(r) for r in roots]
    for degree in range(1, max_degree + 1):
        for combo in itertools.combinations_with_replacement(roots, degree):
            yield from_roots(combo)


def _random_real_rooted(seed: int, max_degree: int, bound: int, max_denominator: int,
                        count: Optional[int]) -> Iterator[Poly]:
    rng = random.Random(seed)
    drawn = itertools.count() if count is None else range(count)
    for _ in drawn:
        degree = rng.randint(1, max_degree)
        roots = []
        for _ in range(degree):
            den = rng.randint(1, max_denominator)
            roots.append(Fraction(rng.randint(-bound * den, bound * den), den))
        yield from_roots(roots)


def generate_family(name: str, params: Optional[Dict] = None, seed: int = 0) -> Iterator[Poly]:
    """
    Deterministic stream of real-rooted exact polynomials.

    monomials: 1, z, ..., z^{count-1}.
    linear_products: products of (z - r) over multisets of `roots`, by degree.
    hermite: physicists' Hermite polynomials H_1 .. H_{max_degree} (max_degree <= 12).
    random_real_rooted: seeded products of (z - r), r rational in [-bound, bound];
    endless unless `count` is given.
    """
    if name not in FAMILIES:
        logging.error(f"Unknown polynomial family {name!r}")
        raise ValueError(f"Unknown family {name!r}; expected one of {FAMILIES}")
    merged = dict(DEFAULT_FAMILY_PARAMS[name])
    merged.update(params or {})

    if name == MONOMIALS:
        count = int(merged["count"])
        if count < 1:
            raise ValueError("monomials count must be >= 1")
        return (Poly.monomial(k) for k in range(count))
    if name == LINEAR_PRODUCTS:
        if not merged["roots"] or int(merged["max_degree"]) < 1:
            raise ValueError("linear_products needs roots and max_degree >= 1")
        return _linear_products(merged["roots"], int(merged["max_degree"]))
    if name == HERMITE:
        max_degree = int(merged["max_degree"])
        if not 1 <= max_degree <= HERMITE_MAX_DEGREE:
            raise ValueError(f"hermite max_degree must lie in 1..{HERMITE_MAX_DEGREE}")
        return _hermite(max_degree)
    if int(merged["max_degree"]) < 1 or int(merged["bound"]) < 1 or int(merged["max_denominator"]) < 1:
        raise ValueError("random_real_rooted parameters must be positive")
    return _random_real_rooted(seed, int(merged["max_degree"]), int(merged["bound"]),
                               int(merged["max_denominator"]), merged.get("count"))


def _nonreal_root(image: Poly) -> complex:
    """The root of `image` farthest from the real axis."""
    reduced = square_free(image) if image.domain == EXACT else image
    roots = aberth_roots(reduced)
    return max(roots, key=lambda z: abs(z.imag))


def find_counterexample(op: OperatorSpec, families: Optional[List[str]] = None,
                        budget: int = DEFAULT_BUDGET, seed: int = 0,
                        family_params: Optional[Dict[str, Dict]] = None) -> Optional[CounterexampleReport]:
    """
    First polynomial, in family-then-index order, whose image is not real-rooted.

    The budget counts polynomials drawn across all families. Identically-zero
    images are skipped and counted.
    """
    if budget < 1:
        logging.error(f"Search budget must be >= 1, got {budget}")
        raise ValueError("budget must be >= 1")
    families = list(families) if families else list(FAMILIES)
    family_params = family_params or {}
    attempts = 0
    skipped = 0
    logging.info(f"Starting counterexample search over {families} (budget {budget}, seed {seed})")
    for name in families:
        for p in generate_family(name, family_params.get(name), seed):
            if attempts >= budget:
                logging.info(f"Search budget of {budget} exhausted without a witness "
                             f"({skipped} zero image(s) skipped)")
                return None
            attempts += 1
            candidate = p if op.domain == EXACT else to_float(p)
            image = apply_delta(op, candidate)
            if image.is_zero():
                skipped += 1
                continue
            certificate = certify_real_rooted(image)
            logging.debug(f"{name} #{attempts}: {candidate!r} -> {certificate.verdict}")
            if certificate.verdict == NOT_REAL_ROOTED:
                report = CounterexampleReport(candidate, image, _nonreal_root(image),
                                              name, attempts, skipped)
                logging.info(f"Found witness {candidate!r} in family {name} after {attempts} draw(s)")
                return report
    logging.info(f"No witness among {attempts} polynomial(s) ({skipped} zero image(s) skipped)")
    return None


def _scan_grid(radius: float, points: int) -> np.ndarray:
    xs = np.linspace(-radius, radius, 2 * points + 1)
    ys = np.linspace(radius / points, radius, points)
    return (xs[None, :] + 1j * ys[:, None]).ravel()


def transcendental_witness(op: OperatorSpec, z0: Optional[complex] = None,
                           scan_radius: float = 3.0, scan_points: int = 24,
                           tol: float = 1e-9,
                           ratio_tol: float = DEFAULT_RATIO_TOL) -> Optional[TranscendentalWitness]:
    """
    A Laguerre-Polya function e^{-a z^2 + b z} whose image vanishes at a
    non-real point.

    For Re h = 0 (Im h < 0 handled through swap) any z0 in the upper
    half-plane with |M2(z0) / M1(z0)| >= 1 gives one: choose f with
    f(z0 + h) / f(z0 - h) = -M2(z0) / M1(z0). Without z0 the upper half-plane
    is scanned row by row for the first point with the ratio strictly above 1.
    Returns None when the scan finds nothing.
    """
    h = complex(op.h)
    if h.real != 0:
        logging.error("transcendental_witness needs a purely imaginary step")
        raise ValueError("transcendental_witness requires Re h = 0")
    swapped = h.imag < 0
    work = swap(op) if swapped else op
    step = abs(h.imag)
    m1, m2 = to_float(work.M1), to_float(work.M2)

    def ratio_at(z):
        d = complex(evaluate(m1, z))
        if d == 0:
            return None
        return -complex(evaluate(m2, z)) / d

    if z0 is not None:
        z0 = complex(z0)
        w0 = ratio_at(z0)
        if w0 is None:
            raise ValueError(f"M1 vanishes at z0 = {z0}")
    else:
        w0 = None
        for z in _scan_grid(scan_radius, scan_points):
            w = ratio_at(complex(z))
            if w is not None and abs(w) > 1 + tol:
                z0, w0 = complex(z), w
                break
        if w0 is None:
            logging.info("No point with |M2/M1| > 1 found in the scanned upper half-plane")
            return None

    a, b = exp_witness_params(z0, w0, step, ratio_tol)
    log_f = _gaussian_exp_log(a, b)

    def f(z):
        return cmath.exp(log_f(z))

    value = apply_delta_numeric(work, f, z0)
    scale_ = abs(complex(evaluate(m1, z0)) * f(z0 + 1j * step)) + abs(complex(evaluate(m2, z0)) * f(z0 - 1j * step))
    residual = abs(value) / scale_ if scale_ else abs(value)
    if residual > tol:
        logging.error(f"Transcendental witness residual {residual:.3e} exceeds {tol}")
        raise ArithmeticError(f"Witness residual {residual} exceeds tolerance {tol}")
    witness = TranscendentalWitness(z0, w0, a, b, step, residual, swapped)
    logging.info(f"Transcendental witness: a = {a:.6g}, b = {b:.6g}, zero of the image near {z0}")
    return witness
