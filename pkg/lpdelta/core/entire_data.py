"""
Finite Hadamard-form data of entire functions

    C z^n e^{-a z^2 + b z} * prod_k E(z, alpha_k) * prod_k E(z, x_k)

and the checks on them: Laguerre-Polya membership, the Hermite-Biehler type
conditions on the linear exponent, the Blaschke sum, and pointwise evaluation.

E(z, w) is (1 - z/w) e^{z/w} under the with_exp_factors convention and
(1 - z/w) under the genus0 convention. Finite data converts between the two by
b -> b + sum 1/w over all stored zeros.

The quadratic exponent is stored with the sign of e^{-a z^2} and must satisfy
a >= 0; data in the e^{+a z^2} form has to be negated by the caller.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, List, Optional, Tuple

from lpdelta.core.poly_core import GaussianRational

WITH_EXP_FACTORS = "with_exp_factors"
GENUS0 = "genus0"
CONVENTIONS = (WITH_EXP_FACTORS, GENUS0)

DEFAULT_BETA_TOL = 1e-12


def _as_complex(value, what: str) -> complex:
    if isinstance(value, GaussianRational):
        value = complex(value)
    try:
        out = complex(value)
    except (TypeError, ValueError):
        logging.error(f"{what} must be a number, got {value!r}")
        raise ValueError(f"{what} must be a number, got {value!r}")
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise ValueError(f"{what} must be finite, got {out}")
    return out


def _as_real(value, what: str) -> float:
    out = _as_complex(value, what)
    if out.imag != 0:
        logging.error(f"{what} must be real, got {out}")
        raise ValueError(f"{what} must be real, got {out}")
    return float(out.real)


@dataclass(frozen=True)
class EntireFnData:
    """
    Hadamard data with finitely many zeros.

    upper_zeros hold alpha_k with Im alpha_k > 0, real_zeros hold nonzero real
    x_k, and lower_zeros hold zeros with Im < 0 (only produced by
    conj_flip_data). Multiplicities are repeated entries.
    """

    C: complex
    n: int = 0
    a: float = 0.0
    b: complex = 0j
    upper_zeros: Tuple[complex, ...] = ()
    real_zeros: Tuple[float, ...] = ()
    convention: str = WITH_EXP_FACTORS
    lower_zeros: Tuple[complex, ...] = field(default=())

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            logging.error(f"Unknown factor convention {self.convention!r}")
            raise ValueError(f"convention must be one of {CONVENTIONS}")
        C = _as_complex(self.C, "C")
        if C == 0:
            logging.error("Hadamard data with C = 0 describes the zero function")
            raise ValueError("C must be nonzero")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 0:
            logging.error(f"Order of the zero at the origin must be a nonnegative integer, got {self.n!r}")
            raise ValueError("n must be a nonnegative integer")
        upper = tuple(_as_complex(z, "upper zero") for z in self.upper_zeros)
        lower = tuple(_as_complex(z, "lower zero") for z in self.lower_zeros)
        real = tuple(_as_real(x, "real zero") for x in self.real_zeros)
        for z in upper:
            if not z.imag > 0:
                logging.error(f"Upper zero {z} does not lie in the open upper half-plane")
                raise ValueError(f"upper_zeros need Im > 0, got {z}")
        for z in lower:
            if not z.imag < 0:
                logging.error(f"Lower zero {z} does not lie in the open lower half-plane")
                raise ValueError(f"lower_zeros need Im < 0, got {z}")
        for x in real:
            if x == 0:
                logging.error("A zero at the origin belongs in n, not in real_zeros")
                raise ValueError("real_zeros must be nonzero")
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "a", _as_real(self.a, "a"))
        object.__setattr__(self, "b", _as_complex(self.b, "b"))
        object.__setattr__(self, "upper_zeros", upper)
        object.__setattr__(self, "lower_zeros", lower)
        object.__setattr__(self, "real_zeros", real)

    @property
    def a_valid(self) -> bool:
        """The Gaussian coefficient satisfies a >= 0."""
        return self.a >= 0

    def zeros(self) -> List[complex]:
        """All stored nonzero zeros: upper, then lower, then real."""
        return list(self.upper_zeros) + list(self.lower_zeros) + [complex(x) for x in self.real_zeros]


@dataclass(frozen=True)
class HBConditionReport:
    accepted: bool
    beta: float
    reasons: Tuple[str, ...]
    convention: str
    blaschke: float


def check_lp_membership(d: EntireFnData) -> bool:
    """True iff the data is a real function with only real zeros and a >= 0."""
    return (not d.upper_zeros and not d.lower_zeros
            and d.C.imag == 0 and d.b.imag == 0 and d.a_valid)


def effective_beta(d: EntireFnData) -> float:
    """
    Imaginary part of the linear exponent once every convergence factor is
    absorbed into it.

    genus0: Im b. with_exp_factors: Im b + sum Im(1/alpha_k), i.e.
    Im b - sum Im alpha_k / |alpha_k|^2 for upper zeros.
    """
    beta = d.b.imag
    if d.convention == WITH_EXP_FACTORS:
        beta += math.fsum((1 / z).imag for z in d.upper_zeros + d.lower_zeros)
    return beta


def check_hb_conditions(d: EntireFnData, tol: float = DEFAULT_BETA_TOL) -> HBConditionReport:
    """
    Accept iff a >= 0, every complex zero lies in the upper half-plane and the
    effective linear exponent beta is >= 0. beta = 0 is accepted; the
    comparison allows `tol` relative to the size of the summed terms.
    """
    beta = effective_beta(d)
    reasons = []
    if not d.a_valid:
        reasons.append(f"a = {d.a} < 0")
    if d.lower_zeros:
        reasons.append(f"{len(d.lower_zeros)} zero(s) in the open lower half-plane")
    size = 1.0 + abs(d.b.imag)
    if d.convention == WITH_EXP_FACTORS:
        size += math.fsum(abs((1 / z).imag) for z in d.upper_zeros + d.lower_zeros)
    if beta < -tol * size:
        reasons.append(f"beta = {beta:.6g} < 0")
    report = HBConditionReport(not reasons, beta, tuple(reasons), d.convention, blaschke_sum(d))
    logging.debug(f"Hadamard condition check: {report}")
    return report


def blaschke_sum(d: EntireFnData) -> float:
    """sum Im alpha_k / (|alpha_k|^2 + 1) over the upper zeros."""
    return math.fsum(z.imag / (abs(z) ** 2 + 1) for z in d.upper_zeros)


def conj_flip_data(d: EntireFnData) -> EntireFnData:
    """Data of conj(M(conj z)): C and b conjugated, complex zeros mirrored."""
    return replace(
        d,
        C=d.C.conjugate(),
        b=d.b.conjugate(),
        upper_zeros=tuple(z.conjugate() for z in d.lower_zeros),
        lower_zeros=tuple(z.conjugate() for z in d.upper_zeros),
    )


def convert_convention(d: EntireFnData, target: str) -> EntireFnData:
    """Same function, rewritten under the `target` factor convention."""
    if target not in CONVENTIONS:
        raise ValueError(f"target must be one of {CONVENTIONS}")
    if target == d.convention:
        return d
    correction = sum((1 / z for z in d.zeros()), 0j)
    b = d.b + correction if target == GENUS0 else d.b - correction
    return replace(d, b=b, convention=target)


def eval_partial(d: EntireFnData, z: complex, terms: Optional[int] = None) -> complex:
    """
    C z^n e^{-a z^2 + b z} times the first `terms` product factors (all by
    default), taking the zeros in the order upper, lower, real.
    """
    zeros = d.zeros()
    if terms is None:
        terms = len(zeros)
    if terms < 0 or terms > len(zeros):
        logging.error(f"terms = {terms} outside 0..{len(zeros)}")
        raise ValueError(f"terms must lie in 0..{len(zeros)}")
    z = complex(z)
    exponent = -d.a * z * z + d.b * z
    value = d.C * z ** d.n
    for w in zeros[:terms]:
        value *= 1 - z / w
        if d.convention == WITH_EXP_FACTORS:
            exponent += z / w
    try:
        value *= cmath.exp(exponent)
    except OverflowError:
        logging.error(f"Overflow evaluating Hadamard data at z = {z}")
        raise
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        logging.error(f"Non-finite value evaluating Hadamard data at z = {z}")
        raise OverflowError(f"Evaluation overflow at z = {z}")
    return value


def from_polynomial_roots(lead, roots: Iterable, convention: str = GENUS0) -> EntireFnData:
    """
    Hadamard data of lead * prod(z - r).

    Roots at the origin go to n, real roots to real_zeros and roots with
    Im r > 0 to upper_zeros; roots in the open lower half-plane are rejected.
    """
    lead = _as_complex(lead, "lead")
    if lead == 0:
        raise ValueError("Leading constant must be nonzero")
    n = 0
    upper, real = [], []
    C = lead
    for r in roots:
        r = _as_complex(r, "root")
        if r == 0:
            n += 1
            continue
        if r.imag < 0:
            logging.error(f"Root {r} lies in the open lower half-plane")
            raise ValueError("from_polynomial_roots accepts roots in the closed upper half-plane only")
        if r.imag == 0:
            real.append(r.real)
        else:
            upper.append(r)
        C *= -r
    d = EntireFnData(C, n, 0.0, 0j, tuple(upper), tuple(real), GENUS0)
    return convert_convention(d, convention)
