"""
Scalar domains and dense polynomial algebra.

Two scalar domains are supported:
- exact: GaussianRational, an element of sympy's Gaussian rational field QQ_I.
- float: Python complex (binary64 real and imaginary parts).

A polynomial is stored as a tuple of coefficients in ascending order of powers,
e.g. (1, 10, 5) represents 1 + 10z + 5z^2. Trailing zero coefficients are
stripped on construction, so the zero polynomial is the empty tuple.

Exact division, gcd, square-free parts, derivatives and Taylor shifts are
computed by sympy.Poly over QQ (real coefficients) or QQ_I. Float
polynomials use numpy.polynomial.
"""

import cmath
import logging
import math
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

import numpy as np
import numpy.polynomial.polynomial as npoly
import sympy
from sympy import QQ, QQ_I

EXACT = "exact"
FLOAT = "float"
DOMAINS = (EXACT, FLOAT)

# Degree marker of the zero polynomial.
ZERO_DEGREE = -math.inf

SYMBOL = sympy.Symbol("z")


def _qq(value):
    f = Fraction(value)
    return QQ(f.numerator, f.denominator)


def _fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _element(value):
    """QQ_I element for an exact scalar, or None when value is not exact."""
    if isinstance(value, GaussianRational):
        return value.value
    if isinstance(value, (int, Fraction, str)):
        return QQ_I(_qq(value))
    return None


class GaussianRational:
    """
    Exact complex scalar re + i*im with rational parts.

    Wraps a QQ_I element (`value`) and exposes its parts as fractions.Fraction,
    which is what the JSON codec writes. Compares equal to ints and Fractions
    with the same value.
    """

    __slots__ = ("value",)

    def __init__(self, re: Union[int, str, Fraction] = 0, im: Union[int, str, Fraction] = 0):
        if isinstance(re, float) or isinstance(im, float):
            raise ValueError("GaussianRational parts must be exact; use from_complex for floats")
        object.__setattr__(self, "value", QQ_I(_qq(re), _qq(im)))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def wrap(cls, element) -> "GaussianRational":
        out = object.__new__(cls)
        object.__setattr__(out, "value", element)
        return out

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        element = _element(value)
        if element is None:
            raise ValueError(f"Cannot use {value!r} as an exact scalar")
        return cls.wrap(element)

    @classmethod
    def from_complex(cls, value: complex) -> "GaussianRational":
        """Exact binary expansion of a finite float or complex."""
        value = complex(value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise OverflowError(f"Cannot convert non-finite value {value} to an exact scalar")
        return cls(Fraction(value.real), Fraction(value.imag))

    @property
    def re(self) -> Fraction:
        return _fraction(self.value.x)

    @property
    def im(self) -> Fraction:
        return _fraction(self.value.y)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational.wrap(QQ_I(self.value.x, -self.value.y))

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.value.y

    def __add__(self, other):
        element = _element(other)
        if element is None:
            return NotImplemented
        return GaussianRational.wrap(self.value + element)

    __radd__ = __add__

    def __sub__(self, other):
        element = _element(other)
        if element is None:
            return NotImplemented
        return GaussianRational.wrap(self.value - element)

    def __rsub__(self, other):
        element = _element(other)
        if element is None:
            return NotImplemented
        return GaussianRational.wrap(element - self.value)

    def __mul__(self, other):
        element = _element(other)
        if element is None:
            return NotImplemented
        return GaussianRational.wrap(self.value * element)

    __rmul__ = __mul__

    def __truediv__(self, other):
        element = _element(other)
        if element is None:
            return NotImplemented
        return GaussianRational.wrap(self.value / element)

    def __rtruediv__(self, other):
        element = _element(other)
        if element is None:
            return NotImplemented
        return GaussianRational.wrap(element / self.value)

    def __neg__(self):
        return GaussianRational.wrap(-self.value)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        return GaussianRational.wrap(self.value ** exponent)

    def __eq__(self, other):
        element = _element(other)
        if element is None:
            return NotImplemented
        return self.value == element

    def __hash__(self):
        if self.is_real():
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.value)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if re == 0:
            return f"{im}i"
        sign = "+" if im > 0 else "-"
        return f"({re}{sign}{abs(im)}i)"


Scalar = Union[GaussianRational, complex]

I = GaussianRational(0, 1)
ONE = GaussianRational(1)
ZERO = GaussianRational(0)


def scalar_domain(value) -> str:
    """Infer the domain a raw scalar belongs to."""
    if isinstance(value, (GaussianRational, int, Fraction)):
        return EXACT
    if isinstance(value, (float, complex)):
        return FLOAT
    raise ValueError(f"Unsupported scalar type {type(value).__name__}")


def as_scalar(value, domain: str) -> Scalar:
    """Coerce a raw scalar into the given domain, refusing float -> exact mixing."""
    if domain == EXACT:
        if isinstance(value, (float, complex)):
            logging.error(f"Float scalar {value!r} given where an exact scalar is required")
            raise ValueError(f"Domain mismatch: float scalar {value!r} in exact domain")
        return GaussianRational.coerce(value)
    if domain == FLOAT:
        if isinstance(value, GaussianRational):
            value = complex(value)
        out = complex(value)
        if not (math.isfinite(out.real) and math.isfinite(out.imag)):
            logging.error(f"Non-finite float scalar {out}")
            raise OverflowError(f"Non-finite scalar {out}")
        return out
    raise ValueError(f"Unknown domain {domain!r}")


class Poly:
    """
    Dense polynomial with ascending coefficients over one scalar domain.

    Values are immutable; every operation returns a new Poly.
    """

    __slots__ = ("coeffs", "domain")

    def __init__(self, coeffs: Iterable = (), domain: str = EXACT):
        if domain not in DOMAINS:
            raise ValueError(f"Unknown domain {domain!r}; expected one of {DOMAINS}")
        cs = [as_scalar(c, domain) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "domain", domain)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls, domain: str = EXACT) -> "Poly":
        return cls((), domain)

    @classmethod
    def constant(cls, c, domain: str = EXACT) -> "Poly":
        return cls((c,), domain)

    @classmethod
    def monomial(cls, k: int, c=1, domain: str = EXACT) -> "Poly":
        return cls([0] * k + [c], domain)

    @property
    def degree(self) -> Union[int, float]:
        if not self.coeffs:
            return ZERO_DEGREE
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("The zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Scalar:
        if k < 0:
            raise IndexError("No negative exponents")
        if k >= len(self.coeffs):
            return ZERO if self.domain == EXACT else 0j
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.domain == other.domain and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.domain, self.coeffs))

    def __add__(self, other):
        return add(self, _lift(other, self.domain))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, neg(_lift(other, self.domain)))

    def __rsub__(self, other):
        return add(_lift(other, self.domain), neg(self))

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return mul(self, other)
        return scale(other, self)

    def __rmul__(self, other):
        return scale(other, self)

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        return format_poly(self)


def _lift(value, domain: str) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly.constant(value, domain)


def format_poly(p: Poly, var: str = "z") -> str:
    """Human-readable form, highest power first, e.g. '2z^2 - 2'."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "+"
        if p.domain == EXACT and c.is_real():
            if c.re < 0:
                sign, c = "-", -c
            text = str(c.re)
        elif p.domain == FLOAT and c.imag == 0:
            if c.real < 0:
                sign, c = "-", -c
            text = repr(c.real)
        else:
            text = repr(c)
        if k > 0 and text == "1":
            text = ""
        power = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        parts.append((sign, f"{text}{power}"))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def check_same_domain(*polys: Poly) -> str:
    domains = {p.domain for p in polys}
    if len(domains) != 1:
        logging.error(f"Domain mismatch between polynomials: {sorted(domains)}")
        raise ValueError(f"Domain mismatch: {sorted(domains)}")
    return domains.pop()


def _require_exact(p: Poly, what: str) -> None:
    if p.domain != EXACT:
        logging.error(f"{what} requires the exact domain, got {p.domain}")
        raise ValueError(f"{what} requires the exact domain")


def to_sympy(p: Poly, *others: Poly, gaussian: bool = False) -> sympy.Poly:
    """
    sympy.Poly in z over QQ when p (and every polynomial in `others`) has real
    coefficients, over QQ_I otherwise or when `gaussian` is set. Passing the
    partners of a binary operation keeps both operands in one ground domain.
    """
    _require_exact(p, "to_sympy")
    if not gaussian and is_real(p) and all(is_real(q) for q in others):
        rep = [c.value.x for c in reversed(p.coeffs)]
        return sympy.Poly.from_list(rep, SYMBOL, domain=QQ)
    return sympy.Poly.from_list([c.value for c in reversed(p.coeffs)], SYMBOL, domain=QQ_I)


def from_sympy(poly: sympy.Poly) -> Poly:
    """Exact Poly from a univariate sympy.Poly over QQ or QQ_I."""
    coeffs = [GaussianRational.wrap(QQ_I.from_sympy(c)) for c in reversed(poly.all_coeffs())]
    return Poly(coeffs, EXACT)


def _float_coeffs(p: Poly) -> np.ndarray:
    return np.array(p.coeffs, dtype=np.complex128)


def _from_array(values) -> Poly:
    return Poly([complex(c) for c in values], FLOAT)


def add(p: Poly, q: Poly) -> Poly:
    domain = check_same_domain(p, q)
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    res = list(a)
    for k, c in enumerate(b):
        res[k] = res[k] + c
    return Poly(res, domain)


def neg(p: Poly) -> Poly:
    return Poly([-c for c in p.coeffs], p.domain)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    domain = check_same_domain(p, q)
    if p.is_zero() or q.is_zero():
        return Poly.zero(domain)
    if domain == FLOAT:
        return _from_array(npoly.polymul(_float_coeffs(p), _float_coeffs(q)))
    return from_sympy(to_sympy(p, q) * to_sympy(q, p))


def scale(c, p: Poly) -> Poly:
    c = as_scalar(c, p.domain)
    return Poly([c * a for a in p.coeffs], p.domain)


def evaluate(p: Poly, z) -> Scalar:
    """Value of p at z; Horner in the exact domain, numpy.polynomial in the float one."""
    z = as_scalar(z, p.domain)
    if p.domain == FLOAT:
        if p.is_zero():
            return 0j
        acc = complex(npoly.polyval(z, _float_coeffs(p)))
        if not (math.isfinite(acc.real) and math.isfinite(acc.imag)):
            logging.error(f"Overflow while evaluating {p!r} at {z}")
            raise OverflowError(f"Overflow while evaluating polynomial at {z}")
        return acc
    acc = ZERO
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def derivative(p: Poly) -> Poly:
    if p.degree < 1:
        return Poly.zero(p.domain)
    if p.domain == FLOAT:
        return _from_array(npoly.polyder(_float_coeffs(p)))
    return from_sympy(to_sympy(p).diff())


def monic(p: Poly) -> Poly:
    if p.is_zero():
        return p
    return scale(ONE / p.lead if p.domain == EXACT else 1 / p.lead, p)


def poly_divmod(p: Poly, q: Poly) -> Tuple[Poly, Poly]:
    """Euclidean division p = quot*q + rem with deg rem < deg q (exact domain only)."""
    check_same_domain(p, q)
    _require_exact(p, "divmod")
    if q.is_zero():
        logging.error("Polynomial division by the zero polynomial")
        raise ZeroDivisionError("Division by the zero polynomial")
    if p.is_zero():
        return Poly.zero(EXACT), Poly.zero(EXACT)
    quot, rem = to_sympy(p, q).div(to_sympy(q, p))
    return from_sympy(quot), from_sympy(rem)


def exact_div(p: Poly, q: Poly) -> Poly:
    """Quotient of p by q, which must divide it."""
    quot, rem = poly_divmod(p, q)
    if not rem.is_zero():
        logging.error(f"{q!r} does not divide {p!r}")
        raise ValueError("Inexact polynomial division")
    return quot


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor (exact domain); gcd(0, 0) = 0."""
    check_same_domain(p, q)
    _require_exact(p, "gcd")
    if p.is_zero() and q.is_zero():
        return Poly.zero(EXACT)
    if p.is_zero() or q.is_zero():
        return monic(q if p.is_zero() else p)
    return monic(from_sympy(to_sympy(p, q).gcd(to_sympy(q, p))))


def square_free(p: Poly) -> Poly:
    """Monic square-free part p / gcd(p, p')."""
    _require_exact(p, "square_free")
    if p.is_zero():
        logging.error("square_free of the zero polynomial")
        raise ZeroDivisionError("square_free of the zero polynomial")
    if p.degree == 0:
        return Poly.constant(1, EXACT)
    return monic(from_sympy(to_sympy(p).sqf_part()))


def shift(p: Poly, h) -> Poly:
    """Taylor shift: returns q with q(z) = p(z + h)."""
    if isinstance(h, Poly):
        raise ValueError("Shift step must be a scalar")
    if p.domain == EXACT and scalar_domain(h) == FLOAT:
        logging.error(f"Float shift {h!r} applied to an exact polynomial")
        raise ValueError("Domain mismatch between polynomial and shift")
    h = as_scalar(h, p.domain)
    if p.degree < 1:
        return p
    if p.domain == FLOAT:
        # Horner composition p(z + h)
        out = np.zeros(1, dtype=np.complex128)
        for c in reversed(p.coeffs):
            out = npoly.polyadd(npoly.polymul(out, [h, 1]), [c])
        return _from_array(out)
    return from_sympy(to_sympy(p, gaussian=True).shift(h.value))


def conj_flip(p: Poly) -> Poly:
    """p~(z) = conj(p(conj(z))): conjugates coefficients, reflects zeros across the real axis."""
    return Poly([c.conjugate() for c in p.coeffs], p.domain)


def re_im_parts(p: Poly) -> Tuple[Poly, Poly]:
    """Real-coefficient (Rp, Ip) with p = Rp + i*Ip coefficientwise."""
    if p.domain == EXACT:
        return (Poly([c.re for c in p.coeffs], EXACT),
                Poly([c.im for c in p.coeffs], EXACT))
    return (Poly([complex(c.real) for c in p.coeffs], FLOAT),
            Poly([complex(c.imag) for c in p.coeffs], FLOAT))


def is_real(p: Poly) -> bool:
    """True if every coefficient is real (exactly)."""
    if p.domain == EXACT:
        return all(c.is_real() for c in p.coeffs)
    return all(c.imag == 0 for c in p.coeffs)


def from_roots(roots: Iterable, lead=1, domain: Optional[str] = None) -> Poly:
    """lead * prod(z - r) over the roots, expanded."""
    roots = list(roots)
    if domain is None:
        sample = roots + [lead]
        domain = FLOAT if any(scalar_domain(r) == FLOAT for r in sample) else EXACT
    lead = as_scalar(lead, domain)
    if lead == 0:
        logging.error("from_roots called with a zero leading constant")
        raise ValueError("Leading constant must be nonzero")
    p = Poly.constant(lead, domain)
    for r in roots:
        p = mul(p, Poly((-as_scalar(r, domain), 1), domain))
    return p


def proportionality_constant(a: Poly, b: Poly) -> Optional[GaussianRational]:
    """
    The exact c with a = c*b, or None when a and b are not proportional.

    Decided by cross-multiplication a_j*b_n == a_n*b_j against the leading
    coefficients, so no division happens until c is formed.
    """
    check_same_domain(a, b)
    _require_exact(a, "proportionality_constant")
    if a.is_zero() or b.is_zero():
        return None
    if len(a.coeffs) != len(b.coeffs):
        return None
    top = len(a.coeffs) - 1
    for j in range(len(a.coeffs)):
        if a.coeffs[j] * b.coeffs[top] != a.coeffs[top] * b.coeffs[j]:
            return None
    return a.lead / b.lead


def to_float(p: Poly) -> Poly:
    if p.domain == FLOAT:
        return p
    return Poly([complex(c) for c in p.coeffs], FLOAT)


def to_exact(p: Poly) -> Poly:
    if p.domain == EXACT:
        return p
    return Poly([GaussianRational.from_complex(c) for c in p.coeffs], EXACT)


def unit_angle(c: Scalar) -> float:
    """Principal angle of a nonzero scalar in [0, 2*pi)."""
    angle = cmath.phase(complex(c))
    if angle < 0:
        angle += 2 * math.pi
    return angle
