"""
JSON codecs for polynomials, operators, Hadamard data and reports.

Exact rationals travel as strings "p/q" (or "p"), floats as JSON numbers.
A scalar is an object {"re": ..., "im": ...}; "im" may be omitted.
"""

import logging
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Any, Dict, Optional

from lpdelta.core.entire_data import EntireFnData, HBConditionReport
from lpdelta.core.operator_engine import OperatorSpec
from lpdelta.core.poly_core import DOMAINS, EXACT, FLOAT, GaussianRational, Poly, format_poly
from lpdelta.core.preserver_classifier import Verdict
from lpdelta.core.witness_search import CounterexampleReport, TranscendentalWitness
from lpdelta.core.zero_location import RealRootedCertificate, ZeroLocationReport

SCHEMA_ID = "lpdelta.report/v1"


def parse_rational(value) -> Fraction:
    """Exact rational from a "p/q" string or an integer."""
    if isinstance(value, bool) or isinstance(value, float):
        logging.error(f"Float {value!r} where an exact rational string was expected")
        raise ValueError(f"Mixed-domain value {value!r}: exact data needs 'p/q' strings or integers")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f"Malformed rational {value!r}")
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as e:
        logging.error(f"Malformed rational {value!r}: {e}")
        raise ValueError(f"Malformed rational {value!r}")


def parse_real(value) -> float:
    """Float from a JSON number or a "p/q" string."""
    if isinstance(value, bool):
        raise ValueError(f"Malformed number {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    return float(parse_rational(value))


def emit_rational(value: Fraction) -> str:
    return str(Fraction(value))


def parse_scalar(obj, domain: str):
    """GaussianRational (exact) or complex (float) from a scalar object or bare real."""
    if isinstance(obj, dict):
        unknown = set(obj) - {"re", "im"}
        if unknown or "re" not in obj:
            raise ValueError(f"Malformed scalar {obj!r}")
        re, im = obj["re"], obj.get("im", 0)
    else:
        re, im = obj, 0
    if domain == EXACT:
        return GaussianRational(parse_rational(re), parse_rational(im))
    if domain == FLOAT:
        return complex(parse_real(re), parse_real(im))
    raise ValueError(f"Unknown domain {domain!r}")


def emit_scalar(value) -> Dict[str, Any]:
    if isinstance(value, GaussianRational):
        return {"re": emit_rational(value.re), "im": emit_rational(value.im)}
    value = complex(value)
    return {"re": value.real, "im": value.imag}


def parse_poly(obj: Dict) -> Poly:
    """Poly from {"domain": "exact"|"float", "coeffs": [scalar, ...]} (ascending)."""
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise ValueError("A polynomial needs a 'coeffs' list")
    domain = obj.get("domain", EXACT)
    if domain not in DOMAINS:
        raise ValueError(f"Unknown domain {domain!r}; expected one of {DOMAINS}")
    if not isinstance(obj["coeffs"], list):
        raise ValueError("'coeffs' must be a list")
    return Poly([parse_scalar(c, domain) for c in obj["coeffs"]], domain)


def emit_poly(p: Poly) -> Dict[str, Any]:
    return {"domain": p.domain, "coeffs": [emit_scalar(c) for c in p.coeffs]}


def parse_operator(obj: Dict) -> OperatorSpec:
    """OperatorSpec from {"M1": poly, "M2": poly, "h": scalar, "theta": optional float}."""
    missing = [k for k in ("M1", "M2", "h") if k not in obj]
    if missing:
        raise ValueError(f"Operator is missing {missing}")
    M1, M2 = parse_poly(obj["M1"]), parse_poly(obj["M2"])
    h = parse_scalar(obj["h"], M1.domain)
    theta = obj.get("theta")
    return OperatorSpec(M1, M2, h, None if theta is None else parse_real(theta))


def emit_operator(op: OperatorSpec) -> Dict[str, Any]:
    out = {"M1": emit_poly(op.M1), "M2": emit_poly(op.M2), "h": emit_scalar(op.h)}
    if op.theta is not None:
        out["theta"] = op.theta
    return out


def parse_entire_data(obj: Dict) -> EntireFnData:
    if "C" not in obj:
        raise ValueError("Hadamard data needs 'C'")
    return EntireFnData(
        C=parse_scalar(obj["C"], FLOAT),
        n=int(obj.get("n", 0)),
        a=parse_real(obj.get("a", 0)),
        b=parse_scalar(obj.get("b", 0), FLOAT),
        upper_zeros=tuple(parse_scalar(z, FLOAT) for z in obj.get("upper_zeros", [])),
        real_zeros=tuple(parse_real(x) for x in obj.get("real_zeros", [])),
        convention=obj.get("convention", "with_exp_factors"),
        lower_zeros=tuple(parse_scalar(z, FLOAT) for z in obj.get("lower_zeros", [])),
    )


def emit_entire_data(d: EntireFnData) -> Dict[str, Any]:
    return {
        "C": emit_scalar(d.C),
        "n": d.n,
        "a": d.a,
        "b": emit_scalar(d.b),
        "upper_zeros": [emit_scalar(z) for z in d.upper_zeros],
        "real_zeros": list(d.real_zeros),
        "convention": d.convention,
        "lower_zeros": [emit_scalar(z) for z in d.lower_zeros],
    }


def to_jsonable(value):
    """Recursively convert result objects into JSON-compatible values."""
    if isinstance(value, Poly):
        return emit_poly(value)
    if isinstance(value, (GaussianRational, complex)):
        return emit_scalar(value)
    if isinstance(value, Fraction):
        return emit_rational(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if is_dataclass(value) and not isinstance(value, type):
        return {k: to_jsonable(getattr(value, k)) for k in value.__dataclass_fields__}
    return value


def emit_verdict(v: Verdict) -> Dict[str, Any]:
    return {
        "preserving": v.preserving,
        "branch": v.branch,
        "recovered_theta": v.recovered_theta,
        "unimodular_constant": None if v.unimodular_constant is None else emit_scalar(v.unimodular_constant),
        "violations": [{"name": x.name, "evidence": x.evidence} for x in v.violations],
    }


def emit_zero_report(r: ZeroLocationReport) -> Dict[str, Any]:
    out = {"upper": r.upper, "on_axis": r.on_axis, "lower": r.lower, "method": r.method}
    if r.witnesses is not None:
        out["witnesses"] = [emit_scalar(z) for z in r.witnesses]
    return out


def emit_certificate(c: RealRootedCertificate) -> Dict[str, Any]:
    return {"verdict": c.verdict, "method": c.method, "detail": to_jsonable(c.detail)}


def emit_counterexample(r: Optional[CounterexampleReport]) -> Optional[Dict[str, Any]]:
    if r is None:
        return None
    return {
        "input_poly": emit_poly(r.input_poly),
        "input": format_poly(r.input_poly),
        "image": emit_poly(r.image),
        "image_text": format_poly(r.image),
        "nonreal_root": emit_scalar(r.nonreal_root),
        "family": r.family,
        "attempts": r.attempts,
        "skipped_zero": r.skipped_zero,
    }


def emit_hb_report(r: HBConditionReport) -> Dict[str, Any]:
    return to_jsonable(asdict(r))


def emit_witness(w: Optional[TranscendentalWitness]) -> Optional[Dict[str, Any]]:
    return None if w is None else to_jsonable(w)


def make_report(command: str, method: str, verdict: Any, evidence: Any, job: Dict) -> Dict[str, Any]:
    """The versioned report envelope written by every command."""
    return {
        "schema": SCHEMA_ID,
        "command": command,
        "method": method,
        "verdict": verdict,
        "evidence": to_jsonable(evidence),
        "job": to_jsonable(job),
    }
