import argparse
import logging
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

from lpdelta.core.entire_data import blaschke_sum, check_hb_conditions, check_lp_membership
from lpdelta.core.operator_engine import OperatorSpec, apply_delta
from lpdelta.core.poly_core import EXACT, FLOAT, GaussianRational, Poly, format_poly, to_exact, to_float
from lpdelta.core.preserver_classifier import classify_lp_preserver, classify_operator, necessary_filter
from lpdelta.core.witness_search import FAMILIES, find_counterexample, transcendental_witness
from lpdelta.core.zero_location import certify_real_rooted, half_plane_count
from lpdelta.helpers.config_utils import (
    get_nested,
    load_config_with_defaults,
    parse_config_value,
    resolve_config_path,
    update_config_value,
)
from lpdelta.helpers.file_utils import read_json, write_json, write_roots_csv
from lpdelta.helpers.schema_utils import (
    emit_certificate,
    emit_counterexample,
    emit_entire_data,
    emit_hb_report,
    emit_operator,
    emit_poly,
    emit_verdict,
    emit_witness,
    emit_zero_report,
    make_report,
    parse_entire_data,
    parse_operator,
    parse_poly,
    parse_rational,
)
from lpdelta.plot_scripts.root_scatter import root_scatter, root_table, write_svg

__version__ = "0.1.0"

# command -> number of input files (None: one or more)
COMMANDS = {
    "apply": 2,
    "certify": 1,
    "zeros": 1,
    "classify": 1,
    "lp-classify": 1,
    "search": 1,
    "witness": 1,
    "entire-check": 1,
    "plot": None,
}


@dataclass
class JobSpec:
    """One reproducible invocation: command, input files and every override."""

    command: str
    inputs: List[str] = field(default_factory=list)
    domain: Optional[str] = None
    tol: Optional[float] = None
    seed: Optional[int] = None
    budget: Optional[int] = None
    out: Optional[str] = None
    svg: Optional[str] = None
    csv: Optional[str] = None
    z0: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command {self.command!r}")
        expected = COMMANDS[self.command]
        if expected is None and not self.inputs:
            raise ValueError(f"'{self.command}' needs at least one input file")
        if expected is not None and len(self.inputs) != expected:
            raise ValueError(f"'{self.command}' needs {expected} input file(s), got {len(self.inputs)}")
        if self.budget is not None and self.budget < 1:
            raise ValueError("--budget must be >= 1")
        if self.tol is not None and not self.tol > 0:
            raise ValueError("--tol must be positive")


def setup_logging(level: str = "INFO"):
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
    logging.getLogger().setLevel(getattr(logging, str(level).upper(), logging.INFO))


def _with_domain(p: Poly, domain: Optional[str]) -> Poly:
    if domain == FLOAT:
        return to_float(p)
    if domain == EXACT:
        return to_exact(p)
    return p


def _load_poly(path: str, domain: Optional[str]) -> Poly:
    return _with_domain(parse_poly(read_json(path)), domain)


def _load_operator(path: str, domain: Optional[str]) -> OperatorSpec:
    op = parse_operator(read_json(path))
    if domain is None or domain == op.domain:
        return op
    h = complex(op.h) if domain == FLOAT else GaussianRational.from_complex(op.h)
    return OperatorSpec(_with_domain(op.M1, domain), _with_domain(op.M2, domain), h, op.theta)


def _search_params(config: Dict) -> Dict[str, Dict]:
    return {
        "monomials": {"count": get_nested(config, "search.monomials_count", 9)},
        "linear_products": {"roots": [parse_rational(r) if isinstance(r, str) else r
                                      for r in get_nested(config, "search.linear_products_roots", [-2, -1, 0, 1, 2])],
                            "max_degree": get_nested(config, "search.linear_products_max_degree", 3)},
        "hermite": {"max_degree": get_nested(config, "search.hermite_max_degree", 12)},
        "random_real_rooted": {"max_degree": get_nested(config, "search.random_max_degree", 8)},
    }


def _default_output(job: JobSpec, suffix: str, fallback: str) -> str:
    if job.out:
        return os.path.splitext(job.out)[0] + suffix
    return fallback


def run_command(job: JobSpec, config: Optional[Dict] = None) -> Dict:
    """
    Execute one job and write its JSON report (to job.out, or stdout).

    Returns:
        Dict: The report envelope that was written.
    """
    config = config or {}
    band_tol = job.tol or get_nested(config, "zero_location.real_band_tol", 1e-8)
    aberth = {"aberth_tol": get_nested(config, "zero_location.aberth_tol", 1e-12),
              "max_iter": get_nested(config, "zero_location.aberth_max_iter", 200)}
    logging.info(f"Running '{job.command}' on {job.inputs}")
    cmd = job.command

    if cmd == "apply":
        op = _load_operator(job.inputs[0], job.domain)
        p = _load_poly(job.inputs[1], job.domain or op.domain)
        image = apply_delta(op, p)
        evidence = {"operator": emit_operator(op), "input": emit_poly(p),
                    "image": emit_poly(image), "image_text": format_poly(image)}
        report = make_report(cmd, image.domain, None, evidence, asdict(job))

    elif cmd == "certify":
        p = _load_poly(job.inputs[0], job.domain)
        cert = certify_real_rooted(p, tol=band_tol, **aberth)
        report = make_report(cmd, cert.method, cert.verdict, emit_certificate(cert), asdict(job))

    elif cmd == "zeros":
        p = _load_poly(job.inputs[0], job.domain)
        zr = half_plane_count(p, tol=band_tol, **aberth)
        evidence = emit_zero_report(zr)
        verdict = {"upper": zr.upper, "on_axis": zr.on_axis, "lower": zr.lower}
        report = make_report(cmd, zr.method, verdict, evidence, asdict(job))

    elif cmd == "classify":
        op = _load_operator(job.inputs[0], job.domain)
        extra = [parse_rational(x) if isinstance(x, str) else x
                 for x in get_nested(config, "necessary_filter.sample_points", []) or []]
        verdict = classify_operator(op)
        filter_hits = necessary_filter(op, extra)
        evidence = {"classification": emit_verdict(verdict),
                    "necessary_filter": [{"name": v.name, "evidence": v.evidence} for v in filter_hits]}
        report = make_report(cmd, EXACT, "preserving" if verdict.preserving else "not_preserving",
                             evidence, asdict(job))

    elif cmd == "lp-classify":
        op = _load_operator(job.inputs[0], job.domain)
        verdict = classify_lp_preserver(op)
        report = make_report(cmd, EXACT, "preserving" if verdict.preserving else "not_preserving",
                             emit_verdict(verdict), asdict(job))

    elif cmd == "search":
        op = _load_operator(job.inputs[0], job.domain)
        budget = job.budget or get_nested(config, "search.budget", 500)
        seed = job.seed if job.seed is not None else get_nested(config, "search.seed", 0)
        families = get_nested(config, "search.families", list(FAMILIES))
        found = find_counterexample(op, families, budget, seed, _search_params(config))
        evidence = {"witness": emit_counterexample(found), "budget": budget, "seed": seed,
                    "families": families}
        report = make_report(cmd, op.domain, "witness_found" if found else "no_witness",
                             evidence, asdict(job))

    elif cmd == "witness":
        op = _load_operator(job.inputs[0], job.domain)
        z0 = complex(job.z0.replace(" ", "")) if job.z0 else None
        found = transcendental_witness(
            op, z0,
            scan_radius=get_nested(config, "witness.scan_radius", 3.0),
            scan_points=get_nested(config, "witness.scan_points", 24),
            tol=job.tol or 1e-9,
            ratio_tol=get_nested(config, "witness.ratio_tol", 1e-12),
        )
        report = make_report(cmd, "numeric", "witness_found" if found else "no_witness",
                             {"witness": emit_witness(found)}, asdict(job))

    elif cmd == "entire-check":
        data = parse_entire_data(read_json(job.inputs[0]))
        hb = check_hb_conditions(data)
        evidence = {"data": emit_entire_data(data), "hb_conditions": emit_hb_report(hb),
                    "lp_membership": check_lp_membership(data), "blaschke_sum": blaschke_sum(data)}
        report = make_report(cmd, FLOAT, "accepted" if hb.accepted else "rejected", evidence, asdict(job))

    elif cmd == "plot":
        polys = [_load_poly(path, job.domain) for path in job.inputs]
        digits = get_nested(config, "plot.csv_digits", 12)
        table = root_table(polys, digits=digits, tol=band_tol, **aberth)
        csv_path = job.csv or _default_output(job, ".csv", "roots.csv")
        svg_path = job.svg or _default_output(job, ".svg", "roots.svg")
        write_roots_csv(table[["re", "im"]].to_dict("records"), csv_path)
        fig = root_scatter(table, [format_poly(p) for p in polys],
                           width=get_nested(config, "plot.width", 640),
                           height=get_nested(config, "plot.height", 480))
        write_svg(fig, svg_path)
        counts = table["location"].value_counts().to_dict() if not table.empty else {}
        verdict = {k: int(counts.get(k, 0)) for k in ("upper", "axis", "lower")}
        report = make_report(cmd, "numeric", verdict, {"csv": csv_path, "svg": svg_path}, asdict(job))

    write_json(report, job.out)
    logging.info(f"Finished '{cmd}'")
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpdelta",
        description="Real-rootedness preservation of the operator M1(z)f(z+h) + M2(z)f(z-h).")
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}',
                        help="Show the current version of the script.")
    parser.add_argument('--config', default=None,
                        help="Path to the configuration file. Default is the packaged config.yaml.")
    parser.add_argument('-p', '--path', default='', help="The path to the project directory.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in COMMANDS:
        cmd = sub.add_parser(name, help=f"Run '{name}'.")
        cmd.add_argument('inputs', nargs='+', help="Input JSON file(s).")
        domain = cmd.add_mutually_exclusive_group()
        domain.add_argument('--exact', dest='domain', action='store_const', const=EXACT,
                            help="Convert inputs to exact Gaussian rationals.")
        domain.add_argument('--float', dest='domain', action='store_const', const=FLOAT,
                            help="Convert inputs to floating point.")
        cmd.add_argument('--tol', type=float, help="Tolerance override.")
        cmd.add_argument('--seed', type=int, help="Seed of the random search family.")
        cmd.add_argument('--budget', type=int, help="Number of polynomials the search may draw.")
        cmd.add_argument('--out', help="Report file. Default: print to stdout.")
        if name == "plot":
            cmd.add_argument('--svg', help="SVG output. Default: next to --out, or roots.svg.")
            cmd.add_argument('--csv', help="CSV output. Default: next to --out, or roots.csv.")
        if name == "witness":
            cmd.add_argument('--z0', help="Point in the upper half-plane, e.g. '0.5+1j'.")

    cfg = sub.add_parser('config-set', help="Set one configuration value, keeping comments.")
    cfg.add_argument('key', help="Dotted key, e.g. search.budget.")
    cfg.add_argument('value', help="New value, read as YAML.")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == 'config-set':
            if not args.config:
                logging.error("config-set needs --config")
                return 1
            path = resolve_config_path(args.config, args.path)
            return 0 if update_config_value(path, args.key, parse_config_value(args.value)) else 1

        config = load_config_with_defaults(args.config, args.path)
        setup_logging(config.get('log_level', 'INFO'))

        def resolve(path):
            if path and args.path and not os.path.isabs(path):
                return os.path.join(os.path.abspath(args.path), path)
            return path

        job = JobSpec(
            command=args.command,
            inputs=list(args.inputs),
            domain=args.domain,
            tol=args.tol,
            seed=args.seed,
            budget=args.budget,
            out=args.out,
            svg=getattr(args, 'svg', None),
            csv=getattr(args, 'csv', None),
            z0=getattr(args, 'z0', None),
        )
        job.inputs = [resolve(p) for p in job.inputs]
        job.out, job.svg, job.csv = resolve(job.out), resolve(job.svg), resolve(job.csv)
        run_command(job, config)
        return 0
    except Exception as e:
        logging.error(f"Error: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
