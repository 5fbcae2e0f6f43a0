#!/usr/bin/env python3
"""
Robin Exterior CLI

Subcommands:
- disk-eigen      lowest spectral point for (alpha, R)
- alpha-star      critical parameter and its bounds
- sweep           CSV grid over alphas x radii
- oracle-compare  closed form vs FEM oracle
- poincare-check  weighted Poincaré minimum at (or near) its threshold
- verify          verification suites -> JSON report
- geometry        disk / parallel / comparison / validate queries

Exit codes: 0 ok, 1 validation or usage error, 2 solver/accuracy error,
3 verification failure.
"""

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError
from tqdm import tqdm

from backend.cli.config import (
    SCHEMA_VERSION,
    OutputFormat,
    RunConfig,
    normalize,
    resolve,
)
from backend.disk_solver.solver import (
    ESSENTIAL_BOTTOM,
    DiskSolver,
    SpectralKind,
    alpha_star_elliptic,
    alpha_star_sharp_bound,
    alpha_star_upper_bound,
)
from backend.errors import AccuracyError, DomainError, InputValidationError, SolverError
from backend.geometry.hyperbolic import (
    DomainSpec,
    avg_curvature,
    comparison_disks,
    disk_geometry,
    matching_disk_radius,
    parallel_perimeter,
    validate_domain_spec,
)
from backend.numerics import FarBC, Numerics
from backend.radial_oracle.fem import (
    PoincareKind,
    RadialProblem,
    adapt_numerics,
    poincare_solve,
    poincare_threshold,
    solve,
)
from backend.radial_oracle.weights import WeightSpec
from backend.verifier.suites import SUITE_NAMES, run_suite

logger = logging.getLogger("backend.cli")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_SOLVER = 2
EXIT_VERIFICATION = 3

CSV_HEADER = ["alpha", "R", "lambda", "nu", "kind"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: error: {message}")


def _add_common(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("numerics and output")
    group.add_argument("--config", help="flat key=value config file")
    group.add_argument("--truncation", type=float, help="truncation length T (default 40)")
    group.add_argument("--grid-points", type=int, help="grid size N (default 8000)")
    group.add_argument("--grading-ratio", type=float, help="max neighbour cell ratio (default 1.01)")
    group.add_argument("--far-bc", choices=[bc.value for bc in FarBC])
    group.add_argument("--precision", type=int, help="significant digits (default 12)")
    group.add_argument("--format", choices=[f.value for f in OutputFormat])
    group.add_argument("--out", help="output file (stdout when omitted)")
    group.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="robin-exterior",
                     description="Lowest Robin eigenvalue outside hyperbolic disks")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("disk-eigen", help="lowest spectral point for (alpha, R)")
    p.add_argument("--alpha", type=float)
    p.add_argument("--radius", type=float)
    _add_common(p)

    p = sub.add_parser("alpha-star", help="critical parameter alpha_star(B_R)")
    p.add_argument("--radius", type=float)
    _add_common(p)

    p = sub.add_parser("sweep", help="grid over alphas x radii")
    p.add_argument("--alphas", help="comma separated, e.g. --alphas=-3,-2,-1")
    p.add_argument("--radii", help="comma separated, e.g. --radii=0.5,1,2")
    p.add_argument("--workers", type=int)
    _add_common(p)

    p = sub.add_parser("oracle-compare", help="closed form vs FEM oracle")
    p.add_argument("--alpha", type=float)
    p.add_argument("--radius", type=float)
    _add_common(p)

    p = sub.add_parser("poincare-check", help="weighted Poincaré minimum")
    p.add_argument("--kind", choices=[k.value for k in PoincareKind])
    p.add_argument("--b", type=float)
    p.add_argument("--alpha", type=float, help="default: the threshold value")
    _add_common(p)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=SUITE_NAMES)
    _add_common(p)

    p = sub.add_parser("geometry", help="disk / parallel / comparison / validate")
    p.add_argument("query", choices=["disk", "parallel", "comparison", "validate"])
    p.add_argument("--radius", type=float)
    p.add_argument("--perimeter", type=float)
    p.add_argument("--area", type=float)
    p.add_argument("--t", type=float)
    _add_common(p)
    return parser


# -- output -------------------------------------------------------------------

def _dump_json(payload: Dict[str, Any], config: RunConfig) -> str:
    document = {
        "schema_version": SCHEMA_VERSION,
        "config": config.model_dump(mode="json"),
        **payload,
    }
    document = normalize(document, config.output.precision)
    return json.dumps(document, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _write(text: str, path: Optional[str]) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
        logger.info("wrote %s", path)
    else:
        sys.stdout.write(text)


def _emit(payload: Dict[str, Any], config: RunConfig) -> None:
    _write(_dump_json(payload, config), config.output.path)


def _spectral_payload(result) -> Dict[str, Any]:
    return result.as_dict()


# -- subcommands ----------------------------------------------------------------

def cmd_disk_eigen(config: RunConfig) -> int:
    params = config.parameters
    solver = DiskSolver.from_numerics(config.numerics)
    result = solver.lambda1(params["alpha"], params["radius"])
    _emit(_spectral_payload(result), config)
    return EXIT_OK


def cmd_alpha_star(config: RunConfig) -> int:
    R = config.parameters["radius"]
    solver = DiskSolver.from_numerics(config.numerics)
    _emit({
        "alpha_star": solver.alpha_star(R),
        "alpha_star_elliptic": alpha_star_elliptic(R),
        "sharp_bound": alpha_star_sharp_bound(R),
        "upper_bound": alpha_star_upper_bound(R),
    }, config)
    return EXIT_OK


def _sweep_point(args: Tuple[float, float, Numerics]) -> List[Any]:
    alpha, R, numerics = args
    result = DiskSolver.from_numerics(numerics).lambda1(alpha, R)
    nu = "" if result.nu is None else result.nu
    return [alpha, R, result.lambda_, nu, result.kind.value]


def cmd_sweep(config: RunConfig) -> int:
    params = config.parameters
    points = [(a, r, config.numerics) for a in params["alphas"] for r in params["radii"]]
    workers = params["workers"]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(tqdm(pool.map(_sweep_point, points), total=len(points),
                             desc="sweep", disable=None, leave=False))
    else:
        rows = [_sweep_point(p) for p in tqdm(points, desc="sweep", disable=None, leave=False)]

    rows = [normalize(row, config.output.precision) for row in rows]
    if config.output.format is OutputFormat.JSON:
        _emit({"columns": CSV_HEADER, "rows": rows}, config)
        return EXIT_OK

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    _write(buffer.getvalue(), config.output.path)
    if config.output.path:
        _write(_dump_json({"columns": CSV_HEADER}, config),
               config.output.path + ".config.json")
    return EXIT_OK


def cmd_oracle_compare(config: RunConfig) -> int:
    params = config.parameters
    alpha, R = params["alpha"], params["radius"]
    solver = DiskSolver.from_numerics(config.numerics)
    closed = solver.lambda1(alpha, R)
    numerics = config.numerics
    if closed.kind is SpectralKind.DISCRETE:
        numerics = adapt_numerics(numerics, closed.nu)
    oracle = solve(RadialProblem.from_numerics(WeightSpec.sinh_shift(R), alpha, numerics))

    diff = abs(oracle.value - closed.lambda_)
    if closed.kind is SpectralKind.DISCRETE:
        tolerance = numerics.equivalence_tolerance * max(1.0, abs(closed.lambda_))
        agree = diff <= tolerance
    else:
        tolerance = None
        agree = not oracle.discrete_detected
    _emit({
        "closed_form": _spectral_payload(closed),
        "oracle": oracle.model_dump(mode="json"),
        "abs_diff": diff,
        "tolerance": tolerance,
        "agree": agree,
    }, config)
    return EXIT_OK if agree else EXIT_VERIFICATION


def cmd_poincare_check(config: RunConfig) -> int:
    params = config.parameters
    kind = PoincareKind(params["kind"])
    b = params["b"]
    threshold = poincare_threshold(kind, b)
    alpha = threshold if params.get("alpha") is None else params["alpha"]
    result = poincare_solve(kind, b, alpha, config.numerics)
    at_or_above = alpha >= threshold
    bound_holds = result.value >= ESSENTIAL_BOTTOM - config.numerics.oracle_tolerance
    _emit({
        "kind": kind.value,
        "b": b,
        "alpha": alpha,
        "threshold": threshold,
        "value": result.value,
        "discrete_detected": result.discrete_detected,
        "bound_holds": bound_holds,
    }, config)
    if at_or_above and not bound_holds:
        return EXIT_VERIFICATION
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    reports = run_suite(config.parameters["suite"], config.numerics)
    passed = all(r.passed for r in reports)
    checks = [r.model_dump(mode="json", by_alias=True) for r in reports]
    _emit({"checks": checks, "pass": passed}, config)
    for report in reports:
        mark = "✓" if report.passed else "✗"
        print(f"{mark} {report.check_name}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_VERIFICATION


def _domain_from(params: Dict[str, Any]) -> DomainSpec:
    if params.get("perimeter") is None or params.get("area") is None:
        raise InputValidationError("this query needs --perimeter and --area")
    return DomainSpec(perimeter=params["perimeter"], area=params["area"])


def cmd_geometry(config: RunConfig) -> int:
    params = config.parameters
    query = params["query"]
    if query == "disk":
        if params.get("radius") is None:
            raise InputValidationError("disk query needs --radius")
        area, perimeter = disk_geometry(params["radius"])
        payload = {"area": area, "perimeter": perimeter}
    elif query == "parallel":
        spec = _domain_from(params)
        t = params.get("t") or 0.0
        payload = {"t": t, "perimeter": parallel_perimeter(spec, t)}
    elif query == "comparison":
        spec = _domain_from(params)
        r_area, r_perimeter = comparison_disks(spec)
        payload = {
            "avg_curvature": avg_curvature(spec),
            "matching_radius": matching_disk_radius(spec),
            "R_area": r_area,
            "R_perimeter": r_perimeter,
        }
    else:
        check = validate_domain_spec(_domain_from(params))
        payload = check.model_dump(mode="json")
        if not check.valid:
            payload = {k: v for k, v in payload.items() if k in ("valid", "message")}
    _emit(payload, config)
    return EXIT_OK


COMMANDS = {
    "disk-eigen": cmd_disk_eigen,
    "alpha-star": cmd_alpha_star,
    "sweep": cmd_sweep,
    "oracle-compare": cmd_oracle_compare,
    "poincare-check": cmd_poincare_check,
    "verify": cmd_verify,
    "geometry": cmd_geometry,
}

FLAG_KEYS = ("alpha", "radius", "alphas", "radii", "workers", "kind", "b", "suite",
             "query", "perimeter", "area", "t", "truncation", "grid_points",
             "grading_ratio", "far_bc", "precision", "format", "out")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run one subcommand and map errors to exit codes"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VALIDATION

    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    flags = {key: getattr(args, key) for key in FLAG_KEYS if hasattr(args, key)}
    try:
        config = resolve(args.subcommand, flags, config_path=args.config)
        return COMMANDS[args.subcommand](config)
    except (DomainError, InputValidationError, ValidationError, FileNotFoundError) as exc:
        print(f"✗ invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (AccuracyError, SolverError) as exc:
        print(f"✗ numerical failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    raise SystemExit(main())
