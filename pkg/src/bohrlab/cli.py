"""Command-line front end: ``bohrlab {constants,verify,probe,envelope,sweep}``.

Exit status is 0 when every requested check passes, 1 when a check fails
and 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from importlib import resources

import numpy as np

from . import constants, verify
from .functionals import CATALOG_IDS, FunctionalSpec
from .harmonic import k_from_K

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SWEEP_CURVES = {
    # curve -> (radius id, parameter name)
    "r1": ("r1", "k"),
    "r2": ("r2", "k"),
    "ru": ("ru", "k"),
    "harm-j": ("harm-j", "K"),
    "harm-bohr": ("harm-bohr", "K"),
    "rogosinski": ("rogosinski", "N"),
    "rogosinski-sq": ("rogosinski-sq", "N"),
    "refined-f2": ("refined-f2", "a0"),
}


class UsageError(Exception):
    pass


def load_schema() -> dict:
    """The JSON schema every report validates against."""
    text = resources.files("bohrlab").joinpath("schema/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _clean(obj):
    """Make a value JSON-safe; non-finite floats become strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        a, r = text.lower().split("x")
        a, r = int(a), int(r)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 400x400, got {text!r}") from None
    if a < 1 or r < 2:
        raise argparse.ArgumentTypeError("grid needs at least 1 a-point and 2 r-points")
    return a, r


def _parse_values(text: str) -> list[float]:
    """``0,0.25,1`` or ``start:stop:count`` (inclusive linspace)."""
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        try:
            start, stop, num = text.split(":")
            return [float(v) for v in np.linspace(float(start), float(stop), int(num))]
        except ValueError:
            raise argparse.ArgumentTypeError(f"range must be start:stop:count, got {text!r}") from None
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad value list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bohrlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def outputs(p):
        p.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
        p.add_argument("--csv", metavar="PATH", help="write results as CSV here")
        p.add_argument("--format", choices=("json", "csv"), default="json", help="stdout format when no path is given")
        p.add_argument("--seed", type=int, default=42)

    def dilatation(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--k", type=_parse_float, help="dilatation bound k in [0, 1]")
        g.add_argument("--K", type=_parse_float, help="quasiconformality constant K >= 1 (inf allowed)")

    p = sub.add_parser("constants", help="recompute catalog constants")
    p.add_argument("--id", nargs="+", default=["all"], help="constant ids or 'all'")
    outputs(p)

    p = sub.add_parser("verify", help="grid-verify one functional")
    p.add_argument("--functional", required=True, choices=CATALOG_IDS)
    p.add_argument("--family", default="moebius", choices=("moebius", "blaschke", "harmonic-extremal", "subordinate"))
    p.add_argument("--grid", type=_parse_grid, default=(400, 400), help="A x R points, e.g. 400x400")
    p.add_argument("--N", type=int)
    p.add_argument("--lambda", dest="lam", type=_parse_float)
    p.add_argument("--tolerance", type=_parse_float, default=1e-9)
    p.add_argument("--samples", type=int, default=1000, help="blaschke family size")
    p.add_argument("--degree", type=int, default=5, help="blaschke maximal degree")
    dilatation(p)
    outputs(p)

    p = sub.add_parser("probe", help="sharpness probe beyond the stated constant or radius")
    p.add_argument("--functional", required=True, choices=CATALOG_IDS)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lambda-scale", type=_parse_float)
    g.add_argument("--radius-excess", type=_parse_float)
    p.add_argument("--N", type=int)
    p.add_argument("--expect", choices=("violation", "none"), default="violation",
                   help="outcome counted as a pass")
    dilatation(p)
    outputs(p)

    p = sub.add_parser("envelope", help="coefficient-lemma envelope suite")
    p.add_argument("--lemma", required=True, choices=("L32", "L34", "L35", "L51"))
    p.add_argument("--family", default="blaschke", choices=("blaschke", "moebius"))
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--degree", type=int, default=5)
    p.add_argument("--r-points", type=int, default=60)
    outputs(p)

    p = sub.add_parser("sweep", help="radius curves as CSV files")
    p.add_argument("--curve", required=True, action="append", choices=tuple(SWEEP_CURVES))
    p.add_argument("--values", required=True, type=_parse_values, help="comma list or start:stop:count")
    p.add_argument("--out", metavar="PATH", help="output file (single curve)")
    p.add_argument("--out-dir", metavar="DIR", help="one CSV per curve, named <curve>.csv")
    p.add_argument("--json", metavar="PATH", help="also write a JSON summary")
    return parser


def _spec_from(args) -> FunctionalSpec:
    k = args.k if args.k is not None else (k_from_K(args.K) if args.K is not None else None)
    kwargs = {"N": args.N, "k": k}
    if getattr(args, "lam", None) is not None:
        kwargs["lam"] = args.lam
    return FunctionalSpec(args.functional, **{key: v for key, v in kwargs.items() if v is not None})


def _config_echo(args) -> dict:
    return _clean({k: v for k, v in sorted(vars(args).items()) if k not in ("json", "csv", "format", "out", "out_dir")})


def _run_constants(args):
    ids = list(constants.CATALOG) if args.id == ["all"] else args.id
    unknown = [i for i in ids if i not in constants.CATALOG]
    if unknown:
        raise UsageError(f"unknown constant id(s): {', '.join(unknown)}")
    results = [constants.reproduce(i).as_dict() for i in ids]
    return results, all(r["pass"] for r in results)


def _run_verify(args):
    spec = _spec_from(args)
    a_points, r_points = args.grid
    grid = verify.GridSpec(a_points=a_points, r_points=r_points, tolerance=args.tolerance)
    family = verify.FamilySpec(args.family, n=args.samples, degree=args.degree, seed=args.seed)
    reports = verify.verify_grid(spec, family, grid)
    reports = reports if isinstance(reports, list) else [reports]
    return [r.as_dict() for r in reports], all(r.passed for r in reports)


def _run_probe(args):
    spec = _spec_from(args)
    if spec.row.kind == "harmonic" and spec.k is None:
        raise UsageError(f"probe of {spec.id!r} needs --k or --K")
    res = verify.sharpness_probe(spec, lambda_scale=args.lambda_scale, radius_excess=args.radius_excess)
    ok = res.violated if args.expect == "violation" else not res.violated
    return [res.as_dict()], ok


def _run_envelope(args):
    family = verify.FamilySpec(args.family, n=args.samples, degree=args.degree, seed=args.seed)
    report = verify.envelope_suite(args.lemma, family, verify.GridSpec(r_points=args.r_points))
    return [report.as_dict()], report.passed


def sweep_rows(curve: str, values) -> list[tuple[float, float]]:
    radius_id, name = SWEEP_CURVES[curve]
    rows = []
    for v in values:
        param = int(v) if name == "N" else v
        rows.append((float(v), constants.radius(radius_id, **{name: param})))
    return rows


def format_sweep(rows) -> str:
    buf = io.StringIO()
    buf.write("param,value\n")
    for p, v in rows:
        buf.write(f"{p:.17g},{v:.17g}\n")
    return buf.getvalue()


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def _run_sweep(args):
    if not args.values:
        raise UsageError("sweep range is empty")
    if len(args.curve) > 1 and args.out:
        raise UsageError("--out takes a single curve; use --out-dir for several")
    results = []
    for curve in args.curve:
        rows = sweep_rows(curve, args.values)
        if args.out_dir:
            path = os.path.join(args.out_dir, f"{curve}.csv")
        else:
            path = args.out or "-"
        _write(path, format_sweep(rows))
        results.append({"curve": curve, "path": path, "rows": [list(r) for r in rows]})
    return results, True


def results_csv(results: list[dict]) -> str:
    keys = []
    for r in results:
        for k in r:
            if k not in keys:
                keys.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    writer.writeheader()
    for r in results:
        writer.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v for k, v in r.items()})
    return buf.getvalue()


RUNNERS = {
    "constants": _run_constants,
    "verify": _run_verify,
    "probe": _run_probe,
    "envelope": _run_envelope,
    "sweep": _run_sweep,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        results, ok = RUNNERS[args.command](args)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"bohrlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "config_echo": _config_echo(args),
        "results": _clean(results),
        "pass": bool(ok),
    }
    text = json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"
    try:
        if args.command == "sweep":
            if args.json:
                _write(args.json, text)
        else:
            if args.json:
                _write(args.json, text)
            if args.csv:
                _write(args.csv, results_csv(report["results"]))
            if not args.json and not args.csv:
                sys.stdout.write(text if args.format == "json" else results_csv(report["results"]))
    except UsageError as exc:
        print(f"bohrlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
