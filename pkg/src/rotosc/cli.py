"""Command line interface: ``rotosc spectrum|wavefunction|scan|verify``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__, verify
from .errors import DomainError
from .model import ModelParams
from .radial import (bound_state, continuum_state, count_nodes, length_scale,
                     radial)
from .spectrum import discrete_spectrum, scan_lambda, scan_mass_ratio

SIG_DIGITS = 15
UNITS = "natural units (hbar = c = 1); energies and masses share one unit, radii its inverse"


def _fmt(x):
    if isinstance(x, float):
        if not math.isfinite(x):
            return None if math.isnan(x) else ("inf" if x > 0 else "-inf")
        return float(f"{x:.{SIG_DIGITS}g}")
    return x


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return _fmt(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return _fmt(obj)


def render(fmt: str, meta: dict, columns: list[str], rows: list[list], notes: list[str]) -> str:
    meta, rows = _clean(meta), _clean(rows)
    if fmt == "json":
        doc = {"meta": meta,
               "data": [dict(zip(columns, row)) for row in rows],
               "notes": list(notes)}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    buf = io.StringIO()
    buf.write(f"# meta: {json.dumps(meta, ensure_ascii=False)}\n")
    buf.write(f"# units: {UNITS}\n")
    for note in notes:
        buf.write(f"# note: {note}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v)
                         for v in row])
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _params(args) -> ModelParams:
    return ModelParams(args.mass, args.omega, args.lam, args.lambda_eps)


def _meta(args, command: str, options: dict, tolerances: dict | None = None) -> dict:
    return {"tool": "rotosc", "version": __version__, "command": command,
            "params": {"mass": args.mass, "omega": args.omega, "lambda": args.lam,
                       "lambda_eps": args.lambda_eps},
            "options": options,
            "tolerances": tolerances or {}}


def cmd_spectrum(args) -> int:
    res = discrete_spectrum(_params(args), args.n_cutoff)
    meta = _meta(args, "spectrum", {"n_cutoff": args.n_cutoff, "format": args.format})
    meta["summary"] = {
        "n_max": "unbounded" if res.n_max is None else res.n_max,
        "continuum_threshold": res.continuum_threshold,
        "E_max_bound": res.E_max_bound,
        "regime": _params(args).regime.value,
    }
    cols = ["n", "l", "n_r", "E", "E_squared", "degeneracy", "embedded"]
    rows = [[lv.n, lv.l, lv.n_r, lv.E, lv.E_squared, lv.degeneracy, lv.embedded]
            for lv in res.levels]
    _emit(args, render(args.format, meta, cols, rows, res.notes))
    return 0


def cmd_wavefunction(args) -> int:
    params = _params(args)
    notes = []
    if args.energy is not None:
        state = continuum_state(params, args.energy, args.l, args.m)
        notes.append("continuum solution: not square integrable, emitted unnormalized")
    else:
        state = bound_state(params, args.nr, args.l, args.m)
    r0 = state.r0
    if args.r_max == "auto":
        if math.isfinite(r0):
            r_max = r0 * (1 - 1e-6)
        else:
            r_max = 4 * length_scale(params) * math.sqrt(state.qn.n + 2)
    else:
        r_max = float(args.r_max)
        if r_max <= 0:
            raise DomainError("--r-max must be positive")
    r = np.linspace(0.0, r_max, args.samples)
    R = np.atleast_1d(radial(state, r))
    options = {"nr": args.nr, "energy": args.energy, "l": args.l, "m": args.m,
               "samples": args.samples, "r_max": args.r_max, "format": args.format}
    meta = _meta(args, "wavefunction", options)
    meta["state"] = {"kind": state.kind, "E": state.E, "p": state.p_used,
                     "norm_constant": state.norm_constant, "r_max_used": r_max}
    if state.kind == "bound":
        meta["state"]["nodes"] = count_nodes(state)
    _emit(args, render(args.format, meta, ["r", "R"], [[a, b] for a, b in zip(r, R)], notes))
    return 0


def _parse_range(text: str):
    try:
        a, b, steps = text.split(":")
        return float(a), float(b), int(steps)
    except ValueError:
        raise argparse.ArgumentTypeError("range must be A:B:STEPS") from None


def cmd_scan(args) -> int:
    a, b, steps = args.range
    if steps < 1:
        raise DomainError("STEPS must be at least 1")
    values = np.linspace(a, b, steps)
    base = _params(args)
    if args.vary == "lambda":
        points = scan_lambda(base, values, args.n, args.l)
    else:
        points = scan_mass_ratio(base, values, args.n, args.l)
    cols = [args.vary, "E", "E_minus_M_over_omega", "n_max", "threshold", "note"]
    rows = []
    for pt in points:
        mass = pt.value * base.omega if args.vary == "mass-ratio" else base.mass
        excitation = None if pt.E is None else (pt.E - mass) / base.omega
        rows.append([pt.value, pt.E, excitation,
                     "unbounded" if pt.n_max is None else pt.n_max, pt.threshold, pt.note])
    options = {"vary": args.vary, "range": [a, b, steps], "n": args.n, "l": args.l,
               "format": args.format}
    notes = [pt.note for pt in points if pt.note]
    _emit(args, render(args.format, _meta(args, "scan", options), cols, rows, notes))
    return 0


def cmd_verify(args) -> int:
    report, tol = verify.run(args.suite, args.tol, args.seed)
    meta = _meta(args, "verify", {"suite": args.suite, "tol": args.tol,
                                  "seed": args.seed, "format": args.format}, tol)
    meta["passed"] = report.passed
    meta["n_checks"] = len(report.checks)
    meta["n_failed"] = len(report.failures())
    cols = ["name", "closed_form", "oracle", "error", "tolerance", "passed"]
    rows = [[c.name, c.closed_form, c.oracle, c.error, c.tolerance, c.passed]
            for c in report.checks]
    notes = [f"FAILED {c.name}: error {c.error:.3e} > tol {c.tolerance:.1e}"
             for c in report.failures()]
    _emit(args, render(args.format, meta, cols, rows, notes))
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotosc", description=__doc__)
    parser.add_argument("--version", action="version", version=f"rotosc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mass", type=float, default=1.0)
    common.add_argument("--omega", type=float, default=0.1)
    common.add_argument("--lambda", dest="lam", type=float, default=-1.0)
    common.add_argument("--lambda-eps", type=float, default=1e-12)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("spectrum", parents=[common], help="discrete energy levels")
    p.add_argument("--n-cutoff", type=int, required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("wavefunction", parents=[common], help="sample a radial state")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--nr", type=int)
    which.add_argument("--energy", type=float)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--r-max", default="auto")
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("scan", parents=[common], help="one level across lambda or M/omega")
    p.add_argument("--vary", choices=("lambda", "mass-ratio"), required=True)
    p.add_argument("--range", type=_parse_range, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", parents=[common], help="run the oracle checks")
    p.add_argument("--suite", choices=("core", "all") + verify.SUITES, default="core")
    p.add_argument("--tol", type=float, default=None, help="override every tolerance")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled identity checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for flag in ("n_cutoff", "samples", "nr", "n", "l"):
        v = getattr(args, flag, None)
        if v is not None and v < 0:
            parser.error(f"--{flag.replace('_', '-')} must be non-negative")
    if getattr(args, "samples", 2) is not None and getattr(args, "samples", 2) < 2:
        parser.error("--samples must be at least 2")
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"rotosc: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
