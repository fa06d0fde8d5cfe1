"""Command line front end: ``qfi``, ``fi`` and ``estimate``.

Numbers are written with 12 significant digits so identical invocations give
byte-identical output. Exit codes: 0 success, 2 bad arguments, 3 runtime error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import estimation, inference, jc_model
from .jc_model import ProbeSpec

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 2, 3

QFI_COLUMNS = ["theta", "n", "omega", "H_total", "H_qubit", "H_field"]
FI_COLUMNS = QFI_COLUMNS + ["F_joint", "F_qubit", "F_field"]

SWEEP_DEFAULTS = {
    "theta": (0.0, math.pi, 181),
    "omega": (0.01, 2 * math.pi, 181),
    "n": (0, 10, None),
}


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".12g")


def _num(x):
    """Float rounded to its 12-digit text form, so JSON re-parses exactly."""
    return int(x) if isinstance(x, (int, np.integer)) else float(fmt(x))


def sweep_points(args) -> list[tuple[float, int, float]]:
    base = (args.theta, args.n, args.omega)
    if args.sweep is None:
        return [base]
    lo_d, hi_d, pts_d = SWEEP_DEFAULTS[args.sweep]
    lo = lo_d if args.min is None else args.min
    hi = hi_d if args.max is None else args.max
    if hi < lo:
        raise UsageError(f"--max ({hi}) must not be below --min ({lo})")
    if args.sweep == "n":
        if lo != int(lo) or hi != int(hi) or lo < 0:
            raise UsageError("n sweep bounds must be non-negative integers")
        return [(args.theta, m, args.omega) for m in range(int(lo), int(hi) + 1)]
    points = pts_d if args.points is None else args.points
    if points < 1:
        raise UsageError("--points must be positive")
    values = np.linspace(lo, hi, points) if points > 1 else np.array([lo])
    if args.sweep == "theta":
        return [(float(t), args.n, args.omega) for t in values]
    return [(args.theta, args.n, float(w)) for w in values]


def _row(point, truncation):
    theta, n, omega = point
    trunc = None if truncation is None else max(truncation, n + 2)
    spec = ProbeSpec(theta, n, trunc)
    rep = estimation.qfi_report(spec, omega)
    return {"theta": theta, "n": n, "omega": omega, **rep.as_dict()}


def compute_rows(points, truncation=None, jobs: int = 1) -> list[dict]:
    for theta, n, _ in points:
        ProbeSpec(theta, n)  # validate everything before spawning work
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_row, points, [truncation] * len(points)))
    return [_row(p, truncation) for p in points]


def render(rows: list[dict], columns: list[str], fmt_name: str) -> str:
    if fmt_name == "json":
        payload = [{c: _num(r[c]) for c in columns} for r in rows]
        return json.dumps(payload, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([r[c] if c == "n" else fmt(r[c]) for c in columns])
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _report_cmd(args, columns):
    rows = compute_rows(sweep_points(args), args.truncation, args.jobs)
    _emit(render(rows, columns, args.format), args.out)


def cmd_qfi(args):
    _report_cmd(args, QFI_COLUMNS)


def cmd_fi(args):
    _report_cmd(args, FI_COLUMNS)


def cmd_estimate(args):
    spec = ProbeSpec(args.theta, args.n, args.truncation)
    cfg = inference.McConfig(
        spec=spec,
        omega_true=args.omega_true,
        measurement=args.measurement,
        samples=args.samples,
        repetitions=args.reps,
        seed=args.seed,
        search_interval=tuple(args.interval) if args.interval else None,
    )
    report = inference.run_experiment(cfg)
    payload = report.as_dict()
    payload["estimates"] = [_num(x) for x in payload["estimates"]]
    for k, v in payload.items():
        if isinstance(v, float):
            payload[k] = _num(v) if math.isfinite(v) else None
    cfg_out = payload["config"]
    cfg_out["theta"] = _num(cfg_out["theta"])
    cfg_out["omega_true"] = _num(cfg_out["omega_true"])
    cfg_out["search_interval"] = [_num(x) for x in cfg_out["search_interval"]]
    _emit(json.dumps(payload, indent=1) + "\n", args.out)


def _add_probe_flags(p, omega_flag: bool = True):
    p.add_argument("--theta", type=float, default=0.0, help="qubit preparation angle [rad]")
    p.add_argument("--n", type=int, default=3, help="initial photon number")
    if omega_flag:
        p.add_argument("--omega", type=float, default=1.0, help="coupling g*tau [rad]")
    p.add_argument("--truncation", type=int, default=None, help="Fock levels (default n+2)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jcmetrology",
        description="Fisher information for estimating the Jaynes-Cummings coupling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, helptext in (
        ("qfi", cmd_qfi, "quantum Fisher information of the global and reduced states"),
        ("fi", cmd_fi, "QFIs plus Fisher information of population/Fock measurements"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_probe_flags(p)
        p.add_argument("--sweep", choices=["theta", "omega", "n"], default=None)
        p.add_argument("--min", type=float, default=None)
        p.add_argument("--max", type=float, default=None)
        p.add_argument("--points", type=int, default=None)
        p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
        p.set_defaults(func=func)

    p = sub.add_parser("estimate", help="Monte Carlo maximum-likelihood experiment")
    _add_probe_flags(p, omega_flag=False)
    p.add_argument("--omega-true", type=float, required=True)
    p.add_argument("--measurement", choices=list(jc_model.MEASUREMENTS), default="joint")
    p.add_argument("--samples", type=int, default=10_000, help="shots per experiment (M)")
    p.add_argument("--reps", type=int, default=100, help="independent experiments")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--interval", type=float, nargs=2, metavar=("LO", "HI"), default=None)
    p.set_defaults(func=cmd_estimate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except inference.EstimationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
