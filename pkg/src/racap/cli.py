"""Command-line front end emitting CSV/JSON tables for every curve and check.

Exit codes: 0 success, 1 internal failure, 2 usage error.  All commands
honor --format csv|json and --output; the default is CSV on stdout.
dB-to-linear SNR conversion happens only here, the library is linear
throughout.  The optional RACAP_THREADS variable sizes the simulation
thread pool and never changes results.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Sequence

import numpy as np

from . import simulator, thresholds, throughput, two_user
from .numerics import ChannelModel

_SCHEMA = "racap-1"

_CURVES_BY_MODEL = {
    "bd": ("T", "ALOHA"),
    "awgn": ("T_lower", "T_upper", "CSI", "AD", "ML", "ALOHA"),
    "poisson": ("T", "ALOHA"),
}


def _fmt(value) -> str:
    if isinstance(value, float):
        if not math.isfinite(value):
            raise RuntimeError(f"refusing to emit non-finite value {value!r}")
        return format(value, ".12g")
    return str(value)


def write_table(stream, fmt: str, command: str, parameters: dict, columns, rows):
    """Serialize one table as CSV (header + rows) or a JSON document."""
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    else:
        doc = {
            "schema": _SCHEMA,
            "command": command,
            "parameters": parameters,
            "columns": list(columns),
            "rows": [
                [v if not isinstance(v, float) else float(_fmt(v)) for v in row]
                for row in rows
            ],
        }
        json.dump(doc, stream, indent=2)
        stream.write("\n")


def read_table(source) -> tuple[list[str], list[list]]:
    """Parse a table previously written by this tool (CSV or JSON).

    Numeric-looking cells come back as floats, everything else as strings;
    re-emitting the parsed rows reproduces the file byte for byte.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        return list(doc["columns"]), [list(r) for r in doc["rows"]]
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    header, body = rows[0], rows[1:]
    parsed = []
    for row in body:
        out = []
        for cell in row:
            try:
                out.append(float(cell))
            except ValueError:
                out.append(cell)
        parsed.append(out)
    return header, parsed


def _emit(args, command: str, parameters: dict, columns, rows) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            write_table(fh, args.format, command, parameters, columns, rows)
    else:
        write_table(sys.stdout, args.format, command, parameters, columns, rows)


def _db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _workers() -> int:
    raw = os.environ.get("RACAP_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _add_io_flags(sub) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--output", default=None, help="write to a file instead of stdout")


def cmd_thresholds(parser, args) -> int:
    if args.model in ("bd", "awgn") and args.m is None:
        parser.error(f"--m is required for --model {args.model}")
    if args.model == "awgn" and args.snr_db is None:
        parser.error("--snr-db is required for --model awgn")
    if args.model == "poisson" and args.k_max is None:
        parser.error("--k-max is required for --model poisson")

    if args.model == "bd":
        table = thresholds.bd_thresholds(args.m)
        axis = "p"
    elif args.model == "awgn":
        table = thresholds.awgn_thresholds(args.m, _db_to_linear(args.snr_db))
        axis = "p"
    else:
        table = thresholds.poisson_thresholds(args.k_max)
        axis = "lambda"

    columns = ["k", axis, "rate"]
    rows = [
        [k + 1, table.boundaries[k + 1], table.rates[k]]
        for k in range(len(table.rates))
    ]
    params = {
        "model": args.model,
        "m": args.m,
        "snr_db": args.snr_db,
        "k_max": args.k_max,
    }
    _emit(args, "thresholds", params, columns, rows)
    return 0


def _curve_values(model: str, name: str, xs, m, snr) -> list[float]:
    if model == "poisson":
        if name == "T":
            return [throughput.poisson_throughput(x) for x in xs]
        return [throughput.aloha_poisson(x) for x in xs]
    if model == "bd":
        if name == "T":
            return [throughput.bd_throughput(x, m) for x in xs]
        return [throughput.baseline_aloha(x, m) for x in xs]
    fns = {
        "T_lower": lambda x: throughput.awgn_throughput_lower(x, m, snr),
        "T_upper": lambda x: throughput.awgn_throughput_upper(x, m, snr),
        "CSI": lambda x: throughput.baseline_csi(x, m, snr),
        "AD": lambda x: throughput.baseline_adaptive(x, m, snr),
        "ML": lambda x: throughput.baseline_ml(x, m, snr),
        "ALOHA": lambda x: throughput.baseline_aloha(x, m),
    }
    return [fns[name](x) for x in xs]


def cmd_throughput(parser, args) -> int:
    curves = [c for c in (args.curves or "").split(",") if c]
    if not curves:
        parser.error("--curves must name at least one curve")
    allowed = _CURVES_BY_MODEL[args.model]
    for c in curves:
        if c not in allowed:
            parser.error(
                f"curve {c!r} not available for --model {args.model}; "
                f"choose from {', '.join(allowed)}"
            )
    if args.model in ("bd", "awgn") and args.m is None:
        parser.error(f"--m is required for --model {args.model}")
    if args.model == "awgn" and args.snr_db is None:
        parser.error("--snr-db is required for --model awgn")
    if args.grid < 1:
        parser.error("--grid must be >= 1")

    snr = _db_to_linear(args.snr_db) if args.snr_db is not None else None
    if args.model == "poisson":
        xs = [args.lambda_max * (i + 1) / args.grid for i in range(args.grid)]
        axis = "lambda"
    else:
        xs = [(i + 1) / args.grid for i in range(args.grid)]
        axis = "p"

    series = {name: _curve_values(args.model, name, xs, args.m, snr) for name in curves}
    columns = [axis] + curves
    rows = [[x] + [series[name][i] for name in curves] for i, x in enumerate(xs)]
    params = {
        "model": args.model,
        "m": args.m,
        "snr_db": args.snr_db,
        "grid": args.grid,
        "curves": curves,
    }
    _emit(args, "throughput", params, columns, rows)
    if args.plot:
        from .figures import render_curves

        render_curves(
            xs,
            series,
            axis,
            "bits/symbol",
            args.plot,
            title=f"{args.model} m={args.m}" if args.m else args.model,
        )
    return 0


def cmd_region(parser, args) -> int:
    bd_mode = args.n1 is not None or args.n2 is not None
    awgn_mode = args.snr1_db is not None or args.snr2_db is not None
    if bd_mode == awgn_mode:
        parser.error("give either --n1/--n2 or --snr1-db/--snr2-db")
    if bd_mode and (args.n1 is None or args.n2 is None):
        parser.error("--n1 and --n2 are both required")
    if awgn_mode and (args.snr1_db is None or args.snr2_db is None):
        parser.error("--snr1-db and --snr2-db are both required")
    if (args.vertices and args.check) or (not args.vertices and not args.check):
        parser.error("give exactly one of --vertices or --check")

    params = {
        "n1": args.n1,
        "n2": args.n2,
        "snr1_db": args.snr1_db,
        "snr2_db": args.snr2_db,
    }
    if args.vertices:
        if bd_mode:
            verts = two_user.bd_region_vertices(args.n1, args.n2)
        else:
            verts = two_user.awgn_outer_vertices(
                _db_to_linear(args.snr1_db), _db_to_linear(args.snr2_db)
            )
        columns = ["vertex", "r1_solo", "r2_solo", "r1_joint", "r2_joint"]
        rows = [
            [i + 1, v.r1_solo, v.r2_solo, v.r1_joint, v.r2_joint]
            for i, v in enumerate(verts)
        ]
        _emit(args, "region", params, columns, rows)
        return 0

    try:
        pt = [float(v) for v in args.check.split(",")]
    except ValueError:
        parser.error("--check expects four comma-separated rates")
    if len(pt) != 4:
        parser.error("--check expects four comma-separated rates")
    rows = []
    if bd_mode:
        inside = two_user.bd_region_contains(args.n1, args.n2, pt)
        rows.append(["bd", "inside" if inside else "outside"])
    else:
        p1, p2 = _db_to_linear(args.snr1_db), _db_to_linear(args.snr2_db)
        outer = two_user.awgn_outer_contains(p1, p2, pt)
        inner = two_user.awgn_inner_contains(p1, p2, pt)
        rows.append(["awgn_outer", "inside" if outer else "outside"])
        rows.append(["awgn_inner", "inside" if inner else "outside"])
    _emit(args, "region", params, ["region", "verdict"], rows)
    return 0


_GAP_SWEEP_DB = (-10.0, 0.0, 10.0, 20.0, 40.0)


def cmd_gap(parser, args) -> int:
    if args.snr1_db is None or args.snr2_db is None:
        if not args.sweep:
            parser.error("--snr1-db and --snr2-db are required (or use --sweep)")
    pairs = []
    if args.sweep:
        pairs = [
            (a, b) for a in _GAP_SWEEP_DB for b in _GAP_SWEEP_DB if a >= b
        ]
    else:
        if _db_to_linear(args.snr1_db) < _db_to_linear(args.snr2_db):
            parser.error("--snr1-db must be >= --snr2-db")
        pairs = [(args.snr1_db, args.snr2_db)]
    columns = ["snr1_db", "snr2_db", "max_distance", "bound", "ok"]
    rows = []
    for db1, db2 in pairs:
        dist = two_user.verify_gap(_db_to_linear(db1), _db_to_linear(db2))
        ok = dist <= two_user.GAP_BOUND + 1e-9
        rows.append([db1, db2, dist, two_user.GAP_BOUND, "pass" if ok else "fail"])
    params = {"snr1_db": args.snr1_db, "snr2_db": args.snr2_db, "sweep": args.sweep}
    _emit(args, "gap", params, columns, rows)
    return 0 if all(r[-1] == "pass" for r in rows) else 1


def cmd_simulate(parser, args) -> int:
    if args.model == "awgn" and args.snr_db is None:
        parser.error("--snr-db is required for --model awgn")
    if args.model == "bd":
        model = ChannelModel.bd()
    else:
        model = ChannelModel.awgn(_db_to_linear(args.snr_db))
    if args.rate == "auto":
        if args.p <= 0.0:
            parser.error("--rate auto needs --p > 0")
        if args.model == "bd":
            rate: float | throughput.RatePolicy = throughput.bd_policy(args.m)
        else:
            rate = throughput.awgn_policy(args.m, model.snr)
    else:
        try:
            rate = float(args.rate)
        except ValueError:
            parser.error("--rate must be 'auto' or a positive number")
        if rate <= 0.0:
            parser.error("--rate must be positive")

    config = simulator.SlotSimConfig(
        model, args.m, args.p, rate, args.slots, args.seed
    )
    report = simulator.simulate(config, workers=_workers())
    resolved = config.resolved_rate()
    columns = [
        "model",
        "m",
        "p",
        "rate",
        "empirical_sum_rate",
        "collision_fraction",
        "std_error",
        "n_slots",
        "seed",
    ]
    rows = [
        [
            args.model,
            args.m,
            args.p,
            resolved,
            report.empirical_sum_rate,
            report.collision_fraction,
            report.std_error,
            report.n_slots,
            report.seed,
        ]
    ]
    params = {
        "model": args.model,
        "m": args.m,
        "p": args.p,
        "rate": args.rate,
        "slots": args.slots,
        "seed": args.seed,
        "snr_db": args.snr_db,
    }
    _emit(args, "simulate", params, columns, rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="racap",
        description=(
            "Rate adaptation for random-access channels: switching "
            "thresholds, throughput curves, capacity regions, gap checks "
            "and slot simulation."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("thresholds", help="rate-switching boundaries")
    p.add_argument("--model", choices=("bd", "awgn", "poisson"), required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--snr-db", type=float)
    p.add_argument("--k-max", type=int)
    _add_io_flags(p)

    p = subs.add_parser("throughput", help="throughput and baseline curves")
    p.add_argument("--model", choices=("bd", "awgn", "poisson"), required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--snr-db", type=float)
    p.add_argument("--grid", type=int, default=50)
    p.add_argument("--curves", required=True, help="comma-separated curve names")
    p.add_argument("--lambda-max", type=float, default=10.0)
    p.add_argument("--plot", default=None, help="also render the curves to this image")
    _add_io_flags(p)

    p = subs.add_parser("region", help="two-user capacity region")
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--snr1-db", type=float)
    p.add_argument("--snr2-db", type=float)
    p.add_argument("--vertices", action="store_true")
    p.add_argument("--check", default=None, metavar="R1,R2,R12,R22")
    _add_io_flags(p)

    p = subs.add_parser("gap", help="outer-to-inner distance certificate")
    p.add_argument("--snr1-db", type=float)
    p.add_argument("--snr2-db", type=float)
    p.add_argument("--sweep", action="store_true", help="log-grid power sweep")
    _add_io_flags(p)

    p = subs.add_parser("simulate", help="Monte Carlo slot simulation")
    p.add_argument("--model", choices=("bd", "awgn"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--snr-db", type=float)
    p.add_argument("--rate", default="auto", help="'auto' or a fixed per-user rate")
    p.add_argument("--slots", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    _add_io_flags(p)

    return parser


_DISPATCH = {
    "thresholds": cmd_thresholds,
    "throughput": cmd_throughput,
    "region": cmd_region,
    "gap": cmd_gap,
    "simulate": cmd_simulate,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](parser, args)
    except ValueError as exc:
        print(f"racap: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - boundary of the tool
        print(f"racap: internal error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
