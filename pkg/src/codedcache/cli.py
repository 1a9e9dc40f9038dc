"""Command-line surface: single simulations, exhaustive verification
sweeps, and rate/bound curve exports.

Exit codes: 0 success, 1 verification or decode failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .decoder import DecodeError, constructive_decode, make_view, span_oracle
from .delivery import deliver, select_leaders
from .model import Demand, SystemParams, check_demand, make_library
from .placement import build_placement
from .rates import demand_rate
from .sweep import SweepConfig, build_sweep, format_decimal, write_csv
from .verify import verify_grid

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _parse_demand(text: str) -> tuple[int, ...]:
    try:
        entries = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"demand {text!r} is not a comma-separated int list")
    if any(e < 1 for e in entries):
        raise argparse.ArgumentTypeError(f"demand entries must be >= 1, got {entries}")
    return entries


def _parse_curves(text: str) -> tuple[str, ...]:
    parts = tuple(p.strip() for p in text.split(",") if p.strip())
    return parts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codedcache",
        description="Simulator and rate analysis for coded-prefetching broadcast caching.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one demand end to end and report")
    sim.add_argument("-N", "--files", type=int, required=True, help="number of files")
    sim.add_argument("-K", "--users", type=int, required=True, help="number of users")
    sim.add_argument("-g", "--group-size", type=int, required=True, help="prefetch group size")
    sim.add_argument("-d", "--demand", type=_parse_demand, required=True,
                     help="comma-separated requested file per user, e.g. 1,1,2,2,3,3")
    sim.add_argument("--seed", type=int, default=0, help="library seed (default 0)")
    sim.add_argument("--subfile-bytes", type=int, default=64, help="subfile payload size")
    sim.add_argument("--json", action="store_true", help="machine-readable report")

    ver = sub.add_parser("verify", help="exhaustive decode/oracle/count verification")
    ver.add_argument("--n-max", type=int, default=4, help="largest file count (default 4)")
    ver.add_argument("--k-max", type=int, default=6, help="largest user count (default 6)")
    ver.add_argument("--cap", type=int, default=4096,
                     help="skip (N, K) grids with more than this many demands")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--inject-fault", action="store_true",
                     help="drop the last broadcast of every run (negative control)")

    swp = sub.add_parser("sweep", help="export rate/bound curves as CSV (and a figure)")
    swp.add_argument("-N", "--files", type=int, required=True)
    swp.add_argument("-K", "--users", type=int, required=True)
    swp.add_argument("-o", "--output", type=Path, default=None,
                     help="CSV path (default sweep_N<N>_K<K>.csv)")
    swp.add_argument("--points", type=int, default=100, help="memory grid size (default 100)")
    swp.add_argument("--curves", type=_parse_curves, default=("new", "sota", "cutset", "stc"),
                     help="comma-separated subset of new,sota,cutset,stc")
    swp.add_argument("--exact", action="store_true", help="add exact p/q columns")
    swp.add_argument("--no-plot", dest="plot", action="store_false",
                     help="skip the figure next to the CSV")
    swp.add_argument("--seed", type=int, default=0)
    swp.add_argument("--subfile-bytes", type=int, default=64)
    return parser


def cmd_simulate(args, parser) -> int:
    try:
        params = SystemParams(
            num_files=args.files,
            num_users=args.users,
            group_size=args.group_size,
            subfile_bytes=args.subfile_bytes,
        )
        demand = Demand(args.demand)
        check_demand(params, demand)
    except ValueError as err:
        parser.error(str(err))

    placement = build_placement(params, make_library(params, args.seed))
    leaders = select_leaders(demand)
    log = deliver(placement, demand, leaders)

    rate = Fraction(log.total, params.subfiles_per_file)
    users = []
    any_failure = False
    for user in range(1, params.num_users + 1):
        view = make_view(placement, log, demand, user)
        oracle = span_oracle(view)
        try:
            payload = constructive_decode(view)
            decode_ok = payload == placement.library[demand.request_of(user) - 1]
            decode_status = "ok" if decode_ok else "payload mismatch"
        except DecodeError as err:
            decode_ok = False
            decode_status = str(err)
        any_failure = any_failure or not decode_ok or not oracle.decodable
        users.append(
            {
                "user": user,
                "request": demand.request_of(user),
                "decode": decode_status,
                "oracle": "ok" if oracle.decodable else "rank deficit",
            }
        )

    report = {
        "params": {
            "files": params.num_files,
            "users": params.num_users,
            "group_size": params.group_size,
            "subfile_bytes": params.subfile_bytes,
            "memory": str(params.memory),
            "seed": args.seed,
        },
        "demand": list(demand.requests),
        "leaders": {str(f): u for f, u in sorted(leaders.items())},
        "transmissions": {
            "type_I": log.type1_count,
            "type_II": log.type2_count,
            "type_III": log.type3_count,
            "total": log.total,
        },
        "rate": {"exact": str(rate), "decimal": format_decimal(rate)},
        "users": users,
        "ok": not any_failure,
    }
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        p = report["params"]
        print(f"system: N={p['files']} K={p['users']} g={p['group_size']} "
              f"M={p['memory']} subfile_bytes={p['subfile_bytes']} seed={p['seed']}")
        print(f"demand: {','.join(str(r) for r in demand.requests)}  "
              f"leaders: {report['leaders']}")
        t = report["transmissions"]
        print(f"transmissions: type I = {t['type_I']}, type II = {t['type_II']}, "
              f"type III = {t['type_III']}, total = {t['total']}")
        print(f"rate: {rate} = {format_decimal(rate)} (check: {demand_rate(params, demand.distinct_count)})")
        for u in users:
            print(f"  user {u['user']} wants file {u['request']}: "
                  f"decode {u['decode']}, oracle {u['oracle']}")
        print("result: OK" if report["ok"] else "result: FAILED")
    return EXIT_OK if report["ok"] else EXIT_FAILURE


def cmd_verify(args, parser) -> int:
    if args.n_max < 2 or args.k_max < args.n_max or args.cap < 1:
        parser.error(f"need 2 <= n-max <= k-max and cap >= 1, "
                     f"got n-max={args.n_max}, k-max={args.k_max}, cap={args.cap}")

    def progress(report):
        status = "ok" if not report.failures else f"{len(report.failures)} FAILURES"
        print(f"N={report.num_files} K={report.num_users} g={report.group_size}: "
              f"{report.demands_checked} demands, {status}")

    summary = verify_grid(
        n_max=args.n_max,
        k_max=args.k_max,
        cap=args.cap,
        seed=args.seed,
        inject_fault=args.inject_fault,
        progress=progress,
    )
    for n, k, reason in summary.skipped:
        print(f"N={n} K={k}: skipped ({reason})")
    print(f"checked {summary.instances_checked} demand instances over "
          f"{len(summary.grids)} grids; {len(summary.failures)} failures")
    for line in summary.failures[:20]:
        print(f"  {line}")
    if len(summary.failures) > 20:
        print(f"  ... {len(summary.failures) - 20} more")

    if args.inject_fault:
        detected = bool(summary.failures)
        print("fault injection control:", "detected" if detected else "NOT DETECTED")
        return EXIT_OK if detected else EXIT_FAILURE
    return EXIT_OK if summary.ok else EXIT_FAILURE


def cmd_sweep(args, parser) -> int:
    output = args.output
    if output is None:
        output = Path(f"sweep_N{args.files}_K{args.users}.csv")
    try:
        config = SweepConfig(
            num_files=args.files,
            num_users=args.users,
            points=args.points,
            curves=tuple(args.curves),
            output=output,
            seed=args.seed,
            subfile_bytes=args.subfile_bytes,
            exact=args.exact,
            plot=args.plot,
        )
    except ValueError as err:
        parser.error(str(err))

    rows = build_sweep(config)
    path = write_csv(rows, config)
    print(f"wrote {len(rows)} rows to {path}")
    if config.plot:
        from .plotting import render_figure

        figure_path = path.with_suffix(".png")
        render_figure(rows, config, figure_path)
        print(f"wrote figure to {figure_path}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate":
        return cmd_simulate(args, parser)
    if args.command == "verify":
        return cmd_verify(args, parser)
    if args.command == "sweep":
        return cmd_sweep(args, parser)
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
