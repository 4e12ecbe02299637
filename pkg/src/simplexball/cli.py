"""Command line interface.

Subcommands: table1, norm, maxpoints, minimal-ellipsoid, lower-bound,
conjecture, theta.  Output goes to stdout as JSON (default) or CSV,
preceded by a comment header unless --no-header is given; identical
command lines with the same seed produce byte-identical output apart
from that header.

Exit codes: 0 success, 1 domain error (degenerate input, dimension too
large), 2 file I/O failure, 3 counterexample found, 64 usage error,
65 malformed input file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import secrets
import sys
from dataclasses import dataclass
from datetime import datetime, timezone

from .bounds import (
    DEFAULT_SEED,
    SAMPLERS,
    h1_check,
    h1_stress,
    lower_bound,
    theta_search,
)
from .errors import (
    DegenerateEllipsoid,
    DegenerateSimplex,
    DimensionMismatch,
    DomainError,
    SimplexBallError,
)
from .extremal import all_max_points, minimal_ellipsoid
from .geometry import (
    ball_from_dict,
    ellipsoid_from_dict,
    ellipsoid_to_dict,
    simplex_from_dict,
)
from .norm import norm_on_ball, norm_on_ellipsoid
from .regular import regular_inscribed, regular_norm, table1

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_USAGE = 64
EXIT_DATA = 65

JOBS_ENV = "SIMPLEX_BALL_JOBS"

# sqrt(n) coefficient of the asymptotic lower bound.
BOUND_COEFFICIENT = math.pi ** (1 / 3) / (math.sqrt(12 * math.e) * 3 ** (1 / 6))

# Known attainment rows (k, N) used by table1 --verify.
VERIFIED_ROWS = {
    1: (1, 2), 2: (1, 3), 3: (1, 4), 4: (1, 5), 5: (2, 15), 6: (2, 21),
    7: (3, 56), 8: (3, 84), 9: (3, 120), 10: (4, 330), 11: (4, 495),
    12: (5, 1287), 13: (5, 2002), 14: (6, 5005), 15: (6, 8008),
    50: (22, 156077261327400),
    100: (45, 110826707011209895344085355160),
}


class _CliFailure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


@dataclass(frozen=True)
class RunConfig:
    """Resolved run-wide options shared by the subcommands."""

    command: str
    fmt: str
    header: bool
    seed: int
    jobs: int


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _seed_spec(text: str):
    if text == "random":
        return "random"
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"seed must be an integer or 'random', got {text!r}")


def build_parser() -> _Parser:
    # The run-wide options are accepted both before and after the
    # subcommand; a later occurrence wins.  SUPPRESS keeps an unset
    # subparser copy from clobbering a value parsed at the top level.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"),
                        default=argparse.SUPPRESS,
                        help="output format (default json)")
    common.add_argument("--no-header", action="store_true",
                        default=argparse.SUPPRESS,
                        help="suppress the timestamp comment header")
    common.add_argument("--seed", type=_seed_spec, default=argparse.SUPPRESS,
                        help="RNG seed (integer or 'random'; default 0xC0FFEE)")
    common.add_argument("--jobs", type=_positive_int, default=argparse.SUPPRESS,
                        help=f"worker processes (default ${JOBS_ENV} or cores)")

    parser = _Parser(prog="simplexball", parents=[common],
                     description="Norms of linear interpolation projectors "
                                 "with nodes in a ball, and the extremal "
                                 "geometry behind them.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", parents=[common],
                       help="attainment table (n, a, k, N)")
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--verify", action="store_true",
                   help="check rows against the known values; exit 1 on mismatch")

    p = sub.add_parser("norm", parents=[common], help="exact projector norm")
    p.add_argument("--simplex", metavar="FILE", help="simplex JSON file")
    p.add_argument("--ball", metavar="FILE", help="ball JSON file")
    p.add_argument("--ellipsoid", metavar="FILE", help="ellipsoid JSON file")
    p.add_argument("--regular", type=_positive_int, metavar="N",
                   help="use the regular inscribed configuration in R^N")

    p = sub.add_parser("maxpoints", parents=[common],
                       help="norm-attaining points of the regular configuration")
    p.add_argument("--n", type=_positive_int, required=True)

    p = sub.add_parser("minimal-ellipsoid", parents=[common],
                       help="minimal enclosing ellipsoid of a simplex")
    p.add_argument("--simplex", metavar="FILE", required=True)

    p = sub.add_parser("lower-bound", parents=[common],
                       help="projector norm lower bounds")
    p.add_argument("--n-max", type=_positive_int, required=True)

    p = sub.add_parser("conjecture", parents=[common],
                       help="randomized attainment stress test")
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--m", type=_positive_int)
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--sampler", choices=SAMPLERS, default="uniform-ball")
    p.add_argument("--replay", metavar="FILE",
                   help="re-check the simplices from a counterexample artifact")
    p.add_argument("--replay-out", metavar="FILE", default="h1_counterexamples.json",
                   help="where to write counterexamples (default %(default)s)")

    p = sub.add_parser("theta", parents=[common],
                       help="search for the minimal projector norm")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--restarts", type=_positive_int, default=20)
    p.add_argument("--iterations", type=_positive_int, default=50_000)

    return parser


def _resolve_config(args) -> RunConfig:
    seed = getattr(args, "seed", DEFAULT_SEED)
    if seed == "random":
        seed = secrets.randbits(63)
    jobs = getattr(args, "jobs", None)
    if jobs is None:
        env = os.environ.get(JOBS_ENV, "")
        if env.strip():
            try:
                jobs = max(1, int(env))
            except ValueError:
                raise _CliFailure(EXIT_USAGE, f"${JOBS_ENV} must be an integer")
        else:
            jobs = os.cpu_count() or 1
    return RunConfig(args.command, getattr(args, "format", "json"),
                     not getattr(args, "no_header", False), seed, jobs)


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise _CliFailure(EXIT_DATA, f"{path}: invalid JSON: {exc}")


def _load_simplex(path: str):
    data = _load_json(path)
    try:
        return simplex_from_dict(data)
    except (DegenerateSimplex,):
        raise
    except (DomainError, DimensionMismatch) as exc:
        raise _CliFailure(EXIT_DATA, f"{path}: {exc}")


def _load_ball(path: str):
    data = _load_json(path)
    try:
        return ball_from_dict(data)
    except (DomainError, DimensionMismatch) as exc:
        raise _CliFailure(EXIT_DATA, f"{path}: {exc}")


def _load_ellipsoid(path: str):
    data = _load_json(path)
    try:
        return ellipsoid_from_dict(data)
    except (DegenerateEllipsoid,):
        raise
    except (DomainError, DimensionMismatch) as exc:
        raise _CliFailure(EXIT_DATA, f"{path}: {exc}")


def _emit(config: RunConfig, payload, csv_rows=None, seeded: bool = False):
    """Print the header plus the JSON payload or CSV rows."""
    out = io.StringIO()
    if config.header:
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        seed_part = f" seed={config.seed}" if seeded else ""
        out.write(f"# simplexball {config.command}{seed_part} generated={stamp}\n")
    if config.fmt == "json" or csv_rows is None:
        out.write(json.dumps(payload, indent=2))
        out.write("\n")
    else:
        writer = csv.writer(out, lineterminator="\n")
        for row in csv_rows:
            writer.writerow(row)
    sys.stdout.write(out.getvalue())


def _vec(values) -> str:
    return ";".join(repr(float(v)) for v in values)


def cmd_table1(args, config: RunConfig) -> int:
    rows = table1(args.n_max)
    if args.verify:
        for row in rows:
            expected = VERIFIED_ROWS.get(row.n)
            if expected and (row.k, row.count) != expected:
                print(f"table row n={row.n} computed (k={row.k}, N={row.count}) "
                      f"!= expected (k={expected[0]}, N={expected[1]})",
                      file=sys.stderr)
                return EXIT_DOMAIN
    payload = [{"n": r.n, "a": r.a, "k": r.k, "N": r.count} for r in rows]
    csv_rows = [("n", "a", "k", "N")] + [(r.n, r.a, r.k, r.count) for r in rows]
    _emit(config, payload, csv_rows)
    return EXIT_OK


def cmd_norm(args, config: RunConfig, parser: _Parser) -> int:
    closed = None
    if args.regular is not None:
        if args.simplex or args.ball or args.ellipsoid:
            parser.error("--regular excludes --simplex/--ball/--ellipsoid")
        configuration = regular_inscribed(args.regular)
        report = norm_on_ball(configuration.simplex, configuration.ball)
        closed = regular_norm(args.regular)
    else:
        if not args.simplex or bool(args.ball) == bool(args.ellipsoid):
            parser.error("norm needs --simplex with exactly one of "
                         "--ball/--ellipsoid, or --regular N")
        simplex = _load_simplex(args.simplex)
        if args.ball:
            report = norm_on_ball(simplex, _load_ball(args.ball))
        else:
            report = norm_on_ellipsoid(simplex, _load_ellipsoid(args.ellipsoid))
    payload = report.to_dict()
    header = ["norm", "signs", "argmax"]
    row = [repr(report.norm), ";".join(str(s) for s in payload["signs"]),
           _vec(payload["argmax"])]
    if closed is not None:
        payload["closed_form"] = closed
        payload["difference"] = abs(report.norm - closed)
        header += ["closed_form", "difference"]
        row += [repr(closed), repr(payload["difference"])]
    _emit(config, payload, [header, row])
    return EXIT_OK


def cmd_maxpoints(args, config: RunConfig) -> int:
    results = all_max_points(args.n)
    payload = [r.to_dict() for r in results]
    n = args.n
    header = (["subset"] + [f"g_{i + 1}" for i in range(n)]
              + [f"h_{i + 1}" for i in range(n)]
              + [f"y_{i + 1}" for i in range(n)] + ["lambdaSum"])
    csv_rows = [header]
    for r in results:
        csv_rows.append([";".join(str(i) for i in r.subset)]
                        + [repr(float(v)) for v in r.g]
                        + [repr(float(v)) for v in r.h]
                        + [repr(float(v)) for v in r.y]
                        + [repr(r.lambda_sum_at_y)])
    _emit(config, payload, csv_rows)
    return EXIT_OK


def cmd_minimal_ellipsoid(args, config: RunConfig) -> int:
    simplex = _load_simplex(args.simplex)
    ellipsoid = minimal_ellipsoid(simplex)
    payload = ellipsoid_to_dict(ellipsoid)
    n = simplex.n
    header = [f"center_{i + 1}" for i in range(n)]
    header += [f"shape_{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    row = [repr(float(v)) for v in ellipsoid.center]
    row += [repr(float(v)) for v in ellipsoid.shape.ravel()]
    _emit(config, payload, [header, row])
    return EXIT_OK


def cmd_lower_bound(args, config: RunConfig) -> int:
    payload = []
    csv_rows = [("n", "bound", "c_sqrt_n", "regular_norm")]
    for n in range(1, args.n_max + 1):
        bound = lower_bound(n)
        scaled = BOUND_COEFFICIENT * math.sqrt(n)
        payload.append({"n": n, "bound": bound, "c_sqrt_n": scaled,
                        "regular_norm": regular_norm(n)})
        csv_rows.append((n, repr(bound), repr(scaled), repr(regular_norm(n))))
    _emit(config, payload, csv_rows)
    return EXIT_OK


def _replay(args, config: RunConfig) -> int:
    artifact = _load_json(args.replay)
    try:
        m = int(artifact["m"])
        ball = ball_from_dict(artifact["ball"])
        entries = artifact["failures"]
        simplices = [simplex_from_dict(entry["simplex"]) for entry in entries]
    except (KeyError, TypeError, ValueError, DomainError,
            DimensionMismatch) as exc:
        raise _CliFailure(EXIT_DATA, f"{args.replay}: bad artifact: {exc}")
    payload = []
    failed = False
    for index, simplex in enumerate(simplices):
        result = h1_check(simplex, m, ball)
        failed = failed or not result.satisfied
        payload.append({"index": index, "satisfied": result.satisfied,
                        "slack": result.slack,
                        "best_subset": list(result.best_subset)})
    csv_rows = [("index", "satisfied", "slack", "best_subset")]
    csv_rows += [(e["index"], e["satisfied"], repr(e["slack"]),
                  ";".join(str(i) for i in e["best_subset"])) for e in payload]
    _emit(config, payload, csv_rows)
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def cmd_conjecture(args, config: RunConfig, parser: _Parser) -> int:
    if args.replay:
        return _replay(args, config)
    if args.n is None or args.m is None:
        parser.error("conjecture needs --n and --m (or --replay FILE)")
    report = h1_stress(args.n, args.m, args.trials, config.seed,
                       args.sampler, jobs=config.jobs)
    payload = report.to_dict()
    csv_rows = [("n", "m", "trials", "seed", "sampler", "satisfied_all",
                 "min_slack", "failures", "rejections", "interior_trials",
                 "boundary_trials"),
                (report.n, report.m, report.trials, report.seed, report.sampler,
                 report.satisfied_all, repr(report.min_slack),
                 len(report.failures), report.rejections,
                 report.interior_trials, report.boundary_trials)]
    _emit(config, payload, csv_rows, seeded=True)
    if not report.satisfied_all:
        artifact = {
            "n": report.n,
            "m": report.m,
            "seed": report.seed,
            "sampler": report.sampler,
            "ball": {"center": [0.0] * report.n, "radius": 1.0},
            "failures": report.failures,
        }
        with open(args.replay_out, "w", encoding="utf-8") as handle:
            json.dump(artifact, handle, indent=2)
        print(f"counterexamples written to {args.replay_out}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def cmd_theta(args, config: RunConfig) -> int:
    estimate = theta_search(args.n, args.restarts, args.iterations, config.seed)
    payload = estimate.to_dict()
    payload["regular_norm"] = regular_norm(args.n)
    payload["lower_bound"] = lower_bound(args.n)
    csv_rows = [("n", "best_norm", "restarts", "seed", "regular_norm",
                 "lower_bound"),
                (estimate.n, repr(estimate.best_norm), estimate.restarts,
                 estimate.seed, repr(payload["regular_norm"]),
                 repr(payload["lower_bound"]))]
    _emit(config, payload, csv_rows, seeded=True)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = _resolve_config(args)
        if args.command == "table1":
            return cmd_table1(args, config)
        if args.command == "norm":
            return cmd_norm(args, config, parser)
        if args.command == "maxpoints":
            return cmd_maxpoints(args, config)
        if args.command == "minimal-ellipsoid":
            return cmd_minimal_ellipsoid(args, config)
        if args.command == "lower-bound":
            return cmd_lower_bound(args, config)
        if args.command == "conjecture":
            return cmd_conjecture(args, config, parser)
        if args.command == "theta":
            return cmd_theta(args, config)
        raise _CliFailure(EXIT_USAGE, f"unknown command {args.command!r}")
    except _CliFailure as failure:
        print(f"simplexball: {failure}", file=sys.stderr)
        return failure.code
    except SystemExit as exc:
        return int(exc.code or 0)
    except SimplexBallError as exc:
        print(f"simplexball: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"simplexball: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint():
    sys.exit(main())
