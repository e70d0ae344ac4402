"""Command line for the DWBC toolkit.

Usage:
    dwbc partition --N 4 --route both
    dwbc rowprob --N 3 --s 2
    dwbc efp --N 4 --r 3 --s 2
    dwbc verify identity2 --s 2 --trials 20 --seed 7
    python -m dwbc --version

Records go to stdout (or --output) as JSON or CSV; logs go to stderr.

Exit Codes:
    0: Success, every route agrees and every check passes
    1: A computation failed, routes disagree or a check failed
    2: Usage or configuration error
"""

import argparse
import logging
import sys
import time
from collections.abc import Callable
from fractions import Fraction
from typing import Any

from . import __version__
from .config import ENV_PREFIX, DwbcSettings, RunConfig, resolve_config
from .correlation import RunContext
from .determinant import ik_det_hom, ik_det_inhom
from .efp_engine import ROUTES as EFP_ROUTES
from .efp_engine import EfpQuery, efp_routes
from .errors import DegenerateWeightsError, DwbcError, InvalidQueryError
from .logging_config import setup_logging
from .model import Lattice, RowConfig, SpectralParams, VertexWeights
from .oracle import enumerate_dfs, partition_qism, row_prob_oracle
from .records import (
    ResultRecord,
    format_value,
    records_to_csv,
    records_to_json,
    report_to_csv,
    report_to_json,
    write_output,
)
from .row_engine import row_prob_formula
from .verifier import (
    SUITES,
    Sampler,
    VerificationReport,
    check_ab_exchange,
    check_identity1,
    check_identity2,
    check_omega_relations,
    check_sum_identity,
    check_w_lemma,
    cross_check_suite,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

NOT_APPLICABLE = "not applicable"

ENVIRONMENT_VARIABLES = ", ".join(f"{ENV_PREFIX}{name.upper()}" for name in DwbcSettings.model_fields)

PARTITION_ROUTES = {
    "qism": ("qism",),
    "dfs": ("dfs",),
    "determinant": ("determinant",),
    "both": ("qism", "determinant"),
    "all": ("qism", "dfs", "determinant"),
}

logger = logging.getLogger("dwbc.cli")


def _split(text: str | None) -> list[str] | None:
    if text is None:
        return None
    return [item.strip() for item in text.split(",") if item.strip()]


def _weight_override(args: argparse.Namespace) -> dict[str, str] | None:
    if args.weights and args.angles:
        raise ValueError("--weights and --angles are mutually exclusive")
    if args.weights:
        values = _split(args.weights)
        if values is None or len(values) != 3:
            raise ValueError(f"--weights needs three values a,b,c, got {args.weights!r}")
        return dict(zip(("a", "b", "c"), values))
    if args.angles:
        values = _split(args.angles)
        if values is None or len(values) != 2:
            raise ValueError(f"--angles needs two values lam,eta, got {args.angles!r}")
        return dict(zip(("lam", "eta"), values))
    return None


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Resolve the run configuration (flags > environment > file > defaults)."""
    overrides = {
        "weights": _weight_override(args),
        "backend": args.backend,
        "digits": args.digits,
        "seed": args.seed,
        "output_format": args.format,
        "output_path": args.output,
        "record_timing": True if args.timing else None,
        "log_level": args.log_level,
    }
    return resolve_config(args.config, overrides)


def _exact_weights(config: RunConfig) -> VertexWeights:
    w = config.weights
    if not w.is_rational:
        raise InvalidQueryError("This command needs a rational weight triple (a, b, c)")
    return VertexWeights.rational(w.a, w.b, w.c)


def _timed(config: RunConfig, compute: Callable[[], Any]) -> tuple[Any, float | None]:
    if not config.record_timing:
        return compute(), None
    start = time.perf_counter()
    value = compute()
    return value, round((time.perf_counter() - start) * 1000, 3)


def _run_routes(
    config: RunConfig,
    query: dict[str, Any],
    backend_name: str,
    routes: dict[str, Callable[[], Any]],
    is_close: Callable[[Any, Any], bool],
    format_one: Callable[[Any], str],
) -> tuple[list[ResultRecord], bool, dict[str, Any]]:
    """Evaluate every route; each record carries its agreement with the other routes.

    A route without a formula at the given weights is recorded as not
    applicable and left out of the agreement. At least one route must
    produce a value.
    """
    values: dict[str, Any] = {}
    errors: dict[str, str] = {}
    skipped: dict[str, str] = {}
    timings: dict[str, float | None] = {}
    for route, compute in routes.items():
        try:
            values[route], timings[route] = _timed(config, compute)
        except DegenerateWeightsError as e:
            logger.warning("Route %s not applicable for %s: %s", route, query, e)
            skipped[route] = f"{NOT_APPLICABLE}: {e}"
            timings[route] = None
        except DwbcError as e:
            logger.error("Route %s failed for %s: %s", route, query, e)
            errors[route] = f"{type(e).__name__}: {e}"
            timings[route] = None

    records = []
    for route in routes:
        if route in errors or route in skipped:
            message = errors.get(route) or skipped[route]
            records.append(ResultRecord(query, backend_name, route, None, None, timings[route], message))
            continue
        agreement = {other: is_close(values[route], values[other]) for other in values if other != route}
        records.append(
            ResultRecord(query, backend_name, route, format_one(values[route]), agreement, timings[route])
        )
    agree = bool(values) and not errors and all(
        is_close(x, y) for x in values.values() for y in values.values()
    )
    return records, agree, values


def _emit_records(config: RunConfig, records: list[ResultRecord], extra: dict[str, Any] | None = None) -> None:
    if config.output_format == "csv":
        text = records_to_csv(records)
    else:
        document = {"config": config.describe()}
        document.update(extra or {})
        text = records_to_json(records, document)
    write_output(text, config.output_path)


def _emit_report(config: RunConfig, report: VerificationReport) -> None:
    text = report_to_csv(report) if config.output_format == "csv" else report_to_json(report)
    write_output(text, config.output_path)


def cmd_partition(config: RunConfig, args: argparse.Namespace) -> int:
    """Z_N from the requested routes with their agreement."""
    n = args.n
    route_names = PARTITION_ROUTES[args.route]
    lambdas, nus = _split(args.lambdas), _split(args.nus)
    query: dict[str, Any] = {"command": "partition", "n": n, "route": args.route}

    if lambdas is not None or nus is not None:
        if lambdas is None or nus is None or len(lambdas) != n or len(nus) != n:
            raise InvalidQueryError(f"--lambda and --nu need {n} comma-separated values each")
        eta = args.eta if args.eta is not None else config.weights.eta
        if eta is None:
            raise InvalidQueryError("Inhomogeneous parameters need --eta or angle weights")
        backend = config.float_backend()
        params = SpectralParams.parse(lambdas, nus, eta, backend)
        lattice = Lattice.from_params(params, backend)
        query.update({"lambdas": lambdas, "nus": nus, "eta": eta})
        determinant: Callable[[], Any] = lambda: ik_det_inhom(params, backend)
    else:
        weights = config.vertex_weights()
        backend = weights.backend
        lattice = Lattice.homogeneous(weights, n)
        determinant = lambda: ik_det_hom(n, weights)

    compute = {
        "qism": lambda: partition_qism(lattice, bound=config.qism_bound),
        "dfs": lambda: enumerate_dfs(lattice, bound=config.dfs_bound),
        "determinant": determinant,
    }
    records, agree, _ = _run_routes(
        config,
        query,
        backend.name,
        {route: compute[route] for route in route_names},
        backend.is_close,
        lambda value: format_value(value, backend),
    )
    _emit_records(config, records, {"agree": agree})
    return EXIT_OK if agree else EXIT_FAILURE


def cmd_rowprob(config: RunConfig, args: argparse.Namespace) -> int:
    """H_{N,s} for one configuration or the whole fixed-s table."""
    n, s = args.n, args.s
    weights = config.vertex_weights()
    backend = weights.backend
    lattice = Lattice.homogeneous(weights, n)
    positions = _split(args.positions)
    if positions is not None:
        configs = [RowConfig(n, s, tuple(int(p) for p in positions))]
    else:
        configs = list(RowConfig.all_configs(n, s))
    z_n = partition_qism(lattice, bound=config.qism_bound)

    records: list[ResultRecord] = []
    ok = True
    total = backend.zero
    for cfg in configs:
        query = {"command": "rowprob", "n": n, "s": s, "positions": list(cfg.positions)}
        routes: dict[str, Callable[[], Any]] = {
            "oracle": lambda cfg=cfg: row_prob_oracle(cfg, lattice, z_n, config.qism_bound)
        }
        if weights.is_exact:
            routes["formula"] = lambda cfg=cfg: row_prob_formula(cfg, weights)
        cfg_records, agree, values = _run_routes(
            config, query, backend.name, routes, backend.is_close, lambda v: format_value(v, backend)
        )
        records.extend(cfg_records)
        ok = ok and agree
        if "oracle" in values:
            total = total + values["oracle"]

    extra: dict[str, Any] = {"agree": ok}
    if positions is None:
        normalized = backend.is_close(total, backend.one)
        extra["normalization"] = format_value(total, backend)
        if not normalized:
            logger.error("Row probabilities for N=%d, s=%d sum to %s", n, s, backend.format(total))
        ok = ok and normalized
    _emit_records(config, records, extra)
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_efp(config: RunConfig, args: argparse.Namespace) -> int:
    """F_N^(r,s) from the requested routes with the pairwise agreement matrix."""
    weights = config.vertex_weights()
    backend = weights.backend
    q = EfpQuery(args.n, args.r, args.s, weights)
    route_names = tuple(_split(args.routes) or EFP_ROUTES)
    for route in route_names:
        if route not in EFP_ROUTES:
            raise InvalidQueryError(f"Unknown EFP route {route!r} (expected one of {EFP_ROUTES})")
    query = {"command": "efp", "n": q.n, "r": q.r, "s": q.s}
    routes = {route: (lambda route=route: efp_routes(q, (route,))[route]) for route in route_names}
    records, agree, _ = _run_routes(
        config, query, backend.name, routes, backend.is_close, lambda v: format_value(v, backend)
    )
    _emit_records(config, records, {"agree": agree})
    return EXIT_OK if agree else EXIT_FAILURE


def _run_suite(config: RunConfig, args: argparse.Namespace) -> VerificationReport:
    suite = args.suite
    sampler = Sampler(config.seed)
    if suite == "sum-identity":
        return check_sum_identity(args.s, args.degree, args.r)
    if suite == "cross-check":
        float_backend = config.float_backend() if args.float_checks else None
        return cross_check_suite(args.n_max, _exact_weights(config), float_backend, config.seed)
    if suite in ("omega", "ab-exchange"):
        backend = config.float_backend()
        if config.weights.is_rational:
            lam, eta = sampler.angles(backend)
        else:
            lam, eta = backend.convert(config.weights.lam), backend.convert(config.weights.eta)
        if suite == "omega":
            samples = [sampler.between(Fraction(1, 10), Fraction(7, 10)) for _ in range(args.trials)]
            return check_omega_relations(lam, eta, samples, backend)
        n = args.n if args.n is not None else 3
        params = sampler.spectral_params(n, eta, backend)
        report = VerificationReport("ab-exchange", config.seed)
        for r in [args.r] if args.r is not None else range(1, n + 1):
            report.extend(check_ab_exchange(n, r, params, backend))
        return report

    weights = _exact_weights(config)
    if suite == "identity1":
        return check_identity1(args.s, args.trials, weights, sampler)
    if suite == "identity2":
        return check_identity2(args.s, args.trials, weights.t, weights.delta, sampler, config.factorial_budget)
    return check_w_lemma(args.s, args.trials, weights.t, weights.delta, args.r, sampler)


def cmd_verify(config: RunConfig, args: argparse.Namespace) -> int:
    """Run one verification suite; exit 0 iff every check passes."""
    report = _run_suite(config, args)
    if report.seed is None and args.suite != "sum-identity":
        report.seed = config.seed
    for failure in report.failures:
        logger.error("Check failed: %s %s", failure.name, failure.detail)
    logger.info("Suite %s: %d checks, %d failed", args.suite, len(report.checks), len(report.failures))
    _emit_report(config, report)
    return EXIT_OK if report.passed else EXIT_FAILURE


COMMANDS = {
    "partition": cmd_partition,
    "rowprob": cmd_rowprob,
    "efp": cmd_efp,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the four subcommands."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", "-c", type=str, help=f"Path to JSON configuration file (default: ${ENV_PREFIX}CONFIG)")
    common.add_argument("--weights", type=str, help="Rational weights a,b,c (e.g. 1,1,1 or 3/2,1,1)")
    common.add_argument("--angles", type=str, help="Angles lam,eta as decimal strings (float backend)")
    common.add_argument("--backend", choices=("rational", "float"), help="Scalar backend")
    common.add_argument("--digits", type=int, help="Decimal digits of the float backend (>= 30)")
    common.add_argument("--seed", type=int, help="Random seed")
    common.add_argument("--format", choices=("json", "csv"), help="Output format")
    common.add_argument("--output", "-o", type=str, help="Output file (default: stdout)")
    common.add_argument("--timing", action="store_true", help="Record runtime_ms (output is then not reproducible)")
    common.add_argument(
        "--log-level", type=str, help="Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)"
    )

    parser = argparse.ArgumentParser(
        prog="dwbc",
        description="Exact six-vertex model computations with domain wall boundary conditions",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Examples:
  dwbc partition --N 4 --route both
  dwbc partition --N 3 --lambda 1.1,1.2,1.3 --nu 0,0.05,0.1 --eta 0.3
  dwbc rowprob --N 4 --s 2 --format csv
  dwbc efp --N 4 --r 3 --s 2 --routes oracle,rep1,rep2,double
  dwbc verify identity2 --s 2 --trials 20 --seed 7
  dwbc verify cross-check --Nmax 3

Environment:
  {ENVIRONMENT_VARIABLES}

Exit Codes:
  0: Success
  1: Computation failure, route disagreement or failed check
  2: Usage or configuration error
        """,
    )
    parser.add_argument("--version", action="version", version=f"dwbc v{__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    partition = sub.add_parser("partition", parents=[common], help="Partition function Z_N")
    partition.add_argument("--N", dest="n", type=int, required=True, help="Lattice size")
    partition.add_argument("--route", choices=tuple(PARTITION_ROUTES), default="both")
    partition.add_argument("--lambda", dest="lambdas", type=str, help="Comma-separated lambdas")
    partition.add_argument("--nu", dest="nus", type=str, help="Comma-separated nus")
    partition.add_argument("--eta", type=str, help="Crossing parameter for --lambda/--nu")

    rowprob = sub.add_parser("rowprob", parents=[common], help="Row configuration probabilities")
    rowprob.add_argument("--N", dest="n", type=int, required=True)
    rowprob.add_argument("--s", type=int, required=True, help="Row index")
    rowprob.add_argument("--positions", type=str, help="Comma-separated r_1 < ... < r_s (default: full table)")

    efp = sub.add_parser("efp", parents=[common], help="Emptiness formation probability")
    efp.add_argument("--N", dest="n", type=int, required=True)
    efp.add_argument("--r", type=int, required=True)
    efp.add_argument("--s", type=int, required=True)
    efp.add_argument("--routes", type=str, help=f"Comma-separated subset of {','.join(EFP_ROUTES)}")

    verify = sub.add_parser("verify", parents=[common], help="Verification suites")
    verify.add_argument("suite", choices=SUITES)
    verify.add_argument("--s", type=int, default=2)
    verify.add_argument("--trials", type=int, default=20)
    verify.add_argument("--degree", type=int, default=8, help="Truncation degree of the sum identity")
    verify.add_argument("--r", type=int, help="Position r (sum identity, w-lemma, exchange relation)")
    verify.add_argument("--N", dest="n", type=int, help="Chain length of the exchange relation")
    verify.add_argument("--Nmax", dest="n_max", type=int, default=3, help="Largest N of the cross-check")
    verify.add_argument("--float-checks", action="store_true", help="Add the trigonometric checks to the cross-check")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Parse arguments, run one command and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = config_from_args(args)
    except (FileNotFoundError, ValueError) as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(config.logging_config())
    payload = {"command": args.command, "args": vars(args), "config": config.describe()}
    with RunContext(payload=payload) as run_id:
        logger.info("Running %s (run %s)", args.command, run_id)
        try:
            return COMMANDS[args.command](config, args)
        except InvalidQueryError as e:
            logger.error("Invalid query: %s", e)
            print(f"ERROR: {e}", file=sys.stderr)
            return EXIT_USAGE
        except ValueError as e:
            logger.error("Invalid argument: %s", e)
            print(f"ERROR: {e}", file=sys.stderr)
            return EXIT_USAGE
        except DwbcError as e:
            logger.error("%s failed: %s", args.command, e)
            record = ResultRecord(
                {"command": args.command}, config.backend, "none", error=f"{type(e).__name__}: {e}"
            )
            _emit_records(config, [record], {"agree": False})
            return EXIT_FAILURE


def cli() -> None:
    """Console script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    cli()
