"""Command-line front end: compute, sweep, regions, boundary, simulate.

All commands validate their inputs before producing any output, write CSV
with a mandatory header / LF line ends / 17-significant-digit floats, and
emit JSON as a single top-level object. Exit codes: 0 success, 2 validation
error, 3 unphysical state, 4 statistical failure.
"""

from __future__ import annotations

import argparse
import datetime
import io
import json
import math
import sys

from . import kernels
from .boundary import (
    Direction,
    boundary_curve,
    crossover_point,
    region_map,
    sweep_eta,
)
from .errors import (
    DomainError,
    MaxIterations,
    NoBracket,
    NonPositiveMatrix,
    NumericalFailure,
    StructureViolation,
    UnphysicalState,
)
from .gaussian import standard_form_of
from .homodyne import (
    DEFAULT_STRUCTURE_TOL,
    bootstrap_steering,
    estimate_cm,
    rng_metadata,
    sample_quadratures,
)
from .schemes import Scheme, build_cm, parse_scheme
from .steering import classify

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_UNPHYSICAL = 3
EXIT_STATISTICAL = 4

PAPER_V = 1.251
# Headline noise values of the reference parameter study, per scheme.
PAPER_DELTA = {Scheme.PURE: 0.0, Scheme.I: 0.112, Scheme.II: 0.112, Scheme.III: 0.251}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _nats_to_output(g: float, bits: bool) -> float:
    return g / math.log(2.0) if bits else g


def _resolve_common(args) -> tuple[Scheme, float, float, float]:
    """Apply --paper-defaults and per-scheme rules to (scheme, v, eta, delta)."""
    scheme = parse_scheme(args.scheme)
    v = args.v
    if v is None:
        if getattr(args, "paper_defaults", False):
            v = PAPER_V
        else:
            raise DomainError("--v is required (or pass --paper-defaults)")
    delta = getattr(args, "delta", None)
    if delta is None:
        delta = PAPER_DELTA[scheme] if getattr(args, "paper_defaults", False) else 0.0
    eta = getattr(args, "eta", None)
    if eta is None and scheme is Scheme.PURE:
        eta = 1.0
    return scheme, v, eta, delta


def cmd_compute(args) -> str:
    scheme, v, eta, delta = _resolve_common(args)
    if eta is None:
        raise DomainError("--eta is required for schemes 1, 2 and 3")
    cm = build_cm(scheme, v, eta, delta)
    result = classify(cm)
    fields = [
        ("alpha", cm.alpha),
        ("beta", cm.beta),
        ("gamma", cm.gamma),
        ("det_a", result.det_a),
        ("det_b", result.det_b),
        ("det_ab", result.det_ab),
        ("g_a_to_b", _nats_to_output(result.g_a_to_b, args.bits)),
        ("g_b_to_a", _nats_to_output(result.g_b_to_a, args.bits)),
        ("regime", result.regime.value),
    ]
    if args.format == "csv":
        buf = io.StringIO()
        buf.write(",".join(name for name, _ in fields) + "\n")
        buf.write(
            ",".join(
                value if isinstance(value, str) else _fmt(value)
                for _, value in fields
            )
            + "\n"
        )
        return buf.getvalue()
    return json.dumps(dict(fields), indent=2) + "\n"


def cmd_sweep(args) -> str:
    scheme, v, _, delta = _resolve_common(args)
    result = sweep_eta(scheme, v, delta, args.eta_from, args.eta_to, args.steps)
    rows = [
        (eta, _nats_to_output(g_ab, args.bits), _nats_to_output(g_ba, args.bits), regime)
        for eta, g_ab, g_ba, regime in result.rows
    ]
    if args.format == "json":
        payload = {
            "scheme": scheme.value,
            "v": v,
            "delta": delta,
            "rows": [
                {
                    "eta": eta,
                    "g_a_to_b": g_ab,
                    "g_b_to_a": g_ba,
                    "regime": regime.value,
                }
                for eta, g_ab, g_ba, regime in rows
            ],
        }
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    buf.write("eta,g_a_to_b,g_b_to_a,regime\n")
    for eta, g_ab, g_ba, regime in rows:
        buf.write(f"{_fmt(eta)},{_fmt(g_ab)},{_fmt(g_ba)},{regime.value}\n")
    return buf.getvalue()


def cmd_regions(args) -> str:
    scheme, v, _, _ = _resolve_common(args)
    rm = region_map(scheme, v, args.grid, args.grid, args.delta_max)
    if args.format == "json":
        payload = {
            "scheme": scheme.value,
            "v": v,
            "etas": [float(e) for e in rm.etas],
            "deltas": [float(d) for d in rm.deltas],
            "regimes": [
                [rm.regime_at(i, j).value for j in range(len(rm.deltas))]
                for i in range(len(rm.etas))
            ],
        }
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    buf.write("eta,delta,regime\n")
    for i, eta in enumerate(rm.etas):
        for j, delta in enumerate(rm.deltas):
            buf.write(f"{_fmt(eta)},{_fmt(delta)},{rm.regime_at(i, j).value}\n")
    return buf.getvalue()


def cmd_boundary(args) -> str:
    scheme, v, _, _ = _resolve_common(args)
    curves = [
        boundary_curve(scheme, direction, v, args.points, args.delta_max)
        for direction in (Direction.A_TO_B, Direction.B_TO_A)
    ]
    crossover = None
    if scheme in (Scheme.II, Scheme.III):
        crossover = crossover_point(scheme, v)
    if args.format == "json":
        payload = {
            "scheme": scheme.value,
            "v": v,
            "curves": [
                {
                    "direction": curve.direction.value,
                    "closed_form_id": curve.closed_form_id,
                    "points": [[eta, delta] for eta, delta in curve.points],
                }
                for curve in curves
            ],
            "crossover": list(crossover) if crossover else None,
        }
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    buf.write("direction,eta,delta,closed_form_id\n")
    for curve in curves:
        for eta, delta in curve.points:
            buf.write(
                f"{curve.direction.value},{_fmt(eta)},{_fmt(delta)},\"{curve.closed_form_id}\"\n"
            )
    if crossover is not None:
        buf.write(f"crossover,{_fmt(crossover[0])},{_fmt(crossover[1])},\"crossover\"\n")
    return buf.getvalue()


def cmd_simulate(args) -> str:
    scheme, v, eta, delta = _resolve_common(args)
    if eta is None:
        raise DomainError("--eta is required for schemes 1, 2 and 3")
    if args.n < 2:
        raise DomainError(f"--n must be >= 2, got {args.n}")
    cm = build_cm(scheme, v, eta, delta)
    sample = sample_quadratures(cm, args.n, args.seed)
    if args.samples_csv:
        with open(args.samples_csv, "w", encoding="utf-8", newline="") as f:
            sample.to_csv(f)
    estimate = estimate_cm(sample)
    est_triple, residual = standard_form_of(estimate.cm, args.structure_tol)
    boot = bootstrap_steering(
        sample, args.bootstrap, args.seed, structure_tol=args.structure_tol
    )
    report = {
        "scheme": scheme.value,
        "v": v,
        "eta": eta,
        "delta": delta,
        "target": {"alpha": cm.alpha, "beta": cm.beta, "gamma": cm.gamma},
        "estimated": {
            "alpha": est_triple.alpha,
            "beta": est_triple.beta,
            "gamma": est_triple.gamma,
            "max_residual": residual,
        },
        "g_a_to_b": {"mean": boot.g_a_to_b_mean, "std": boot.g_a_to_b_std},
        "g_b_to_a": {"mean": boot.g_b_to_a_mean, "std": boot.g_b_to_a_std},
        "seed": args.seed,
        "n_per_run": args.n,
        "n_bootstrap": args.bootstrap,
        "structure_tol": args.structure_tol,
        "rng": rng_metadata(),
        "backend": kernels.active_backend(),
    }
    if not args.no_timestamp:
        report["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return json.dumps(report, indent=2) + "\n"


def _add_common(parser, with_eta=True, with_delta=True):
    parser.add_argument(
        "--scheme",
        required=True,
        help="pure, 1, 2 or 3 (aliases: noise-on-a, noise-on-b, noisy-channel)",
    )
    parser.add_argument("--v", type=float, default=None, help="TMSS single-mode variance, >= 1")
    if with_eta:
        parser.add_argument("--eta", type=float, default=None, help="channel transmission in [0, 1]")
    if with_delta:
        parser.add_argument("--delta", type=float, default=None, help="noise variance, >= 0 (shot-noise units)")
    parser.add_argument(
        "--paper-defaults",
        action="store_true",
        help="fill omitted --v with 1.251 and omitted --delta with the scheme's canonical value",
    )
    parser.add_argument("--output", default=None, help="write to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steering-lab",
        description="Gaussian steering of a two-mode squeezed state under loss and noise",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="quantifiers and regime at one parameter point")
    _add_common(p)
    p.add_argument("--bits", action="store_true", help="report quantifiers in bits instead of nats")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="quantifiers along an eta sweep at fixed noise")
    _add_common(p, with_eta=False)
    p.add_argument("--eta-from", type=float, default=0.0)
    p.add_argument("--eta-to", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--bits", action="store_true", help="report quantifiers in bits instead of nats")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("regions", help="steering regime over an (eta, delta) grid")
    _add_common(p, with_eta=False, with_delta=False)
    p.add_argument("--grid", type=int, default=200, help="cells per axis")
    p.add_argument("--delta-max", type=float, default=None, help="delta-axis extent (scheme default if omitted)")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_regions)

    p = sub.add_parser("boundary", help="closed-form boundary curves and crossover point")
    _add_common(p, with_eta=False, with_delta=False)
    p.add_argument("--points", type=int, default=512, help="eta samples per curve")
    p.add_argument("--delta-max", type=float, default=None, help="drop curve points above this delta")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("simulate", help="homodyne Monte Carlo with bootstrap error bars")
    _add_common(p)
    p.add_argument("--n", type=int, default=100_000, help="samples per quadrature run")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bootstrap", type=int, default=200, help="bootstrap replicates")
    p.add_argument("--structure-tol", type=float, default=DEFAULT_STRUCTURE_TOL)
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")
    p.add_argument("--samples-csv", default=None, help="also dump raw records to this CSV path")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else 0
    try:
        output = args.func(args)
    except (DomainError, NoBracket, MaxIterations) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (UnphysicalState, NonPositiveMatrix, NumericalFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNPHYSICAL
    except StructureViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STATISTICAL
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as f:
            f.write(output)
    else:
        sys.stdout.write(output)
    return EXIT_OK


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
