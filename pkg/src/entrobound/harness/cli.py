"""Command-line entry point.

Exit status: 0 when every check passes, 1 when any check fails, 2 on
input or validation errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from .. import naimark
from ..entropy import OrderError
from ..linalg import ValidationError
from ..measurement import PureState
from .campaign import CHECKS, CampaignConfig, load_config, run_campaign
from .ensembles import MEASUREMENT_ENSEMBLES, STATE_ENSEMBLES
from .report import ReportRow, RunReport, emit_report
from .scenario import builtin_discrimination_scenario, load_scenario, run_scenario, save_scenario
from .serialize import ScenarioFormatError, encode_matrix

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _int_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("-")
    try:
        return int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO-HI, got {text!r}") from None


def _finish(report: RunReport, fmt: str) -> int:
    sys.stdout.write(emit_report(report, fmt))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    sc = load_scenario(args.scenario)
    return _finish(run_scenario(sc, args.tolerance), args.format)


def cmd_paper_regression(args) -> int:
    sc = builtin_discrimination_scenario()
    if args.dump_scenario:
        save_scenario(sc, args.dump_scenario)
    return _finish(run_scenario(sc), args.format)


def cmd_campaign(args) -> int:
    base = load_config(args.config).to_dict() if args.config else {}
    overrides = {
        "seed": args.seed,
        "trials": args.trials,
        "dims": args.dim,
        "outcomes": args.outcomes,
        "checks": args.checks.split(",") if args.checks else None,
    }
    if args.ensemble in STATE_ENSEMBLES:
        overrides["state_ensemble"] = args.ensemble
    elif args.ensemble:
        overrides["ensemble"] = args.ensemble
    base.update({k: v for k, v in overrides.items() if v is not None})
    env_seed = os.environ.get("ENTROBOUND_SEED")
    if env_seed is not None:
        try:
            base["seed"] = int(env_seed, 0)
        except ValueError:
            raise ScenarioFormatError(f"ENTROBOUND_SEED: not an integer: {env_seed!r}") from None
    return _finish(run_campaign(CampaignConfig.from_dict(base)), args.format)


def cmd_dilate(args) -> int:
    sc = load_scenario(args.scenario)
    for name in filter(None, (args.measurement, args.companion)):
        if name not in sc.measurements:
            raise ScenarioFormatError(f"--measurement: unknown measurement {name!r}")
    e = sc.measurements[args.measurement]
    g = sc.measurements[args.companion] if args.companion else e
    dil = naimark.dilate(e)
    states = [st for st in sc.states.values() if isinstance(st, PureState)]
    rep = naimark.verify_dilation(dil, g, states)
    report = RunReport(
        f"dilation of {args.measurement}",
        meta={
            "measurement": args.measurement,
            "companion": args.companion or args.measurement,
            "dimension": dil.dim,
            "enlarged_dimension": dil.enlarged_dim,
            "projectors": [encode_matrix(p) for p in dil.projectors.elements],
            "norm_gaps": [list(g) for g in rep.norm_gaps],
        },
    )
    for key, val in rep.residuals().items():
        report.rows.append(ReportRow(f"dilation {key}", args.measurement, val, 0.0,
                                     naimark.IDENTITY_TOL, kind="value"))
    if args.format == "human":
        sys.stdout.write(f"enlarged dimension: {dil.enlarged_dim} (from {dil.dim})\n")
        sys.stdout.write(f"max norm gap over pure states: {rep.max_norm_gap:.6g}\n")
    return _finish(report, args.format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entrobound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = {"choices": ("human", "json"), "default": "human"}

    p = sub.add_parser("verify", help="evaluate every check of a scenario file")
    p.add_argument("scenario")
    p.add_argument("--format", **fmt)
    p.add_argument("--tolerance", type=float, help="slack tolerance for inequality rows")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("campaign", help="seeded Monte-Carlo campaign")
    p.add_argument("--seed", type=lambda s: int(s, 0))
    p.add_argument("--trials", type=int)
    p.add_argument("--dim", type=_int_range, help="dimension N or range LO-HI")
    p.add_argument("--outcomes", type=_int_range, help="outcome count N or range LO-HI")
    p.add_argument("--ensemble", choices=sorted({*MEASUREMENT_ENSEMBLES, *STATE_ENSEMBLES}))
    p.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECKS)}")
    p.add_argument("--config", help="JSON campaign config; flags override its fields")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("dilate", help="Naimark-dilate a scenario measurement and verify it")
    p.add_argument("scenario")
    p.add_argument("--measurement", required=True)
    p.add_argument("--companion", help="second measurement to block-extend (default: the same one)")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_dilate)

    p = sub.add_parser("paper-regression", help="run the built-in discrimination regression suite")
    p.add_argument("--format", **fmt)
    p.add_argument("--dump-scenario", metavar="PATH", help="also write the scenario as JSON")
    p.set_defaults(func=cmd_paper_regression)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioFormatError, ValidationError, OrderError, OSError) as exc:
        print(f"entrobound: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TypeError as exc:
        # bad field types in a campaign config
        print(f"entrobound: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
