"""``plhyper`` command line.

Exit status: 0 on success, 2 when a checked property is violated, 1 on
operational errors (bad flags, bad config, arithmetic overflow).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from ..fixtures import FIXTURES
from ..rational import DenominatorOverflow, as_q
from .config import ConfigError, RunConfig, load_config
from .report import Report, emit_report
from .runner import DEFAULTS, run_suite
from .suites import SUITES

VERBS = {
    "analyze-sensitivity": "sensitivity",
    "analyze-transitivity": "transitivity",
    "analyze-product": "product",
    "analyze-hyperspace": "hyperspace",
    "analyze-shadowing": "shadowing",
    "lift": "lift",
    "verify-theorems": "verify",
}


def _rational(text: str):
    try:
        return as_q(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pair(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI but got {text!r}")
    return _rational(parts[0]), _rational(parts[1])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plhyper", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixture", choices=sorted(FIXTURES))
    common.add_argument("--config", type=Path, help="TOML run configuration")
    common.add_argument("--horizon", type=int)
    common.add_argument("--delta", type=_rational)
    common.add_argument("--epsilon", type=_rational)
    common.add_argument("--seed", type=int)
    common.add_argument("--trials", type=int)
    common.add_argument("--format", choices=("records", "table"), default="records")
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")

    for verb in VERBS:
        p = sub.add_parser(verb, parents=[common])
        if verb in ("analyze-sensitivity", "analyze-transitivity", "analyze-product"):
            p.add_argument("--v", type=_pair, action="append", metavar="LO,HI", help="open interval (repeatable)")
        if verb in ("analyze-transitivity", "analyze-product"):
            p.add_argument("--u", type=_pair, action="append", metavar="LO,HI")
        if verb == "analyze-product":
            p.add_argument("--second-fixture", choices=sorted(FIXTURES))
        if verb == "analyze-hyperspace":
            p.add_argument("--points", type=_rational, nargs="+", help="center finite set")
        if verb == "analyze-shadowing":
            p.add_argument("--length", type=int, help="pseudo-orbit length m")
        if verb == "lift":
            p.add_argument("--sets", type=str, action="append", metavar="P,Q,...", help="one set per step, in order")
        if verb == "verify-theorems":
            group = p.add_mutually_exclusive_group()
            group.add_argument("--all", action="store_true", help="run every suite (default)")
            group.add_argument("--theorem", action="append", choices=list(SUITES))
    sub.add_parser("list-fixtures", parents=[common])
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    kind = VERBS[args.verb]
    if args.config is not None:
        loaded = load_config(args.config)
        if loaded.analysis != kind:
            raise ConfigError(f"analysis: config says {loaded.analysis!r} but the verb runs {kind!r}")
        fields = dict(loaded.__dict__)
    else:
        fields = {"analysis": kind, **DEFAULTS[kind]}
    over = {
        "fixture": args.fixture,
        "horizon": args.horizon,
        "delta": args.delta,
        "epsilon": args.epsilon,
        "seed": args.seed,
        "trials": args.trials,
        "out": str(args.out) if args.out else None,
    }
    if getattr(args, "v", None):
        over["v"] = tuple(args.v)
    if getattr(args, "u", None):
        over["u"] = tuple(args.u)
    if getattr(args, "second_fixture", None):
        over["second_fixture"] = args.second_fixture
    if getattr(args, "points", None):
        over["points"] = tuple(args.points)
    if getattr(args, "length", None):
        over["length"] = args.length
    if getattr(args, "sets", None):
        over["sets"] = tuple(tuple(_rational(x) for x in s.split(",")) for s in args.sets)
    if getattr(args, "theorem", None):
        over["theorems"] = tuple(args.theorem)
    fields.update((k, v) for k, v in over.items() if v is not None)
    if args.fixture:
        fields["maps"] = ()
    return RunConfig(**fields)


def _fixture_reports() -> list[Report]:
    return [
        Report(
            "fixture",
            {
                "name": f.name,
                "period": f.schedule.period,
                "maps": [m.to_record() for m in f.schedule.maps],
                "description": f.description,
            },
        )
        for f in FIXTURES.values()
    ]


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verb == "list-fixtures":
            reports, out = _fixture_reports(), args.out
        else:
            cfg = _config(args)
            reports, out = run_suite(cfg), Path(cfg.out) if cfg.out else None
        data = emit_report(reports, args.format)
    except (ConfigError, DenominatorOverflow, ValueError, KeyError) as exc:
        print(f"plhyper: error: {exc}", file=sys.stderr)
        return 1
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        out.write_bytes(data)
    return 2 if any(r.violations for r in reports) else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
