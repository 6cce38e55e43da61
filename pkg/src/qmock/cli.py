"""Command line front end: ``qmock expand|string|verify|suite``.

Exit codes: 0 pass, 1 mismatch, 2 usage or parse error, 3 evaluation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import ParseError, QMockError, UsageError
from .evaluate import evaluate
from .expr import parse
from .strings import LevelData, StringId, calC, string_coeff_oracle
from .verify import RING_ALIASES, check_texts, find_record, parse_ring, run_identity, run_suite

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_EVAL = 0, 1, 2, 3

CONFIG_KEYS = ("order", "ring", "denom", "jobs", "format")


@dataclass
class CliConfig:
    order: Fraction = Fraction(10)
    ring: str = "rat"
    denom: int | None = None
    jobs: int = 1
    format: str = "text"
    order_given: bool = False  # registry records keep their own default order otherwise

    def validate(self) -> None:
        if self.order <= 0:
            raise UsageError("order must be positive")
        if self.jobs < 1:
            raise UsageError("jobs must be >= 1")
        if self.format not in ("text", "json"):
            raise UsageError("format must be text or json")
        if self.denom is not None and self.denom < 1:
            raise UsageError("denom must be a positive integer")
        parse_ring(self.ring)


def read_config(path: str) -> dict:
    values = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition("=")
        key = key.strip()
        if not sep:
            raise UsageError(f"{path}:{n}: expected key=value")
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{n}: unknown config key {key!r}")
        values[key] = val.strip()
    return values


def build_config(args) -> CliConfig:
    cfg = CliConfig()
    layered = read_config(args.config) if args.config else {}
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            layered[key] = flag
    try:
        if "order" in layered:
            cfg.order = Fraction(str(layered["order"]))
            cfg.order_given = True
        if "ring" in layered:
            cfg.ring = str(layered["ring"])
        if "denom" in layered:
            cfg.denom = int(layered["denom"])
        if "jobs" in layered:
            cfg.jobs = int(layered["jobs"])
        if "format" in layered:
            cfg.format = str(layered["format"])
    except ValueError as exc:
        raise UsageError(f"bad option value: {exc}") from None
    cfg.validate()
    return cfg


def _caret(text: str, exc: ParseError) -> str:
    return f"parse error: {exc.message}\n  {text}\n  {' ' * exc.offset}^"


def _emit_series(series, cfg: CliConfig, out) -> None:
    if cfg.format == "json":
        out.write(json.dumps(series.to_json(cfg.denom), sort_keys=True) + "\n")
    else:
        out.write(series.render(cfg.denom) + "\n")


def cmd_expand(args, cfg: CliConfig, out) -> int:
    try:
        node = parse(args.expr)
    except ParseError as exc:
        print(_caret(args.expr, exc), file=sys.stderr)
        return EXIT_USAGE
    series = evaluate(node, cfg.order, parse_ring(cfg.ring))
    _emit_series(series, cfg, out)
    return EXIT_OK


def cmd_string(args, cfg: CliConfig, out) -> int:
    sid = StringId(LevelData(args.p, args.pprime), args.m, args.ell)
    series = calC(sid, cfg.order) if args.normalized else string_coeff_oracle(sid, cfg.order)
    if cfg.format == "json":
        payload = {"p": sid.level.p, "pprime": sid.level.pprime, "m": sid.m, "ell": sid.ell,
                   "s_norm": str(sid.s_norm), "normalized": bool(args.normalized),
                   "series": series.to_json(cfg.denom)}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        _emit_series(series, cfg, out)
    return EXIT_OK


def _status_code(reports) -> int:
    if any(r.status == "mismatch" for r in reports):
        return EXIT_MISMATCH
    if any(r.status == "error" for r in reports):
        return EXIT_EVAL
    return EXIT_OK


def _write_reports(reports, cfg: CliConfig, args, out) -> None:
    text = json.dumps([r.to_json() for r in reports], indent=1, sort_keys=True) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    if cfg.format == "json":
        out.write(text)
    else:
        for r in reports:
            out.write(r.line() + "\n")


def cmd_verify(args, cfg: CliConfig, out) -> int:
    order = cfg.order if cfg.order_given else None
    if args.name:
        if args.lhs or args.rhs:
            raise UsageError("give either --name or --lhs/--rhs")
        reports = run_identity(find_record(args.name), order)
    else:
        if not (args.lhs and args.rhs):
            raise UsageError("verify needs --name or both --lhs and --rhs")
        for text in (args.lhs, args.rhs):
            try:
                parse(text)
            except ParseError as exc:
                print(_caret(text, exc), file=sys.stderr)
                return EXIT_USAGE
        reports = [check_texts("adhoc", {}, args.lhs, args.rhs, cfg.order, parse_ring(cfg.ring))]
    _write_reports(reports, cfg, args, out)
    return _status_code(reports)


def cmd_suite(args, cfg: CliConfig, out) -> int:
    order = cfg.order if cfg.order_given else None
    suite = run_suite(args.filter, order, cfg.jobs)
    _write_reports(suite.reports, cfg, args, out)
    if cfg.format == "text":
        passed = len(suite.reports) - suite.failures
        out.write(f"{passed}/{len(suite.reports)} passed\n")
    return EXIT_MISMATCH if suite.failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", help="truncation order (rational)")
    common.add_argument("--ring", choices=sorted(RING_ALIASES), help="coefficient field")
    common.add_argument("--denom", type=int, help="render exponents over this denominator")
    common.add_argument("--json", dest="format", action="store_const", const="json", help="JSON output")
    common.add_argument("--config", help="file of key=value defaults; flags win")

    parser = argparse.ArgumentParser(prog="qmock", description="Exact q-series and mock theta identity checker.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="expand an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("string", parents=[common], help="string function C or its normalized form")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--pprime", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--normalized", action="store_true", help="print q^(-s) C, an integer series")
    p.set_defaults(func=cmd_string)

    p = sub.add_parser("verify", parents=[common], help="check one identity")
    p.add_argument("--name")
    p.add_argument("--lhs")
    p.add_argument("--rhs")
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("suite", parents=[common], help="check all registry identities matching a pattern")
    p.add_argument("--filter", default="*", help="glob on identity names")
    p.add_argument("--jobs", type=int)
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = build_config(args)
        return args.func(args, cfg, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QMockError as exc:
        print(f"evaluation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_EVAL


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
