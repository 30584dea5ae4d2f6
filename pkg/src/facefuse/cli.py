"""Command-line entry points: replay, generate, inspect, serve.

Exit codes: 0 success, 1 trace parse/validation error, 2 bad config or
scenario arguments.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, SessionConfig, load_config
from .gateway import serve
from .model import ValidationError
from .replay import inspect_lines, replay as run_replay
from .scenarios import ScenarioError, generate, scenario_names
from .trace import ParseError, parse, render, validate_trace

EXIT_OK = 0
EXIT_TRACE = 1
EXIT_CONFIG = 2


def _load_session(path: str | None) -> SessionConfig:
    return load_config(path)


def _read_trace(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read trace {path}: {exc}", 0) from exc
    trace = parse(text)
    for warning in validate_trace(trace):
        print(f"warning: {warning}", file=sys.stderr)
    return trace


def _write_out(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _cmd_replay(args) -> int:
    try:
        config = _load_session(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        trace = _read_trace(args.trace)
    except ParseError as exc:
        print(f"trace error: {exc}", file=sys.stderr)
        return EXIT_TRACE
    log = run_replay(trace, config)
    _write_out(args.out, log)
    return EXIT_OK


def _cmd_generate(args) -> int:
    params: dict = {}
    for item in args.param or []:
        if "=" not in item:
            print(f"bad --param {item!r}, expected key=value", file=sys.stderr)
            return EXIT_CONFIG
        key, value = item.split("=", 1)
        try:
            params[key] = float(value)
        except ValueError:
            params[key] = value
    try:
        trace = generate(args.scenario, params, args.seed)
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    _write_out(args.out, render(trace))
    return EXIT_OK


def _cmd_inspect(args) -> int:
    try:
        config = _load_session(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        trace = _read_trace(args.trace)
    except ParseError as exc:
        print(f"trace error: {exc}", file=sys.stderr)
        return EXIT_TRACE
    for line in inspect_lines(trace, config):
        print(line)
    return EXIT_OK


def _cmd_serve(args) -> int:
    try:
        config = _load_session(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        serve(config, args.host, args.port, args.ws_port)
    except KeyboardInterrupt:
        pass
    except OSError as exc:
        print(f"serve error: {exc}", file=sys.stderr)
        return EXIT_TRACE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="facefuse",
        description="Deterministic face+touch+motion gesture fusion engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("replay", help="replay a trace file to an event log")
    p.add_argument("--trace", required=True)
    p.add_argument("--config", default=None, help="session config JSON (or $FACEFUSE_CONFIG)")
    p.add_argument("--out", default=None, help="output path, '-' or omitted for stdout")
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("generate", help="generate a synthetic scenario trace")
    p.add_argument("--scenario", required=True, help=f"one of: {', '.join(scenario_names())}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("inspect", help="print a per-tick fused state dump")
    p.add_argument("--trace", required=True)
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_inspect)

    p = sub.add_parser("serve", help="run the local streaming gateway")
    p.add_argument("--port", type=int, default=7710)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ws-port", type=int, default=None, help="optional WebSocket mirror port")
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_TRACE


if __name__ == "__main__":
    sys.exit(main())
