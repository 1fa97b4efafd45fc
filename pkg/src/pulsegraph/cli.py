"""Command line front end: JSON in, pipeline, backend out.

    pulsegraph render   doc.json --rate 1e9 [--t0 0] [--out samples.csv]
    pulsegraph compile  doc.json --target dds|samples [--rate R] [--out out.json]
    pulsegraph dot      doc.json [--out graph.dot]
    pulsegraph validate doc.json [--bind t_gap=1e-6]

Common flags: ``--bind k=v`` (repeatable), ``--passes a,b,c`` and
``--dot <path>`` to also write the compiled graph as DOT. A schedule input
yields one artifact per channel; with ``--out x.csv`` they are written to
``x_<label>_<id>.csv``. Exit status is 0 on success, 1 when compilation
fails and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import PipelineError, PulseGraphError, ScheduleViolation, SchemaError, format_path
from .nodes import Node
from .passes import ExpandModulated, Fold, Pipeline, Simplify, Substitute, Unbind, Validate
from .schedule import Schedule
from .serialize import SCHEMA_VERSION, load_document
from .targets import emit_samples, munch_dds, segments_to_json, to_csv, to_dot

DEFAULT_PASSES = ("substitute", "fold", "simplify", "validate")
DOT_PASSES = ("substitute", "fold", "simplify")


class UsageError(Exception):
    pass


def _parse_bindings(items) -> dict[str, float]:
    out = {}
    for item in items or ():
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise UsageError(f"--bind expects key=value, got {item!r}")
        try:
            out[key] = float(raw)
        except ValueError:
            raise UsageError(f"--bind {key}: {raw!r} is not a number") from None
    return out


def _make_pass(name: str, bindings: dict):
    factories = {
        "substitute": lambda: Substitute(bindings),
        "unbind": lambda: Unbind(bindings),
        "fold": Fold,
        "simplify": Simplify,
        "expand": ExpandModulated,
        "validate": Validate,
    }
    if name not in factories:
        raise UsageError(f"unknown pass {name!r}; choose from {', '.join(factories)}")
    return factories[name]()


def build_pipeline(csv_names: str | None, bindings: dict, default=DEFAULT_PASSES) -> Pipeline:
    names = default if csv_names is None else [n.strip() for n in csv_names.split(",") if n.strip()]
    return Pipeline(_make_pass(n, bindings) for n in names)


def _describe_channel(ch) -> str:
    return f"{ch.label} (id {ch.id})"


def _diagnostic(err: PulseGraphError) -> list[str]:
    if not isinstance(err, PipelineError):
        return [f"error: {err}"]
    where = f"pass {err.pass_index} ({err.pass_name})"
    if err.channel is not None:
        where += f", channel {_describe_channel(err.channel)}"
    cause = err.cause
    lines = [f"error: {where}: {cause}"]
    if isinstance(cause, ScheduleViolation):
        for v in cause.violations:
            lines.append(
                f"  violation: {v.node.kind} at {format_path(v.path)} has duration {v.duration:.12g}"
            )
    return lines


def _artifact(command: str, args, graph: Node) -> str:
    if command == "dot":
        return to_dot(graph)
    if command == "validate":
        return "ok\n"
    target = "samples" if command == "render" else args.target
    if target == "samples":
        return to_csv(emit_samples(graph, args.rate, args.t0))
    return json.dumps(segments_to_json(munch_dds(graph, args.t0)), indent=2) + "\n"


def _channel_path(out: Path, ch) -> Path:
    return out.with_name(f"{out.stem}_{ch.label}_{ch.id}{out.suffix}")


def _write(path: Path | None, text: str, stdout) -> None:
    if path is None:
        stdout.write(text)
    else:
        path.write_text(text)


def _check_args(args) -> None:
    if args.command == "render" or (args.command == "compile" and args.target == "samples"):
        if args.rate is None or not args.rate > 0:
            raise UsageError(f"{args.command} requires --rate > 0")
    if args.command == "compile" and args.target is None:
        raise UsageError("compile requires --target samples|dds")


def run(args, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        _check_args(args)
        bindings = _parse_bindings(args.bind)
        default = DOT_PASSES if args.command == "dot" else DEFAULT_PASSES
        pipeline = build_pipeline(args.passes, bindings, default)
        doc = load_document(Path(args.input).read_text())
    except (UsageError, SchemaError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2

    out = Path(args.out) if args.out else None
    dot = Path(args.dot) if args.dot else None
    try:
        if isinstance(doc, Schedule):
            results = pipeline.run(doc)
            for ch, res in results.items():
                text = _artifact(args.command, args, res.graph)
                if out is None:
                    stdout.write(f"# channel {ch.label} {ch.id}\n")
                _write(_channel_path(out, ch) if out else None, text, stdout)
                if dot is not None:
                    _channel_path(dot, ch).write_text(to_dot(res.graph))
        else:
            res = pipeline.run(doc)
            _write(out, _artifact(args.command, args, res.graph), stdout)
            if dot is not None:
                dot.write_text(to_dot(res.graph))
    except PulseGraphError as exc:
        for line in _diagnostic(exc):
            print(line, file=stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    return 0


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="JSON graph or schedule document")
    common.add_argument("--rate", type=float, help="sample rate in Hz")
    common.add_argument("--t0", type=float, default=0.0, help="start time in seconds")
    common.add_argument("--bind", action="append", metavar="K=V", help="bind a variable (repeatable)")
    common.add_argument("--passes", metavar="A,B,C", help="comma separated pass list")
    common.add_argument("--target", choices=("samples", "dds"))
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    common.add_argument("--dot", metavar="PATH", help="also write the compiled graph as DOT")

    parser = argparse.ArgumentParser(prog="pulsegraph", description="Compile pulse graphs and schedules.")
    parser.add_argument(
        "--version", action="version",
        version=f"pulsegraph {__version__} (schema {SCHEMA_VERSION})",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("render", parents=[common], help="sample a waveform to CSV")
    sub.add_parser("compile", parents=[common], help="lower to a backend")
    sub.add_parser("dot", parents=[common], help="export the graph as DOT")
    sub.add_parser("validate", parents=[common], help="check for negative durations")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
