"""Command-line entry points: serve, replay, infer, rules check.

``replay`` runs the full pipeline offline over a line-delimited transcript
using the transcript's own timestamps, so two runs over the same file print
byte-identical traces.
"""

from __future__ import annotations

import argparse
import json
import sys
import tempfile
from pathlib import Path

from ..fuzzy.engine import evaluate
from ..fuzzy.variables import DEFAULT_VARIABLES
from ..rules import parse_rules, validate
from ..rules.model import has_errors
from ..supervisor import replay_transcript
from ..types import AGENT_ROLES, CriterionScores, StudentEvent
from .config import GatewayConfig, resolve_config

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data-dir", help="session store directory")
    parser.add_argument("--rules", dest="rules_path", help="rule file (.frl)")
    parser.add_argument("--scenarios", dest="scenarios_dir", help="extra scenario dir")
    parser.add_argument("--classifier-url", help="external classifier base URL")
    parser.add_argument("--config", help="JSON config file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="preceptor",
        description="Fuzzy supervision engine for simulated clinical sessions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP/WebSocket gateway")
    _add_common_flags(serve)
    serve.add_argument("--host", default=None)
    serve.add_argument("--port", type=int, default=None)

    replay = sub.add_parser("replay", help="replay a transcript offline")
    _add_common_flags(replay)
    replay.add_argument("transcript", help="line-delimited student events (JSONL)")
    replay.add_argument("--scenario", required=True, help="scenario id")

    infer = sub.add_parser("infer", help="run one inference over four crisp scores")
    _add_common_flags(infer)
    infer.add_argument("--prof", type=float, required=True)
    infer.add_argument("--rel", type=float, required=True)
    infer.add_argument("--eth", type=float, required=True)
    infer.add_argument("--dist", type=float, required=True)

    rules = sub.add_parser("rules", help="rule-file tooling")
    rules_sub = rules.add_subparsers(dest="rules_command", required=True)
    check = rules_sub.add_parser("check", help="parse and validate a rule file")
    check.add_argument("file", help="rule file to check")

    return parser


def _config_from_args(args: argparse.Namespace, **overrides) -> GatewayConfig:
    flags = {
        name: getattr(args, name, None)
        for name in (
            "data_dir",
            "rules_path",
            "scenarios_dir",
            "classifier_url",
            "host",
            "port",
        )
    }
    flags.update(overrides)
    return resolve_config(flags=flags, config_file=getattr(args, "config", None))


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .app import build_supervisor, create_app

    config = _config_from_args(args)
    app = create_app(build_supervisor(config))
    uvicorn.run(app, host=config.host, port=config.port)
    return EXIT_OK


def read_transcript(path: str | Path) -> list[StudentEvent]:
    """Parse a JSONL transcript; raises ValueError naming the offending line."""
    events: list[StudentEvent] = []
    text = Path(path).read_text(encoding="utf-8")
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            doc = json.loads(line)
            if not isinstance(doc, dict):
                raise ValueError("event must be a JSON object")
            target = doc["target"]
            if target not in AGENT_ROLES:
                raise ValueError(f"unknown agent role {target!r}")
            events.append(
                StudentEvent(
                    target=target,
                    text=str(doc.get("text", "")),
                    action=doc.get("action"),
                    ts=str(doc.get("ts", "")),
                )
            )
        except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
            raise ValueError(f"line {line_no}: {exc}") from exc
    if not events:
        raise ValueError("transcript contains no events")
    return events


def cmd_replay(args: argparse.Namespace) -> int:
    from .app import build_supervisor

    try:
        events = read_transcript(args.transcript)
    except (OSError, ValueError) as exc:
        print(f"transcript error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    with tempfile.TemporaryDirectory(prefix="preceptor-replay-") as tmp:
        config = _config_from_args(args, data_dir=args.data_dir or tmp)
        supervisor = build_supervisor(config)
        if args.scenario not in supervisor.scenarios:
            print(f"unknown scenario {args.scenario!r}", file=sys.stderr)
            return EXIT_USAGE
        session_id, outcomes = replay_transcript(supervisor, args.scenario, events)
        print(f"scenario: {args.scenario}  events: {len(events)}")
        print(
            f"{'#':>3} {'target':<12} {'label':<10} {'crisp':>8}  "
            f"{'prof':>5} {'rel':>5} {'eth':>5} {'dist':>5}  hint"
        )
        for i, outcome in enumerate(outcomes, start=1):
            decision = outcome.supervisor.decision
            scores = outcome.scores
            hint = outcome.supervisor.hint or "-"
            print(
                f"{i:>3} {events[i - 1].target:<12} {decision.label:<10} "
                f"{decision.crisp:>8.6f}  "
                f"{scores.professionalism:>5.2f} {scores.medical_relevance:>5.2f} "
                f"{scores.ethical_behavior:>5.2f} {scores.contextual_distraction:>5.2f}  "
                f"{hint}"
            )
        report = supervisor.finalize_session(session_id)
        for line in report.summary_lines:
            print(f"summary: {line}")
    return EXIT_OK


def cmd_infer(args: argparse.Namespace) -> int:
    from .app import load_rule_base

    values = {"prof": args.prof, "rel": args.rel, "eth": args.eth, "dist": args.dist}
    for name, value in values.items():
        if not 0.0 <= value <= 1.0:
            print(f"--{name} must be in [0, 1], got {value}", file=sys.stderr)
            return EXIT_USAGE
    config = _config_from_args(args)
    rule_base = load_rule_base(config.rules_path)
    scores = CriterionScores(
        professionalism=args.prof,
        medical_relevance=args.rel,
        ethical_behavior=args.eth,
        contextual_distraction=args.dist,
    )
    decision = evaluate(rule_base, scores)
    rules_by_id = {rule.id: rule for rule in rule_base}
    if decision.fired:
        print("fired rules:")
        for rule_id, strength in decision.fired:
            rule = rules_by_id[rule_id]
            print(f"  rule {rule_id}: strength {strength:.6f} -> {rule.consequent_label}")
    else:
        print("fired rules: none")
    print(f"crisp: {decision.crisp:.6f}")
    print(f"label: {decision.label}")
    print(f"intervene: {'yes' if decision.intervene else 'no'}")
    return EXIT_OK


def cmd_rules_check(args: argparse.Namespace) -> int:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    result = parse_rules(text)
    diagnostics = list(result.diagnostics)
    if result.rule_base is not None:
        diagnostics.extend(validate(result.rule_base, DEFAULT_VARIABLES))
    for diagnostic in diagnostics:
        print(diagnostic)
    if result.rule_base is None or has_errors(diagnostics):
        return EXIT_ERROR
    print(
        f"ok: {len(result.rule_base)} rules, "
        f"source hash {result.rule_base.source_hash[:12]}"
    )
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "serve":
        return cmd_serve(args)
    if args.command == "replay":
        return cmd_replay(args)
    if args.command == "infer":
        return cmd_infer(args)
    if args.command == "rules":
        return cmd_rules_check(args)
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
