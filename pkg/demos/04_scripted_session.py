"""Play a whole supervised session: agents, scoring, inference, hints.

Runs the bundled chest-pain walkthrough, printing the dialogue alongside
the supervisor's view of every turn. Two hints fire: one for drifting
questions, one for the unconsented intervention.
"""

import json
import tempfile
from importlib import resources

from preceptor.rules import load_default_rules
from preceptor.scenario import load_bundled_scenarios
from preceptor.store import SessionStore
from preceptor.supervisor import Supervisor
from preceptor.types import StudentEvent


def load_events() -> list[StudentEvent]:
    text = (
        resources.files("preceptor")
        .joinpath("assets/transcripts/chest_pain_session.jsonl")
        .read_text(encoding="utf-8")
    )
    return [StudentEvent(**json.loads(line)) for line in text.splitlines() if line.strip()]


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        supervisor = Supervisor(
            load_bundled_scenarios(), load_default_rules(), SessionStore(tmp)
        )
        session_id = supervisor.create_session("chest_pain")
        for event in load_events():
            shown = event.text or f"[{event.action}]"
            print(f"student -> {event.target}: {shown}")
            outcome = supervisor.handle_event(session_id, event)
            print(f"{outcome.reply.agent} replies: {outcome.reply.text}")
            decision = outcome.supervisor.decision
            print(
                f"  supervisor: {decision.label} (crisp {decision.crisp:.3f}), "
                f"scores {outcome.scores.as_dict()}"
            )
            if outcome.supervisor.hint:
                print(f"  HINT: {outcome.supervisor.hint}")
            print()

        report = supervisor.finalize_session(session_id)
        print("final report")
        for line in report.summary_lines:
            print(f"  {line}")
        for criterion, histogram in report.label_histograms.items():
            print(f"  {criterion}: {histogram}")


if __name__ == "__main__":
    main()
