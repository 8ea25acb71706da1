"""Show the event-sourced side: durable logs, replay equivalence, reports.

A session is run and persisted, then a second supervisor replays the
student events recovered from the log; both decision sequences match
bit for bit, and the final report is derived from the log alone.
"""

import json
import tempfile
from importlib import resources
from pathlib import Path

from preceptor.rules import load_default_rules
from preceptor.scenario import load_bundled_scenarios
from preceptor.store import SessionStore
from preceptor.supervisor import Supervisor, build_report, replay_transcript
from preceptor.types import StudentEvent


def load_events() -> list[StudentEvent]:
    text = (
        resources.files("preceptor")
        .joinpath("assets/transcripts/chest_pain_session.jsonl")
        .read_text(encoding="utf-8")
    )
    return [StudentEvent(**json.loads(line)) for line in text.splitlines() if line.strip()]


def decision_sequence(store: SessionStore, session_id: str) -> list[tuple]:
    return [
        (entry.payload["label"], entry.payload["crisp"], entry.payload["hint"])
        for entry in store.read_log(session_id)
        if entry.kind == "decision"
    ]


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        store = SessionStore(root / "live")
        supervisor = Supervisor(load_bundled_scenarios(), load_default_rules(), store)
        session_id, _ = replay_transcript(supervisor, "chest_pain", load_events())
        live = decision_sequence(store, session_id)
        print(f"live session {session_id[:8]} produced {len(live)} decisions")

        log_path = root / "live" / "sessions" / f"{session_id}.jsonl"
        print(f"log on disk: {log_path.stat().st_size} bytes, one JSON object per line")

        # Recover the student events from the log and replay them elsewhere.
        recovered = [
            StudentEvent(
                target=e.payload["target"],
                text=e.payload["text"],
                action=e.payload["action"],
                ts=e.ts,
            )
            for e in store.read_log(session_id)
            if e.kind == "student_event"
        ]
        replay_store = SessionStore(root / "replay")
        replayer = Supervisor(load_bundled_scenarios(), load_default_rules(), replay_store)
        replay_id, _ = replay_transcript(replayer, "chest_pain", recovered)
        replayed = decision_sequence(replay_store, replay_id)

        print(f"replayed decisions identical: {live == replayed}")

        report = build_report(store, session_id)
        print("report rebuilt purely from the log:")
        for line in report.summary_lines:
            print(f"  {line}")


if __name__ == "__main__":
    main()
