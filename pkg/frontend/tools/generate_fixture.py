"""Regenerate tests/fixtures/chest_pain_frames.json from the live pipeline.

Runs the bundled chest-pain walkthrough through the supervising engine and
dumps the exact stream frames a WebSocket subscriber would receive. Run from
the frontend directory:

    python tools/generate_fixture.py
"""

import json
import tempfile
from importlib import resources
from pathlib import Path

from preceptor.gateway.app import STREAM_KINDS
from preceptor.rules import load_default_rules
from preceptor.scenario import load_bundled_scenarios
from preceptor.store import SessionStore
from preceptor.supervisor import Supervisor, replay_transcript
from preceptor.types import StudentEvent

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "chest_pain_frames.json"


def main() -> None:
    text = (
        resources.files("preceptor")
        .joinpath("assets/transcripts/chest_pain_session.jsonl")
        .read_text(encoding="utf-8")
    )
    events = [StudentEvent(**json.loads(line)) for line in text.splitlines() if line.strip()]

    with tempfile.TemporaryDirectory() as tmp:
        supervisor = Supervisor(
            load_bundled_scenarios(), load_default_rules(), SessionStore(tmp)
        )
        session_id, _ = replay_transcript(supervisor, "chest_pain", events)
        supervisor.finalize_session(session_id)
        frames = [
            {
                "kind": STREAM_KINDS[entry.kind],
                "seq": entry.seq,
                "ts": entry.ts,
                "payload": entry.payload,
            }
            for entry in supervisor.store.read_log(session_id)
            if entry.kind in STREAM_KINDS
        ]

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(frames, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {len(frames)} frames to {OUT}")


if __name__ == "__main__":
    main()
