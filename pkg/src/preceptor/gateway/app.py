"""HTTP and WebSocket API over the supervisor pipeline.

Endpoints::

    GET  /scenarios
    POST /sessions                       {"scenario_id": ...}
    POST /sessions/{id}/messages         {"target", "text"|"action", "ts"?}
    POST /sessions/{id}/close
    GET  /sessions/{id}/report
    GET  /sessions/{id}/log?from_seq=N
    WS   /sessions/{id}/stream?from_seq=N

Stream frames mirror store entries ({kind, seq, payload}); the scores entry
is streamed as kind "metrics". Each message is processed synchronously, so
the HTTP response already carries the agent reply, scores, and decision; the
same material is broadcast to stream subscribers.
"""

from __future__ import annotations

import asyncio
import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, WebSocket, WebSocketDisconnect
from pydantic import BaseModel

from ..rules import load_default_rules, parse_rules, validate
from ..fuzzy.variables import DEFAULT_VARIABLES
from ..rules.model import has_errors
from ..scenario import load_bundled_scenarios, load_scenario_file
from ..scoring.classifier import ClassifierConfig, ExternalClassifier
from ..store import (
    LogEntry,
    SessionClosedError,
    SessionStore,
    StoreError,
    UnknownSessionError,
)
from ..supervisor import (
    SessionNotActiveError,
    Supervisor,
    SupervisorError,
    TimestampError,
)
from ..scenario.agents import RoutingError
from ..types import AGENT_ROLES, StudentEvent
from .config import GatewayConfig

MAX_TEXT_BYTES = 8192

STREAM_KINDS = {
    "agent_reply": "agent_reply",
    "scores": "metrics",
    "decision": "decision",
    "report": "report",
}


class CreateSessionBody(BaseModel):
    scenario_id: str


class MessageBody(BaseModel):
    target: str
    text: str = ""
    action: str | None = None
    ts: str | None = None


class StreamHub:
    """Fan-out of stream frames to per-session subscriber queues.

    publish() is called from worker threads; frames hop onto each
    subscriber's event loop via call_soon_threadsafe.
    """

    def __init__(self) -> None:
        self._subscribers: dict[str, list[tuple[asyncio.Queue, asyncio.AbstractEventLoop]]] = {}
        self._lock = threading.Lock()

    def subscribe(self, session_id: str) -> asyncio.Queue:
        queue: asyncio.Queue = asyncio.Queue()
        loop = asyncio.get_running_loop()
        with self._lock:
            self._subscribers.setdefault(session_id, []).append((queue, loop))
        return queue

    def unsubscribe(self, session_id: str, queue: asyncio.Queue) -> None:
        with self._lock:
            subs = self._subscribers.get(session_id, [])
            self._subscribers[session_id] = [(q, l) for q, l in subs if q is not queue]

    def publish(self, session_id: str, frames: list[dict]) -> None:
        with self._lock:
            subs = list(self._subscribers.get(session_id, []))
        for queue, loop in subs:
            for frame in frames:
                loop.call_soon_threadsafe(queue.put_nowait, frame)


def _frame(entry: LogEntry) -> dict | None:
    kind = STREAM_KINDS.get(entry.kind)
    if kind is None:
        return None
    return {"kind": kind, "seq": entry.seq, "ts": entry.ts, "payload": entry.payload}


def load_rule_base(rules_path: str | None):
    """Load and validate the configured rule file, or the bundled default."""
    if rules_path:
        result = parse_rules(Path(rules_path).read_text(encoding="utf-8"))
        if result.rule_base is None:
            raise ValueError(
                "rule file has errors: "
                + "; ".join(str(d) for d in result.diagnostics)
            )
        rule_base = result.rule_base
    else:
        rule_base = load_default_rules()
    diagnostics = validate(rule_base, DEFAULT_VARIABLES)
    if has_errors(diagnostics):
        raise ValueError(
            "rule base failed validation: " + "; ".join(str(d) for d in diagnostics)
        )
    return rule_base


def build_supervisor(config: GatewayConfig) -> Supervisor:
    """Assemble a supervisor from configuration: rules, scenarios, store, client."""
    rule_base = load_rule_base(config.rules_path)

    scenarios = load_bundled_scenarios()
    if config.scenarios_dir:
        for path in sorted(Path(config.scenarios_dir).glob("*.json")):
            scenario = load_scenario_file(path)
            scenarios[scenario.id] = scenario

    classifier = None
    if config.classifier_url:
        classifier = ExternalClassifier(
            ClassifierConfig(
                url=config.classifier_url,
                timeout_ms=config.classifier_timeout_ms,
                breaker_threshold=config.classifier_breaker_threshold,
                cooldown_s=config.classifier_cooldown_s,
            )
        )

    return Supervisor(
        scenarios,
        rule_base,
        SessionStore(config.data_dir),
        classifier=classifier,
        hint_cooldown_s=config.hint_cooldown_s,
    )


def create_app(supervisor: Supervisor) -> FastAPI:
    app = FastAPI(title="preceptor gateway")
    hub = StreamHub()
    app.state.supervisor = supervisor
    app.state.hub = hub

    @app.get("/scenarios")
    def list_scenarios() -> list[dict]:
        return [
            {
                "id": scenario.id,
                "title": scenario.title,
                "chief_complaint": scenario.chief_complaint,
            }
            for scenario in supervisor.scenarios.values()
        ]

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody) -> dict:
        try:
            session_id = supervisor.create_session(body.scenario_id)
        except KeyError:
            raise HTTPException(404, f"unknown scenario {body.scenario_id!r}")
        return {"session_id": session_id, "scenario_id": body.scenario_id}

    @app.post("/sessions/{session_id}/messages")
    def post_message(session_id: str, body: MessageBody) -> dict:
        if body.target not in AGENT_ROLES:
            raise HTTPException(422, f"unknown agent role {body.target!r}")
        if len(body.text.encode("utf-8")) > MAX_TEXT_BYTES:
            raise HTTPException(413, "text exceeds 8 KiB")
        event = StudentEvent(
            target=body.target, text=body.text, action=body.action, ts=body.ts or ""
        )
        try:
            outcome = supervisor.handle_event(session_id, event)
        except UnknownSessionError:
            raise HTTPException(404, f"unknown session {session_id!r}")
        except (SessionNotActiveError, SessionClosedError) as exc:
            raise HTTPException(409, str(exc))
        except TimestampError as exc:
            raise HTTPException(422, str(exc))
        except RoutingError as exc:
            raise HTTPException(422, str(exc))

        produced = {outcome.reply_seq, outcome.scores_seq, outcome.decision_seq}
        entries = supervisor.store.read_log(session_id)
        new_frames = [
            frame
            for entry in entries
            if entry.seq in produced
            for frame in [_frame(entry)]
            if frame is not None
        ]
        hub.publish(session_id, new_frames)

        decision = outcome.supervisor.decision
        return {
            "event_seq": outcome.event_seq,
            "reply": {
                "seq": outcome.reply_seq,
                "agent": outcome.reply.agent,
                "text": outcome.reply.text,
                "effects": list(outcome.reply.effects),
                "payload": outcome.reply.payload,
            },
            "scores": {
                "seq": outcome.scores_seq,
                "values": outcome.scores.as_dict(),
                "provenance": outcome.scores.provenance,
            },
            "decision": {
                "seq": outcome.decision_seq,
                "crisp": decision.crisp,
                "label": decision.label,
                "intervene": decision.intervene,
                "fired_rules": [list(pair) for pair in decision.fired],
                "deficient_criterion": outcome.supervisor.deficient_criterion,
                "hint": outcome.supervisor.hint,
            },
        }

    @app.post("/sessions/{session_id}/close")
    def close_session(session_id: str) -> dict:
        try:
            report = supervisor.finalize_session(session_id)
        except UnknownSessionError:
            raise HTTPException(404, f"unknown session {session_id!r}")
        except (SessionNotActiveError, SessionClosedError) as exc:
            raise HTTPException(409, str(exc))
        except SupervisorError as exc:
            raise HTTPException(422, str(exc))
        entries = supervisor.store.read_log(session_id)
        report_frames = [
            frame
            for entry in entries
            if entry.kind == "report"
            for frame in [_frame(entry)]
            if frame is not None
        ]
        hub.publish(session_id, report_frames)
        return report.as_dict()

    @app.get("/sessions/{session_id}/report")
    def get_report(session_id: str) -> dict:
        try:
            report = supervisor.get_report(session_id)
        except UnknownSessionError:
            raise HTTPException(404, f"unknown session {session_id!r}")
        if report is None:
            raise HTTPException(409, f"session {session_id} is not finalized")
        return report.as_dict()

    @app.get("/sessions/{session_id}/log")
    def get_log(session_id: str, from_seq: int = Query(1, ge=1)) -> dict:
        try:
            entries = supervisor.store.read_log(session_id)
        except UnknownSessionError:
            raise HTTPException(404, f"unknown session {session_id!r}")
        except StoreError as exc:
            raise HTTPException(500, str(exc))
        return {
            "session_id": session_id,
            "entries": [e.as_dict() for e in entries if e.seq >= from_seq],
        }

    @app.websocket("/sessions/{session_id}/stream")
    async def stream(websocket: WebSocket, session_id: str) -> None:
        try:
            supervisor.store.get_record(session_id)
        except UnknownSessionError:
            await websocket.close(code=4404)
            return
        await websocket.accept()
        from_seq = int(websocket.query_params.get("from_seq", 1))
        queue = hub.subscribe(session_id)
        cursor = from_seq - 1
        recv_task: asyncio.Task | None = None
        frame_task: asyncio.Task | None = None
        try:
            backfill = await asyncio.to_thread(supervisor.store.read_log, session_id)
            for entry in backfill:
                if entry.seq <= cursor:
                    continue
                frame = _frame(entry)
                if frame is not None:
                    await websocket.send_json(frame)
                cursor = max(cursor, entry.seq)
            recv_task = asyncio.create_task(websocket.receive())
            while True:
                if frame_task is None:
                    frame_task = asyncio.create_task(queue.get())
                done, _ = await asyncio.wait(
                    {frame_task, recv_task}, return_when=asyncio.FIRST_COMPLETED
                )
                if recv_task in done:
                    message = recv_task.result()
                    if message["type"] == "websocket.disconnect":
                        break
                    recv_task = asyncio.create_task(websocket.receive())
                if frame_task in done:
                    frame = frame_task.result()
                    frame_task = None
                    if frame["seq"] > cursor:
                        await websocket.send_json(frame)
                        cursor = frame["seq"]
        except WebSocketDisconnect:
            pass
        finally:
            for task in (recv_task, frame_task):
                if task is not None:
                    task.cancel()
            hub.unsubscribe(session_id, queue)

    return app


def create_app_from_config(config: GatewayConfig | None = None) -> FastAPI:
    return create_app(build_supervisor(config or GatewayConfig()))
