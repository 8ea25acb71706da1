"""The supervising agent: per-event pipeline, temporal metrics, hints, reports.

For every student event the supervisor scores the four criteria, routes the
event to its clinical agent, updates session metrics, runs fuzzy inference,
and persists the whole exchange. Supervision is advisory: the agent reply is
always delivered, and a hint rides along only when the assistance level
reaches High or above. The final report is derived purely from the persisted
log, so replaying a session reproduces it exactly.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .fuzzy.engine import AssistanceDecision, evaluate
from .fuzzy.variables import ASSISTANCE, CRITERION_VARIABLES, INTERVENE_LABELS
from .rules.model import RuleBase
from .scenario.agents import AgentReply, AgentState, RoutingError, route
from .scenario.model import ScenarioDefinition
from .scoring.classifier import ExternalClassifier
from .scoring.heuristics import (
    DEFAULT_WINDOW_SIZE,
    OFF_TASK_THRESHOLD,
    RelevanceWindow,
    ScoringContext,
    score_event,
)
from .store import SessionRecord, SessionStore
from .types import AGENT_ROLES, CRITERIA, CriterionScores, StudentEvent

HINT_BANDS = ("High", "Very High", "Highest")

# Ties on the weakest criterion resolve by this order: patient safety first.
CRITERION_PRIORITY = (
    "ethical_behavior",
    "professionalism",
    "medical_relevance",
    "contextual_distraction",
)

DEFAULT_HINTS: dict[tuple[str, str], str] = {
    ("medical_relevance", "High"): (
        "Consider focusing your questions on the patient's chief complaint."
    ),
    ("medical_relevance", "Very High"): (
        "Your questioning has drifted away from the case. Return to the presenting problem."
    ),
    ("medical_relevance", "Highest"): (
        "Stop and reorient: ask about the presenting complaint before anything else."
    ),
    ("ethical_behavior", "High"): (
        "Pause and consider the ethical implications of your last action."
    ),
    ("ethical_behavior", "Very High"): (
        "Before proceeding, ensure you have explained the procedure and obtained the patient's consent."
    ),
    ("ethical_behavior", "Highest"): (
        "Stop: this action could endanger the patient. Reassess safety and consent immediately."
    ),
    ("professionalism", "High"): (
        "Keep your tone professional and respectful toward the patient."
    ),
    ("professionalism", "Very High"): (
        "That phrasing risks the patient's trust. Rephrase respectfully."
    ),
    ("professionalism", "Highest"): (
        "This conduct is unacceptable in a clinical encounter. Reset your approach."
    ),
    ("contextual_distraction", "High"): (
        "Stay with the current line of inquiry rather than switching topics."
    ),
    ("contextual_distraction", "Very High"): (
        "Repeated off-topic questions are derailing the encounter. Refocus on the case."
    ),
    ("contextual_distraction", "Highest"): (
        "The conversation has lost its clinical thread entirely. Return to the case now."
    ),
}


class SupervisorError(Exception):
    pass


class SessionNotActiveError(SupervisorError):
    pass


class TimestampError(SupervisorError):
    """Event timestamps must be non-decreasing within a session."""


def parse_ts(ts: str) -> datetime:
    value = datetime.fromisoformat(ts.replace("Z", "+00:00"))
    if value.tzinfo is None:
        value = value.replace(tzinfo=timezone.utc)
    return value


def now_ts() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass
class SessionMetrics:
    """Running per-session statistics fed by each scored event."""

    event_count: int = 0
    elapsed: list[float] = field(default_factory=list)
    off_task_count: int = 0
    interventions: dict[str, int] = field(default_factory=dict)
    criterion_sums: dict[str, float] = field(default_factory=lambda: {c: 0.0 for c in CRITERIA})
    criterion_mins: dict[str, float] = field(default_factory=lambda: {c: 1.0 for c in CRITERIA})
    last_ts: str | None = None

    def update(self, ts: str, scores: CriterionScores) -> None:
        if self.last_ts is not None:
            delta = (parse_ts(ts) - parse_ts(self.last_ts)).total_seconds()
            if delta < 0:
                raise TimestampError(
                    f"event timestamp {ts} precedes previous event {self.last_ts}"
                )
            self.elapsed.append(delta)
        self.last_ts = ts
        self.event_count += 1
        if scores.medical_relevance < OFF_TASK_THRESHOLD:
            self.off_task_count += 1
        for criterion in CRITERIA:
            value = getattr(scores, criterion)
            self.criterion_sums[criterion] += value
            self.criterion_mins[criterion] = min(self.criterion_mins[criterion], value)

    def record_intervention(self, label: str) -> None:
        self.interventions[label] = self.interventions.get(label, 0) + 1

    def means(self) -> dict[str, float]:
        if self.event_count == 0:
            return {c: 0.0 for c in CRITERIA}
        return {c: self.criterion_sums[c] / self.event_count for c in CRITERIA}

    def snapshot(self) -> dict:
        return {
            "event_count": self.event_count,
            "elapsed_s": list(self.elapsed),
            "off_task_count": self.off_task_count,
            "interventions": dict(self.interventions),
            "criterion_means": self.means(),
            "criterion_mins": dict(self.criterion_mins),
        }


@dataclass(frozen=True)
class SupervisorDecision:
    decision: AssistanceDecision
    deficient_criterion: str
    hint: str | None
    ts: str


@dataclass(frozen=True)
class FinalReport:
    session_id: str
    scenario_id: str
    metrics: dict
    timeline: tuple[dict, ...]
    label_histograms: dict[str, dict[str, int]]
    summary_lines: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "scenario_id": self.scenario_id,
            "metrics": self.metrics,
            "timeline": list(self.timeline),
            "label_histograms": {c: dict(h) for c, h in self.label_histograms.items()},
            "summary_lines": list(self.summary_lines),
        }


@dataclass(frozen=True)
class EventOutcome:
    """Everything one pipeline pass produced, with store sequence numbers."""

    reply: AgentReply
    scores: CriterionScores
    supervisor: SupervisorDecision
    event_seq: int
    reply_seq: int
    scores_seq: int
    decision_seq: int


def deficient_criterion(scores: CriterionScores) -> str:
    """The argmin-score criterion; ties resolve by CRITERION_PRIORITY."""
    lowest = min(getattr(scores, c) for c in CRITERIA)
    for criterion in CRITERION_PRIORITY:
        if getattr(scores, criterion) == lowest:
            return criterion
    raise AssertionError("unreachable")


def select_hint(
    decision: AssistanceDecision,
    scores: CriterionScores,
    scenario: ScenarioDefinition,
) -> tuple[str, str]:
    """Hint for an intervening decision: scenario override, then default."""
    if not decision.intervene:
        raise ValueError("select_hint requires an intervening decision")
    criterion = deficient_criterion(scores)
    band = decision.label
    override = scenario.hint_override(criterion, band)
    return criterion, override if override is not None else DEFAULT_HINTS[(criterion, band)]


@dataclass
class _LiveSession:
    record: SessionRecord
    scenario: ScenarioDefinition
    agent_state: AgentState = field(default_factory=AgentState)
    metrics: SessionMetrics = field(default_factory=SessionMetrics)
    window: RelevanceWindow = field(default_factory=lambda: RelevanceWindow(DEFAULT_WINDOW_SIZE))
    recent_texts: list[str] = field(default_factory=list)
    last_hint: tuple[str, str] | None = None  # (ts, text)
    lock: threading.Lock = field(default_factory=threading.Lock)


class Supervisor:
    """Session orchestrator; one logical writer per session, many sessions."""

    def __init__(
        self,
        scenarios: dict[str, ScenarioDefinition],
        rule_base: RuleBase,
        store: SessionStore,
        *,
        classifier: ExternalClassifier | None = None,
        hint_cooldown_s: float | None = None,
        window_size: int = DEFAULT_WINDOW_SIZE,
    ):
        self.scenarios = scenarios
        self.rule_base = rule_base
        self.store = store
        self.classifier = classifier
        self.hint_cooldown_s = hint_cooldown_s
        self.window_size = window_size
        self._sessions: dict[str, _LiveSession] = {}
        self._registry_lock = threading.Lock()

    # -- session lifecycle ----------------------------------------------------

    def create_session(self, scenario_id: str, ts: str | None = None) -> str:
        scenario = self.scenarios.get(scenario_id)
        if scenario is None:
            raise KeyError(f"unknown scenario {scenario_id!r}")
        record = self.store.create_session(scenario_id, ts or now_ts())
        with self._registry_lock:
            self._sessions[record.session_id] = _LiveSession(
                record=record,
                scenario=scenario,
                window=RelevanceWindow(self.window_size),
            )
        return record.session_id

    def _session(self, session_id: str) -> _LiveSession:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            record = self.store.get_record(session_id)  # raises if unknown
            raise SessionNotActiveError(
                f"session {session_id} is {record.status} and not active in this process"
            )
        return session

    # -- the per-event pipeline -------------------------------------------------

    def handle_event(self, session_id: str, event: StudentEvent) -> EventOutcome:
        session = self._session(session_id)
        if session.record.status == "closed":
            raise SessionNotActiveError(f"session {session_id} is closed")
        if event.target not in AGENT_ROLES:
            raise RoutingError(f"unknown agent role {event.target!r}")
        ts = event.ts or now_ts()
        event = StudentEvent(event.target, event.text, event.action, ts)

        with session.lock:
            if session.metrics.last_ts is not None:
                if (parse_ts(ts) - parse_ts(session.metrics.last_ts)).total_seconds() < 0:
                    raise TimestampError(
                        f"event timestamp {ts} precedes previous event {session.metrics.last_ts}"
                    )
            elapsed = (
                0.0
                if session.metrics.last_ts is None
                else (parse_ts(ts) - parse_ts(session.metrics.last_ts)).total_seconds()
            )
            ctx = ScoringContext(
                topic_keywords=session.scenario.topic_keywords,
                window=session.window.snapshot(),
                flags=frozenset(session.agent_state.flags),
                elapsed_s=elapsed,
                window_size=self.window_size,
            )
            scores = score_event(
                event,
                ctx,
                session.scenario,
                classifier=self.classifier,
                session_id=session_id,
                context_excerpt=tuple(session.recent_texts[-3:]),
            )
            reply = route(event.target, event, session.scenario, session.agent_state)
            session.metrics.update(ts, scores)
            decision = evaluate(self.rule_base, scores)

            hint: str | None = None
            criterion = deficient_criterion(scores)
            if decision.intervene:
                session.metrics.record_intervention(decision.label)
                criterion, hint = select_hint(decision, scores, session.scenario)
                if hint is not None and self._hint_suppressed(session, ts, hint):
                    hint = None
                else:
                    session.last_hint = (ts, hint)

            supervisor_decision = SupervisorDecision(
                decision=decision, deficient_criterion=criterion, hint=hint, ts=ts
            )
            event_seq, reply_seq, scores_seq, decision_seq = self._persist(
                session_id, event, reply, scores, session.metrics, supervisor_decision
            )
            session.window.push(scores.medical_relevance)
            if event.text:
                session.recent_texts.append(event.text)
                del session.recent_texts[:-10]

        return EventOutcome(
            reply=reply,
            scores=scores,
            supervisor=supervisor_decision,
            event_seq=event_seq,
            reply_seq=reply_seq,
            scores_seq=scores_seq,
            decision_seq=decision_seq,
        )

    def _hint_suppressed(self, session: _LiveSession, ts: str, hint: str) -> bool:
        """Optional cool-down on repeated identical hints; off by default."""
        if self.hint_cooldown_s is None or session.last_hint is None:
            return False
        last_ts, last_text = session.last_hint
        if last_text != hint:
            return False
        return (parse_ts(ts) - parse_ts(last_ts)).total_seconds() < self.hint_cooldown_s

    def _persist(
        self,
        session_id: str,
        event: StudentEvent,
        reply: AgentReply,
        scores: CriterionScores,
        metrics: SessionMetrics,
        supervisor_decision: SupervisorDecision,
    ) -> tuple[int, int, int, int]:
        ts = supervisor_decision.ts
        event_seq = self.store.append(
            session_id,
            "student_event",
            ts,
            {"target": event.target, "text": event.text, "action": event.action},
        )
        reply_seq = self.store.append(
            session_id,
            "agent_reply",
            ts,
            {
                "agent": reply.agent,
                "text": reply.text,
                "effects": list(reply.effects),
                "payload": reply.payload,
            },
        )
        scores_seq = self.store.append(
            session_id,
            "scores",
            ts,
            {
                "scores": scores.as_dict(),
                "provenance": scores.provenance,
                "metrics": metrics.snapshot(),
            },
        )
        decision = supervisor_decision.decision
        decision_seq = self.store.append(
            session_id,
            "decision",
            ts,
            {
                "crisp": decision.crisp,
                "label": decision.label,
                "intervene": decision.intervene,
                "fired_rules": [[rule_id, strength] for rule_id, strength in decision.fired],
                "deficient_criterion": supervisor_decision.deficient_criterion,
                "hint": supervisor_decision.hint,
                "scores": scores.as_dict(),
            },
        )
        return event_seq, reply_seq, scores_seq, decision_seq

    # -- evaluation-agent role ---------------------------------------------------

    def finalize_session(self, session_id: str, ts: str | None = None) -> FinalReport:
        session = self._session(session_id)
        with session.lock:
            report = build_report(self.store, session_id)
            close_ts = ts or session.metrics.last_ts or now_ts()
            self.store.append(session_id, "report", close_ts, report.as_dict())
            self.store.close_session(session_id, close_ts)
            session.record = self.store.get_record(session_id)
        return report

    def get_report(self, session_id: str) -> FinalReport | None:
        for entry in reversed(self.store.read_log(session_id)):
            if entry.kind == "report":
                doc = entry.payload
                return FinalReport(
                    session_id=doc["session_id"],
                    scenario_id=doc["scenario_id"],
                    metrics=doc["metrics"],
                    timeline=tuple(doc["timeline"]),
                    label_histograms=doc["label_histograms"],
                    summary_lines=tuple(doc["summary_lines"]),
                )
        return None


def build_report(store: SessionStore, session_id: str) -> FinalReport:
    """Assemble the final report purely from the persisted log."""
    record = store.get_record(session_id)
    entries = store.read_log(session_id)
    score_entries = [e for e in entries if e.kind == "scores"]
    decision_entries = [e for e in entries if e.kind == "decision"]
    if not score_entries:
        raise SupervisorError(f"session {session_id} has no events to report on")

    metrics = SessionMetrics()
    histograms: dict[str, dict[str, int]] = {c: {} for c in CRITERIA}
    for entry in score_entries:
        raw = entry.payload["scores"]
        scores = CriterionScores(
            **{c: raw[c] for c in CRITERIA}, provenance=entry.payload["provenance"]
        )
        metrics.update(entry.ts, scores)
        for criterion in CRITERIA:
            label = CRITERION_VARIABLES[criterion].classify(getattr(scores, criterion))
            bucket = histograms[criterion]
            bucket[label] = bucket.get(label, 0) + 1

    timeline = []
    for entry in decision_entries:
        if entry.payload["intervene"]:
            metrics.record_intervention(entry.payload["label"])
        timeline.append(
            {
                "seq": entry.seq,
                "ts": entry.ts,
                "label": entry.payload["label"],
                "crisp": entry.payload["crisp"],
                "intervene": entry.payload["intervene"],
                "hint": entry.payload["hint"],
                "deficient_criterion": entry.payload["deficient_criterion"],
            }
        )

    intervention_total = sum(metrics.interventions.values())
    by_label = ", ".join(
        f"{count} {label}"
        for label in ASSISTANCE.labels
        for count in [metrics.interventions.get(label, 0)]
        if count
    )
    lowest_min = min(metrics.criterion_mins.values())
    weakest = next(c for c in CRITERION_PRIORITY if metrics.criterion_mins[c] == lowest_min)
    weakest_label = CRITERION_VARIABLES[weakest].classify(metrics.criterion_mins[weakest])
    summary = (
        f"{metrics.event_count} student events over "
        f"{sum(metrics.elapsed):.0f} seconds.",
        f"{intervention_total} interventions"
        + (f" ({by_label})." if by_label else "."),
        f"Weakest criterion: {weakest.replace('_', ' ')} "
        f"(minimum {metrics.criterion_mins[weakest]:.2f}, {weakest_label}).",
        f"Off-task events: {metrics.off_task_count}.",
    )

    return FinalReport(
        session_id=session_id,
        scenario_id=record.scenario_id,
        metrics=metrics.snapshot(),
        timeline=tuple(timeline),
        label_histograms=histograms,
        summary_lines=summary,
    )


def replay_transcript(
    supervisor: Supervisor, scenario_id: str, events: list[StudentEvent]
) -> tuple[str, list[EventOutcome]]:
    """Run a transcript through the full pipeline; returns (session id, outcomes)."""
    session_id = supervisor.create_session(scenario_id, events[0].ts if events else None)
    outcomes = [supervisor.handle_event(session_id, event) for event in events]
    return session_id, outcomes
