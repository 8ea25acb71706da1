"""Scripted clinical agents: deterministic pattern-matchers over a scenario.

Four roles share one routing entry point: the patient answers questions via
QA intents, the exam agent reports per-site findings, the diagnostic agent
returns test results, and the intervention agent carries out actions only
when their prerequisites are met. Unknown requests degrade to structured
defaults; routing never raises for content reasons.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..types import AGENT_ROLES, StudentEvent
from .model import ScenarioDefinition


class RoutingError(ValueError):
    """Event targeted an unknown agent role."""


@dataclass
class AgentState:
    """Per-session flags and action history; flags are set-once."""

    flags: set[str] = field(default_factory=set)
    tests_ordered: list[str] = field(default_factory=list)
    exams_performed: list[str] = field(default_factory=list)
    interventions_attempted: list[str] = field(default_factory=list)

    def set_flags(self, flags: tuple[str, ...]) -> tuple[str, ...]:
        new = tuple(f for f in flags if f not in self.flags)
        self.flags.update(new)
        return new

    def snapshot(self) -> dict:
        return {
            "flags": sorted(self.flags),
            "tests_ordered": list(self.tests_ordered),
            "exams_performed": list(self.exams_performed),
            "interventions_attempted": list(self.interventions_attempted),
        }


@dataclass(frozen=True)
class AgentReply:
    agent: str
    text: str
    effects: tuple[str, ...] = ()
    payload: dict | None = None


def route(
    target: str,
    event: StudentEvent,
    scenario: ScenarioDefinition,
    state: AgentState,
) -> AgentReply:
    """Dispatch one student event to its agent, applying state effects."""
    if target not in AGENT_ROLES:
        raise RoutingError(f"unknown agent role {target!r}")
    if target == "patient":
        return _patient(event, scenario, state)
    if target == "exam":
        return _exam(event, scenario, state)
    if target == "diagnostic":
        return _diagnostic(event, scenario, state)
    return _intervention(event, scenario, state)


def _patient(
    event: StudentEvent, scenario: ScenarioDefinition, state: AgentState
) -> AgentReply:
    intent = scenario.match_intent(event.text)
    if intent is None:
        return AgentReply(agent="patient", text=scenario.default_answers[0])
    effects = state.set_flags(intent.sets_flags)
    return AgentReply(
        agent="patient",
        text=intent.answer,
        effects=effects,
        payload={"intent": intent.id},
    )


def _exam(
    event: StudentEvent, scenario: ScenarioDefinition, state: AgentState
) -> AgentReply:
    site = event.action or ""
    finding = scenario.exam_findings.get(site)
    if site and site not in state.exams_performed:
        state.exams_performed.append(site)
    if finding is None:
        return AgentReply(
            agent="exam",
            text=scenario.default_finding,
            payload={"site": site, "documented": False},
        )
    return AgentReply(
        agent="exam", text=finding, payload={"site": site, "documented": True}
    )


def _diagnostic(
    event: StudentEvent, scenario: ScenarioDefinition, state: AgentState
) -> AgentReply:
    test_id = event.action or ""
    entry = scenario.tests.get(test_id)
    if entry is None:
        return AgentReply(
            agent="diagnostic",
            text=f"Test {test_id!r} is not available in this case.",
            payload={"test": test_id, "available": False},
        )
    if test_id not in state.tests_ordered:
        state.tests_ordered.append(test_id)
    return AgentReply(
        agent="diagnostic",
        text=entry.result,
        payload={"test": test_id, "available": True, "turnaround": entry.turnaround},
    )


def _intervention(
    event: StudentEvent, scenario: ScenarioDefinition, state: AgentState
) -> AgentReply:
    action_id = event.action or ""
    intervention = scenario.interventions.get(action_id)
    if intervention is None:
        return AgentReply(
            agent="intervention",
            text=f"Intervention {action_id!r} is not available in this case.",
            payload={"action": action_id, "available": False},
        )
    state.interventions_attempted.append(action_id)
    missing = sorted(set(intervention.prerequisites) - state.flags)
    if missing:
        # Outcome withheld; the attempt is recorded and scoring reacts upstream.
        return AgentReply(
            agent="intervention",
            text="The intervention does not proceed.",
            payload={"action": action_id, "performed": False, "missing": missing},
        )
    effects = state.set_flags(intervention.sets_flags)
    return AgentReply(
        agent="intervention",
        text=intervention.outcome,
        effects=effects,
        payload={"action": action_id, "performed": True},
    )
