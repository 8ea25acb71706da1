"""Scenario definitions and the scripted clinical agents they drive."""

from .agents import AgentReply, AgentState, RoutingError, route
from .model import (
    BUNDLED_SCENARIOS,
    Intervention,
    PatientProfile,
    QAIntent,
    ScenarioDefinition,
    ScenarioError,
    TestEntry,
    load_bundled_scenario,
    load_bundled_scenarios,
    load_scenario,
    load_scenario_file,
)

__all__ = [
    "AgentReply",
    "AgentState",
    "BUNDLED_SCENARIOS",
    "Intervention",
    "PatientProfile",
    "QAIntent",
    "RoutingError",
    "ScenarioDefinition",
    "ScenarioError",
    "TestEntry",
    "load_bundled_scenario",
    "load_bundled_scenarios",
    "load_scenario",
    "load_scenario_file",
    "route",
]
