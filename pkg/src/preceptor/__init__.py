"""Fuzzy-logic supervision engine for simulated clinical training sessions.

A library of composable pieces: a Mamdani inference core over four clinical
criteria, a small rule language, heuristic event scoring with an optional
external classifier, scripted scenario agents, an append-only session store,
and a supervisor that ties them together behind an HTTP/WebSocket gateway
and CLI.
"""

from .fuzzy import (
    ASSISTANCE,
    DEFAULT_VARIABLES,
    INTERVENE_LABELS,
    AssistanceDecision,
    LinguisticVariable,
    MembershipFunction,
    evaluate,
)
from .rules import RuleBase, load_default_rules, parse_rules, pretty_print, validate
from .types import AGENT_ROLES, CRITERIA, CriterionScores, StudentEvent

__version__ = "0.1.0"

__all__ = [
    "AGENT_ROLES",
    "ASSISTANCE",
    "AssistanceDecision",
    "CRITERIA",
    "CriterionScores",
    "DEFAULT_VARIABLES",
    "INTERVENE_LABELS",
    "LinguisticVariable",
    "MembershipFunction",
    "RuleBase",
    "StudentEvent",
    "__version__",
    "evaluate",
    "load_default_rules",
    "parse_rules",
    "pretty_print",
    "validate",
]
