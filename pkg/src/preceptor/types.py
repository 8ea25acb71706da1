"""Shared domain types: student events and per-event criterion scores."""

from __future__ import annotations

from dataclasses import dataclass

CRITERIA = (
    "professionalism",
    "medical_relevance",
    "ethical_behavior",
    "contextual_distraction",
)

AGENT_ROLES = ("patient", "exam", "diagnostic", "intervention")


@dataclass(frozen=True)
class CriterionScores:
    """One crisp value per criterion in [0, 1]; 1 is the best label's center."""

    professionalism: float
    medical_relevance: float
    ethical_behavior: float
    contextual_distraction: float
    provenance: str = "heuristic"

    def __post_init__(self) -> None:
        for name in CRITERIA:
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value!r}")
        if self.provenance not in ("heuristic", "external"):
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in CRITERIA}


@dataclass(frozen=True)
class StudentEvent:
    """A single student action: free text to an agent, or a structured action id.

    ``action`` carries an exam site, test id, or intervention id depending on
    the target agent; conversational events leave it None.
    """

    target: str
    text: str = ""
    action: str | None = None
    ts: str = ""

    def is_structured(self) -> bool:
        return self.action is not None
