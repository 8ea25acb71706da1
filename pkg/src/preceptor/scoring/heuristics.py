"""Heuristic sub-scorers mapping student events to crisp criterion scores.

Transparent lexical and flag rules stand in for a learned judge: every
scorer is a pure function of (event, context, scenario) so sessions replay
bit-for-bit. Scores live in [0, 1] with 1 at the best label's center.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

from ..types import CriterionScores, StudentEvent

if TYPE_CHECKING:
    from ..scenario.model import ScenarioDefinition
    from .classifier import ExternalClassifier

TOKEN_CAP = 8
RELEVANCE_SATURATION = 0.5
OFF_TASK_THRESHOLD = 0.25
DISTRACTION_PENALTY = 0.15
DEFAULT_WINDOW_SIZE = 10

# Unprofessional phrasing with severities in (0, 1]; matched as substrings of
# the normalized text. Scenario files may extend this list.
DEFAULT_PROFESSIONALISM_LEXICON: tuple[tuple[str, float], ...] = (
    ("shut up", 1.0),
    ("stupid", 1.0),
    ("idiot", 1.0),
    ("dont waste my time", 1.0),
    ("hurry up", 0.5),
    ("whatever", 0.5),
    ("i dont care", 0.5),
    ("just answer", 0.5),
)

_PUNCT_TABLE = str.maketrans({ch: " " for ch in string.punctuation})


def tokenize(text: str) -> list[str]:
    """Lowercase, strip punctuation, split on whitespace."""
    return text.lower().translate(_PUNCT_TABLE).split()


@dataclass(frozen=True)
class ScoringContext:
    """Per-event context the supervisor assembles before scoring."""

    topic_keywords: tuple[str, ...]
    window: tuple[float, ...] = ()
    flags: frozenset[str] = frozenset()
    elapsed_s: float = 0.0
    window_size: int = DEFAULT_WINDOW_SIZE

    def __post_init__(self) -> None:
        if self.elapsed_s < 0:
            raise ValueError("elapsed time must be non-negative")
        if self.window_size < 1:
            raise ValueError("window size must be at least 1")


def relevance_score(text: str, keywords: Sequence[str]) -> float:
    """Normalized keyword overlap pushed through a saturating ramp.

    Overlap is |tokens ∩ keywords| / min(|tokens|, TOKEN_CAP); the ramp
    reaches 1.0 at RELEVANCE_SATURATION so keyword-dense questions saturate.
    """
    if not keywords:
        raise ValueError("topic keyword list must be non-empty")
    tokens = tokenize(text)
    if not tokens:
        return 0.0
    overlap = len(set(tokens) & set(keywords))
    raw = overlap / min(len(tokens), TOKEN_CAP)
    return min(1.0, raw / RELEVANCE_SATURATION)


def professionalism_score(
    text: str,
    lexicon: Sequence[tuple[str, float]] = DEFAULT_PROFESSIONALISM_LEXICON,
) -> float:
    """1 minus the worst matched severity; clean text scores 1.0."""
    normalized = " ".join(tokenize(text))
    worst = 0.0
    for pattern, severity in lexicon:
        if pattern in normalized:
            worst = max(worst, severity)
    return max(0.0, 1.0 - worst)


def ethics_score(
    event: StudentEvent, scenario: "ScenarioDefinition", flags: frozenset[str]
) -> float:
    """Prerequisite and danger-pattern check.

    Interventions with unmet prerequisites score their configured penalty
    (0.25 by default, the second-lowest label center; hazardous actions may
    configure 0.0). Conversational events score 1.0 unless a danger pattern
    matches.
    """
    if event.is_structured():
        if event.target != "intervention":
            return 1.0
        intervention = scenario.interventions.get(event.action or "")
        if intervention is None:
            return 1.0
        if set(intervention.prerequisites) <= flags:
            return 1.0
        return intervention.ethics_if_unmet
    normalized = " ".join(tokenize(event.text))
    worst = 0.0
    for pattern, severity in scenario.danger_patterns:
        if pattern in normalized:
            worst = max(worst, severity)
    return max(0.0, 1.0 - worst)


def distraction_score(
    text: str, ctx: ScoringContext, *, relevance: float | None = None
) -> float:
    """Relevance-based distraction with a windowed off-task penalty.

    Base equals this event's relevance; each prior window event whose
    relevance fell below OFF_TASK_THRESHOLD subtracts DISTRACTION_PENALTY.
    """
    base = relevance if relevance is not None else relevance_score(text, ctx.topic_keywords)
    window = ctx.window[-ctx.window_size :]
    off_task = sum(1 for r in window if r < OFF_TASK_THRESHOLD)
    return min(1.0, max(0.0, base - DISTRACTION_PENALTY * off_task))


def heuristic_scores(
    event: StudentEvent, ctx: ScoringContext, scenario: "ScenarioDefinition"
) -> CriterionScores:
    """Compose the sub-scorers for one event."""
    if not event.is_structured() and not event.text.strip():
        # Content-free events take neutral defaults instead of reading as
        # off-topic, so they never trigger spurious interventions.
        return CriterionScores(1.0, 0.5, 1.0, 1.0, provenance="heuristic")

    lexicon = DEFAULT_PROFESSIONALISM_LEXICON + scenario.professionalism_lexicon
    professionalism = professionalism_score(event.text, lexicon) if event.text else 1.0
    ethics = ethics_score(event, scenario, ctx.flags)

    if event.is_structured():
        relevance = 1.0
    else:
        relevance = relevance_score(event.text, ctx.topic_keywords)
        floor = scenario.relevance_floor_for(event.text)
        if floor is not None:
            relevance = max(relevance, floor)

    distraction = distraction_score(event.text, ctx, relevance=relevance)
    return CriterionScores(
        professionalism=professionalism,
        medical_relevance=relevance,
        ethical_behavior=ethics,
        contextual_distraction=distraction,
        provenance="heuristic",
    )


def score_event(
    event: StudentEvent,
    ctx: ScoringContext,
    scenario: "ScenarioDefinition",
    *,
    classifier: "ExternalClassifier | None" = None,
    session_id: str = "",
    context_excerpt: Sequence[str] = (),
) -> CriterionScores:
    """External classifier when configured and healthy, heuristics otherwise.

    Never raises for scoring reasons: classifier failures fall back to the
    heuristic path and the provenance field records which route ran.
    """
    if classifier is not None and classifier.available():
        from .classifier import ClassifierRequest

        response = classifier.score(
            ClassifierRequest(
                session_id=session_id,
                text=event.text,
                target_agent=event.target,
                context=tuple(context_excerpt),
            )
        )
        if response is not None:
            return CriterionScores(provenance="external", **response.scores)
    return heuristic_scores(event, ctx, scenario)


@dataclass
class RelevanceWindow:
    """Rolling window of recent relevance scores, oldest first."""

    size: int = DEFAULT_WINDOW_SIZE
    values: list[float] = field(default_factory=list)

    def push(self, relevance: float) -> None:
        self.values.append(relevance)
        if len(self.values) > self.size:
            del self.values[: len(self.values) - self.size]

    def snapshot(self) -> tuple[float, ...]:
        return tuple(self.values)
