"""Event scoring: heuristic sub-scorers plus the external classifier client."""

from .classifier import (
    ClassifierConfig,
    ClassifierRequest,
    ClassifierResponse,
    ExternalClassifier,
)
from .heuristics import (
    DEFAULT_PROFESSIONALISM_LEXICON,
    DEFAULT_WINDOW_SIZE,
    DISTRACTION_PENALTY,
    OFF_TASK_THRESHOLD,
    RelevanceWindow,
    ScoringContext,
    distraction_score,
    ethics_score,
    heuristic_scores,
    professionalism_score,
    relevance_score,
    score_event,
    tokenize,
)

__all__ = [
    "ClassifierConfig",
    "ClassifierRequest",
    "ClassifierResponse",
    "DEFAULT_PROFESSIONALISM_LEXICON",
    "DEFAULT_WINDOW_SIZE",
    "DISTRACTION_PENALTY",
    "ExternalClassifier",
    "OFF_TASK_THRESHOLD",
    "RelevanceWindow",
    "ScoringContext",
    "distraction_score",
    "ethics_score",
    "heuristic_scores",
    "professionalism_score",
    "relevance_score",
    "score_event",
    "tokenize",
]
