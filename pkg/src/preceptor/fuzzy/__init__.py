"""Pure Mamdani fuzzy inference over the clinical assistance variables."""

from .engine import (
    AssistanceDecision,
    InferenceResult,
    NoRuleFired,
    OutputFuzzySet,
    RuleEvaluationError,
    classify,
    defuzzify_centroid,
    evaluate,
    fuzzify_inputs,
    infer,
    rule_activation,
)
from .membership import DomainError, MembershipFunction, membership
from .variables import (
    ASSISTANCE,
    CONTEXTUAL_DISTRACTION,
    CRITERION_VARIABLES,
    DEFAULT_VARIABLES,
    ETHICAL_BEHAVIOR,
    INPUT_VARIABLES,
    INTERVENE_LABELS,
    MEDICAL_RELEVANCE,
    PROFESSIONALISM,
    LinguisticVariable,
)

__all__ = [
    "ASSISTANCE",
    "AssistanceDecision",
    "CONTEXTUAL_DISTRACTION",
    "CRITERION_VARIABLES",
    "DEFAULT_VARIABLES",
    "DomainError",
    "ETHICAL_BEHAVIOR",
    "INPUT_VARIABLES",
    "INTERVENE_LABELS",
    "InferenceResult",
    "LinguisticVariable",
    "MEDICAL_RELEVANCE",
    "MembershipFunction",
    "NoRuleFired",
    "OutputFuzzySet",
    "PROFESSIONALISM",
    "RuleEvaluationError",
    "classify",
    "defuzzify_centroid",
    "evaluate",
    "fuzzify_inputs",
    "infer",
    "membership",
    "rule_activation",
]
