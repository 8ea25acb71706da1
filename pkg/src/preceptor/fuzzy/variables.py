"""Linguistic variables: ordered fuzzy label partitions over [0, 1].

The default registry holds the four input criteria and the assistance output.
Label order follows domain position: index 0 peaks at x=0 (the worst input
level, or the lowest assistance level) and the last label peaks at x=1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .membership import MembershipFunction


@dataclass(frozen=True)
class LinguisticVariable:
    name: str
    labels: tuple[str, ...]
    functions: tuple[MembershipFunction, ...]

    def __post_init__(self) -> None:
        if len(self.labels) < 2:
            raise ValueError(f"{self.name}: need at least 2 labels")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"{self.name}: label names must be unique")
        if len(self.functions) != len(self.labels):
            raise ValueError(f"{self.name}: one membership function per label")
        if self.functions[0](0.0) != 1.0:
            raise ValueError(f"{self.name}: first label must have membership 1 at x=0")
        if self.functions[-1](1.0) != 1.0:
            raise ValueError(f"{self.name}: last label must have membership 1 at x=1")

    @classmethod
    def uniform(cls, name: str, labels: tuple[str, ...] | list[str]) -> LinguisticVariable:
        """Uniform triangular Ruspini partition with peaks at i/(n-1)."""
        labels = tuple(labels)
        n = len(labels)
        if n < 2:
            raise ValueError(f"{name}: need at least 2 labels")
        centers = [i / (n - 1) for i in range(n)]
        functions = []
        for i in range(n):
            left = centers[i - 1] if i > 0 else centers[0]
            right = centers[i + 1] if i < n - 1 else centers[-1]
            functions.append(MembershipFunction.triangle(left, centers[i], right))
        return cls(name, labels, tuple(functions))

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{self.name} has no label {label!r}") from None

    def center(self, label: str) -> float:
        return self.functions[self.index_of(label)].peak

    def function(self, label: str) -> MembershipFunction:
        return self.functions[self.index_of(label)]

    def fuzzify(self, x: float) -> dict[str, float]:
        """Per-label degrees at ``x``; sums to 1 for Ruspini partitions."""
        return {label: mf(x) for label, mf in zip(self.labels, self.functions)}

    def classify(self, x: float) -> str:
        """Label with the highest degree at ``x``; exact ties go to the lower index."""
        degrees = self.fuzzify(x)
        best = max(degrees.values())
        for label in self.labels:
            if degrees[label] == best:
                return label
        raise AssertionError("unreachable")


PROFESSIONALISM = LinguisticVariable.uniform(
    "Professionalism", ("Unprofessional", "Borderline", "Appropriate")
)
MEDICAL_RELEVANCE = LinguisticVariable.uniform(
    "MedicalRelevance", ("Irrelevant", "Partially relevant", "Relevant")
)
ETHICAL_BEHAVIOR = LinguisticVariable.uniform(
    "EthicalBehavior", ("Dangerous", "Unsafe", "Questionable", "Mostly safe", "Safe")
)
CONTEXTUAL_DISTRACTION = LinguisticVariable.uniform(
    "ContextualDistraction",
    ("Highly distracting", "Moderately distracting", "Questionable", "Not distracting"),
)
ASSISTANCE = LinguisticVariable.uniform(
    "Assistance", ("Minimal", "Low", "Medium", "High", "Very High", "Highest")
)

INPUT_VARIABLES = (
    PROFESSIONALISM,
    MEDICAL_RELEVANCE,
    ETHICAL_BEHAVIOR,
    CONTEXTUAL_DISTRACTION,
)
DEFAULT_VARIABLES = INPUT_VARIABLES + (ASSISTANCE,)

CRITERION_VARIABLES = {
    "professionalism": PROFESSIONALISM,
    "medical_relevance": MEDICAL_RELEVANCE,
    "ethical_behavior": ETHICAL_BEHAVIOR,
    "contextual_distraction": CONTEXTUAL_DISTRACTION,
}

VARIABLE_FOR_CRITERION = {name: var.name for name, var in CRITERION_VARIABLES.items()}

INTERVENE_LABELS = frozenset({"High", "Very High", "Highest"})
