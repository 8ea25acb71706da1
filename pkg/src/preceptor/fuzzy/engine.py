"""Mamdani inference: rule activation, implication, aggregation, defuzzification.

Semantics are the canonical Mamdani choices: AND = min, OR = max,
implication = min (clip), aggregation = pointwise max, defuzzification =
centroid of the aggregated set, computed in closed form over the
piecewise-linear segments of the clipped label functions.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..rules.model import And, Atom, Node, Or, Rule, RuleBase
from ..types import CriterionScores
from .membership import MembershipFunction
from .variables import (
    ASSISTANCE,
    CRITERION_VARIABLES,
    INTERVENE_LABELS,
    LinguisticVariable,
)


class RuleEvaluationError(KeyError):
    """A rule referenced a variable or label missing from the environment."""


class NoRuleFired(Exception):
    """The aggregated output set is empty; callers apply the no-assistance default."""


@dataclass(frozen=True)
class OutputFuzzySet:
    """Aggregated output: (label, clip height) pairs, max-merged per label.

    Entries follow the output variable's label order and only carry
    strictly positive heights; no rule firing yields the empty set.
    """

    clips: tuple[tuple[str, float], ...]

    def __post_init__(self) -> None:
        seen = set()
        for label, height in self.clips:
            if label in seen:
                raise ValueError(f"duplicate output label {label!r}")
            seen.add(label)
            if not 0.0 < height <= 1.0:
                raise ValueError(f"clip height for {label!r} must be in (0, 1]: {height}")

    def is_empty(self) -> bool:
        return not self.clips

    def as_dict(self) -> dict[str, float]:
        return dict(self.clips)


@dataclass(frozen=True)
class InferenceResult:
    output_set: OutputFuzzySet
    fired: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class AssistanceDecision:
    """Crisp assistance value, its label, and the trail that produced it."""

    crisp: float
    label: str
    intervene: bool
    fired: tuple[tuple[int, float], ...]
    inputs: CriterionScores


Env = dict[str, dict[str, float]]


def rule_activation(rule: Rule, env: Env) -> float:
    """Activation strength of a rule's antecedent under fuzzified inputs."""
    return _strength(rule.antecedent, env)


def _strength(node: Node, env: Env) -> float:
    if isinstance(node, Atom):
        try:
            degrees = env[node.variable]
        except KeyError:
            raise RuleEvaluationError(f"unknown variable {node.variable!r}") from None
        try:
            return degrees[node.label]
        except KeyError:
            raise RuleEvaluationError(
                f"variable {node.variable!r} has no label {node.label!r}"
            ) from None
    if isinstance(node, And):
        return min(_strength(child, env) for child in node.children)
    if isinstance(node, Or):
        return max(_strength(child, env) for child in node.children)
    raise TypeError(f"unexpected node {node!r}")


def fuzzify_inputs(inputs: CriterionScores) -> Env:
    """Fuzzify each criterion score under its linguistic variable."""
    return {
        var.name: var.fuzzify(getattr(inputs, criterion))
        for criterion, var in CRITERION_VARIABLES.items()
    }


def infer(
    rules: RuleBase,
    inputs: CriterionScores,
    out_var: LinguisticVariable = ASSISTANCE,
) -> InferenceResult:
    """Clip each rule's consequent at its activation; aggregate per label by max."""
    env = fuzzify_inputs(inputs)
    heights: dict[str, float] = {}
    fired: list[tuple[int, float]] = []
    for rule in rules:
        strength = rule_activation(rule, env)
        if strength <= 0.0:
            continue
        fired.append((rule.id, strength))
        label = rule.consequent_label
        heights[label] = max(heights.get(label, 0.0), strength)
    clips = tuple(
        (label, heights[label]) for label in out_var.labels if label in heights
    )
    return InferenceResult(OutputFuzzySet(clips), tuple(fired))


def _clipped_segments(
    mf: MembershipFunction, height: float
) -> list[tuple[float, float, float, float]]:
    """Linear pieces (x0, x1, y0, y1) of min(height, mf), within the support."""
    rise = mf.left_peak - mf.left_foot
    fall = mf.right_foot - mf.right_peak
    up_end = mf.left_foot + height * rise
    down_start = mf.right_foot - height * fall
    pieces = [
        (mf.left_foot, up_end, 0.0, height),
        (up_end, down_start, height, height),
        (down_start, mf.right_foot, height, 0.0),
    ]
    return [(x0, x1, y0, y1) for x0, x1, y0, y1 in pieces if x1 > x0]


def defuzzify_centroid(
    output_set: OutputFuzzySet, out_var: LinguisticVariable = ASSISTANCE
) -> float:
    """Centroid of the pointwise-max envelope of the clipped label functions.

    Exact: breakpoints collect every segment corner and every pairwise
    segment intersection, so the envelope is linear between consecutive
    breakpoints and integrates in closed form.
    """
    if output_set.is_empty():
        raise NoRuleFired("empty output set")

    clipped = [(out_var.function(label), height) for label, height in output_set.clips]
    segments = []
    for mf, height in clipped:
        segments.extend(_clipped_segments(mf, height))

    breakpoints = {0.0, 1.0}
    for x0, x1, _, _ in segments:
        breakpoints.add(x0)
        breakpoints.add(x1)
    for i, (ax0, ax1, ay0, ay1) in enumerate(segments):
        for bx0, bx1, by0, by1 in segments[i + 1 :]:
            lo, hi = max(ax0, bx0), min(ax1, bx1)
            if hi <= lo:
                continue
            ma = (ay1 - ay0) / (ax1 - ax0)
            mb = (by1 - by0) / (bx1 - bx0)
            if ma == mb:
                continue
            qa = ay0 - ma * ax0
            qb = by0 - mb * bx0
            x_cross = (qb - qa) / (ma - mb)
            if lo < x_cross < hi:
                breakpoints.add(x_cross)

    def envelope(x: float) -> float:
        return max((min(height, mf(x)) for mf, height in clipped), default=0.0)

    xs = sorted(breakpoints)
    area = 0.0
    moment = 0.0
    for x0, x1 in zip(xs, xs[1:]):
        g0, g1 = envelope(x0), envelope(x1)
        width = x1 - x0
        slope = (g1 - g0) / width
        intercept = g0 - slope * x0
        area += 0.5 * (g0 + g1) * width
        moment += slope * (x1**3 - x0**3) / 3.0 + intercept * (x1**2 - x0**2) / 2.0

    if area <= 0.0:
        raise NoRuleFired("aggregated output set has zero area")
    return moment / area


def classify(out_var: LinguisticVariable, crisp: float) -> str:
    """Label with maximal membership at ``crisp``; ties go to the lower level."""
    return out_var.classify(crisp)


def evaluate(
    rules: RuleBase,
    inputs: CriterionScores,
    out_var: LinguisticVariable = ASSISTANCE,
) -> AssistanceDecision:
    """Full pipeline: infer, defuzzify, classify, set the intervene flag.

    When no rule fires the decision defaults to crisp 0 / the lowest label:
    absence of any triggering condition means no assistance is needed.
    """
    result = infer(rules, inputs, out_var)
    if result.output_set.is_empty():
        crisp = 0.0
        label = out_var.labels[0]
    else:
        crisp = defuzzify_centroid(result.output_set, out_var)
        label = classify(out_var, crisp)
    return AssistanceDecision(
        crisp=crisp,
        label=label,
        intervene=label in INTERVENE_LABELS,
        fired=result.fired,
        inputs=inputs,
    )
