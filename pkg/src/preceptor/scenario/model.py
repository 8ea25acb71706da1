"""Declarative scenario definitions and their loader.

A scenario is a JSON document describing one simulated clinical case: the
patient's scripted answers, exam findings, test catalog, interventions with
their prerequisites, and the hint overrides the supervisor may use. Loading
validates the whole document and reports every problem with a path to the
offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..scoring.heuristics import tokenize

SCHEMA_VERSION = 1

BUNDLED_SCENARIOS = ("chest_pain", "sore_throat")


class ScenarioError(ValueError):
    """Scenario document failed validation; ``problems`` lists field paths."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


@dataclass(frozen=True)
class QAIntent:
    id: str
    keywords: tuple[str, ...]
    answer: str
    sets_flags: tuple[str, ...] = ()
    relevance_floor: float | None = None


@dataclass(frozen=True)
class TestEntry:
    result: str
    turnaround: str = "minutes"


@dataclass(frozen=True)
class Intervention:
    prerequisites: tuple[str, ...]
    outcome: str
    ethics_if_unmet: float = 0.25
    sets_flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class PatientProfile:
    name: str
    age: int
    history: tuple[str, ...] = ()


@dataclass(frozen=True)
class ScenarioDefinition:
    id: str
    title: str
    chief_complaint: str
    topic_keywords: tuple[str, ...]
    patient: PatientProfile
    qa_intents: tuple[QAIntent, ...]
    default_answers: tuple[str, ...]
    exam_findings: dict[str, str]
    default_finding: str
    tests: dict[str, TestEntry]
    interventions: dict[str, Intervention]
    danger_patterns: tuple[tuple[str, float], ...] = ()
    hint_overrides: dict[str, dict[str, str]] = field(default_factory=dict)
    professionalism_lexicon: tuple[tuple[str, float], ...] = ()
    declared_flags: tuple[str, ...] = ()

    def match_intent(self, text: str) -> QAIntent | None:
        """Highest keyword-overlap intent (at least one shared token); ties
        break toward file order."""
        tokens = set(tokenize(text))
        best: QAIntent | None = None
        best_overlap = 0
        for intent in self.qa_intents:
            overlap = len(tokens & set(intent.keywords))
            if overlap > best_overlap:
                best = intent
                best_overlap = overlap
        return best

    def relevance_floor_for(self, text: str) -> float | None:
        intent = self.match_intent(text)
        return intent.relevance_floor if intent else None

    def hint_override(self, criterion: str, band: str) -> str | None:
        return self.hint_overrides.get(criterion, {}).get(band)

    def defined_flags(self) -> frozenset[str]:
        flags = set(self.declared_flags)
        for intent in self.qa_intents:
            flags.update(intent.sets_flags)
        for intervention in self.interventions.values():
            flags.update(intervention.sets_flags)
        return frozenset(flags)


class _Checker:
    def __init__(self) -> None:
        self.problems: list[str] = []

    def fail(self, path: str, message: str) -> None:
        self.problems.append(f"{path}: {message}")

    def str_at(self, doc: dict, path: str, key: str, *, required: bool = True, default: str = "") -> str:
        value = doc.get(key)
        if value is None:
            if required:
                self.fail(f"{path}.{key}", "required string is missing")
            return default
        if not isinstance(value, str) or (required and not value.strip()):
            self.fail(f"{path}.{key}", "must be a non-empty string")
            return default
        return value

    def list_at(self, doc: dict, path: str, key: str, *, required: bool = True) -> list:
        value = doc.get(key)
        if value is None:
            if required:
                self.fail(f"{path}.{key}", "required list is missing")
            return []
        if not isinstance(value, list):
            self.fail(f"{path}.{key}", "must be a list")
            return []
        return value


def load_scenario(document: str | dict) -> ScenarioDefinition:
    """Parse and fully validate one scenario document.

    Raises ScenarioError carrying every problem found, each prefixed with the
    JSON path to the offending field.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ScenarioError([f"$: not valid JSON ({exc})"]) from exc
    if not isinstance(document, dict):
        raise ScenarioError(["$: document must be a JSON object"])

    check = _Checker()
    version = document.get("schema_version")
    if version != SCHEMA_VERSION:
        check.fail("$.schema_version", f"expected {SCHEMA_VERSION}, found {version!r}")

    scenario_id = check.str_at(document, "$", "id")
    title = check.str_at(document, "$", "title")
    chief = check.str_at(document, "$", "chief_complaint")

    keywords = [
        kw for kw in check.list_at(document, "$", "topic_keywords") if isinstance(kw, str)
    ]
    if not keywords:
        check.fail("$.topic_keywords", "must contain at least one keyword")

    patient_doc = document.get("patient") or {}
    patient = PatientProfile(
        name=check.str_at(patient_doc, "$.patient", "name"),
        age=patient_doc.get("age", 0) if isinstance(patient_doc.get("age", 0), int) else 0,
        history=tuple(h for h in patient_doc.get("history", []) if isinstance(h, str)),
    )

    intents: list[QAIntent] = []
    seen_intent_ids: set[str] = set()
    for i, intent_doc in enumerate(check.list_at(document, "$", "qa_intents")):
        path = f"$.qa_intents[{i}]"
        if not isinstance(intent_doc, dict):
            check.fail(path, "must be an object")
            continue
        intent_id = check.str_at(intent_doc, path, "id")
        if intent_id in seen_intent_ids:
            check.fail(f"{path}.id", f"duplicate intent id {intent_id!r}")
        seen_intent_ids.add(intent_id)
        intent_keywords = tuple(
            kw for kw in check.list_at(intent_doc, path, "keywords") if isinstance(kw, str)
        )
        if not intent_keywords:
            check.fail(f"{path}.keywords", "must contain at least one keyword")
        floor = intent_doc.get("relevance_floor")
        if floor is not None and not (isinstance(floor, (int, float)) and 0 <= floor <= 1):
            check.fail(f"{path}.relevance_floor", "must be a number in [0, 1]")
            floor = None
        intents.append(
            QAIntent(
                id=intent_id,
                keywords=intent_keywords,
                answer=check.str_at(intent_doc, path, "answer"),
                sets_flags=tuple(
                    f for f in intent_doc.get("sets_flags", []) if isinstance(f, str)
                ),
                relevance_floor=float(floor) if floor is not None else None,
            )
        )

    default_answers = tuple(
        a for a in check.list_at(document, "$", "default_answers") if isinstance(a, str)
    )
    if not default_answers:
        check.fail("$.default_answers", "must contain at least one line")

    exam_findings = {
        str(site): str(finding)
        for site, finding in (document.get("exam_findings") or {}).items()
    }
    default_finding = check.str_at(
        document, "$", "default_finding", required=False,
        default="Examination of that area is unremarkable.",
    )

    tests: dict[str, TestEntry] = {}
    for test_id, test_doc in (document.get("tests") or {}).items():
        path = f"$.tests.{test_id}"
        if not isinstance(test_doc, dict):
            check.fail(path, "must be an object")
            continue
        tests[str(test_id)] = TestEntry(
            result=check.str_at(test_doc, path, "result"),
            turnaround=check.str_at(test_doc, path, "turnaround", required=False, default="minutes"),
        )

    interventions: dict[str, Intervention] = {}
    for action_id, action_doc in (document.get("interventions") or {}).items():
        path = f"$.interventions.{action_id}"
        if not isinstance(action_doc, dict):
            check.fail(path, "must be an object")
            continue
        ethics = action_doc.get("ethics_if_unmet", 0.25)
        if not (isinstance(ethics, (int, float)) and 0 <= ethics <= 1):
            check.fail(f"{path}.ethics_if_unmet", "must be a number in [0, 1]")
            ethics = 0.25
        interventions[str(action_id)] = Intervention(
            prerequisites=tuple(
                p for p in action_doc.get("prerequisites", []) if isinstance(p, str)
            ),
            outcome=check.str_at(action_doc, path, "outcome"),
            ethics_if_unmet=float(ethics),
            sets_flags=tuple(
                f for f in action_doc.get("sets_flags", []) if isinstance(f, str)
            ),
        )

    danger_patterns: list[tuple[str, float]] = []
    for i, pattern_doc in enumerate(document.get("danger_patterns") or []):
        path = f"$.danger_patterns[{i}]"
        if not isinstance(pattern_doc, dict) or "pattern" not in pattern_doc:
            check.fail(path, "must be an object with a pattern")
            continue
        severity = pattern_doc.get("severity", 1.0)
        if not (isinstance(severity, (int, float)) and 0 < severity <= 1):
            check.fail(f"{path}.severity", "must be a number in (0, 1]")
            continue
        danger_patterns.append((str(pattern_doc["pattern"]).lower(), float(severity)))

    hint_overrides: dict[str, dict[str, str]] = {}
    for criterion, bands in (document.get("hint_overrides") or {}).items():
        if not isinstance(bands, dict):
            check.fail(f"$.hint_overrides.{criterion}", "must map bands to hint text")
            continue
        hint_overrides[str(criterion)] = {str(b): str(t) for b, t in bands.items()}

    lexicon: list[tuple[str, float]] = []
    for i, entry in enumerate(document.get("professionalism_lexicon") or []):
        path = f"$.professionalism_lexicon[{i}]"
        if not isinstance(entry, dict) or "pattern" not in entry:
            check.fail(path, "must be an object with a pattern")
            continue
        severity = entry.get("severity", 1.0)
        if not (isinstance(severity, (int, float)) and 0 < severity <= 1):
            check.fail(f"{path}.severity", "must be a number in (0, 1]")
            continue
        lexicon.append((str(entry["pattern"]).lower(), float(severity)))

    declared_flags = tuple(
        f for f in document.get("flags", []) if isinstance(f, str)
    )

    scenario = ScenarioDefinition(
        id=scenario_id,
        title=title,
        chief_complaint=chief,
        topic_keywords=tuple(keywords),
        patient=patient,
        qa_intents=tuple(intents),
        default_answers=default_answers,
        exam_findings=exam_findings,
        default_finding=default_finding,
        tests=tests,
        interventions=interventions,
        danger_patterns=tuple(danger_patterns),
        hint_overrides=hint_overrides,
        professionalism_lexicon=tuple(lexicon),
        declared_flags=declared_flags,
    )

    defined = scenario.defined_flags()
    for action_id, intervention in scenario.interventions.items():
        for prerequisite in intervention.prerequisites:
            if prerequisite not in defined:
                check.fail(
                    f"$.interventions.{action_id}.prerequisites",
                    f"references undefined flag {prerequisite!r}",
                )

    if check.problems:
        raise ScenarioError(check.problems)
    return scenario


def load_scenario_file(path: str | Path) -> ScenarioDefinition:
    return load_scenario(Path(path).read_text(encoding="utf-8"))


def load_bundled_scenario(scenario_id: str) -> ScenarioDefinition:
    text = (
        resources.files("preceptor")
        .joinpath(f"assets/scenarios/{scenario_id}.json")
        .read_text(encoding="utf-8")
    )
    return load_scenario(text)


def load_bundled_scenarios() -> dict[str, ScenarioDefinition]:
    return {sid: load_bundled_scenario(sid) for sid in BUNDLED_SCENARIOS}
