from __future__ import annotations

import json
from importlib import resources

import pytest

from preceptor.rules import load_default_rules
from preceptor.scenario import load_bundled_scenarios
from preceptor.store import SessionStore
from preceptor.supervisor import Supervisor
from preceptor.types import StudentEvent


@pytest.fixture(scope="session")
def rule_base():
    return load_default_rules()


@pytest.fixture(scope="session")
def scenarios():
    return load_bundled_scenarios()


@pytest.fixture(scope="session")
def chest_pain(scenarios):
    return scenarios["chest_pain"]


@pytest.fixture
def store(tmp_path):
    return SessionStore(tmp_path / "data")


@pytest.fixture
def supervisor(scenarios, rule_base, store):
    return Supervisor(scenarios, rule_base, store)


def load_transcript(name: str) -> list[StudentEvent]:
    text = (
        resources.files("preceptor")
        .joinpath(f"assets/transcripts/{name}.jsonl")
        .read_text(encoding="utf-8")
    )
    return [
        StudentEvent(**json.loads(line))
        for line in text.splitlines()
        if line.strip()
    ]


@pytest.fixture(scope="session")
def chest_pain_transcript():
    return load_transcript("chest_pain_session")


@pytest.fixture(scope="session")
def good_student_transcript():
    return load_transcript("chest_pain_good_student")
