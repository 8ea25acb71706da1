"""Rule-base data model: expression trees, rules, and diagnostics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True)
class Atom:
    variable: str
    label: str


@dataclass(frozen=True)
class And:
    children: tuple["Node", ...]

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise ValueError("AND node needs at least 2 children")


@dataclass(frozen=True)
class Or:
    children: tuple["Node", ...]

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise ValueError("OR node needs at least 2 children")


Node = Union[Atom, And, Or]


def atoms(node: Node) -> Iterator[Atom]:
    """All atoms in a left-to-right walk of the expression tree."""
    if isinstance(node, Atom):
        yield node
    else:
        for child in node.children:
            yield from atoms(child)


@dataclass(frozen=True)
class Rule:
    """One IF/THEN rule; id is the 1-based position in the source file."""

    id: int
    antecedent: Node
    consequent_variable: str
    consequent_label: str


@dataclass(frozen=True)
class RuleBase:
    rules: tuple[Rule, ...]
    source_hash: str

    def __post_init__(self) -> None:
        if not self.rules:
            raise ValueError("rule base must contain at least one rule")

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)


@dataclass(frozen=True)
class Diagnostic:
    """Parser or validator finding; errors block activation, warnings do not."""

    severity: str
    message: str
    line: int = 0
    column: int = 0
    rule_id: int | None = None

    def __post_init__(self) -> None:
        if self.severity not in ("error", "warning"):
            raise ValueError(f"unknown severity {self.severity!r}")

    def __str__(self) -> str:
        where = f"{self.line}:{self.column}" if self.line else "-"
        rule = f" [rule {self.rule_id}]" if self.rule_id is not None else ""
        return f"{self.severity} {where}{rule}: {self.message}"


def has_errors(diagnostics: list[Diagnostic] | tuple[Diagnostic, ...]) -> bool:
    return any(d.severity == "error" for d in diagnostics)
