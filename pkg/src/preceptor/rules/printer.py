"""Canonical text form for rule bases: fully parenthesized, one rule per line."""

from __future__ import annotations

from typing import Iterable

from .model import And, Atom, Node, Or, Rule


def _label_text(label: str) -> str:
    if label and all(ch.isalnum() or ch == "_" for ch in label) and not label[0].isdigit():
        return label
    return f'"{label}"'


def format_expression(node: Node) -> str:
    """Expression text; composite nodes carry their own parentheses."""
    if isinstance(node, Atom):
        return f"{node.variable} IS {_label_text(node.label)}"
    joiner = " AND " if isinstance(node, And) else " OR "
    return "(" + joiner.join(format_expression(child) for child in node.children) + ")"


def format_rule(rule: Rule) -> str:
    return (
        f"IF {format_expression(rule.antecedent)} "
        f"THEN {rule.consequent_variable} IS {_label_text(rule.consequent_label)}"
    )


def pretty_print(rules: Iterable[Rule]) -> str:
    """One rule per line, LF endings, trailing newline."""
    return "".join(format_rule(rule) + "\n" for rule in rules)
