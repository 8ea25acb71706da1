"""Textual fuzzy rule language: parse, validate, pretty-print, default asset."""

from __future__ import annotations

from importlib import resources

from .model import And, Atom, Diagnostic, Node, Or, Rule, RuleBase, atoms, has_errors
from .parser import ParseResult, parse_rules
from .printer import format_expression, format_rule, pretty_print
from .validation import validate

DEFAULT_RULES_RESOURCE = "assets/rules/table1.frl"


def default_rules_text() -> str:
    return (
        resources.files("preceptor")
        .joinpath(DEFAULT_RULES_RESOURCE)
        .read_text(encoding="utf-8")
    )


def load_default_rules() -> RuleBase:
    result = parse_rules(default_rules_text())
    if result.rule_base is None:
        raise RuntimeError(f"bundled rule file failed to parse: {result.diagnostics}")
    return result.rule_base


__all__ = [
    "And",
    "Atom",
    "DEFAULT_RULES_RESOURCE",
    "Diagnostic",
    "Node",
    "Or",
    "ParseResult",
    "Rule",
    "RuleBase",
    "atoms",
    "default_rules_text",
    "format_expression",
    "format_rule",
    "has_errors",
    "load_default_rules",
    "parse_rules",
    "pretty_print",
    "validate",
]
