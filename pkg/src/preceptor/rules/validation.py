"""Rule-base validation against a linguistic-variable registry."""

from __future__ import annotations

from typing import Sequence

from ..fuzzy.variables import LinguisticVariable
from .model import Diagnostic, RuleBase, atoms
from .printer import format_expression


def validate(
    rule_base: RuleBase,
    variables: Sequence[LinguisticVariable],
    output_variable: str = "Assistance",
) -> list[Diagnostic]:
    """Errors for unknown names or misdirected consequents; warnings for duplicates."""
    registry = {var.name: var for var in variables}
    diagnostics: list[Diagnostic] = []
    if output_variable not in registry:
        diagnostics.append(
            Diagnostic("error", f"registry is missing the output variable {output_variable!r}")
        )
        return diagnostics

    for rule in rule_base:
        for atom in atoms(rule.antecedent):
            var = registry.get(atom.variable)
            if var is None:
                diagnostics.append(
                    Diagnostic("error", f"unknown variable {atom.variable!r}", rule_id=rule.id)
                )
                continue
            if atom.variable == output_variable:
                diagnostics.append(
                    Diagnostic(
                        "error",
                        f"antecedent may not reference the output variable {output_variable!r}",
                        rule_id=rule.id,
                    )
                )
                continue
            if atom.label not in var.labels:
                diagnostics.append(
                    Diagnostic(
                        "error",
                        f"variable {atom.variable!r} has no label {atom.label!r}",
                        rule_id=rule.id,
                    )
                )
        if rule.consequent_variable != output_variable:
            diagnostics.append(
                Diagnostic(
                    "error",
                    f"consequent must target the output variable {output_variable!r}, "
                    f"not {rule.consequent_variable!r}",
                    rule_id=rule.id,
                )
            )
        elif rule.consequent_label not in registry[output_variable].labels:
            diagnostics.append(
                Diagnostic(
                    "error",
                    f"output variable has no label {rule.consequent_label!r}",
                    rule_id=rule.id,
                )
            )

    by_antecedent: dict[str, list] = {}
    for rule in rule_base:
        by_antecedent.setdefault(format_expression(rule.antecedent), []).append(rule)
    for text, group in by_antecedent.items():
        if len(group) < 2:
            continue
        consequents = {rule.consequent_label for rule in group}
        ids = ", ".join(str(rule.id) for rule in group)
        if len(consequents) > 1:
            diagnostics.append(
                Diagnostic(
                    "warning",
                    f"rules {ids} share the antecedent {text} with differing consequents; "
                    "aggregation will merge them",
                )
            )
        else:
            diagnostics.append(
                Diagnostic(
                    "warning",
                    f"rules {ids} are identical (antecedent {text}); later rules are shadowed",
                )
            )
    return diagnostics
