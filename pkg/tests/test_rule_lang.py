from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from preceptor.fuzzy import DEFAULT_VARIABLES
from preceptor.rules import (
    default_rules_text,
    format_rule,
    has_errors,
    parse_rules,
    pretty_print,
    validate,
)
from preceptor.rules.model import And, Atom, Or, Rule


class TestParse:
    def test_or_rule_from_first_table_row(self):
        result = parse_rules(
            "IF Professionalism IS Unprofessional OR EthicalBehavior IS Dangerous "
            'THEN Assistance IS "Very High"'
        )
        assert result.ok
        (rule,) = result.rule_base.rules
        assert isinstance(rule.antecedent, Or)
        assert rule.antecedent.children == (
            Atom("Professionalism", "Unprofessional"),
            Atom("EthicalBehavior", "Dangerous"),
        )
        assert rule.consequent_label == "Very High"

    def test_label_shorthand_expands_on_same_variable(self):
        result = parse_rules(
            'IF EthicalBehavior IS Unsafe OR Dangerous THEN Assistance IS "Very High"'
        )
        (rule,) = result.rule_base.rules
        assert rule.antecedent == Or(
            (Atom("EthicalBehavior", "Unsafe"), Atom("EthicalBehavior", "Dangerous"))
        )

    def test_empty_file_is_an_error(self):
        result = parse_rules("")
        assert not result.ok
        assert any(
            d.severity == "error" and "empty" in d.message for d in result.diagnostics
        )

    def test_comment_only_file_is_empty(self):
        assert not parse_rules("# nothing here\n\n").ok

    def test_and_binds_tighter_than_or(self):
        result = parse_rules(
            "IF A IS X OR B IS Y AND C IS Z THEN Assistance IS Low"
        )
        (rule,) = result.rule_base.rules
        assert rule.antecedent == Or(
            (Atom("A", "X"), And((Atom("B", "Y"), Atom("C", "Z"))))
        )

    def test_parentheses_group(self):
        result = parse_rules(
            "IF (A IS X OR B IS Y) AND C IS Z THEN Assistance IS Low"
        )
        (rule,) = result.rule_base.rules
        assert rule.antecedent == And(
            (Or((Atom("A", "X"), Atom("B", "Y"))), Atom("C", "Z"))
        )

    def test_keywords_case_insensitive(self):
        result = parse_rules("if A is X and B is Y then Assistance is Low")
        (rule,) = result.rule_base.rules
        assert rule.antecedent == And((Atom("A", "X"), Atom("B", "Y")))

    def test_quoted_labels_trimmed(self):
        result = parse_rules('IF A IS " Mostly safe " THEN Assistance IS Low')
        (rule,) = result.rule_base.rules
        assert rule.antecedent == Atom("A", "Mostly safe")

    def test_optional_semicolon(self):
        assert parse_rules("IF A IS X THEN Assistance IS Low;").ok

    def test_syntax_error_has_line_and_column(self):
        result = parse_rules("IF A IS X THEN Assistance IS Low\nIF A X THEN B IS C")
        assert not result.ok
        (error,) = [d for d in result.diagnostics if d.severity == "error"]
        assert error.line == 2
        assert error.column > 0

    def test_unterminated_quote(self):
        result = parse_rules('IF A IS "broken THEN Assistance IS Low')
        assert not result.ok
        assert "unterminated" in result.diagnostics[0].message

    def test_rule_ids_are_file_order(self):
        text = "# comment\nIF A IS X THEN Assistance IS Low\n\nIF B IS Y THEN Assistance IS Low\n"
        result = parse_rules(text)
        assert [rule.id for rule in result.rule_base.rules] == [1, 2]

    def test_parser_continues_past_bad_lines(self):
        text = (
            "IF A IS X THEN Assistance IS Low\n"
            "IF ??? nonsense\n"
            "IF B IS Y THEN Assistance IS Low\n"
        )
        result = parse_rules(text)
        assert not result.ok
        errors = [d for d in result.diagnostics if d.severity == "error"]
        assert len(errors) == 1 and errors[0].line == 2

    @given(st.text(max_size=200))
    @settings(max_examples=200)
    def test_parser_totality(self, text):
        result = parse_rules(text)
        assert result.ok or any(d.severity == "error" for d in result.diagnostics)


class TestPrettyPrint:
    def test_single_atom_without_parentheses(self):
        result = parse_rules("IF A IS X THEN Assistance IS Low")
        assert (
            format_rule(result.rule_base.rules[0])
            == "IF A IS X THEN Assistance IS Low"
        )

    def test_shorthand_printed_expanded(self):
        result = parse_rules(
            'IF EthicalBehavior IS Unsafe OR Dangerous THEN Assistance IS "Very High"'
        )
        assert format_rule(result.rule_base.rules[0]) == (
            "IF (EthicalBehavior IS Unsafe OR EthicalBehavior IS Dangerous) "
            'THEN Assistance IS "Very High"'
        )

    def test_labels_with_spaces_quoted(self):
        result = parse_rules('IF A IS "Mostly safe" THEN Assistance IS Low')
        assert '"Mostly safe"' in format_rule(result.rule_base.rules[0])

    def test_default_file_round_trip(self, rule_base):
        reparsed = parse_rules(pretty_print(rule_base.rules))
        assert reparsed.ok
        assert reparsed.rule_base.rules == rule_base.rules
        assert reparsed.rule_base.source_hash == rule_base.source_hash


def _random_rule(rng: random.Random, rule_id: int, variables) -> Rule:
    def random_atom():
        var = rng.choice(variables[:-1])
        return Atom(var.name, rng.choice(var.labels))

    def random_node(depth: int):
        if depth <= 0 or rng.random() < 0.4:
            return random_atom()
        arity = rng.randint(2, 3)
        children = tuple(random_node(depth - 1) for _ in range(arity))
        return (And if rng.random() < 0.5 else Or)(children)

    out_var = variables[-1]
    return Rule(rule_id, random_node(2), out_var.name, rng.choice(out_var.labels))


def random_rules(seed: int, count: int) -> list[Rule]:
    rng = random.Random(seed)
    return [
        _random_rule(rng, i + 1, list(DEFAULT_VARIABLES))
        for i in range(rng.randint(1, count))
    ]


def test_round_trip_on_random_rule_files():
    for seed in range(200):
        rules = random_rules(seed, 8)
        text = pretty_print(rules)
        result = parse_rules(text)
        assert result.ok, (seed, result.diagnostics)
        assert result.rule_base.rules == tuple(rules), seed


class TestValidate:
    def test_default_file_clean_except_duplicate_warning(self, rule_base):
        diagnostics = validate(rule_base, DEFAULT_VARIABLES)
        assert not has_errors(diagnostics)
        warnings = [d for d in diagnostics if d.severity == "warning"]
        assert len(warnings) == 1
        assert "5, 11" in warnings[0].message

    def test_unknown_label_is_an_error(self):
        result = parse_rules(
            'IF MedicalRelevance IS "Sorta relevant" THEN Assistance IS Low'
        )
        diagnostics = validate(result.rule_base, DEFAULT_VARIABLES)
        assert has_errors(diagnostics)
        assert any("Sorta relevant" in d.message for d in diagnostics)

    def test_consequent_must_target_output_variable(self):
        result = parse_rules(
            "IF MedicalRelevance IS Relevant THEN Professionalism IS Appropriate"
        )
        diagnostics = validate(result.rule_base, DEFAULT_VARIABLES)
        assert has_errors(diagnostics)
        assert any("output variable" in d.message for d in diagnostics)

    def test_unknown_variable_is_an_error(self):
        result = parse_rules("IF Nope IS Relevant THEN Assistance IS Low")
        diagnostics = validate(result.rule_base, DEFAULT_VARIABLES)
        assert has_errors(diagnostics)

    def test_shadowed_identical_rules_warn(self):
        result = parse_rules(
            "IF A IS X THEN Assistance IS Low\nIF A IS X THEN Assistance IS Low"
        )
        diagnostics = validate(result.rule_base, DEFAULT_VARIABLES)
        assert any("shadowed" in d.message for d in diagnostics)

    def test_antecedent_may_not_use_output_variable(self):
        result = parse_rules("IF Assistance IS Low THEN Assistance IS Low")
        diagnostics = validate(result.rule_base, DEFAULT_VARIABLES)
        assert has_errors(diagnostics)


class TestDefaultFileFidelity:
    def test_twelve_rules_matching_the_published_table(self, rule_base):
        assert len(rule_base) == 12
        consequents = [rule.consequent_label for rule in rule_base]
        assert consequents == [
            "Very High",
            "Very High",
            "High",
            "High",
            "Low",
            "Medium",
            "High",
            "Medium",
            "Very High",
            "High",
            "Minimal",
            "Highest",
        ]

    def test_row_atoms(self, rule_base):
        def atom_pairs(rule):
            from preceptor.rules import atoms

            return [(a.variable, a.label) for a in atoms(rule.antecedent)]

        rows = [atom_pairs(rule) for rule in rule_base]
        assert rows[0] == [
            ("Professionalism", "Unprofessional"),
            ("EthicalBehavior", "Dangerous"),
        ]
        assert rows[1] == [
            ("MedicalRelevance", "Irrelevant"),
            ("ContextualDistraction", "Highly distracting"),
        ]
        assert rows[8] == [
            ("EthicalBehavior", "Unsafe"),
            ("EthicalBehavior", "Dangerous"),
        ]
        assert rows[11] == [
            ("Professionalism", "Unprofessional"),
            ("MedicalRelevance", "Irrelevant"),
            ("EthicalBehavior", "Dangerous"),
            ("ContextualDistraction", "Highly distracting"),
        ]
        # Rows 5 and 11 are the documented duplicate pair.
        assert rows[4] == rows[10]

    def test_source_hash_is_stable(self):
        first = parse_rules(default_rules_text())
        second = parse_rules(default_rules_text())
        assert first.rule_base.source_hash == second.rule_base.source_hash
