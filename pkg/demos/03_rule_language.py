"""Tour the rule language: parsing, validation diagnostics, pretty-printing."""

from preceptor.fuzzy import DEFAULT_VARIABLES
from preceptor.rules import (
    default_rules_text,
    parse_rules,
    pretty_print,
    validate,
)

SYNTAX_BROKEN = 'IF MedicalRelevance THEN Assistance IS High\n'

SEMANTICS_BROKEN = """\
IF MedicalRelevance IS "Sorta relevant" THEN Assistance IS Low
IF MedicalRelevance IS Relevant THEN Professionalism IS Appropriate
"""


def main() -> None:
    result = parse_rules(default_rules_text())
    rule_base = result.rule_base
    print(f"default file: {len(rule_base)} rules, hash {rule_base.source_hash[:16]}")
    for diagnostic in validate(rule_base, DEFAULT_VARIABLES):
        print(f"  {diagnostic}")
    print()

    print("canonical form of the first three rules:")
    for line in pretty_print(rule_base.rules[:3]).splitlines():
        print(f"  {line}")
    print()

    print("round-trip: parse(pretty_print(rules)) reproduces the structure:")
    reparsed = parse_rules(pretty_print(rule_base.rules))
    print(f"  structurally identical: {reparsed.rule_base.rules == rule_base.rules}")
    print()

    print("a syntax error, located by line and column:")
    for diagnostic in parse_rules(SYNTAX_BROKEN).diagnostics:
        print(f"  {diagnostic}")
    print()

    print("well-formed rules that fail validation:")
    broken = parse_rules(SEMANTICS_BROKEN)
    for diagnostic in validate(broken.rule_base, DEFAULT_VARIABLES):
        print(f"  {diagnostic}")


if __name__ == "__main__":
    main()
