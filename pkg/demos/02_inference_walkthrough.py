"""Drive the bare inference engine through the two published escalations.

No scenario or scoring here: crisp criterion scores go in, fired rules and
a defuzzified assistance level come out.
"""

from preceptor.fuzzy import evaluate, infer
from preceptor.rules import load_default_rules
from preceptor.types import CriterionScores

CASES = [
    ("fully appropriate turn", CriterionScores(1.0, 1.0, 1.0, 1.0)),
    ("partially relevant questioning", CriterionScores(1.0, 0.5, 1.0, 1 / 3)),
    ("intervention without consent", CriterionScores(1.0, 1.0, 0.25, 1.0)),
    ("openly unprofessional", CriterionScores(0.0, 1.0, 1.0, 1.0)),
    ("nothing fires", CriterionScores(1.0, 0.5, 1.0, 1.0)),
]


def main() -> None:
    rule_base = load_default_rules()
    for title, scores in CASES:
        result = infer(rule_base, scores)
        decision = evaluate(rule_base, scores)
        print(f"{title}")
        print(f"  inputs: {scores.as_dict()}")
        if result.fired:
            for rule_id, strength in result.fired:
                consequent = rule_base.rules[rule_id - 1].consequent_label
                print(f"  rule {rule_id:2d} fires at {strength:.3f} -> {consequent}")
        else:
            print("  no rule fires; default applies")
        print(f"  aggregated set: {result.output_set.as_dict()}")
        print(
            f"  crisp={decision.crisp:.4f}  label={decision.label}  "
            f"intervene={decision.intervene}"
        )
        print()


if __name__ == "__main__":
    main()
