"""Walk through the linguistic variables and their membership geometry.

Each criterion maps a crisp score in [0, 1] to degrees over its ordered
labels; the partitions are uniform triangles, so degrees always sum to 1
and at most two labels are active at once.
"""

from preceptor.fuzzy import DEFAULT_VARIABLES, ETHICAL_BEHAVIOR

WIDTH = 40


def bar(degree: float) -> str:
    return "#" * round(degree * WIDTH)


def main() -> None:
    for var in DEFAULT_VARIABLES:
        centers = ", ".join(f"{label}@{mf.peak:.3g}" for label, mf in zip(var.labels, var.functions))
        print(f"{var.name}: {centers}")
    print()

    print("EthicalBehavior degrees as the score slides from worst to best:")
    for i in range(0, 11):
        x = i / 10
        degrees = ETHICAL_BEHAVIOR.fuzzify(x)
        active = ", ".join(f"{label}={deg:.2f}" for label, deg in degrees.items() if deg > 0)
        print(f"  x={x:.1f}  {active}")
    print()

    print("Membership curves for EthicalBehavior label 'Questionable':")
    mf = ETHICAL_BEHAVIOR.function("Questionable")
    for i in range(0, 21):
        x = i / 20
        print(f"  {x:.2f} |{bar(mf(x))}")

    print()
    print("Degrees sum to 1 everywhere (Ruspini partition):")
    for x in (0.0, 0.31, 0.62, 1.0):
        total = sum(ETHICAL_BEHAVIOR.fuzzify(x).values())
        print(f"  x={x:.2f}  sum={total:.12f}")


if __name__ == "__main__":
    main()
