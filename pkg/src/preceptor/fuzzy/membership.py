"""Piecewise-linear membership functions on the unit interval."""

from __future__ import annotations

from dataclasses import dataclass


class DomainError(ValueError):
    """A crisp input fell outside the [0, 1] domain."""


@dataclass(frozen=True)
class MembershipFunction:
    """A trapezoid (left foot, left peak, right peak, right foot) on [0, 1].

    Triangles are the degenerate case left_peak == right_peak. Membership is
    0 outside the feet, 1 on the peak plateau, and linear on the ramps.
    """

    left_foot: float
    left_peak: float
    right_peak: float
    right_foot: float

    def __post_init__(self) -> None:
        points = (self.left_foot, self.left_peak, self.right_peak, self.right_foot)
        if not all(0.0 <= p <= 1.0 for p in points):
            raise ValueError(f"membership parameters must lie in [0, 1]: {points}")
        if not (self.left_foot <= self.left_peak <= self.right_peak <= self.right_foot):
            raise ValueError(f"membership parameters must be non-decreasing: {points}")

    @classmethod
    def triangle(cls, left: float, peak: float, right: float) -> MembershipFunction:
        return cls(left, peak, peak, right)

    @property
    def shape(self) -> str:
        return "triangular" if self.left_peak == self.right_peak else "trapezoidal"

    @property
    def peak(self) -> float:
        """Midpoint of the peak plateau (the peak itself for triangles)."""
        return (self.left_peak + self.right_peak) / 2.0

    def __call__(self, x: float) -> float:
        if not 0.0 <= x <= 1.0:
            raise DomainError(f"crisp value {x!r} outside [0, 1]")
        if x < self.left_foot or x > self.right_foot:
            return 0.0
        if x < self.left_peak:
            return (x - self.left_foot) / (self.left_peak - self.left_foot)
        if x <= self.right_peak:
            return 1.0
        return (self.right_foot - x) / (self.right_foot - self.right_peak)


def membership(mf: MembershipFunction, x: float) -> float:
    """Degree of ``x`` under ``mf``; raises DomainError for x outside [0, 1]."""
    return mf(x)
