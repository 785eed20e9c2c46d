"""Entanglement quantities and the error-tolerance machinery.

Concentratable entanglement comes out of a full per-site test as
1 - P(all-zero controls); for a pure state it equals one minus the
average purity over all site subsets.  The odd-parity probability of
the same test feeds a class-ratio correction and a discard rule for
overly mixed or unequal inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hilbert import PureState, subset_overlap
from .swaptest import ControlDistribution


@dataclass(frozen=True)
class ToleranceConfig:
    """Relative CE error tolerance and the class ratio it divides by."""

    tol: float
    r_class: float = 0.5
    class_label: str = "custom"

    def __post_init__(self):
        if not 0 < self.tol <= 1:
            raise ValueError("tolerance must lie in (0, 1]")
        if self.r_class <= 0:
            raise ValueError("class ratio must be positive")

    @classmethod
    def for_ghz(cls, n: int, tol: float) -> "ToleranceConfig":
        return cls(tol, ratio_r("ghz", n), "GHZ")

    @classmethod
    def for_w(cls, tol: float) -> "ToleranceConfig":
        return cls(tol, ratio_r("w"), "W")

    @classmethod
    def conservative(cls, tol: float) -> "ToleranceConfig":
        """Fallback for unknown classes: the larger named class value,
        which over-corrects CE downward rather than inflating it."""
        return cls(tol, 0.5, "custom")


@dataclass(frozen=True)
class ToleranceVerdict:
    p_odd: float
    bound: float
    violated: bool
    expected_repeats_to_violation: float


def concentratable_from_distribution(dist: ControlDistribution) -> float:
    """1 - P(all-zero control string), for a full per-site test."""
    return 1.0 - dist.p_all_zero


def concentratable_from_purities(psi: PureState) -> float:
    """1 - 2^{-n} * sum of marginal purities over all site subsets
    (empty set and full set count 1 for a pure state)."""
    n = psi.layout.n_sites
    total = 0.0
    for mask in range(2**n):
        sites = [s for s in range(n) if mask >> s & 1]
        total += subset_overlap(psi, psi, sites)
    return 1.0 - total / 2**n


def ratio_r(class_label: str, n: int | None = None) -> float:
    """Class constant linking the CE error to the odd-parity probability."""
    label = class_label.lower()
    if label == "ghz":
        if n is None or n < 2:
            raise ValueError("GHZ ratio needs the qubit count n >= 2")
        return 2.0 / 2**n
    if label == "w":
        return 0.5
    raise ValueError(f"no ratio defined for class {class_label!r}")


def ratio_r_empirical(ce_err: float, p_odd: float) -> float:
    """Measured CE inflation divided by the odd-parity probability."""
    if p_odd == 0:
        raise ZeroDivisionError("empirical ratio undefined at p_odd = 0")
    return ce_err / p_odd


def tolerance_check(dist: ControlDistribution, ce_estimate: float,
                    config: ToleranceConfig) -> ToleranceVerdict:
    """Discard verdict: inputs violate the tolerance when the odd-parity
    probability strictly exceeds (CE / R) * T.  The boundary itself
    still counts as acceptable."""
    if ce_estimate < 0:
        raise ValueError("CE estimate must be nonnegative")
    p_odd = dist.p_odd
    bound = ce_estimate / config.r_class * config.tol
    return ToleranceVerdict(
        p_odd=p_odd,
        bound=bound,
        violated=p_odd > bound,
        expected_repeats_to_violation=math.inf if bound <= 0 else 1.0 / bound,
    )


def ce_error_correction(ce_measured: float, p_odd: float,
                        r_class: float) -> float:
    """Remove the mixedness/inequality inflation from a measured CE."""
    for name, v in (("ce_measured", ce_measured), ("p_odd", p_odd),
                    ("r_class", r_class)):
        if not 0 <= v <= 1:
            raise ValueError(f"{name} must lie in [0, 1], got {v}")
    return min(1.0, max(0.0, ce_measured - r_class * p_odd))


def two_party_failure_flag(dist: ControlDistribution) -> bool:
    """Class-agnostic failure signal for the two-site test: odd parity
    strictly above 1/2 - 1/2^2."""
    if dist.m != 2:
        raise ValueError("two-party flag needs a two-control distribution")
    return dist.p_odd > 0.25
