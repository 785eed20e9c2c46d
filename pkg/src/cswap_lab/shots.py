"""Finite-sample simulation of the tests.

Sampling uses the counter-based Philox generator so shot records are
bit-reproducible across platforms for a given (distribution, n_shots,
seed) triple.  The sequential monitor applies the tolerance discard
rule to a running stream of control outcomes, declaring a violation
only once a one-sided 95% lower confidence bound on the odd-parity rate
clears the bound (a point estimate alone would discard too eagerly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .measures import ToleranceConfig
from .swaptest import ControlDistribution

# One-sided 95% and two-sided 95% normal quantiles.
_Z_ONE_SIDED = 1.6448536269514722
_Z_TWO_SIDED = 1.959963984540054


@dataclass(frozen=True)
class ShotRecord:
    counts: dict[str, int]
    n_shots: int
    seed: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.n_shots:
            raise ValueError("counts must sum to n_shots")


def sample(dist: ControlDistribution, n_shots: int, seed: int) -> ShotRecord:
    """Multinomial draw from an exact distribution; deterministic in seed."""
    if n_shots < 1:
        raise ValueError("n_shots >= 1 required")
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    outcomes = [b for b, _ in dist.items()]
    draws = rng.multinomial(n_shots, dist.probs / dist.probs.sum())
    return ShotRecord({b: int(c) for b, c in zip(outcomes, draws)},
                      n_shots, int(seed))


def wilson_interval(k: int, n: int, z: float = _Z_TWO_SIDED) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    The k=0 lower and k=n upper edges are exactly 0 and 1; computing
    them from the formula leaves ~1e-18 of rounding noise, which would
    let a zero-count stream "exceed" a zero bound.
    """
    if n <= 0:
        return (0.0, 1.0)
    phat = k / n
    denom = 1 + z**2 / n
    center = (phat + z**2 / (2 * n)) / denom
    margin = z / denom * math.sqrt(phat * (1 - phat) / n + z**2 / (4 * n**2))
    lo = 0.0 if k == 0 else max(0.0, center - margin)
    hi = 1.0 if k == n else min(1.0, center + margin)
    return (lo, hi)


def wilson_lower_bound(k: int, n: int, z: float = _Z_ONE_SIDED) -> float:
    return wilson_interval(k, n, z)[0]


def estimate(record: ShotRecord) -> dict[str, tuple[float, tuple[float, float]]]:
    """Point estimate and 95% Wilson interval per outcome."""
    n = record.n_shots
    return {b: (k / n, wilson_interval(k, n)) for b, k in record.counts.items()}


@dataclass(frozen=True)
class SequentialMonitor:
    """Running discard monitor over a stream of control outcomes.

    Tracks the empirical CE (refreshed every step) and the odd-parity
    count; once violated it stays violated and cannot be stepped.
    """

    config: ToleranceConfig
    n_controls: int
    n_steps: int = 0
    all_zero_count: int = 0
    odd_count: int = 0
    violated: bool = False

    @property
    def ce_estimate(self) -> float:
        if self.n_steps == 0:
            return 0.0
        return 1.0 - self.all_zero_count / self.n_steps

    @property
    def bound(self) -> float:
        return self.ce_estimate / self.config.r_class * self.config.tol

    @property
    def copies_used(self) -> int:
        # each test round consumes one pair of input copies
        return 2 * self.n_steps

    @property
    def ancillas_used(self) -> int:
        return self.n_controls * self.n_steps


def monitor_step(monitor: SequentialMonitor, outcome: str) -> SequentialMonitor:
    """Absorb one control-register outcome and re-evaluate the verdict."""
    if monitor.violated:
        raise RuntimeError("monitor already declared a violation")
    if len(outcome) != monitor.n_controls or set(outcome) - {"0", "1"}:
        raise ValueError(f"bad outcome {outcome!r} for m={monitor.n_controls}")
    n = monitor.n_steps + 1
    zeros = monitor.all_zero_count + (1 if outcome.count("1") == 0 else 0)
    odd = monitor.odd_count + (1 if outcome.count("1") % 2 == 1 else 0)
    updated = replace(monitor, n_steps=n, all_zero_count=zeros, odd_count=odd)
    odd_lower = wilson_lower_bound(odd, n)
    if odd_lower > updated.bound:
        updated = replace(updated, violated=True)
    return updated


def monitor_run(monitor: SequentialMonitor, outcomes) -> SequentialMonitor:
    """Step through outcomes until exhausted or a violation fires."""
    for outcome in outcomes:
        monitor = monitor_step(monitor, outcome)
        if monitor.violated:
            break
    return monitor


def stream_outcomes(dist: ControlDistribution, n_shots: int, seed: int):
    """Deterministic outcome stream matching sample()'s generator."""
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    outcomes = [b for b, _ in dist.items()]
    idx = rng.choice(len(outcomes), size=n_shots, p=dist.probs / dist.probs.sum())
    for i in idx:
        yield outcomes[int(i)]
