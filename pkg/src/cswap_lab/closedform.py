"""Closed-form reference expressions for the named state families.

Every entanglement-test output the library computes numerically has a
reference expression here when one exists, so experiments can emit
engine and reference columns side by side and tests can pin exact
agreement.  Functions returning "candidate" forms are known NOT to
match the brute-force engines; they are kept so comparison reports can
quantify the gap (see the relevant experiment outputs).
"""

from __future__ import annotations

import math

import numpy as np


# ---------------------------------------------------------------------------
# near-pure qubit families
# ---------------------------------------------------------------------------

def bell_pair_concurrence(theta: float) -> float:
    return abs(math.sin(2 * theta))


def bell_pair_purity(theta: float, delta: float) -> float:
    c2 = bell_pair_concurrence(theta)
    return 1 - 0.5 * c2**2 * math.sin(2 * delta) ** 2


def bell_pair_probs(theta: float, delta: float) -> dict[str, float]:
    """Twin-input distribution for the mixed Bell-like pair."""
    c2 = bell_pair_concurrence(theta)
    gamma = bell_pair_purity(theta, delta)
    return {
        "p00": (1 - 0.25 * c2**2) - 0.25 * (1 - gamma),
        "p_odd": 0.5 * (1 - gamma),
        "p11": 0.25 * c2**2 - 0.25 * (1 - gamma),
    }


def ghz_purity(delta: float) -> float:
    return 1 - 0.5 * math.sin(2 * delta) ** 2


def ghz_fidelity(epsilon: float) -> float:
    return math.cos(epsilon) ** 2


def ghz_family_probs(n: int, delta: float, epsilon: float) -> dict[str, float]:
    x = 1 - math.cos(2 * delta) ** 2 * math.cos(2 * epsilon)
    return {
        "p_all_zero": (0.5 + 2.0**-n) - x / 2 ** (n + 1),
        "p_odd": x / 4,
        "p_even_nonzero": (0.5 - 2.0**-n) - (2 ** (n - 1) - 1) / 2 ** (n + 1) * x,
    }


def w_purity_exact(n: int, delta: float) -> float:
    return 1 - (n - 1) / n * math.sin(delta) ** 2


def w_purity_approx(n: int, delta: float) -> float:
    return math.cos(n * delta / (n + 2)) ** 2


def w_fidelity(n: int, epsilon: float) -> float:
    """Purified-state fidelity consistent with the W closed forms (the
    commonly quoted cos^2(epsilon) contradicts them; see notes in
    qstates.mixed_w_purified)."""
    return 1 - (n - 1) / n * (1 - math.cos(epsilon))


def w_family_probs(n: int, delta: float, epsilon: float) -> dict[str, float]:
    x = 1 - math.cos(delta) ** 2 * math.cos(epsilon)
    return {
        "p_all_zero": (0.5 + 1 / (2 * n)) - (n - 1) / (4 * n) * x,
        "p_odd": (n - 1) / (2 * n) * x,
        "p_even_nonzero": (0.5 - 1 / (2 * n)) - (n - 1) / (4 * n) * x,
    }


def pure_ghz_p_all_zero(n: int) -> float:
    return 0.5 + 2.0**-n


def pure_w_p_all_zero(n: int) -> float:
    return 0.5 + 1 / (2 * n)


def ghz_ce(n: int) -> float:
    return 0.5 - 2.0**-n


def w_ce(n: int) -> float:
    return 0.5 - 1 / (2 * n)


def ghz_w_mixture_p_all_ones(delta: float) -> float:
    """Four-qubit equal GHZ/W mixture probed against its delta-tilted
    copy: the all-ones control probability."""
    return (1 - math.sin(2 * delta)) / 64


# ---------------------------------------------------------------------------
# qudit seesaw family
# ---------------------------------------------------------------------------

def seesaw_parity_factor(D: int) -> float:
    return 1.0 if D % 2 == 0 else (D - 1) / D


def seesaw_fidelity(D: int, delta: float) -> float:
    """Squared overlap of the tilted state with its delta=0 partner."""
    return 1 - seesaw_parity_factor(D) * math.sin(delta) ** 2


def seesaw_family_probs(D: int, n: int, delta: float) -> dict[str, float]:
    x_fac = seesaw_parity_factor(D)
    one_minus_f = math.sin(delta) ** 2
    return {
        "p_all_zero": 2 / D * (0.5 + (D - 1) / 2**n) - x_fac * one_minus_f / 2**n,
        "p_odd": x_fac * 0.5 * one_minus_f,
        "p_even_nonzero": 4 * (0.5 - 2.0**-n) * (0.5 - 1 / (2 * D))
        - x_fac * (0.5 - 2.0**-n) * one_minus_f,
    }


def qudit_pair_signature(D: int) -> float:
    """P(11) for twin maximally entangled two-qudit inputs."""
    return 0.5 - 1 / (2 * D)


# ---------------------------------------------------------------------------
# bipartite / two-party tables (probe state: two tilted Bell-like pairs)
# ---------------------------------------------------------------------------

def pair_table_quoted(c2: float) -> dict[str, tuple[float, float, float, float]]:
    """The quoted bipartite-cut table as functions of the pair
    concurrence.  Columns 13-24 and 3-124 only agree with the engines at
    c2 in {0, 1}; see pair_table_oracle."""
    c = c2**2
    return {
        "12-34": (1.0, 0.0, 0.0, 0.0),
        "13-24": (1 - 3 / 8 * c, 0.0, 0.0, 3 / 8 * c),
        "3-124": (1 - 0.5 * c, c / 8, c / 4, c / 8),
    }


def pair_table_oracle(c2: float) -> dict[str, tuple[float, float, float, float]]:
    """Engine-exact bipartite-cut values for the same probe state."""
    c = c2**2
    g1 = 1 - 0.5 * c              # one-qubit marginal purity
    g2 = g1 * g1                  # cross-pair two-qubit marginal purity
    return {
        "12-34": (1.0, 0.0, 0.0, 0.0),
        "13-24": (0.5 + 0.5 * g2, 0.0, 0.0, 0.5 - 0.5 * g2),
        "3-124": (1 - 0.25 * c, 0.0, 0.0, 0.25 * c),
    }


TWO_PARTY_TABLE_CHI4 = {
    (1, 2): (1.0, 0.0, 0.0, 0.0),
    (1, 3): (0.75, 0.25, 0.0, 0.0),
    (2, 3): (0.75, 0.25, 0.0, 0.0),
    (3, 4): (0.75, 0.0, 0.0, 0.25),
}

TWO_PARTY_TABLE_PAIRS = {
    (1, 2): (0.75, 0.0, 0.0, 0.25),
    (1, 3): (9 / 16, 3 / 16, 3 / 16, 1 / 16),
    (2, 3): (9 / 16, 3 / 16, 3 / 16, 1 / 16),
    (3, 4): (0.75, 0.0, 0.0, 0.25),
}


# ---------------------------------------------------------------------------
# tolerance bounds and expected repeat counts
# ---------------------------------------------------------------------------

def bell_pair_odd_bound(c2: float, gamma: float, tol: float) -> float:
    return 0.5 * (c2**2 + 1 - gamma) * tol


def ghz_odd_bound(n: int, fid: float, gamma: float, tol: float) -> float:
    return 0.5 * (2 ** (n - 1) - 1 + fid + gamma - 2 * gamma * fid) * tol


def w_odd_bound(n: int, delta: float, epsilon: float, tol: float) -> float:
    return (n - 1) / (2 * n) * (3 - math.cos(delta) ** 2 * math.cos(epsilon)) * tol


def expected_repeats(bound: float) -> float:
    return math.inf if bound <= 0 else 1.0 / bound


# ---------------------------------------------------------------------------
# optical signatures
# ---------------------------------------------------------------------------

def ecvs_signature_candidate(alpha: float) -> float:
    """Candidate ECVS closed form 1/(8(sech(|a|^2)+1)).  Gives 1/16 at
    alpha=0 where the state is the separable |00> (true signature 0) and
    tends to 1/8 where the engines give 1/4; emitted only for the
    comparison report."""
    return 1 / (8 * (1 / math.cosh(abs(alpha) ** 2) + 1))


def ecs_plus_signature_candidate(alpha: float) -> float:
    """Candidate closed form for the odd two-mode coherent superposition;
    same caveats as ecvs_signature_candidate."""
    return 1 / (8 * (1 / math.cosh(4 * abs(alpha) ** 2) + 1))


def tmsv_signature_sum(r: float, D: int, normalized: bool = True) -> float:
    """P(11) for twin truncated two-mode squeezed vacuum inputs as the
    double sum over distinct Fock pairs; closed geometric form.

    The raw sum is quartic in the unnormalized coefficients, so the
    normalized version divides by the squared norm twice.
    """
    t = math.tanh(r) ** 2
    if t == 0:
        return 0.0
    s1 = (1 - t**D) / (1 - t)
    s2 = (1 - t ** (2 * D)) / (1 - t**2)
    raw = 0.5 * (1 - t) ** 2 * (s1**2 - s2)
    if not normalized:
        return raw
    norm_sq = (1 - t) * s1
    return raw / norm_sq**2


def tmsv_signature_sum_literal(r: float, D: int) -> float:
    """Same quantity as an explicit double sum, kept as the slow
    independent route for tests."""
    t = math.tanh(r) ** 2
    total = 0.0
    for j in range(D):
        for k in range(D):
            if j != k:
                total += t ** (j + k)
    return 0.5 * total / math.cosh(r) ** 4


# ---------------------------------------------------------------------------
# Haar-average references
# ---------------------------------------------------------------------------

def haar_mean_marginal_purity(d_a: int, d_b: int) -> float:
    """Mean subsystem purity of a Haar-random pure state on d_a x d_b."""
    return (d_a + d_b) / (d_a * d_b + 1)


def haar_mean_ce(n: int) -> float:
    """Mean concentratable entanglement of Haar-random n-qubit states,
    from the subset-purity average."""
    total = 0.0
    for k in range(n + 1):
        d_a = 2**k
        d_b = 2 ** (n - k)
        mean_purity = 1.0 if k in (0, n) else haar_mean_marginal_purity(d_a, d_b)
        total += math.comb(n, k) * mean_purity
    return 1 - total / 2**n
