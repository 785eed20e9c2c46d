"""Factories for the named qubit and qudit state families.

Purified mixed-state families carry their environment register as site 0
so that every call site can recover the system marginal with
partial_trace(rho, keep=range(1, n_sites)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import (
    PureState,
    SiteLayout,
    concurrence_2q,
    layout,
    qubits,
    tensor,
)

_BELL_VECTORS = {
    "phi_plus": np.array([1, 0, 0, 1], dtype=np.complex128) / math.sqrt(2),
    "phi_minus": np.array([1, 0, 0, -1], dtype=np.complex128) / math.sqrt(2),
    "psi_plus": np.array([0, 1, 1, 0], dtype=np.complex128) / math.sqrt(2),
    "psi_minus": np.array([0, 1, -1, 0], dtype=np.complex128) / math.sqrt(2),
}


def bell(which: str = "phi_plus") -> PureState:
    """One of the four maximally entangled two-qubit states."""
    try:
        vec = _BELL_VECTORS[which]
    except KeyError:
        raise ValueError(
            f"unknown Bell state {which!r}; choose from {sorted(_BELL_VECTORS)}"
        ) from None
    return PureState(qubits(2), vec)


def ghz(n: int) -> PureState:
    """(|0...0> + |1...1>)/sqrt(2) on n qubits."""
    if n < 2:
        raise ValueError("ghz needs n >= 2")
    vec = np.zeros(2**n, dtype=np.complex128)
    vec[0] = vec[-1] = 1 / math.sqrt(2)
    return PureState(qubits(n), vec)


def w(n: int) -> PureState:
    """Equal superposition of the n single-excitation basis states."""
    if n < 2:
        raise ValueError("w needs n >= 2")
    vec = np.zeros(2**n, dtype=np.complex128)
    for k in range(n):
        vec[1 << k] = 1 / math.sqrt(n)
    return PureState(qubits(n), vec)


def ghz_w_mixture(n: int, weight_angle: float) -> PureState:
    """cos(weight)*GHZ_n + sin(weight)*W_n, renormalized.

    GHZ and W are exactly orthogonal for n >= 3, but the renormalization
    is kept explicit so future non-orthogonal mixtures stay correct.
    """
    if n < 3:
        raise ValueError("ghz_w_mixture needs n >= 3")
    vec = (math.cos(weight_angle) * ghz(n).amplitudes
           + math.sin(weight_angle) * w(n).amplitudes)
    return PureState(qubits(n), vec, renormalize=True)


# ---------------------------------------------------------------------------
# purified near-pure families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MixedFamilyParams:
    """Mixedness angle delta and copy-deviation angle epsilon for n qubits."""

    n: int
    delta: float = 0.0
    epsilon: float = 0.0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n >= 2 required")
        if not (math.isfinite(self.delta) and math.isfinite(self.epsilon)):
            raise ValueError("delta and epsilon must be finite")


def mixed_bell_purified(theta: float, delta: float) -> PureState:
    """Bell-like pair entangled with a one-qubit environment (site 0).

    The system marginal has concurrence-squared weight |sin 2*theta|^2
    and purity 1 - 0.5*sin^2(2*theta)*sin^2(2*delta); delta=0 leaves it
    pure.
    """
    a = math.pi / 4 + theta
    even = np.array([1, 0, 0, 1], dtype=np.complex128)   # |00> + |11>
    odd = np.array([0, 1, 1, 0], dtype=np.complex128)    # |01> + |10>
    branch0 = math.cos(a) * even + math.sin(a) * odd
    branch1 = math.sin(a) * even + math.cos(a) * odd
    vec = np.concatenate([
        math.cos(delta) * branch0,
        math.sin(delta) * branch1,
    ]) / math.sqrt(2)
    return PureState(qubits(3), vec)


def mixed_ghz_purified(n: int, delta: float, epsilon: float) -> PureState:
    """GHZ_n entangled with a one-qubit environment, with copy deviation.

    delta tunes the environment coupling (system purity
    1 - 0.5*sin^2(2*delta) at epsilon=0); epsilon rotates the copy so
    two factories at epsilons e1, e2 have fidelity cos^2(e1 - e2).
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    a = math.pi / 4 + delta
    b = math.pi / 4 + epsilon
    d = 2**n
    vec = np.zeros(2 * d, dtype=np.complex128)
    # environment |0>: the system register occupies indices [0, d)
    vec[0] = math.cos(a) * math.cos(b)
    vec[d - 1] = math.sin(a) * math.sin(b)
    # environment |1>: indices [d, 2d)
    vec[d] = math.sin(a) * math.cos(b)
    vec[2 * d - 1] = math.cos(a) * math.sin(b)
    return PureState(SiteLayout((2,) + (2,) * n), vec)


def _w_leg_overlap_shift(n: int, angle: float) -> float:
    """Angle shift whose excitation-leg overlap equals cos(angle).

    The W family's single-excitation legs acquire pairwise environment
    overlap y = 1 - n/(n-1) * sin^2(s) under a raw shift s of the mixing
    angle; inverting y = cos(angle) makes `angle` the parameter the
    family's closed-form probabilities are written in.
    """
    s_sq = (n - 1) / n * (1.0 - math.cos(angle))
    return math.copysign(math.asin(math.sqrt(min(s_sq, 1.0))), angle)


def mixed_w_purified(n: int, delta: float, epsilon: float,
                     symmetrized: bool = False) -> PureState:
    """W_n entangled with a 2^(n-1)-dimensional environment (site 0).

    At delta=epsilon=0 the state is a product whose system marginal is
    W_n exactly.  delta and epsilon are the closed-form parameters: the
    system purity at epsilon=0 is exactly 1 - (n-1)/n * sin^2(delta),
    and twin tests reproduce the family's closed-form probabilities in
    (delta, epsilon) exactly (see _w_leg_overlap_shift for the internal
    angle map).  The first-branch sum coefficient is 1/(n-1); the
    symmetrized=True variant switches it to 1/sqrt(n-1) for comparison.
    The whole vector is renormalized either way (the default
    coefficients are already unit norm).
    """
    return w_purified_raw_angles(n, _w_leg_overlap_shift(n, delta),
                                 _w_leg_overlap_shift(n, epsilon),
                                 symmetrized=symmetrized)


def w_purified_raw_angles(n: int, theta_shift: float, phi_shift: float,
                          symmetrized: bool = False) -> PureState:
    """The W purification with literal shifts of the two construction
    angles from their base arccos(1/sqrt(n))."""
    if n < 3:
        raise ValueError("n >= 3 required")
    base = math.acos(1.0 / math.sqrt(n))
    th = base + theta_shift
    ph = base + phi_shift
    ct, st = math.cos(th), math.sin(th)
    cp, sp = math.cos(ph), math.sin(ph)
    env_dim = 2 ** (n - 1)
    sys_dim = 2**n
    vec = np.zeros(env_dim * sys_dim, dtype=np.complex128)

    def sys_idx(k: int) -> int:
        # single excitation at right-counted position k in {1..n}
        return 1 << (k - 1)

    first_sum_coef = st * sp / (math.sqrt(n - 1) if symmetrized else (n - 1))
    # environment ground branch
    vec[sys_idx(n)] += ct * cp
    for k in range(1, n):
        vec[sys_idx(k)] += first_sum_coef
    # environment single-excitation branches
    inv = 1.0 / math.sqrt(n - 1)
    for j in range(1, n):
        off = (1 << (j - 1)) * sys_dim
        vec[off + sys_idx(j)] += inv * ct * sp
        vec[off + sys_idx(n)] += inv * st * cp
        for l in range(1, n):
            if l != j:
                vec[off + sys_idx(l)] += st * sp / (n - 1)
    return PureState(SiteLayout((env_dim,) + (2,) * n), vec, renormalize=True)


# ---------------------------------------------------------------------------
# qudit seesaw family
# ---------------------------------------------------------------------------

def seesaw_qudit(D: int, n: int, delta: float) -> PureState:
    """Symmetric qudit state with cos/sin weights tilted across the level
    midpoint; delta=0 gives the uniform maximally entangled state.

    Even D splits the levels in half; odd D keeps the middle level at a
    fixed weight and tilts the rest.  delta is the closed-form parameter:
    twin tests against the delta=0 state obey the family's probability
    expressions with fidelity term cos^2(delta) and parity factor
    X = 1 (even D) or (D-1)/D (odd D).  For even D the raw tilt equals
    delta; for odd D the fixed middle level forces a reparametrization
    (see seesaw_raw_tilt).
    """
    return seesaw_qudit_raw_tilt(D, n, seesaw_raw_tilt(D, delta))


def seesaw_raw_tilt(D: int, delta: float) -> float:
    """Raw tilt angle realizing the closed-form parameter delta.

    The tilted state's squared overlap with the delta=0 state must equal
    1 - X*(1 - cos^2 delta); for odd D the untilted middle level makes
    the raw overlap ((D-1) cos t + 1)/D, which this inverts.
    """
    if D < 2:
        raise ValueError("D >= 2 required")
    if D % 2 == 0:
        return delta
    target = 1.0 - (D - 1) / D * math.sin(delta) ** 2
    c = (D * math.sqrt(target) - 1.0) / (D - 1)
    return math.copysign(math.acos(min(1.0, max(-1.0, c))), delta)


def seesaw_qudit_raw_tilt(D: int, n: int, tilt: float) -> PureState:
    """The seesaw state with a literal tilt of the cos/sin weights."""
    if D < 2:
        raise ValueError("D >= 2 required")
    if n < 2:
        raise ValueError("n >= 2 required")
    a = math.pi / 4 + tilt
    if D % 2 == 0:
        lo_end, hi_start, mid_coef = D // 2 - 1, D // 2, 0.0
    else:
        lo_end, hi_start, mid_coef = (D - 1) // 2 - 1, (D - 1) // 2 + 1, 1.0
    lay = SiteLayout((D,) * n)
    vec = np.zeros(lay.total_dim, dtype=np.complex128)

    def diag_idx(j: int) -> int:
        return int(np.ravel_multi_index((j,) * n, lay.dims))

    scale = math.sqrt(2.0 / D)
    for j in range(0, lo_end + 1):
        vec[diag_idx(j)] = scale * math.cos(a)
    if mid_coef:
        vec[diag_idx((D - 1) // 2)] = scale * mid_coef / math.sqrt(2)
    for j in range(hi_start, D):
        vec[diag_idx(j)] = scale * math.sin(a)
    return PureState(lay, vec)


# ---------------------------------------------------------------------------
# four-qubit bipartite probes
# ---------------------------------------------------------------------------

def phi_plus_plus_4(delta: float) -> PureState:
    """Two tilted Bell-like pairs: (12) entangled, (34) entangled, pairs
    mutually separable.  Each pair has concurrence |cos 2*delta|."""
    a = math.pi / 4 + delta
    pair = PureState(qubits(2),
                     [math.cos(a), 0.0, 0.0, math.sin(a)])
    return tensor(pair, pair)


def chi_4(separable_pair: PureState) -> PureState:
    """separable_pair on qubits (1,2) tensored with a Bell pair on (3,4)."""
    if separable_pair.layout.dims != (2, 2):
        raise ValueError("separable_pair must be a two-qubit state")
    if concurrence_2q(separable_pair) >= 1e-10:
        raise ValueError("pair supplied to chi_4 is entangled")
    return tensor(separable_pair, bell("phi_plus"))


# ---------------------------------------------------------------------------
# Haar-random sampling
# ---------------------------------------------------------------------------

class HaarSampler:
    """Reproducible Haar-measure sampler over n-qubit pure states.

    Draws 2^n independent standard complex Gaussians and normalizes,
    which is hypersphere-uniform.  Naively uniform nested angles are not
    Haar; nested_angle_state() exists to build that literal
    parametrization from explicit angles when wanted.
    """

    def __init__(self, n: int, seed: int):
        if n < 1:
            raise ValueError("n >= 1 required")
        self.n = n
        self.seed = int(seed)
        self._rng = np.random.default_rng(np.random.SeedSequence(self.seed))

    def sample(self) -> PureState:
        d = 2**self.n
        z = self._rng.standard_normal(d) + 1j * self._rng.standard_normal(d)
        return PureState(qubits(self.n), z, renormalize=True)

    def spawn(self, worker: int) -> "HaarSampler":
        """Independent sampler for a worker; deterministic in (seed, worker)."""
        child = HaarSampler(self.n, self.seed)
        child._rng = np.random.default_rng(
            np.random.SeedSequence(entropy=self.seed, spawn_key=(worker,))
        )
        return child


def haar_random(sampler: HaarSampler) -> PureState:
    return sampler.sample()


def nested_angle_state(n: int, xis, thetas) -> PureState:
    """State from the nested cos/sin hypersphere parametrization.

    Amplitude k (k < 2^n - 1) is exp(i*xis[k]) * prod(sin(thetas[:k])) *
    cos(thetas[k]); the last amplitude carries the full sine product.
    Needs 2^n phases and 2^n - 1 angles.
    """
    d = 2**n
    xis = np.asarray(xis, dtype=float)
    thetas = np.asarray(thetas, dtype=float)
    if xis.shape != (d,) or thetas.shape != (d - 1,):
        raise ValueError(f"need {d} phases and {d - 1} angles")
    vec = np.zeros(d, dtype=np.complex128)
    sin_running = 1.0
    for k in range(d - 1):
        vec[k] = np.exp(1j * xis[k]) * sin_running * math.cos(thetas[k])
        sin_running *= math.sin(thetas[k])
    vec[d - 1] = np.exp(1j * xis[d - 1]) * sin_running
    return PureState(qubits(n), vec)
