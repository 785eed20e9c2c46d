"""Truncated Fock-space states and operators for single and two optical modes.

All states live on sites of dimension d_cut (Fock levels 0 .. d_cut-1).
Truncation loses norm, so factories renormalize and record the deficit
1 - <v|v> on the returned state; a deficit above DEFICIT_LIMIT means the
cutoff is too small for the requested parameters and raises CutoffError
unless the caller opts out.

Squeezed states are built by matrix exponentials of the truncated
generators (scipy's scaling-and-squaring expm), not by a Fock series;
the series route exists only as a cross-check, see
squeezed_coherent_series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .hilbert import Operator, PureState, SiteLayout, layout, unitarity_defect

DEFICIT_LIMIT = 1e-3

# Unitarity deviation of a truncated exponential beyond this marks the
# result record with a warning flag.
UNITARITY_WARN = 1e-4


class CutoffError(ValueError):
    """Raised when truncation loses more norm than DEFICIT_LIMIT."""


@dataclass(frozen=True)
class OpticalParams:
    """Coherent amplitude, squeeze magnitude/direction, and cat phase."""

    alpha: complex = 0.0
    r: float = 0.0
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("squeeze magnitude r must be >= 0")

    @property
    def xi(self) -> complex:
        return self.r * np.exp(1j * self.theta)


def default_cutoff(alpha: complex = 0.0, r: float = 0.0) -> int:
    """Cutoff heuristic: 60 covers |alpha| <= 2 with r <= 1, 80 covers
    r <= 1.5; beyond that scale with the mean photon number."""
    need = abs(alpha) ** 2 + math.sinh(max(r, 0.0)) ** 2
    if r <= 1.0 and abs(alpha) <= 2.0:
        return 60
    if r <= 1.5 and abs(alpha) <= 2.0:
        return 80
    return max(80, int(need + 8 * math.sqrt(need) + 20))


def _single(d_cut: int) -> SiteLayout:
    return layout(d_cut)


def annihilation(d_cut: int) -> Operator:
    m = np.zeros((d_cut, d_cut), dtype=np.complex128)
    for n in range(1, d_cut):
        m[n - 1, n] = math.sqrt(n)
    return Operator(_single(d_cut), m)


def creation(d_cut: int) -> Operator:
    return annihilation(d_cut).dagger()


def number(d_cut: int) -> Operator:
    return Operator(_single(d_cut), np.diag(np.arange(d_cut, dtype=np.complex128)))


def vacuum(d_cut: int) -> PureState:
    vec = np.zeros(d_cut, dtype=np.complex128)
    vec[0] = 1.0
    return PureState(_single(d_cut), vec)


# ---------------------------------------------------------------------------
# coherent states
# ---------------------------------------------------------------------------

def coherent_amplitudes(alpha: complex, d_cut: int) -> np.ndarray:
    """Truncated, unnormalized coefficients exp(-|a|^2/2) a^n / sqrt(n!)."""
    n = np.arange(d_cut)
    log_mag = -abs(alpha) ** 2 / 2 + n * np.log(abs(alpha)) - 0.5 * gammaln(n + 1) \
        if alpha != 0 else np.where(n == 0, 0.0, -np.inf)
    phase = np.exp(1j * n * np.angle(alpha)) if alpha != 0 else np.ones(d_cut)
    return np.exp(log_mag) * phase


def coherent(alpha: complex, d_cut: int,
             allow_deficit: bool = False) -> PureState:
    """Truncated coherent state; Poissonian photon-number weights."""
    vec = coherent_amplitudes(alpha, d_cut)
    deficit = 1.0 - float(np.vdot(vec, vec).real)
    if deficit > DEFICIT_LIMIT and not allow_deficit:
        raise CutoffError(
            f"norm deficit {deficit:.2e} at d_cut={d_cut} for alpha={alpha}"
        )
    return PureState(_single(d_cut), vec, renormalize=True)


def coherent_overlap_analytic(alpha: complex, beta: complex) -> complex:
    """<alpha|beta> = exp(-|a|^2/2 - |b|^2/2 + conj(a)*b)."""
    return complex(np.exp(-abs(alpha) ** 2 / 2 - abs(beta) ** 2 / 2
                          + np.conj(alpha) * beta))


# ---------------------------------------------------------------------------
# displacement and squeezing
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def _displacement_matrix(re: float, im: float, d_cut: int) -> np.ndarray:
    a = annihilation(d_cut).matrix
    alpha = complex(re, im)
    gen = alpha * a.conj().T - np.conj(alpha) * a
    m = expm(gen)
    m.flags.writeable = False
    return m


def displacement(alpha: complex, d_cut: int) -> Operator:
    alpha = complex(alpha)
    return Operator(_single(d_cut),
                    _displacement_matrix(alpha.real, alpha.imag, d_cut))


@lru_cache(maxsize=256)
def _squeeze_matrix(r: float, theta: float, d_cut: int) -> np.ndarray:
    a = annihilation(d_cut).matrix
    xi = r * np.exp(1j * theta)
    a2 = a @ a
    gen = 0.5 * (np.conj(xi) * a2 - xi * a2.conj().T)
    m = expm(gen)
    m.flags.writeable = False
    return m


def squeeze_operator(xi: complex, d_cut: int) -> Operator:
    xi = complex(xi)
    return Operator(_single(d_cut),
                    _squeeze_matrix(abs(xi), float(np.angle(xi)), d_cut))


@lru_cache(maxsize=64)
def _two_mode_squeeze_matrix(r: float, theta: float, d_cut: int) -> np.ndarray:
    a = annihilation(d_cut).matrix
    eye = np.eye(d_cut)
    ab = np.kron(a, eye) @ np.kron(eye, a)
    xi = r * np.exp(1j * theta)
    gen = np.conj(xi) * ab - xi * ab.conj().T
    m = expm(gen)
    m.flags.writeable = False
    return m


def two_mode_squeeze_operator(xi: complex, d_cut: int) -> Operator:
    xi = complex(xi)
    return Operator(layout(d_cut, d_cut),
                    _two_mode_squeeze_matrix(abs(xi), float(np.angle(xi)), d_cut))


def squeezed_coherent(alpha: complex, xi: complex, d_cut: int,
                      allow_deficit: bool = False) -> PureState:
    """D(alpha) S(xi) |0> with truncated operators."""
    vec = squeeze_operator(xi, d_cut).matrix[:, 0]
    vec = displacement(alpha, d_cut).matrix @ vec
    deficit = 1.0 - float(np.vdot(vec, vec).real)
    if deficit > DEFICIT_LIMIT and not allow_deficit:
        raise CutoffError(
            f"norm deficit {deficit:.2e} at d_cut={d_cut} "
            f"(alpha={alpha}, xi={xi})"
        )
    return PureState(_single(d_cut), vec, renormalize=True)


def squeezed_coherent_series(alpha: complex, xi: complex, d_cut: int) -> PureState:
    """Fock-series route to the same state, kept as a cross-check.

    Uses the Hermite-polynomial expansion with the prefactor multiplying
    the sum (the only reading that is a valid state).  Not defined at
    r = 0, where it falls back to the coherent series.
    """
    xi = complex(xi)
    r, theta = abs(xi), float(np.angle(xi))
    if r == 0:
        return coherent(alpha, d_cut)
    n = np.arange(d_cut)
    tanh_r = math.tanh(r)
    gamma = alpha * math.cosh(r) + np.conj(alpha) * np.exp(1j * theta) * math.sinh(r)
    # The n/2-th power of the complex prefactor and the Hermite argument
    # must share one branch of e^{i theta/2}; fix it explicitly (the
    # combination is invariant under flipping that branch).
    u = np.exp(0.5j * theta)
    arg = gamma / (u * math.sqrt(math.sinh(2 * r)))
    # H_n(z) for complex z by the three-term recurrence.
    h = np.zeros(d_cut, dtype=np.complex128)
    h[0] = 1.0
    if d_cut > 1:
        h[1] = 2 * arg
    for k in range(2, d_cut):
        h[k] = 2 * arg * h[k - 1] - 2 * (k - 1) * h[k - 2]
    half_fact = u**n * np.exp(0.5 * n * math.log(0.5 * tanh_r)
                              - 0.5 * gammaln(n + 1))
    pref = (1 / math.sqrt(math.cosh(r))) * np.exp(
        -(abs(alpha) ** 2 + np.conj(alpha) ** 2 * np.exp(1j * theta) * tanh_r) / 2
    )
    vec = pref * half_fact * h
    return PureState(_single(d_cut), vec, renormalize=True)


def mean_photon_number(psi: PureState) -> float:
    n = np.arange(psi.layout.total_dim)
    return float(np.sum(n * np.abs(psi.amplitudes) ** 2))


# ---------------------------------------------------------------------------
# cat states
# ---------------------------------------------------------------------------

def cat(alpha: complex, phi: float, d_cut: int) -> PureState:
    """N(|alpha> + e^{i phi} |-alpha>), numerically normalized."""
    vec = coherent_amplitudes(alpha, d_cut) \
        + np.exp(1j * phi) * coherent_amplitudes(-alpha, d_cut)
    if float(np.vdot(vec, vec).real) < 1e-12:
        raise ValueError("zero vector: odd superposition of identical states")
    return PureState(_single(d_cut), vec, renormalize=True)


def cat_norm_analytic(alpha: float, phi: float) -> float:
    """[2 + 2 exp(-2 alpha^2) cos(phi)]^{-1/2} for real alpha."""
    return (2 + 2 * math.exp(-2 * alpha**2) * math.cos(phi)) ** -0.5


def squeezed_cat(alpha: complex, xi: complex, phi: float, d_cut: int) -> PureState:
    """N(|alpha,xi> + e^{i phi} |-alpha,xi>), numerically normalized."""
    plus = squeezed_coherent(alpha, xi, d_cut, allow_deficit=True)
    minus = squeezed_coherent(-alpha, xi, d_cut, allow_deficit=True)
    vec = plus.amplitudes + np.exp(1j * phi) * minus.amplitudes
    if float(np.vdot(vec, vec).real) < 1e-12:
        raise ValueError("zero vector: odd superposition of identical states")
    return PureState(_single(d_cut), vec, renormalize=True)


# ---------------------------------------------------------------------------
# two-mode entangled families
# ---------------------------------------------------------------------------

def ecs_general(amplitudes, alpha: complex, d_cut: int) -> PureState:
    """Normalized A++|a,a> + A+-|a,-a> + A-+|-a,a> + A--|-a,-a>."""
    app, apm, amp, amm = (complex(x) for x in amplitudes)
    if app == apm == amp == amm == 0:
        raise ValueError("at least one amplitude must be nonzero")
    plus = coherent(alpha, d_cut, allow_deficit=True).amplitudes
    minus = coherent(-alpha, d_cut, allow_deficit=True).amplitudes
    vec = (app * np.kron(plus, plus) + apm * np.kron(plus, minus)
           + amp * np.kron(minus, plus) + amm * np.kron(minus, minus))
    if float(np.vdot(vec, vec).real) < 1e-14:
        raise ValueError("amplitudes cancel to the zero vector at this alpha")
    return PureState(layout(d_cut, d_cut), vec, renormalize=True)


def ecs_plus(alpha: complex, d_cut: int) -> PureState:
    """N(|alpha,-alpha> + |-alpha,alpha>)."""
    return ecs_general((0, 1, 1, 0), alpha, d_cut)


def ecvs(alpha: complex, d_cut: int) -> PureState:
    """N(|alpha>|0> + |0>|alpha>)."""
    c = coherent(alpha, d_cut, allow_deficit=True).amplitudes
    v = vacuum(d_cut).amplitudes
    vec = np.kron(c, v) + np.kron(v, c)
    return PureState(layout(d_cut, d_cut), vec, renormalize=True)


def ecs_norm_constant(amplitudes, alpha: complex) -> float:
    """Exact normalization constant N of the two-mode superposition,
    from the analytic Gram matrix of |alpha> and |-alpha>."""
    amps = np.array([complex(x) for x in amplitudes])
    if not np.any(amps):
        raise ValueError("at least one amplitude must be nonzero")
    g = np.array([
        [1.0, coherent_overlap_analytic(alpha, -alpha)],
        [np.conj(coherent_overlap_analytic(alpha, -alpha)), 1.0],
    ])
    gram2 = np.kron(g, g)
    norm_sq = float((amps.conj() @ gram2 @ amps).real)
    if norm_sq < 1e-300:
        raise ValueError("amplitudes cancel to the zero vector at this alpha")
    return norm_sq ** -0.5


def ecs_concurrence_analogue(amplitudes, alpha: complex) -> float:
    """2 N^2 |A++ A-- - A+- A-+| with N the exact normalization."""
    app, apm, amp, amm = (complex(x) for x in amplitudes)
    n = ecs_norm_constant(amplitudes, alpha)
    return float(2 * n**2 * abs(app * amm - apm * amp))


# ---------------------------------------------------------------------------
# qudit approximations
# ---------------------------------------------------------------------------

def ecs_qudit_coefficients(alpha: complex, D: int) -> np.ndarray:
    """Literal finite-sum coefficients of the even-parity two-mode
    coherent superposition in a D-level basis (unnormalized)."""
    if D < 2:
        raise ValueError("D >= 2 required")
    c = coherent_amplitudes(alpha, D) * math.exp(abs(alpha) ** 2 / 2)
    grid = np.outer(c, c) * math.exp(-abs(alpha) ** 2) * 2.0
    j = np.arange(D)
    parity = ((j[:, None] + j[None, :]) % 2 == 0)
    return np.where(parity, grid, 0.0)


def ecs_qudit_norm_literal(alpha: complex, D: int) -> float:
    """Norm of the literal coefficient grid (the untruncated value is
    sqrt(2 + 2 exp(-4|alpha|^2)), not 1)."""
    g = ecs_qudit_coefficients(alpha, D)
    return float(np.sqrt(np.sum(np.abs(g) ** 2)))


def ecs_qudit_norm(alpha: complex, D: int) -> float:
    """Truncation-retained fraction of the state's norm: the literal
    D-level norm over its infinite-level value.  Stays ~1 while D covers
    the photon-number support and decays once alpha outruns D, which is
    what the (D, alpha) heatmap is for."""
    exact_sq = 2.0 * (1.0 + math.exp(-4 * abs(alpha) ** 2))
    return ecs_qudit_norm_literal(alpha, D) / math.sqrt(exact_sq)


def ecs_qudit_approx(alpha: complex, D: int,
                     allow_deficit: bool = False) -> PureState:
    grid = ecs_qudit_coefficients(alpha, D)
    deficit = 1.0 - ecs_qudit_norm(alpha, D) ** 2
    if deficit > DEFICIT_LIMIT and not allow_deficit:
        raise CutoffError(
            f"norm deficit {deficit:.2e}: D={D} too small for alpha={alpha}"
        )
    state = PureState(layout(D, D), grid.reshape(-1), renormalize=True)
    # record the truncation-lost fraction, not the raw literal norm
    # surplus (the literal sum is not unit-normalized even untruncated)
    state.norm_deficit = deficit
    return state


def tmsv_qudit_coefficients(r: float, theta: float, D: int) -> np.ndarray:
    """Diagonal Fock-pair coefficients (-e^{i theta} tanh r)^j / cosh r."""
    if D < 2:
        raise ValueError("D >= 2 required")
    j = np.arange(D)
    return (-np.exp(1j * theta) * math.tanh(r)) ** j / math.cosh(r)


def tmsv_qudit_norm(r: float, D: int) -> float:
    t = math.tanh(r) ** 2
    if t == 0:
        return 1.0
    return math.sqrt((1 - t**D) / (1 - t) / math.cosh(r) ** 2)


def tmsv_qudit(r: float, theta: float, D: int,
               allow_deficit: bool = False) -> PureState:
    """Two-mode squeezed vacuum truncated to D Fock-pair levels."""
    diag = tmsv_qudit_coefficients(r, theta, D)
    deficit = 1.0 - float(np.sum(np.abs(diag) ** 2))
    if deficit > DEFICIT_LIMIT and not allow_deficit:
        raise CutoffError(
            f"norm deficit {deficit:.2e}: D={D} too small for r={r}"
        )
    grid = np.zeros((D, D), dtype=np.complex128)
    np.fill_diagonal(grid, diag)
    return PureState(layout(D, D), grid.reshape(-1), renormalize=True)
