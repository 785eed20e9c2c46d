"""Controlled-SWAP test executors.

Two independent engines compute the exact distribution of the control
register:

* cswap_circuit_test simulates the literal circuit (Hadamards, grouped
  controlled swaps, Hadamards) on the joint statevector and reads off
  the ancilla marginal.  Mixed inputs are purified internally.

* swap_expectation_test expands the same distribution in marginal
  overlap traces,
      P(z) = 2^{-m} * sum_T (-1)^{|z & T|} Tr[rho_a^T rho_b^T],
  over subsets T of the control groups, where rho^T is the marginal on
  the union of the groups in T.  It needs no extra dimensions, so it
  scales to large optical cutoffs.

Both are pure functions and must agree entrywise wherever the circuit
engine fits; tests enforce that.

Control bitstrings order bit g as group g's control with group 0
leftmost.  ControlDistribution.relabeled("group_last") flips the
reading for callers that want the opposite convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import optical
from .hilbert import (
    DIM_CAP,
    DensityMatrix,
    PureState,
    SiteLayout,
    State,
    subset_overlap,
    unitarity_defect,
)

# Probabilities this far below zero are float noise and get clamped;
# anything worse means a logic bug and raises.
_NEG_TOL = 1e-12

_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)

CIRCUIT_ENGINE_CAP = 2**20


@dataclass(frozen=True)
class SwapGroupSpec:
    """Disjoint site groups, one control qubit per group."""

    layout: SiteLayout
    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        groups = tuple(tuple(sorted(g)) for g in self.groups)
        if not groups:
            raise ValueError("at least one group required")
        seen: set[int] = set()
        for g in groups:
            if not g:
                raise ValueError("empty group")
            self.layout.validate_sites(g)
            if seen & set(g):
                raise ValueError(f"groups overlap at sites {seen & set(g)}")
            seen |= set(g)
        object.__setattr__(self, "groups", groups)

    @property
    def m(self) -> int:
        return len(self.groups)

    @property
    def covers_all(self) -> bool:
        return sum(len(g) for g in self.groups) == self.layout.n_sites


def per_site_spec(lay: SiteLayout) -> SwapGroupSpec:
    return SwapGroupSpec(lay, tuple((s,) for s in range(lay.n_sites)))


class ControlDistribution:
    """Exact probabilities of every m-bit control outcome."""

    __slots__ = ("m", "probs", "bit_order")

    def __init__(self, m: int, probs: Sequence[float] | dict,
                 bit_order: str = "group_first"):
        if isinstance(probs, dict):
            arr = np.zeros(2**m)
            for key, p in probs.items():
                arr[int(key, 2)] = p
        else:
            arr = np.asarray(probs, dtype=float).copy()
        if arr.shape != (2**m,):
            raise ValueError(f"need {2**m} probabilities for m={m}")
        low = float(arr.min())
        if low < -_NEG_TOL:
            raise ValueError(
                f"probability {low:.3e} below the clamping band; "
                "internal inconsistency"
            )
        arr[arr < 0] = 0.0
        total = float(arr.sum())
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {total}, not 1")
        self.m = m
        self.probs = arr / total
        self.bit_order = bit_order

    def p(self, bitstring: str) -> float:
        if len(bitstring) != self.m or set(bitstring) - {"0", "1"}:
            raise ValueError(f"bad control bitstring {bitstring!r}")
        return float(self.probs[int(bitstring, 2)])

    def items(self):
        for z in range(2**self.m):
            yield format(z, f"0{self.m}b"), float(self.probs[z])

    @property
    def p_all_zero(self) -> float:
        return float(self.probs[0])

    @property
    def p_odd(self) -> float:
        z = np.arange(2**self.m)
        odd = np.array([bin(v).count("1") % 2 == 1 for v in z])
        return float(self.probs[odd].sum())

    @property
    def p_even_nonzero(self) -> float:
        return float(max(0.0, 1.0 - self.p_all_zero - self.p_odd))

    @property
    def parity(self) -> tuple[float, float, float]:
        return (self.p_all_zero, self.p_even_nonzero, self.p_odd)

    def relabeled(self, bit_order: str) -> "ControlDistribution":
        """Same distribution with bitstrings read in the other direction."""
        if bit_order not in ("group_first", "group_last"):
            raise ValueError(f"unknown bit order {bit_order!r}")
        if bit_order == self.bit_order:
            return self
        arr = np.zeros_like(self.probs)
        for z in range(2**self.m):
            rev = int(format(z, f"0{self.m}b")[::-1], 2)
            arr[rev] = self.probs[z]
        return ControlDistribution(self.m, arr, bit_order)

    def __repr__(self):
        body = ", ".join(f"{b}: {p:.6g}" for b, p in self.items())
        return f"ControlDistribution({body})"


def _check_inputs(a: State, b: State, lay: SiteLayout):
    if a.layout.dims != lay.dims or b.layout.dims != lay.dims:
        raise ValueError(
            f"inputs must share the spec layout {lay.dims}; got "
            f"{a.layout.dims} and {b.layout.dims}"
        )


# ---------------------------------------------------------------------------
# expectation engine
# ---------------------------------------------------------------------------

def swap_expectation_test(a: State, b: State,
                          spec: SwapGroupSpec) -> ControlDistribution:
    """Control distribution from marginal overlap traces (no dimension
    doubling)."""
    _check_inputs(a, b, spec.layout)
    m = spec.m
    if m > 16:
        raise ValueError(f"{m} control groups is beyond the 2^m expansion")
    traces = np.empty(2**m)
    for t_mask in range(2**m):
        sites: list[int] = []
        for g in range(m):
            if t_mask >> g & 1:
                sites.extend(spec.groups[g])
        traces[t_mask] = subset_overlap(a, b, sites)
    probs = np.empty(2**m)
    for z in range(2**m):
        signs = np.array([(-1) ** bin(z & t).count("1")
                          for t in range(2**m)], dtype=float)
        probs[z] = signs @ traces / 2**m
    # z here uses bit g = 1 << g; flip to the group-0-leftmost reading.
    ordered = np.empty_like(probs)
    for z in range(2**m):
        rev = int(format(z, f"0{m}b")[::-1], 2)
        ordered[rev] = probs[z]
    return ControlDistribution(m, ordered)


# ---------------------------------------------------------------------------
# circuit engine
# ---------------------------------------------------------------------------

def _purify(state: State) -> tuple[PureState, int]:
    """Return a pure state and the number of leading environment sites
    (0 for already-pure inputs, 1 otherwise)."""
    if isinstance(state, PureState):
        return state, 0
    vals, vecs = np.linalg.eigh(state.matrix)
    keep = vals > 1e-14
    vals, vecs = vals[keep], vecs[:, keep]
    rank = max(2, int(vals.size))
    d = state.layout.total_dim
    amp = np.zeros((rank, d), dtype=np.complex128)
    for k in range(vals.size):
        amp[k] = math.sqrt(float(vals[k])) * vecs[:, k]
    purified = PureState(SiteLayout((rank,) + state.layout.dims),
                         amp.reshape(-1), renormalize=True)
    return purified, 1


def cswap_circuit_test(a: State, b: State,
                       spec: SwapGroupSpec) -> ControlDistribution:
    """Circuit simulation of |a>|b>|0...0> through Hadamards, grouped
    controlled swaps, and Hadamards, returning the exact ancilla
    marginal.

    The joint state is evolved with the controls resolved in the
    computational basis: branch z carries the system registers with
    exactly the groups named by z swapped, and the two Hadamard layers
    become one Walsh transform across branches.  This is the same
    circuit as the one-gate-at-a-time form (_circuit_gate_sequence,
    kept for cross-checks) evaluated in a cheaper order; it shares no
    algebra with the marginal-trace expansion engine.
    """
    _check_inputs(a, b, spec.layout)
    pa, env_a = _purify(a)
    pb, env_b = _purify(b)
    m = spec.m
    d_sys = pa.layout.total_dim * pb.layout.total_dim
    if d_sys * 2**m > DIM_CAP:
        raise ValueError(
            f"joint dimension {d_sys * 2**m} exceeds the engine cap {DIM_CAP}"
        )
    na = pa.layout.n_sites
    joint = np.tensordot(pa.amplitudes, pb.amplitudes, axes=0).reshape(
        pa.layout.dims + pb.layout.dims)
    n_axes = joint.ndim
    branches = np.empty((2**m, d_sys), dtype=np.complex128)
    for z in range(2**m):
        perm = list(range(n_axes))
        for g in range(m):
            if z >> g & 1:
                for s in spec.groups[g]:
                    i = env_a + s            # site s inside register A
                    j = na + env_b + s       # site s inside register B
                    perm[i], perm[j] = perm[j], perm[i]
        branches[z] = np.transpose(joint, perm).reshape(-1)
    # Walsh transform over the control index: rows become the post-
    # Hadamard control amplitudes (factor 2^-m for the two H layers).
    h = 1
    while h < 2**m:
        for i in range(0, 2**m, 2 * h):
            top = branches[i:i + h].copy()
            bot = branches[i + h:i + 2 * h]
            branches[i:i + h] = top + bot
            branches[i + h:i + 2 * h] = top - bot
        h *= 2
    branches /= 2**m
    probs = np.sum(np.abs(branches) ** 2, axis=1)
    # branch index uses bit g = 1 << g; flip to group-0-leftmost labels
    ordered = np.empty_like(probs)
    for z in range(2**m):
        ordered[int(format(z, f"0{m}b")[::-1], 2)] = probs[z]
    return ControlDistribution(m, ordered)


def _circuit_gate_sequence(a: State, b: State,
                           spec: SwapGroupSpec) -> ControlDistribution:
    """One-gate-at-a-time reference circuit: Hadamard each control, swap
    each group's sites conditioned on its control, Hadamard again.  Used
    by tests to pin cswap_circuit_test to the literal gate sequence."""
    _check_inputs(a, b, spec.layout)
    pa, env_a = _purify(a)
    pb, env_b = _purify(b)
    m = spec.m
    total = pa.layout.total_dim * pb.layout.total_dim * 2**m
    if total > DIM_CAP:
        raise ValueError(
            f"joint dimension {total} exceeds the engine cap {DIM_CAP}"
        )
    na = pa.layout.n_sites
    nb = pb.layout.n_sites
    dims = pa.layout.dims + pb.layout.dims + (2,) * m
    psi = np.tensordot(pa.amplitudes, pb.amplitudes, axes=0).reshape(-1)
    ctrl = np.zeros(2**m)
    ctrl[0] = 1.0
    psi = np.tensordot(psi, ctrl, axes=0).reshape(dims)

    def hadamard_all(t: np.ndarray) -> np.ndarray:
        for c in range(m):
            ax = na + nb + c
            t = np.moveaxis(np.tensordot(t, _H, axes=([ax], [1])), -1, ax)
        return t

    psi = hadamard_all(psi)
    for g, group in enumerate(spec.groups):
        ax = na + nb + g
        psi = np.moveaxis(psi, ax, 0)
        perm = list(range(psi.ndim - 1))
        for s in group:
            i = env_a + s            # site s inside register A
            j = na + env_b + s       # site s inside register B
            perm[i], perm[j] = perm[j], perm[i]
        psi = np.stack([psi[0], np.transpose(psi[1], perm)])
        psi = np.moveaxis(psi, 0, ax)
    psi = hadamard_all(psi)
    probs = np.sum(np.abs(psi.reshape(-1, 2**m)) ** 2, axis=0)
    return ControlDistribution(m, probs)


# ---------------------------------------------------------------------------
# named tests
# ---------------------------------------------------------------------------

def equivalence_test(a: State, b: State) -> ControlDistribution:
    """Single-control comparison: P(1) = 1/2 - 1/2 Tr[rho_a rho_b]."""
    if a.layout.dims != b.layout.dims:
        raise ValueError(f"layout mismatch: {a.layout.dims} vs {b.layout.dims}")
    overlap = subset_overlap(a, b, range(a.layout.n_sites))
    p1 = 0.5 - 0.5 * overlap
    return ControlDistribution(1, [1.0 - p1, p1])


def full_entanglement_test(a: State, b: State) -> ControlDistribution:
    """One control per site, all sites covered."""
    if a.layout.dims != b.layout.dims:
        raise ValueError(f"layout mismatch: {a.layout.dims} vs {b.layout.dims}")
    return swap_expectation_test(a, b, per_site_spec(a.layout))


def bipartite_test(a: State, b: State,
                   cut: Iterable[int]) -> ControlDistribution:
    """Two controls: the cut's sites as one group, the complement as the
    other."""
    cut = tuple(sorted(set(cut)))
    lay = a.layout
    lay.validate_sites(cut)
    rest = tuple(s for s in range(lay.n_sites) if s not in cut)
    if not cut or not rest:
        raise ValueError("cut must be a nonempty proper subset of sites")
    spec = SwapGroupSpec(lay, (cut, rest))
    return swap_expectation_test(a, b, spec)


def two_party_test(a: State, b: State, i: int, j: int) -> ControlDistribution:
    """Two single-site controls; remaining sites untouched."""
    if i == j:
        raise ValueError("the two sites must differ")
    spec = SwapGroupSpec(a.layout, ((i,), (j,)))
    return swap_expectation_test(a, b, spec)


def circuit_engine_fits(a: State, b: State, spec: SwapGroupSpec,
                        cap: int = CIRCUIT_ENGINE_CAP) -> bool:
    def pure_dim(s: State) -> int:
        if isinstance(s, PureState):
            return s.layout.total_dim
        return s.layout.total_dim * s.layout.total_dim
    return pure_dim(a) * pure_dim(b) * 2**spec.m <= cap


# ---------------------------------------------------------------------------
# optical equivalence suite
# ---------------------------------------------------------------------------

def squeezed_equiv_p1_analytic(r: float) -> float:
    """Control-1 probability for a coherent state against its squeezed
    counterpart: depends only on the squeeze magnitude."""
    return 0.5 - 0.5 / math.cosh(r)


def squeezed_cat_p1_analytic(alpha: float, r: float,
                             phi1: float, phi2: float) -> float:
    """Control-1 probability for a plain cat against a squeezed cat,
    squeeze direction 0, real alpha.

    Derived from the coherent/squeezed overlap algebra; the bracket uses
    half-angle phases, which is what makes the maximum over
    phi2 - phi1 land at pi (orthogonal parity classes).
    """
    n1 = optical.cat_norm_analytic(alpha, phi1)
    n2_sq = 1.0 / (2 + 2 * math.cos(phi2)
                   * math.exp(-2 * alpha**2 * math.exp(2 * r)))
    k = 2 * alpha**2 * (1 + math.tanh(r))
    bracket = math.cos((phi2 - phi1) / 2) \
        + math.exp(-k) * math.cos((phi2 + phi1) / 2)
    return 0.5 - 2 * n1**2 * n2_sq / math.cosh(r) * bracket**2


def squeezed_cat_p1_full_angle(alpha: float, r: float,
                               phi1: float, phi2: float) -> float:
    """Variant of the cat formula with full-angle phases in the bracket.

    Disagrees with the circuit away from phi2 - phi1 = 0 mod 2*pi (it
    even fails to peak at pi); kept so comparison reports can quantify
    the gap against the half-angle form."""
    n1 = optical.cat_norm_analytic(alpha, phi1)
    n2_sq = 1.0 / (2 + 2 * math.cos(phi2)
                   * math.exp(-2 * alpha**2 * math.exp(2 * r)))
    k = 2 * alpha**2 * (1 + math.tanh(r))
    bracket = math.cos(phi2 - phi1) + math.exp(-k) * math.cos(phi2 + phi1)
    return 0.5 - 2 * n1**2 * n2_sq / math.cosh(r) * bracket**2


def optical_equivalence_suite(params: optical.OpticalParams,
                              d_cut: int | None = None,
                              phi2: float | None = None) -> dict:
    """Numeric vs analytic control-1 probabilities for the two optical
    discrimination settings, with truncation diagnostics.

    Returns a flat record: coherent-vs-squeezed numeric and analytic
    values, cat-vs-squeezed-cat numeric plus both analytic variants,
    the cutoff, per-state norm deficits, and a warning flag when the
    truncated squeeze operator's unitarity defect exceeds
    optical.UNITARITY_WARN.
    """
    alpha = params.alpha
    r = params.r
    if d_cut is None:
        d_cut = optical.default_cutoff(alpha, r)
    xi = params.xi
    phi1 = params.phi
    if phi2 is None:
        phi2 = phi1

    coh = optical.coherent(alpha, d_cut)
    sq = optical.squeezed_coherent(alpha, xi, d_cut)
    p1_sq_numeric = equivalence_test(coh, sq).p("1")

    cat_a = optical.cat(alpha, phi1, d_cut)
    cat_b = optical.squeezed_cat(alpha, xi, phi2, d_cut)
    p1_cat_numeric = equivalence_test(cat_a, cat_b).p("1")

    defect = unitarity_defect(optical.squeeze_operator(xi, d_cut))
    alpha_r = float(np.real(alpha))
    return {
        "d_cut": d_cut,
        "alpha": alpha,
        "r": r,
        "theta": params.theta,
        "phi1": phi1,
        "phi2": phi2,
        "p1_squeezed_numeric": p1_sq_numeric,
        "p1_squeezed_analytic": squeezed_equiv_p1_analytic(r),
        "p1_cat_numeric": p1_cat_numeric,
        "p1_cat_analytic": squeezed_cat_p1_analytic(alpha_r, r, phi1, phi2),
        "p1_cat_full_angle": squeezed_cat_p1_full_angle(alpha_r, r, phi1, phi2),
        "deficit_coherent": coh.norm_deficit,
        "deficit_squeezed": sq.norm_deficit,
        "deficit_cat": cat_a.norm_deficit,
        "deficit_squeezed_cat": cat_b.norm_deficit,
        "unitarity_defect": defect,
        "warning": defect > optical.UNITARITY_WARN,
    }
