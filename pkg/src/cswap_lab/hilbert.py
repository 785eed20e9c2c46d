"""Complex linear algebra over composite finite-dimensional Hilbert spaces.

States, operators, tensor products, partial traces, and the scalar
quantities (purity, fidelity, entropy, concurrence) the rest of the
library consumes.

Index convention
----------------
Site 0 is the leftmost ket label and the most significant digit of the
mixed-radix basis index (big-endian).  A ket written |x0 x1 ... x_{n-1}>
maps to the flat index  x0*prod(dims[1:]) + x1*prod(dims[2:]) + ... .
Some references label qubits from the right starting at 1; label k in
that counting is site n-k here.  This mapping is fixed in this one place
and everything else goes through it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Union

import numpy as np

# Hard ceiling on the total dimension of any constructed object.  The
# circuit engine tensors two inputs with a control register, so keeping
# this explicit avoids accidental terabyte allocations.
DIM_CAP = 2**24

# Constructors normalize inputs whose norm deviates by at most this and
# reject anything worse (unless renormalize=True is passed, which the
# truncated-Fock factories use because truncation loses norm).
NORM_SLACK = 1e-6

_EIG_CLAMP = 1e-10


@dataclass(frozen=True)
class SiteLayout:
    """Ordered per-site dimensions of a composite space."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("layout needs at least one site")
        if any(d < 2 for d in dims):
            raise ValueError(f"every site dimension must be >= 2, got {dims}")
        total = reduce(lambda a, b: a * b, dims, 1)
        if total > DIM_CAP:
            raise ValueError(
                f"total dimension {total} exceeds the cap {DIM_CAP}"
            )
        object.__setattr__(self, "dims", dims)

    @property
    def n_sites(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return reduce(lambda a, b: a * b, self.dims, 1)

    def __add__(self, other: "SiteLayout") -> "SiteLayout":
        return SiteLayout(self.dims + other.dims)

    def validate_sites(self, sites: Iterable[int]) -> tuple[int, ...]:
        sites = tuple(sites)
        for s in sites:
            if not 0 <= s < self.n_sites:
                raise IndexError(f"site {s} out of range for {self.dims}")
        if len(set(sites)) != len(sites):
            raise ValueError(f"repeated site index in {sites}")
        return sites


def layout(*dims: int) -> SiteLayout:
    return SiteLayout(tuple(dims))


def qubits(n: int) -> SiteLayout:
    return SiteLayout((2,) * n)


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.complex128)
    a.flags.writeable = False
    return a


class PureState:
    """Normalized amplitude vector over a SiteLayout.

    Inputs with squared norm within NORM_SLACK of 1 are normalized;
    anything worse is rejected unless renormalize=True, in which case
    the pre-renormalization deficit 1 - <v|v> is kept on norm_deficit.
    """

    __slots__ = ("layout", "amplitudes", "norm_deficit")

    def __init__(self, layout: SiteLayout, amplitudes: Sequence[complex],
                 renormalize: bool = False):
        vec = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if vec.size != layout.total_dim:
            raise ValueError(
                f"amplitude length {vec.size} != total dim {layout.total_dim}"
            )
        norm_sq = float(np.vdot(vec, vec).real)
        deficit = 1.0 - norm_sq
        if renormalize:
            if norm_sq <= 1e-300:
                raise ValueError("cannot renormalize a zero vector")
        elif abs(1.0 - math.sqrt(norm_sq)) > NORM_SLACK:
            raise ValueError(
                f"state norm deviates from 1 by {1.0 - math.sqrt(norm_sq):.3e}; "
                "pass renormalize=True for deliberately truncated vectors"
            )
        self.layout = layout
        self.amplitudes = _freeze(vec / math.sqrt(norm_sq))
        self.norm_deficit = deficit if renormalize else 0.0

    @property
    def n_sites(self) -> int:
        return self.layout.n_sites

    def tensor_view(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per site."""
        return self.amplitudes.reshape(self.layout.dims)

    def density_matrix(self) -> "DensityMatrix":
        rho = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityMatrix(self.layout, rho, _trusted=True)

    def __repr__(self):
        return f"PureState(dims={self.layout.dims})"


class DensityMatrix:
    """Hermitian, unit-trace, positive matrix over a SiteLayout."""

    __slots__ = ("layout", "matrix")

    def __init__(self, layout: SiteLayout, matrix: np.ndarray,
                 _trusted: bool = False):
        mat = np.asarray(matrix, dtype=np.complex128)
        d = layout.total_dim
        if mat.shape != (d, d):
            raise ValueError(f"matrix shape {mat.shape} != ({d}, {d})")
        if not _trusted:
            herm_err = float(np.max(np.abs(mat - mat.conj().T)))
            if herm_err > 1e-10:
                raise ValueError(f"matrix not Hermitian (max dev {herm_err:.3e})")
            tr = float(mat.trace().real)
            if abs(tr - 1.0) > NORM_SLACK:
                raise ValueError(f"trace {tr} deviates from 1 beyond slack")
            mat = mat / tr
            eigmin = float(np.linalg.eigvalsh(mat)[0])
            if eigmin < -_EIG_CLAMP:
                raise ValueError(f"negative eigenvalue {eigmin:.3e}")
        self.layout = layout
        self.matrix = _freeze(mat)

    @property
    def n_sites(self) -> int:
        return self.layout.n_sites

    def tensor_view(self) -> np.ndarray:
        dims = self.layout.dims
        return self.matrix.reshape(dims + dims)

    def __repr__(self):
        return f"DensityMatrix(dims={self.layout.dims})"


class Operator:
    """Square matrix over a SiteLayout.  Unitarity is not enforced here;
    tests use unitarity_defect() where it matters."""

    __slots__ = ("layout", "matrix")

    def __init__(self, layout: SiteLayout, matrix: np.ndarray):
        mat = np.asarray(matrix, dtype=np.complex128)
        d = layout.total_dim
        if mat.shape != (d, d):
            raise ValueError(f"matrix shape {mat.shape} != ({d}, {d})")
        self.layout = layout
        self.matrix = _freeze(mat)

    def dagger(self) -> "Operator":
        return Operator(self.layout, self.matrix.conj().T)

    def __matmul__(self, other: "Operator") -> "Operator":
        if self.layout.dims != other.layout.dims:
            raise ValueError("operator layouts differ")
        return Operator(self.layout, self.matrix @ other.matrix)

    def __repr__(self):
        return f"Operator(dims={self.layout.dims})"


State = Union[PureState, DensityMatrix]


def unitarity_defect(op: Operator) -> float:
    """Max-entry deviation of U†U from the identity."""
    d = op.layout.total_dim
    return float(np.max(np.abs(op.matrix.conj().T @ op.matrix - np.eye(d))))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def tensor(a, b):
    """Kronecker product of two states or two operators.

    The result layout is a's sites followed by b's sites; with the
    big-endian convention np.kron gives exactly that ordering.
    """
    if isinstance(a, PureState) and isinstance(b, PureState):
        return PureState(a.layout + b.layout,
                         np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(a.layout + b.layout,
                             np.kron(a.matrix, b.matrix), _trusted=True)
    if isinstance(a, Operator) and isinstance(b, Operator):
        return Operator(a.layout + b.layout, np.kron(a.matrix, b.matrix))
    raise TypeError(
        f"tensor needs two values of the same kind, got "
        f"{type(a).__name__} and {type(b).__name__}"
    )


def inner_product(a: PureState, b: PureState) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    _check_same_layout(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity_pure(a: PureState, b: PureState) -> float:
    """|<a|b>|^2."""
    return abs(inner_product(a, b)) ** 2


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Trace out every site not in `keep`; kept sites stay in original order."""
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep must name at least one site")
    rho.layout.validate_sites(keep)
    n = rho.layout.n_sites
    t = rho.tensor_view()
    # Trace axis pairs from the back so earlier positions stay stable.
    removed = 0
    for s in range(n - 1, -1, -1):
        if s in keep:
            continue
        cur_n = n - removed
        t = np.trace(t, axis1=s, axis2=s + cur_n)
        removed += 1
    kept_dims = tuple(rho.layout.dims[s] for s in keep)
    d = reduce(lambda a, b: a * b, kept_dims, 1)
    return DensityMatrix(SiteLayout(kept_dims), t.reshape(d, d), _trusted=True)


def pure_marginal(psi: PureState, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix of a pure state on the kept sites."""
    keep = sorted(set(keep))
    psi.layout.validate_sites(keep)
    m = _split_matrix(psi, keep)
    rho = m @ m.conj().T
    kept_dims = tuple(psi.layout.dims[s] for s in keep)
    return DensityMatrix(SiteLayout(kept_dims), rho, _trusted=True)


def _split_matrix(psi: PureState, front_sites: Sequence[int]) -> np.ndarray:
    """Amplitudes reshaped to a (dim(front) x dim(rest)) matrix."""
    n = psi.layout.n_sites
    rest = [s for s in range(n) if s not in front_sites]
    t = np.transpose(psi.tensor_view(), list(front_sites) + rest)
    d_front = int(np.prod([psi.layout.dims[s] for s in front_sites], dtype=np.int64)) \
        if front_sites else 1
    return t.reshape(d_front, -1)


def subset_overlap(a: State, b: State, sites: Sequence[int]) -> float:
    """Tr[rho_a^S rho_b^S] for the marginals on the given sites.

    For sites == all sites of pure inputs this is |<a|b>|^2; for the
    empty set it is 1.  Always real and nonnegative up to rounding.
    """
    sites = sorted(set(sites))
    if not sites:
        return 1.0
    if isinstance(a, PureState) and isinstance(b, PureState):
        ma = _split_matrix(a, sites)
        mb = _split_matrix(b, sites)
        g = ma.conj().T @ mb
        return float(np.vdot(g, g).real)
    ra = a if isinstance(a, DensityMatrix) else a.density_matrix()
    rb = b if isinstance(b, DensityMatrix) else b.density_matrix()
    if len(sites) == ra.layout.n_sites:
        return float(np.sum(ra.matrix * rb.matrix.T).real)
    ma_r = partial_trace(ra, sites).matrix
    mb_r = partial_trace(rb, sites).matrix
    return float(np.sum(ma_r * mb_r.T).real)


def purity(rho: State) -> float:
    """Tr(rho^2); equals 1 iff pure."""
    if isinstance(rho, PureState):
        return 1.0
    return float(np.sum(rho.matrix * rho.matrix.T).real)


def _clamped_eigvals(rho: DensityMatrix) -> np.ndarray:
    vals = np.linalg.eigvalsh(rho.matrix)
    if vals[0] < -_EIG_CLAMP:
        raise ValueError(f"density matrix has eigenvalue {vals[0]:.3e} < 0")
    return np.clip(vals, 0.0, None)


def von_neumann_entropy(rho: State) -> float:
    """-sum(lam * ln lam) over eigenvalues, with 0 ln 0 = 0."""
    if isinstance(rho, PureState):
        return 0.0
    vals = _clamped_eigvals(rho)
    vals = vals[vals > 0.0]
    return float(-np.sum(vals * np.log(vals)))


def concurrence_2q(psi: PureState) -> float:
    """Two-qubit pure-state concurrence 2|A00 A11 - A01 A10|."""
    if psi.layout.dims != (2, 2):
        raise ValueError(f"needs a two-qubit state, got dims {psi.layout.dims}")
    a = psi.amplitudes
    return float(2.0 * abs(a[0] * a[3] - a[1] * a[2]))


def schmidt_coefficients(psi: PureState, cut: Sequence[int]) -> np.ndarray:
    """Schmidt coefficients (descending singular values) across a bipartition."""
    cut = sorted(set(cut))
    psi.layout.validate_sites(cut)
    if not cut or len(cut) == psi.layout.n_sites:
        raise ValueError("cut must be a nonempty proper subset of sites")
    return np.linalg.svd(_split_matrix(psi, cut), compute_uv=False)


def apply(op: Operator, target: State) -> State:
    """op |psi> for vectors, U rho U† for density matrices."""
    if op.layout.dims != target.layout.dims:
        raise ValueError(
            f"operator dims {op.layout.dims} != state dims {target.layout.dims}"
        )
    if isinstance(target, PureState):
        return PureState(target.layout, op.matrix @ target.amplitudes)
    mat = op.matrix @ target.matrix @ op.matrix.conj().T
    return DensityMatrix(target.layout, mat, _trusted=True)


def embed(op: Operator, full: SiteLayout, sites: Sequence[int]) -> Operator:
    """Extend op to act on the named sites of `full`, identity elsewhere.

    `sites` is ordered: sites[k] receives axis k of op's own layout.
    """
    sites = list(sites)
    full.validate_sites(sites)
    if len(sites) != op.layout.n_sites:
        raise ValueError("site list length must match operator site count")
    for k, s in enumerate(sites):
        if full.dims[s] != op.layout.dims[k]:
            raise ValueError(
                f"site {s} has dim {full.dims[s]}, operator axis {k} "
                f"has dim {op.layout.dims[k]}"
            )
    rest = [s for s in range(full.n_sites) if s not in sites]
    rest_dim = int(np.prod([full.dims[s] for s in rest], dtype=np.int64)) if rest else 1
    big = np.kron(op.matrix, np.eye(rest_dim))
    # kron ordering is [sites..., rest...]; permute both row and column
    # axes back to layout order.
    order = sites + rest
    inv = [order.index(s) for s in range(full.n_sites)]
    dims_in_order = tuple(full.dims[s] for s in order)
    t = big.reshape(dims_in_order + dims_in_order)
    n = full.n_sites
    t = np.transpose(t, inv + [n + i for i in inv])
    d = full.total_dim
    return Operator(full, t.reshape(d, d))


def _check_same_layout(a, b):
    if a.layout.dims != b.layout.dims:
        raise ValueError(f"layout mismatch: {a.layout.dims} vs {b.layout.dims}")


# ---------------------------------------------------------------------------
# standard gates
# ---------------------------------------------------------------------------

def hadamard() -> Operator:
    m = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
    return Operator(qubits(1), m)


def cnot() -> Operator:
    """First qubit controls, second is the target."""
    m = np.eye(4, dtype=np.complex128)
    m[[2, 3]] = m[[3, 2]]
    return Operator(qubits(2), m)


def toffoli() -> Operator:
    """First two qubits control, third is the target."""
    m = np.eye(8, dtype=np.complex128)
    m[[6, 7]] = m[[7, 6]]
    return Operator(qubits(3), m)


def swap_gate(d: int = 2) -> Operator:
    """SWAP of two d-dimensional sites: |jk> -> |kj>."""
    m = np.zeros((d * d, d * d), dtype=np.complex128)
    for j in range(d):
        for k in range(d):
            m[k * d + j, j * d + k] = 1.0
    return Operator(layout(d, d), m)


def identity(lay: SiteLayout) -> Operator:
    return Operator(lay, np.eye(lay.total_dim, dtype=np.complex128))


def basis_state(lay: SiteLayout, labels: Sequence[int]) -> PureState:
    """Computational basis ket |labels[0] labels[1] ...>."""
    if len(labels) != lay.n_sites:
        raise ValueError("one label per site required")
    idx = int(np.ravel_multi_index(tuple(labels), lay.dims))
    vec = np.zeros(lay.total_dim, dtype=np.complex128)
    vec[idx] = 1.0
    return PureState(lay, vec)
