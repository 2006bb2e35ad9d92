"""Tomographic operator symbols for spin systems.

A spin tomogram evaluates an operator against rotated spin projectors,
w(m, beta, gamma) = Tr[A R(g)^dag |j m><j m| R(g)]; a unitary tomogram is the
diagonal of u^dag rho u.  For density operators both are genuine probability
tables, one distribution per frame.

The dual operator families (dequantizer ``U`` and quantizer ``D``) invert the
symbol map: A = sum_x w(x) f_A(x) D(x) over a quadrature grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .halfint import HalfInt, spin_range
from .linalg import DensityMatrix, kron_all, partial_trace, unitarity_residual
from .quadrature import GROUP_VOLUME, QuadratureGrid
from .su2 import clebsch_gordan, irreducible_tensor, rotation_matrix, tensor_index_pairs, wigner_small_d

REALITY_TOL = 1e-10
CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class EulerAngles:
    alpha: float
    beta: float
    gamma: float

    def normalized(self) -> "EulerAngles":
        """Reduce alpha, gamma mod 2pi and require beta in [0, pi]."""
        two_pi = 2.0 * np.pi
        beta = float(self.beta)
        if not 0.0 <= beta <= np.pi + 1e-12:
            raise ValueError(f"beta must lie in [0, pi], got {beta}")
        return EulerAngles(float(self.alpha) % two_pi, min(beta, np.pi), float(self.gamma) % two_pi)


@dataclass(frozen=True)
class SpinFrame:
    """A rotation frame for spin-j tomography; alpha does not affect values."""

    j: HalfInt
    angles: EulerAngles


def grid_frames(j, grid: QuadratureGrid) -> list[SpinFrame]:
    """Spin frames at the grid nodes (alpha = 0), in grid node order."""
    j = HalfInt.of(j)
    betas, gammas = grid.node_angles()
    return [SpinFrame(j, EulerAngles(0.0, float(b), float(g))) for b, g in zip(betas, gammas)]


@dataclass
class Tomogram:
    """Symbol table over outcomes x frames.

    ``kind`` is "spin" (rotation frames, outcomes are magnetic numbers) or
    "unitary" (unitary-matrix frames, outcomes are basis index tuples).  The
    table is stored complex so symbols of arbitrary observables are
    representable; ``values`` exposes the probability view and raises if the
    data is not a clean probability table, while ``observable_values`` returns
    the raw complex table.
    """

    kind: str
    outcomes: list
    frames: list
    table: np.ndarray
    j: HalfInt | None = None
    dims: tuple[int, ...] | None = None
    source_state: DensityMatrix | None = field(default=None, repr=False)

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=complex)
        if self.table.shape != (len(self.outcomes), len(self.frames)):
            raise ValueError(
                f"table shape {self.table.shape} does not match "
                f"{len(self.outcomes)} outcomes x {len(self.frames)} frames"
            )

    @property
    def n_outcomes(self) -> int:
        return len(self.outcomes)

    @property
    def n_frames(self) -> int:
        return len(self.frames)

    @property
    def values(self) -> np.ndarray:
        """Real probability table; clamps roundoff negatives within -1e-12 to 0."""
        if np.max(np.abs(self.table.imag), initial=0.0) > REALITY_TOL:
            raise ValueError("tomogram has significantly complex entries; use observable_values")
        re = self.table.real.copy()
        if np.min(re, initial=0.0) < -CLAMP_TOL:
            raise ValueError("tomogram has negative entries beyond -1e-12 (non-PSD input?)")
        re[re < 0.0] = 0.0
        return re

    @property
    def observable_values(self) -> np.ndarray:
        """Raw complex symbol table (observables need not be positive)."""
        return self.table.copy()

    def normalization_residual(self) -> float:
        """Max over frames of |sum_m w(m, frame) - 1|."""
        sums = self.table.sum(axis=0)
        return float(np.max(np.abs(sums - 1.0)))

    def check_normalized(self, tol: float = 1e-10) -> None:
        res = self.normalization_residual()
        if res > tol:
            raise ValueError(f"tomogram not normalized per frame (residual {res:.3e})")


def dequantizer_U(j, m, omega: EulerAngles) -> np.ndarray:
    """Rotated projector R(g)^dag |j m><j m| R(g); rank one, unit trace."""
    j, m = HalfInt.of(j), HalfInt.of(m)
    _check_m(j, m)
    r = rotation_matrix(j, omega.alpha, omega.beta, omega.gamma)
    k = (j.twice - m.twice) // 2
    row = r[k, :]
    return np.outer(row.conj(), row)


def dequantizer_series(j, m, omega: EulerAngles) -> np.ndarray:
    """Equivalent tensor-operator series for the dequantizer.

    sum_{L,M} (-1)^(j-m+M) <j m; j -m|L 0> D^L_{0,-M}(omega) T_LM; used as a
    cross-check of the rotated-projector construction.
    """
    j, m = HalfInt.of(j), HalfInt.of(m)
    _check_m(j, m)
    n = j.twice + 1
    out = np.zeros((n, n), dtype=complex)
    for (L, M), coeff in _series_coefficients(j, m, omega):
        out += coeff * irreducible_tensor(j, L, M)
    return out


def quantizer_D(j, m, omega: EulerAngles) -> np.ndarray:
    """Dual operator with weights (2L+1)/(8 pi^2) on the same series."""
    j, m = HalfInt.of(j), HalfInt.of(m)
    _check_m(j, m)
    n = j.twice + 1
    out = np.zeros((n, n), dtype=complex)
    for (L, M), coeff in _series_coefficients(j, m, omega):
        out += coeff * (L.twice + 1) / GROUP_VOLUME * irreducible_tensor(j, L, M)
    return out


def _check_m(j: HalfInt, m: HalfInt) -> None:
    if (j.twice - m.twice) % 2 != 0 or abs(m.twice) > j.twice:
        raise ValueError(f"m={m} invalid for j={j}")


def _series_coefficients(j: HalfInt, m: HalfInt, omega: EulerAngles):
    """(L, M) -> (-1)^(j-m+M) <j m; j -m|L 0> D^L_{0,-M}(omega) for all labels."""
    for L, M in tensor_index_pairs(j):
        cg = clebsch_gordan(j, m, j, -m, L, 0)
        if cg == 0.0:
            continue
        # D^L_{0,-M} has no alpha dependence (first index zero)
        d = wigner_small_d(L, 0, -M, omega.beta) * np.exp(1j * float(M) * omega.gamma)
        exponent = (j.twice - m.twice) // 2 + M.twice // 2
        yield (L, M), (-1.0) ** exponent * cg * d


def spin_tomogram(a, frames: list[SpinFrame]) -> Tomogram:
    """Spin symbol w(m, frame) = Tr[A U(m, frame)] for every m and frame.

    ``a`` may be a plain matrix (observable) or a DensityMatrix, in which case
    per-frame normalization is verified.
    """
    is_state = isinstance(a, DensityMatrix)
    mat = a.mat if is_state else np.asarray(a, dtype=complex)
    if not frames:
        raise ValueError("at least one frame is required")
    j = frames[0].j
    n = j.twice + 1
    if mat.shape != (n, n):
        raise ValueError(f"operator shape {mat.shape} does not match 2j+1={n}")
    table = np.empty((n, len(frames)), dtype=complex)
    for col, fr in enumerate(frames):
        if fr.j != j:
            raise ValueError("all frames must share the same spin j")
        ang = fr.angles
        r = rotation_matrix(j, ang.alpha, ang.beta, ang.gamma)
        table[:, col] = np.einsum("ma,ab,mb->m", r, mat, r.conj())
    t = Tomogram(
        kind="spin",
        outcomes=spin_range(j),
        frames=list(frames),
        table=table,
        j=j,
        source_state=a if is_state else None,
    )
    if is_state:
        t.check_normalized()
    return t


def _joint_frame(frame) -> np.ndarray:
    if isinstance(frame, tuple):
        return kron_all([np.asarray(f, dtype=complex) for f in frame])
    return np.asarray(frame, dtype=complex)


def unitary_tomogram(rho: DensityMatrix, frames) -> Tomogram:
    """Unitary symbol w(mvec, u) = <mvec| u^dag rho u |mvec|>.

    Frames may be unitary matrices or tuples of per-factor unitaries (their
    Kronecker product is used); tuple frames keep enough structure for
    marginals over subsystems.
    """
    if not isinstance(rho, DensityMatrix):
        raise ValueError("unitary_tomogram expects a DensityMatrix")
    frames = list(frames)
    if not frames:
        raise ValueError("at least one frame is required")
    n = rho.dim
    table = np.empty((n, len(frames)), dtype=complex)
    for col, fr in enumerate(frames):
        u = _joint_frame(fr)
        if u.shape != (n, n):
            raise ValueError(f"frame shape {u.shape} does not match state dimension {n}")
        if unitarity_residual(u) > 1e-8:
            raise ValueError("frame is not unitary within 1e-8")
        table[:, col] = np.einsum("am,ab,bm->m", u.conj(), rho.mat, u)
    outcomes = [tuple(int(i) for i in np.unravel_index(k, rho.dims)) for k in range(n)]
    t = Tomogram(
        kind="unitary",
        outcomes=outcomes,
        frames=frames,
        table=table,
        dims=rho.dims,
        source_state=rho,
    )
    t.check_normalized()
    return t


def tomogram_marginal(t: Tomogram, keep) -> Tomogram:
    """Sum out the outcomes of discarded subsystems.

    Requires the tomogram to have been computed with product (tuple) frames;
    the marginal then equals the tomogram of the partially traced state on
    the kept factors.
    """
    if t.kind != "unitary" or t.dims is None:
        raise ValueError("marginals are defined for unitary tomograms with declared dims")
    if isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    keep = tuple(sorted(set(int(k) for k in keep)))
    n_sub = len(t.dims)
    if not keep or any(k < 0 or k >= n_sub for k in keep):
        raise ValueError(f"keep={keep} invalid for dims {t.dims}")
    for fr in t.frames:
        if not (isinstance(fr, tuple) and len(fr) == n_sub):
            raise ValueError("marginal requires product-form (tuple) frames")
    block = t.table.reshape(t.dims + (t.n_frames,))
    drop_axes = tuple(k for k in range(n_sub) if k not in keep)
    reduced = block.sum(axis=drop_axes)
    kept_dims = tuple(t.dims[k] for k in keep)
    n_keep = int(np.prod(kept_dims))
    reduced = reduced.reshape(n_keep, t.n_frames)
    outcomes = [tuple(int(i) for i in np.unravel_index(k, kept_dims)) for k in range(n_keep)]
    if len(keep) == 1:
        new_frames = [fr[keep[0]] for fr in t.frames]
    else:
        new_frames = [tuple(fr[k] for k in keep) for fr in t.frames]
    source = partial_trace(t.source_state, keep) if t.source_state is not None else None
    return Tomogram(
        kind="unitary",
        outcomes=outcomes,
        frames=new_frames,
        table=reduced,
        dims=kept_dims,
        source_state=source,
    )


@dataclass
class QuantizerPair:
    """Dual families U(x), D(x) on a discrete label set with quadrature weights.

    The defining identity is A = sum_x weights[x] * Tr[A U(x)] * D(x) for every
    operator A on the carrier space; ``duality_residual`` in the
    reconstruction module measures how well a pair satisfies it.
    """

    labels: list
    us: np.ndarray
    ds: np.ndarray
    weights: np.ndarray
    dim: int

    @classmethod
    def spin(cls, j, grid: QuadratureGrid) -> "QuantizerPair":
        """Spin-j pair on a rotation-group grid; labels are (m, node) pairs.

        The dequantizers are rotated projectors; the quantizers come from the
        tensor-operator series, so the duality identity also cross-validates
        the two constructions.
        """
        j = HalfInt.of(j)
        memo_key = ("pair", j.twice)
        cached = grid._memo.get(memo_key)
        if cached is not None:
            return cached
        n = j.twice + 1
        betas, gammas = grid.node_angles()
        node_w = grid.node_weights() * grid.alpha_factor
        ms = spin_range(j)
        n_nodes = grid.n_nodes

        pairs_lm = tensor_index_pairs(j)
        tensors = np.stack([irreducible_tensor(j, L, M) for L, M in pairs_lm])
        # d^L_{0,-M}(beta) e^{i M gamma} per node and (L, M)
        dlm = np.empty((n_nodes, len(pairs_lm)), dtype=complex)
        for idx, (L, M) in enumerate(pairs_lm):
            small = np.array([wigner_small_d(L, 0, -M, float(b)) for b in grid.beta_nodes])
            small = np.repeat(small, grid.n_gamma)
            dlm[:, idx] = small * np.exp(1j * float(M) * gammas)

        rotations = np.stack(
            [rotation_matrix(j, 0.0, float(b), float(g)) for b, g in zip(betas, gammas)]
        )
        us = np.empty((n * n_nodes, n, n), dtype=complex)
        ds = np.empty((n * n_nodes, n, n), dtype=complex)
        labels, weights = [], np.empty(n * n_nodes)
        t_flat = tensors.reshape(len(pairs_lm), n * n)
        d_weight = np.array([(L.twice + 1) / GROUP_VOLUME for L, _ in pairs_lm])
        for im, m in enumerate(ms):
            cg_ph = np.array(
                [
                    (-1.0) ** ((j.twice - m.twice) // 2 + M.twice // 2)
                    * clebsch_gordan(j, m, j, -m, L, 0)
                    for L, M in pairs_lm
                ]
            )
            block = slice(im * n_nodes, (im + 1) * n_nodes)
            rows = rotations[:, im, :]
            us[block] = rows.conj()[:, :, None] * rows[:, None, :]
            ds[block] = ((dlm * (cg_ph * d_weight)[None, :]) @ t_flat).reshape(n_nodes, n, n)
            weights[block] = node_w
            labels.extend((m, node) for node in range(n_nodes))
        pair = cls(labels=labels, us=us, ds=ds, weights=weights, dim=n)
        grid._memo[memo_key] = pair
        return pair

    @classmethod
    def matrix_units(cls, dim: int) -> "QuantizerPair":
        """Matrix-element symbol family: U(a,b) = |a><b|, D(a,b) = |b><a|."""
        if dim < 1:
            raise ValueError("dimension must be at least 1")
        labels, us, ds = [], [], []
        for a in range(dim):
            for b in range(dim):
                u = np.zeros((dim, dim), dtype=complex)
                u[a, b] = 1.0
                us.append(u)
                ds.append(u.conj().T.copy())
                labels.append((a, b))
        return cls(
            labels=labels,
            us=np.stack(us),
            ds=np.stack(ds),
            weights=np.ones(dim * dim),
            dim=dim,
        )

    def symbol_of(self, a) -> np.ndarray:
        """f_A(x) = Tr[A U(x)] over all labels."""
        mat = a.mat if isinstance(a, DensityMatrix) else np.asarray(a, dtype=complex)
        if mat.shape != (self.dim, self.dim):
            raise ValueError("operator dimension mismatch")
        return np.einsum("xij,ji->x", self.us, mat)

    def synthesize(self, values: np.ndarray) -> np.ndarray:
        """sum_x weights[x] f(x) D(x) - the inverse map applied to a symbol table."""
        values = np.asarray(values)
        if values.shape != (len(self.labels),):
            raise ValueError("symbol table length mismatch")
        return np.einsum("x,xij->ij", values * self.weights, self.ds)

    def trace_pairing(self, values: np.ndarray) -> complex:
        """sum_x weights[x] f(x) Tr[D(x)]; recovers Tr[A] from a symbol."""
        traces = np.einsum("xii->x", self.ds)
        return complex(np.sum(np.asarray(values) * self.weights * traces))
