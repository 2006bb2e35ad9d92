"""Inverse maps: from tomograms back to operators.

Spin tomograms on a quadrature grid invert through the tensor-operator
expansion; unitary-frame tomograms invert through a constrained least-squares
solve; symbol tables convert between quantizer pairs via intertwining kernels.
"""

from __future__ import annotations

import warnings

import numpy as np

from .errors import InformationallyIncompleteError
from .halfint import HalfInt, spin_range
from .linalg import DensityMatrix, hermiticity_residual
from .quadrature import GROUP_VOLUME, QuadratureGrid, make_grid
from .su2 import clebsch_gordan, irreducible_tensor, tensor_index_pairs, wigner_small_d
from .symbols import QuantizerPair, Tomogram, _joint_frame

__all__ = [
    "make_grid",
    "reconstruct_operator",
    "reconstruct_from_unitary_frame",
    "intertwine",
    "duality_residual",
]


def infer_grid(t: Tomogram) -> QuadratureGrid:
    """Rebuild the quadrature grid a spin tomogram's frames were drawn from.

    Grid frames are beta-major with gamma cycling fastest, so the gamma count
    is the run length of the leading beta value; the Gauss-Legendre nodes are
    then reproduced from the beta count alone.
    """
    if t.kind != "spin" or not t.frames:
        raise ValueError("grid inference needs a spin tomogram with frames")
    betas = [fr.angles.beta for fr in t.frames]
    n_gamma = 1
    while n_gamma < len(betas) and abs(betas[n_gamma] - betas[0]) < 1e-12:
        n_gamma += 1
    if len(betas) % n_gamma != 0:
        raise ValueError("tomogram frames do not form a regular grid")
    n_beta = len(betas) // n_gamma
    x, w = np.polynomial.legendre.leggauss(n_beta)
    grid = QuadratureGrid(
        beta_nodes=np.arccos(x),
        beta_weights=w,
        gamma_nodes=2.0 * np.pi * np.arange(n_gamma) / n_gamma,
        alpha_factor=2.0 * np.pi,
        exactness_degree=min((2 * n_beta - 1) // 2, (n_gamma - 1) // 2),
    )
    if not _frames_match_grid(t.frames, t.j, grid):
        raise ValueError("tomogram frames do not coincide with any standard grid")
    return grid


def _frames_match_grid(frames, j: HalfInt, grid: QuadratureGrid) -> bool:
    betas, gammas = grid.node_angles()
    if len(frames) != grid.n_nodes:
        return False
    for fr, b, g in zip(frames, betas, gammas):
        if fr.j != j:
            return False
        if abs(fr.angles.beta - b) > 1e-12 or abs(fr.angles.gamma - g) > 1e-12:
            return False
    return True


def reconstruct_operator(t: Tomogram, j, grid: QuadratureGrid) -> np.ndarray:
    """Rebuild the operator from its spin tomogram on the grid frames.

    A = sum_{L,M,m} (-1)^(j-m+M) (2L+1)/(8 pi^2) <j m; j -m|L 0>
        (integral of w(m, .) D^L_{0,-M}) T_LM,
    with the group integral evaluated by the grid quadrature.
    """
    j = HalfInt.of(j)
    if t.kind != "spin":
        raise ValueError("reconstruct_operator expects a spin tomogram")
    if not _frames_match_grid(t.frames, j, grid):
        raise ValueError("tomogram frames do not coincide with the grid nodes")
    n = j.twice + 1
    node_w = grid.node_weights() * grid.alpha_factor
    gammas = grid.node_angles()[1]
    ms = spin_range(j)
    table = t.table  # (n, n_nodes), complex
    out = np.zeros((n, n), dtype=complex)
    for L, M in tensor_index_pairs(j):
        small = np.array([wigner_small_d(L, 0, -M, float(b)) for b in grid.beta_nodes])
        dfun = np.repeat(small, grid.n_gamma) * np.exp(1j * float(M) * gammas)
        coeff = 0.0 + 0.0j
        for im, m in enumerate(ms):
            cg = clebsch_gordan(j, m, j, -m, L, 0)
            if cg == 0.0:
                continue
            phase = (-1.0) ** ((j.twice - m.twice) // 2 + M.twice // 2)
            coeff += phase * cg * np.sum(node_w * table[im] * dfun)
        out += (L.twice + 1) / GROUP_VOLUME * coeff * irreducible_tensor(j, L, M)
    return out


def _hermitian_basis(d: int) -> list[np.ndarray]:
    basis = []
    for k in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[k, k] = 1.0
        basis.append(e)
    for a in range(d):
        for b in range(a + 1, d):
            e = np.zeros((d, d), dtype=complex)
            e[a, b] = e[b, a] = 1.0
            basis.append(e)
            e = np.zeros((d, d), dtype=complex)
            e[a, b] = -1.0j
            e[b, a] = 1.0j
            basis.append(e)
    return basis


def reconstruct_from_unitary_frame(t: Tomogram, frames=None) -> DensityMatrix:
    """Least-squares state estimate from a unitary-frame tomogram.

    Solves for a Hermitian matrix under the unit-trace constraint; at least
    d+1 generically placed frames are needed for the linear map to have full
    column rank.  Positivity is verified afterwards, not enforced: violations
    beyond 1e-8 produce a warning, not an error.
    """
    if t.kind != "unitary":
        raise ValueError("expected a unitary-frame tomogram")
    frames = list(frames) if frames is not None else list(t.frames)
    if len(frames) != t.n_frames:
        raise ValueError("frame list length does not match the tomogram")
    us = [_joint_frame(fr) for fr in frames]
    d = us[0].shape[0]
    basis = _hermitian_basis(d)
    n_par = len(basis)

    rows = []
    rhs = []
    for col, u in enumerate(us):
        probs = t.table[:, col].real
        rotated = [np.einsum("am,ab,bm->m", u.conj(), bk, u).real for bk in basis]
        for m in range(d):
            rows.append([r[m] for r in rotated])
            rhs.append(probs[m])
    # unit-trace constraint as an extra (well-scaled) equation
    rows.append([np.trace(bk).real for bk in basis])
    rhs.append(1.0)
    a = np.asarray(rows)
    b = np.asarray(rhs)

    rank = int(np.linalg.matrix_rank(a))
    if rank < n_par:
        raise InformationallyIncompleteError(rank=rank, needed=n_par)
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    rho = sum(c * bk for c, bk in zip(x, basis))
    rho = 0.5 * (rho + rho.conj().T)
    rho /= np.trace(rho).real

    min_eig = float(np.min(np.linalg.eigvalsh(rho)))
    if min_eig < -1e-8:
        warnings.warn(
            f"least-squares state has negative eigenvalue {min_eig:.3e}; "
            "input tomogram may be inconsistent",
            stacklevel=2,
        )
    dims = t.dims if t.dims is not None else (d,)
    return DensityMatrix(rho, dims, psd_slack=max(1e-10, 2.0 * abs(min_eig)))


def reconstruction_residual(t: Tomogram, rho: DensityMatrix, frames=None) -> float:
    """Max abs mismatch between the tomogram and the state's forward symbol."""
    frames = list(frames) if frames is not None else list(t.frames)
    worst = 0.0
    for col, fr in enumerate(frames):
        u = _joint_frame(fr)
        pred = np.einsum("am,ab,bm->m", u.conj(), rho.mat, u).real
        worst = max(worst, float(np.max(np.abs(pred - t.table[:, col].real))))
    return worst


def intertwine(values, pair_from: QuantizerPair, pair_to: QuantizerPair) -> np.ndarray:
    """Convert a symbol table between quantizer pairs.

    phi(y) = sum_x weights[x] f(x) Tr[D_from(x) U_to(y)], the discrete form of
    the invertible transform linking two symbol families on one space.
    """
    if pair_from.dim != pair_to.dim:
        raise ValueError("quantizer pairs act on different dimensions")
    values = np.asarray(values)
    if values.shape != (len(pair_from.labels),):
        raise ValueError("symbol table length does not match the source pair")
    synthesized = pair_from.synthesize(values)
    return np.einsum("yij,ji->y", pair_to.us, synthesized)


def duality_residual(pair: QuantizerPair, probes=None) -> float:
    """Worst-case reconstruction defect of a quantizer pair.

    max over probes of ||sum_x w_x Tr[P U(x)] D(x) - P||_inf; probes default
    to all matrix units, which span the operator space.
    """
    d = pair.dim
    if probes is None:
        probes = []
        for a in range(d):
            for b in range(d):
                p = np.zeros((d, d), dtype=complex)
                p[a, b] = 1.0
                probes.append(p)
    worst = 0.0
    for p in probes:
        rebuilt = pair.synthesize(pair.symbol_of(p))
        worst = max(worst, float(np.max(np.abs(rebuilt - p))))
    return worst


def hermitian_defect(m) -> float:
    """Convenience re-export used by CLI reporting."""
    return hermiticity_residual(m)
