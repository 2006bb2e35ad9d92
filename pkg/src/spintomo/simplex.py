"""The image of unitary (sub)groups on the probability simplex.

For a fixed state rho, each unitary u maps to the point diag(u^dag rho u).
Sweeping u over the full group or a product subgroup traces out a subset of
the simplex whose dimension and shape characterize the state: spectra bound
the image by hyperplanes, factorized states give additive dimensions, and
certain entangled or symmetric states collapse it further.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePointError
from .linalg import (
    DensityMatrix,
    expm_hermitian_times,
    haar_unitaries,
    kron_all,
    partial_transpose,
)

SIMPLEX_TOL = 1e-10


@dataclass(frozen=True)
class GroupSpec:
    """Which unitary (sub)group sweeps the frames.

    kind "full" uses U(N) on the whole space; kind "product" uses independent
    factors u_1 (x) ... (x) u_k on the declared dims.  ``active`` restricts the
    product action to a subset of factors (identity elsewhere), e.g.
    U(2) (x) 1 on a two-qubit space.
    """

    kind: str
    factor_dims: tuple[int, ...] = ()
    active: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("full", "product"):
            raise ValueError("group kind must be 'full' or 'product'")
        object.__setattr__(self, "factor_dims", tuple(int(d) for d in self.factor_dims))
        if self.active is not None:
            object.__setattr__(self, "active", tuple(sorted(set(self.active))))

    def resolve(self, dims: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(factor_dims, active indices) validated against the state dims."""
        if self.kind == "full":
            n = int(np.prod(dims))
            return (n,), (0,)
        factors = self.factor_dims or dims
        if int(np.prod(factors)) != int(np.prod(dims)):
            raise ValueError(f"factor dims {factors} do not match state dimension")
        active = self.active if self.active is not None else tuple(range(len(factors)))
        if any(a < 0 or a >= len(factors) for a in active):
            raise ValueError("active factor index out of range")
        return factors, active


@dataclass
class SimplexSample:
    """Sampled simplex points with the group elements that produced them."""

    points: np.ndarray  # (n, N) rows summing to 1
    params: list  # per point: tuple of factor unitaries
    seed: int
    group: GroupSpec

    def validate(self, tol: float = SIMPLEX_TOL) -> None:
        if np.min(self.points) < -tol:
            raise ValueError("sample contains a negative probability")
        if np.max(np.abs(self.points.sum(axis=1) - 1.0)) > tol:
            raise ValueError("sample rows do not sum to 1")


def _draw_elements(
    g: GroupSpec, dims: tuple[int, ...], count: int, rng: np.random.Generator
) -> list[tuple[np.ndarray, ...]]:
    factors, active = g.resolve(dims)
    draws_per_factor = {
        a: haar_unitaries(factors[a], count, rng) for a in active
    }
    elements = []
    for i in range(count):
        element = tuple(
            draws_per_factor[k][i] if k in active else np.eye(factors[k], dtype=complex)
            for k in range(len(factors))
        )
        elements.append(element)
    return elements


def image_sample(rho: DensityMatrix, g: GroupSpec, n: int, seed: int) -> SimplexSample:
    """n points diag(u^dag rho u) with u Haar on the specified (sub)group."""
    if n < 1:
        raise ValueError("sample size must be positive")
    rng = np.random.default_rng(seed)
    elements = _draw_elements(g, rho.dims, n, rng)
    points = np.empty((n, rho.dim))
    for i, element in enumerate(elements):
        u = kron_all(element) if len(element) > 1 else element[0]
        points[i] = np.einsum("am,ab,bm->m", u.conj(), rho.mat, u).real
    sample = SimplexSample(points=points, params=elements, seed=seed, group=g)
    sample.validate()
    return sample


def _lie_basis(factors: tuple[int, ...], active: tuple[int, ...]) -> list[np.ndarray]:
    """Hermitian generators of the subgroup, embedded into the joint space."""
    basis = []
    for a in active:
        d = factors[a]
        gens = []
        for k in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[k, k] = 1.0
            gens.append(e)
        for r in range(d):
            for c in range(r + 1, d):
                e = np.zeros((d, d), dtype=complex)
                e[r, c] = e[c, r] = 1.0
                gens.append(e)
                e = np.zeros((d, d), dtype=complex)
                e[r, c] = -1.0j
                e[c, r] = 1.0j
                gens.append(e)
        for gmat in gens:
            embedded = [
                gmat if k == a else np.eye(factors[k], dtype=complex)
                for k in range(len(factors))
            ]
            basis.append(kron_all(embedded) if len(embedded) > 1 else embedded[0])
    return basis


@dataclass
class DimensionReport:
    rank: int
    singular_values: np.ndarray
    rel_tol: float
    step: float
    base_points: int


def image_dimension_report(
    rho: DensityMatrix,
    g: GroupSpec,
    base_points: int = 5,
    step: float = 1e-5,
    rel_tol: float = 1e-8,
    seed: int = 0,
) -> DimensionReport:
    """Numerical rank of the map u -> diag(u^dag rho u) restricted to the subgroup.

    At each random base point the Jacobian columns are central finite
    differences along one-parameter curves u0 exp(i s G_k) for a Lie-algebra
    basis {G_k}; the rank is the count of singular values above
    rel_tol * sigma_max, maximized over base points (rank can drop on
    measure-zero sets).
    """
    factors, active = g.resolve(rho.dims)
    basis = _lie_basis(factors, active)
    rng = np.random.default_rng(seed)
    elements = _draw_elements(g, rho.dims, base_points, rng)
    best_rank = -1
    best_sv = None
    for element in elements:
        u0 = kron_all(element) if len(element) > 1 else element[0]
        sigma = u0.conj().T @ rho.mat @ u0
        cols = []
        for gen in basis:
            e_plus = expm_hermitian_times(gen, -step)  # exp(+i step G)
            e_minus = expm_hermitian_times(gen, step)
            forward = np.einsum("am,ab,bm->m", e_plus.conj(), sigma, e_plus).real
            backward = np.einsum("am,ab,bm->m", e_minus.conj(), sigma, e_minus).real
            cols.append((forward - backward) / (2.0 * step))
        jac = np.column_stack(cols)
        sv = np.linalg.svd(jac, compute_uv=False)
        if sv[0] <= 0.0:
            rank = 0
        else:
            rank = int(np.sum(sv > rel_tol * sv[0]))
        if rank > best_rank:
            best_rank = rank
            best_sv = sv
    return DimensionReport(
        rank=best_rank,
        singular_values=best_sv,
        rel_tol=rel_tol,
        step=step,
        base_points=base_points,
    )


def image_dimension(rho: DensityMatrix, g: GroupSpec, **kwargs) -> int:
    return image_dimension_report(rho, g, **kwargs).rank


def factorized_surface_residual(point) -> float:
    """Defect of the two-qubit factorized-surface relation.

    For outcome order (00, 01, 10, 11) the product-group image of a
    factorized state satisfies w10 = w00/(w01 + w00) - w00; returns the
    absolute deviation.
    """
    w = np.asarray(point, dtype=float)
    if w.shape != (4,):
        raise ValueError("expected a 4-outcome simplex point")
    denom = w[0] + w[1]
    if denom <= 0.0:
        raise DegeneratePointError("w(00) + w(01) vanishes; relation undefined")
    return float(abs(w[2] - w[0] / denom + w[0]))


def entangled_ray_check(point, c0: complex, c1: complex) -> float:
    """Max deviation of the ray identities for c0|00> + c1|11>.

    Checks w00/|c0|^2 = w11/|c1|^2 and (the equal-moduli reduction of the
    cross identity) w10 = w01.
    """
    w = np.asarray(point, dtype=float)
    if w.shape != (4,):
        raise ValueError("expected a 4-outcome simplex point")
    a0, a1 = abs(c0) ** 2, abs(c1) ** 2
    if abs(a0 + a1 - 1.0) > 1e-10:
        raise ValueError("coefficients must satisfy |c0|^2 + |c1|^2 = 1")
    if a0 < 1e-12 or a1 < 1e-12:
        raise DegeneratePointError("a vanishing coefficient degenerates the ray identities")
    return float(max(abs(w[0] / a0 - w[3] / a1), abs(w[2] - w[1])))


def eigenvalue_bounds_check(sample: SimplexSample, rho: DensityMatrix, tol: float = 1e-10) -> bool:
    """True iff every sampled coordinate lies in [lambda_min, lambda_max]."""
    eigs = np.linalg.eigvalsh(rho.mat)
    lo, hi = float(eigs[0]), float(eigs[-1])
    return bool(
        np.all(sample.points >= lo - tol) and np.all(sample.points <= hi + tol)
    )


@dataclass
class PeresScan:
    """Result of a partial-transpose tomographic scan.

    ``max_violation`` is the largest sum_m |<m|u^dag rho^TB u|m>| - 1 over the
    scanned frames (the eigenbasis frame of rho^TB is always included, where
    the value equals the trace norm minus one exactly).
    """

    max_violation: float
    witness: np.ndarray | None
    min_eigenvalue: float
    trace_norm_minus_one: float
    eigenbasis_value: float


def peres_scan(rho12: DensityMatrix, n: int, seed: int) -> PeresScan:
    """Search for tomographic detections of a negative partial transpose."""
    if len(rho12.dims) < 2:
        raise ValueError("the scan needs a declared bipartition")
    rho_tb = partial_transpose(rho12, subsystem=len(rho12.dims) - 1)
    eigs, vecs = np.linalg.eigh(rho_tb)
    frames = list(haar_unitaries(rho12.dim, n, np.random.default_rng(seed)))
    frames.append(vecs)

    def scan_value(u):
        return float(
            np.sum(np.abs(np.einsum("am,ab,bm->m", u.conj(), rho_tb, u).real)) - 1.0
        )

    best_val = -np.inf
    best_u = None
    for u in frames:
        val = scan_value(u)
        if val > best_val:
            best_val = val
            best_u = u
    return PeresScan(
        max_violation=best_val,
        witness=best_u if best_val > 1e-8 else None,
        min_eigenvalue=float(eigs[0]),
        trace_norm_minus_one=float(np.sum(np.abs(eigs)) - 1.0),
        eigenbasis_value=scan_value(vecs),
    )
