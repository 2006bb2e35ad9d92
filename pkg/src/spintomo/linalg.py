"""Dense complex linear algebra on small matrices.

Hermitian eigendecomposition, Hermitian matrix exponentials, Haar-random
unitaries, random density matrices, partial trace/transpose.  Everything is
64-bit IEEE and sized for desk-scale problems (dimension below ~100).

Randomness uses numpy's PCG64 generator; a fixed seed reproduces the sample
stream bit for bit on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

HERMITICITY_TOL = 1e-10
PSD_SLACK = 1e-10


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def hermiticity_residual(m) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m, tol: float = HERMITICITY_TOL) -> bool:
    return hermiticity_residual(m) <= tol


def unitarity_residual(u) -> float:
    u = np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def eig_hermitian(m, tol: float = HERMITICITY_TOL):
    """Eigenvalues (descending) and eigenvectors of a Hermitian matrix.

    Returns (w, v) with m = v @ diag(w) @ v^dagger.
    """
    m = as_matrix(m)
    if hermiticity_residual(m) > tol:
        raise ValueError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(m)
    return w[::-1].copy(), v[:, ::-1].copy()


def expm_hermitian_times(h, t: float) -> np.ndarray:
    """exp(-i t H) for Hermitian H, via eigendecomposition."""
    h = as_matrix(h)
    if hermiticity_residual(h) > HERMITICITY_TOL:
        raise ValueError("generator is not Hermitian within tolerance")
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def svd(m):
    """Thin wrapper kept for the module contract; returns (u, s, vh)."""
    return np.linalg.svd(np.asarray(m, dtype=complex))


def _haar_from_rng(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n)))
    z /= np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[:, None, :]


def haar_unitary(n: int, seed: int) -> np.ndarray:
    """One Haar-distributed n x n unitary (QR of a Ginibre matrix with phase fix)."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    rng = np.random.default_rng(seed)
    return _haar_from_rng(n, 1, rng)[0]


def haar_unitaries(n: int, count: int, rng_or_seed) -> np.ndarray:
    """Batch of Haar unitaries, shape (count, n, n)."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    rng = (
        rng_or_seed
        if isinstance(rng_or_seed, np.random.Generator)
        else np.random.default_rng(rng_or_seed)
    )
    return _haar_from_rng(n, count, rng)


def kron_all(mats) -> np.ndarray:
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


@dataclass
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix with subsystem dims."""

    mat: np.ndarray
    dims: tuple[int, ...] = ()
    psd_slack: float = field(default=PSD_SLACK, repr=False)

    def __post_init__(self):
        self.mat = as_matrix(self.mat)
        n = self.mat.shape[0]
        if not self.dims:
            self.dims = (n,)
        self.dims = tuple(int(d) for d in self.dims)
        if int(np.prod(self.dims)) != n:
            raise ValueError(f"dims {self.dims} do not multiply to dimension {n}")
        if hermiticity_residual(self.mat) > 1e-12:
            raise ValueError("density matrix is not Hermitian within 1e-12")
        if abs(np.trace(self.mat).real - 1.0) > 1e-12 or abs(np.trace(self.mat).imag) > 1e-12:
            raise ValueError("density matrix trace differs from 1 beyond 1e-12")
        if np.min(np.linalg.eigvalsh(self.mat)) < -self.psd_slack:
            raise ValueError("density matrix has a negative eigenvalue beyond tolerance")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in descending order."""
        return np.linalg.eigvalsh(self.mat)[::-1].copy()

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))

    def reshaped(self, dims) -> "DensityMatrix":
        """Same matrix with a different declared tensor factorization."""
        return DensityMatrix(self.mat.copy(), tuple(dims), psd_slack=self.psd_slack)


def random_density(n: int, rank: int, seed: int, dims=None) -> DensityMatrix:
    """Random density matrix of the given numerical rank (Ginibre construction)."""
    if not 1 <= rank <= n:
        raise ValueError(f"rank must lie in 1..{n}, got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    m = g @ g.conj().T
    m /= np.trace(m).real
    m = 0.5 * (m + m.conj().T)
    return DensityMatrix(m, tuple(dims) if dims else (n,))


def _resolve_keep(dims: tuple[int, ...], keep) -> tuple[int, ...]:
    if isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    keep = tuple(sorted(set(int(k) for k in keep)))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if any(k < 0 or k >= len(dims) for k in keep):
        raise ValueError(f"subsystem index out of range for dims {dims}")
    return keep


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out every subsystem not listed in ``keep``."""
    dims = rho.dims
    keep = _resolve_keep(dims, keep)
    n_sub = len(dims)
    tensor = rho.mat.reshape(dims + dims)
    bra = list(range(n_sub))
    ket = [k if k not in keep else n_sub + k for k in range(n_sub)]
    out = [k for k in keep] + [n_sub + k for k in keep]
    reduced = np.einsum(tensor, bra + ket, out)
    d_keep = int(np.prod([dims[k] for k in keep]))
    return DensityMatrix(
        reduced.reshape(d_keep, d_keep), tuple(dims[k] for k in keep)
    )


def partial_transpose(rho: DensityMatrix, subsystem: int) -> np.ndarray:
    """Transpose on one tensor factor only; the result need not be PSD."""
    dims = rho.dims
    if len(dims) < 2:
        raise ValueError("partial transpose needs at least two declared subsystems")
    if not 0 <= subsystem < len(dims):
        raise ValueError(f"subsystem {subsystem} out of range for dims {dims}")
    n_sub = len(dims)
    tensor = rho.mat.reshape(dims + dims)
    tensor = np.swapaxes(tensor, subsystem, n_sub + subsystem)
    n = rho.dim
    return tensor.reshape(n, n)
