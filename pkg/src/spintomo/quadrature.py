"""Quadrature over the rotation group for band-limited integrands.

The integrands arising from spin symbols are trigonometric polynomials:
Gauss-Legendre in cos(beta) and a uniform periodic rule in gamma integrate
them exactly at finite node counts, and the alpha integral is carried
analytically (the weight functions carry no alpha dependence).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .halfint import HalfInt

GROUP_VOLUME = 8.0 * np.pi**2


@dataclass
class QuadratureGrid:
    """Product rule on (beta, gamma) with the alpha factor applied analytically.

    ``beta_nodes``/``beta_weights`` are Gauss-Legendre in x = cos(beta);
    ``gamma_nodes`` are uniform on [0, 2pi) with equal weights.  The total
    weight including ``alpha_factor`` equals the group volume 8 pi^2.
    """

    beta_nodes: np.ndarray
    beta_weights: np.ndarray
    gamma_nodes: np.ndarray
    alpha_factor: float
    exactness_degree: int
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n_beta(self) -> int:
        return self.beta_nodes.size

    @property
    def n_gamma(self) -> int:
        return self.gamma_nodes.size

    @property
    def n_nodes(self) -> int:
        return self.n_beta * self.n_gamma

    def node_angles(self) -> tuple[np.ndarray, np.ndarray]:
        """Flattened (beta, gamma) node lists, beta-major."""
        b = np.repeat(self.beta_nodes, self.n_gamma)
        g = np.tile(self.gamma_nodes, self.n_beta)
        return b, g

    def node_weights(self) -> np.ndarray:
        """Per-(beta, gamma) weights; sum equals 4 pi (no alpha factor)."""
        gamma_w = 2.0 * np.pi / self.n_gamma
        return np.repeat(self.beta_weights, self.n_gamma) * gamma_w

    def group_weights(self) -> np.ndarray:
        """Node weights including the alpha factor; sum equals 8 pi^2."""
        return self.node_weights() * self.alpha_factor


def make_grid(j, oversample: float = 1.5) -> QuadratureGrid:
    """Grid sized to integrate spin-j symbol products exactly.

    N_beta = ceil(oversample*(2j+1)) Gauss-Legendre nodes in cos(beta) and
    N_gamma = ceil(oversample*(4j+1)) uniform gamma nodes.  Values of
    ``oversample`` below 1 are permitted but deliberately under-resolve the
    integrands (useful for aliasing demonstrations).
    """
    j = HalfInt.of(j)
    if j.twice < 0:
        raise ValueError("spin j must be nonnegative")
    if oversample <= 0:
        raise ValueError("oversample must be positive")
    two_j = j.twice
    n_beta = max(1, math.ceil(oversample * (two_j + 1)))
    n_gamma = max(1, math.ceil(oversample * (2 * two_j + 1)))
    x, w = np.polynomial.legendre.leggauss(n_beta)
    beta = np.arccos(x)
    degree = min((2 * n_beta - 1) // 2, (n_gamma - 1) // 2)
    return QuadratureGrid(
        beta_nodes=beta,
        beta_weights=w,
        gamma_nodes=2.0 * np.pi * np.arange(n_gamma) / n_gamma,
        alpha_factor=2.0 * np.pi,
        exactness_degree=degree,
    )
