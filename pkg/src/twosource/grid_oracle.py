"""Brute-force cross-check of the closed-form spectra and QFI.

Everything here deliberately ignores the analytic decomposition: the
one-photon state is sampled on a coordinate grid, built as a dense matrix,
diagonalized numerically, and fed to the generic eigenbasis formula

    Q = sum over pairs with p_i + p_j > tau of 2 |<i|drho|j>|**2 / (p_i + p_j)

with drho from a central finite difference in the separation.  The only
inputs shared with the closed-form path are the Gaussian PSF profiles and
the mixture weights, so agreement between the two routes validates the
spectral coefficients, their derivatives, and the three-sum assembly end to
end.

Unlike the analytic modules this path accepts the single-source endpoints
q = 0 and q = 1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .scene import Scene

# Pairs whose eigenvalue sum falls below this are numerically 0/0 noise from
# the null space; the exact contribution of those pairs vanishes.
EIGENVALUE_CUTOFF = 1e-12

# Probability mass of a source's intensity allowed to fall outside the grid.
TAIL_MASS_LIMIT = 1e-12


class IllConditionedWarning(UserWarning):
    """Top eigenvalues too close for a trustworthy differentiated spectrum."""


@dataclass(frozen=True)
class GridSpec:
    """Coordinate grid and finite-difference step for the brute-force path."""

    x_min: float
    x_max: float
    n: int = 2048
    fd_step: float = 1e-4

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValueError("grid bounds must be finite")
        if not (self.x_min < 0.0 < self.x_max):
            raise ValueError(f"grid must straddle the origin, got [{self.x_min}, {self.x_max}]")
        if self.n < 256:
            raise ValueError(f"need at least 256 grid points, got {self.n}")
        if not (1e-6 <= self.fd_step <= 1e-3):
            raise ValueError(f"fd_step must lie in [1e-6, 1e-3], got {self.fd_step!r}")

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n)


def default_grid(scene: Scene, n: int = 2048, fd_step: float = 1e-4, pad: float = 8.0) -> GridSpec:
    """Grid extending ``pad`` PSF widths beyond each source centre."""
    return GridSpec(x_min=-pad, x_max=scene.d + pad, n=n, fd_step=fd_step)


def _gaussian_tail(radius: float) -> float:
    # Intensity tail mass of one source beyond `radius` PSF widths.
    return 0.5 * math.erfc(radius / math.sqrt(2.0))


def _validate_coverage(scene: Scene, grid: GridSpec) -> None:
    if grid.x_min > -6.0 or grid.x_max < scene.d + 6.0:
        raise ValueError(
            f"grid [{grid.x_min}, {grid.x_max}] must cover x_min <= -6 and "
            f"x_max >= d + 6 = {scene.d + 6.0}"
        )
    tail = max(
        _gaussian_tail(-grid.x_min),
        _gaussian_tail(grid.x_max),
        _gaussian_tail(scene.d - grid.x_min),
        _gaussian_tail(grid.x_max - scene.d),
    )
    if tail > TAIL_MASS_LIMIT:
        raise ValueError(
            f"grid truncates a source at tail mass {tail:.2e} > {TAIL_MASS_LIMIT}; "
            "widen the window"
        )


def _state(x: np.ndarray, center: float) -> np.ndarray:
    v = np.exp(-((x - center) ** 2) / 4.0)
    return v / np.linalg.norm(v)


def density_matrix(scene: Scene, grid: GridSpec) -> np.ndarray:
    """Discretized one-photon state: (1-q)|0><0| + q|d><d| on the grid.

    The sampled PSF states are renormalized to unit norm, so the matrix has
    unit trace, is symmetric, and is positive semidefinite by construction.
    """
    _validate_coverage(scene, grid)
    x = grid.x
    psi0 = _state(x, 0.0)
    psid = _state(x, scene.d)
    return (1.0 - scene.q) * np.outer(psi0, psi0) + scene.q * np.outer(psid, psid)


def qfi_grid(scene: Scene, grid: GridSpec) -> float:
    """Quantum Fisher information from numerical diagonalization.

    Builds the state at d +- fd_step for the central-difference derivative,
    diagonalizes the state at d, and evaluates the generic pair-sum formula
    with the eigenvalue cutoff.  The static (1-q)|0><0| part of the state is
    d-independent and drops out of the difference exactly, so the derivative
    is applied through the displaced-state factors; the operator is
    identical to differencing the full matrices, without the 1/fd_step
    roundoff amplification.
    """
    _validate_coverage(scene, grid)
    x = grid.x
    h = grid.fd_step

    rho = density_matrix(scene, grid)
    p, vecs = scipy.linalg.eigh(rho, driver="evd", check_finite=False, overwrite_a=True)
    if p[-1] - p[-2] < 10.0 * h:
        warnings.warn(
            f"top eigenvalues are {p[-1] - p[-2]:.2e} apart, closer than 10*fd_step; "
            "the differentiated spectrum is ill-conditioned",
            IllConditionedWarning,
            stacklevel=2,
        )

    plus = vecs.T @ _state(x, scene.d + h)
    minus = vecs.T @ _state(x, scene.d - h)
    m = (scene.q / (2.0 * h)) * (np.outer(plus, plus) - np.outer(minus, minus))

    denom = p[:, None] + p[None, :]
    mask = denom > EIGENVALUE_CUTOFF
    m *= m
    np.divide(m, denom, out=m, where=mask)
    return float(2.0 * m[mask].sum())
