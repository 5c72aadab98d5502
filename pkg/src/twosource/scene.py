"""Two incoherent point sources seen through a Gaussian point-spread function.

The image-plane amplitude of a point source centred at c is
(2*pi)**(-1/4) * exp(-(x - c)**2 / 4), a Gaussian PSF of unit width.  All
separations are measured in units of that width, and all information values
are per detected photon, in units of inverse width squared.  A caller working
at a physical width sigma rescales d -> d/sigma on the way in and divides
Fisher information by sigma**2 on the way out.

One source sits at the origin with brightness 1 - q, the other at separation
d with brightness q.  Three vectors carry everything the information formulas
need: the origin state, the displaced state, and the derivative of the
displaced state with respect to the separation.  Their pairwise inner
products exist in closed form and are collected in :class:`GramData`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Analytic formulas divide by q(1-q); brightness closer than this to a pure
# single source is only meaningful to the grid oracle.
MIXED_BRIGHTNESS_EPS = 1e-9


@dataclass(frozen=True)
class Scene:
    """One estimation problem: relative brightness q, true separation d.

    q may take the endpoint values 0 and 1 (single visible source); the
    analytic modules reject those via :func:`require_mixed`, the grid oracle
    accepts them.
    """

    q: float
    d: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and 0.0 <= self.q <= 1.0):
            raise ValueError(f"relative brightness q must lie in [0, 1], got {self.q!r}")
        if not (math.isfinite(self.d) and self.d >= 0.0):
            raise ValueError(f"separation d must be finite and >= 0, got {self.d!r}")


def require_mixed(scene: Scene) -> None:
    """Reject scenes too close to a single-source limit for the closed forms."""
    if not (MIXED_BRIGHTNESS_EPS <= scene.q <= 1.0 - MIXED_BRIGHTNESS_EPS):
        raise ValueError(
            f"analytic formulas need {MIXED_BRIGHTNESS_EPS} <= q <= "
            f"{1.0 - MIXED_BRIGHTNESS_EPS}; got q={scene.q!r} "
            "(use the grid oracle for single-source endpoints)"
        )


def _check_separation(d: float) -> None:
    if not math.isfinite(d):
        raise ValueError(f"separation must be finite, got {d!r}")
    if d < 0.0:
        raise ValueError(f"separation must be >= 0, got {d!r}")


def overlap(d: float) -> float:
    """Inner product of the origin and displaced PSF states, exp(-d**2/8)."""
    _check_separation(d)
    return math.exp(-d * d / 8.0)


def overlap_derivative(d: float) -> float:
    """Derivative of :func:`overlap` with respect to the separation."""
    _check_separation(d)
    return -(d / 4.0) * math.exp(-d * d / 8.0)


@dataclass(frozen=True)
class GramData:
    """Inner products among {origin state, displaced state, its d-derivative}.

    ``matrix`` is the symmetric 3x3 Gram matrix in that basis order:

        [[1,        overlap,  overlap_deriv],
         [overlap,  1,        0            ],
         [overlap_deriv, 0,   1/4          ]]

    The zero says the displaced state keeps unit norm as d varies; the 1/4
    is the variance-like norm of the derivative state.  The matrix is
    positive semidefinite for every separation and rank-deficient exactly at
    coincidence (d = 0), where rows 0 and 1 coincide.
    """

    overlap: float
    overlap_deriv: float
    matrix: np.ndarray


def gram(d: float) -> GramData:
    """Closed-form Gram matrix of the three basis states at separation d."""
    value = overlap(d)
    deriv = overlap_derivative(d)
    m = np.array(
        [
            [1.0, value, deriv],
            [value, 1.0, 0.0],
            [deriv, 0.0, 0.25],
        ]
    )
    m.flags.writeable = False
    return GramData(overlap=value, overlap_deriv=deriv, matrix=m)
