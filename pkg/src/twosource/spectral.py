"""Spectral decomposition of the one-photon image-plane state.

The state is a rank-2 mixture of two non-orthogonal Gaussian PSF states, so
it carries exactly two nonzero eigenvalues.  With gamma = 1 - 2q and
delta = overlap(d), the gap between them is

    gap = sqrt(gamma**2 + delta**2 * (1 - gamma**2)),

the eigenvalues are (1 +- gap)/2, and the eigenvectors expand in the
non-orthogonal basis {origin state, displaced state} with coefficients

    a1 =  sqrt((1-q) (gap + gamma) / (gap (1 + gap)))
    b1 =  sqrt(  q   (gap - gamma) / (gap (1 + gap)))
    a2 =  sqrt((1-q) (gap - gamma) / (gap (1 - gap)))
    b2 = -sqrt(  q   (gap + gamma) / (gap (1 - gap))).

Textbook evaluation of these expressions is 0/0-prone as d -> 0, where the
gap tends to 1.  Everything here is therefore arranged in cancellation-free
form,

    1 - gap        = 4q(1-q) (1 - delta**2) / (1 + gap),
    1 - delta**2   = -expm1(-d**2 / 4),
    gap -+ |gamma| = 4q(1-q) delta**2 / (gap +- |gamma|),

which keeps full relative accuracy at every positive separation; no series
switch-over is needed.  Derivatives come from the analytic chain rule via
logarithmic differentiation (finite differences appear only in tests, as an
independent check).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .scene import Scene, overlap, overlap_derivative, require_mixed

# Below this minor eigenvalue the decomposition is numerically rank-1; the
# regularized closed forms still evaluate it, but strict mode refuses.
LAMBDA2_FLOOR = 1e-14

# Rounding guard for eigenvector radicands: clamp tiny negatives, treat
# anything worse as an internal bug rather than noise.
_RADICAND_SLACK = -1e-14


class DegenerateDecompositionError(ValueError):
    """The two-source state has no usable two-dimensional eigenbasis."""


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues, eigenvector coefficients, and their d-derivatives.

    ``gap`` is the difference between the two nonzero eigenvalues
    (lambda1 - lambda2).  Coefficients (a_i, b_i) expand eigenvector i in the
    non-orthogonal {origin, displaced} basis with the sign convention
    a1, b1, a2 >= 0 and b2 <= 0.  Every ``d_*`` field is the derivative of
    its partner with respect to the separation.
    """

    gap: float
    lambda1: float
    lambda2: float
    a1: float
    b1: float
    a2: float
    b2: float
    d_gap: float
    d_lambda1: float
    d_lambda2: float
    d_a1: float
    d_b1: float
    d_a2: float
    d_b2: float


def eigenvalue_gap(scene: Scene) -> float:
    """Gap between the two nonzero eigenvalues of the one-photon state.

    Equals sqrt((1-2q)**2 + overlap**2 (1 - (1-2q)**2)); lies in
    [|1-2q|, 1], reaching 1 at coincidence and |1-2q| at infinite
    separation.  Symmetric under q -> 1-q.
    """
    require_mixed(scene)
    gamma = 1.0 - 2.0 * scene.q
    m = 4.0 * scene.q * (1.0 - scene.q)
    delta = overlap(scene.d)
    return math.sqrt(gamma * gamma + m * delta * delta)


def _sqrt_guarded(x: float) -> float:
    if x < 0.0:
        if x >= _RADICAND_SLACK:
            return 0.0
        raise ArithmeticError(
            f"eigenvector radicand {x!r} is negative beyond rounding slack; "
            "this indicates an internal inconsistency"
        )
    return math.sqrt(x)


def decompose(scene: Scene, *, strict_small_d: bool = False) -> SpectralData:
    """Full spectral data of the one-photon state at separation d > 0.

    The closed forms are evaluated in cancellation-free arrangements and are
    accurate at any positive separation.  Coincidence (d = 0) has no
    two-dimensional eigenbasis and raises DegenerateDecompositionError.
    With ``strict_small_d`` the same error is raised as soon as the minor
    eigenvalue falls below ``LAMBDA2_FLOOR``, for callers that prefer a
    refusal over working that deep in the rank-1 regime.
    """
    require_mixed(scene)
    q, d = scene.q, scene.d
    if d == 0.0:
        raise DegenerateDecompositionError(
            "coincident sources (d = 0) have a rank-1 state with no "
            "distinguished eigenbasis"
        )

    gamma = 1.0 - 2.0 * q
    m = 4.0 * q * (1.0 - q)
    delta = overlap(d)
    d_delta = overlap_derivative(d)
    delta_sq = delta * delta
    one_minus_delta_sq = -math.expm1(-d * d / 4.0)

    gap = math.sqrt(gamma * gamma + m * delta_sq)
    one_plus_gap = 1.0 + gap
    one_minus_gap = m * one_minus_delta_sq / one_plus_gap

    lambda1 = 0.5 * one_plus_gap
    lambda2 = 0.5 * one_minus_gap
    if strict_small_d and lambda2 < LAMBDA2_FLOOR:
        raise DegenerateDecompositionError(
            f"minor eigenvalue {lambda2:.3e} below {LAMBDA2_FLOOR} at d={d!r}; "
            "decomposition is numerically rank-1 (strict mode)"
        )

    # gap -+ gamma, each taken from whichever side is cancellation-free.
    if gamma >= 0.0:
        gap_plus_gamma = gap + gamma
        gap_minus_gamma = m * delta_sq / gap_plus_gamma
    else:
        gap_minus_gamma = gap - gamma
        gap_plus_gamma = m * delta_sq / gap_minus_gamma

    denom1 = gap * one_plus_gap
    denom2 = gap * one_minus_gap
    a1 = _sqrt_guarded((1.0 - q) * gap_plus_gamma / denom1)
    b1 = _sqrt_guarded(q * gap_minus_gamma / denom1)
    a2 = _sqrt_guarded((1.0 - q) * gap_minus_gamma / denom2)
    b2 = -_sqrt_guarded(q * gap_plus_gamma / denom2)

    d_gap = m * delta * d_delta / gap
    d_lambda1 = 0.5 * d_gap
    d_lambda2 = -0.5 * d_gap

    # Logarithmic derivatives: each coefficient is sqrt of a product of the
    # factors (gap +- gamma), 1/gap, and 1/(1 +- gap).
    inv_gap = 1.0 / gap
    inv_one_plus = 1.0 / one_plus_gap
    inv_one_minus = 1.0 / one_minus_gap
    inv_plus_gamma = 1.0 / gap_plus_gamma
    inv_minus_gamma = 1.0 / gap_minus_gamma

    d_a1 = 0.5 * a1 * d_gap * (inv_plus_gamma - inv_gap - inv_one_plus)
    d_b1 = 0.5 * b1 * d_gap * (inv_minus_gamma - inv_gap - inv_one_plus)
    d_a2 = 0.5 * a2 * d_gap * (inv_minus_gamma - inv_gap + inv_one_minus)
    d_b2 = 0.5 * b2 * d_gap * (inv_plus_gamma - inv_gap + inv_one_minus)

    return SpectralData(
        gap=gap,
        lambda1=lambda1,
        lambda2=lambda2,
        a1=a1,
        b1=b1,
        a2=a2,
        b2=b2,
        d_gap=d_gap,
        d_lambda1=d_lambda1,
        d_lambda2=d_lambda2,
        d_a1=d_a1,
        d_b1=d_b1,
        d_a2=d_a2,
        d_b2=d_b2,
    )
