"""Classical Fisher information of three concrete measurement schemes.

Direct measurement records photon arrival coordinates; its outcome density
is the two-Gaussian intensity profile and the information is an integral.
The two binary schemes each reduce a detection window to one bit:

* Gaussian-mode sorting couples the image into a single-mode fiber matched
  to the origin source and distinguishes fundamental-mode photons from the
  rest; the success probability is P_G = 1 + q (exp(-d**2/4) - 1).
* Zero-photon detection splits the field into symmetric and antisymmetric
  parts by image inversion and asks whether the antisymmetric port is dark.
  The port's mean photon number is N_a = (q/2)(1 - exp(-d**2/2)) and its
  thermal (Bose-Einstein) statistics give P_Z = 1 / (1 + N_a).

For a binary outcome with success probability P(d) the information is
(dP/dd)**2 / (P (1 - P)).  Both binary informations have removable 0/0
points at d = 0 with limit q; evaluation there is rejected and the limit is
available from :func:`small_separation_limit` (direct measurement tends to
q**2 instead, the residual unequal-brightness form of the Rayleigh curse).

Unit caveat: direct and Gaussian-mode informations are per detected photon,
while the zero-photon information is per temporal mode of the antisymmetric
port with the window's total mean photon number normalized to one.  The
formulas are reproduced in those native units; comparisons across schemes
inherit the convention.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy import integrate

from .scene import Scene, require_mixed

_SQRT_2PI = math.sqrt(2.0 * math.pi)


class Scheme(enum.Enum):
    """The three measurement schemes with modelled outcome statistics."""

    DIRECT = "direct"
    GAUSSIAN_MODE = "gaussian"
    ZERO_PHOTON = "zero"


class QuadratureConvergenceError(RuntimeError):
    """Adaptive quadrature could not meet the requested tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Controls for the direct-measurement information integral.

    ``trunc_radius`` is the half-width of the integration window beyond each
    source centre; the integrand decays like a Gaussian, so radius 8 already
    puts the truncation error below 1e-12.  ``floor`` replaces the intensity
    in the denominator where it underflows, avoiding 0/0 in the far tails.
    """

    abs_tol: float = 1e-10
    trunc_radius: float = 10.0
    floor: float = 1e-300

    def __post_init__(self):
        if not (0.0 < self.abs_tol <= 1e-8):
            raise ValueError(f"abs_tol must lie in (0, 1e-8], got {self.abs_tol!r}")
        if self.trunc_radius < 8.0:
            raise ValueError(f"trunc_radius must be >= 8, got {self.trunc_radius!r}")
        if not (0.0 < self.floor <= 1e-280):
            raise ValueError(f"floor must lie in (0, 1e-280], got {self.floor!r}")


def _normal_pdf(x: float, center: float) -> float:
    return math.exp(-0.5 * (x - center) ** 2) / _SQRT_2PI


def intensity_profile(scene: Scene, x: float) -> float:
    """Photon arrival density at image-plane coordinate x."""
    if not math.isfinite(x):
        raise ValueError(f"coordinate must be finite, got {x!r}")
    return (1.0 - scene.q) * _normal_pdf(x, 0.0) + scene.q * _normal_pdf(x, scene.d)


def _d_intensity(scene: Scene, x: float) -> float:
    # Analytic d-derivative of the intensity profile.
    return scene.q * (x - scene.d) * _normal_pdf(x, scene.d)


def cfi_direct(scene: Scene, quad: QuadratureSpec | None = None) -> float:
    """Information of coordinate-resolved detection, by adaptive quadrature."""
    require_mixed(scene)
    spec = quad if quad is not None else QuadratureSpec()

    def integrand(x: float) -> float:
        dl = _d_intensity(scene, x)
        return dl * dl / max(intensity_profile(scene, x), spec.floor)

    lo = -spec.trunc_radius
    hi = scene.d + spec.trunc_radius
    result = integrate.quad(
        integrand,
        lo,
        hi,
        epsabs=spec.abs_tol,
        epsrel=0.0,
        limit=200,
        points=(0.0, scene.d),
        full_output=1,
    )
    value, abserr = result[0], result[1]
    if len(result) > 3 or abserr > spec.abs_tol:
        raise QuadratureConvergenceError(
            f"quadrature error estimate {abserr:.2e} exceeds abs_tol {spec.abs_tol:.2e}"
        )
    return value


def p_gaussian(scene: Scene) -> float:
    """Probability that a detected photon sits in the fundamental fiber mode."""
    require_mixed(scene)
    return 1.0 + scene.q * math.expm1(-scene.d * scene.d / 4.0)


def cfi_gaussian(scene: Scene) -> float:
    """Information of the binary fiber-mode measurement.

    d = 0 is a removable 0/0 (both outcome probabilities freeze); use
    :func:`small_separation_limit` for the limiting value q.
    """
    require_mixed(scene)
    q, d = scene.q, scene.d
    if d == 0.0:
        raise ValueError(
            "binary-scheme information is 0/0 at d = 0; its limit is q "
            "(see small_separation_limit)"
        )
    attenuation = math.exp(-d * d / 4.0)
    dp = -(q * d / 2.0) * attenuation
    success = 1.0 + q * math.expm1(-d * d / 4.0)
    failure = -q * math.expm1(-d * d / 4.0)
    return dp * dp / (success * failure)


def mean_antisym_photons(scene: Scene) -> float:
    """Mean photon number in the antisymmetric output of image inversion."""
    require_mixed(scene)
    return -(scene.q / 2.0) * math.expm1(-scene.d * scene.d / 2.0)


def p_zero(scene: Scene) -> float:
    """Probability of a dark antisymmetric port (thermal zero-photon event)."""
    return 1.0 / (1.0 + mean_antisym_photons(scene))


def cfi_zero(scene: Scene) -> float:
    """Information of the binary dark-port measurement, per temporal mode.

    Equals (N_a')**2 / ((1 + N_a)**2 N_a); rejects the removable d = 0
    point, whose limit is q.
    """
    require_mixed(scene)
    q, d = scene.q, scene.d
    if d == 0.0:
        raise ValueError(
            "binary-scheme information is 0/0 at d = 0; its limit is q "
            "(see small_separation_limit)"
        )
    n_a = mean_antisym_photons(scene)
    d_n_a = (q * d / 2.0) * math.exp(-d * d / 2.0)
    return d_n_a * d_n_a / ((1.0 + n_a) ** 2 * n_a)


def small_separation_limit(scheme: Scheme, q: float) -> float:
    """d -> 0 limit of each scheme's information: q for the binary schemes,
    q**2 for direct measurement.  A limit, not an evaluation: the binary
    informations are 0/0 at coincidence."""
    require_mixed(Scene(q=q, d=1.0))
    if scheme is Scheme.DIRECT:
        return q * q
    return q


def cfi(scheme: Scheme, scene: Scene, quad: QuadratureSpec | None = None) -> float:
    """Dispatch to the scheme-specific information."""
    if scheme is Scheme.DIRECT:
        return cfi_direct(scene, quad)
    if scheme is Scheme.GAUSSIAN_MODE:
        return cfi_gaussian(scene)
    if scheme is Scheme.ZERO_PHOTON:
        return cfi_zero(scene)
    raise ValueError(f"unknown scheme {scheme!r}")
