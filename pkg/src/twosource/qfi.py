"""Quantum Fisher information for the separation of two unequal sources.

For a state with spectral decomposition sum_i lambda_i |i><i| the quantum
Fisher information of the separation splits into three sums,

    Q = sum_i (dlambda_i)**2 / lambda_i
      + sum_i 4 lambda_i <di|di>
      - sum_ij 8 lambda_i lambda_j / (lambda_i + lambda_j) |<di|j>|**2,

where |di> is the d-derivative of eigenvector |i>.  Both nonzero eigenpairs
expand in the span of {origin state, displaced state, derivative of the
displaced state}, so every bra-ket above reduces to an entry of the 3x3 Gram
matrix; no coordinate-space integral appears on this path.  The diagonal
i = j terms of the third sum are kept as written (they vanish for normalized
real eigenvectors, at rounding level).

The inverse square root of Q is the best achievable precision per detected
photon, over all physically allowed measurements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .scene import Scene, gram, require_mixed
from .spectral import decompose

CURVE_KINDS = ("QFI", "CFI-direct", "CFI-gaussian", "CFI-zero", "grid-oracle-QFI")


def qfi(scene: Scene, *, strict_small_d: bool = False) -> float:
    """Quantum Fisher information of the separation, per detected photon.

    Rejects d = 0, where the eigenbasis is undefined; every positive
    separation is evaluated by the cancellation-free closed forms.
    """
    require_mixed(scene)
    if scene.d == 0.0:
        raise ValueError(
            "d = 0 is a domain boundary for the analytic path; evaluate at "
            "a positive separation (the small-d limit equals q)"
        )
    s = decompose(scene, strict_small_d=strict_small_d)
    g = gram(scene.d).matrix

    lam = (s.lambda1, s.lambda2)
    d_lam = (s.d_lambda1, s.d_lambda2)
    # Eigenvectors and their derivatives in the {origin, displaced,
    # d(displaced)} basis; the derivative picks up b_i along the third axis.
    vecs = (
        np.array([s.a1, s.b1, 0.0]),
        np.array([s.a2, s.b2, 0.0]),
    )
    dvecs = (
        np.array([s.d_a1, s.d_b1, s.b1]),
        np.array([s.d_a2, s.d_b2, s.b2]),
    )

    term1 = d_lam[0] ** 2 / lam[0] + d_lam[1] ** 2 / lam[1]
    term2 = 4.0 * (
        lam[0] * float(dvecs[0] @ g @ dvecs[0])
        + lam[1] * float(dvecs[1] @ g @ dvecs[1])
    )
    term3 = 0.0
    for i in range(2):
        for j in range(2):
            cross = float(dvecs[i] @ g @ vecs[j])
            term3 += 8.0 * lam[i] * lam[j] / (lam[i] + lam[j]) * cross * cross
    return term1 + term2 - term3


def precision_limit(information: float) -> float:
    """Smallest achievable standard deviation per photon, 1/sqrt(F)."""
    if not (math.isfinite(information) and information > 0.0):
        raise ValueError(f"information must be finite and positive, got {information!r}")
    return 1.0 / math.sqrt(information)


@dataclass(frozen=True)
class FisherCurve:
    """One information functional sampled over a separation grid.

    ``kind`` labels the functional (one of CURVE_KINDS); ``points`` holds
    (d, value) pairs with d strictly increasing and values finite and
    nonnegative.
    """

    q: float
    kind: str
    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if self.kind not in CURVE_KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}; expected one of {CURVE_KINDS}")
        if not self.points:
            raise ValueError("curve must contain at least one point")
        ds = [p[0] for p in self.points]
        if any(b <= a for a, b in zip(ds, ds[1:])):
            raise ValueError("curve separations must be strictly increasing")
        for d, v in self.points:
            if not (math.isfinite(v) and v >= 0.0):
                raise ValueError(f"curve value at d={d!r} is not a finite nonnegative number: {v!r}")

    @property
    def separations(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def values(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])


def _validated_grid(d_grid: Iterable[float]) -> list[float]:
    ds = [float(d) for d in d_grid]
    if not ds:
        raise ValueError("separation grid must be nonempty")
    if any(not (math.isfinite(d) and d > 0.0) for d in ds):
        raise ValueError("separation grid entries must be finite and > 0")
    if any(b <= a for a, b in zip(ds, ds[1:])):
        raise ValueError("separation grid must be strictly increasing")
    return ds


def qfi_curve(q: float, d_grid: Sequence[float]) -> FisherCurve:
    """Quantum Fisher information over a strictly increasing positive grid."""
    ds = _validated_grid(d_grid)
    points = tuple((d, qfi(Scene(q, d))) for d in ds)
    return FisherCurve(q=q, kind="QFI", points=points)


def qfi_minimum(
    q: float,
    d_lo: float = 0.1,
    d_hi: float = 5.0,
    n: int = 201,
    tol: float = 1e-6,
) -> tuple[float, float]:
    """Locate the separation minimizing the QFI on [d_lo, d_hi].

    Coarse grid scan followed by golden-section refinement between the
    neighbours of the grid argmin.  Returns (d_at_min, value).
    """
    from ._search import golden_min

    if not (0.0 < d_lo < d_hi):
        raise ValueError("need 0 < d_lo < d_hi")
    ds = np.linspace(d_lo, d_hi, n)
    vals = np.array([qfi(Scene(q, float(d))) for d in ds])
    i = int(np.argmin(vals))
    lo = float(ds[max(i - 1, 0)])
    hi = float(ds[min(i + 1, n - 1)])
    return golden_min(lambda d: qfi(Scene(q, d)), lo, hi, tol=tol)
