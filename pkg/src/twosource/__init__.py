"""Fisher-information limits for two unequal-brightness incoherent sources.

The library answers one estimation question: how precisely can the
separation between two incoherent point sources of relative brightness
q / (1 - q), imaged through a unit-width Gaussian PSF, be estimated per
detected photon?  It provides

* the quantum Fisher information of the separation in closed form,
* a brute-force grid oracle that re-derives it by numerical
  diagonalization, sharing nothing with the closed forms but the PSF,
* the classical Fisher information of direct imaging, binary fiber-mode
  sorting, and dark-port (image-inversion) detection,
* a seeded Monte Carlo harness checking that maximum-likelihood estimation
  attains the Cramér-Rao bound of each scheme.

Separations are in units of the PSF width; information is per detected
photon in units of inverse width squared; the achievable precision is the
inverse square root of an information value.
"""

from .cfi import (
    QuadratureConvergenceError,
    QuadratureSpec,
    Scheme,
    cfi,
    cfi_direct,
    cfi_gaussian,
    cfi_zero,
    intensity_profile,
    mean_antisym_photons,
    p_gaussian,
    p_zero,
    small_separation_limit,
)
from .grid_oracle import (
    GridSpec,
    IllConditionedWarning,
    default_grid,
    density_matrix,
    qfi_grid,
)
from .qfi import CURVE_KINDS, FisherCurve, precision_limit, qfi, qfi_curve, qfi_minimum
from .scene import (
    MIXED_BRIGHTNESS_EPS,
    GramData,
    Scene,
    gram,
    overlap,
    overlap_derivative,
    require_mixed,
)
from .simulate import (
    CrbReport,
    MleResult,
    SimConfig,
    SimulationRefusedError,
    TrialRecord,
    crb_report,
    mle,
    run_trial,
    run_trials,
    sample,
    trial_rng,
)
from .spectral import (
    LAMBDA2_FLOOR,
    DegenerateDecompositionError,
    SpectralData,
    decompose,
    eigenvalue_gap,
)
from .verify import CheckResult, ratio_threshold, run_checks

__version__ = "0.1.0"

__all__ = [
    "CURVE_KINDS",
    "CheckResult",
    "CrbReport",
    "DegenerateDecompositionError",
    "FisherCurve",
    "GramData",
    "GridSpec",
    "IllConditionedWarning",
    "LAMBDA2_FLOOR",
    "MIXED_BRIGHTNESS_EPS",
    "MleResult",
    "QuadratureConvergenceError",
    "QuadratureSpec",
    "Scene",
    "Scheme",
    "SimConfig",
    "SimulationRefusedError",
    "SpectralData",
    "TrialRecord",
    "cfi",
    "cfi_direct",
    "cfi_gaussian",
    "cfi_zero",
    "crb_report",
    "decompose",
    "default_grid",
    "density_matrix",
    "eigenvalue_gap",
    "gram",
    "intensity_profile",
    "mean_antisym_photons",
    "mle",
    "overlap",
    "overlap_derivative",
    "p_gaussian",
    "p_zero",
    "precision_limit",
    "qfi",
    "qfi_curve",
    "qfi_grid",
    "qfi_minimum",
    "ratio_threshold",
    "require_mixed",
    "run_checks",
    "run_trial",
    "run_trials",
    "sample",
    "small_separation_limit",
    "trial_rng",
    "__version__",
]
