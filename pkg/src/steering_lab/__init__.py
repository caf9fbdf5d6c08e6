"""Gaussian steering of two-mode squeezed states under loss and noise.

Quantifies directional steerability from covariance matrices, builds the
covariance matrix of a TMSS subjected to three noise/loss manipulation
schemes, maps steering regimes and their closed-form boundaries over
(eta, delta) parameter space, and simulates homodyne covariance estimation
with bootstrap error bars.
"""

from .boundary import (
    BISECTION_TOL,
    DEFAULT_DELTA_MAX,
    REGIME_BY_CODE,
    BoundaryCurve,
    Direction,
    RegionMap,
    SweepResult,
    analytic_boundary,
    boundary_curve,
    boundary_eta,
    closed_form_id,
    crossover_point,
    det_margin,
    numeric_zero_crossing,
    region_map,
    sweep_eta,
)
from .errors import (
    DomainError,
    MaxIterations,
    NoBracket,
    NonPositiveMatrix,
    NumericalFailure,
    SteeringLabError,
    StructureViolation,
    UnphysicalState,
)
from .gaussian import (
    DEFAULT_PHYSICALITY_TOL,
    GeneralCM,
    StandardFormCM,
    SymplecticSpectrum,
    det_blocks,
    is_physical,
    standard_form_of,
    symplectic_eigenvalues,
)
from .homodyne import (
    BootstrapSteering,
    EstimatedCM,
    QuadratureSample,
    bootstrap_cm,
    bootstrap_steering,
    estimate_cm,
    rng_metadata,
    sample_quadratures,
)
from .kernels import active_backend, use_backend
from .schemes import (
    Scheme,
    SchemeParams,
    build_cm,
    parse_scheme,
    scheme_i_cm,
    scheme_ii_cm,
    scheme_iii_cm,
    scheme_triples,
    tmss_cm,
    v_from_squeezing_db,
)
from .steering import (
    DEFAULT_CLASSIFY_TOL,
    Regime,
    SteeringResult,
    classify,
    regime_from_quantifiers,
    steering_a_to_b,
    steering_b_to_a,
)

__version__ = "0.1.0"
