"""Gaussian steering quantifiers and steering-regime classification.

The quantifiers are

    G_(A->B) = max{0, (1/2) ln(det sigma_A / det sigma_AB)}
    G_(B->A) = max{0, (1/2) ln(det sigma_B / det sigma_AB)}

in nats. For standard-form states these reduce to
max{0, ln(alpha / (alpha beta - gamma^2))} and its beta counterpart, so
A can steer B exactly when det sigma_A > det sigma_AB (and symmetrically).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import UnphysicalState
from .gaussian import (
    DEFAULT_PHYSICALITY_TOL,
    GeneralCM,
    StandardFormCM,
    det_blocks,
    standard_form_of,
    symplectic_eigenvalues,
)

DEFAULT_CLASSIFY_TOL = 1e-12


class Regime(enum.Enum):
    NO_STEERING = "NoSteering"
    ONE_WAY_A_TO_B = "OneWayAtoB"
    ONE_WAY_B_TO_A = "OneWayBtoA"
    TWO_WAY = "TwoWay"


@dataclass(frozen=True)
class SteeringResult:
    """Both quantifiers, the three determinants, and the regime label."""

    g_a_to_b: float
    g_b_to_a: float
    det_a: float
    det_b: float
    det_ab: float
    regime: Regime


def _gate_physical(cm: StandardFormCM, tol: float):
    if math.isinf(tol):
        return
    if symplectic_eigenvalues(cm).nu_minus < 1.0 - tol:
        raise UnphysicalState(
            f"state (alpha={cm.alpha}, beta={cm.beta}, gamma={cm.gamma}) "
            "violates the uncertainty principle"
        )


def _quantifiers(cm: StandardFormCM) -> tuple[float, float]:
    a, b, g = cm.alpha, cm.beta, cm.gamma
    s = a * b - g * g
    if s <= 0.0:
        raise UnphysicalState(f"det sigma_AB factor {s} is not positive")
    return max(0.0, math.log(a / s)), max(0.0, math.log(b / s))


def steering_a_to_b(cm: StandardFormCM, tol: float = DEFAULT_PHYSICALITY_TOL) -> float:
    """Steerability of B by A, in nats; 0 when A cannot steer B.

    tol is the physicality gate on nu_-; pass math.inf to skip the gate
    (useful for statistically estimated matrices).
    """
    _gate_physical(cm, tol)
    return _quantifiers(cm)[0]


def steering_b_to_a(cm: StandardFormCM, tol: float = DEFAULT_PHYSICALITY_TOL) -> float:
    """Steerability of A by B, in nats; 0 when B cannot steer A."""
    _gate_physical(cm, tol)
    return _quantifiers(cm)[1]


def regime_from_quantifiers(g_ab: float, g_ba: float, tol: float = DEFAULT_CLASSIFY_TOL) -> Regime:
    """Regime label from the two quantifiers; values within tol count as zero."""
    a_steers = g_ab > tol
    b_steers = g_ba > tol
    if a_steers and b_steers:
        return Regime.TWO_WAY
    if a_steers:
        return Regime.ONE_WAY_A_TO_B
    if b_steers:
        return Regime.ONE_WAY_B_TO_A
    return Regime.NO_STEERING


def classify(
    cm,
    tol: float = DEFAULT_CLASSIFY_TOL,
    structure_tol: float = 1e-9,
    physicality_tol: float = DEFAULT_PHYSICALITY_TOL,
) -> SteeringResult:
    """Full steering result for a standard-form or general covariance matrix.

    General (4x4) input is first projected with standard_form_of using
    structure_tol; quantifiers within tol of zero are treated as exact
    zeros, so boundary points classify as non-steering in that direction.
    """
    if not isinstance(cm, StandardFormCM):
        if not isinstance(cm, GeneralCM):
            cm = GeneralCM(cm)
        cm, _ = standard_form_of(cm, structure_tol)
    _gate_physical(cm, physicality_tol)
    g_ab, g_ba = _quantifiers(cm)
    det_a, det_b, det_ab = det_blocks(cm)
    return SteeringResult(
        g_a_to_b=g_ab,
        g_b_to_a=g_ba,
        det_a=det_a,
        det_b=det_b,
        det_ab=det_ab,
        regime=regime_from_quantifiers(g_ab, g_ba, tol),
    )
