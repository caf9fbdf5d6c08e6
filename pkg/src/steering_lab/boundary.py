"""Steering boundaries in (eta, delta) space: closed forms, root finding,
parameter sweeps and region maps.

For each noise scheme the sign of G_(X->Y) is governed by the gap
sqrt(det sigma_X) - sqrt(det sigma_AB), which reduces to a small polynomial
in (v, eta, delta):

  scheme I   A->B:  eta (v-1) (1-delta)
             B->A:  (v-1)(2 eta - 1) - delta (1 - eta + v eta)
  scheme II  A->B:  eta (v-1) - v delta
             B->A:  (v-1)(2 eta - 1 - delta)
  scheme III A->B:  eta (v-1) - v (1-eta) delta
             B->A:  (v-1)(2 eta - 1 - delta (1-eta))

These factored forms are evaluated directly (no covariance round trip), so
their sign is exact even on the boundary itself, where the quantifier built
from a rounded covariance triple sits within a few ulp of zero.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError, MaxIterations, NoBracket
from .schemes import Scheme, parse_scheme, scheme_triples
from .steering import DEFAULT_CLASSIFY_TOL, Regime, regime_from_quantifiers

# Regime for code = (A steers) + 2 * (B steers).
REGIME_BY_CODE = (
    Regime.NO_STEERING,
    Regime.ONE_WAY_A_TO_B,
    Regime.ONE_WAY_B_TO_A,
    Regime.TWO_WAY,
)

# Default delta-axis extent for region maps, matching the visible ranges of
# the reference parameter-space figures.
DEFAULT_DELTA_MAX = {Scheme.I: 1.2, Scheme.II: 1.2, Scheme.III: 7.0}

BISECTION_TOL = 1e-10
BISECTION_MAX_ITER = 200


class Direction(enum.Enum):
    A_TO_B = "AtoB"
    B_TO_A = "BtoA"


_CLOSED_FORM_IDS = {
    (Scheme.I, Direction.A_TO_B): "delta_a = 1",
    (Scheme.I, Direction.B_TO_A): "delta_a = (v-1)(2*eta-1)/(1-eta+v*eta)",
    (Scheme.II, Direction.A_TO_B): "delta_b = eta*(v-1)/v",
    (Scheme.II, Direction.B_TO_A): "delta_b = 2*eta-1",
    (Scheme.III, Direction.A_TO_B): "delta_c = eta*(v-1)/(v*(1-eta))",
    (Scheme.III, Direction.B_TO_A): "delta_c = (2*eta-1)/(1-eta)",
}


def closed_form_id(scheme, direction: Direction) -> str:
    """Human-readable tag for the closed-form boundary of scheme/direction."""
    scheme = _noise_scheme(scheme)
    return _CLOSED_FORM_IDS[(scheme, direction)]


def _noise_scheme(scheme) -> Scheme:
    scheme = parse_scheme(scheme)
    if scheme is Scheme.PURE:
        raise DomainError("the pure TMSS has no channel parameters, pick scheme 1, 2 or 3")
    return scheme


def _check_v_strict(v: float):
    if not v > 1.0:
        raise DomainError(f"boundaries require v > 1, got {v}")


def det_margin(scheme, direction: Direction, v: float, eta: float, delta: float) -> float:
    """Signed gap sqrt(det sigma_X) - sqrt(det sigma_AB) for one direction.

    Positive exactly when that direction steers; evaluated in the factored
    form listed in the module docstring, so the sign is reliable arbitrarily
    close to (and on) the boundary.
    """
    scheme = _noise_scheme(scheme)
    _check_v_strict(v)
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"transmission efficiency must be in [0, 1], got {eta}")
    if delta < 0.0:
        raise DomainError(f"noise variance must be >= 0, got {delta}")

    if scheme is Scheme.I:
        if direction is Direction.A_TO_B:
            return eta * (v - 1.0) * (1.0 - delta)
        return (v - 1.0) * (2.0 * eta - 1.0) - delta * (1.0 - eta + v * eta)
    if scheme is Scheme.II:
        if direction is Direction.A_TO_B:
            return eta * (v - 1.0) - v * delta
        return (v - 1.0) * (2.0 * eta - 1.0 - delta)
    if direction is Direction.A_TO_B:
        return eta * (v - 1.0) - v * (1.0 - eta) * delta
    return (v - 1.0) * (2.0 * eta - 1.0 - delta * (1.0 - eta))


def analytic_boundary(scheme, direction: Direction, v: float, eta: float):
    """Noise level at which the direction's quantifier crosses zero at eta.

    Returns None when no crossing exists for delta >= 0 (the direction is
    already non-steering at delta = 0).
    """
    scheme = _noise_scheme(scheme)
    _check_v_strict(v)
    if not 0.0 < eta < 1.0:
        raise DomainError(f"boundary curves are defined for 0 < eta < 1, got {eta}")

    if scheme is Scheme.I:
        if direction is Direction.A_TO_B:
            return 1.0
        delta = (v - 1.0) * (2.0 * eta - 1.0) / (1.0 - eta + v * eta)
        return delta if delta >= 0.0 else None
    if scheme is Scheme.II:
        if direction is Direction.A_TO_B:
            return eta * (v - 1.0) / v
        delta = 2.0 * eta - 1.0
        return delta if delta >= 0.0 else None
    if direction is Direction.A_TO_B:
        return eta * (v - 1.0) / (v * (1.0 - eta))
    delta = (2.0 * eta - 1.0) / (1.0 - eta)
    return delta if delta >= 0.0 else None


def boundary_eta(scheme, direction: Direction, v: float, delta: float):
    """Transmission at which the direction's quantifier crosses zero.

    Inverse of analytic_boundary along eta for fixed delta. Returns None
    when the crossing falls outside the open interval (0, 1), including the
    scheme I A->B case whose boundary is delta = 1 independent of eta.
    """
    scheme = _noise_scheme(scheme)
    _check_v_strict(v)
    if delta < 0.0:
        raise DomainError(f"noise variance must be >= 0, got {delta}")

    if scheme is Scheme.I:
        if direction is Direction.A_TO_B:
            return None
        if delta >= 2.0:
            return None
        eta = (v - 1.0 + delta) / ((v - 1.0) * (2.0 - delta))
    elif scheme is Scheme.II:
        if direction is Direction.A_TO_B:
            eta = delta * v / (v - 1.0)
        else:
            eta = (1.0 + delta) / 2.0
    else:
        if direction is Direction.A_TO_B:
            eta = v * delta / (v - 1.0 + v * delta)
        else:
            eta = (1.0 + delta) / (2.0 + delta)
    return eta if 0.0 < eta < 1.0 else None


def crossover_point(scheme, v: float) -> tuple[float, float]:
    """(eta, delta) where the two one-way boundaries of a scheme intersect."""
    scheme = _noise_scheme(scheme)
    _check_v_strict(v)
    if scheme is Scheme.II:
        return v / (1.0 + v), (v - 1.0) / (v + 1.0)
    if scheme is Scheme.III:
        return v / (1.0 + v), v - 1.0
    raise DomainError("scheme 1 boundaries do not intersect; no crossover point")


def numeric_zero_crossing(
    scheme,
    direction: Direction,
    v: float,
    delta: float,
    eta_bracket: tuple[float, float],
    tol: float = BISECTION_TOL,
    max_iter: int = BISECTION_MAX_ITER,
) -> float:
    """Bisection root of the direction's determinant gap over eta.

    The bracket endpoints must produce gaps of opposite (non-zero) sign;
    an endpoint sitting exactly on the boundary is returned as the root.
    The returned eta brackets the true crossing within tol.
    """
    lo, hi = float(eta_bracket[0]), float(eta_bracket[1])
    if not (0.0 <= lo < hi <= 1.0):
        raise DomainError(f"bracket must satisfy 0 <= lo < hi <= 1, got ({lo}, {hi})")
    f_lo = det_margin(scheme, direction, v, lo, delta)
    f_hi = det_margin(scheme, direction, v, hi, delta)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise NoBracket(
            f"gap has the same sign at both bracket ends: f({lo})={f_lo}, f({hi})={f_hi}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo < tol:
            return mid
        f_mid = det_margin(scheme, direction, v, mid, delta)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    raise MaxIterations(f"bisection did not reach {tol} within {max_iter} iterations")


@dataclass(frozen=True)
class BoundaryCurve:
    """Sampled zero-crossing curve of one direction in the (eta, delta) plane."""

    scheme: Scheme
    direction: Direction
    points: list = field(default_factory=list)  # ordered (eta, delta) pairs
    closed_form_id: str = ""


def boundary_curve(
    scheme,
    direction: Direction,
    v: float,
    n_points: int = 512,
    delta_max: float | None = None,
) -> BoundaryCurve:
    """Sample the analytic boundary over an eta grid in the open (0, 1).

    Points without a crossing (or beyond delta_max, when given) are dropped.
    """
    scheme = _noise_scheme(scheme)
    _check_v_strict(v)
    if n_points < 2:
        raise DomainError("n_points must be >= 2")
    etas = np.linspace(0.0, 1.0, n_points + 2)[1:-1]
    points = []
    for eta in etas:
        delta = analytic_boundary(scheme, direction, v, float(eta))
        if delta is None:
            continue
        if delta_max is not None and delta > delta_max:
            continue
        points.append((float(eta), float(delta)))
    return BoundaryCurve(scheme, direction, points, closed_form_id(scheme, direction))


@dataclass(frozen=True)
class SweepResult:
    """Quantifiers along an eta sweep at fixed noise."""

    scheme: Scheme
    v: float
    delta: float
    rows: list  # (eta, g_a_to_b, g_b_to_a, Regime), eta strictly increasing


def sweep_eta(
    scheme,
    v: float,
    delta: float,
    eta_from: float = 0.0,
    eta_to: float = 1.0,
    steps: int = 101,
    tol: float = DEFAULT_CLASSIFY_TOL,
) -> SweepResult:
    """Evaluate both quantifiers on an evenly spaced eta grid."""
    scheme = _noise_scheme(scheme)
    if steps < 2:
        raise DomainError(f"steps must be >= 2, got {steps}")
    if not (0.0 <= eta_from < eta_to <= 1.0):
        raise DomainError(
            f"need 0 <= eta_from < eta_to <= 1, got ({eta_from}, {eta_to})"
        )
    etas = np.linspace(eta_from, eta_to, steps)
    alpha, beta, gamma = scheme_triples(scheme, v, etas, delta)
    g_ab, g_ba = kernels.steering_pair(alpha, beta, gamma)
    rows = [
        (float(e), float(a), float(b), regime_from_quantifiers(a, b, tol))
        for e, a, b in zip(etas, g_ab, g_ba)
    ]
    return SweepResult(scheme, v, delta, rows)


@dataclass(frozen=True)
class RegionMap:
    """Steering regime on a rectangular (eta, delta) grid of cell centers."""

    scheme: Scheme
    v: float
    etas: np.ndarray
    deltas: np.ndarray
    codes: np.ndarray  # shape (len(etas), len(deltas)), index into REGIME_BY_CODE

    def regime_at(self, i: int, j: int) -> Regime:
        return REGIME_BY_CODE[int(self.codes[i, j])]


def region_map(
    scheme,
    v: float,
    eta_steps: int,
    delta_steps: int,
    delta_max: float | None = None,
    tol: float = DEFAULT_CLASSIFY_TOL,
) -> RegionMap:
    """Classify every cell of an (eta, delta) grid by steering regime.

    Cells are evaluated at their centers: eta spans [0, 1] and delta spans
    [0, delta_max] (scheme-specific default when omitted).
    """
    scheme = _noise_scheme(scheme)
    if eta_steps < 2 or delta_steps < 2:
        raise DomainError("region maps need at least a 2x2 grid")
    if delta_max is None:
        delta_max = DEFAULT_DELTA_MAX[scheme]
    if not delta_max > 0.0:
        raise DomainError(f"delta_max must be positive, got {delta_max}")

    etas = (np.arange(eta_steps) + 0.5) / eta_steps
    deltas = (np.arange(delta_steps) + 0.5) * (delta_max / delta_steps)
    alpha, beta, gamma = scheme_triples(scheme, v, etas[:, None], deltas[None, :])
    g_ab, g_ba = kernels.steering_pair(alpha, beta, gamma)
    codes = (g_ab > tol).astype(np.int8) + 2 * (g_ba > tol).astype(np.int8)
    return RegionMap(scheme, v, etas, deltas, codes)
