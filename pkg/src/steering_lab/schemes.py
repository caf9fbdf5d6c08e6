"""Covariance-matrix constructors for the TMSS and the three noise schemes.

All three manipulation schemes start from a two-mode squeezed state with
single-mode variance V = cosh(2r) and send mode B through a beam splitter
of transmission eta:

  scheme I   - Gaussian noise of variance delta_a mixed into mode A,
               lossy channel on B:
                 alpha = V + delta_a, beta = eta V + (1 - eta)
  scheme II  - lossy channel on B, then noise delta_b added at B:
                 alpha = V, beta = eta V + (1 - eta) + delta_b
  scheme III - noisy channel on B with excess noise delta_c:
                 alpha = V, beta = eta V + (1 - eta)(delta_c + 1)

All share gamma = sqrt(eta (V^2 - 1)). Every delta is a *variance* in
shot-noise units, never a standard deviation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .gaussian import StandardFormCM


class Scheme(enum.Enum):
    PURE = "pure"
    I = "1"
    II = "2"
    III = "3"


_SCHEME_ALIASES = {
    "pure": Scheme.PURE,
    "1": Scheme.I,
    "i": Scheme.I,
    "noise-on-a": Scheme.I,
    "2": Scheme.II,
    "ii": Scheme.II,
    "noise-on-b": Scheme.II,
    "3": Scheme.III,
    "iii": Scheme.III,
    "noisy-channel": Scheme.III,
}


def parse_scheme(label) -> Scheme:
    """Map a user-facing scheme label (pure|1|2|3 or alias) to a Scheme."""
    if isinstance(label, Scheme):
        return label
    key = str(label).strip().lower()
    try:
        return _SCHEME_ALIASES[key]
    except KeyError:
        raise DomainError(
            f"unknown scheme {label!r}; expected pure, 1, 2, 3, "
            "noise-on-a, noise-on-b or noisy-channel"
        ) from None


@dataclass(frozen=True)
class SchemeParams:
    """A point in parameter space: scheme plus (v, eta, delta)."""

    scheme: Scheme
    v: float
    eta: float = 1.0
    delta: float = 0.0

    def __post_init__(self):
        _check_point(self.v, self.eta, self.delta)


def _check_v(v: float):
    if not (math.isfinite(v) and v >= 1.0):
        raise DomainError(f"TMSS variance must satisfy v >= 1, got {v}")


def _check_point(v: float, eta: float, delta: float):
    _check_v(v)
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"transmission efficiency must be in [0, 1], got {eta}")
    if not (math.isfinite(delta) and delta >= 0.0):
        raise DomainError(f"noise variance must be >= 0, got {delta}")


def tmss_cm(v: float) -> StandardFormCM:
    """Pure two-mode squeezed state: alpha = beta = v, gamma = sqrt(v^2 - 1)."""
    _check_v(v)
    return StandardFormCM(v, v, math.sqrt(v * v - 1.0))


def scheme_i_cm(v: float, eta: float, delta_a: float) -> StandardFormCM:
    """Noise delta_a on mode A, lossy channel of transmission eta on mode B."""
    _check_point(v, eta, delta_a)
    return StandardFormCM(
        v + delta_a,
        eta * v + (1.0 - eta),
        math.sqrt(eta * (v * v - 1.0)),
    )


def scheme_ii_cm(v: float, eta: float, delta_b: float) -> StandardFormCM:
    """Lossy channel of transmission eta on mode B, then noise delta_b at B."""
    _check_point(v, eta, delta_b)
    return StandardFormCM(
        v,
        eta * v + (1.0 - eta) + delta_b,
        math.sqrt(eta * (v * v - 1.0)),
    )


def scheme_iii_cm(v: float, eta: float, delta_c: float) -> StandardFormCM:
    """Noisy channel on mode B: transmission eta, excess noise delta_c."""
    _check_point(v, eta, delta_c)
    return StandardFormCM(
        v,
        eta * v + (1.0 - eta) * (delta_c + 1.0),
        math.sqrt(eta * (v * v - 1.0)),
    )


def build_cm(scheme, v: float, eta: float = 1.0, delta: float = 0.0) -> StandardFormCM:
    """Dispatch to the constructor for `scheme` (delta is ignored for PURE)."""
    scheme = parse_scheme(scheme)
    if scheme is Scheme.PURE:
        return tmss_cm(v)
    if scheme is Scheme.I:
        return scheme_i_cm(v, eta, delta)
    if scheme is Scheme.II:
        return scheme_ii_cm(v, eta, delta)
    return scheme_iii_cm(v, eta, delta)


def scheme_triples(scheme, v: float, eta, delta):
    """Vectorized (alpha, beta, gamma) arrays for broadcastable eta/delta grids.

    Element-for-element this evaluates the same expressions as the scalar
    constructors. Inputs are validated against the same bounds.
    """
    scheme = parse_scheme(scheme)
    _check_v(v)
    eta = np.asarray(eta, dtype=float)
    delta = np.asarray(delta, dtype=float)
    if np.any(eta < 0.0) or np.any(eta > 1.0):
        raise DomainError("transmission efficiency must be in [0, 1]")
    if np.any(delta < 0.0):
        raise DomainError("noise variance must be >= 0")
    eta, delta = np.broadcast_arrays(eta, delta)

    if scheme is Scheme.PURE:
        ones = np.ones_like(eta)
        return v * ones, v * ones, math.sqrt(v * v - 1.0) * ones

    gamma = np.sqrt(eta * (v * v - 1.0))
    if scheme is Scheme.I:
        return v + delta, eta * v + (1.0 - eta), gamma
    if scheme is Scheme.II:
        return v + np.zeros_like(eta), eta * v + (1.0 - eta) + delta, gamma
    return v + np.zeros_like(eta), eta * v + (1.0 - eta) * (delta + 1.0), gamma


def v_from_squeezing_db(db: float) -> float:
    """TMSS variance V = cosh(2r) for a squeezing level quoted in dB.

    The squeezed-quadrature variance is 10^(-db/10), so
    V = (10^(db/10) + 10^(-db/10)) / 2. Note that -3 dB gives V = 1.2482,
    slightly below the 1.251 used as the canonical regression value.
    """
    if not (math.isfinite(db) and db > 0.0):
        raise DomainError(f"squeezing must be a positive dB value, got {db}")
    up = 10.0 ** (db / 10.0)
    return (up + 1.0 / up) / 2.0
