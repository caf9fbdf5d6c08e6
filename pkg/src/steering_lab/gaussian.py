"""Covariance-matrix types and validity checks for two-mode Gaussian states.

Conventions: quadratures are X = a + a^dag and P = (a - a^dag)/i, so the
vacuum variance (shot noise level) is 1. Quadrature ordering of the 4x4
matrix is (X_A, P_A, X_B, P_B). A state in standard form is

    [[alpha, 0,     gamma,  0     ],
     [0,     alpha, 0,     -gamma ],
     [gamma, 0,     beta,   0     ],
     [0,    -gamma, 0,      beta  ]]

i.e. block structure (alpha*I, gamma*Z; gamma*Z, beta*I).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonPositiveMatrix, NumericalFailure, StructureViolation

# Absolute slack for the necessary-condition checks at construction time;
# full physicality is a separate, tolerance-gated question (is_physical).
_CONSTRUCT_SLACK = 1e-12

DEFAULT_PHYSICALITY_TOL = 1e-9

# Two-mode symplectic form for the (X_A, P_A, X_B, P_B) ordering.
OMEGA = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)


@dataclass(frozen=True)
class StandardFormCM:
    """Two-mode covariance matrix in standard form, shot-noise units.

    alpha, beta are the single-mode quadrature variances of modes A and B;
    gamma is the X_A-X_B correlation (the P_A-P_B correlation is -gamma).
    """

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        a, b, g = self.alpha, self.beta, self.gamma
        if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(g)):
            raise DomainError("covariance entries must be finite")
        if a < 1.0 - _CONSTRUCT_SLACK or b < 1.0 - _CONSTRUCT_SLACK:
            raise DomainError(
                f"marginal variances must be vacuum-limited (>= 1): alpha={a}, beta={b}"
            )
        if g * g > a * b + _CONSTRUCT_SLACK:
            raise DomainError(
                f"correlation too strong: gamma^2={g * g} exceeds alpha*beta={a * b}"
            )

    def matrix(self) -> np.ndarray:
        """Assemble the full 4x4 covariance matrix."""
        a, b, g = self.alpha, self.beta, self.gamma
        return np.array(
            [
                [a, 0.0, g, 0.0],
                [0.0, a, 0.0, -g],
                [g, 0.0, b, 0.0],
                [0.0, -g, 0.0, b],
            ]
        )


@dataclass(frozen=True)
class GeneralCM:
    """Dense 4x4 symmetric covariance matrix over (X_A, P_A, X_B, P_B)."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.shape != (4, 4):
            raise DomainError(f"covariance matrix must be 4x4, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DomainError("covariance entries must be finite")
        if np.max(np.abs(arr - arr.T)) > 1e-12:
            raise DomainError("covariance matrix must be symmetric within 1e-12")
        eigs = np.linalg.eigvalsh(arr)
        scale = max(1.0, float(np.max(np.abs(eigs))))
        if eigs[0] < -1e-10 * scale:
            raise NonPositiveMatrix(
                f"covariance matrix has negative eigenvalue {eigs[0]}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues of a two-mode covariance matrix."""

    nu_minus: float
    nu_plus: float


def det_blocks(cm: StandardFormCM) -> tuple[float, float, float]:
    """Return (det sigma_A, det sigma_B, det sigma_AB) for a standard-form state.

    For the standard-form structure these are (alpha^2, beta^2,
    (alpha*beta - gamma^2)^2).
    """
    a, b, g = cm.alpha, cm.beta, cm.gamma
    s = a * b - g * g
    return a * a, b * b, s * s


def _as_matrix(cm) -> np.ndarray:
    if isinstance(cm, StandardFormCM):
        return cm.matrix()
    if isinstance(cm, GeneralCM):
        return np.asarray(cm.entries, dtype=float)
    return np.asarray(cm, dtype=float)


def symplectic_eigenvalues(cm, disc_tol: float = 1e-9) -> SymplecticSpectrum:
    """Symplectic spectrum of a two-mode covariance matrix.

    For standard-form input the closed form
        nu_pm^2 = (Delta +- sqrt(Delta^2 - 4 det sigma)) / 2,
        Delta = alpha^2 + beta^2 - 2 gamma^2
    is used, with the discriminant evaluated in the factored form
    (alpha-beta)^2 * ((alpha+beta)^2 - 4 gamma^2) so that symmetric (and in
    particular pure) states land on nu_- = nu_+ without catastrophic
    cancellation. General matrices go through |i Omega sigma| eigenvalues.

    Parameters
    ----------
    cm : StandardFormCM | GeneralCM | (4, 4) array_like
    disc_tol : float
        How far below zero the discriminant (relative to its natural scale)
        may drift before NumericalFailure is raised.

    Raises
    ------
    NonPositiveMatrix
        If the matrix is not positive semidefinite.
    NumericalFailure
        If the closed-form discriminant is negative beyond disc_tol.
    """
    if isinstance(cm, StandardFormCM):
        a, b, g = cm.alpha, cm.beta, cm.gamma
        delta = a * a + b * b - 2.0 * g * g
        disc = (a - b) * (a - b) * ((a + b) * (a + b) - 4.0 * g * g)
        scale = max(1.0, delta * delta)
        if disc < -disc_tol * scale:
            raise NumericalFailure(f"negative symplectic discriminant {disc}")
        root = math.sqrt(max(disc, 0.0))
        lo = (delta - root) / 2.0
        hi = (delta + root) / 2.0
        if lo < -disc_tol * scale:
            raise NumericalFailure(f"negative squared symplectic eigenvalue {lo}")
        return SymplecticSpectrum(math.sqrt(max(lo, 0.0)), math.sqrt(hi))

    mat = _as_matrix(cm)
    if mat.shape != (4, 4):
        raise DomainError(f"expected a 4x4 matrix, got {mat.shape}")
    if np.max(np.abs(mat - mat.T)) > 1e-10:
        raise DomainError("matrix must be symmetric")
    eigs = np.linalg.eigvalsh(mat)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    if eigs[0] < -1e-10 * scale:
        raise NonPositiveMatrix(f"matrix has negative eigenvalue {eigs[0]}")
    nus = np.sort(np.abs(np.linalg.eigvals(1j * OMEGA @ mat)))
    return SymplecticSpectrum(float(nus[:2].mean()), float(nus[2:].mean()))


def is_physical(cm, tol: float = DEFAULT_PHYSICALITY_TOL) -> bool:
    """True iff the smallest symplectic eigenvalue satisfies nu_- >= 1 - tol."""
    return symplectic_eigenvalues(cm).nu_minus >= 1.0 - tol


def standard_form_of(cm, tol: float = 1e-9) -> tuple[StandardFormCM, float]:
    """Project a 4x4 covariance matrix onto standard form.

    alpha is the mean of the two mode-A diagonal entries, beta the mean of
    the mode-B ones, and gamma the mean of the X-X entry and the negated
    P-P entry. Returns the projected triple together with the largest
    absolute residual against the exact standard-form structure.

    Raises StructureViolation when any residual (an off-structure entry, or
    the spread of the entries being averaged) exceeds tol. Callers working
    with noisy estimates should widen tol accordingly.
    """
    mat = _as_matrix(cm)
    if mat.shape != (4, 4):
        raise DomainError(f"expected a 4x4 matrix, got {mat.shape}")

    alpha = (mat[0, 0] + mat[1, 1]) / 2.0
    beta = (mat[2, 2] + mat[3, 3]) / 2.0
    gamma = (mat[0, 2] - mat[1, 3]) / 2.0

    model = np.array(
        [
            [alpha, 0.0, gamma, 0.0],
            [0.0, alpha, 0.0, -gamma],
            [gamma, 0.0, beta, 0.0],
            [0.0, -gamma, 0.0, beta],
        ]
    )
    sym = (mat + mat.T) / 2.0
    residual = float(np.max(np.abs(sym - model)))
    asym = float(np.max(np.abs(mat - mat.T)))
    residual = max(residual, asym)
    if residual > tol:
        raise StructureViolation(
            f"matrix deviates from standard form by {residual} (tol {tol})"
        )
    return StandardFormCM(alpha, beta, gamma), residual
