"""Monte-Carlo homodyne records, covariance estimation and bootstrap errors.

Homodyne detection measures one quadrature per run, so a sample consists of
two records: an X run with joint (X_A, X_B) outcomes and a P run with
(P_A, P_B) outcomes. The X-P cross entries of the covariance matrix are
never measured under this model and are reported as exact zeros, consistent
with the standard-form structure being estimated.

Randomness comes from numpy's PCG64 through SeedSequence, with Gaussian
variates via the ziggurat method (Generator.standard_normal) and bootstrap
indices via Lemire bounded integers (Generator.integers). Bootstrap
replicate i draws from SeedSequence(seed).spawn(...)[i], so results do not
depend on evaluation order. rng_metadata() reports these choices plus the
pinned numpy version, since bit-exact reproducibility is per-algorithm.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError, UnphysicalState
from .gaussian import DEFAULT_PHYSICALITY_TOL, GeneralCM, StandardFormCM, is_physical, standard_form_of
from .steering import steering_a_to_b, steering_b_to_a

DEFAULT_STRUCTURE_TOL = 0.05
MIN_BOOTSTRAP = 100


def rng_metadata() -> dict:
    """Identification of the RNG pipeline, for reproducibility metadata."""
    return {
        "bit_generator": "PCG64",
        "seeding": "numpy.random.SeedSequence; bootstrap replicate i uses spawn child i",
        "normal_method": "ziggurat (numpy Generator.standard_normal)",
        "integer_method": "Lemire bounded (numpy Generator.integers)",
        "numpy_version": np.__version__,
    }


@dataclass(frozen=True)
class QuadratureSample:
    """Simulated homodyne records: one X run and one P run of joint outcomes."""

    x_run: np.ndarray  # shape (n_per_run, 2): columns (x_a, x_b)
    p_run: np.ndarray  # shape (n_per_run, 2): columns (p_a, p_b)
    seed: int
    n_per_run: int

    def __post_init__(self):
        shape = (self.n_per_run, 2)
        if self.x_run.shape != shape or self.p_run.shape != shape:
            raise DomainError(
                f"runs must both have shape {shape}, got {self.x_run.shape} and {self.p_run.shape}"
            )

    def to_csv(self, fileobj):
        """Write records as CSV with columns run,index,value_a,value_b."""
        writer = csv.writer(fileobj, lineterminator="\n")
        writer.writerow(["run", "index", "value_a", "value_b"])
        for name, run in (("x", self.x_run), ("p", self.p_run)):
            for i, (va, vb) in enumerate(run):
                writer.writerow([name, i, format(va, ".17g"), format(vb, ".17g")])


@dataclass(frozen=True)
class EstimatedCM:
    """Estimated covariance matrix with per-entry bootstrap standard errors."""

    cm: GeneralCM
    std_errors: np.ndarray = field(default_factory=lambda: np.zeros((4, 4)))
    n_bootstrap: int = 0

    def __post_init__(self):
        if self.std_errors.shape != (4, 4) or np.any(self.std_errors < 0.0):
            raise DomainError("std_errors must be a nonnegative 4x4 array")


@dataclass(frozen=True)
class BootstrapSteering:
    """Bootstrap mean and 1-sigma spread of both steering quantifiers."""

    g_a_to_b_mean: float
    g_a_to_b_std: float
    g_b_to_a_mean: float
    g_b_to_a_std: float
    n_bootstrap: int


def sample_quadratures(
    cm: StandardFormCM,
    n_per_run: int,
    seed: int,
    physicality_tol: float = DEFAULT_PHYSICALITY_TOL,
) -> QuadratureSample:
    """Draw i.i.d. joint homodyne outcomes from a standard-form state.

    The X run is bivariate normal with covariance [[alpha, gamma],
    [gamma, beta]]; the P run flips the sign of gamma. Identical
    (cm, n_per_run, seed) always reproduce the same records.
    """
    if n_per_run < 2:
        raise DomainError(f"n_per_run must be >= 2, got {n_per_run}")
    if not is_physical(cm, physicality_tol):
        raise UnphysicalState("refusing to sample from an unphysical covariance matrix")

    a, b, g = cm.alpha, cm.beta, cm.gamma
    chol_x = np.linalg.cholesky(np.array([[a, g], [g, b]]))
    chol_p = np.linalg.cholesky(np.array([[a, -g], [-g, b]]))
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    x_run = rng.standard_normal((n_per_run, 2)) @ chol_x.T
    p_run = rng.standard_normal((n_per_run, 2)) @ chol_p.T
    return QuadratureSample(
        x_run=np.ascontiguousarray(x_run),
        p_run=np.ascontiguousarray(p_run),
        seed=seed,
        n_per_run=n_per_run,
    )


def _run_covariance(run: np.ndarray):
    """Means and ddof=1 covariance of one (n, 2) record."""
    n = run.shape[0]
    sa, sb = run.sum(axis=0)
    second = run.T @ run
    mean_a, mean_b = sa / n, sb / n
    caa = (second[0, 0] - n * mean_a * mean_a) / (n - 1)
    cbb = (second[1, 1] - n * mean_b * mean_b) / (n - 1)
    cab = (second[0, 1] - n * mean_a * mean_b) / (n - 1)
    return caa, cbb, cab


def _entries_from_blocks(x_cov, p_cov) -> np.ndarray:
    caa_x, cbb_x, cab_x = x_cov
    caa_p, cbb_p, cab_p = p_cov
    entries = np.zeros((4, 4))
    entries[0, 0] = caa_x
    entries[2, 2] = cbb_x
    entries[0, 2] = entries[2, 0] = cab_x
    entries[1, 1] = caa_p
    entries[3, 3] = cbb_p
    entries[1, 3] = entries[3, 1] = cab_p
    return entries


def estimate_cm(sample: QuadratureSample) -> EstimatedCM:
    """Sample-moment covariance estimate (mean-subtracted, ddof=1).

    X-block entries come from the X run, P-block from the P run, and the
    unmeasured X-P cross entries are zero. std_errors are zeros here; use
    bootstrap_cm for error bars.
    """
    if sample.n_per_run < 2:
        raise DomainError("need at least two samples per run")
    entries = _entries_from_blocks(
        _run_covariance(sample.x_run), _run_covariance(sample.p_run)
    )
    return EstimatedCM(cm=GeneralCM(entries))


def _replicate_entries(sample: QuadratureSample, n_bootstrap: int, seed: int):
    """Yield per-replicate covariance entries, resampling pairs within runs."""
    n = sample.n_per_run
    children = np.random.SeedSequence(seed).spawn(n_bootstrap)
    for child in children:
        rng = np.random.default_rng(child)
        idx_x = rng.integers(0, n, size=n, dtype=np.int64)
        idx_p = rng.integers(0, n, size=n, dtype=np.int64)
        _, _, caa_x, cbb_x, cab_x = kernels.resampled_covariance(sample.x_run, idx_x)
        _, _, caa_p, cbb_p, cab_p = kernels.resampled_covariance(sample.p_run, idx_p)
        yield _entries_from_blocks((caa_x, cbb_x, cab_x), (caa_p, cbb_p, cab_p))


def _check_bootstrap_args(sample: QuadratureSample, n_bootstrap: int):
    if n_bootstrap < MIN_BOOTSTRAP:
        raise DomainError(f"n_bootstrap must be >= {MIN_BOOTSTRAP}, got {n_bootstrap}")
    if sample.n_per_run < 2:
        raise DomainError("need at least two samples per run")


def bootstrap_cm(sample: QuadratureSample, n_bootstrap: int, seed: int) -> EstimatedCM:
    """Point estimate plus per-entry bootstrap standard deviations."""
    _check_bootstrap_args(sample, n_bootstrap)
    point = estimate_cm(sample)
    stack = np.stack(list(_replicate_entries(sample, n_bootstrap, seed)))
    return EstimatedCM(
        cm=point.cm,
        std_errors=stack.std(axis=0, ddof=1),
        n_bootstrap=n_bootstrap,
    )


def bootstrap_steering(
    sample: QuadratureSample,
    n_bootstrap: int,
    seed: int,
    structure_tol: float = DEFAULT_STRUCTURE_TOL,
    physicality_tol: float = math.inf,
) -> BootstrapSteering:
    """Bootstrap both quantifiers: resample runs, re-estimate, re-project.

    Each replicate resamples (x_a, x_b) pairs within the X run and
    (p_a, p_b) pairs within the P run, re-estimates the covariance matrix,
    projects it onto standard form with structure_tol, and recomputes the
    quantifiers. Reported values are the mean and 1-standard-deviation
    spread over replicates.

    The physicality gate defaults to off (math.inf): finite-sample
    estimates of near-pure states routinely land a few parts in sqrt(n)
    below nu_- = 1. Pass a finite tolerance to re-enable the gate.
    """
    _check_bootstrap_args(sample, n_bootstrap)
    g_ab = np.empty(n_bootstrap)
    g_ba = np.empty(n_bootstrap)
    for i, entries in enumerate(_replicate_entries(sample, n_bootstrap, seed)):
        triple, _ = standard_form_of(entries, structure_tol)
        g_ab[i] = steering_a_to_b(triple, physicality_tol)
        g_ba[i] = steering_b_to_a(triple, physicality_tol)
    return BootstrapSteering(
        g_a_to_b_mean=float(g_ab.mean()),
        g_a_to_b_std=float(g_ab.std(ddof=1)),
        g_b_to_a_mean=float(g_ba.mean()),
        g_b_to_a_std=float(g_ba.std(ddof=1)),
        n_bootstrap=n_bootstrap,
    )
