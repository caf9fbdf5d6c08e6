import math

import numpy as np
import pytest

import steering_lab as sl
from steering_lab.errors import DomainError


def test_tmss_vacuum_limit():
    cm = sl.tmss_cm(1.0)
    assert (cm.alpha, cm.beta, cm.gamma) == (1.0, 1.0, 0.0)


def test_tmss_regression_point():
    cm = sl.tmss_cm(1.251)
    assert cm.alpha == cm.beta == 1.251
    assert cm.gamma == pytest.approx(0.7516654841, abs=1e-9)
    assert sl.symplectic_eigenvalues(cm).nu_minus == pytest.approx(1.0, abs=1e-10)


def test_scheme_i_identity_limit():
    assert sl.scheme_i_cm(1.251, 1.0, 0.0) == sl.tmss_cm(1.251)
    assert sl.scheme_ii_cm(1.251, 1.0, 0.0) == sl.tmss_cm(1.251)
    assert sl.scheme_iii_cm(1.251, 1.0, 0.0) == sl.tmss_cm(1.251)


def test_scheme_i_worked_point():
    cm = sl.scheme_i_cm(1.251, 0.5, 0.112)
    assert cm.alpha == pytest.approx(1.363, abs=1e-12)
    assert cm.beta == pytest.approx(1.1255, abs=1e-12)
    assert cm.gamma == pytest.approx(math.sqrt(0.5 * (1.251**2 - 1.0)), rel=1e-15)
    assert cm.gamma == pytest.approx(0.53151, abs=1e-5)


def test_scheme_i_zero_transmission_severs_correlation():
    cm = sl.scheme_i_cm(1.251, 0.0, 0.2)
    assert cm.gamma == 0.0
    assert sl.classify(cm).regime is sl.Regime.NO_STEERING


def test_scheme_ii_worked_point():
    cm = sl.scheme_ii_cm(1.251, 0.556, 0.112)
    assert cm.alpha == 1.251
    assert cm.beta == pytest.approx(0.556 * 1.251 + 0.444 + 0.112, rel=1e-15)
    assert cm.beta == pytest.approx(1.251556, abs=1e-6)


def test_scheme_iii_defaults_to_lossy_channel():
    for eta in np.linspace(0.0, 1.0, 7):
        assert sl.scheme_iii_cm(1.251, float(eta), 0.0) == sl.scheme_ii_cm(1.251, float(eta), 0.0)


def test_scheme_iii_worked_point():
    cm = sl.scheme_iii_cm(1.251, 0.75, 1.0)
    assert cm.beta == pytest.approx(1.43825, abs=1e-12)


def test_scheme_iii_lossless_is_noise_independent():
    cms = {sl.scheme_iii_cm(1.251, 1.0, float(d)) for d in (0.0, 0.5, 3.0)}
    assert len(cms) == 1


def test_schemes_agree_at_zero_noise():
    for eta in np.linspace(0.0, 1.0, 11):
        i = sl.scheme_i_cm(1.7, float(eta), 0.0)
        ii = sl.scheme_ii_cm(1.7, float(eta), 0.0)
        iii = sl.scheme_iii_cm(1.7, float(eta), 0.0)
        assert i == ii == iii


def test_scheme_outputs_physical_on_grid():
    for v in np.linspace(1.0, 3.0, 9):
        for eta in np.linspace(0.0, 1.0, 9):
            for delta in np.linspace(0.0, 3.0, 7):
                for scheme in ("1", "2", "3"):
                    cm = sl.build_cm(scheme, float(v), float(eta), float(delta))
                    assert sl.is_physical(cm, tol=1e-9)


def test_symmetric_line_scheme_ii():
    v = 1.251
    for eta in np.linspace(0.05, 0.95, 10):
        delta = (1.0 - eta) * (v - 1.0)
        cm = sl.scheme_ii_cm(v, float(eta), float(delta))
        assert cm.beta == pytest.approx(cm.alpha, abs=5e-15)
        r = sl.classify(cm)
        assert abs(r.g_a_to_b - r.g_b_to_a) < 1e-12


def test_symmetric_line_scheme_iii():
    v = 1.251
    for eta in np.linspace(0.05, 0.95, 10):
        cm = sl.scheme_iii_cm(v, float(eta), v - 1.0)
        assert cm.beta == pytest.approx(cm.alpha, abs=5e-15)
        r = sl.classify(cm)
        assert abs(r.g_a_to_b - r.g_b_to_a) < 1e-12


def test_scheme_triples_match_scalar_constructors():
    etas = np.linspace(0.0, 1.0, 13)
    deltas = np.linspace(0.0, 2.0, 13)
    for scheme in ("1", "2", "3"):
        alpha, beta, gamma = sl.scheme_triples(scheme, 1.251, etas, deltas)
        for k in range(len(etas)):
            cm = sl.build_cm(scheme, 1.251, float(etas[k]), float(deltas[k]))
            assert alpha[k] == cm.alpha
            assert beta[k] == cm.beta
            assert gamma[k] == cm.gamma


def test_v_from_squeezing_db():
    # independent oracle: V = cosh(2r) with e^{-2r} = 10^{-db/10}
    for db in (0.5, 3.0, 6.0, 10.0):
        assert sl.v_from_squeezing_db(db) == pytest.approx(
            math.cosh(db * math.log(10.0) / 10.0), rel=1e-14
        )
    assert sl.v_from_squeezing_db(3.0) == pytest.approx(1.2482247742980759, rel=1e-14)
    assert sl.v_from_squeezing_db(10.0 * math.log10(2.0)) == pytest.approx(1.25, abs=1e-15)
    assert sl.v_from_squeezing_db(1e-9) == pytest.approx(1.0, abs=1e-12)


def test_domain_errors():
    with pytest.raises(DomainError):
        sl.tmss_cm(0.99)
    with pytest.raises(DomainError):
        sl.scheme_i_cm(1.251, 1.2, 0.0)
    with pytest.raises(DomainError):
        sl.scheme_ii_cm(1.251, 0.5, -0.1)
    with pytest.raises(DomainError):
        sl.v_from_squeezing_db(0.0)
    with pytest.raises(DomainError):
        sl.v_from_squeezing_db(-3.0)
    with pytest.raises(DomainError):
        sl.SchemeParams(sl.Scheme.I, 1.251, eta=-0.1)


def test_parse_scheme_aliases():
    assert sl.parse_scheme("noise-on-a") is sl.Scheme.I
    assert sl.parse_scheme("noise-on-b") is sl.Scheme.II
    assert sl.parse_scheme("noisy-channel") is sl.Scheme.III
    assert sl.parse_scheme("PURE") is sl.Scheme.PURE
    assert sl.parse_scheme(sl.Scheme.II) is sl.Scheme.II
    with pytest.raises(DomainError):
        sl.parse_scheme("4")
