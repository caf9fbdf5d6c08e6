import math

import numpy as np
import pytest

import steering_lab as sl
from steering_lab.boundary import Direction
from steering_lab.errors import DomainError, MaxIterations, NoBracket

V = 1.251
A2B, B2A = Direction.A_TO_B, Direction.B_TO_A


def test_analytic_boundary_scheme_i():
    for eta in (0.1, 0.5, 0.9):
        assert sl.analytic_boundary("1", A2B, V, eta) == 1.0
    assert sl.analytic_boundary("1", B2A, V, 0.3) is None  # below eta = 1/2
    assert sl.analytic_boundary("1", B2A, V, 0.5) == 0.0
    delta = sl.analytic_boundary("1", B2A, V, 0.9)
    assert delta == pytest.approx((V - 1) * 0.8 / (0.1 + V * 0.9), rel=1e-14)


def test_analytic_boundary_scheme_ii():
    assert sl.analytic_boundary("2", A2B, V, 0.5) == pytest.approx(
        0.251 * 0.5 / 1.251, rel=1e-12
    )
    assert sl.analytic_boundary("2", B2A, V, 0.3) is None
    assert sl.analytic_boundary("2", B2A, V, 0.75) == pytest.approx(0.5, rel=1e-14)


def test_analytic_boundary_scheme_iii():
    assert sl.analytic_boundary("3", B2A, V, 0.5) == 0.0
    assert sl.analytic_boundary("3", B2A, V, 0.25) is None
    assert sl.analytic_boundary("3", A2B, V, 0.5) == pytest.approx(
        0.5 * (V - 1) / (V * 0.5), rel=1e-14
    )


def test_analytic_boundary_domain():
    with pytest.raises(DomainError):
        sl.analytic_boundary("1", A2B, 1.0, 0.5)
    with pytest.raises(DomainError):
        sl.analytic_boundary("1", A2B, V, 0.0)
    with pytest.raises(DomainError):
        sl.analytic_boundary("1", A2B, V, 1.0)
    with pytest.raises(DomainError):
        sl.analytic_boundary("pure", A2B, V, 0.5)


def test_boundary_roundtrip_eta_delta():
    rng = np.random.default_rng(41)
    for _ in range(100):
        v = rng.uniform(1.05, 3.0)
        scheme = rng.choice(["1", "2", "3"])
        direction = rng.choice([A2B, B2A])
        if scheme == "1" and direction is A2B:
            continue  # boundary is a delta level, not an eta crossing
        eta = rng.uniform(0.52, 0.95)
        delta = sl.analytic_boundary(scheme, direction, v, eta)
        if delta is None or delta == 0.0:
            continue
        back = sl.boundary_eta(scheme, direction, v, delta)
        assert back == pytest.approx(eta, abs=1e-10)


def test_crossover_points():
    eta, delta = sl.crossover_point("2", V)
    assert eta == pytest.approx(V / (1 + V), rel=1e-15)
    assert delta == pytest.approx((V - 1) / (V + 1), rel=1e-15)
    eta3, delta3 = sl.crossover_point("3", V)
    assert eta3 == eta
    assert delta3 == pytest.approx(V - 1, rel=1e-15)
    # no-squeezing limit collapses to (1/2, 0)
    eta_lim, delta_lim = sl.crossover_point("3", 1.0 + 1e-12)
    assert eta_lim == pytest.approx(0.5, abs=1e-9)
    assert delta_lim == pytest.approx(0.0, abs=1e-9)
    with pytest.raises(DomainError):
        sl.crossover_point("1", V)
    with pytest.raises(DomainError):
        sl.crossover_point("pure", V)


def test_crossover_lies_on_both_curves():
    for scheme in ("2", "3"):
        eta, delta = sl.crossover_point(scheme, V)
        assert sl.analytic_boundary(scheme, A2B, V, eta) == pytest.approx(delta, abs=1e-10)
        assert sl.analytic_boundary(scheme, B2A, V, eta) == pytest.approx(delta, abs=1e-10)


def test_numeric_zero_crossing_examples():
    eta = sl.numeric_zero_crossing("2", B2A, V, 0.112, (0.4, 0.7))
    assert eta == pytest.approx((1 + 0.112) / 2, abs=1e-8)
    eta = sl.numeric_zero_crossing("2", A2B, V, 0.112, (0.4, 0.7))
    assert eta == pytest.approx(0.112 * V / (V - 1), abs=1e-8)
    eta = sl.numeric_zero_crossing("3", A2B, V, 1.0, (0.7, 0.95))
    assert eta == pytest.approx(V / (2 * V - 1), abs=1e-8)


def test_numeric_zero_crossing_exact_endpoint_and_midpoint():
    # midpoint of the bracket lands exactly on the root
    assert sl.numeric_zero_crossing("1", B2A, V, 0.0, (0.25, 0.75)) == 0.5
    # endpoint exactly on the root is returned as-is
    assert sl.numeric_zero_crossing("2", B2A, V, 0.0, (0.5, 0.9)) == 0.5


def test_numeric_zero_crossing_errors():
    with pytest.raises(NoBracket):
        sl.numeric_zero_crossing("2", B2A, V, 0.112, (0.6, 0.9))
    with pytest.raises(MaxIterations):
        sl.numeric_zero_crossing("2", B2A, V, 0.112, (0.4, 0.7), max_iter=3)
    with pytest.raises(DomainError):
        sl.numeric_zero_crossing("2", B2A, V, 0.112, (0.7, 0.4))


def test_numeric_matches_closed_form_random_draws():
    rng = np.random.default_rng(4242)
    for _ in range(10):
        v = rng.uniform(1.05, 3.0)
        scheme, direction = [("1", B2A), ("2", A2B), ("2", B2A), ("3", A2B), ("3", B2A)][
            rng.integers(0, 5)
        ]
        if scheme == "2" and direction is B2A:
            delta = rng.uniform(0.05, 0.95)
        elif scheme == "3":
            delta = rng.uniform(0.05, 3.0)
        else:
            delta = rng.uniform(0.05, 0.9) * (v - 1.0) / v
        closed = sl.boundary_eta(scheme, direction, v, delta)
        numeric = sl.numeric_zero_crossing(scheme, direction, v, delta, (1e-6, 1.0 - 1e-6))
        assert numeric == pytest.approx(closed, abs=1e-8)


def test_boundary_curve_scheme_i():
    curve = sl.boundary_curve("1", A2B, V, n_points=64)
    assert all(delta == 1.0 for _, delta in curve.points)
    assert curve.closed_form_id == "delta_a = 1"
    curve = sl.boundary_curve("1", B2A, V, n_points=64)
    assert all(eta >= 0.5 for eta, _ in curve.points)
    etas = [eta for eta, _ in curve.points]
    assert etas == sorted(etas)


def test_boundary_curve_points_sit_on_the_boundary():
    for scheme in ("1", "2", "3"):
        for direction in (A2B, B2A):
            curve = sl.boundary_curve(scheme, direction, V, n_points=128, delta_max=10.0)
            for eta, delta in curve.points[:: max(1, len(curve.points) // 16)]:
                assert abs(sl.det_margin(scheme, direction, V, eta, delta)) < 1e-12


def test_boundary_curve_delta_max_clips():
    curve = sl.boundary_curve("3", A2B, V, n_points=256, delta_max=2.0)
    assert curve.points and all(delta <= 2.0 for _, delta in curve.points)


def test_sweep_baseline_no_noise():
    sweep = sl.sweep_eta("1", V, 0.0, steps=101)
    for eta, g_ab, g_ba, regime in sweep.rows:
        if eta > 0.0:
            assert g_ab > 0.0
        if eta > 0.5:
            assert g_ba > 0.0
        else:
            assert g_ba <= 1e-12
    etas = [row[0] for row in sweep.rows]
    assert etas == sorted(etas) and len(etas) == 101


def test_sweep_scheme_i_saturating_noise():
    sweep = sl.sweep_eta("1", V, 0.201, steps=401)
    assert all(row[2] == 0.0 for row in sweep.rows)
    assert all(row[1] > 0.0 for row in sweep.rows if row[0] > 0.0)


def test_sweep_scheme_iii_symmetric_noise():
    sweep = sl.sweep_eta("3", V, 0.251, steps=401)
    assert max(abs(r[1] - r[2]) for r in sweep.rows) < 1e-12


def test_sweep_validation():
    with pytest.raises(DomainError):
        sl.sweep_eta("1", V, 0.0, steps=1)
    with pytest.raises(DomainError):
        sl.sweep_eta("1", V, 0.0, eta_from=0.8, eta_to=0.2)
    with pytest.raises(DomainError):
        sl.sweep_eta("pure", V, 0.0)


def test_region_map_cells(backend):
    rm = sl.region_map("1", V, 400, 400, delta_max=1.2)
    i = int(np.argmin(np.abs(rm.etas - 0.9)))
    j = int(np.argmin(np.abs(rm.deltas - 0.112)))
    assert rm.regime_at(i, j) is sl.Regime.TWO_WAY  # boundary at eta=0.9 is 0.1638

    rm_wide = sl.region_map("1", V, 400, 200, delta_max=2.0)
    j = int(np.argmin(np.abs(rm_wide.deltas - 1.5)))
    assert rm_wide.regime_at(i, j) is sl.Regime.NO_STEERING

    rm3 = sl.region_map("3", V, 400, 400)  # default delta_max = 7
    i = int(np.argmin(np.abs(rm3.etas - 0.75)))
    j = int(np.argmin(np.abs(rm3.deltas - 1.0)))
    assert rm3.regime_at(i, j) is sl.Regime.ONE_WAY_B_TO_A


def test_region_map_transitions_match_analytic_boundary():
    """Within each eta row, steering turns off exactly once along delta, and
    the flip brackets the closed-form boundary."""
    for scheme in ("1", "2", "3"):
        rm = sl.region_map(scheme, V, 40, 40, delta_max=1.5)
        steers = {
            A2B: (rm.codes & 1).astype(bool),
            B2A: (rm.codes & 2).astype(bool),
        }
        for direction, grid in steers.items():
            for i, eta in enumerate(rm.etas):
                column = grid[i]
                flips = np.nonzero(column[:-1] != column[1:])[0]
                assert len(flips) <= 1
                assert not (len(flips) == 0 and column[0] != column[-1])
                if len(flips) == 1:
                    j = int(flips[0])
                    assert column[j] and not column[j + 1]  # on -> off as delta grows
                    bound = sl.analytic_boundary(scheme, direction, V, float(eta))
                    assert bound is not None
                    assert rm.deltas[j] <= bound <= rm.deltas[j + 1]


def test_region_map_validation():
    with pytest.raises(DomainError):
        sl.region_map("1", V, 1, 1)
    with pytest.raises(DomainError):
        sl.region_map("1", V, 10, 10, delta_max=-1.0)
    with pytest.raises(DomainError):
        sl.region_map("pure", V, 10, 10)
