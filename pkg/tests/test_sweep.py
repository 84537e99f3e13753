"""Unit tests for the efficiency sweep and the grid optimizer."""

import numpy as np
import pytest

from amstirap import (
    AmstirapError,
    DomainError,
    evolve,
    optimize,
    rb87_params,
    sweep_eta,
)
from amstirap.sweep import CELL_FAILED, CELL_OK


@pytest.fixture(scope="module")
def params():
    # fast decay-rate reading keeps each cell's integration cheap
    return rb87_params(gamma_b=0.74)


class TestSweep:
    def test_single_cell_equals_direct_evolution(self, params):
        delta1, t1 = -0.5, 3.2 * params.tau
        result = sweep_eta(params, np.array([delta1]), np.array([t1]))
        direct = evolve(params.with_(delta1=delta1, t1=t1), samples=2).eta
        assert result.eta[0, 0] == direct
        assert result.status[0, 0] == CELL_OK

    def test_grid_layout_and_argmax(self, params):
        tau = params.tau
        result = sweep_eta(
            params,
            np.array([-1.036, 0.0]),
            np.array([3.0 * tau, 3.77 * tau]),
            threads=2,
        )
        assert result.eta.shape == (2, 2)
        # frozen reference values for this grid
        assert result.eta[0, 1] == pytest.approx(0.9923, abs=2e-3)
        assert result.eta[1, 0] == pytest.approx(0.8192, abs=2e-3)
        best_delta1, best_t1, best_eta = result.argmax
        assert best_delta1 == 0.0
        assert best_t1 == pytest.approx(3.77 * tau)
        assert best_eta == result.eta[1, 1]

    def test_failed_cell_recorded_not_raised(self, params):
        # an unreachable pulse center makes the window empty -> cell fails
        result = sweep_eta(
            params, np.array([0.0]), np.array([-1e9, 3.77 * params.tau])
        )
        assert result.status[0, 0] == CELL_FAILED
        assert np.isnan(result.eta[0, 0])
        assert result.status[0, 1] == CELL_OK
        best_delta1, best_t1, _ = result.argmax
        assert best_t1 == pytest.approx(3.77 * params.tau)

    def test_argmax_with_all_cells_failed(self, params):
        result = sweep_eta(params, np.array([0.0]), np.array([-1e9]))
        with pytest.raises(AmstirapError):
            result.argmax

    def test_thread_count_does_not_change_results(self, params):
        delta1 = np.array([-1.0, -0.3, 0.2])
        t1 = np.array([3.0, 3.77]) * params.tau
        a = sweep_eta(params, delta1, t1, threads=1)
        b = sweep_eta(params, delta1, t1, threads=4)
        assert np.array_equal(a.eta, b.eta)
        assert np.array_equal(a.status, b.status)

    def test_molecular_pulse_center_override(self, params):
        t1 = np.array([3.77 * params.tau])
        default_t2 = sweep_eta(params, np.array([-1.036]), t1)
        shifted_t2 = sweep_eta(params, np.array([-1.036]), t1, t2=2.0 * params.tau)
        assert shifted_t2.t2 == 2.0 * params.tau
        assert default_t2.eta[0, 0] != shifted_t2.eta[0, 0]

    def test_empty_axes_rejected(self, params):
        with pytest.raises(DomainError):
            sweep_eta(params, np.array([]), np.array([1.0]))


class TestOptimize:
    BOUNDS_D = (-1.5, 0.5)
    BOUNDS_T = None  # set per test from tau

    def test_budget_nine_returns_best_coarse_cell(self, params):
        tau = params.tau
        bounds_T = (0.8 * tau, 1.8 * tau)
        found = optimize(params, self.BOUNDS_D, bounds_T, budget=9)
        assert found.evaluations == 9

        grid = sweep_eta(
            params,
            np.linspace(*self.BOUNDS_D, 3),
            params.t2 + np.linspace(*bounds_T, 3),
        )
        best_delta1, best_t1, best_eta = grid.argmax
        assert found.delta1 == best_delta1
        assert found.delay == pytest.approx(best_t1 - params.t2)
        assert found.eta == best_eta

    def test_refinement_improves_on_coarse_grid(self, params):
        tau = params.tau
        bounds_T = (0.8 * tau, 1.8 * tau)
        coarse_only = optimize(params, self.BOUNDS_D, bounds_T, budget=9)
        refined = optimize(params, self.BOUNDS_D, bounds_T, budget=100)
        assert refined.eta >= coarse_only.eta
        assert refined.evaluations <= 100

    def test_degenerate_bounds_return_that_point(self, params):
        tau = params.tau
        found = optimize(params, (-0.4, -0.4), (1.27 * tau, 1.27 * tau), budget=25)
        assert found.delta1 == -0.4
        assert found.delay == pytest.approx(1.27 * tau)
        direct = evolve(
            params.with_(delta1=-0.4, t1=params.t2 + 1.27 * tau), samples=2
        ).eta
        assert found.eta == direct

    def test_deterministic(self, params):
        tau = params.tau
        a = optimize(params, (-1.0, 0.0), (tau, 1.5 * tau), budget=34)
        b = optimize(params, (-1.0, 0.0), (tau, 1.5 * tau), budget=34)
        assert (a.delta1, a.delay, a.eta, a.evaluations) == (
            b.delta1, b.delay, b.eta, b.evaluations,
        )

    def test_budget_below_coarse_grid_rejected(self, params):
        with pytest.raises(DomainError):
            optimize(params, (-1.0, 0.0), (1.0, 2.0), budget=8)

    def test_unordered_bounds_rejected(self, params):
        with pytest.raises(DomainError):
            optimize(params, (0.5, -0.5), (1.0, 2.0), budget=9)

    def test_all_cells_failed_raises(self, params):
        with pytest.raises(AmstirapError):
            optimize(params, (0.0, 0.0), (-1e9, -1e9), budget=9)
