"""Unit tests for the dark-state linear-stability analysis."""

import numpy as np
import pytest

from amstirap import (
    DomainError,
    classify,
    cpt_state,
    default_axes,
    linearize_at_cpt,
    map_scan,
    perturbation_growth,
    rb87_params,
)
from amstirap.stability import GROWTH_THRESHOLD_SCALE


@pytest.fixture(scope="module")
def params():
    return rb87_params()


class TestJacobian:
    @pytest.mark.parametrize("ratio,det", [(0.3, -0.4), (1.0, 0.2), (2.7, -1.2)])
    def test_fd_matches_analytic(self, params, ratio, det):
        w0 = params.omega0
        point = params.with_(delta1=det * w0)
        jac_fd = linearize_at_cpt(point, w0, ratio * w0, method="fd")
        jac_an = linearize_at_cpt(point, w0, ratio * w0, method="analytic")
        assert np.abs(jac_fd - jac_an).max() < 1e-8  # typically ~1e-10

    def test_decay_term_shifts_trace(self, params):
        w0 = params.omega0
        trace_free = np.trace(linearize_at_cpt(params, w0, w0, method="analytic"))
        with_decay = np.trace(
            linearize_at_cpt(params, w0, w0, method="analytic", include_gamma_b=True)
        )
        assert trace_free == pytest.approx(0.0, abs=1e-14)
        # the decay contributes -gamma_b/2 per excited quadrature
        assert with_decay == pytest.approx(-params.gamma_b, rel=1e-12)

    def test_unknown_method_rejected(self, params):
        with pytest.raises(DomainError):
            linearize_at_cpt(params, params.omega0, params.omega0, method="magic")


class TestClassify:
    def test_resonance_band_cell_is_unstable(self, params):
        # frozen reference: growth ~8e-4 at ratio 0.05 near the band center
        w0 = params.omega0
        result = classify(params.with_(delta1=-0.0132 * w0), w0, 0.05 * w0)
        assert result.unstable
        assert 5e-4 < result.max_growth_rate < 1.1e-3

    def test_strongest_band_cell(self, params):
        w0 = params.omega0
        result = classify(params.with_(delta1=0.0), w0, 1.5 * w0)
        assert result.unstable
        assert result.max_growth_rate == pytest.approx(8.76e-3, rel=0.05)

    @pytest.mark.parametrize("ratio,det", [(0.1, 0.5), (2.0, -0.5), (1.0, -1.4)])
    def test_off_band_cells_are_stable(self, params, ratio, det):
        w0 = params.omega0
        result = classify(params.with_(delta1=det * w0), w0, ratio * w0)
        assert not result.unstable
        assert result.max_growth_rate < result.threshold

    def test_decay_damps_the_band(self, params):
        # with the excited-state decay included in the linearization the
        # resonance band is wiped out
        w0 = params.omega0
        point = params.with_(delta1=0.0)
        without = classify(point, w0, 1.5 * w0, include_gamma_b=False)
        with_decay = classify(point, w0, 1.5 * w0, include_gamma_b=True)
        assert without.unstable
        assert not with_decay.unstable

    def test_six_eigenfrequencies_sorted(self, params):
        w0 = params.omega0
        result = classify(params, w0, 0.8 * w0)
        freqs = result.eigenfrequencies
        assert len(freqs) == 6
        keys = [(f.real, f.imag) for f in freqs]
        assert keys == sorted(keys)

    def test_default_threshold_scales_with_coupling(self, params):
        result = classify(params, params.omega0, params.omega0)
        assert result.threshold == pytest.approx(GROWTH_THRESHOLD_SCALE * params.omega0)

    def test_threshold_override(self, params):
        w0 = params.omega0
        result = classify(params.with_(delta1=-0.0132 * w0), w0, 0.05 * w0, threshold=1e-2)
        assert not result.unstable  # growth ~8e-4 below the raised threshold


class TestMapScan:
    def test_shapes_and_flag_consistency(self, params):
        ratios, detunings = default_axes(12, 9)
        result = map_scan(params, ratios, detunings, threads=2)
        assert result.growth.shape == (12, 9)
        assert result.unstable.shape == (12, 9)
        assert result.eigenfrequencies.shape == (12, 9, 6)
        assert np.array_equal(result.unstable, result.growth > result.threshold)

    def test_thread_count_does_not_change_results(self, params):
        ratios, detunings = default_axes(10, 7)
        single = map_scan(params, ratios, detunings, threads=1)
        pooled = map_scan(params, ratios, detunings, threads=5)
        assert np.array_equal(single.growth, pooled.growth)
        assert np.array_equal(single.eigenfrequencies, pooled.eigenfrequencies)

    def test_default_axes_bounds(self):
        ratios, detunings = default_axes()
        assert ratios[0] == 0.01 and ratios[-1] == 3.0 and ratios.size == 200
        assert detunings[0] == -1.5 and detunings[-1] == 1.5 and detunings.size == 200

    def test_empty_axis_rejected(self, params):
        with pytest.raises(DomainError):
            map_scan(params, np.array([]), np.array([0.0]))


class TestPerturbationGrowth:
    def test_band_cell_grows_at_linear_rate(self, params):
        # eps small enough that the perturbation stays linear over the
        # window; growth factor should track exp(rate * duration)
        w0 = params.omega0
        point = params.with_(delta1=0.0)
        rate = classify(point, w0, 1.5 * w0).max_growth_rate
        result = perturbation_growth(
            point, w0, 1.5 * w0, duration=1200.0, eps=1e-8
        )
        assert result.grew
        assert result.linear_prediction == pytest.approx(
            np.exp(rate * 1200.0), rel=1e-6
        )
        assert result.factor == pytest.approx(result.linear_prediction, rel=0.5)

    def test_stable_cell_does_not_grow(self, params):
        w0 = params.omega0
        result = perturbation_growth(
            params.with_(delta1=-0.5 * w0), w0, 2.0 * w0, duration=3000.0
        )
        assert not result.grew
        assert result.factor < np.exp(2.0)

    def test_deterministic_given_seed(self, params):
        w0 = params.omega0
        a = perturbation_growth(params, w0, w0, seed=7)
        b = perturbation_growth(params, w0, w0, seed=7)
        assert a.factor == b.factor


class TestFixedPoint:
    @pytest.mark.parametrize("ratio", [0.02, 0.5, 1.0, 3.0])
    def test_dark_state_is_stationary(self, params, ratio):
        from amstirap import State
        from amstirap.stability import rotating_frame_rhs

        w0 = params.omega0
        point = cpt_state(w0, ratio * w0, params)
        state = State(a=complex(point.amp_a), b=0j, g=complex(point.amp_g), t=0.0)
        da, db, dg = rotating_frame_rhs(
            state, params, w0, ratio * w0, point.delta, point.mu_a
        )
        assert max(abs(da), abs(db), abs(dg)) < 1e-12
