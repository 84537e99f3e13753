"""Unit tests for the state/parameter types and the mean-field derivatives."""

import numpy as np
import pytest

from amstirap import (
    DomainError,
    State,
    SystemParams,
    atom_number_norm,
    collision_rates_from_density,
    populations,
    rb87_params,
    rhs,
)


def random_state(rng):
    x = rng.normal(size=6)
    return State(
        a=complex(x[0], x[1]), b=complex(x[2], x[3]), g=complex(x[4], x[5]), t=0.0
    )


class TestSystemParams:
    def test_default_parameter_set(self):
        p = rb87_params()
        assert p.omega0 == 2.1
        assert p.tau == pytest.approx(5000.0 / 2.1)
        assert p.t1 == pytest.approx(3.77 * p.tau)
        assert p.t2 == pytest.approx(2.5 * p.tau)
        assert p.gamma_b == 74.0
        assert p.delta1 == pytest.approx(-1.4 * 74.0)
        assert p.delay == pytest.approx(1.27 * p.tau)

    def test_decay_rate_variant_scales_detuning(self):
        p = rb87_params(gamma_b=0.74)
        assert p.delta1 == pytest.approx(-1.4 * 0.74)

    def test_explicit_detuning_wins(self):
        p = rb87_params(gamma_b=0.74, delta1=-5.0)
        assert p.delta1 == -5.0

    def test_with_replaces_single_field(self):
        p = rb87_params()
        q = p.with_(delta1=1.0)
        assert q.delta1 == 1.0
        assert q.tau == p.tau
        assert p.delta1 == pytest.approx(-103.6)  # original untouched

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"omega0": 0.0},
            {"omega0": -1.0},
            {"tau": 0.0},
            {"gamma_b": -0.1},
        ],
    )
    def test_invalid_parameters_rejected(self, kwargs):
        base = dict(
            omega0=2.1, tau=100.0, t1=377.0, t2=250.0, delta1=0.0, gamma_b=0.0,
            lambda_aa=0.0, lambda_ag=0.0, lambda_gg=0.0,
        )
        base.update(kwargs)
        with pytest.raises(DomainError):
            SystemParams(**base)


class TestCollisionRates:
    def test_density_times_interaction_strengths(self):
        # 4.3e14 cm^-3 with the three Rb interaction strengths, in rad/us:
        # products computed by hand.
        laa, lag, lgg = collision_rates_from_density(
            4.3e14, 4.96e-17, -6.44e-17, 2.48e-17
        )
        assert laa == pytest.approx(0.021328, rel=1e-12)
        assert lag == pytest.approx(-0.027692, rel=1e-12)
        assert lgg == pytest.approx(0.010664, rel=1e-12)

    def test_default_params_use_these_rates(self):
        p = rb87_params()
        assert p.lambda_aa == pytest.approx(0.021328)
        assert p.lambda_ag == pytest.approx(-0.027692)
        assert p.lambda_gg == pytest.approx(0.010664)


class TestDerivatives:
    def test_photoassociation_source_term(self):
        # All atoms, excited level empty: i db/dt = -W1 a^2 / 2, so with
        # W1 = 2.1 the derivative of b is +1.05i.
        p = rb87_params()
        state = State(a=1.0 + 0j, b=0j, g=0j, t=0.0)
        da, db, dg = rhs(state, p, omega1=2.1, omega2=1.0, delta=0.0)
        assert db == pytest.approx(1.05j, abs=1e-15)
        assert dg == 0
        # atomic phase rotation from self-interaction only
        assert da == pytest.approx(-1j * p.lambda_aa, abs=1e-15)

    def test_decay_shrinks_excited_amplitude(self):
        p = rb87_params()
        state = State(a=0j, b=1.0 + 0j, g=0j, t=0.0)
        _, db, _ = rhs(state, p, omega1=0.0, omega2=0.0, delta=0.0)
        # d|b|^2/dt = 2 Re(conj(b) db) = -gamma_b |b|^2
        assert 2.0 * (state.b.conjugate() * db).real == pytest.approx(-p.gamma_b)

    def test_norm_decay_law(self, rng):
        # d(|a|^2 + 2|b|^2 + 2|g|^2)/dt = -2 gamma_b |b|^2 for any state
        # and couplings: the pairing terms cancel exactly.
        p = rb87_params()
        for _ in range(25):
            state = random_state(rng)
            w1, w2 = rng.uniform(0, 3, size=2)
            delta = rng.uniform(-3, 3)
            da, db, dg = rhs(state, p, omega1=w1, omega2=w2, delta=delta)
            dnorm = 2.0 * (
                (state.a.conjugate() * da).real
                + 2.0 * (state.b.conjugate() * db).real
                + 2.0 * (state.g.conjugate() * dg).real
            )
            expected = -2.0 * p.gamma_b * abs(state.b) ** 2
            assert dnorm == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_norm_conserved_without_decay(self, rng):
        p = rb87_params().with_(gamma_b=0.0)
        state = random_state(rng)
        da, db, dg = rhs(state, p, omega1=1.3, omega2=0.7, delta=0.05)
        dnorm = 2.0 * (
            (state.a.conjugate() * da).real
            + 2.0 * (state.b.conjugate() * db).real
            + 2.0 * (state.g.conjugate() * dg).real
        )
        assert abs(dnorm) < 1e-14


class TestStateHelpers:
    def test_norm_and_populations(self):
        state = State(a=0.6 + 0j, b=0.3j, g=-0.2 + 0.1j, t=0.0)
        na, nb, ng = populations(state)
        assert na == pytest.approx(0.36)
        assert nb == pytest.approx(0.09)
        assert ng == pytest.approx(0.05)
        assert atom_number_norm(state) == pytest.approx(0.36 + 2 * 0.09 + 2 * 0.05)

    def test_require_finite_rejects_nan(self):
        state = State(a=complex("nan"), b=0j, g=0j, t=0.0)
        with pytest.raises(DomainError):
            state.require_finite()
