"""Core mean-field model of two-color atom-molecule condensate conversion.

Three complex amplitudes describe the condensate: ``a`` for free atoms,
``b`` for the electronically excited molecular state, and ``g`` for the
stable ground molecular state.  A free-bound field with Rabi frequency
``omega1`` photoassociates atom pairs into ``b`` (quadratic coupling
``a*a -> b``), and a bound-bound field with Rabi frequency ``omega2``
transfers ``b`` into ``g``.  Two-body collisions enter through the mean-field
shift rates ``lambda_aa``, ``lambda_ag``, ``lambda_gg``.

The equations of motion implemented by :func:`rhs` are

    i da/dt = (L_aa |a|^2 + L_ag |g|^2) a - W1 a* b
    i db/dt = (D1 - i g_b/2) b - (W1 a^2 + W2 g)/2
    i dg/dt = (L_ag |a|^2 + L_gg |g|^2) g + delta g - W2 b/2

where ``D1`` is the free-bound detuning, ``g_b`` the decay rate of the
excited molecular level, and ``delta`` the (generally time-dependent)
two-photon detuning.

Because each molecular amplitude represents an atom *pair*, the conserved
atom number is ``|a|^2 + 2|b|^2 + 2|g|^2``.  With ``g_b = 0`` this quantity
is an exact constant of motion of the equations above; with ``g_b > 0`` it
decreases monotonically at the rate ``2 g_b |b|^2``.  All norm reporting in
this package uses this atom-number weighting.

Unit convention: the internal time unit is the microsecond, and every
frequency-like parameter (Rabi frequencies, detunings, collision rates,
decay rates) is an angular rate in rad/us.  Tabulated "MHz" values for this
physical system are consumed numerically as rad/us without an extra 2*pi,
which keeps products such as ``omega0 * tau = 5e3`` dimensionless.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import isfinite

from .errors import DomainError

__all__ = [
    "State",
    "SystemParams",
    "collision_rates_from_density",
    "rhs",
    "atom_number_norm",
    "populations",
    "rb87_params",
]


@dataclass(frozen=True)
class State:
    """Instantaneous mean-field state: three complex amplitudes and a time.

    ``a`` is the atomic amplitude, ``b`` the excited-molecule amplitude and
    ``g`` the stable-molecule amplitude.  Amplitudes are dimensionless; ``t``
    is in internal time units (us).
    """

    a: complex
    b: complex
    g: complex
    t: float = 0.0

    def require_finite(self) -> "State":
        """Return self, raising :class:`DomainError` on any non-finite part."""
        for name, z in (("a", self.a), ("b", self.b), ("g", self.g)):
            if not (isfinite(z.real) and isfinite(z.imag)):
                raise DomainError(f"non-finite amplitude {name} = {z!r}")
        return self


@dataclass(frozen=True)
class SystemParams:
    """Static physical parameters of a run.

    Frequencies and rates are angular, in rad/us; times in us.

    Fields
    ------
    omega0    : peak Rabi frequency of both pulses
    tau       : Gaussian pulse width
    t1, t2    : centers of the free-bound (1) and bound-bound (2) pulses;
                counterintuitive ordering means ``t2 < t1``
    delta1    : free-bound detuning
    gamma_b   : decay rate of the excited molecular level (>= 0)
    lambda_aa, lambda_ag, lambda_gg : collision shift rates
    """

    omega0: float
    tau: float
    t1: float
    t2: float
    delta1: float
    gamma_b: float
    lambda_aa: float
    lambda_ag: float
    lambda_gg: float

    def __post_init__(self) -> None:
        if not self.omega0 > 0:
            raise DomainError(f"omega0 must be positive, got {self.omega0}")
        if not self.tau > 0:
            raise DomainError(f"tau must be positive, got {self.tau}")
        if self.gamma_b < 0:
            raise DomainError(f"gamma_b must be nonnegative, got {self.gamma_b}")

    @property
    def delay(self) -> float:
        """Pulse delay T = t1 - t2; positive for counterintuitive ordering."""
        return self.t1 - self.t2

    def with_(self, **changes) -> "SystemParams":
        """Return a copy with the given fields replaced."""
        return replace(self, **changes)


def collision_rates_from_density(
    rho: float, u_aa: float, u_ag: float, u_gg: float
) -> tuple[float, float, float]:
    """Collision shift rates ``L_ij = rho * U_ij`` from density and strengths.

    ``rho`` is the condensate density (cm^-3) and each ``U_ij`` an
    interaction strength in frequency*cm^3; the returned rates carry the
    same frequency unit as the inputs.
    """
    if not rho > 0:
        raise DomainError(f"density must be positive, got {rho}")
    return rho * u_aa, rho * u_ag, rho * u_gg


def rhs(
    state: State,
    params: SystemParams,
    omega1: float,
    omega2: float,
    delta: float,
) -> tuple[complex, complex, complex]:
    """Time derivatives (da/dt, db/dt, dg/dt) of the mean-field equations.

    ``omega1``/``omega2`` are the instantaneous Rabi frequencies and
    ``delta`` the instantaneous two-photon detuning.  This is the readable
    reference implementation; the integrator uses a compiled equivalent.
    """
    state.require_finite()
    if omega1 < 0 or omega2 < 0:
        raise DomainError("Rabi frequencies must be nonnegative")
    a, b, g = state.a, state.b, state.g
    na = a.real * a.real + a.imag * a.imag
    ng = g.real * g.real + g.imag * g.imag
    p = params
    da = -1j * ((p.lambda_aa * na + p.lambda_ag * ng) * a - omega1 * a.conjugate() * b)
    db = -1j * ((p.delta1 - 0.5j * p.gamma_b) * b - 0.5 * (omega1 * a * a + omega2 * g))
    dg = -1j * ((p.lambda_ag * na + p.lambda_gg * ng + delta) * g - 0.5 * omega2 * b)
    return da, db, dg


def atom_number_norm(state: State) -> float:
    """Total atom number ``|a|^2 + 2|b|^2 + 2|g|^2`` (pairs counted twice)."""
    pop_a, pop_b, pop_g = populations(state)
    return pop_a + 2.0 * (pop_b + pop_g)


def populations(state: State) -> tuple[float, float, float]:
    """Component populations (|a|^2, |b|^2, |g|^2)."""
    return (
        state.a.real * state.a.real + state.a.imag * state.a.imag,
        state.b.real * state.b.real + state.b.imag * state.b.imag,
        state.g.real * state.g.real + state.g.imag * state.g.imag,
    )


def rb87_params(gamma_b: float = 74.0, delta1: float | None = None) -> SystemParams:
    """Default parameter set for the 87Rb atom-molecule system.

    Peak Rabi frequency 2.1 rad/us with pulse area ``omega0 * tau = 5e3``,
    bound-bound pulse centered at ``2.5 tau`` and free-bound pulse at
    ``3.77 tau``; collision rates from a condensate density of
    4.3e14 cm^-3.  ``delta1`` defaults to ``-1.4 * gamma_b`` (blue detuned,
    far from the free-bound resonance).
    """
    omega0 = 2.1
    tau = 5.0e3 / omega0
    laa, lag, lgg = collision_rates_from_density(
        4.3e14, 4.96e-17, -6.44e-17, 2.48e-17
    )
    if delta1 is None:
        delta1 = -1.4 * gamma_b
    return SystemParams(
        omega0=omega0,
        tau=tau,
        t1=3.77 * tau,
        t2=2.5 * tau,
        delta1=delta1,
        gamma_b=gamma_b,
        lambda_aa=laa,
        lambda_ag=lag,
        lambda_gg=lgg,
    )
