"""Dark (coherent-population-trapping) steady state of the three-mode model.

With both fields on, the model supports a steady solution in which the
excited molecular amplitude vanishes exactly (``b = 0``) and the atomic and
stable-molecule amplitudes satisfy the dark-state condition

    W1 a^2 + W2 g = 0.

Normalizing the conserved atom number to one (``pop_a + 2 pop_g = 1``) gives
closed forms that depend only on the coupling ratio ``r = W1/W2``:

    pop_a = 2 / (1 + sqrt(1 + 8 r^2)),      pop_g = (1 - pop_a) / 2.

Keeping this state stationary in the presence of collisions requires the
two-photon detuning to track

    delta = (2 L_aa - L_ag) pop_a + (2 L_ag - L_gg) pop_g,

and the atomic amplitude then rotates at the chemical potential
``mu_a = L_aa pop_a + L_ag pop_g`` (the molecular amplitudes at ``2 mu_a``).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite, sqrt

from .errors import DomainError
from .model import SystemParams

__all__ = [
    "CptPoint",
    "cpt_populations",
    "generalized_delta",
    "chemical_potential",
    "cpt_state",
]

_POP_CONSISTENCY_TOL = 1e-12


@dataclass(frozen=True)
class CptPoint:
    """Dark-state solution at a fixed coupling ratio.

    ``amp_a`` (real positive) and ``amp_g`` (real negative) are one gauge
    choice of amplitudes; any simultaneous rotation of (a, b, g) by
    (theta, 2 theta, 2 theta) is equally valid.  ``delta`` is the two-photon
    detuning that keeps the state stationary and ``mu_a`` the atomic
    chemical potential.
    """

    ratio: float
    pop_a: float
    pop_g: float
    delta: float
    mu_a: float
    amp_a: float
    amp_g: float


def cpt_populations(ratio: float) -> tuple[float, float]:
    """Dark-state populations (pop_a, pop_g) at coupling ratio ``r >= 0``.

    Uses the rationalized form ``2 / (1 + sqrt(1 + 8 r^2))`` which is
    cancellation-free for large ``r``; ``pop_g`` follows from atom-number
    normalization ``pop_a + 2 pop_g = 1``.
    """
    if not (ratio >= 0 and isfinite(ratio)):
        raise DomainError(f"coupling ratio must be finite and >= 0, got {ratio}")
    pop_a = 2.0 / (1.0 + sqrt(1.0 + 8.0 * ratio * ratio))
    pop_g = 0.5 * (1.0 - pop_a)
    return pop_a, pop_g


def _check_populations(pop_a: float, pop_g: float) -> None:
    if abs(pop_a + 2.0 * pop_g - 1.0) > _POP_CONSISTENCY_TOL:
        raise DomainError(
            "inconsistent dark-state populations: "
            f"pop_a + 2*pop_g = {pop_a + 2.0 * pop_g!r}, expected 1"
        )


def generalized_delta(pop_a: float, pop_g: float, params: SystemParams) -> float:
    """Two-photon detuning that keeps the dark state stationary.

    ``delta = (2 L_aa - L_ag) pop_a + (2 L_ag - L_gg) pop_g``; reduces to the
    ordinary two-photon resonance ``delta = 0`` when all collision rates
    vanish.
    """
    _check_populations(pop_a, pop_g)
    return (2.0 * params.lambda_aa - params.lambda_ag) * pop_a + (
        2.0 * params.lambda_ag - params.lambda_gg
    ) * pop_g


def chemical_potential(pop_a: float, pop_g: float, params: SystemParams) -> float:
    """Atomic chemical potential ``mu_a = L_aa pop_a + L_ag pop_g``.

    The molecular chemical potentials are both ``2 mu_a`` on the dark-state
    manifold.
    """
    _check_populations(pop_a, pop_g)
    return params.lambda_aa * pop_a + params.lambda_ag * pop_g


def cpt_state(omega1: float, omega2: float, params: SystemParams) -> CptPoint:
    """Full dark-state solution at instantaneous couplings (W1, W2).

    Amplitudes use the gauge ``amp_a = sqrt(pop_a)`` real positive and
    ``amp_g = -r * amp_a^2`` real negative, which satisfies the dark-state
    condition ``W1 amp_a^2 + W2 amp_g = 0`` identically.
    """
    if omega1 < 0 or omega2 < 0:
        raise DomainError("Rabi frequencies must be nonnegative")
    if omega2 == 0.0:
        raise DomainError(
            "no dark state exists with omega2 = 0 and omega1 > 0"
            if omega1 > 0
            else "dark state undefined at omega1 = omega2 = 0"
        )
    ratio = omega1 / omega2
    pop_a, pop_g = cpt_populations(ratio)
    amp_a = sqrt(pop_a)
    amp_g = -ratio * pop_a
    return CptPoint(
        ratio=ratio,
        pop_a=pop_a,
        pop_g=pop_g,
        delta=generalized_delta(pop_a, pop_g, params),
        mu_a=chemical_potential(pop_a, pop_g, params),
        amp_a=amp_a,
        amp_g=amp_g,
    )
