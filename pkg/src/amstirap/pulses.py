"""Gaussian pulse pair and the frequency-modulated two-photon detuning.

The two Rabi frequencies are equal-width Gaussians

    W_s(t) = amp_s * omega0 * exp[-(t - t_s)^2 / tau^2],   s = 1, 2,

applied in counterintuitive order (bound-bound pulse 2 before free-bound
pulse 1, i.e. ``t2 < t1``).  The coupling ratio is evaluated analytically as

    r(t) = W1/W2 = exp[((t - t2)^2 - (t - t1)^2) / tau^2]

to avoid 0/0 underflow far outside the pulses, and the two-photon detuning
schedule ``delta(t)`` tracks the dark-state resonance condition at every
instant (see :mod:`amstirap.cpt`).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp

from .cpt import cpt_populations, generalized_delta
from .errors import DomainError
from .model import SystemParams

__all__ = ["PulsePair", "rabi", "coupling_ratio", "delta_schedule", "default_window"]

# exp() overflows just above 709; the clamp only ever acts hundreds of pulse
# widths outside the integration window, where the ratio is effectively
# infinite anyway (populations saturate well before r ~ 1e30).
_MAX_LOG_RATIO = 700.0


@dataclass(frozen=True)
class PulsePair:
    """Amplitude, width and centers of the two Gaussian pulses.

    ``amp1``/``amp2`` are optional dimensionless scale factors (default 1)
    that allow switching one coupling off entirely, e.g. ``amp1 = 0`` leaves
    the atoms uncoupled.
    """

    omega0: float
    tau: float
    t1: float
    t2: float
    amp1: float = 1.0
    amp2: float = 1.0

    def __post_init__(self) -> None:
        if not self.omega0 > 0:
            raise DomainError(f"omega0 must be positive, got {self.omega0}")
        if not self.tau > 0:
            raise DomainError(f"tau must be positive, got {self.tau}")
        if self.amp1 < 0 or self.amp2 < 0:
            raise DomainError("pulse amplitude scales must be nonnegative")

    @classmethod
    def from_params(
        cls, params: SystemParams, amp1: float = 1.0, amp2: float = 1.0
    ) -> "PulsePair":
        return cls(
            omega0=params.omega0,
            tau=params.tau,
            t1=params.t1,
            t2=params.t2,
            amp1=amp1,
            amp2=amp2,
        )

    @property
    def delay(self) -> float:
        return self.t1 - self.t2


def rabi(pulses: PulsePair, sigma: int, t: float) -> float:
    """Instantaneous Rabi frequency of pulse ``sigma`` (1 or 2) at time t."""
    if sigma == 1:
        center, amp = pulses.t1, pulses.amp1
    elif sigma == 2:
        center, amp = pulses.t2, pulses.amp2
    else:
        raise DomainError(f"pulse index must be 1 or 2, got {sigma}")
    arg = (t - center) / pulses.tau
    return amp * pulses.omega0 * exp(-arg * arg)


def coupling_ratio(pulses: PulsePair, t: float) -> float:
    """Ratio W1(t)/W2(t), evaluated in log space so it never returns 0/0.

    Requires pulse 2 to be active (``amp2 > 0``); with ``amp1 = 0`` the
    ratio is identically zero.
    """
    if pulses.amp1 == 0.0:
        return 0.0
    if pulses.amp2 == 0.0:
        raise DomainError("coupling ratio undefined with pulse 2 switched off")
    d2 = (t - pulses.t2) / pulses.tau
    d1 = (t - pulses.t1) / pulses.tau
    z = d2 * d2 - d1 * d1
    if z > _MAX_LOG_RATIO:
        z = _MAX_LOG_RATIO
    return (pulses.amp1 / pulses.amp2) * exp(z)


def delta_schedule(pulses: PulsePair, params: SystemParams, t: float) -> float:
    """Two-photon detuning delta(t) tracking the dark-state resonance.

    Monotone nonincreasing in time for counterintuitive ordering with this
    system's collision rates: it starts at ``2 L_aa - L_ag`` (all atoms) and
    tends to ``(2 L_ag - L_gg)/2`` (all stable molecules).
    """
    pop_a, pop_g = cpt_populations(coupling_ratio(pulses, t))
    return generalized_delta(pop_a, pop_g, params)


def default_window(pulses: PulsePair) -> tuple[float, float]:
    """Default integration window [0, t1 + 4 tau].

    At the end both pulses have fallen below 1e-5 of their peak, so the
    final state is a faithful stand-in for the infinite-time limit.  At the
    start the late pulse is equally negligible; the early pulse sits 2.5 tau
    before its centre (about 2e-3 of peak), small enough that the atomic
    condensate is still effectively unperturbed.
    """
    return 0.0, pulses.t1 + 4.0 * pulses.tau
