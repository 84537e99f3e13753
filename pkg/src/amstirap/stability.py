"""Linear stability of the dark state and the instability map.

In the frame co-rotating at the dark-state chemical potential (``mu_a`` for
atoms, ``2 mu_a`` for both molecular amplitudes) the dark state is a true
fixed point of the mean-field flow.  Perturbations delta-alpha evolve under
the 6x6 real Jacobian of that flow; writing their frequencies as omega
(ansatz ``delta-alpha ~ eta e^{-i omega t} + nu* e^{+i omega t}``), dynamical
instability means some omega acquires a positive imaginary part, i.e. the
Jacobian has an eigenvalue with positive real part.

The Jacobian is built by central finite differences of the rotating-frame
right-hand side (step 1e-7), eliminating hand-derivation risk; an
independently hand-derived analytic matrix is provided as a cross-check.
Particle loss is excluded from the default linearization (``gamma_b = 0``)
— the dark state has no excited-molecule amplitude, so it remains an exact
fixed point either way — with an opt-in flag to include it.

A direct dynamical oracle (:func:`perturbation_growth`) evolves the frozen
nonlinear system from a slightly perturbed dark state and measures the
actual growth factor, backing the eigenvalue classification with an
independent computation.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt

import numpy as np

from . import _kernels
from .cpt import cpt_state
from .errors import AmstirapError, DomainError
from .model import State, SystemParams, rhs

__all__ = [
    "StabilityResult",
    "StabilityMap",
    "PerturbationGrowth",
    "rotating_frame_rhs",
    "linearize_at_cpt",
    "classify",
    "map_scan",
    "default_axes",
    "perturbation_growth",
    "GROWTH_THRESHOLD_SCALE",
]

#: Default instability threshold as a fraction of omega0: eigen-solver noise
#: on these 6x6 problems sits many orders below this.
GROWTH_THRESHOLD_SCALE = 1e-6

_FD_STEP = 1e-7


@dataclass(frozen=True)
class StabilityResult:
    """Eigenfrequencies and instability verdict at one parameter point."""

    eigenfrequencies: tuple[complex, ...]
    max_growth_rate: float
    unstable: bool
    threshold: float


@dataclass(frozen=True)
class StabilityMap:
    """Instability scan over the (W2/W1, D1/W1) plane at fixed W1 = omega0."""

    ratios: np.ndarray
    detunings: np.ndarray
    growth: np.ndarray
    unstable: np.ndarray
    eigenfrequencies: np.ndarray
    threshold: float

    def __post_init__(self) -> None:
        for name, ax in (("ratios", self.ratios), ("detunings", self.detunings)):
            if ax.size == 0:
                raise DomainError(f"{name} axis must be nonempty")
            if np.any(np.diff(ax) <= 0):
                raise DomainError(f"{name} axis must be strictly increasing")
        if self.growth.shape != (self.ratios.size, self.detunings.size):
            raise DomainError("growth grid does not match the axes")


@dataclass(frozen=True)
class PerturbationGrowth:
    """Measured growth of a small perturbation under frozen couplings."""

    factor: float
    linear_prediction: float
    grew: bool


def rotating_frame_rhs(
    state: State,
    params: SystemParams,
    omega1: float,
    omega2: float,
    delta: float,
    mu_a: float,
) -> tuple[complex, complex, complex]:
    """Mean-field derivatives plus the frame terms (+i mu_a a, +2i mu_a b/g).

    With ``delta`` and ``mu_a`` taken from the dark-state solution at
    (omega1, omega2), the dark state is an exact fixed point of this flow.
    """
    da, db, dg = rhs(state, params, omega1, omega2, delta)
    return (
        da + 1j * mu_a * state.a,
        db + 2j * mu_a * state.b,
        dg + 2j * mu_a * state.g,
    )


def _vec_rhs(
    y: np.ndarray,
    params: SystemParams,
    omega1: float,
    omega2: float,
    delta: float,
    mu_a: float,
) -> np.ndarray:
    state = State(
        a=complex(y[0], y[1]), b=complex(y[2], y[3]), g=complex(y[4], y[5])
    )
    da, db, dg = rotating_frame_rhs(state, params, omega1, omega2, delta, mu_a)
    return np.array([da.real, da.imag, db.real, db.imag, dg.real, dg.imag])


def _wirtinger_block(p: complex, q: complex) -> np.ndarray:
    """Real 2x2 block from the complex pair (dF/dz, dF/dz*)."""
    return np.array(
        [
            [(p + q).real, -(p - q).imag],
            [(p + q).imag, (p - q).real],
        ]
    )


def _analytic_jacobian(
    params: SystemParams, omega1: float, omega2: float, gamma_b: float
) -> np.ndarray:
    point = cpt_state(omega1, omega2, params)
    a = point.amp_a
    g = point.amp_g
    mu = point.mu_a
    delta = point.delta
    laa, lag, lgg = params.lambda_aa, params.lambda_ag, params.lambda_gg
    na = point.pop_a
    ng = abs(g) ** 2

    # Row a: i da/dt = (laa na + lag ng - mu) a - w1 conj(a) b
    paa = -1j * (2.0 * laa * na + lag * ng - mu)
    qaa = -1j * laa * a * a
    pab = 1j * omega1 * a.conjugate()
    pag = -1j * lag * a * g.conjugate()
    qag = -1j * lag * a * g
    # Row b: i db/dt = (delta1 - i gamma_b/2 - 2 mu) b - (w1 a^2 + w2 g)/2
    pba = 1j * omega1 * a
    pbb = -1j * (params.delta1 - 0.5j * gamma_b - 2.0 * mu)
    pbg = 0.5j * omega2
    # Row g: i dg/dt = (lag na + lgg ng + delta - 2 mu) g - w2 b / 2
    pga = -1j * lag * a.conjugate() * g
    qga = -1j * lag * a * g
    pgb = 0.5j * omega2
    pgg = -1j * (lag * na + 2.0 * lgg * ng + delta - 2.0 * mu)
    qgg = -1j * lgg * g * g

    zero = 0j
    jac = np.zeros((6, 6))
    jac[0:2, 0:2] = _wirtinger_block(paa, qaa)
    jac[0:2, 2:4] = _wirtinger_block(pab, zero)
    jac[0:2, 4:6] = _wirtinger_block(pag, qag)
    jac[2:4, 0:2] = _wirtinger_block(pba, zero)
    jac[2:4, 2:4] = _wirtinger_block(pbb, zero)
    jac[2:4, 4:6] = _wirtinger_block(pbg, zero)
    jac[4:6, 0:2] = _wirtinger_block(pga, qga)
    jac[4:6, 2:4] = _wirtinger_block(pgb, zero)
    jac[4:6, 4:6] = _wirtinger_block(pgg, qgg)
    return jac


def linearize_at_cpt(
    params: SystemParams,
    omega1: float,
    omega2: float,
    method: str = "fd",
    include_gamma_b: bool = False,
    fd_step: float = _FD_STEP,
) -> np.ndarray:
    """6x6 real Jacobian of the rotating-frame flow at the dark state.

    Coordinates are (Re a, Im a, Re b, Im b, Re g, Im g).  The two-photon
    detuning and the frame rate are fixed by the dark-state solution at
    (omega1, omega2).  ``method`` selects central finite differences
    (default) or the hand-derived analytic matrix.
    """
    if not omega2 > 0:
        raise DomainError("omega2 must be positive to define the dark state")
    gamma_b = params.gamma_b if include_gamma_b else 0.0
    if method == "analytic":
        return _analytic_jacobian(params, omega1, omega2, gamma_b)
    if method != "fd":
        raise DomainError(f"unknown Jacobian method {method!r}")

    point = cpt_state(omega1, omega2, params)
    params_eff = params.with_(gamma_b=gamma_b)
    y0 = np.array([point.amp_a.real, 0.0, 0.0, 0.0, point.amp_g.real, 0.0])
    jac = np.empty((6, 6))
    for i in range(6):
        yp = y0.copy()
        ym = y0.copy()
        yp[i] += fd_step
        ym[i] -= fd_step
        fp = _vec_rhs(yp, params_eff, omega1, omega2, point.delta, point.mu_a)
        fm = _vec_rhs(ym, params_eff, omega1, omega2, point.delta, point.mu_a)
        jac[:, i] = (fp - fm) / (2.0 * fd_step)
    return jac


def classify(
    params: SystemParams,
    omega1: float,
    omega2: float,
    threshold: float | None = None,
    method: str = "fd",
    include_gamma_b: bool = False,
) -> StabilityResult:
    """Eigenfrequencies and instability flag at one coupling/detuning point.

    ``max_growth_rate`` is the largest real part of the Jacobian spectrum
    (equivalently the largest Im omega of the frequency-domain ansatz),
    clipped at zero; the point is unstable when it exceeds the threshold
    (default ``1e-6 * omega0``).
    """
    if threshold is None:
        threshold = GROWTH_THRESHOLD_SCALE * params.omega0
    jac = linearize_at_cpt(
        params, omega1, omega2, method=method, include_gamma_b=include_gamma_b
    )
    try:
        eigvals = np.linalg.eigvals(jac)
    except np.linalg.LinAlgError as exc:
        raise AmstirapError(f"eigenvalue solver failed to converge: {exc}") from exc
    omegas = 1j * eigvals
    order = np.lexsort((omegas.imag, omegas.real))
    growth = float(max(eigvals.real.max(), 0.0))
    return StabilityResult(
        eigenfrequencies=tuple(complex(w) for w in omegas[order]),
        max_growth_rate=growth,
        unstable=bool(growth > threshold),
        threshold=float(threshold),
    )


def default_axes(n_ratio: int = 200, n_detuning: int = 200) -> tuple[np.ndarray, np.ndarray]:
    """Default map axes: W2/W1 in [0.01, 3], D1/W1 in [-1.5, 1.5]."""
    return np.linspace(0.01, 3.0, n_ratio), np.linspace(-1.5, 1.5, n_detuning)


def map_scan(
    params: SystemParams,
    ratios: np.ndarray | None = None,
    detunings: np.ndarray | None = None,
    threshold: float | None = None,
    method: str = "fd",
    include_gamma_b: bool = False,
    threads: int | None = None,
) -> StabilityMap:
    """Classify every cell of the (W2/W1, D1/W1) grid at fixed W1 = omega0.

    Cells are independent; rows are distributed over a thread pool and the
    results merged by grid index, so the map is identical for every thread
    count.
    """
    if ratios is None or detunings is None:
        d_ratios, d_dets = default_axes()
        ratios = d_ratios if ratios is None else ratios
        detunings = d_dets if detunings is None else detunings
    ratios = np.asarray(ratios, dtype=float)
    detunings = np.asarray(detunings, dtype=float)
    if threshold is None:
        threshold = GROWTH_THRESHOLD_SCALE * params.omega0

    omega1 = params.omega0
    nr, nd = ratios.size, detunings.size
    growth = np.empty((nr, nd))
    eigenfrequencies = np.empty((nr, nd, 6), dtype=complex)

    def fill_row(i: int) -> None:
        omega2 = ratios[i] * omega1
        for j in range(nd):
            cell = params.with_(delta1=detunings[j] * omega1)
            result = classify(
                cell,
                omega1,
                omega2,
                threshold=threshold,
                method=method,
                include_gamma_b=include_gamma_b,
            )
            growth[i, j] = result.max_growth_rate
            eigenfrequencies[i, j, :] = result.eigenfrequencies

    if threads is not None and threads < 1:
        raise DomainError("threads must be a positive integer")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(fill_row, range(nr)))

    return StabilityMap(
        ratios=ratios,
        detunings=detunings,
        growth=growth,
        unstable=growth > threshold,
        eigenfrequencies=eigenfrequencies,
        threshold=float(threshold),
    )


def perturbation_growth(
    params: SystemParams,
    omega1: float,
    omega2: float,
    duration: float | None = None,
    eps: float = 1e-6,
    seed: int = 0,
    include_gamma_b: bool = False,
    reltol: float = 1e-10,
    abstol: float = 1e-14,
) -> PerturbationGrowth:
    """Direct dynamical instability oracle at frozen couplings.

    Evolves the frozen rotating-frame system from the dark state plus an
    ``eps``-sized random perturbation for ``duration`` (default
    ``50/omega0``) and reports the measured perturbation growth factor, the
    linear-theory prediction ``exp(max_growth * duration)``, and whether the
    measured factor exceeds e^2.
    """
    if duration is None:
        duration = 50.0 / params.omega0
    point = cpt_state(omega1, omega2, params)
    gamma_b = params.gamma_b if include_gamma_b else 0.0

    y_fixed = np.array([point.amp_a.real, 0.0, 0.0, 0.0, point.amp_g.real, 0.0])
    rng = np.random.default_rng(seed)
    direction = rng.standard_normal(6)
    direction /= sqrt(float(direction @ direction))
    y0 = y_fixed + eps * direction

    p = _kernels.pack_params(
        omega1,
        omega2,
        params.tau,
        params.t1,
        params.t2,
        params.delta1,
        gamma_b,
        params.lambda_aa,
        params.lambda_ag,
        params.lambda_gg,
        mu_a=point.mu_a,
        frozen=(omega1, omega2, point.delta),
    )
    ts = np.array([duration])
    _, yfin, _, _, _, status, t_reached = _kernels.integrate(
        y0, 0.0, duration, reltol, abstol, p, ts
    )
    if status != _kernels.STATUS_OK:
        raise AmstirapError(
            f"perturbation-growth evolution failed at t = {t_reached:.6g}"
        )
    dev = yfin - y_fixed
    factor = sqrt(float(dev @ dev)) / eps

    result = classify(params, omega1, omega2, include_gamma_b=include_gamma_b)
    prediction = float(np.exp(result.max_growth_rate * duration))
    return PerturbationGrowth(
        factor=float(factor),
        linear_prediction=prediction,
        grew=bool(factor > np.e**2),
    )
