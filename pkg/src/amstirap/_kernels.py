"""Compiled numerical kernels: the mean-field right-hand side and an
adaptive Dormand-Prince 5(4) integrator with dense output.

The state is the six-vector (Re a, Im a, Re b, Im b, Re g, Im g).  All model
parameters travel in a flat float64 parameter vector so the whole integration
loop stays inside one nopython-compiled function:

    p[0]  peak W1 (pulse-1 amplitude scale folded in)
    p[1]  peak W2
    p[2]  tau
    p[3]  t1
    p[4]  t2
    p[5]  delta1
    p[6]  gamma_b
    p[7]  lambda_aa
    p[8]  lambda_ag
    p[9]  lambda_gg
    p[10] mu_a   (co-rotating frame rate; 0 for lab-frame evolution)
    p[11] mode   (0 = scheduled Gaussian pulses with dark-state delta(t),
                  1 = frozen couplings/detuning from p[12..14])
    p[12] frozen W1
    p[13] frozen W2
    p[14] frozen delta

The error norm treats each complex pair jointly (the scale is the pair
modulus), so step-size control is invariant under the model's gauge
rotations (theta, 2 theta, 2 theta) and identical trajectories of rotated
initial states see identical step sequences up to round-off.
"""

from __future__ import annotations

import numpy as np
from numba import njit

N_PARAMS = 15
MODE_SCHEDULED = 0.0
MODE_FROZEN = 1.0

STATUS_OK = 0
STATUS_STEP_UNDERFLOW = 1
STATUS_STEP_BUDGET = 2

_MAX_LOG_RATIO = 700.0
_MAX_STEPS = 50_000_000

# Dormand-Prince 5(4) tableau.
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = (
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
)
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
# 5th-order solution weights (row 7 of A; the last stage is FSAL).
_B1, _B3, _B4, _B5, _B6 = (
    35.0 / 384.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
)
# Error weights: 5th-order minus embedded 4th-order solution.
_E1 = 71.0 / 57600.0
_E3 = -71.0 / 16695.0
_E4 = 71.0 / 1920.0
_E5 = -17253.0 / 339200.0
_E6 = 22.0 / 525.0
_E7 = -1.0 / 40.0
# Dense-output weights of the 5th-order interpolant.
_D1 = -12715105075.0 / 11282082432.0
_D3 = 87487479700.0 / 32700410799.0
_D4 = -10690763975.0 / 1880347072.0
_D5 = 701980252875.0 / 199316789632.0
_D6 = -1453857185.0 / 822651844.0
_D7 = 69997945.0 / 29380423.0


@njit(cache=True, nogil=True)
def dark_state_delta(ratio: float, laa: float, lag: float, lgg: float) -> float:
    """Two-photon detuning keeping the dark state stationary at ratio r."""
    pa = 2.0 / (1.0 + np.sqrt(1.0 + 8.0 * ratio * ratio))
    pg = 0.5 * (1.0 - pa)
    return (2.0 * laa - lag) * pa + (2.0 * lag - lgg) * pg


@njit(cache=True, nogil=True)
def couplings_at(t: float, p: np.ndarray) -> tuple[float, float, float]:
    """Instantaneous (W1, W2, delta) for either kernel mode."""
    if p[11] == MODE_FROZEN:
        return p[12], p[13], p[14]
    tau = p[2]
    d1 = (t - p[3]) / tau
    d2 = (t - p[4]) / tau
    w1 = p[0] * np.exp(-d1 * d1)
    w2 = p[1] * np.exp(-d2 * d2)
    if p[0] == 0.0:
        ratio = 0.0
    else:
        z = d2 * d2 - d1 * d1
        if z > _MAX_LOG_RATIO:
            z = _MAX_LOG_RATIO
        ratio = (p[0] / p[1]) * np.exp(z)
    delta = dark_state_delta(ratio, p[7], p[8], p[9])
    return w1, w2, delta


@njit(cache=True, nogil=True)
def rhs6(t: float, y: np.ndarray, p: np.ndarray, out: np.ndarray) -> None:
    """Mean-field equations over the six real coordinates.

    Includes the optional frame terms +i mu_a a, +2 i mu_a b, +2 i mu_a g
    (p[10]), absorbed as shifts of the diagonal coefficients.
    """
    w1, w2, delta = couplings_at(t, p)
    ar, ai = y[0], y[1]
    br, bi = y[2], y[3]
    gr, gi = y[4], y[5]
    laa, lag, lgg = p[7], p[8], p[9]
    mu = p[10]
    na = ar * ar + ai * ai
    ng = gr * gr + gi * gi

    # i da/dt = ka*a - w1*conj(a)*b
    ka = laa * na + lag * ng - mu
    tr = ar * br + ai * bi
    ti = ar * bi - ai * br
    ur = ka * ar - w1 * tr
    ui = ka * ai - w1 * ti
    out[0] = ui
    out[1] = -ur

    # i db/dt = (delta1 - i gamma_b/2 - 2 mu)*b - (w1*a^2 + w2*g)/2
    kb = p[5] - 2.0 * mu
    half_g = 0.5 * p[6]
    sr = 0.5 * (w1 * (ar * ar - ai * ai) + w2 * gr)
    si = 0.5 * (w1 * (2.0 * ar * ai) + w2 * gi)
    vr = kb * br + half_g * bi - sr
    vi = kb * bi - half_g * br - si
    out[2] = vi
    out[3] = -vr

    # i dg/dt = (lag*na + lgg*ng + delta - 2 mu)*g - w2*b/2
    kg = lag * na + lgg * ng + delta - 2.0 * mu
    wr = kg * gr - 0.5 * w2 * br
    wi = kg * gi - 0.5 * w2 * bi
    out[4] = wi
    out[5] = -wr


@njit(cache=True, nogil=True)
def _error_norm(
    y: np.ndarray, ynew: np.ndarray, e: np.ndarray, rtol: float, atol: float
) -> float:
    """RMS of the error vector against per-complex-pair tolerance scales."""
    s = 0.0
    for j in range(3):
        r0, i0 = y[2 * j], y[2 * j + 1]
        r1, i1 = ynew[2 * j], ynew[2 * j + 1]
        m0 = np.sqrt(r0 * r0 + i0 * i0)
        m1 = np.sqrt(r1 * r1 + i1 * i1)
        m = m0 if m0 > m1 else m1
        sc = atol + rtol * m
        s += (e[2 * j] / sc) ** 2 + (e[2 * j + 1] / sc) ** 2
    return np.sqrt(s / 6.0)


@njit(cache=True, nogil=True)
def _initial_step(
    t0: float, y0: np.ndarray, f0: np.ndarray, tend: float,
    rtol: float, atol: float, p: np.ndarray,
) -> float:
    span = tend - t0
    d0 = 0.0
    d1 = 0.0
    for j in range(3):
        m = np.sqrt(y0[2 * j] ** 2 + y0[2 * j + 1] ** 2)
        sc = atol + rtol * m
        d0 += (y0[2 * j] / sc) ** 2 + (y0[2 * j + 1] / sc) ** 2
        d1 += (f0[2 * j] / sc) ** 2 + (f0[2 * j + 1] / sc) ** 2
    d0 = np.sqrt(d0 / 6.0)
    d1 = np.sqrt(d1 / 6.0)
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6
    else:
        h0 = 0.01 * d0 / d1
    if h0 > span:
        h0 = span
    y1 = y0 + h0 * f0
    f1 = np.empty(6)
    rhs6(t0 + h0, y1, p, f1)
    d2 = _error_norm(y0, y1, f1 - f0, rtol, atol) / h0
    dm = max(d1, d2)
    if dm <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / dm) ** 0.2
    h = min(100.0 * h0, h1)
    if h > span:
        h = span
    return h


@njit(cache=True, nogil=True)
def integrate(
    y0: np.ndarray,
    t0: float,
    tend: float,
    rtol: float,
    atol: float,
    p: np.ndarray,
    ts: np.ndarray,
):
    """Adaptive Dormand-Prince 5(4) integration with dense sampling.

    ``ts`` must be sorted ascending within [t0, tend]; the state at each
    requested time is produced by the integrator's own 5th-order interpolant,
    independent of the internal step sequence.  Returns
    (samples, y_final, naccept, nreject, nfev, status, t_reached).
    """
    nts = ts.shape[0]
    yout = np.empty((nts, 6))
    y = y0.copy()
    ynew = np.empty(6)
    ysti = np.empty(6)
    k1 = np.empty(6)
    k2 = np.empty(6)
    k3 = np.empty(6)
    k4 = np.empty(6)
    k5 = np.empty(6)
    k6 = np.empty(6)
    k7 = np.empty(6)
    rc1 = np.empty(6)
    rc2 = np.empty(6)
    rc3 = np.empty(6)
    rc4 = np.empty(6)
    rc5 = np.empty(6)

    t = t0
    isamp = 0
    while isamp < nts and ts[isamp] <= t0:
        for i in range(6):
            yout[isamp, i] = y[i]
        isamp += 1

    rhs6(t, y, p, k1)
    nfev = 1
    h = _initial_step(t0, y, k1, tend, rtol, atol, p)
    nfev += 1
    naccept = 0
    nreject = 0
    just_rejected = False
    nsteps = 0

    while t < tend:
        nsteps += 1
        if nsteps > _MAX_STEPS:
            return yout, y, naccept, nreject, nfev, STATUS_STEP_BUDGET, t
        hmin = 1e-14 * max(1.0, abs(t))
        if h < hmin:
            return yout, y, naccept, nreject, nfev, STATUS_STEP_UNDERFLOW, t
        last = False
        if t + h >= tend:
            h = tend - t
            last = True

        for i in range(6):
            ysti[i] = y[i] + h * _A21 * k1[i]
        rhs6(t + _C2 * h, ysti, p, k2)
        for i in range(6):
            ysti[i] = y[i] + h * (_A31 * k1[i] + _A32 * k2[i])
        rhs6(t + _C3 * h, ysti, p, k3)
        for i in range(6):
            ysti[i] = y[i] + h * (_A41 * k1[i] + _A42 * k2[i] + _A43 * k3[i])
        rhs6(t + _C4 * h, ysti, p, k4)
        for i in range(6):
            ysti[i] = y[i] + h * (
                _A51 * k1[i] + _A52 * k2[i] + _A53 * k3[i] + _A54 * k4[i]
            )
        rhs6(t + _C5 * h, ysti, p, k5)
        for i in range(6):
            ysti[i] = y[i] + h * (
                _A61 * k1[i] + _A62 * k2[i] + _A63 * k3[i] + _A64 * k4[i] + _A65 * k5[i]
            )
        rhs6(t + h, ysti, p, k6)
        for i in range(6):
            ynew[i] = y[i] + h * (
                _B1 * k1[i] + _B3 * k3[i] + _B4 * k4[i] + _B5 * k5[i] + _B6 * k6[i]
            )
        rhs6(t + h, ynew, p, k7)
        nfev += 6

        finite = True
        for i in range(6):
            if not np.isfinite(ynew[i]) or not np.isfinite(k7[i]):
                finite = False
                break
        if not finite:
            nreject += 1
            just_rejected = True
            h *= 0.5
            continue

        for i in range(6):
            ysti[i] = h * (
                _E1 * k1[i]
                + _E3 * k3[i]
                + _E4 * k4[i]
                + _E5 * k5[i]
                + _E6 * k6[i]
                + _E7 * k7[i]
            )
        err = _error_norm(y, ynew, ysti, rtol, atol)

        if err <= 1.0:
            told = t
            t = tend if last else told + h
            if isamp < nts:
                # 5th-order dense interpolant over [told, told + h].
                for i in range(6):
                    ydiff = ynew[i] - y[i]
                    bspl = h * k1[i] - ydiff
                    rc1[i] = y[i]
                    rc2[i] = ydiff
                    rc3[i] = bspl
                    rc4[i] = ydiff - h * k7[i] - bspl
                    rc5[i] = h * (
                        _D1 * k1[i]
                        + _D3 * k3[i]
                        + _D4 * k4[i]
                        + _D5 * k5[i]
                        + _D6 * k6[i]
                        + _D7 * k7[i]
                    )
                slack = 1e-12 * max(1.0, abs(t))
                while isamp < nts and ts[isamp] <= t + slack:
                    theta = (ts[isamp] - told) / h
                    if theta < 0.0:
                        theta = 0.0
                    elif theta > 1.0:
                        theta = 1.0
                    th1 = 1.0 - theta
                    for i in range(6):
                        yout[isamp, i] = rc1[i] + theta * (
                            rc2[i] + th1 * (rc3[i] + theta * (rc4[i] + th1 * rc5[i]))
                        )
                    isamp += 1
            for i in range(6):
                y[i] = ynew[i]
                k1[i] = k7[i]
            naccept += 1
            fac = 0.9 * err ** -0.2 if err > 0.0 else 5.0
            if fac > 5.0:
                fac = 5.0
            elif fac < 0.2:
                fac = 0.2
            if just_rejected and fac > 1.0:
                fac = 1.0
            just_rejected = False
            h *= fac
        else:
            nreject += 1
            just_rejected = True
            fac = 0.9 * err ** -0.2
            if fac < 0.2:
                fac = 0.2
            h *= fac

    while isamp < nts:
        for i in range(6):
            yout[isamp, i] = y[i]
        isamp += 1
    return yout, y, naccept, nreject, nfev, STATUS_OK, t


def pack_params(
    w1_peak: float,
    w2_peak: float,
    tau: float,
    t1: float,
    t2: float,
    delta1: float,
    gamma_b: float,
    laa: float,
    lag: float,
    lgg: float,
    mu_a: float = 0.0,
    frozen: tuple[float, float, float] | None = None,
) -> np.ndarray:
    """Build the flat kernel parameter vector."""
    p = np.zeros(N_PARAMS)
    p[0] = w1_peak
    p[1] = w2_peak
    p[2] = tau
    p[3] = t1
    p[4] = t2
    p[5] = delta1
    p[6] = gamma_b
    p[7] = laa
    p[8] = lag
    p[9] = lgg
    p[10] = mu_a
    if frozen is None:
        p[11] = MODE_SCHEDULED
    else:
        p[11] = MODE_FROZEN
        p[12], p[13], p[14] = frozen
    return p
