"""Efficiency scans over detuning and pulse delay, and a grid optimizer.

``sweep_eta`` evaluates the conversion efficiency on a (delta1, t1) grid
with the bound-bound pulse center fixed, one full time evolution per cell.
Cells are independent and thread-parallel with index-deterministic merging;
a cell whose integration fails is recorded as failed rather than aborting
the scan.

``optimize`` is a derivative-free two-stage search: a coarse grid over the
requested bounds followed by up to three rounds of 5x5 local refinement,
each round shrinking the search box threefold around the best cell found so
far, all within a fixed evaluation budget.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import AmstirapError, DomainError, IntegrationError
from .integrate import DEFAULT_ABSTOL, DEFAULT_RELTOL, evolve
from .model import SystemParams
from .pulses import PulsePair

__all__ = ["CELL_OK", "CELL_FAILED", "SweepResult", "OptimizeResult", "sweep_eta", "optimize"]

CELL_OK = 0
CELL_FAILED = 1

_REFINE_ROUNDS = 3
_REFINE_GRID = 5
_REFINE_SHRINK = 3.0


@dataclass(frozen=True)
class SweepResult:
    """Efficiency matrix over the (delta1, t1) grid.

    ``eta[i, j]`` belongs to ``delta1_values[i]`` and ``t1_values[j]``;
    ``status`` holds CELL_OK/CELL_FAILED per cell (failed cells carry
    eta = nan).  ``argmax`` is the best (delta1, t1, eta) triple.
    """

    delta1_values: np.ndarray
    t1_values: np.ndarray
    eta: np.ndarray
    status: np.ndarray
    t2: float

    @property
    def argmax(self) -> tuple[float, float, float]:
        if not np.any(self.status == CELL_OK):
            raise AmstirapError("all sweep cells failed")
        masked = np.where(self.status == CELL_OK, self.eta, -np.inf)
        i, j = np.unravel_index(int(np.argmax(masked)), masked.shape)
        return (
            float(self.delta1_values[i]),
            float(self.t1_values[j]),
            float(self.eta[i, j]),
        )


@dataclass(frozen=True)
class OptimizeResult:
    """Best point found by the coarse-plus-refinement search."""

    delta1: float
    delay: float
    eta: float
    evaluations: int


def _cell_eta(
    params: SystemParams,
    delta1: float,
    t1: float,
    t2: float,
    reltol: float,
    abstol: float,
) -> tuple[float, int]:
    cell = params.with_(delta1=float(delta1), t1=float(t1), t2=float(t2))
    try:
        traj = evolve(cell, reltol=reltol, abstol=abstol, samples=2)
    except (IntegrationError, DomainError):
        return float("nan"), CELL_FAILED
    return traj.eta, CELL_OK


def sweep_eta(
    params: SystemParams,
    delta1_values: np.ndarray,
    t1_values: np.ndarray,
    t2: float | None = None,
    reltol: float = DEFAULT_RELTOL,
    abstol: float = DEFAULT_ABSTOL,
    threads: int | None = None,
) -> SweepResult:
    """Conversion efficiency over the (delta1, t1) grid at fixed t2."""
    delta1_values = np.atleast_1d(np.asarray(delta1_values, dtype=float))
    t1_values = np.atleast_1d(np.asarray(t1_values, dtype=float))
    if delta1_values.size == 0 or t1_values.size == 0:
        raise DomainError("sweep axes must be nonempty")
    if t2 is None:
        t2 = params.t2
    if threads is not None and threads < 1:
        raise DomainError("threads must be a positive integer")

    eta = np.empty((delta1_values.size, t1_values.size))
    status = np.empty_like(eta, dtype=int)

    def fill(idx: int) -> None:
        i, j = divmod(idx, t1_values.size)
        eta[i, j], status[i, j] = _cell_eta(
            params, delta1_values[i], t1_values[j], t2, reltol, abstol
        )

    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(fill, range(eta.size)))

    return SweepResult(
        delta1_values=delta1_values,
        t1_values=t1_values,
        eta=eta,
        status=status,
        t2=float(t2),
    )


def optimize(
    params: SystemParams,
    delta1_bounds: tuple[float, float],
    delay_bounds: tuple[float, float],
    budget: int = 100,
    t2: float | None = None,
    coarse: int = 3,
    reltol: float = DEFAULT_RELTOL,
    abstol: float = DEFAULT_ABSTOL,
    threads: int | None = None,
) -> OptimizeResult:
    """Locate the best (delta1, delay) within bounds under a budget.

    The coarse stage scans a ``coarse x coarse`` grid across the bounds
    (degenerate bounds collapse to a single value); each refinement round
    scans a 5x5 grid in a box shrunk threefold around the incumbent,
    clipped to the original bounds.  Rounds that would exceed ``budget``
    evaluations are skipped, so ``budget = 9`` with the default 3x3 coarse
    grid returns exactly the best of those nine cells.
    """
    if budget < coarse * coarse:
        raise DomainError(
            f"budget ({budget}) cannot cover the {coarse}x{coarse} coarse grid"
        )
    if t2 is None:
        t2 = params.t2
    d_lo, d_hi = map(float, delta1_bounds)
    T_lo, T_hi = map(float, delay_bounds)
    if d_hi < d_lo or T_hi < T_lo:
        raise DomainError("bounds must be ordered (low, high)")

    def axis(lo: float, hi: float, n: int) -> np.ndarray:
        return np.array([0.5 * (lo + hi)]) if hi == lo else np.linspace(lo, hi, n)

    used = 0
    best: tuple[float, float, float] | None = None

    def scan(d_axis: np.ndarray, T_axis: np.ndarray) -> tuple[float, float, float] | None:
        nonlocal used
        result = sweep_eta(
            params,
            d_axis,
            t2 + T_axis,  # delay grid -> absolute pulse-1 centers
            t2=t2,
            reltol=reltol,
            abstol=abstol,
            threads=threads,
        )
        used += result.eta.size
        if not np.any(result.status == CELL_OK):
            return None
        d_star, t1_star, eta_star = result.argmax
        return d_star, t1_star - t2, eta_star

    found = scan(axis(d_lo, d_hi, coarse), axis(T_lo, T_hi, coarse))
    if found is not None and (best is None or found[2] > best[2]):
        best = found

    d_half = (d_hi - d_lo) / 2.0
    T_half = (T_hi - T_lo) / 2.0
    for _ in range(_REFINE_ROUNDS):
        if best is None or used + _REFINE_GRID * _REFINE_GRID > budget:
            break
        d_half /= _REFINE_SHRINK
        T_half /= _REFINE_SHRINK
        d_axis = axis(
            max(d_lo, best[0] - d_half), min(d_hi, best[0] + d_half), _REFINE_GRID
        )
        T_axis = axis(
            max(T_lo, best[1] - T_half), min(T_hi, best[1] + T_half), _REFINE_GRID
        )
        found = scan(d_axis, T_axis)
        if found is not None and found[2] > best[2]:
            best = found

    if best is None:
        raise AmstirapError("every optimizer cell failed to integrate")
    return OptimizeResult(
        delta1=best[0], delay=best[1], eta=best[2], evaluations=used
    )
