"""Trajectory sweeps, crossing detection and regime classification.

All times in this module are the dimensionless decay parameter ``Gamma t``
defined by :class:`~qutrit_dsd.channel.Scenario`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from . import oracle
from .channel import Mode, Scenario, apply_channel
from .errors import BracketError, DomainError
from .matrixcore import TOL
from .measures import ccnr, min_pt_eigenvalue, negativity
from .states import DensityMatrix, Family

log = logging.getLogger(__name__)

SCAN_STEP = 0.002
SCAN_HORIZON = 5.0
CROSSING_TOL = 1e-9


@dataclass(frozen=True)
class SweepRecord:
    gamma_t: float
    negativity: float
    ccnr_value: float
    min_pt_eigenvalue: float


class Regime(str, Enum):
    NO_ESD = "NoEsd"
    ESD_ONLY = "EsdOnly"
    DSD_WINDOW = "DsdWindow"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class RegimeReport:
    regime: Regime
    t_n: float | None = None
    t_r: float | None = None
    window: tuple[float, float] | None = None
    notes: tuple[str, ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class QuotedValue:
    """A published crossing time that disagrees with the closed form."""

    family: Family
    param: float
    mode: Mode
    t_n: float
    t_r: float | None
    explanation: str


# Only applies to equal local and shared rates.
QUOTED_VALUES = (
    QuotedValue(
        Family.HORODECKI,
        4.3,
        Mode.GLOBAL,
        t_n=0.1422,
        t_r=0.1764,
        explanation="0.1422 is the multi-local value; under global noise the "
        "closed form gives -ln(0.7525)/4",
    ),
)


def evolve(rho0: DensityMatrix, scenario: Scenario, gamma_t: float) -> DensityMatrix:
    return apply_channel(rho0, scenario.profile_at(gamma_t))


def _check_grid(grid: Sequence[float]) -> np.ndarray:
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size == 0:
        raise DomainError("time grid must be a non-empty 1-d sequence")
    if g[0] < 0:
        raise DomainError("time grid must be non-negative")
    if np.any(np.diff(g) <= 0):
        raise DomainError("time grid must be strictly increasing")
    return g


def record_at(rho0: DensityMatrix, scenario: Scenario, gamma_t: float) -> SweepRecord:
    rho = evolve(rho0, scenario, gamma_t)
    return SweepRecord(
        gamma_t=float(gamma_t),
        negativity=negativity(rho),
        ccnr_value=ccnr(rho).value,
        min_pt_eigenvalue=min_pt_eigenvalue(rho),
    )


def sweep(rho0: DensityMatrix, scenario: Scenario, grid: Sequence[float]) -> list[SweepRecord]:
    return [record_at(rho0, scenario, t) for t in _check_grid(grid)]


def find_crossing(
    f: Callable[[float], float], lo: float, hi: float, tol: float = CROSSING_TOL, max_iter: int = 200
) -> float:
    """Bisection for a sign change of ``f`` on ``[lo, hi]``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0:
        return float(lo)
    if f_hi == 0:
        return float(hi)
    if (f_lo > 0) == (f_hi > 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f = {f_lo:.3g}, {f_hi:.3g}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0 or hi - lo < tol:
            return float(mid)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return float(0.5 * (lo + hi))


def _scan_grid(start: float, horizon: float, step: float) -> np.ndarray:
    n = int(math.ceil((horizon - start) / step))
    return start + step * np.arange(n + 1)


def numeric_esd_time(
    rho0: DensityMatrix,
    scenario: Scenario,
    horizon: float = SCAN_HORIZON,
    step: float = SCAN_STEP,
    tol: float = CROSSING_TOL,
) -> float | None:
    """Last time the minimum PT eigenvalue rises through zero.

    0.0 when the state starts PPT; None when it is still NPT at the horizon.
    """

    def min_eig(t: float) -> float:
        return min_pt_eigenvalue(evolve(rho0, scenario, t))

    grid = _scan_grid(0.0, horizon, step)
    vals = np.array([min_eig(t) for t in grid])
    npt = vals < -TOL.ppt
    if not npt[0]:
        return 0.0
    if npt[-1]:
        return None
    i = int(np.flatnonzero(npt)[-1])
    if vals[i + 1] <= 0:
        return float(grid[i + 1])
    return find_crossing(min_eig, grid[i], grid[i + 1], tol)


def _quoted_warnings(family: Family | None, param: float | None, scenario: Scenario, t_n, t_r):
    if family is None:
        return ()
    d = scenario.decoherence
    out = []
    for q in QUOTED_VALUES:
        if q.family is not family or q.mode is not scenario.mode:
            continue
        if not math.isclose(q.param, param, abs_tol=1e-9) or d.gamma1 != d.gamma2:
            continue
        if t_n is not None and abs(q.t_n - t_n) > 5e-4:
            out.append(
                f"quoted t_N={q.t_n} for {family.value} param={param} under {scenario.mode.value} "
                f"noise disagrees with computed t_N={t_n:.6f}: {q.explanation}"
            )
        if q.t_r is not None and t_r is not None and abs(q.t_r - t_r) > 2e-3:
            out.append(
                f"quoted t_R={q.t_r} for {family.value} param={param} under {scenario.mode.value} "
                f"noise disagrees with computed t_R={t_r:.6f}"
            )
    for w in out:
        log.warning(w)
    return tuple(out)


def bound_window(
    rho0: DensityMatrix,
    scenario: Scenario,
    *,
    family: Family | str | None = None,
    param: float | None = None,
    horizon: float = SCAN_HORIZON,
    step: float = SCAN_STEP,
    tol: float = CROSSING_TOL,
) -> RegimeReport:
    """Locate negativity loss t_N and the end t_R of the CCNR-certified PPT window.

    ``family``/``param`` identify ``rho0`` as a known family so that t_N comes
    from the closed form; otherwise it is found numerically.
    """
    family = Family(family) if family is not None else None
    if family is not None:
        t_n = oracle.crossing_gamma_t(family, param, scenario)
    else:
        t_n = numeric_esd_time(rho0, scenario, horizon, step, tol)

    if t_n is None:
        return RegimeReport(Regime.NO_ESD, notes=("negativity stays positive at all finite times",))

    notes: list[str] = []
    initially_ppt = t_n == 0.0
    if initially_ppt:
        notes.append("state is PPT at t=0")
        if family in (Family.HORODECKI, Family.ROTATED) and param <= 3.0:
            notes.append("state is separable at t=0")
    # a state already PPT at t=0 has no free entanglement left to lose
    lost_free = Regime.NO_ESD if initially_ppt else Regime.ESD_ONLY

    def report(regime, t_r=None, window=None):
        warnings = _quoted_warnings(family, param, scenario, t_n, t_r)
        return RegimeReport(regime, t_n, t_r, window, tuple(notes), warnings)

    if family is Family.ISOTROPIC:
        notes.append("PPT region of isotropic states is separable")
        return report(lost_free)

    def ccnr_at(t: float) -> float:
        return ccnr(evolve(rho0, scenario, t)).value

    grid = _scan_grid(t_n, max(horizon, t_n + step), step)
    positive = np.array([ccnr_at(t) for t in grid]) > 0
    if not positive.any():
        notes.append("CCNR non-positive after t_N; any remaining entanglement is undetected")
        return report(lost_free)
    if positive[-1]:
        notes.append(f"CCNR still positive at horizon Gamma t = {grid[-1]:.4g}")
        return report(Regime.UNDETERMINED)

    hits = np.flatnonzero(positive)
    try:
        t_r = find_crossing(ccnr_at, grid[hits[-1]], grid[hits[-1] + 1], tol)
        start = t_n if hits[0] == 0 else find_crossing(ccnr_at, grid[hits[0] - 1], grid[hits[0]], tol)
    except BracketError as exc:
        notes.append(f"crossing refinement failed: {exc}")
        return report(Regime.UNDETERMINED)

    notes.append("after t_R the state is PPT and CCNR-undetected (undetermined)")
    if initially_ppt:
        notes.append("CCNR certifies bound entanglement from t=0 until t_R")
        return report(Regime.NO_ESD, t_r)
    return report(Regime.DSD_WINDOW, t_r, (start, t_r))


def classify_regime(family: Family | str, param: float, scenario: Scenario, **kwargs) -> RegimeReport:
    """Classify a known family's trajectory: NoEsd, EsdOnly or DsdWindow."""
    family = Family(family)
    return bound_window(family.build(param), scenario, family=family, param=param, **kwargs)
