"""Numerical checks of local (bi)orthogonality and periodicity.

Every orthogonality check sweeps part of an ambiguity grid. It returns an
:class:`OrthogonalityReport` whose values are normalized by the energy of the
receive pulse. For ``g == gamma`` this is the energy of ``g``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .ambiguity import AmbiguityGrid, ambiguity_grid
from .signals import SampledSignal, samples_in

SRN_TOL = 1e-3
EXACT_TOL = 1e-10


@dataclass(frozen=True)
class OrthogonalityReport:
    passed: bool
    peak_value: float
    max_leakage: float
    worst_point: tuple[int, int]
    tolerance: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["worst_point"] = list(self.worst_point)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class PeriodicityResult:
    passed: bool
    max_deviation: float

    def __bool__(self) -> bool:
        return self.passed


def report_from_grid(grid: AmbiguityGrid, scale: float, tol: float) -> OrthogonalityReport:
    """Turn a grid into a verdict: unit peak at the origin, nothing elsewhere."""
    v = grid.values / scale
    i0, j0 = grid.M - 1, grid.N - 1
    peak = v[i0, j0]
    mag = np.abs(v)
    mag[i0, j0] = -1.0
    if mag.size > 1:
        i, j = np.unravel_index(int(np.argmax(mag)), mag.shape)
        leak = float(mag[i, j])
        worst = (int(i - i0), int(j - j0))
    else:
        leak, worst = 0.0, (0, 0)
    ok = abs(peak - 1.0) <= tol and leak <= tol
    return OrthogonalityReport(bool(ok), float(peak.real), leak, worst, float(tol))


def check_local_biorthogonality(
    g: SampledSignal,
    gamma: SampledSignal,
    T_res: float,
    F_res: float,
    M: int,
    N: int,
    tol: float = SRN_TOL,
) -> OrthogonalityReport:
    grid = ambiguity_grid(g, gamma, T_res, F_res, M, N)
    return report_from_grid(grid, gamma.energy(), tol)


def check_local_orthogonality(
    g: SampledSignal,
    T_res: float,
    F_res: float,
    M: int,
    N: int,
    tol: float = SRN_TOL,
) -> OrthogonalityReport:
    return check_local_biorthogonality(g, g, T_res, F_res, M, N, tol)


def check_freq_orthogonality(
    g: SampledSignal, F_res: float, N: int, tol: float = EXACT_TOL
) -> OrthogonalityReport:
    """Doppler axis only (zero delay), ``|n| <= N-1``."""
    # T_res only matters for M > 1; any on-grid value will do
    return check_local_orthogonality(g, g.dt, F_res, 1, N, tol)


def check_srn(a: SampledSignal, T_res: float, M: int, tol: float = SRN_TOL) -> OrthogonalityReport:
    """Delay axis only (zero Doppler), ``|m| <= M-1``."""
    return check_local_orthogonality(a, T_res, 0.0, M, 1, tol)


def check_periodicity(
    s: SampledSignal,
    period: float,
    window_start: float,
    window_end: float,
    tol: float = EXACT_TOL,
) -> PeriodicityResult:
    """Largest ``|s(t) - s(t + k*period)|`` with both times in the closed window."""
    p = samples_in(period, s.dt, "period")
    i0 = samples_in(window_start - s.t0, s.dt, "window_start")
    i1 = samples_in(window_end - s.t0, s.dt, "window_end")
    if p < 1 or i1 < i0:
        raise ValueError("need a positive period and window_start <= window_end")
    x = s.value_at(np.arange(i0, i1 + 1))
    dev = 0.0
    for k in range(1, (i1 - i0) // p + 1):
        d = np.abs(x[k * p:] - x[:-k * p])
        dev = max(dev, float(d.max()))
    return PeriodicityResult(dev <= tol, dev)
