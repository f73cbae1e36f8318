"""Prototype pulses: rectangle, root-raised-cosine, DDOP and its cyclic extension."""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .signals import SampledSignal, samples_in


class ExtensionWarning(UserWarning):
    """Cyclic extension is too short for the periodicity window."""


@dataclass(frozen=True)
class DdopParams:
    """Parameter set of a delay-Doppler orthogonal pulse.

    ``M`` symbols of spacing ``T/M`` and ``N`` subcarriers of spacing
    ``1/(N T)``. Each root-raised-cosine sub-pulse spans ``2Q`` symbol
    intervals. ``O`` is the number of samples per symbol interval. ``D`` is
    the number of cyclic sub-pulses added on each side; ``None`` picks the
    smallest value that works.
    """

    M: int
    N: int
    Q: int
    rho: float = 0.1
    T: float = 1.0
    O: int = 8
    D: Optional[int] = None

    def __post_init__(self):
        for name in ("M", "N", "Q", "O"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must lie in [0, 1], got {self.rho!r}")
        if not self.T > 0:
            raise ValueError(f"T must be positive, got {self.T!r}")
        if self.D is not None:
            if int(self.D) != self.D or self.D < 0:
                raise ValueError(f"D must be a non-negative integer, got {self.D!r}")
            object.__setattr__(self, "D", int(self.D))

    @property
    def delay_res(self) -> float:
        """Symbol interval ``T/M``."""
        return self.T / self.M

    @property
    def doppler_res(self) -> float:
        """Subcarrier spacing ``1/(N T)``."""
        return 1.0 / (self.N * self.T)

    @property
    def frame_period(self) -> float:
        return self.N * self.T

    @property
    def dt(self) -> float:
        return self.T / (self.M * self.O)

    @property
    def T_a(self) -> float:
        return 2 * self.Q * self.T / self.M

    @property
    def T_u(self) -> float:
        return (self.N - 1) * self.T + self.T_a

    @property
    def D_required(self) -> int:
        return -(-2 * self.Q // self.M)  # ceil(2Q/M) in integers

    @property
    def extension(self) -> int:
        return self.D_required if self.D is None else self.D

    @property
    def jtfr(self) -> float:
        return self.delay_res * self.doppler_res

    def resolved(self) -> dict:
        d = asdict(self)
        d["D"] = self.extension
        d.update(
            D_required=self.D_required,
            T_a=self.T_a,
            T_u=self.T_u,
            delay_res=self.delay_res,
            doppler_res=self.doppler_res,
            dt=self.dt,
            jtfr=self.jtfr,
        )
        return d


def rrc_value(x: np.ndarray, rho: float) -> np.ndarray:
    """Root-raised-cosine impulse response at ``x = t / T_sym`` (peak-normalized form).

    The removable singularities at ``x = 0`` and ``|x| = 1/(4 rho)`` are
    replaced by their limits.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    at0 = np.isclose(x, 0.0, atol=1e-12)
    if rho > 0:
        edge = np.isclose(np.abs(x), 1.0 / (4.0 * rho), rtol=1e-10, atol=1e-12)
    else:
        edge = np.zeros_like(at0)
    rest = ~(at0 | edge)
    xr = x[rest]
    num = np.sin(np.pi * xr * (1 - rho)) + 4 * rho * xr * np.cos(np.pi * xr * (1 + rho))
    den = np.pi * xr * (1 - (4 * rho * xr) ** 2)
    out[rest] = num / den
    out[at0] = 1 - rho + 4 * rho / np.pi
    if rho > 0:
        q = np.pi / (4 * rho)
        out[edge] = rho / np.sqrt(2) * (
            (1 + 2 / np.pi) * np.sin(q) + (1 - 2 / np.pi) * np.cos(q)
        )
    return out


def make_rrc(T_sym: float, Q: int, rho: float, dt: float, energy: float = 1.0) -> SampledSignal:
    """Root-raised-cosine pulse hard-truncated to ``[-Q T_sym, Q T_sym)``.

    The truncated pulse is rescaled so that its sampled energy equals
    ``energy`` exactly.
    """
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho!r}")
    if int(Q) != Q or Q < 1:
        raise ValueError(f"Q must be a positive integer, got {Q!r}")
    if not energy > 0:
        raise ValueError(f"energy must be positive, got {energy!r}")
    O = samples_in(T_sym, dt, "T_sym")
    k = np.arange(-Q * O, Q * O)
    a = rrc_value(k / O, rho)
    a *= math.sqrt(energy / (np.sum(a * a) * dt))
    return SampledSignal(a, dt, -Q * O * dt)


def make_rect(duration: float, dt: float) -> SampledSignal:
    """Unit-energy rectangle on ``[0, duration)``."""
    n = samples_in(duration, dt, "duration")
    if n < 1:
        raise ValueError("duration must cover at least one sample")
    return SampledSignal(np.full(n, 1.0 / math.sqrt(duration)), dt, 0.0)


def sub_pulse(p: DdopParams) -> SampledSignal:
    """The square-root-Nyquist sub-pulse a(t) with energy 1/N."""
    return make_rrc(p.delay_res, p.Q, p.rho, p.dt, 1.0 / p.N)


def _pulse_train(a: SampledSignal, first: int, last: int, spacing: int) -> SampledSignal:
    # copies of a at n*spacing samples for n = first..last; overlaps add in order of n
    count = last - first + 1
    out = np.zeros((count - 1) * spacing + len(a), dtype=np.complex128)
    for i in range(count):
        out[i * spacing:i * spacing + len(a)] += a.samples
    return SampledSignal(out, a.dt, a.t0 + first * spacing * a.dt)


def make_ddop(p: DdopParams) -> SampledSignal:
    """DDOP ``u(t) = sum_{n=0}^{N-1} a(t - n T)`` starting at ``-T_a/2``."""
    return _pulse_train(sub_pulse(p), 0, p.N - 1, p.M * p.O)


def make_ddop_extended(p: DdopParams) -> SampledSignal:
    """Cyclically extended DDOP with ``D`` extra sub-pulses on each side."""
    D = p.extension
    if D < 1:
        raise ValueError("extension depth D must be >= 1; use make_ddop for D = 0")
    if D < p.D_required:
        warnings.warn(
            f"D={D} is below ceil(2Q/M)={p.D_required}; the pulse will not be "
            "periodic over the full lattice window",
            ExtensionWarning,
            stacklevel=2,
        )
    return _pulse_train(sub_pulse(p), -D, p.N - 1 + D, p.M * p.O)


def periodicity_window(p: DdopParams) -> tuple[float, float]:
    """Window over which the extended pulse must repeat with period ``T``.

    It runs from the start of ``u(t + (M-1) T/M)`` to the end of
    ``u(t - (M-1) T/M)``, for the centred sub-pulse convention used here.
    """
    half = p.T_a / 2
    return -(p.M - 1) * p.delay_res - half, (p.M * p.N - 1) * p.delay_res + half


def make_periodic(seed: SampledSignal, period: float, total: float) -> SampledSignal:
    """Tile one period of ``seed`` end to end over ``[0, total)``."""
    n_period = samples_in(period, seed.dt, "period")
    if n_period != len(seed):
        raise ValueError(
            f"seed covers {len(seed)} samples but the period is {n_period} samples"
        )
    ratio = total / period
    reps = int(round(ratio))
    if reps < 1 or abs(ratio - reps) > 1e-9 * max(1.0, ratio):
        raise ValueError(f"total={total!r} is not a whole number of periods {period!r}")
    return SampledSignal(np.tile(seed.samples, reps), seed.dt, 0.0)
