"""Deterministic delay-Doppler channels with integer taps."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .signals import SampledSignal, samples_in


@dataclass(frozen=True)
class Path:
    gain: complex
    delay_tap: int
    doppler_tap: int


@dataclass(frozen=True)
class DdChannel:
    """Sum of ``P`` paths ``h_p delta(tau - l_p/W0) delta(nu - k_p/T0)``.

    ``W0`` is the sampling rate (``M/T`` for ODDM) and ``T0`` the frame
    duration (``N T``).
    """

    paths: tuple[Path, ...] = field(default_factory=tuple)
    W0: float = 1.0
    T0: float = 1.0

    def __post_init__(self):
        paths = tuple(p if isinstance(p, Path) else Path(*p) for p in self.paths)
        for p in paths:
            if int(p.delay_tap) != p.delay_tap or p.delay_tap < 0:
                raise ValueError(f"delay taps must be non-negative integers, got {p.delay_tap!r}")
            if int(p.doppler_tap) != p.doppler_tap:
                raise ValueError(f"Doppler taps must be integers, got {p.doppler_tap!r}")
        if not (self.W0 > 0 and self.T0 > 0):
            raise ValueError("W0 and T0 must be positive")
        object.__setattr__(self, "paths", paths)

    @property
    def delays(self) -> np.ndarray:
        return np.array([p.delay_tap / self.W0 for p in self.paths])

    @property
    def dopplers(self) -> np.ndarray:
        return np.array([p.doppler_tap / self.T0 for p in self.paths])

    def to_dict(self) -> dict:
        return {
            "W0": self.W0,
            "T0": self.T0,
            "paths": [
                {"re": complex(p.gain).real, "im": complex(p.gain).imag,
                 "l": int(p.delay_tap), "k": int(p.doppler_tap)}
                for p in self.paths
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> DdChannel:
        paths = [Path(complex(q["re"], q["im"]), int(q["l"]), int(q["k"])) for q in d["paths"]]
        return cls(tuple(paths), float(d["W0"]), float(d["T0"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> DdChannel:
        return cls.from_dict(json.loads(text))


def _path_samples(x: SampledSignal, gain: complex, nu: float) -> np.ndarray:
    # Doppler phase referenced to the delayed waveform: exp(j 2 pi nu (t - tau))
    # evaluated at the un-delayed sample times, as in the ambiguity convention
    y = gain * x.samples
    if nu != 0:
        y = y * np.exp(2j * np.pi * nu * x.times())
    return y


def apply(ch: DdChannel, x: SampledSignal) -> SampledSignal:
    """Channel output on ``[x.t0, x.t_end + max delay)``."""
    taps = [samples_in(tau, x.dt, "path delay") for tau in ch.delays]
    extra = max(taps, default=0)
    out = np.zeros(len(x) + extra, dtype=np.complex128)
    for p, k, nu in zip(ch.paths, taps, ch.dopplers):
        out[k:k + len(x)] += _path_samples(x, p.gain, nu)
    return SampledSignal(out, x.dt, x.t0)


def random_channel(
    P: int,
    l_max: int,
    k_max: int,
    seed: int,
    W0: float = 1.0,
    T0: float = 1.0,
) -> DdChannel:
    """``P`` paths with uniform integer taps and unit total power, reproducible per seed."""
    if P < 1 or l_max < 0 or k_max < 0:
        raise ValueError("need P >= 1 and non-negative tap bounds")
    rng = np.random.default_rng(seed)
    l = rng.integers(0, l_max + 1, size=P)
    k = rng.integers(-k_max, k_max + 1, size=P)
    h = rng.standard_normal(P) + 1j * rng.standard_normal(P)
    h /= np.sqrt(np.sum(np.abs(h) ** 2))
    paths = tuple(Path(complex(hp), int(lp), int(kp)) for hp, lp, kp in zip(h, l, k))
    return DdChannel(paths, W0, T0)
