"""Uniformly sampled complex baseband signals.

A :class:`SampledSignal` is a finite block of samples taken every ``dt``
seconds starting at ``t0``; it is zero everywhere else. All pulses and
waveforms in the package are carried by this type, and all shifts are
integer sample shifts so that lattice computations stay exact.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

# relative slack when deciding that a time offset is an integer number of samples
GRID_RTOL = 1e-6


class GridError(ValueError):
    """Raised when a time quantity does not land on the sample grid."""


def samples_in(duration: float, dt: float, what: str = "duration") -> int:
    """Return ``duration / dt`` as an int, or raise if it is not integral."""
    ratio = duration / dt
    k = int(round(ratio))
    if abs(ratio - k) > GRID_RTOL * max(1.0, abs(ratio)):
        raise GridError(f"{what}={duration!r} is not an integer multiple of dt={dt!r}")
    return k


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Complex signal sampled on ``t0 + k*dt``, ``k = 0..len-1``.

    Attributes:
        samples: complex128 sample values.
        dt: sample step in seconds.
        t0: time of the first sample in seconds.
    """

    samples: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self):
        x = np.array(self.samples, dtype=np.complex128).reshape(-1)
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt!r}")
        if not np.all(np.isfinite(x)):
            raise ValueError("samples must be finite")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "t0", float(self.t0))

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        return len(self) * self.dt

    @property
    def t_end(self) -> float:
        """End of the half-open support ``[t0, t_end)``."""
        return self.t0 + self.duration

    def times(self) -> np.ndarray:
        return self.t0 + np.arange(len(self)) * self.dt

    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2) * self.dt)

    def with_samples(self, samples) -> SampledSignal:
        return SampledSignal(samples, self.dt, self.t0)

    def offset_of(self, other: SampledSignal) -> int:
        """Integer sample offset of ``other.t0`` relative to ``self.t0``.

        Raises GridError when the two signals are not grid-compatible.
        """
        if not np.isclose(self.dt, other.dt, rtol=1e-12, atol=0.0):
            raise GridError(f"sample steps differ: {self.dt!r} vs {other.dt!r}")
        return samples_in(other.t0 - self.t0, self.dt, "t0 offset")

    def is_compatible(self, other: SampledSignal) -> bool:
        try:
            self.offset_of(other)
        except GridError:
            return False
        return True

    def value_at(self, index: np.ndarray) -> np.ndarray:
        """Samples at integer indices relative to ``t0``; zero off-support."""
        index = np.asarray(index)
        out = np.zeros(index.shape, dtype=np.complex128)
        inside = (index >= 0) & (index < len(self))
        out[inside] = self.samples[index[inside]]
        return out

    # -- serialization --------------------------------------------------

    def to_dict(self) -> dict:
        s = self.samples + 0.0  # fold -0.0 into 0.0 so fixtures are stable
        return {
            "t0": self.t0,
            "dt": self.dt,
            "samples": [[float(v.real), float(v.imag)] for v in s],
        }

    @classmethod
    def from_dict(cls, d: dict) -> SampledSignal:
        pairs = np.asarray(d["samples"], dtype=float).reshape(-1, 2)
        return cls(pairs[:, 0] + 1j * pairs[:, 1], d["dt"], d["t0"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> SampledSignal:
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        """CSV with columns ``t, re, im`` and 17 significant digits."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "re", "im"])
        s = self.samples + 0.0
        for t, v in zip(self.times(), s):
            w.writerow([f"{t:.17g}", f"{v.real:.17g}", f"{v.imag:.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> SampledSignal:
        rows = list(csv.DictReader(io.StringIO(text)))
        if len(rows) < 2:
            raise ValueError("CSV signal needs at least two rows to recover dt")
        t = np.array([float(r["t"]) for r in rows])
        x = np.array([float(r["re"]) + 1j * float(r["im"]) for r in rows])
        dt = (t[-1] - t[0]) / (len(t) - 1)
        return cls(x, dt, t[0])


def tf_shift(s: SampledSignal, tau: float, nu: float) -> SampledSignal:
    """Return ``s(t - tau) * exp(j 2 pi nu (t - tau))``.

    ``tau`` must be a whole number of samples. The modulation phase is taken
    at the un-delayed sample times, i.e. referenced to the shifted origin.
    """
    k = samples_in(tau, s.dt, "tau")
    out = s.samples
    if nu != 0:
        out = out * np.exp(2j * np.pi * nu * s.times())
    return SampledSignal(out, s.dt, s.t0 + k * s.dt)


def embed(signals: list[SampledSignal]) -> tuple[np.ndarray, float, float]:
    """Place grid-compatible signals on a common zero-padded support.

    Returns a ``(len(signals), n)`` array together with the shared ``dt`` and
    ``t0``.
    """
    ref = signals[0]
    offs = [ref.offset_of(s) for s in signals]
    lo = min(offs)
    hi = max(o + len(s) for o, s in zip(offs, signals))
    out = np.zeros((len(signals), hi - lo), dtype=np.complex128)
    for row, (o, s) in enumerate(zip(offs, signals)):
        out[row, o - lo:o - lo + len(s)] = s.samples
    return out, ref.dt, ref.t0 + lo * ref.dt
