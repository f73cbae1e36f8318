"""Spectra of sampled pulses and the closed-form DDOP spectrum."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .pulses import DdopParams
from .signals import SampledSignal

_CHUNK = 512


@dataclass(frozen=True, eq=False)
class Spectrum:
    freqs: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.freqs, dtype=float).reshape(-1)
        v = np.asarray(self.values, dtype=np.complex128).reshape(-1)
        if f.shape != v.shape:
            raise ValueError("freqs and values must have the same length")
        if f.size > 1 and np.any(np.diff(f) <= 0):
            raise ValueError("freqs must be strictly increasing")
        if not (np.all(np.isfinite(f)) and np.all(np.isfinite(v))):
            raise ValueError("spectrum must be finite")
        object.__setattr__(self, "freqs", f)
        object.__setattr__(self, "values", v)

    def energy(self) -> float:
        """``sum |values|^2 * df`` for a uniform frequency grid."""
        return float(np.sum(np.abs(self.values) ** 2) * _step(self.freqs))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["f", "re", "im", "abs"])
        for f, v in zip(self.freqs, self.values + 0.0):
            w.writerow([f"{f:.17g}", f"{v.real:.17g}", f"{v.imag:.17g}", f"{abs(v):.17g}"])
        return buf.getvalue()


def _step(freqs: np.ndarray) -> float:
    if freqs.size < 2:
        return 1.0
    return float((freqs[-1] - freqs[0]) / (freqs.size - 1))


def default_freqs(p: DdopParams) -> np.ndarray:
    """``|f| <= 2M/T`` in steps of ``1/(4 N T)``."""
    half = 8 * p.M * p.N  # (2M/T) / (1/(4NT))
    return np.arange(-half, half + 1) / (4 * p.N * p.T)


def transform(s: SampledSignal, freqs) -> Spectrum:
    """``S(f) = sum_k s(t_k) exp(-j 2 pi f t_k) dt`` at the requested frequencies."""
    f = np.asarray(freqs, dtype=float).reshape(-1)
    t = s.times()
    out = np.empty(f.size, dtype=np.complex128)
    for lo in range(0, f.size, _CHUNK):
        fc = f[lo:lo + _CHUNK]
        out[lo:lo + _CHUNK] = np.exp(-2j * np.pi * np.outer(fc, t)) @ s.samples
    return Spectrum(f, out * s.dt)


def rrc_spectrum(T_sym: float, rho: float, energy: float, freqs) -> Spectrum:
    """Frequency response of the untruncated root-raised-cosine pulse.

    Real and non-negative (the pulse is centred at t = 0), with
    ``integral |A(f)|^2 df = energy``.
    """
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho!r}")
    f = np.abs(np.asarray(freqs, dtype=float))
    f1 = (1 - rho) / (2 * T_sym)
    f2 = (1 + rho) / (2 * T_sym)
    rc = np.zeros_like(f)
    rc[f <= f1] = T_sym
    band = (f > f1) & (f <= f2)
    if rho > 0:
        rc[band] = T_sym / 2 * (1 + np.cos(np.pi * T_sym / rho * (f[band] - f1)))
    return Spectrum(np.asarray(freqs, dtype=float), np.sqrt(rc * energy))


def ddop_spectrum_closed_form(p: DdopParams, freqs, n_max: int | None = None) -> Spectrum:
    """Series form of the DDOP spectrum for ``u`` supported on ``[0, T_u)``.

    ``U(f) = N exp(-j 2 pi f T~) A(f) sum_{|n| <= n_max} exp(j pi n (N-1)) sinc(f N T - n N)``
    with ``T~ = (T_a + (N-1) T)/2`` and ``A`` the sub-pulse spectrum at energy ``1/N``.
    The sum is the impulse-train comb seen through an ``N T`` window.
    """
    if n_max is None:
        n_max = 4 * p.M
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    f = np.asarray(freqs, dtype=float)
    A = rrc_spectrum(p.delay_res, p.rho, 1.0 / p.N, f).values
    n = np.arange(-n_max, n_max + 1)
    signs = np.where((n * (p.N - 1)) % 2 == 0, 1.0, -1.0)  # exp(j pi n (N-1)) is real
    comb = np.empty(f.size)
    for lo in range(0, f.size, _CHUNK):
        fc = f[lo:lo + _CHUNK]
        comb[lo:lo + _CHUNK] = np.sinc(np.subtract.outer(fc * p.N * p.T, n * p.N)) @ signs
    centre = (p.T_a + (p.N - 1) * p.T) / 2
    return Spectrum(f, p.N * np.exp(-2j * np.pi * f * centre) * A * comb)


def relative_l2(a: np.ndarray, b: np.ndarray) -> float:
    """``||a - b|| / ||b||``."""
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


def essential_bandwidth(sp: Spectrum, fraction: float) -> float:
    """Width ``B`` of the smallest band ``[-B/2, B/2]`` holding ``fraction`` of the energy."""
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must lie in (0, 1], got {fraction!r}")
    f = sp.freqs
    e = np.abs(sp.values) ** 2
    total = e.sum()
    if total == 0:
        return 0.0
    edges = np.unique(np.abs(f))
    # energy inside |f| <= edge, for every candidate edge
    order = np.argsort(np.abs(f), kind="stable")
    cum = np.cumsum(e[order])
    last = np.searchsorted(np.abs(f)[order], edges, side="right") - 1
    inside = cum[last]
    k = int(np.searchsorted(inside, fraction * total * (1 - 1e-12), side="left"))
    return 2.0 * float(edges[min(k, edges.size - 1)])
