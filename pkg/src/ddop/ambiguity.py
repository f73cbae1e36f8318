"""Cross-ambiguity functions on the delay-Doppler lattice.

Convention::

    A_{g,gamma}(tau, nu) = integral g(t) conj(gamma(t - tau)) exp(-j 2 pi nu (t - tau)) dt

so the Doppler phase is referenced to the delayed pulse. Integrals are
plain Riemann sums with step ``dt``; delays must be whole samples.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .signals import SampledSignal, samples_in, tf_shift


@dataclass(frozen=True, eq=False)
class AmbiguityGrid:
    """Ambiguity values on the lattice ``(m * delay_step, n * doppler_step)``.

    ``values[i, j]`` holds lag ``m = i - (M - 1)`` and ``n = j - (N - 1)``.
    """

    values: np.ndarray
    delay_step: float
    doppler_step: float

    @property
    def M(self) -> int:
        return (self.values.shape[0] + 1) // 2

    @property
    def N(self) -> int:
        return (self.values.shape[1] + 1) // 2

    def at(self, m: int, n: int) -> complex:
        return complex(self.values[m + self.M - 1, n + self.N - 1])

    def lags(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.arange(-(self.M - 1), self.M), np.arange(-(self.N - 1), self.N))

    def to_csv(self, m_only: int | None = None, n_only: int | None = None) -> str:
        """Rows ``m, n, re, im, abs``; optionally restricted to one lag slice."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "n", "re", "im", "abs"])
        ms, ns = self.lags()
        for m in ms:
            if m_only is not None and m != m_only:
                continue
            for n in ns:
                if n_only is not None and n != n_only:
                    continue
                v = self.at(int(m), int(n)) + 0.0
                w.writerow([int(m), int(n), f"{v.real:.17g}", f"{v.imag:.17g}", f"{abs(v):.17g}"])
        return buf.getvalue()


def _overlap(g: SampledSignal, gamma: SampledSignal, tau: float):
    # indices into g and gamma where g(t) and gamma(t - tau) are both supported
    shift = g.offset_of(gamma) + samples_in(tau, g.dt, "tau")
    lo = max(0, shift)
    hi = min(len(g), shift + len(gamma))
    if hi <= lo:
        return None
    return slice(lo, hi), slice(lo - shift, hi - shift)


def _doppler_sum(prod: np.ndarray, t_rel: np.ndarray, nus: np.ndarray, dt: float) -> np.ndarray:
    phase = np.exp(-2j * np.pi * np.outer(nus, t_rel))
    return (phase @ prod) * dt


def cross_ambiguity(g: SampledSignal, gamma: SampledSignal, tau: float, nu: float) -> complex:
    """Single ambiguity value ``A_{g,gamma}(tau, nu)``; exactly 0 for disjoint supports."""
    ov = _overlap(g, gamma, tau)
    if ov is None:
        return 0j
    sg, sh = ov
    prod = g.samples[sg] * np.conj(gamma.samples[sh])
    t_rel = gamma.times()[sh]  # t - tau, at gamma's own sample times
    return complex(_doppler_sum(prod, t_rel, np.array([nu]), g.dt)[0])


def ambiguity_grid(
    g: SampledSignal,
    gamma: SampledSignal,
    T_res: float,
    F_res: float,
    M: int,
    N: int,
) -> AmbiguityGrid:
    """Ambiguity over ``|m| <= M-1, |n| <= N-1`` at steps ``T_res`` and ``F_res``."""
    step = samples_in(T_res, g.dt, "T_res")
    nus = np.arange(-(N - 1), N) * F_res
    out = np.zeros((2 * M - 1, 2 * N - 1), dtype=np.complex128)
    # t - tau always lands on gamma's own sample times, so one phase table serves every delay
    phase = np.exp(-2j * np.pi * np.outer(nus, gamma.times()))
    for i, m in enumerate(range(-(M - 1), M)):
        ov = _overlap(g, gamma, m * step * g.dt)
        if ov is None:
            continue
        sg, sh = ov
        prod = g.samples[sg] * np.conj(gamma.samples[sh])
        out[i] = (phase[:, sh] @ prod) * g.dt
    return AmbiguityGrid(out, T_res, F_res)


def shifted_inner_product(
    g: SampledSignal,
    gamma: SampledSignal,
    m: int,
    n: int,
    m2: int,
    n2: int,
    T_res: float,
    F_res: float,
) -> complex:
    """``<g_{m,n}, gamma_{m2,n2}>`` evaluated directly from the shifted pulses.

    Equals ``A_{g,gamma}((m2-m) T_res, (n2-n) F_res) * exp(j 2 pi n (m2-m) F_res T_res)``.
    """
    x = tf_shift(g, m * T_res, n * F_res)
    y = tf_shift(gamma, m2 * T_res, n2 * F_res)
    return inner_product(x, y)


def inner_product(x: SampledSignal, y: SampledSignal) -> complex:
    """``integral x(t) conj(y(t)) dt`` over the common support."""
    ov = _overlap(x, y, 0.0)
    if ov is None:
        return 0j
    sx, sy = ov
    return complex(np.sum(x.samples[sx] * np.conj(y.samples[sy])) * x.dt)
