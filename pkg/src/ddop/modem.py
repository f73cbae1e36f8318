"""Multicarrier synthesis and matched-filter demodulation of ODDM frames."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .pulses import DdopParams, make_ddop, make_ddop_extended
from .signals import SampledSignal, samples_in


@dataclass(frozen=True, eq=False)
class Frame:
    """``M x N`` grid of information symbols, ``X[m, n]``."""

    X: np.ndarray

    def __post_init__(self):
        X = np.array(self.X, dtype=np.complex128)
        if X.ndim != 2:
            raise ValueError(f"frame must be 2-D, got shape {X.shape}")
        if not np.all(np.isfinite(X)):
            raise ValueError("frame entries must be finite")
        object.__setattr__(self, "X", X)

    @property
    def shape(self) -> tuple[int, int]:
        return self.X.shape

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "n", "re", "im"])
        X = self.X + 0.0
        for (m, n), v in np.ndenumerate(X):
            w.writerow([m, n, f"{v.real:.17g}", f"{v.imag:.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> Frame:
        rows = list(csv.DictReader(io.StringIO(text)))
        M = 1 + max(int(r["m"]) for r in rows)
        N = 1 + max(int(r["n"]) for r in rows)
        X = np.zeros((M, N), dtype=np.complex128)
        for r in rows:
            X[int(r["m"]), int(r["n"])] = float(r["re"]) + 1j * float(r["im"])
        return cls(X)

    def to_json(self) -> str:
        X = self.X + 0.0
        return json.dumps(
            {
                "M": X.shape[0],
                "N": X.shape[1],
                "X": [[[float(v.real), float(v.imag)] for v in row] for row in X],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> Frame:
        d = json.loads(text)
        arr = np.asarray(d["X"], dtype=float).reshape(d["M"], d["N"], 2)
        return cls(arr[..., 0] + 1j * arr[..., 1])


def _as_matrix(frame) -> np.ndarray:
    return frame.X if isinstance(frame, Frame) else Frame(frame).X


def mc_synthesize(frame, g: SampledSignal, T_res: float, F_res: float) -> SampledSignal:
    """``x(t) = sum_{m,n} X[m,n] g(t - m T_res) exp(j 2 pi n F_res (t - m T_res))``."""
    X = _as_matrix(frame)
    M, N = X.shape
    step = samples_in(T_res, g.dt, "T_res")
    # the subcarrier phase only depends on the pulse's own sample time
    carriers = np.exp(2j * np.pi * np.outer(np.arange(N) * F_res, g.times()))
    rows = (X @ carriers) * g.samples
    out = np.zeros((M - 1) * step + len(g), dtype=np.complex128)
    for m in range(M):
        out[m * step:m * step + len(g)] += rows[m]
    return SampledSignal(out, g.dt, g.t0)


def oddm_modulate(frame, p: DdopParams, extended: bool = True) -> SampledSignal:
    """ODDM waveform using ``u_c`` (``extended``) or ``u`` as transmit pulse.

    Falls back to ``u`` when the resolved extension depth is zero.
    """
    X = _as_matrix(frame)
    if X.shape != (p.M, p.N):
        raise ValueError(f"frame shape {X.shape} does not match (M, N) = {(p.M, p.N)}")
    g = make_ddop_extended(p) if extended and p.extension > 0 else make_ddop(p)
    return mc_synthesize(X, g, p.delay_res, p.doppler_res)


def mc_demodulate(
    y: SampledSignal, gamma: SampledSignal, T_res: float, F_res: float, M: int, N: int
) -> Frame:
    """Matched-filter bank ``Y[m,n] = <y, gamma_{m,n}> / energy(gamma)``."""
    shift = y.offset_of(gamma)
    step = samples_in(T_res, y.dt, "T_res")
    L = len(gamma)
    idx = shift + np.arange(M)[:, None] * step + np.arange(L)[None, :]
    seg = y.value_at(idx) * np.conj(gamma.samples)
    carriers = np.exp(-2j * np.pi * np.outer(gamma.times(), np.arange(N) * F_res))
    Y = (seg @ carriers) * y.dt / gamma.energy()
    return Frame(Y)


def oddm_demodulate(y: SampledSignal, p: DdopParams) -> Frame:
    """Project onto the unextended DDOP bank (receive pulse ``u``)."""
    return mc_demodulate(y, make_ddop(p), p.delay_res, p.doppler_res, p.M, p.N)


def _gray(n: np.ndarray) -> np.ndarray:
    return n ^ (n >> 1)


def _pam_levels(L: int) -> tuple[np.ndarray, np.ndarray]:
    # level value for each Gray-coded bit label
    idx = np.arange(L)
    levels = 2 * idx - (L - 1)
    label_to_level = np.empty(L, dtype=float)
    label_to_level[_gray(idx)] = levels
    return label_to_level, levels


def _check_order(order: int) -> tuple[int, int]:
    if order not in (4, 16, 64):
        raise ValueError(f"order must be 4, 16 or 64, got {order!r}")
    k = int(math.log2(order))
    return k, int(math.isqrt(order))


def qam_map(bits, order: int = 4) -> np.ndarray:
    """Gray-mapped square QAM with unit average energy.

    The first half of each ``log2(order)`` bit group picks the in-phase
    level, the second half the quadrature level.
    """
    k, L = _check_order(order)
    b = np.asarray(bits, dtype=np.int64).reshape(-1)
    if b.size % k:
        raise ValueError(f"bit count {b.size} is not a multiple of {k}")
    if np.any((b != 0) & (b != 1)):
        raise ValueError("bits must be 0 or 1")
    groups = b.reshape(-1, k)
    weights = 1 << np.arange(k // 2 - 1, -1, -1)
    i_lab = groups[:, : k // 2] @ weights
    q_lab = groups[:, k // 2:] @ weights
    table, _ = _pam_levels(L)
    scale = math.sqrt(2 * (L * L - 1) / 3)
    return (table[i_lab] + 1j * table[q_lab]) / scale


def qam_demap(symbols, order: int = 4) -> np.ndarray:
    """Nearest-neighbour hard decision, inverse of :func:`qam_map`."""
    k, L = _check_order(order)
    s = np.asarray(symbols, dtype=np.complex128).reshape(-1)
    scale = math.sqrt(2 * (L * L - 1) / 3)

    def axis(v):
        idx = np.clip(np.round((v * scale + (L - 1)) / 2), 0, L - 1).astype(np.int64)
        lab = _gray(idx)
        shifts = np.arange(k // 2 - 1, -1, -1)
        return (lab[:, None] >> shifts) & 1

    return np.hstack([axis(s.real), axis(s.imag)]).reshape(-1)


def random_qpsk_frame(M: int, N: int, seed: int) -> Frame:
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=2 * M * N)
    return Frame(qam_map(bits, 4).reshape(M, N))
