"""Brute-force reference computations, deliberately independent of the package code paths."""

import cmath
import math

import numpy as np


def sample_map(s):
    """Dict from rounded sample index (time/dt) to value."""
    base = round(s.t0 / s.dt)
    return {base + k: complex(v) for k, v in enumerate(s.samples)}


def ambiguity_bruteforce(g, gamma, tau, nu):
    """Sum over g's samples of g(t) conj(gamma(t - tau)) exp(-j2 pi nu (t - tau)) dt, one at a time."""
    dt = g.dt
    gm = sample_map(gamma)
    lag = round(tau / dt)
    total = 0j
    for k, v in sample_map(g).items():
        w = gm.get(k - lag)
        if w is None:
            continue
        t_rel = (k - lag) * dt
        total += v * w.conjugate() * cmath.exp(-2j * math.pi * nu * t_rel)
    return total * dt


def riemann_autocorr(x, lag_samples, dt):
    x = np.asarray(x)
    if lag_samples == 0:
        return float(np.sum(np.abs(x) ** 2) * dt)
    return complex(np.sum(x[lag_samples:] * np.conj(x[:-lag_samples])) * dt)


def dirichlet_comb(f, N, T):
    """sum_{k=0}^{N-1} exp(-j2 pi f k T), computed as a plain loop."""
    return sum(np.exp(-2j * np.pi * f * k * T) for k in range(N))
