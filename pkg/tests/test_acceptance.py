"""Acceptance criteria, one test each, at the stated tolerances.

Each test records a PASS/FAIL line that is printed in the
"acceptance criteria" section of the pytest terminal summary.
"""

import itertools
import time
import warnings

import numpy as np

from ddop import (
    DdopParams,
    ExtensionWarning,
    SampledSignal,
    ambiguity_grid,
    check_freq_orthogonality,
    check_local_biorthogonality,
    check_periodicity,
    check_srn,
    cross_ambiguity,
    ddop_spectrum_closed_form,
    make_ddop,
    make_ddop_extended,
    make_periodic,
    make_rect,
    oddm_demodulate,
    oddm_modulate,
    periodicity_window,
    random_qpsk_frame,
    shifted_inner_product,
    transform,
)
from ddop.spectral import default_freqs, relative_l2

FIG7 = dict(M=32, N=8, Q=20, rho=0.1)


def _unit(s):
    return s.with_samples(s.samples / np.sqrt(s.energy()))


def _off_origin(p):
    G = ambiguity_grid(make_ddop_extended(p), make_ddop(p), p.delay_res, p.doppler_res, p.M, p.N)
    v = np.abs(G.values)
    peak = v[p.M - 1, p.N - 1]
    v[p.M - 1, p.N - 1] = 0.0
    return peak, float(v.max()), G.values.shape


def test_1_ambiguity_grid_reproduction(record_acceptance):
    t = time.perf_counter()
    p8 = DdopParams(**FIG7, O=8)
    assert p8.extension == 2
    peak, off8, shape = _off_origin(p8)
    _, off16, _ = _off_origin(DdopParams(**FIG7, O=16))
    dt = time.perf_counter() - t
    ok = shape == (63, 15) and abs(peak - 1) <= 1e-3 and off8 <= 1e-2 and off16 <= off8 and dt <= 60
    record_acceptance(
        "1 ambiguity grid (M=32,N=8,Q=20,rho=0.1,D=2)", ok,
        f"|peak-1|={abs(peak - 1):.2e} off-origin O=8 {off8:.3e}, O=16 {off16:.3e}, {dt:.1f}s",
    )
    assert ok


def test_2_frequency_orthogonality_of_periodic_pulses(record_acceptance):
    t = time.perf_counter()
    frame, n_samp = 1.0, 256
    dt = frame / n_samp
    worst_periodic = 0.0
    periodic_ok = True
    for N in (2, 4, 8):
        for seed in range(20):
            rng = np.random.default_rng(1000 * N + seed)
            m = n_samp // N
            seed_sig = SampledSignal(rng.standard_normal(m) + 1j * rng.standard_normal(m), dt)
            g = _unit(make_periodic(seed_sig, frame / N, frame))
            rep = check_freq_orthogonality(g, 1 / frame, N, 1e-10)
            periodic_ok &= rep.passed
            worst_periodic = max(worst_periodic, rep.max_leakage)
    violations = 0
    least_random = np.inf
    for seed in range(20):
        rng = np.random.default_rng(seed)
        g = _unit(SampledSignal(rng.standard_normal(n_samp) + 1j * rng.standard_normal(n_samp), dt))
        rep = check_freq_orthogonality(g, 1 / frame, 8, 1e-10)
        violations += not rep.passed
        least_random = min(least_random, rep.max_leakage)
    elapsed = time.perf_counter() - t
    ok = periodic_ok and violations == 20 and elapsed <= 10
    record_acceptance(
        "2 zero-delay Doppler orthogonality of periodic pulses", ok,
        f"periodic worst {worst_periodic:.1e}; random violations {violations}/20 "
        f"(smallest {least_random:.2e}); {elapsed:.2f}s",
    )
    assert ok


def test_3_inner_product_ambiguity_relation(record_acceptance):
    t = time.perf_counter()
    p = DdopParams(M=8, N=4, Q=4, rho=0.5, O=4)
    Tr, Fr = p.delay_res, p.doppler_res
    worst = 0.0
    for g, gamma in ((make_ddop(p), make_ddop(p)), (make_ddop_extended(p), make_ddop(p))):
        bound = np.sqrt(g.energy() * gamma.energy())
        for m, n, m2, n2 in itertools.product(range(p.M), range(p.N), range(p.M), range(p.N)):
            lhs = shifted_inner_product(g, gamma, m, n, m2, n2, Tr, Fr)
            mb, nb = m2 - m, n2 - n
            rhs = cross_ambiguity(g, gamma, mb * Tr, nb * Fr) * np.exp(2j * np.pi * n * mb * Fr * Tr)
            worst = max(worst, abs(lhs - rhs) / bound)
    elapsed = time.perf_counter() - t
    ok = worst <= 1e-10 and elapsed <= 30
    record_acceptance(
        "3 lattice inner product = ambiguity x phase (M=8,N=4)", ok,
        f"max error {worst:.1e} relative to sqrt(E_g E_gamma) over 2x1024 pairs, {elapsed:.2f}s",
    )
    assert ok


def test_4_extension_necessity(record_acceptance):
    p2 = DdopParams(**FIG7)
    p1 = DdopParams(**FIG7, D=1)
    window = periodicity_window(p2)
    r2 = check_periodicity(make_ddop_extended(p2), p2.T, *window)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ExtensionWarning)
        r1 = check_periodicity(make_ddop_extended(p1), p1.T, *window)
    ok = p2.extension == 2 and r2.passed and r2.max_deviation == 0.0 and not r1.passed
    record_acceptance(
        "4 cyclic extension depth (M=32,Q=20)", ok,
        f"auto D={p2.extension}; D=2 deviation {r2.max_deviation:.1e}; D=1 deviation {r1.max_deviation:.2e}",
    )
    assert ok


def test_5_modem_round_trip(record_acceptance):
    t = time.perf_counter()
    p = DdopParams(**FIG7, O=8)
    worst = 0.0
    for seed in range(10):
        F = random_qpsk_frame(p.M, p.N, seed)
        Y = oddm_demodulate(oddm_modulate(F, p), p)
        worst = max(worst, float(np.max(np.abs(Y.X - F.X))))
    elapsed = time.perf_counter() - t
    ok = worst <= 1e-2 and elapsed <= 60
    record_acceptance("5 ODDM round trip, 10 QPSK frames", ok, f"max symbol error {worst:.2e}, {elapsed:.2f}s")
    assert ok


def test_6_spectrum_closed_form(record_acceptance):
    p = DdopParams(**FIG7)
    f = default_freqs(p)
    u = make_ddop(p)
    numeric = transform(SampledSignal(u.samples, u.dt, 0.0), f).values  # DDOP starting at t = 0
    e128 = relative_l2(ddop_spectrum_closed_form(p, f, 128).values, numeric)
    e256 = relative_l2(ddop_spectrum_closed_form(p, f, 256).values, numeric)
    ok = e128 <= 0.05 and e256 < e128
    record_acceptance(
        "6 DDOP spectrum closed form vs transform, |f|<=2M/T", ok,
        f"relative L2 n_max=128 {e128:.4%}, n_max=256 {e256:.4%}",
    )
    assert ok


def test_7_delay_periodicity_beyond_range(record_acceptance):
    base = DdopParams(**FIG7)
    p = DdopParams(**FIG7, D=base.extension + 1)
    uc, u = make_ddop_extended(p), make_ddop(p)
    worst = 0.0
    for m in range(-3, 4):
        a = cross_ambiguity(uc, u, m * p.delay_res, 0.0)
        b = cross_ambiguity(uc, u, p.M * p.delay_res + m * p.delay_res, 0.0)
        worst = max(worst, abs(a - b))
    ok = worst <= 1e-3
    record_acceptance(
        "7 delay repetition with period T (D=3, |m|<=3)", ok,
        f"max |A(T+m T/M,0) - A(m T/M,0)| = {worst:.1e}",
    )
    assert ok


def test_8_rectangle_sanity(record_acceptance):
    frame = 1.0
    g = make_rect(frame, frame / 64)
    freq = check_freq_orthogonality(g, 1 / frame, 8, 1e-10)
    srn = check_srn(g, frame / 2, 2, 1e-3)
    ok = freq.passed and not srn.passed and abs(srn.max_leakage - 0.5) <= 1e-3
    record_acceptance(
        "8 rectangle: Doppler-orthogonal, not SRN at half shifts", ok,
        f"freq leakage {freq.max_leakage:.1e}; half-shift leakage {srn.max_leakage:.6f} (oracle 0.5)",
    )
    assert ok
