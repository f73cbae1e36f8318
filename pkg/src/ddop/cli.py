"""Command-line front end: ``ddop {pulse,ambiguity,validate,frame,channel,spectrum}``.

Every run writes its outputs plus a ``run.json`` sidecar with the fully
resolved parameters into ``--out``. Exit status is 0 on success or a passed
check, 1 on a failed check and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import warnings
from pathlib import Path

import numpy as np

from . import channel as chan
from .ambiguity import ambiguity_grid
from .modem import Frame, oddm_demodulate, oddm_modulate, random_qpsk_frame
from .pulses import (
    DdopParams,
    make_ddop,
    make_ddop_extended,
    make_periodic,
    make_rect,
    periodicity_window,
    sub_pulse,
)
from .signals import SampledSignal
from .spectral import ddop_spectrum_closed_form, default_freqs, relative_l2, transform
from .validators import (
    EXACT_TOL,
    SRN_TOL,
    check_freq_orthogonality,
    check_local_biorthogonality,
    check_local_orthogonality,
    check_periodicity,
    check_srn,
)

BASE = dict(M=32, N=8, Q=20, rho=0.1, T=1.0, O=8, D=None)
PRESETS = {
    "fig7": dict(BASE),
    "fig8": dict(BASE, slice="n=0"),
    "fig5": dict(BASE),
}


class UsageError(Exception):
    pass


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def read_signal(path: Path) -> SampledSignal:
    text = path.read_text()
    if path.suffix == ".json":
        return SampledSignal.from_json(text)
    return SampledSignal.from_csv(text)


def read_frame(path: Path) -> Frame:
    text = path.read_text()
    return Frame.from_json(text) if path.suffix == ".json" else Frame.from_csv(text)


def write_signal(out: Path, stem: str, s: SampledSignal, fmt: str) -> Path:
    path = out / f"{stem}.{fmt}"
    write_atomic(path, s.to_json() if fmt == "json" else s.to_csv())
    return path


def write_frame(out: Path, stem: str, f: Frame, fmt: str) -> Path:
    path = out / f"{stem}.{fmt}"
    write_atomic(path, f.to_json() if fmt == "json" else f.to_csv())
    return path


def resolve_params(args) -> DdopParams:
    base = PRESETS.get(args.preset, BASE)
    vals = {k: getattr(args, k) if getattr(args, k) is not None else base[k] for k in BASE}
    try:
        return DdopParams(**vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def sidecar(args, p: DdopParams | None, **extra) -> None:
    record = {"command": args.command, "preset": args.preset, "seed": args.seed, "tol": args.tol}
    if p is not None:
        record["params"] = p.resolved()
    record.update(extra)
    write_atomic(Path(args.out) / "run.json", json.dumps(record, indent=2, sort_keys=True) + "\n")


def _fmt(args, default: str = "csv") -> str:
    return args.format or default


# -- subcommands ----------------------------------------------------------

def cmd_pulse(args) -> int:
    p = resolve_params(args)
    out = Path(args.out)
    if args.rect:
        duration = args.duration if args.duration is not None else p.frame_period
        s = make_rect(duration, p.dt)
        kind = "rect"
    elif args.rrc:
        s, kind = sub_pulse(p), "rrc"
    elif args.ddop_ext:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            s = make_ddop_extended(p)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        kind = "ddop-ext"
    else:
        s, kind = make_ddop(p), "ddop"
    write_signal(out, "pulse", s, _fmt(args))
    info = dict(kind=kind, support=[s.t0, s.t_end], energy=s.energy())
    print(f"kind={kind}")
    print(f"support=[{s.t0:.6g}, {s.t_end:.6g}) length={s.duration:.6g}")
    print(f"energy={s.energy():.12g}")
    print(f"T_a={p.T_a:.6g} T_u={p.T_u:.6g} D={p.extension}")
    sidecar(args, p, pulse=info)
    return 0


def _ambiguity_pair(args, p: DdopParams):
    pair = args.pair or ("uc-u" if p.extension > 0 else "u-u")
    u = make_ddop(p)
    if pair == "uc-u":
        if p.extension < 1:
            raise UsageError("pair uc-u needs D >= 1")
        return pair, make_ddop_extended(p), u
    return pair, u, u


def _parse_slice(text: str | None):
    if not text:
        return None, None
    key, _, val = text.partition("=")
    if key not in ("m", "n") or not val.lstrip("-").isdigit():
        raise UsageError(f"--slice expects m=<int> or n=<int>, got {text!r}")
    return (int(val), None) if key == "m" else (None, int(val))


def cmd_ambiguity(args) -> int:
    p = resolve_params(args)
    slice_text = args.slice or PRESETS.get(args.preset, {}).get("slice")
    m_only, n_only = _parse_slice(slice_text)
    pair, g, gamma = _ambiguity_pair(args, p)
    grid = ambiguity_grid(g, gamma, p.delay_res, p.doppler_res, p.M, p.N)
    out = Path(args.out)
    if _fmt(args) == "json":
        ms, ns = grid.lags()
        rows = [
            [int(m), int(n), grid.at(m, n).real, grid.at(m, n).imag]
            for m in ms for n in ns
            if (m_only is None or m == m_only) and (n_only is None or n == n_only)
        ]
        text = json.dumps({"delay_step": grid.delay_step, "doppler_step": grid.doppler_step,
                           "columns": ["m", "n", "re", "im"], "rows": rows})
        write_atomic(out / "ambiguity.json", text)
    else:
        write_atomic(out / "ambiguity.csv", grid.to_csv(m_only, n_only))
    mag = np.abs(grid.values)
    peak = grid.at(0, 0)
    mag[p.M - 1, p.N - 1] = 0.0
    print(f"pair={pair} grid={2 * p.M - 1}x{2 * p.N - 1}")
    print(f"peak={abs(peak):.12g} max_off_origin={mag.max():.6g}")
    sidecar(args, p, pair=pair, slice=slice_text, peak=abs(peak), max_off_origin=float(mag.max()))
    return 0


def _test_pulse(kind: str, p: DdopParams, seed: int) -> SampledSignal:
    rng = np.random.default_rng(seed)
    if kind == "ddop":
        return make_ddop(p)
    if kind == "ddop-ext":
        return make_ddop_extended(p)
    if kind == "rrc":
        return sub_pulse(p)
    if kind == "rect":
        return make_rect(p.frame_period, p.dt)
    n = int(round(p.frame_period / p.dt))
    if kind == "random":
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        s = SampledSignal(x, p.dt, 0.0)
    elif kind == "periodic":
        period = p.frame_period / p.N
        m = n // p.N
        seed_sig = SampledSignal(rng.standard_normal(m) + 1j * rng.standard_normal(m), p.dt)
        s = make_periodic(seed_sig, period, p.frame_period)
    else:
        raise UsageError(f"unknown pulse kind {kind!r}")
    return s.with_samples(s.samples / np.sqrt(s.energy()))


def cmd_validate(args) -> int:
    p = resolve_params(args)
    check = args.check
    exact = check in ("freq", "periodicity")
    tol = args.tol if args.tol is not None else (EXACT_TOL if exact else SRN_TOL)
    seed = args.seed if args.seed is not None else 0
    if check == "bi":
        if p.extension < 1:
            rep = check_local_orthogonality(make_ddop(p), p.delay_res, p.doppler_res, p.M, p.N, tol)
        else:
            rep = check_local_biorthogonality(
                make_ddop_extended(p), make_ddop(p), p.delay_res, p.doppler_res, p.M, p.N, tol
            )
        result = rep.to_dict()
    elif check == "local":
        g = _test_pulse(args.pulse or "ddop", p, seed)
        result = check_local_orthogonality(g, p.delay_res, p.doppler_res, p.M, p.N, tol).to_dict()
    elif check == "freq":
        g = _test_pulse(args.pulse or "periodic", p, seed)
        result = check_freq_orthogonality(g, p.doppler_res, p.N, tol).to_dict()
    elif check == "srn":
        g = _test_pulse(args.pulse or "rrc", p, seed)
        result = check_srn(g, p.delay_res, p.M, tol).to_dict()
    else:
        s = _test_pulse(args.pulse or ("ddop-ext" if p.extension > 0 else "ddop"), p, seed)
        res = check_periodicity(s, p.T, *periodicity_window(p), tol)
        result = {"passed": res.passed, "max_deviation": res.max_deviation, "tolerance": tol}
    write_atomic(Path(args.out) / "report.json", json.dumps(result, indent=2, sort_keys=True) + "\n")
    width = max(len(k) for k in result)
    print(f"check: {check}")
    for k, v in result.items():
        print(f"  {k:<{width}}  {v}")
    print("PASS" if result["passed"] else "FAIL")
    sidecar(args, p, check=check, report=result)
    return 0 if result["passed"] else 1


def cmd_frame(args) -> int:
    p = resolve_params(args)
    seed = args.seed if args.seed is not None else 0
    fmt = _fmt(args)
    if args.input:
        frame = read_frame(Path(args.input))
        if frame.shape != (p.M, p.N):
            raise UsageError(f"frame shape {frame.shape} does not match M={p.M}, N={p.N}")
    else:
        frame = random_qpsk_frame(p.M, p.N, seed)
    x = oddm_modulate(frame, p, extended=not args.no_extend)
    Y = oddm_demodulate(x, p)
    err = float(np.max(np.abs(Y.X - frame.X)))
    out = Path(args.out)
    write_frame(out, "frame", frame, fmt)
    write_signal(out, "waveform", x, fmt)
    write_frame(out, "demod", Y, fmt)
    print(f"frame={p.M}x{p.N} extended={not args.no_extend and p.extension > 0}")
    print(f"max_symbol_error={err:.6g}")
    sidecar(args, p, max_symbol_error=err, extended=not args.no_extend)
    return 0


def cmd_channel(args) -> int:
    p = resolve_params(args)
    seed = args.seed if args.seed is not None else 0
    out = Path(args.out)
    if args.channel:
        ch = chan.DdChannel.from_json(Path(args.channel).read_text())
    elif args.random:
        ch = chan.random_channel(args.random, args.l_max, args.k_max, seed,
                                 W0=p.M / p.T, T0=p.frame_period)
        write_atomic(out / "channel.json", ch.to_json())
    else:
        raise UsageError("channel needs --channel FILE or --random P")
    if args.input:
        src = Path(args.input)
        x = read_signal(src)
        y = chan.apply(ch, x)
        if args.noise_std > 0:
            rng = np.random.default_rng(seed)
            noise = rng.standard_normal(len(y)) + 1j * rng.standard_normal(len(y))
            y = y.with_samples(y.samples + args.noise_std / np.sqrt(2) * noise)
        fmt = args.format or src.suffix.lstrip(".") or "csv"
        write_signal(out, "waveform", y, fmt)
        print(f"paths={len(ch.paths)} samples_in={len(x)} samples_out={len(y)}")
    else:
        print(f"paths={len(ch.paths)} (no --input; channel only)")
    sidecar(args, p, channel=ch.to_dict(), noise_std=args.noise_std)
    return 0


def cmd_spectrum(args) -> int:
    p = resolve_params(args)
    n_max = args.n_max if args.n_max is not None else 4 * p.M
    freqs = default_freqs(p)
    u = make_ddop(p)
    u0 = SampledSignal(u.samples, u.dt, 0.0)  # DDOP on [0, T_u)
    closed = ddop_spectrum_closed_form(p, freqs, n_max)
    numeric = transform(u0, freqs)
    err_c = relative_l2(closed.values, numeric.values)
    err_m = relative_l2(np.abs(closed.values), np.abs(numeric.values))
    out = Path(args.out)
    if _fmt(args) == "json":
        text = json.dumps({
            "f": freqs.tolist(),
            "closed": [[v.real, v.imag] for v in closed.values + 0.0],
            "numeric": [[v.real, v.imag] for v in numeric.values + 0.0],
        })
        write_atomic(out / "spectrum.json", text)
    else:
        lines = ["f,closed_re,closed_im,closed_abs,numeric_re,numeric_im,numeric_abs"]
        for f, c, v in zip(freqs, closed.values + 0.0, numeric.values + 0.0):
            lines.append(
                f"{f:.17g},{c.real:.17g},{c.imag:.17g},{abs(c):.17g},"
                f"{v.real:.17g},{v.imag:.17g},{abs(v):.17g}"
            )
        write_atomic(out / "spectrum.csv", "\n".join(lines) + "\n")
        write_atomic(out / "spectrum_closed.csv", closed.to_csv())
        write_atomic(out / "spectrum_numeric.csv", numeric.to_csv())
    print(f"n_max={n_max} points={freqs.size}")
    print(f"relative_l2_complex={err_c:.6g} relative_l2_magnitude={err_m:.6g}")
    sidecar(args, p, n_max=n_max, relative_l2_complex=err_c, relative_l2_magnitude=err_m)
    return 0


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-M", type=int, help="number of symbols (delay bins)")
    common.add_argument("-N", type=int, help="number of subcarriers (Doppler bins)")
    common.add_argument("-Q", type=int, help="RRC half-length in symbol intervals")
    common.add_argument("--rho", type=float, help="RRC roll-off")
    common.add_argument("-T", type=float, help="sub-pulse spacing in seconds")
    common.add_argument("-O", type=int, help="samples per symbol interval")
    common.add_argument("-D", type=int, help="cyclic extension depth (default ceil(2Q/M))")
    common.add_argument("--seed", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--preset", choices=sorted(PRESETS))

    parser = argparse.ArgumentParser(prog="ddop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pulse", parents=[common], help="generate a prototype pulse")
    kind = sp.add_mutually_exclusive_group()
    kind.add_argument("--ddop", action="store_true", help="DDOP u(t) (default)")
    kind.add_argument("--ddop-ext", action="store_true", help="cyclically extended DDOP")
    kind.add_argument("--rrc", action="store_true", help="sub-pulse a(t), energy 1/N")
    kind.add_argument("--rect", action="store_true", help="unit-energy rectangle")
    sp.add_argument("--duration", type=float, help="rectangle duration (default N*T)")
    sp.set_defaults(func=cmd_pulse)

    sp = sub.add_parser("ambiguity", parents=[common], help="ambiguity grid on the DD lattice")
    sp.add_argument("--pair", choices=("uc-u", "u-u"))
    sp.add_argument("--slice", help="restrict output to m=<int> or n=<int>")
    sp.set_defaults(func=cmd_ambiguity)

    sp = sub.add_parser("validate", parents=[common], help="run an orthogonality check")
    sp.add_argument("--check", choices=("bi", "local", "freq", "srn", "periodicity"), default="bi")
    sp.add_argument("--pulse", choices=("ddop", "ddop-ext", "rrc", "rect", "periodic", "random"))
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("frame", parents=[common], help="ODDM modulate/demodulate a frame")
    sp.add_argument("--input", help="frame file (.csv or .json); random QPSK otherwise")
    sp.add_argument("--no-extend", action="store_true", help="transmit u instead of u_c")
    sp.set_defaults(func=cmd_frame)

    sp = sub.add_parser("channel", parents=[common], help="apply a delay-Doppler channel")
    sp.add_argument("--channel", help="channel JSON file")
    sp.add_argument("--random", type=int, metavar="P", help="draw a random P-path channel")
    sp.add_argument("--l-max", type=int, default=4)
    sp.add_argument("--k-max", type=int, default=2)
    sp.add_argument("--input", help="waveform file (.csv or .json)")
    sp.add_argument("--noise-std", type=float, default=0.0, help="seeded AWGN std (off by default)")
    sp.set_defaults(func=cmd_channel)

    sp = sub.add_parser("spectrum", parents=[common], help="closed-form vs numerical DDOP spectrum")
    sp.add_argument("--n-max", type=int, help="series truncation (default 4M)")
    sp.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        parser.error(str(exc))  # exits with status 2


if __name__ == "__main__":
    sys.exit(main())
