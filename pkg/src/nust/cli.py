"""Command-line entry point: ``nust <subcommand> ...``.

Exit status is 0 on success, 1 for usage errors and 2 for data errors
(unreadable or invalid input, bad parameter values).
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import io
from .core import frequency_grid, linspace_grid, time_grid
from .density import kde_build
from .engine import NORMALIZE_MODES, normalize_power, nust_spectrogram
from .errors import NustError
from .gls import gls_periodogram
from .raster import render_heatmap
from .stransform import stransform_series
from .synth import SIGNALS, add_noise, sample_nonuniform, uniform_version
from .window import NustConfig

log = logging.getLogger("nust")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _cap(text):
    return float("inf") if text.lower() in ("inf", "none") else float(text)


def _freq_args(p, fmin=0.01, fmax=0.5, nfreq=250):
    p.add_argument("--fmin", type=float, default=fmin, help="lowest frequency, c/d (default: %(default)s)")
    p.add_argument("--fmax", type=float, default=fmax, help="highest frequency, c/d (default: %(default)s)")
    p.add_argument("--nfreq", type=int, default=nfreq, help="number of frequencies (default: %(default)s)")


def _time_args(p):
    p.add_argument("--ntau", type=int, default=200, help="number of analysis epochs (default: %(default)s)")
    p.add_argument("--tau-min", type=float, default=None, help="first analysis epoch (default: first sample)")
    p.add_argument("--tau-max", type=float, default=None, help="last analysis epoch (default: last sample)")


def _normalize_arg(p, default):
    p.add_argument("--normalize", choices=NORMALIZE_MODES, default=default, help="power scaling (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nust", description="Time-frequency analysis of unevenly sampled series.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("gls", help="GLS periodogram -> frequency,power CSV")
    p.add_argument("input", help="series CSV: time,value[,uncertainty]")
    _freq_args(p)
    p.add_argument("--seed", type=int, default=None, help="accepted for pipeline symmetry; GLS is deterministic")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("nust", help="NUST spectrogram -> .nustg file")
    p.add_argument("input", help="series CSV: time,value[,uncertainty]")
    _freq_args(p)
    _time_args(p)
    p.add_argument("--alpha", type=float, default=0.18, help="baseline window scale (default: %(default)s)")
    p.add_argument("--gamma", type=float, default=0.5, help="density sensitivity exponent (default: %(default)s)")
    p.add_argument("--bandwidth", type=float, default=None, help="KDE bandwidth in days (default: Silverman's rule)")
    p.add_argument("--sigma-cap", type=_cap, default=None, help="largest window std in days, or 'inf' (default: data span)")
    p.add_argument("--truncation-k", type=float, default=5.0, help="window support in std units (default: %(default)s)")
    p.add_argument("--min-ess", type=float, default=4.0, help="minimum effective sample size (default: %(default)s)")
    _normalize_arg(p, "none")
    p.add_argument("--workers", type=int, default=1, help="threads for grid evaluation (default: %(default)s)")
    p.add_argument("--seed", type=int, default=None, help="accepted for pipeline symmetry; NUST is deterministic")
    p.add_argument("--ppm", default=None, help="also write a heatmap image here")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("stransform", help="reference S-transform of an evenly sampled CSV")
    p.add_argument("input", help="uniformly sampled CSV: time,value")
    _freq_args(p)
    _time_args(p)
    _normalize_arg(p, "global-max")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("density", help="sampling density on a probe grid -> time,density CSV")
    p.add_argument("input")
    p.add_argument("--bandwidth", type=float, default=None, help="KDE bandwidth in days (default: Silverman's rule)")
    p.add_argument("--nprobe", type=int, default=500, help="probe points over the data span (default: %(default)s)")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("synth", help="generate a benchmark series CSV")
    p.add_argument("--signal", choices=sorted(SIGNALS), default="1", help="benchmark signal (default: %(default)s)")
    p.add_argument("--n", type=int, default=200, help="number of random epochs (default: %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default: %(default)s)")
    p.add_argument("--snr", type=float, default=None, help="add white noise at this RMS SNR")
    p.add_argument("--thin", action="store_true", help="sparsify sampling inside the signal's burst interval")
    p.add_argument("--uniform", action="store_true", help="evenly spaced epochs instead (S-transform input)")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("render", help="spectrogram file -> PPM heatmap")
    p.add_argument("input", help=".nustg spectrogram file")
    _normalize_arg(p, "global-max")
    p.add_argument("--scale", type=int, default=2, help="pixels per cell edge (default: %(default)s)")
    p.add_argument("-o", "--output", required=True)
    return parser


def _grids(args, series):
    fg = frequency_grid(args.fmin, args.fmax, args.nfreq)
    lo = series.times[0] if args.tau_min is None else args.tau_min
    hi = series.times[-1] if args.tau_max is None else args.tau_max
    return time_grid(lo, hi, args.ntau), fg


def cmd_gls(args):
    series = io.read_series(args.input)
    pgram = gls_periodogram(series, frequency_grid(args.fmin, args.fmax, args.nfreq))
    io.write_periodogram(pgram, args.output)
    f, p = pgram.peak()
    log.info("peak power %.4f at %.6f c/d", p, f)


def cmd_nust(args):
    series = io.read_series(args.input)
    config = NustConfig(args.alpha, args.gamma, args.bandwidth, args.sigma_cap, args.truncation_k, args.min_ess)
    tg, fg = _grids(args, series)
    spec = nust_spectrogram(config, series, tg, fg, workers=max(1, args.workers))
    spec = normalize_power(spec, args.normalize)
    io.write_spectrogram(spec, args.output)
    if args.ppm:
        render_heatmap(spec, args.ppm, "global-max")
    log.info("%d x %d cells, %d valid", *spec.shape, int(spec.valid.sum()))


def cmd_stransform(args):
    series = io.read_series(args.input)
    tg, fg = _grids(args, series)
    spec = stransform_series(series.times, series.values, fg, tg, args.normalize)
    io.write_spectrogram(spec, args.output)


def cmd_density(args):
    series = io.read_series(args.input)
    est = kde_build(series, args.bandwidth)
    lo, hi = series.times[0], series.times[-1]
    if not hi > lo:
        lo, hi = lo - 3 * est.bandwidth, hi + 3 * est.bandwidth
    probe = linspace_grid(lo, hi, args.nprobe)
    io.write_columns(args.output, ("time", "density"), probe, est(probe))
    log.info("bandwidth %.6g d", est.bandwidth)


def cmd_synth(args):
    spec = SIGNALS[args.signal]()
    if args.uniform:
        t, y = uniform_version(spec, args.n)
        io.write_columns(args.output, ("time", "value"), t, y)
        return
    series = sample_nonuniform(spec, args.n, args.seed, burst_thinning=args.thin)
    if args.snr is not None:
        series = add_noise(series, args.snr, args.seed + 1, spec)
    io.write_series(series, args.output)


def cmd_render(args):
    spec = io.read_spectrogram(args.input)
    render_heatmap(spec, args.output, args.normalize, args.scale)


COMMANDS = {
    "gls": cmd_gls,
    "nust": cmd_nust,
    "stransform": cmd_stransform,
    "density": cmd_density,
    "synth": cmd_synth,
    "render": cmd_render,
}


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (NustError, OSError) as exc:
        print(f"nust {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
