"""Command-line front end.

Subcommands: gen-noise (render white noise to WAV or a plot file), process
(apply filter/quantiser/modulator stages), compare (cross-rate comparability
report with CSV and PNG output), demo-panpipe (the filtered-noise-plus-sine
instrument), and figure (the 4x3 demonstration grid).

Exit status: 0 success or comparability pass, 1 comparability failure,
2 usage or parameter error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io
from .core import rms
from .filters import (
    first_order_lowpass,
    integrate,
    moving_average,
    state_variable_lowpass,
)
from .harness import (
    DEFAULT_VSD,
    PIPELINE_NAMES,
    ComparabilityReport,
    LegacyNoise,
    Panpipe,
    RateAwareNoise,
    build_pipeline,
    check_comparability,
    panpipe_noise_branch,
    render,
    reproduce_noise_figure,
)
from .impulse import delta_sigma
from .noise import NoiseSpec, white_noise
from .prng import Distribution, Seed
from .quantise import quantise_average, quantise_hold

__all__ = ["main", "run"]

_EXIT_OK = 0
_EXIT_COMPARE_FAIL = 1
_EXIT_USAGE = 2
_EXIT_IO = 3


def _seed_arg(text: str) -> Seed:
    return Seed(int(text, 0))


def _print_stats(**stats) -> None:
    for name, value in stats.items():
        if isinstance(value, float):
            print(f"{name}={value:.9g}")
        else:
            print(f"{name}={value}")


def _write_output(path: Path, signal, full_scale_v: float, fmt: str | None) -> None:
    fmt = fmt or ("wav" if path.suffix.lower() == ".wav" else "csv")
    if fmt == "wav":
        io.write_wav(path, signal, full_scale_v)
    else:
        times = np.arange(len(signal)) / signal.rate_hz
        io.write_columns_csv(path, times, signal.samples)


# --- gen-noise --------------------------------------------------------------


def cmd_gen_noise(args) -> int:
    pair_given = args.amplitude is not None or args.ref_rate is not None
    if args.vsd is not None and pair_given:
        raise ValueError("give either --vsd or the pair --amplitude/--ref-rate, not both")
    if args.vsd is not None:
        spec = NoiseSpec(args.vsd)
    elif args.amplitude is not None and args.ref_rate is not None:
        spec = NoiseSpec.from_reference(args.amplitude, args.ref_rate)
    else:
        raise ValueError("give either --vsd or both --amplitude and --ref-rate")

    dist = Distribution(args.distribution)
    signal = white_noise(spec, args.sample_rate, args.duration, args.seed, dist)
    _write_output(args.output, signal, args.full_scale, args.format)
    _print_stats(
        samples=len(signal),
        stddev=spec.stddev_at(args.sample_rate),
        vsd=spec.vsd,
        output=args.output,
    )
    return _EXIT_OK


# --- process ----------------------------------------------------------------

_STAGE_ARITY = {
    "lowpass1": 1,
    "svf": 2,
    "movavg": 1,
    "qhold": 1,
    "qavg": 1,
    "dsigma": 1,
    "integrate": 0,
}


def _apply_stage(signal, text: str):
    parts = text.split(":")
    name, params = parts[0], parts[1:]
    if name not in _STAGE_ARITY:
        raise ValueError(f"stage {text!r}: unknown stage name {name!r}; "
                         f"choose from {sorted(_STAGE_ARITY)}")
    if len(params) != _STAGE_ARITY[name]:
        raise ValueError(
            f"stage {text!r}: expected {_STAGE_ARITY[name]} parameter(s), got {len(params)}"
        )
    try:
        values = [float(p) for p in params]
    except ValueError:
        raise ValueError(f"stage {text!r}: parameters must be numbers") from None
    try:
        if name == "lowpass1":
            return first_order_lowpass(signal, values[0])
        if name == "svf":
            return state_variable_lowpass(signal, values[0], values[1])
        if name == "movavg":
            return moving_average(signal, values[0])
        if name == "qhold":
            return quantise_hold(signal, values[0])
        if name == "qavg":
            return quantise_average(signal, values[0])
        if name == "dsigma":
            return delta_sigma(signal, values[0])
        return integrate(signal)
    except ValueError as exc:
        raise ValueError(f"stage {text!r}: {exc}") from exc


def cmd_process(args) -> int:
    signal = io.read_signal(args.input, args.full_scale)
    for stage in args.stage:
        signal = _apply_stage(signal, stage)
    _write_output(args.output, signal, args.full_scale, args.format)
    _print_stats(samples=len(signal), rate=signal.rate_hz, rms=rms(signal), output=args.output)
    return _EXIT_OK


# --- compare ----------------------------------------------------------------


def _report_csv_text(report: ComparabilityReport) -> str:
    lines = ["name,value_r0,value_r1,ratio,tolerance,pass"]
    for m in report.metrics:
        lines.append(
            f"{m.name},{m.value_r0:.9g},{m.value_r1:.9g},{m.ratio:.9g},"
            f"{m.tolerance:.9g},{str(m.passed).lower()}"
        )
    return "\n".join(lines) + "\n"


def cmd_compare(args) -> int:
    algorithm = build_pipeline(
        args.pipeline,
        legacy=args.legacy,
        vsd=args.vsd,
        amplitude_v=args.amplitude,
        cutoff_hz=args.cutoff,
        q=args.q,
        period_s=args.period,
        offset_v=args.offset,
        threshold_vs=args.threshold,
        pitch_hz=args.pitch,
    )
    report = check_comparability(
        algorithm,
        args.r0,
        args.r1,
        trials=args.trials,
        tolerance=args.tolerance,
        duration_s=args.duration,
        seed=args.seed,
    )
    io.write_text(args.output, _report_csv_text(report))
    png = None
    if args.plot:
        from .plotting import save_report_png

        png = save_report_png(report, Path(args.output).with_suffix(".png"))
    for m in report.metrics:
        print(
            f"metric={m.name} value_r0={m.value_r0:.9g} value_r1={m.value_r1:.9g} "
            f"ratio={m.ratio:.9g} tolerance={m.tolerance:.9g} "
            f"pass={str(m.passed).lower()}"
        )
    _print_stats(all_pass=str(report.all_pass).lower(), report=args.output)
    if png is not None:
        _print_stats(plot=png)
    return _EXIT_OK if report.all_pass else _EXIT_COMPARE_FAIL


# --- demo-panpipe -----------------------------------------------------------


def cmd_demo_panpipe(args) -> int:
    source = LegacyNoise(args.amplitude) if args.legacy else RateAwareNoise(args.vsd)
    instrument = Panpipe(source, pitch_hz=args.pitch)
    signal = render(instrument, args.sample_rate, args.duration, args.seed)
    _write_output(args.output, signal, args.full_scale, args.format)
    branch = panpipe_noise_branch(instrument, args.sample_rate, args.duration, args.seed)
    _print_stats(
        samples=len(signal),
        rms=rms(signal),
        noise_branch_rms=rms(branch),
        output=args.output,
    )
    return _EXIT_OK


# --- figure -----------------------------------------------------------------


def cmd_figure(args) -> int:
    paths = reproduce_noise_figure(args.out_dir, legacy=not args.rate_aware, seed=args.seed)
    _print_stats(files=len(paths), out_dir=args.out_dir)
    if args.plot:
        from .plotting import save_noise_grid_png

        png = save_noise_grid_png(args.out_dir, Path(args.out_dir) / "noise_grid.png")
        _print_stats(plot=png)
    return _EXIT_OK


# --- parser -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratenoise",
        description="Sampling-rate-aware noise rendering and comparability checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-noise", help="render rate-aware white noise")
    gen.add_argument("--sample-rate", type=float, required=True, help="render rate in Hz")
    gen.add_argument("--duration", type=float, required=True, help="length in seconds")
    gen.add_argument("--seed", type=_seed_arg, default=Seed(0))
    gen.add_argument(
        "--distribution", choices=[d.value for d in Distribution], default="uniform"
    )
    gen.add_argument("--vsd", type=float, help="voltage spectral density in V*sqrt(s)")
    gen.add_argument("--amplitude", type=float, help="target stddev in V at --ref-rate")
    gen.add_argument("--ref-rate", type=float, help="reference rate in Hz for --amplitude")
    gen.add_argument("-o", "--output", type=Path, required=True)
    gen.add_argument("--format", choices=["wav", "csv"], help="default: by file extension")
    gen.add_argument("--full-scale", type=float, default=1.0, help="volts at PCM full scale")
    gen.set_defaults(func=cmd_gen_noise)

    proc = sub.add_parser("process", help="apply processing stages to a signal file")
    proc.add_argument("-i", "--input", "--in", type=Path, required=True, help=".wav or plot file")
    proc.add_argument(
        "--stage",
        action="append",
        required=True,
        metavar="NAME[:PARAM...]",
        help="lowpass1:fc | svf:fc:q | movavg:window | qhold:period | "
        "qavg:period | dsigma:threshold | integrate (repeatable, applied in order)",
    )
    proc.add_argument("-o", "--output", type=Path, required=True)
    proc.add_argument("--format", choices=["wav", "csv"])
    proc.add_argument("--full-scale", type=float, default=1.0)
    proc.set_defaults(func=cmd_process)

    cmp_ = sub.add_parser("compare", help="cross-rate comparability report")
    cmp_.add_argument("--pipeline", choices=PIPELINE_NAMES, required=True)
    cmp_.add_argument("--legacy", action="store_true", help="fixed-amplitude noise source")
    cmp_.add_argument("--r0", type=float, default=11025.0, help="low rate in Hz")
    cmp_.add_argument("--r1", type=float, default=44100.0, help="high rate in Hz")
    cmp_.add_argument("--trials", type=int, default=100)
    cmp_.add_argument("--tolerance", type=float, default=0.10)
    cmp_.add_argument("--duration", type=float, default=0.5, help="seconds per trial render")
    cmp_.add_argument("--seed", type=_seed_arg, default=Seed(0))
    cmp_.add_argument("--vsd", type=float, default=DEFAULT_VSD)
    cmp_.add_argument("--amplitude", type=float, default=1.0, help="legacy noise amplitude")
    cmp_.add_argument("--cutoff", type=float, default=500.0, help="filter frequency in Hz")
    cmp_.add_argument("--q", type=float, default=5.0)
    cmp_.add_argument("--period", type=float, default=25.0 / 11025.0)
    cmp_.add_argument("--offset", type=float, default=1.0)
    cmp_.add_argument("--threshold", type=float, default=0.1)
    cmp_.add_argument("--pitch", type=float, default=440.0)
    cmp_.add_argument("-o", "--output", type=Path, default=Path("comparability_report.csv"))
    cmp_.add_argument("--no-plot", dest="plot", action="store_false")
    cmp_.set_defaults(func=cmd_compare, plot=True)

    demo = sub.add_parser("demo-panpipe", help="render the panpipe demonstration")
    demo.add_argument("--sample-rate", type=float, default=44100.0)
    demo.add_argument("--duration", type=float, default=2.0)
    demo.add_argument("--seed", type=_seed_arg, default=Seed(0))
    demo.add_argument("--legacy", action="store_true", help="render the defective version")
    demo.add_argument("--pitch", type=float, default=440.0)
    demo.add_argument("--vsd", type=float, default=DEFAULT_VSD)
    demo.add_argument("--amplitude", type=float, default=1.0, help="legacy noise amplitude")
    demo.add_argument("-o", "--output", type=Path, default=Path("panpipe.wav"))
    demo.add_argument("--format", choices=["wav", "csv"])
    demo.add_argument("--full-scale", type=float, default=2.0)
    demo.set_defaults(func=cmd_demo_panpipe)

    fig = sub.add_parser("figure", help="write the 4x3 noise/filter demonstration grid")
    fig.add_argument("--out-dir", type=Path, required=True)
    fig.add_argument("--seed", type=_seed_arg, default=None)
    fig.add_argument(
        "--rate-aware", action="store_true", help="use rate-aware instead of legacy noise"
    )
    fig.add_argument("--no-plot", dest="plot", action="store_false")
    fig.set_defaults(func=cmd_figure, plot=True)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if getattr(args, "seed", None) is None and args.command == "figure":
        from .harness import FIGURE_SEED

        args.seed = FIGURE_SEED
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return _EXIT_IO


def run() -> None:
    raise SystemExit(main(sys.argv[1:]))
