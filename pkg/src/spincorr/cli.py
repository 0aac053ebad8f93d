"""Command-line front end.

Subcommands: exact (closed-form correlation and channel tables), weights
(eigenbasis channel weights), sample (one coincidence series), chsh (four-pair
CHSH run), sweep (correlation curves over a separation grid).  Every command
produces one CSV or JSON document with a metadata block; identical
configuration and seed give byte-identical output regardless of worker count.

Exit codes: 0 success, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from . import __version__
from .harness import (
    CHANNEL_OUTCOMES,
    canonical_settings,
    estimate_correlation,
    run_chsh,
    run_series,
    run_transfer_baseline,
    run_transfer_series,
)
from .hidden import single_electron_correlation, singlet_correlation_analytic
from .quantum import BlochDirection, correlation_exact, decompose_eigenbasis, decompose_intermediate
from .streams import substream

PAIR_LABELS = ("ab", "ab_prime", "a_prime_b", "a_prime_b_prime")


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters; all angles stored in radians."""

    command: str
    unit: str
    n: int
    seed: int
    model: str
    out: str | None
    format: str
    workers: int
    theta_ab: float | None = None
    a: BlochDirection | None = None
    b: BlochDirection | None = None
    r: BlochDirection | None = None
    a_prime: BlochDirection | None = None
    b_prime: BlochDirection | None = None
    grid: tuple[float, ...] | None = None
    grid_text: str | None = None
    single_electron: bool = False


@dataclass(frozen=True)
class Report:
    """One tabular result document: metadata plus fixed-order columns and rows."""

    metadata: dict
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if value == 0.0:
            value = 0.0
        return format(value, ".17g")
    return str(value)


def render_csv(report: Report) -> str:
    lines = [f"# {key}={_fmt(value)}" for key, value in report.metadata.items()]
    lines.append(",".join(report.columns))
    lines.extend(",".join(_fmt(cell) for cell in row) for row in report.rows)
    return "\n".join(lines) + "\n"


def render_json(report: Report) -> str:
    doc = {
        "metadata": report.metadata,
        "columns": list(report.columns),
        "rows": [list(row) for row in report.rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def _base_metadata(config: RunConfig, model: str) -> dict:
    return {
        "tool": "spincorr",
        "version": __version__,
        "command": config.command,
        "model": model,
        "unit": config.unit,
        "seed": config.seed,
        "n": config.n,
    }


def _direction_metadata(meta: dict, label: str, d: BlochDirection) -> None:
    meta[f"{label}_theta"] = d.theta
    meta[f"{label}_phi"] = d.phi


def _resolve_pair(config: RunConfig) -> tuple[BlochDirection, BlochDirection]:
    if config.theta_ab is not None:
        if config.a is not None or config.b is not None:
            raise ValueError("give either --theta-ab or both --a and --b, not both")
        return BlochDirection(0.0), BlochDirection(config.theta_ab)
    if config.a is None or config.b is None:
        raise ValueError("need --theta-ab, or both --a and --b")
    return config.a, config.b


def cmd_exact(config: RunConfig) -> Report:
    """Closed-form correlation plus the channel tables for one setting pair."""
    a, b = _resolve_pair(config)
    meta = _base_metadata(config, "quantum-exact")
    _direction_metadata(meta, "a", a)
    _direction_metadata(meta, "b", b)
    if config.r is not None:
        _direction_metadata(meta, "r", config.r)
    meta["separation"] = a.angle_to(b)
    meta["correlation"] = correlation_exact(a, b)

    rows = []
    for term in decompose_eigenbasis(a, b).channels:
        rows.append(("eigen", term.index, term.weight.real, 0.0, term.eigenvalue))
    if config.r is not None:
        for term in decompose_intermediate(a, b, config.r).channels:
            rows.append(("intermediate", term.index, term.weight.real, term.weight.imag, None))
    columns = ("table", "channel", "real", "imag", "eigenvalue")
    return Report(metadata=meta, columns=columns, rows=tuple(rows))


def cmd_weights(config: RunConfig) -> Report:
    """Eigenbasis channel weights and eigenvalues for one setting pair."""
    a, b = _resolve_pair(config)
    breakdown = decompose_eigenbasis(a, b)
    meta = _base_metadata(config, "quantum-exact")
    _direction_metadata(meta, "a", a)
    _direction_metadata(meta, "b", b)
    meta["separation"] = a.angle_to(b)
    meta["correlation"] = breakdown.total
    rows = tuple((t.index, t.weight.real, t.eigenvalue) for t in breakdown.channels)
    return Report(metadata=meta, columns=("channel", "weight", "eigenvalue"), rows=rows)


def cmd_sample(config: RunConfig) -> Report:
    """One coincidence series at a single setting pair."""
    a, b = _resolve_pair(config)
    if config.model == "transfer":
        series = run_transfer_series(a, b, config.n, config.seed, workers=config.workers)
        tag = "transfer-baseline"
    else:
        model = "quantum-sampler" if config.model == "exact" else "hv"
        series = run_series(a, b, config.n, model, config.seed, workers=config.workers)
        tag = model
    estimate, std_error = estimate_correlation(series)

    meta = _base_metadata(config, tag)
    _direction_metadata(meta, "a", a)
    _direction_metadata(meta, "b", b)
    meta["separation"] = a.angle_to(b)
    meta["estimate"] = estimate
    meta["std_error"] = std_error
    rows = tuple(
        (k + 1, alpha, beta, count, count / series.total)
        for k, ((alpha, beta), count) in enumerate(zip(CHANNEL_OUTCOMES, series.counts))
    )
    columns = ("channel", "alpha", "beta", "count", "fraction")
    return Report(metadata=meta, columns=columns, rows=rows)


def _resolve_quadruple(config: RunConfig):
    supplied = (config.a, config.a_prime, config.b, config.b_prime)
    if all(d is None for d in supplied):
        return canonical_settings()
    if any(d is None for d in supplied):
        raise ValueError("chsh needs all of --a, --a-prime, --b, --b-prime, or none of them")
    return supplied


def cmd_chsh(config: RunConfig) -> Report:
    """Four-setting CHSH run for the chosen model."""
    a, a_prime, b, b_prime = _resolve_quadruple(config)
    if config.model == "transfer":
        report = run_transfer_baseline(
            a, a_prime, b, b_prime, config.n, config.seed, workers=config.workers
        )
    else:
        model = "quantum-exact" if config.model == "exact" else "hv"
        report = run_chsh(
            a, a_prime, b, b_prime, config.n, model, config.seed, workers=config.workers
        )

    meta = _base_metadata(config, report.model)
    for label, d in zip(("a", "a_prime", "b", "b_prime"), (a, a_prime, b, b_prime)):
        _direction_metadata(meta, label, d)
    meta["s_value"] = report.s_value
    meta["s_std_error"] = report.s_std_error

    rows = []
    for label, pair in zip(PAIR_LABELS, report.pairs):
        counts = pair.series.counts if pair.series is not None else (0, 0, 0, 0)
        rows.append(
            (
                label,
                pair.a.theta,
                pair.a.phi,
                pair.b.theta,
                pair.b.phi,
                pair.a.angle_to(pair.b),
                pair.estimate,
                pair.std_error,
                *counts,
            )
        )
    columns = (
        "pair",
        "a_theta",
        "a_phi",
        "b_theta",
        "b_phi",
        "separation",
        "estimate",
        "std_error",
        "n1",
        "n2",
        "n3",
        "n4",
    )
    return Report(metadata=meta, columns=columns, rows=tuple(rows))


def cmd_sweep(config: RunConfig) -> Report:
    """Correlation curves over a separation grid: exact, analytic, and sampled."""
    if config.grid is None:
        raise ValueError("sweep needs --grid start:stop:step")
    mode = "single-electron" if config.single_electron else "singlet"
    meta = _base_metadata(config, "hv")
    meta["mode"] = mode
    meta["grid"] = config.grid_text

    rows = []
    for i, theta in enumerate(config.grid):
        if config.single_electron:
            exact = math.cos(theta)
            analytic = single_electron_correlation(theta, "analytic")
            sampled = single_electron_correlation(
                theta, "sampled", config.n, substream(config.seed, stream=i)
            )
            std_error = math.sqrt(max(0.0, 1.0 - sampled**2) / config.n)
        else:
            a, b = BlochDirection(0.0), BlochDirection(theta)
            exact = correlation_exact(a, b)
            analytic = singlet_correlation_analytic(theta)
            series = run_series(a, b, config.n, "hv", config.seed, stream=i, workers=config.workers)
            sampled, std_error = estimate_correlation(series)
        rows.append((theta, exact, analytic, sampled, std_error))
    columns = ("theta_ab", "exact", "hv_analytic", "hv_sampled", "stderr")
    return Report(metadata=meta, columns=columns, rows=tuple(rows))


COMMANDS = {
    "exact": cmd_exact,
    "weights": cmd_weights,
    "sample": cmd_sample,
    "chsh": cmd_chsh,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spincorr",
        description="Singlet spin correlations: exact values, hidden-variable sampling, CHSH runs.",
    )
    parser.add_argument("--version", action="version", version=f"spincorr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        unit = p.add_mutually_exclusive_group()
        unit.add_argument("--deg", action="store_true", help="interpret angles as degrees")
        unit.add_argument(
            "--rad", action="store_true", help="interpret angles as radians (default)"
        )
        p.add_argument("--n", type=int, default=1_000_000, help="trials (default 1000000)")
        p.add_argument("--seed", type=int, default=0, help="RNG seed, 64-bit (default 0)")
        p.add_argument("--workers", type=int, default=1, help="worker threads (default 1)")
        p.add_argument("--out", help="write the document to this path instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    def add_pair(p: argparse.ArgumentParser) -> None:
        p.add_argument("--theta-ab", type=float, help="separation angle (coplanar placement)")
        p.add_argument("--a", help="first setting as zenith,azimuth")
        p.add_argument("--b", help="second setting as zenith,azimuth")

    p_exact = sub.add_parser("exact", help="closed-form correlation and channel tables")
    add_pair(p_exact)
    p_exact.add_argument("--r", help="auxiliary axis zenith,azimuth for the intermediate table")
    add_common(p_exact)

    p_weights = sub.add_parser("weights", help="eigenbasis channel weights")
    add_pair(p_weights)
    add_common(p_weights)

    p_sample = sub.add_parser("sample", help="run one coincidence series")
    add_pair(p_sample)
    p_sample.add_argument(
        "--model", choices=("exact", "hv", "transfer"), default="hv",
        help="exact: sample quantum channel weights; hv: hidden-variable model; "
        "transfer: hemisphere-sign baseline",
    )
    add_common(p_sample)

    p_chsh = sub.add_parser("chsh", help="four-setting CHSH run")
    for flag in ("--a", "--a-prime", "--b", "--b-prime"):
        p_chsh.add_argument(flag, help=f"setting {flag[2:]} as zenith,azimuth")
    p_chsh.add_argument(
        "--model", choices=("exact", "hv", "transfer"), default="hv",
        help="exact: closed-form correlations; hv: per-setting hidden-variable series; "
        "transfer: shared-outcome baseline",
    )
    add_common(p_chsh)

    p_sweep = sub.add_parser("sweep", help="correlation curves over a separation grid")
    p_sweep.add_argument("--grid", required=True, help="separation grid start:stop:step")
    p_sweep.add_argument(
        "--single-electron", action="store_true",
        help="sweep the sequential single-spin correlation instead of the pair",
    )
    add_common(p_sweep)
    return parser


def _parse_direction(text: str, conv: float, flag: str) -> BlochDirection:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"{flag} expects zenith,azimuth, got {text!r}")
    try:
        zenith, azimuth = (float(part) for part in parts)
    except ValueError:
        raise ValueError(f"{flag} expects two numbers, got {text!r}") from None
    return BlochDirection(zenith * conv, azimuth * conv)


def _parse_grid(text: str, conv: float) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"--grid expects start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(part) for part in parts)
    except ValueError:
        raise ValueError(f"--grid expects numbers, got {text!r}") from None
    if step <= 0 or stop < start:
        raise ValueError("--grid needs step > 0 and stop >= start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    values = tuple((start + k * step) * conv for k in range(count))
    for theta in values:
        _check_separation(theta)
    return values


def _check_separation(theta: float) -> float:
    if not 0.0 <= theta <= math.pi:
        raise ValueError("separation angles must lie in [0, pi] (0 to 180 degrees)")
    return theta


def config_from_args(args: argparse.Namespace) -> RunConfig:
    unit = "deg" if args.deg else "rad"
    conv = math.pi / 180.0 if unit == "deg" else 1.0

    def direction(flag: str) -> BlochDirection | None:
        text = getattr(args, flag.lstrip("-").replace("-", "_"), None)
        return None if text is None else _parse_direction(text, conv, flag)

    theta_ab = getattr(args, "theta_ab", None)
    if theta_ab is not None:
        theta_ab = _check_separation(theta_ab * conv)
    grid_text = getattr(args, "grid", None)
    return RunConfig(
        command=args.command,
        unit=unit,
        n=args.n,
        seed=args.seed,
        model=getattr(args, "model", "exact"),
        out=args.out,
        format=args.format,
        workers=args.workers,
        theta_ab=theta_ab,
        a=direction("--a"),
        b=direction("--b"),
        r=direction("--r"),
        a_prime=direction("--a-prime"),
        b_prime=direction("--b-prime"),
        grid=None if grid_text is None else _parse_grid(grid_text, conv),
        grid_text=grid_text,
        single_electron=getattr(args, "single_electron", False),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        report = COMMANDS[config.command](config)
        document = render_json(report) if config.format == "json" else render_csv(report)
    except ValueError as exc:
        print(f"spincorr: error: {exc}", file=sys.stderr)
        return 2
    if config.out is None:
        sys.stdout.write(document)
        return 0
    try:
        with open(config.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(document)
    except OSError as exc:
        print(f"spincorr: cannot write {config.out}: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
