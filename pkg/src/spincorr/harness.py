"""Coincidence-experiment layer: setting series, the correlation estimator,
CHSH runs over four setting pairs, and a transferable-outcomes baseline.

Each series draws fresh randomness for its own setting pair; nothing is
carried over between pairs except in the transfer baseline, which is the
point of that model.  Randomness is keyed by (seed, stream, trial index)
through counter-based generators, so results are bit-identical for a given
seed and configuration no matter how trials are chunked across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .hidden import sample_singlet_batch
from .quantum import CHANNEL_EIGENVALUES, BlochDirection, channel_weights, correlation_exact
from .streams import chunk_bounds, substream

CHANNEL_OUTCOMES = ((1, -1), (-1, 1), (1, 1), (-1, -1))

CHSH_SIGNS = (1, -1, 1, 1)

SERIES_MODELS = ("hv", "quantum-sampler")
CHSH_MODELS = ("hv", "quantum-sampler", "quantum-exact")

_DRAWS_PER_TRIAL = {"hv": 2, "quantum-sampler": 1, "transfer": 2}


@dataclass(frozen=True)
class SettingSeries:
    """Tallies of one coincidence series at a fixed setting pair.

    Channels are ordered by outcome pair: (+,-), (-,+), (+,+), (-,-).
    """

    a: BlochDirection
    b: BlochDirection
    counts: tuple[int, int, int, int]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != 4 or any(c < 0 for c in counts):
            raise ValueError("counts must be four nonnegative tallies")
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def separation(self) -> float:
        return self.a.angle_to(self.b)


@dataclass(frozen=True)
class PairResult:
    """Correlation estimate for one setting pair inside a CHSH run."""

    a: BlochDirection
    b: BlochDirection
    estimate: float
    std_error: float
    series: SettingSeries | None = None


@dataclass(frozen=True)
class ChshReport:
    """Four setting-pair estimates and the CHSH statistic built from them.

    Pairs are ordered (a,b), (a,b'), (a',b), (a',b'); the statistic combines
    their estimates with signs (+, -, +, +).
    """

    pairs: tuple[PairResult, PairResult, PairResult, PairResult]
    model: str

    @property
    def s_value(self) -> float:
        return sum(s * p.estimate for s, p in zip(CHSH_SIGNS, self.pairs))

    @property
    def s_std_error(self) -> float:
        return math.sqrt(sum(p.std_error**2 for p in self.pairs))


def canonical_settings() -> tuple[BlochDirection, BlochDirection, BlochDirection, BlochDirection]:
    """Coplanar setting quadruple (a, a', b, b') maximizing |S| for E = -cos."""
    return (
        BlochDirection(0.0),
        BlochDirection(math.pi / 2),
        BlochDirection(math.pi / 4),
        BlochDirection(3 * math.pi / 4),
    )


def _bin_channels(alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    idx = np.where(alpha * beta < 0, 0, 2) + (alpha < 0)
    return np.bincount(idx, minlength=4)


def _map_chunks(n: int, workers: int, draws_per_trial: int, chunk_fn) -> list[np.ndarray]:
    bounds = chunk_bounds(n, workers, draws_per_trial)
    if workers <= 1 or len(bounds) == 1:
        return [chunk_fn(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda span: chunk_fn(*span), bounds))


def run_series(
    a: BlochDirection,
    b: BlochDirection,
    n: int,
    model: str = "hv",
    seed: int = 0,
    *,
    stream: int = 0,
    workers: int = 1,
) -> SettingSeries:
    """Draw n coincidences at one setting pair and tally the four channels.

    model "hv" runs the hidden-variable sampler at the separation angle;
    "quantum-sampler" draws channels directly from the exact weights.
    Results depend only on (seed, stream, n, settings), not on workers.
    """
    if n < 1:
        raise ValueError("series length must be at least 1")
    if model not in SERIES_MODELS:
        raise ValueError(f"model must be one of {SERIES_MODELS}, got {model!r}")
    dpt = _DRAWS_PER_TRIAL[model]

    if model == "hv":
        theta = a.angle_to(b)

        def chunk_fn(lo: int, hi: int) -> np.ndarray:
            rng = substream(seed, stream, draw_offset=dpt * lo)
            batch = sample_singlet_batch(theta, hi - lo, rng)
            return _bin_channels(batch.alpha, batch.beta)

    else:
        cum = np.cumsum(channel_weights(a, b))

        def chunk_fn(lo: int, hi: int) -> np.ndarray:
            rng = substream(seed, stream, draw_offset=dpt * lo)
            u = rng.random(hi - lo)
            idx = np.minimum(np.searchsorted(cum, u, side="right"), 3)
            return np.bincount(idx, minlength=4)

    counts = np.sum(_map_chunks(n, workers, dpt, chunk_fn), axis=0)
    return SettingSeries(a=a, b=b, counts=tuple(counts))


def estimate_correlation(series: SettingSeries) -> tuple[float, float]:
    """Coincidence estimate of the correlation, with its binomial standard error.

    The estimate averages the channel outcome products over all trials; the
    error bar uses the exact variance (1 - E^2)/N of a +/-1 variable.
    """
    n = series.total
    if n < 1:
        raise ValueError("cannot estimate from an empty series")
    estimate = sum(e * c for e, c in zip(CHANNEL_EIGENVALUES, series.counts)) / n
    std_error = math.sqrt(max(0.0, 1.0 - estimate**2) / n)
    return estimate, std_error


def _pair_streams(
    a: BlochDirection, a_prime: BlochDirection, b: BlochDirection, b_prime: BlochDirection
):
    return ((a, b, 0), (a, b_prime, 1), (a_prime, b, 2), (a_prime, b_prime, 3))


def run_chsh(
    a: BlochDirection,
    a_prime: BlochDirection,
    b: BlochDirection,
    b_prime: BlochDirection,
    n_per_pair: int = 1_000_000,
    model: str = "hv",
    seed: int = 0,
    *,
    workers: int = 1,
) -> ChshReport:
    """Run the four CHSH setting pairs as independent series and combine them.

    Each pair gets its own randomness stream keyed by its position, so the
    four series are unchanged under reordering or re-running.  Model
    "quantum-exact" skips sampling and reports the closed-form correlation
    with zero error.
    """
    if model not in CHSH_MODELS:
        raise ValueError(f"model must be one of {CHSH_MODELS}, got {model!r}")
    pairs = []
    for x, y, stream in _pair_streams(a, a_prime, b, b_prime):
        if model == "quantum-exact":
            pairs.append(PairResult(a=x, b=y, estimate=correlation_exact(x, y), std_error=0.0))
        else:
            series = run_series(x, y, n_per_pair, model, seed, stream=stream, workers=workers)
            estimate, std_error = estimate_correlation(series)
            pairs.append(
                PairResult(a=x, b=y, estimate=estimate, std_error=std_error, series=series)
            )
    tag = "quantum-exact" if model == "quantum-exact" else f"{model}-per-setting"
    return ChshReport(pairs=tuple(pairs), model=tag)


def _hemisphere_outcomes(lam: np.ndarray, direction: BlochDirection) -> np.ndarray:
    return np.where(lam @ direction.unit_vector >= 0.0, 1, -1)


def _hidden_vectors(u: np.ndarray) -> np.ndarray:
    z = 2.0 * u[:, 0] - 1.0
    az = 2.0 * math.pi * u[:, 1]
    s = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.column_stack((s * np.cos(az), s * np.sin(az), z))


def run_transfer_series(
    a: BlochDirection,
    b: BlochDirection,
    n: int,
    seed: int = 0,
    *,
    stream: int = 0,
    workers: int = 1,
) -> SettingSeries:
    """Single-pair series under the hemisphere-sign model.

    One hidden unit vector per trial; side 1 reports the sign of its
    projection on a, side 2 the opposite sign of its projection on b.
    """
    if n < 1:
        raise ValueError("series length must be at least 1")

    def chunk_fn(lo: int, hi: int) -> np.ndarray:
        rng = substream(seed, stream, draw_offset=2 * lo)
        lam = _hidden_vectors(rng.random((hi - lo, 2)))
        alpha = _hemisphere_outcomes(lam, a)
        beta = -_hemisphere_outcomes(lam, b)
        return _bin_channels(alpha, beta)

    counts = np.sum(_map_chunks(n, workers, 2, chunk_fn), axis=0)
    return SettingSeries(a=a, b=b, counts=tuple(counts))


def run_transfer_baseline(
    a: BlochDirection,
    a_prime: BlochDirection,
    b: BlochDirection,
    b_prime: BlochDirection,
    n: int = 1_000_000,
    seed: int = 0,
    *,
    workers: int = 1,
) -> ChshReport:
    """CHSH run under the transfer assumption: outcomes for every setting exist
    per trial and are shared across all four pairs.

    Each trial draws one hidden unit vector; outcomes are hemisphere signs
    (anti-aligned on side 2) evaluated for all four settings at once.  The
    per-trial CHSH combination is then +/-2 by construction, so |S| can never
    exceed 2 beyond sampling noise; the per-pair correlation is the linear
    ramp -1 + 2*theta/pi rather than -cos(theta).
    """
    if n < 1:
        raise ValueError("series length must be at least 1")
    pair_dirs = [(x, y) for x, y, _ in _pair_streams(a, a_prime, b, b_prime)]

    def chunk_fn(lo: int, hi: int) -> np.ndarray:
        rng = substream(seed, 0, draw_offset=2 * lo)
        lam = _hidden_vectors(rng.random((hi - lo, 2)))
        side1 = {d: _hemisphere_outcomes(lam, d) for d in (a, a_prime)}
        side2 = {d: -_hemisphere_outcomes(lam, d) for d in (b, b_prime)}
        return np.stack([_bin_channels(side1[x], side2[y]) for x, y in pair_dirs])

    counts = np.sum(_map_chunks(n, workers, 2, chunk_fn), axis=0)
    pairs = []
    for (x, y), pair_counts in zip(pair_dirs, counts):
        series = SettingSeries(a=x, b=y, counts=tuple(pair_counts))
        estimate, std_error = estimate_correlation(series)
        pairs.append(PairResult(a=x, b=y, estimate=estimate, std_error=std_error, series=series))
    return ChshReport(pairs=tuple(pairs), model="transfer-baseline")


def transfer_correlation_analytic(theta_ab: float) -> float:
    """Hemisphere-model correlation: linear in the separation, -1 + 2*theta/pi."""
    if not 0.0 <= theta_ab <= math.pi:
        raise ValueError("separation angle must lie in [0, pi]")
    return -1.0 + 2.0 * theta_ab / math.pi
