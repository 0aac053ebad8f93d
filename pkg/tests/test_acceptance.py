"""Acceptance gate: nine numbered criteria, one printed verdict line each.

Run with `pytest -sv tests/test_acceptance.py` to see the verdict lines;
tolerances are pinned in the assertions below.
"""

import math
import time

import numpy as np
from scipy import integrate, stats

from spincorr.cli import main
from spincorr.harness import (
    canonical_settings,
    estimate_correlation,
    run_chsh,
    run_series,
    run_transfer_baseline,
    transfer_correlation_analytic,
)
from spincorr.hidden import (
    HIDDEN_ANGLE,
    sample_phi,
    single_electron_correlation,
    singlet_correlation_analytic,
)
from spincorr.quantum import (
    BlochDirection,
    correlation_exact,
    decompose_eigenbasis,
    decompose_intermediate,
)
from spincorr.streams import substream


def random_direction(rng):
    return BlochDirection.from_vector(rng.normal(size=3))


def test_criterion_1_exact_correlation_is_minus_dot_product():
    start = time.perf_counter()
    rng = np.random.default_rng(20260819)
    worst = 0.0
    for _ in range(1000):
        a, b = random_direction(rng), random_direction(rng)
        residual = abs(correlation_exact(a, b) + float(a.unit_vector @ b.unit_vector))
        worst = max(worst, residual)
    elapsed = time.perf_counter() - start
    assert worst < 1e-12
    assert elapsed < 1.0
    print(
        f"criterion 1 PASS: 1000 random pairs, max |C + a.b| = {worst:.2e} < 1e-12 "
        f"({elapsed:.2f}s < 1s)"
    )


def test_criterion_2_intermediate_decomposition_identities():
    start = time.perf_counter()
    rng = np.random.default_rng(31415)
    worst_sum, worst_conj = 0.0, 0.0
    for _ in range(100):
        a, b, r = (random_direction(rng) for _ in range(3))
        f1, f2, f3, f4 = (t.weight for t in decompose_intermediate(a, b, r).channels)
        worst_conj = max(worst_conj, abs(f3 - f4.conjugate()))
        total = f1 + f2 + f3 + f4
        assert abs(total.imag) < 1e-12
        worst_sum = max(
            worst_sum, abs(total.real + float(a.unit_vector @ b.unit_vector))
        )
    assert worst_conj < 1e-12
    assert worst_sum < 1e-12

    worst_coplanar = 0.0
    for _ in range(100):
        t_a, t_b, t_r = rng.uniform(-math.pi, math.pi, size=3)
        terms = decompose_intermediate(
            BlochDirection(t_a), BlochDirection(t_b), BlochDirection(t_r)
        ).channels
        parallel = -0.5 * math.cos(t_a - t_r) * math.cos(t_b - t_r)
        crossed = -0.5 * math.sin(t_a - t_r) * math.sin(t_b - t_r)
        for term, expected in zip(terms, (parallel, parallel, crossed, crossed)):
            worst_coplanar = max(worst_coplanar, abs(term.weight - expected))
    elapsed = time.perf_counter() - start
    assert worst_coplanar < 1e-12
    assert elapsed < 1.0
    print(
        "criterion 2 PASS: 100 random triples obey conjugacy/realness/sum "
        f"(worst {max(worst_sum, worst_conj):.2e}), coplanar closed form termwise "
        f"(worst {worst_coplanar:.2e}) < 1e-12 ({elapsed:.2f}s < 1s)"
    )


def test_criterion_3_eigenbasis_weights_closed_form():
    start = time.perf_counter()
    worst_weight, worst_norm = 0.0, 0.0
    for theta in np.arange(0.0, math.pi + 0.005, 0.01):
        theta = min(float(theta), math.pi)
        channels = decompose_eigenbasis(BlochDirection(0.0), BlochDirection(theta)).channels
        anti = 0.5 * math.cos(theta / 2.0) ** 2
        para = 0.5 * math.sin(theta / 2.0) ** 2
        for term, expected in zip(channels, (anti, anti, para, para)):
            worst_weight = max(worst_weight, abs(term.weight - expected))
        worst_norm = max(worst_norm, abs(sum(t.weight for t in channels) - 1.0))
    elapsed = time.perf_counter() - start
    assert worst_weight < 1e-12
    assert worst_norm < 1e-12
    assert elapsed < 1.0
    print(
        f"criterion 3 PASS: 0.01-rad sweep, weights within {worst_weight:.2e} of the "
        f"half-angle forms, normalization off by {worst_norm:.2e} < 1e-12 "
        f"({elapsed:.2f}s < 1s)"
    )


def test_criterion_4_hidden_variable_analytic_equivalence():
    worst_pair, worst_single = 0.0, 0.0
    for theta in np.arange(0.0, math.pi + 0.005, 0.01):
        theta = min(float(theta), math.pi)
        exact = correlation_exact(BlochDirection(0.0), BlochDirection(theta))
        worst_pair = max(worst_pair, abs(singlet_correlation_analytic(theta) - exact))
        worst_single = max(
            worst_single, abs(single_electron_correlation(theta) - math.cos(theta))
        )
    assert worst_pair < 1e-12
    assert worst_single < 1e-15
    print(
        f"criterion 4 PASS: analytic model equals the exact engine within "
        f"{worst_pair:.2e} < 1e-12; single-electron variant equals +cos within "
        f"{worst_single:.2e}"
    )


def test_criterion_5_sampler_fidelity():
    start = time.perf_counter()
    n = 1_000_000
    angles = (math.pi / 6, math.pi / 3, math.pi / 2, 2 * math.pi / 3, 5 * math.pi / 6)
    for stream, theta in enumerate(angles):
        series = run_series(
            BlochDirection(0.0), BlochDirection(theta), n, "hv", seed=90125, stream=stream
        )
        estimate, _ = estimate_correlation(series)
        target = -math.cos(theta)
        sigma = math.sqrt((1.0 - target**2) / n)
        assert abs(estimate - target) < 4.0 * sigma, f"mean(A) off at theta={theta}"
        anti = 0.5 * math.cos(theta / 2.0) ** 2
        para = 0.5 * math.sin(theta / 2.0) ** 2
        for count, weight in zip(series.counts, (anti, anti, para, para)):
            channel_sigma = math.sqrt(weight * (1.0 - weight) / n)
            assert abs(count / n - weight) < 4.0 * channel_sigma, f"channels off at {theta}"
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    print(
        f"criterion 5 PASS: 5 angles x 10^6 trials, mean products and channel "
        f"proportions all within 4 sigma ({elapsed:.2f}s < 10s)"
    )


def test_criterion_6_chsh_reproduction():
    n = 1_000_000
    report = run_chsh(*canonical_settings(), n, "hv", seed=65537)
    s, se = report.s_value, report.s_std_error
    significance = (abs(s) - 2.0) / se
    assert significance >= 5.0
    assert abs(abs(s) - 2.0 * math.sqrt(2.0)) <= 5.0 * se
    print(
        f"criterion 6 PASS: hv CHSH at canonical angles, S = {s:.4f} +- {se:.4f}; "
        f"|S| exceeds 2 by {significance:.0f} sigma and sits within 5 sigma of 2*sqrt(2)"
    )


def test_criterion_7_transfer_baseline_obeys_the_bound():
    rng = np.random.default_rng(8675309)
    worst_excess = -math.inf
    for k in range(200):
        dirs = [random_direction(rng) for _ in range(4)]
        report = run_transfer_baseline(*dirs, 100_000, seed=k)
        excess = abs(report.s_value) - 2.0 - 5.0 * report.s_std_error
        worst_excess = max(worst_excess, excess)
        assert excess <= 0.0
    canonical = run_transfer_baseline(*canonical_settings(), 1_000_000, seed=777)
    for pair in canonical.pairs:
        ramp = transfer_correlation_analytic(pair.a.angle_to(pair.b))
        assert abs(pair.estimate - ramp) < 4.0 * pair.std_error
    print(
        "criterion 7 PASS: 200 random quadruples never top |S| = 2 + 5 sigma "
        f"(worst margin {worst_excess:.3f}); canonical per-pair correlations match "
        "-1 + 2*theta/pi within 4 sigma"
    )


def test_criterion_8_hidden_distribution_correctness():
    draws = sample_phi(substream(112358).random(100_000))
    ks = stats.kstest(draws, HIDDEN_ANGLE.cdf)
    assert ks.pvalue > 0.001
    x = np.linspace(0.0, math.pi, 20001)
    mass = integrate.simpson(HIDDEN_ANGLE.pdf(x), x=x)
    assert abs(mass - 1.0) < 1e-10
    print(
        f"criterion 8 PASS: KS p-value {ks.pvalue:.3f} > 0.001 on 10^5 draws; "
        f"quadrature mass off by {abs(mass - 1.0):.1e} < 1e-10"
    )


def test_criterion_9_chsh_output_determinism(tmp_path):
    base = ["chsh", "--n", "200000", "--seed", "424242"]
    outputs = []
    for tag, workers in (("w1a", "1"), ("w1b", "1"), ("w4", "4"), ("w7", "7")):
        path = tmp_path / f"{tag}.csv"
        code = main(base + ["--workers", workers, "--out", str(path)])
        assert code == 0
        outputs.append(path.read_bytes())
    assert all(doc == outputs[0] for doc in outputs[1:])
    print(
        "criterion 9 PASS: chsh output byte-identical across repeat runs and "
        "worker counts 1/4/7 (n=200000, seed=424242)"
    )
