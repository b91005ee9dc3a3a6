"""End-to-end acceptance criteria, one test per numbered criterion.

Each test records a single pass/fail line in the terminal summary through
the `criterion_report` fixture and then asserts every clause of its
criterion, including the stated runtime budget.  Criteria 2, 3, and 6
state convergence tolerances that the exact computations do not reach at
the stated sizes; those tests fail and are expected to fail.  The
measured gaps are reported as computed, never loosened to force green.
"""

import json
import math
import random
import time

import numpy as np
from scipy.stats import chi2_contingency, chisquare

from slrep.boltzmann import (
    rejection_uniform_sample,
    boltzmann_sample,
    sampling_census,
    solve_saddle,
)
from slrep.census import cumulative_count, enumerate_irreps, region_volume
from slrep.exact_count import count_by_convolution, count_representations, uniform_sample
from slrep.limits import compute_constants, gumbel_cdf, saddle_scale_constant, variance_scale_constant
from slrep.stats import normalize, stat_max_dim
from slrep.verify import (
    appendix_window_check,
    compare_exact_to_limit,
    ensembles_tv,
    ks_distance,
    shrinking,
    theta_grid,
    weyl_lower_bound_check,
)

SEED = 20250818
_RUNS = {}


def partition_numbers_by_parts(n):
    """Independent oracle: partitions of 0..n counted part by part."""
    p = [1] + [0] * n
    for part in range(1, n + 1):
        for v in range(part, n + 1):
            p[v] += p[v - part]
    return p


def enumerate_partitions(n, largest):
    """Literal enumeration: walk every partition of n, one leaf at a time."""
    if n == 0:
        return 1
    return sum(enumerate_partitions(n - part, part)
               for part in range(min(n, largest), 0, -1))


def enumerate_reps(r, n):
    """All weight multisets of total dimension n, as canonical keys."""
    census = enumerate_irreps(r, max(n, 1), keep_weights=True)
    flat = [(tuple(k), int(m)) for m, group in zip(census.dims, census.weights)
            for k in group]
    out = []

    def go(i, left, acc):
        if left == 0:
            out.append(tuple(sorted(acc)))
            return
        if i == len(flat):
            return
        k, d = flat[i]
        go(i + 1, left, acc)
        c = 1
        while c * d <= left:
            go(i + 1, left - c * d, acc + [(k, c)])
            c += 1

    go(0, n, [])
    return out


def canonical(rep):
    return tuple(sorted(rep.mult.items()))


def test_criterion_1_exact_counting(criterion_report):
    started = time.monotonic()
    failures = []

    table1 = count_representations(1, 50)
    if table1.counts != partition_numbers_by_parts(50):
        failures.append("rank-1 counts disagree with the partition oracle")
    if any(table1.counts[n] != enumerate_partitions(n, n) for n in range(36)):
        failures.append("rank-1 counts disagree with literal enumeration")

    table2 = count_representations(2, 8)
    if table2.counts[1:9] != [1, 1, 3, 3, 3, 8, 8, 9]:
        failures.append(f"pinned rank-2 counts differ: {table2.counts[1:9]}")

    for r in (1, 2, 3):
        if count_by_convolution(r, 200) != count_representations(r, 200).counts:
            failures.append(f"recurrence vs truncated product differ at rank {r}")

    elapsed = time.monotonic() - started
    if elapsed >= 10.0:
        failures.append(f"runtime {elapsed:.1f}s breaches the 10s budget")
    criterion_report(1, not failures,
                     f"counting oracles agree through n=200, {elapsed:.1f}s")
    assert not failures, "; ".join(failures)


def test_criterion_2_census_asymptotic(criterion_report):
    started = time.monotonic()
    failures = []
    x = 10**6

    quad, quad_err = region_volume(2)
    mc, mc_err = region_volume(2, method="mc")
    if abs(quad - mc) > quad_err + mc_err:
        failures.append(
            f"volume routes disagree: {quad:.6f}+-{quad_err:.1e} vs "
            f"{mc:.6f}+-{mc_err:.1e}")

    census = enumerate_irreps(2, x)
    ratio = cumulative_count(census, x) * x ** (-2.0 / 3.0)
    rel_dev = abs(ratio - quad) / quad
    if rel_dev > 0.05:
        failures.append(
            f"|R(x) x^(-2/3) - C| = {rel_dev:.4f} C at x = 1e6, above 0.05 C; "
            "the next-order census term decays like x^(-1/6) and still "
            "contributes ~0.10 C at this x")

    elapsed = time.monotonic() - started
    if elapsed >= 60.0:
        failures.append(f"runtime {elapsed:.1f}s breaches the 60s budget")
    criterion_report(2, not failures,
                     f"routes agree, relative deviation {rel_dev:.4f} "
                     f"(tolerance 0.05), {elapsed:.1f}s")
    assert not failures, "; ".join(failures)


def test_criterion_3_saddle_equation_of_state(criterion_report):
    started = time.monotonic()
    failures = []
    n = 10**8

    if abs(saddle_scale_constant(1) - math.pi / math.sqrt(6.0)) > 1e-6:
        failures.append("rank-1 scale constant differs from pi/sqrt(6)")

    details = []
    for r in (2, 3):
        params = solve_saddle(r, n)
        s_ratio = params.s * n ** (2.0 / (r * (r + 3))) / saddle_scale_constant(r)
        v_ratio = (params.sigma2 * params.s ** (r * (r + 2))
                   / variance_scale_constant(r))
        details.append(f"r={r}: s-ratio {s_ratio:.4f}, var-ratio {v_ratio:.4f}")
        if abs(s_ratio - 1.0) > 0.10:
            failures.append(f"saddle ratio {s_ratio:.4f} off by more than 10% "
                            f"at rank {r}")
        if abs(v_ratio - 1.0) > 0.10:
            failures.append(f"variance ratio {v_ratio:.4f} off by more than "
                            f"10% at rank {r}; the variance correction decays "
                            "like a low power of s and is still large at n=1e8")

    elapsed = time.monotonic() - started
    if elapsed >= 60.0:
        failures.append(f"runtime {elapsed:.1f}s breaches the 60s budget")
    criterion_report(3, not failures, "; ".join(details) + f", {elapsed:.1f}s")
    assert not failures, "; ".join(failures)


def _criterion_4_draws():
    """Both samplers' draws at (r=2, n=10), canonically serialized."""
    table = count_representations(2, 10)
    dp_rng = random.Random(SEED)
    dp = [canonical(uniform_sample(table, 10, dp_rng)) for _ in range(100_000)]

    params = solve_saddle(2, 10)
    census = sampling_census(params)
    rej_rng = np.random.default_rng(SEED)
    rej = [canonical(rep)
           for rep in rejection_uniform_sample(params, census, 20_000, rej_rng)]

    blob = json.dumps({"dp": [[list(k), c] for key in dp for k, c in key],
                       "rejection": [[list(k), c] for key in rej for k, c in key]},
                      separators=(",", ":")).encode()
    return dp, rej, blob


def test_criterion_4_uniform_sampling_exactness(criterion_report):
    failures = []
    dp, rej, blob = _criterion_4_draws()
    _RUNS["criterion4"] = blob

    classes = enumerate_reps(2, 10)
    assert len(classes) == 19
    index = {key: i for i, key in enumerate(classes)}

    dp_counts = np.zeros(19, dtype=np.int64)
    for key in dp:
        dp_counts[index[key]] += 1
    _, p_uniform = chisquare(dp_counts)
    if p_uniform <= 0.001:
        failures.append(f"DP sampler chi-square p = {p_uniform:.2e} <= 0.001")

    rej_counts = np.zeros(19, dtype=np.int64)
    for key in rej:
        rej_counts[index[key]] += 1
    _, p_two, _, _ = chi2_contingency(np.stack([dp_counts, rej_counts]))
    if p_two <= 0.001:
        failures.append(f"two-sample chi-square p = {p_two:.2e} <= 0.001")

    criterion_report(4, not failures,
                     f"uniform p = {p_uniform:.3f}, two-sample p = {p_two:.3f} "
                     "over all 19 classes")
    assert not failures, "; ".join(failures)


def test_criterion_5_equivalence_of_ensembles(criterion_report):
    started = time.monotonic()
    failures = []
    grid = (100, 500, 2500, 5000)

    table = count_representations(2, 5000)
    tvs = [ensembles_tv(2, n, (1, 1), table=table) for n in grid]
    if not shrinking(tvs, allow_single_step_fraction=0.1):
        failures.append(f"TV trend not decreasing: {tvs}")
    if not tvs[-1] < 0.1:
        failures.append(f"TV at n=5000 is {tvs[-1]:.4f}, not below the "
                        "0.1 engineering threshold")

    elapsed = time.monotonic() - started
    if elapsed >= 300.0:
        failures.append(f"runtime {elapsed:.1f}s breaches the 5min budget")
    criterion_report(5, not failures,
                     "TV " + ", ".join(f"{v:.4f}" for v in tvs)
                     + f" over n = {grid}, {elapsed:.1f}s")
    assert not failures, "; ".join(failures)


def test_criterion_6_limit_laws_exact_route(criterion_report):
    started = time.monotonic()
    failures = []
    grid = (10**4, 10**5, 10**6)
    tolerances = {"D": 0.05, "H": 0.10, "mult": 0.05, "shape": 0.05, "mgf": 0.05}

    gaps = {}
    for stat in ("D", "H", "mult", "shape", "mgf"):
        gaps[stat] = [compare_exact_to_limit(2, n, stat, k=(1, 1)).gap
                      for n in grid]
        final = gaps[stat][-1]
        if final > tolerances[stat]:
            failures.append(f"{stat} gap {final:.4f} above {tolerances[stat]} "
                            "at n=1e6")
        if not shrinking(gaps[stat]):
            failures.append(f"{stat} gaps {['%.4f' % g for g in gaps[stat]]} "
                            "do not shrink along the n-grid")

    elapsed = time.monotonic() - started
    if elapsed >= 600.0:
        failures.append(f"runtime {elapsed:.1f}s breaches the 10min budget")
    summary = ", ".join(f"{stat} {gaps[stat][-1]:.4f}" for stat in gaps)
    criterion_report(6, not failures, f"gaps at n=1e6: {summary}, {elapsed:.0f}s")
    assert not failures, "; ".join(failures)


def _criterion_7_sample():
    """Normalized largest-dimension sample at (r=2, n=1e5) plus raw bytes."""
    n = 10**5
    params = solve_saddle(2, n)
    census = sampling_census(params)
    rng = np.random.default_rng(SEED)
    raws = []
    for _ in range(5000):
        rep = boltzmann_sample(params, census, rng)
        raws.append(stat_max_dim(rep) if rep.mult else 0)
    blob = json.dumps(raws, separators=(",", ":")).encode()
    constants = compute_constants(2, n, s=params.s)
    normalized = normalize("D", raws, params, constants).normalized
    return params, normalized, blob


def test_criterion_7_monte_carlo_cross_check(criterion_report):
    started = time.monotonic()
    failures = []

    params, normalized, blob = _criterion_7_sample()
    _RUNS["criterion7"] = blob
    ks = ks_distance(normalized, gumbel_cdf)
    exact_gap = compare_exact_to_limit(2, 10**5, "D", params=params).gap
    if abs(ks - exact_gap) > 0.03:
        failures.append(f"KS {ks:.4f} vs exact sup-gap {exact_gap:.4f}: "
                        "difference above 0.03")

    elapsed = time.monotonic() - started
    if elapsed >= 300.0:
        failures.append(f"runtime {elapsed:.1f}s breaches the 5min budget")
    criterion_report(7, not failures,
                     f"KS {ks:.4f} vs exact sup-gap {exact_gap:.4f} "
                     f"(5000 draws), {elapsed:.0f}s")
    assert not failures, "; ".join(failures)


def test_criterion_8_weyl_window_bounds(criterion_report):
    started = time.monotonic()
    failures = []
    eps = 1.0 / 32.0
    checked = 0

    for r in (2, 3):
        for box in (4, 8, 16, 32):
            random_t, adversarial_t = theta_grid(r, box, eps,
                                                 num_random=10_000, seed=99)
            thetas = np.unique(np.concatenate([random_t, adversarial_t]))
            report = weyl_lower_bound_check(r, box, eps, thetas, "acceptance")
            checked += thetas.size
            if not report.passed:
                failures.append(f"window bounds violated at r={r}, N={box}: "
                                f"{report.violations} violations")

    for box in (4, 8, 16, 32):
        random_t, adversarial_t = theta_grid(2, box, eps,
                                             num_random=10_000, seed=99)
        thetas = np.unique(np.concatenate([random_t, adversarial_t]))
        report = appendix_window_check(box, eps, thetas, "acceptance")
        if not report.passed:
            failures.append(f"box-window ladder violated at N={box}")

    elapsed = time.monotonic() - started
    if elapsed >= 300.0:
        failures.append(f"runtime {elapsed:.1f}s breaches the 5min budget")
    criterion_report(8, not failures,
                     f"zero violations across {checked} window evaluations, "
                     f"{elapsed:.0f}s")
    assert not failures, "; ".join(failures)


def test_criterion_9_determinism(criterion_report):
    first4 = _RUNS.get("criterion4") or _criterion_4_draws()[2]
    second4 = _criterion_4_draws()[2]
    first7 = _RUNS.get("criterion7") or _criterion_7_sample()[2]
    second7 = _criterion_7_sample()[2]

    ok = first4 == second4 and first7 == second7
    criterion_report(9, ok, "sampler reruns with the pinned seed are "
                            "byte-identical")
    assert first4 == second4
    assert first7 == second7
