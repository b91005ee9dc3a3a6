"""Census enumeration, counting function, volumes, and tail envelopes."""

import io
import math
from collections import Counter

import numpy as np
import pytest
from scipy.special import gamma as gamma_fn

from slrep.census import (
    BudgetError,
    cumulative_count,
    dim_count,
    enumerate_irreps,
    flatten_weights,
    growth_envelope,
    inverse_moment_tail,
    region_volume,
    remainder_envelope,
    weighted_tail_bound,
    write_csv,
)
from slrep.weights import dim_irrep, twice_height

# closed form for the rank-2 region volume: 2^{-1/3} Gamma(1/3)^2 / Gamma(2/3)
VOLUME_R2 = 2.0 ** (-1.0 / 3.0) * gamma_fn(1.0 / 3.0) ** 2 / gamma_fn(2.0 / 3.0)
# rank-3 volume pinned from an independent high-precision reduction of the
# triple integral to the unit simplex (mpmath, 25 significant digits)
VOLUME_R3 = 15.877561531050693


def brute_census(r, X):
    """Counter dim -> multiplicity by scanning the full coordinate box.

    The dimension is coordinatewise increasing and at least max(k), so the
    box k_j <= X with early inner breaks is exhaustive."""
    out = Counter()
    k = [1] * r
    while True:
        d = dim_irrep(r, k)
        if d <= X:
            out[d] += 1
            k[-1] += 1
            continue
        # carry: reset trailing coordinate, advance the previous one
        j = r - 1
        while j >= 0 and k[j] == 1:
            j -= 1
        j -= 1
        if j < 0:
            return out
        k[j] += 1
        for i in range(j + 1, r):
            k[i] = 1


@pytest.mark.parametrize("r,X", [(1, 40), (2, 200), (2, 500), (3, 500)])
def test_enumeration_matches_box_scan(r, X):
    census = enumerate_irreps(r, X, keep_weights=True)
    expected = brute_census(r, X)
    got = {int(m): int(c) for m, c in zip(census.dims, census.counts)}
    assert got == dict(expected)
    assert census.num_weights == sum(expected.values())
    for m, group in zip(census.dims, census.weights):
        assert len(group) == got[int(m)]
        for k in group:
            assert dim_irrep(r, k) == int(m)


def test_rank_two_small_census_pinned():
    census = enumerate_irreps(2, 10)
    assert list(census.dims) == [1, 3, 6, 8, 10]
    assert list(census.counts) == [1, 2, 2, 1, 2]
    assert list(census.cumulative) == [1, 3, 5, 6, 8]
    assert census.weights is None


def test_rank_one_census_is_all_integers():
    census = enumerate_irreps(1, 25)
    assert list(census.dims) == list(range(1, 26))
    assert list(census.counts) == [1] * 25


def test_counting_function_queries():
    census = enumerate_irreps(2, 10)
    assert cumulative_count(census, 10) == 8
    assert cumulative_count(census, 9.5) == 6
    assert cumulative_count(census, 1) == 1
    assert cumulative_count(census, 0.99) == 0
    assert dim_count(census, 6) == 2
    assert dim_count(census, 7) == 0
    with pytest.raises(ValueError):
        cumulative_count(census, 11)
    with pytest.raises(ValueError):
        dim_count(census, 0)


def test_cumulative_is_cumsum_of_counts():
    census = enumerate_irreps(3, 300)
    assert np.array_equal(census.cumulative, np.cumsum(census.counts))


def test_enumeration_validation_and_budget():
    with pytest.raises(ValueError):
        enumerate_irreps(2, 0)
    with pytest.raises(ValueError):
        enumerate_irreps(0, 10)
    with pytest.raises(BudgetError):
        enumerate_irreps(2, 10**6, budget=100)


def test_flatten_weights_rows():
    census = enumerate_irreps(2, 10, keep_weights=True)
    dims, K, h2 = flatten_weights(census)
    assert dims.shape == (8,) and K.shape == (8, 2) and h2.shape == (8,)
    assert list(dims) == sorted(dims)
    for d, k, h in zip(dims, K, h2):
        assert dim_irrep(2, tuple(k)) == int(d)
        assert int(h) == twice_height(2, [x - 1 for x in k])
    with pytest.raises(ValueError):
        flatten_weights(enumerate_irreps(2, 10))


def test_write_csv_round_trip():
    census = enumerate_irreps(2, 10)
    buf = io.StringIO()
    write_csv(census, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "m,rho,cumulative"
    assert lines[1] == "1,1,1"
    assert lines[-1] == "10,2,8"
    assert len(lines) == 1 + len(census.dims)


def test_region_volume_rank_one_exact():
    assert region_volume(1) == (1.0, 0.0)


def test_region_volume_rank_two_against_closed_form():
    value, err = region_volume(2)
    assert err < 1e-9
    assert abs(value - VOLUME_R2) <= err


def test_region_volume_rank_three_against_pinned():
    value, err = region_volume(3)
    assert err < 1e-5
    assert abs(value - VOLUME_R3) <= err


def test_region_volume_monte_carlo_brackets_quadrature():
    mc, mc_err = region_volume(2, method="mc", samples=2_000_000)
    assert mc_err < 0.5
    assert abs(mc - VOLUME_R2) <= mc_err


def test_region_volume_rejects_unknown_inputs():
    with pytest.raises(ValueError):
        region_volume(2, method="dartboard")
    with pytest.raises(NotImplementedError):
        region_volume(4)
    with pytest.raises(NotImplementedError):
        region_volume(3, method="mc")


@pytest.mark.parametrize("r", [2, 3])
def test_envelopes_extrapolate_to_larger_census(r):
    small = enumerate_irreps(r, 500)
    big = enumerate_irreps(r, 5000)
    c = 2.0 / (r + 1)
    cprime = 2.0 * (r - 1) / (r * r)
    vol, _ = region_volume(r)
    x = big.dims.astype(float)
    after = big.cumulative.astype(float)
    before = after - big.counts.astype(float)

    cp = growth_envelope(small)
    assert float((after / x**c).max()) <= cp

    K = remainder_envelope(small)
    dev = np.maximum(np.abs(after - vol * x**c), np.abs(before - vol * x**c))
    assert float((dev / x**cprime).max()) <= K


def test_weighted_tail_bound_majorizes_true_tail():
    # split a big census at a small cutoff: the bound computed from the
    # small prefix must cover the exactly known middle part of the tail
    r, X, beta, p = 2, 200, 0.05, 1.0
    small = enumerate_irreps(r, X)
    big = enumerate_irreps(r, 20 * X)
    bound = weighted_tail_bound(small, beta, p)
    m = big.dims.astype(float)
    mask = m > X
    partial = float(np.sum(big.counts[mask] * m[mask] ** p * np.exp(-beta * m[mask])))
    assert partial <= bound


def test_weighted_tail_bound_validation():
    small = enumerate_irreps(2, 30)
    with pytest.raises(ValueError):
        weighted_tail_bound(small, -1.0, 1.0)
    with pytest.raises(ValueError):
        # cutoff below p/beta: f is not yet decreasing, the bound is invalid
        weighted_tail_bound(small, 1e-4, 2.0)


def test_inverse_moment_tail_brackets_partial_sums():
    small = enumerate_irreps(2, 500)
    big = enumerate_irreps(2, 10_000)
    for j in (1, 2, 3):
        est, err = inverse_moment_tail(small, j)
        m = big.dims.astype(float)
        mask = m > 500
        partial = float(np.sum(big.counts[mask] / m[mask] ** j))
        rest_hi, _ = inverse_moment_tail(big, j)
        assert partial <= est + err
        assert partial + rest_hi >= est - err
    with pytest.raises(ValueError):
        inverse_moment_tail(enumerate_irreps(1, 50), 1)
