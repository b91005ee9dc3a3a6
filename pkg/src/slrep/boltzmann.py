"""Grand-canonical (Boltzmann) model over sl_{r+1} representations.

Under the product measure with parameter q in (0, 1), the multiplicities
X_k of the irreducible modules are independent geometrics,
P(X_k = l) = (1 - q^a) q^{a l} with a the module dimension.  Conditioned on
total dimension n this measure is exactly uniform, which is what the
rejection sampler exploits.  `solve_saddle` tunes q so the expected total
dimension equals n; writing q = exp(-s^nu) with nu = r(r+1)/2, the solved s
shrinks like n^{-2/(r(r+3))}.

Every truncated sum here carries a certified tail bound derived from the
census growth envelope, returned as the second element of a (value, err)
pair or recorded on the params object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .census import (IrrepCensus, enumerate_irreps, flatten_weights,
                     weighted_tail_bound)
from .exact_count import Representation
from .limits import asymptotic_saddle
from .weights import degree


@dataclass(frozen=True)
class BoltzmannParams:
    """Solved saddle point: E_q[total dimension] = n within solver_tol * n."""

    rank: int
    n: int
    q: float
    s: float
    beta: float       # -log q = s^nu
    sigma2: float     # Var_q(total dimension), census part
    cutoff: int       # census max_dim used by the solver
    tail_bound: float  # certified truncation error of E_q[dim] at the solution
    solver_tol: float


def _term_arrays(census, beta):
    m = census.dims.astype(float)
    rho = census.counts.astype(float)
    qm = np.exp(-beta * m)
    one_minus = -np.expm1(-beta * m)
    return m, rho, qm, one_minus


def _moment_value(census, beta, p):
    m, rho, qm, one_minus = _term_arrays(census, beta)
    return math.fsum(rho * m**p * qm / one_minus**p)


def _moment_err(census, beta, p, envelope=None):
    X = census.max_dim
    scale = (-np.expm1(-beta * X)) ** (-p) if p else 1.0
    return scale * weighted_tail_bound(census, beta, p, envelope=envelope)


def _check_q(q):
    if not 0.0 < q < 1.0:
        raise ValueError(f"Boltzmann parameter must satisfy 0 < q < 1, got {q}")
    return -math.log(q)


def expected_dim(r: int, q: float, census: IrrepCensus):
    """(value, err): E_q[total dimension], truncated at the census cutoff.

    err is a certified bound on the ignored tail; a ValueError signals a
    census cutoff too small for the tail machinery at this q.
    """
    beta = _check_q(q)
    return _moment_value(census, beta, 1), _moment_err(census, beta, 1)


def variance_dim(r: int, q: float, census: IrrepCensus):
    """(value, err): Var_q(total dimension) = sum a^2 q^a / (1-q^a)^2."""
    beta = _check_q(q)
    return _moment_value(census, beta, 2), _moment_err(census, beta, 2)


def third_moment_dim(r: int, q: float, census: IrrepCensus):
    """(value, err): sum over weights of a^3 q^a / (1-q^a)^3."""
    beta = _check_q(q)
    return _moment_value(census, beta, 3), _moment_err(census, beta, 3)


def default_cutoff(r: int, n: int, chi: float = 48.0) -> int:
    """Census cutoff heuristic: dims where q^m has decayed to e^{-chi}."""
    beta_guess = asymptotic_saddle(r, n) ** degree(r)
    return max(int(math.ceil(chi / beta_guess)), 8)


def solve_saddle(r: int, n: int, tol: float = 1e-8,
                 census: IrrepCensus | None = None,
                 chi: float = 48.0) -> BoltzmannParams:
    """Solve E_q[total dimension] = n for q, with |E - n| <= tol * n certified.

    Monotone in s = (-log q)^{1/nu}: Brent on the census-truncated
    expectation (a strict lower bound of the true one, so bracket signs are
    certain), then the truncation error at the root is checked against the
    tolerance budget.  When the census is built internally it is enlarged
    and the solve retried if that check ever fails.
    """
    if n < 1:
        raise ValueError(f"target dimension must be >= 1, got {n}")
    nu = degree(r)
    s_guess = asymptotic_saddle(r, n)
    own_census = census is None
    X = default_cutoff(r, n, chi) if own_census else census.max_dim

    for _ in range(4):
        if own_census:
            census = enumerate_irreps(r, X)
        arrays = census.dims.astype(float), census.counts.astype(float)

        def gap(s):
            m, rho = arrays
            qm = np.exp(-(s**nu) * m)
            return math.fsum(rho * m * qm / (-np.expm1(-(s**nu) * m))) - n

        lo, hi = s_guess / 4.0, s_guess * 4.0
        for _ in range(80):
            if gap(lo) > 0.0:
                break
            lo /= 2.0
        for _ in range(80):
            if gap(hi) < 0.0:
                break
            hi *= 2.0
        s = brentq(gap, lo, hi, xtol=1e-300, rtol=1e-14)

        beta = s**nu
        value = _moment_value(census, beta, 1)
        err = _moment_err(census, beta, 1)
        if err <= tol * n / 2.0 and abs(value - n) <= tol * n / 2.0:
            sigma2 = _moment_value(census, beta, 2)
            return BoltzmannParams(rank=r, n=n, q=math.exp(-beta), s=s,
                                   beta=beta, sigma2=sigma2,
                                   cutoff=census.max_dim, tail_bound=err,
                                   solver_tol=tol)
        if not own_census:
            raise ValueError(
                f"census cutoff {census.max_dim} cannot certify |E - n| <= "
                f"{tol} * n (tail bound {err:.3g})")
        X *= 2
    raise RuntimeError(f"saddle solve failed to certify after enlargements (r={r}, n={n})")


def truncation_tv_bound(params: BoltzmannParams, census: IrrepCensus) -> float:
    """Certified TV distance between the full product law and the one
    truncated at the census cutoff: at most sum of q^a beyond the cutoff."""
    return weighted_tail_bound(census, params.beta, 0)


def sampling_census(params: BoltzmannParams, delta: float = 1e-12) -> IrrepCensus:
    """Weight-bearing census wide enough to sample within delta in TV.

    The solver cutoff targets moment accuracy; sampling needs the stricter
    truncation bound, so the cutoff doubles until it certifies."""
    X = params.cutoff
    for _ in range(20):
        census = enumerate_irreps(params.rank, X, keep_weights=True)
        if truncation_tv_bound(params, census) <= delta:
            return census
        X *= 2
    raise RuntimeError(f"no cutoff up to {X} certifies truncation TV <= {delta}")


def _require_sampling_census(params, census, delta):
    if census.rank != params.rank:
        raise ValueError(f"census rank {census.rank} != params rank {params.rank}")
    if census.weights is None:
        raise ValueError("sampling needs a census built with keep_weights=True")
    tv = truncation_tv_bound(params, census)
    if tv > delta:
        raise ValueError(
            f"census cutoff {census.max_dim} leaves truncation TV {tv:.3g} "
            f"> delta {delta:.3g}; enlarge the census")
    return tv


def _split_composition(c, group, rng, mult):
    """Uniform ordered composition of c over the labels in group (numpy rng)."""
    g = len(group)
    if g == 1:
        mult[group[0]] = mult.get(group[0], 0) + c
        return
    bars = np.sort(rng.choice(c + g - 1, size=g - 1, replace=False))
    prev = -1
    for j, b in enumerate(bars):
        x = int(b) - prev - 1
        if x:
            mult[group[j]] = mult.get(group[j], 0) + x
        prev = int(b)
    x = (c + g - 1) - prev - 1
    if x:
        mult[group[g - 1]] = mult.get(group[g - 1], 0) + x


def boltzmann_sample(params: BoltzmannParams, census: IrrepCensus,
                     rng: np.random.Generator,
                     delta: float = 1e-12) -> Representation:
    """One free (unconditioned) draw from the truncated product measure.

    Per dimension class, the number of weights with nonzero multiplicity is
    Binomial(rho, q^m) since P(X_k >= 1) = q^a; those weights get
    conditional multiplicities 1 + geometric, which is exactly numpy's
    geometric(1 - q^m).
    """
    _require_sampling_census(params, census, delta)
    beta = params.beta
    m, rho, qm, one_minus = _term_arrays(census, beta)
    hits = rng.binomial(census.counts, qm)
    mult = {}
    for i in np.nonzero(hits)[0]:
        group = census.weights[i]
        g, b = len(group), int(hits[i])
        chosen = rng.choice(g, size=b, replace=False) if b < g else np.arange(g)
        values = rng.geometric(one_minus[i], size=b)
        for j, x in zip(chosen, values):
            mult[group[int(j)]] = int(x)
    return Representation(rank=params.rank, mult=mult)


def rejection_uniform_sample(params: BoltzmannParams, census: IrrepCensus,
                             num_samples: int, rng: np.random.Generator,
                             max_attempts: int | None = None,
                             delta: float = 1e-12) -> list:
    """Exactly uniform representations of dimension n by rejection.

    Each attempt draws, per dimension class, the class total
    c_m ~ NegBin(rho(m), 1 - q^m) (the sum of the rho(m) independent
    geometrics), and is accepted when sum m c_m = n; accepted class totals
    are then split uniformly over ordered compositions, which is the exact
    conditional law.  Attempts are vectorized in batches; expected attempts
    per accepted sample is about sqrt(2 pi sigma_n^2).

    Raises RuntimeError when the attempt budget (default
    100 sqrt(2 pi sigma2) per requested sample) is exhausted.
    """
    _require_sampling_census(params, census, delta)
    n = params.n
    expected = math.sqrt(2.0 * math.pi * params.sigma2)
    if max_attempts is None:
        max_attempts = int(math.ceil(100.0 * expected)) * num_samples
    m_vec = census.dims
    rho_vec = census.counts
    p_vec = -np.expm1(-params.beta * m_vec.astype(float))

    out = []
    attempts = 0
    while len(out) < num_samples:
        rows = int(np.clip(2.0 * expected * (num_samples - len(out)),
                           4096, 250_000))
        rows = min(rows, max(max_attempts - attempts, 1))
        mat = rng.negative_binomial(rho_vec, p_vec, size=(rows, len(m_vec)))
        totals = mat @ m_vec
        for ridx in np.nonzero(totals == n)[0]:
            if len(out) >= num_samples:
                break
            row = mat[ridx]
            mult = {}
            for i in np.nonzero(row)[0]:
                _split_composition(int(row[i]), census.weights[i], rng, mult)
            out.append(Representation(rank=params.rank, mult=mult))
        attempts += rows
        if len(out) < num_samples and attempts >= max_attempts:
            raise RuntimeError(
                f"rejection sampler exceeded {max_attempts} attempts "
                f"({len(out)}/{num_samples} accepted)")
    return out


# ---- exact distribution curves under the product measure ----

def exact_prob_max_dim_le(params: BoltzmannParams, census: IrrepCensus, ell):
    """(value, err): Q(largest used dimension <= ell), as
    prod over dims m > ell of (1 - q^m)^rho(m).  True value lies in
    [value - err, value]."""
    beta = params.beta
    m, rho, qm, one_minus = _term_arrays(census, beta)
    mask = m > ell
    logs = float(np.sum(rho[mask] * np.log1p(-qm[mask])))
    t0 = _moment_err(census, beta, 0) / (-np.expm1(-beta * census.max_dim))
    value = math.exp(logs)
    return value, value * -math.expm1(-t0)


def exact_prob_height_le(params: BoltzmannParams, census: IrrepCensus, ell):
    """(value, err): Q(largest weight height <= ell), the product of
    (1 - q^a) over all weights k with L(k - 1) > ell.  Needs a census with
    weights.  True value lies in [value - err, value]."""
    dims, _, h2 = flatten_weights(census)
    beta = params.beta
    mask = h2 > 2.0 * ell
    logs = float(np.sum(np.log1p(-np.exp(-beta * dims[mask].astype(float)))))
    t0 = _moment_err(census, beta, 0) / (-np.expm1(-beta * census.max_dim))
    value = math.exp(logs)
    return value, value * -math.expm1(-t0)


def exact_expected_shape(params: BoltzmannParams, census: IrrepCensus, t):
    """(value, err): E_Q[number of weights k with k_j >= t_j and X_k > 0
    counted with multiplicity], i.e. the expected shape functional
    sum q^a/(1-q^a) over the corner set.  True value in [value, value+err]."""
    dims, K, _ = flatten_weights(census)
    t = np.asarray(t, dtype=float)
    if t.shape != (census.rank,):
        raise ValueError(f"corner point must have {census.rank} coordinates")
    beta = params.beta
    mask = np.all(K >= t[None, :], axis=1)
    a = dims[mask].astype(float)
    value = float(np.sum(np.exp(-beta * a) / (-np.expm1(-beta * a))))
    t0 = _moment_err(census, beta, 0) / (-np.expm1(-beta * census.max_dim))
    return value, t0


def exact_count_mgf(params: BoltzmannParams, census: IrrepCensus, u: float):
    """(value, err): E_Q[exp(u s^nu N)] with N the number of irreducible
    components, as prod (1-q^m)/(1-q^m e^{u s^nu}).  Defined for |u| < 1."""
    if not -1.0 < u < 1.0:
        raise ValueError(f"mgf argument must lie in (-1, 1), got {u}")
    beta = params.beta
    m, rho, qm, one_minus = _term_arrays(census, beta)
    shifted = qm * math.exp(u * beta)
    if np.any(shifted >= 1.0):
        raise ValueError("mgf undefined: e^{u s^nu} q^m reaches 1 on the census")
    logs = float(np.sum(rho * (np.log1p(-qm) - np.log1p(-shifted))))
    edge = math.exp(-beta * census.max_dim) * math.exp(abs(u) * beta)
    t_u = (abs(u) * beta * math.exp(abs(u) * beta) / (1.0 - edge)
           * weighted_tail_bound(census, beta, 0))
    value = math.exp(logs)
    return value, value * math.expm1(t_u)
