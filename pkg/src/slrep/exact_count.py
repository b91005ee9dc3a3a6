"""Exact counting and exact-uniform sampling of sl_{r+1} representations.

A representation of total dimension n is a multiset of irreducible modules
whose dimensions add to n, i.e. a finitely supported multiplicity function
on highest weights.  Writing rho(m) for the number of weights of dimension
m, the counting generating function is prod_m (1 - t^m)^(-rho(m)), and the
counts p(n) satisfy the Euler-transform recurrence

    n p(n) = sum_{j=1}^{n} c(j) p(n-j),   c(j) = sum_{d | j} d rho(d),

which is how `count_representations` fills its table (exact integers, the
division by n never leaves a remainder).  `count_by_convolution` is an
independent second route that multiplies the product out term by term; the
two must agree coefficient for coefficient.

`uniform_sample` draws an exactly uniform representation of dimension n via
a layered DP over dimension classes: the number of multisets using only the
i smallest distinct dimensions is

    P_i(v) = sum_c binom(c + rho_i - 1, rho_i - 1) P_{i-1}(v - c m_i),

and a top-down pass picks each class total c with its exact posterior
weight, then splits c uniformly over the rho_i weights by stars and bars.
All randomness comes from `random.Random`, whose big-int randrange keeps
the draw exact at any table size.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .census import BudgetError, IrrepCensus, enumerate_irreps
from .weights import dim_irrep


@dataclass
class Representation:
    """Multiset of highest weights; mult maps weight tuple -> multiplicity."""

    rank: int
    mult: dict

    def total_dim(self) -> int:
        return sum(dim_irrep(self.rank, k) * x for k, x in self.mult.items())

    def num_irreps(self) -> int:
        return sum(self.mult.values())


@dataclass
class CountTable:
    """counts[v] = number of representations of total dimension v; counts[0] = 1."""

    rank: int
    max_total: int
    counts: list
    census: IrrepCensus
    _layers: dict = field(default=None, repr=False, compare=False)


def _census_for(r, n, census, keep_weights):
    if census is None:
        return enumerate_irreps(r, max(n, 1), keep_weights=keep_weights)
    if census.max_dim < n:
        raise ValueError(f"census cutoff {census.max_dim} below requested total {n}")
    if census.rank != r:
        raise ValueError(f"census has rank {census.rank}, expected {r}")
    return census


def count_representations(r: int, n: int, census: IrrepCensus | None = None) -> CountTable:
    """Exact table of representation counts for totals 0..n."""
    if n < 0:
        raise ValueError(f"total dimension must be >= 0, got {n}")
    census = _census_for(r, n, census, keep_weights=True)

    # c[j] = sum of d*rho(d) over divisors d <= n of j, by sieving
    c = [0] * (n + 1)
    for m, rho in zip(census.dims, census.counts):
        m, rho = int(m), int(rho)
        if m > n:
            break
        add = m * rho
        for j in range(m, n + 1, m):
            c[j] += add

    p = [0] * (n + 1)
    p[0] = 1
    for v in range(1, n + 1):
        acc = 0
        for j in range(1, v + 1):
            acc += c[j] * p[v - j]
        q, rem = divmod(acc, v)
        if rem:
            raise ArithmeticError(f"Euler recurrence not divisible at v={v}")
        p[v] = q
    return CountTable(rank=r, max_total=n, counts=p, census=census)


def count_by_convolution(r: int, n: int, census: IrrepCensus | None = None) -> list:
    """Second exact route: multiply prod_m (1-t^m)^(-rho(m)) out directly."""
    if n < 0:
        raise ValueError(f"total dimension must be >= 0, got {n}")
    census = _census_for(r, n, census, keep_weights=False)
    p = [0] * (n + 1)
    p[0] = 1
    for m, rho in zip(census.dims, census.counts):
        m, rho = int(m), int(rho)
        if m > n:
            break
        for _ in range(rho):
            # in-place multiplication by 1/(1 - t^m)
            for v in range(m, n + 1):
                p[v] += p[v - m]
    return p


def counts_excluding_one_weight(table: CountTable, a: int) -> list:
    """Counts with one designated weight of dimension a removed from the
    alphabet: g(v) = p(v) - p(v - a), exact for every v."""
    if a < 1:
        raise ValueError(f"dimension must be >= 1, got {a}")
    p = table.counts
    return [p[v] - (p[v - a] if v >= a else 0) for v in range(len(p))]


# ---- exact-uniform sampling ----

def _build_layers(table: CountTable, budget_cells: int):
    """Layered counts over dimension classes, cached on the table."""
    if table._layers is not None:
        return table._layers
    census = table.census
    if census.weights is None:
        raise ValueError("uniform sampling needs a census built with keep_weights=True")
    n = table.max_total
    classes = [(int(m), int(rho)) for m, rho in zip(census.dims, census.counts)
               if int(m) <= n]
    cells = (len(classes) + 1) * (n + 1)
    if cells > budget_cells:
        raise BudgetError(
            f"uniform-sampling DP needs {cells} cells, budget is {budget_cells}")
    layers = [[1] + [0] * n]
    for m, rho in classes:
        prev = layers[-1]
        cur = [0] * (n + 1)
        for v in range(n + 1):
            acc = 0
            for c in range(v // m + 1):
                acc += math.comb(c + rho - 1, rho - 1) * prev[v - c * m]
            cur[v] = acc
        layers.append(cur)
    if layers[-1][n] != table.counts[n]:
        raise ArithmeticError("layered DP disagrees with the Euler-transform table")
    table._layers = (classes, layers)
    return table._layers


def _split_stars_and_bars(c: int, labels, rng: random.Random):
    """Uniform multiset of size c over the given labels, as {label: count}."""
    g = len(labels)
    if g == 1:
        return {labels[0]: c} if c else {}
    bars = sorted(rng.sample(range(c + g - 1), g - 1))
    out = {}
    prev = -1
    for j, b in enumerate(bars):
        x = b - prev - 1
        if x:
            out[labels[j]] = x
        prev = b
    x = (c + g - 1) - prev - 1
    if x:
        out[labels[g - 1]] = x
    return out


def uniform_sample(table: CountTable, n: int, rng: random.Random,
                   budget_cells: int = 2_000_000) -> Representation:
    """Exactly uniform representation of total dimension n.

    Raises ValueError when no representation of dimension n exists and
    BudgetError when the layered DP would exceed budget_cells.
    """
    if not 0 <= n <= table.max_total:
        raise ValueError(f"total {n} outside table range [0, {table.max_total}]")
    if table.counts[n] == 0:
        raise ValueError(f"no representation has total dimension {n}")
    classes, layers = _build_layers(table, budget_cells)
    mult = {}
    v = n
    for i in range(len(classes), 0, -1):
        m, rho = classes[i - 1]
        u = rng.randrange(layers[i][v])
        c = 0
        while True:
            w = math.comb(c + rho - 1, rho - 1) * layers[i - 1][v - c * m]
            if u < w:
                break
            u -= w
            c += 1
        if c:
            # census.dims may include dims > n; classes is the aligned prefix
            group = table.census.weights[i - 1]
            mult.update(_split_stars_and_bars(c, group, rng))
            v -= c * m
    return Representation(rank=table.rank, mult=mult)
