"""Exact Weyl-dimension arithmetic for sl_{r+1}(C) highest weights.

A weight is a tuple k = (k_1, ..., k_r) of positive integers (Dynkin labels
shifted by one).  The irreducible module attached to k has dimension

    dim V_k = (1/c_r) * prod_{1 <= l <= j <= r} (k_l + k_{l+1} + ... + k_j),

where c_r = 1! 2! ... r! and the numerator product runs over all consecutive
coordinate sums.  The numerator is homogeneous of degree nu_r = r(r+1)/2 and
the division is always exact.

The height of a weight is L(k) = (1/2) sum_{1 <= l <= j <= r} (k_l + ... + k_j)
= (1/2) sum_j j (r+1-j) k_j, a half-integer; `twice_height` keeps it exact.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence


@lru_cache(maxsize=None)
def superfactorial(r: int) -> int:
    """c_r = 1! * 2! * ... * r!, the Weyl denominator for sl_{r+1}."""
    if r < 0:
        raise ValueError(f"rank must be nonnegative, got {r}")
    out, fact = 1, 1
    for i in range(1, r + 1):
        fact *= i
        out *= fact
    return out


def degree(r: int) -> int:
    """Homogeneity degree nu_r = r(r+1)/2 of the dimension form."""
    return r * (r + 1) // 2


def _check_weight(r, k, positive=True):
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    if len(k) != r:
        raise ValueError(f"weight has {len(k)} coordinates, expected {r}")
    lo = 1 if positive else 0
    for x in k:
        if x < lo:
            raise ValueError(f"weight coordinates must be >= {lo}, got {tuple(k)}")


def weyl_numerator(r: int, k: Sequence):
    """prod over 1 <= l <= j <= r of (k_l + ... + k_j).

    Works for exact integers and for floats; no positivity check so it can
    be evaluated at real points for quadrature.
    """
    # prefix[j] = k_1 + ... + k_j, so each factor is prefix[j] - prefix[l-1]
    prefix = [0]
    for x in k:
        prefix.append(prefix[-1] + x)
    out = 1
    for j in range(1, r + 1):
        for l in range(1, j + 1):
            out = out * (prefix[j] - prefix[l - 1])
    return out


def dim_irrep(r: int, k: Sequence[int]) -> int:
    """Exact dimension of the irreducible sl_{r+1} module with weight k."""
    _check_weight(r, k)
    h = weyl_numerator(r, k)
    c = superfactorial(r)
    q, rem = divmod(h, c)
    if rem:
        raise ArithmeticError(f"Weyl numerator {h} not divisible by {c} at {tuple(k)}")
    return q


def dim_poly(r: int, y: Sequence[float]) -> float:
    """The dimension form evaluated at a real point y > 0 (for quadrature)."""
    return weyl_numerator(r, y) / superfactorial(r)


def twice_height(r: int, k: Sequence[int]) -> int:
    """2 L(k) = sum_j j (r+1-j) k_j, exact."""
    _check_weight(r, k, positive=False)
    return sum(j * (r + 1 - j) * x for j, x in enumerate(k, start=1))


def height_functional(r: int, k: Sequence[int]) -> float:
    """L(k), a half-integer; use `twice_height` to stay in exact arithmetic."""
    return twice_height(r, k) / 2.0


# fast closed forms used by the census enumeration hot loop
def _dim2(k1: int, k2: int) -> int:
    return k1 * k2 * (k1 + k2) // 2


def _dim3(k1: int, k2: int, k3: int) -> int:
    return k1 * k2 * k3 * (k1 + k2) * (k2 + k3) * (k1 + k2 + k3) // 12
