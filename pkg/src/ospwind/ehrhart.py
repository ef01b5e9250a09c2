# SPDX-License-Identifier: MPL-2.0
"""Exact Ehrhart machinery for cube slices I_{r,s}^n = {x in [0, r]^n : sum x_i = s}.

All three families are slices (hypersimplex: r = 1; dilated simplex: s = r), of
dimension n - 1 inside the hyperplane sum x_i = s, so the Ehrhart series has
denominator (1 - x)^n and the h*-vector is read off the first n lattice counts:

    h*_j = sum_{i=0}^{j} (-1)^i C(n, i) L(j - i),    j = 0, ..., n - 1.

Every quantity is a Python int; nothing here ever rounds.
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache

from .errors import InvalidParams, LengthMismatch, NegativeCoefficient
from .logging import get_logger
from .models import EhrhartCounts, HStarVector

__all__ = [
    "binomial",
    "ehrhart_counts",
    "eulerian",
    "hstar_from_counts",
    "hstar_simplex",
    "hstar_slice",
    "hypersimplex_volume",
    "lattice_count_slice",
    "simplex_lattice_count",
    "slice_volumes",
    "worpitzky_check",
]

logger = get_logger(__name__).bind(component="ehrhart")


def binomial(m: int, k: int) -> int:
    """C(m, k), zero when k > m or k < 0."""

    if m < 0:
        raise InvalidParams(f"binomial needs m >= 0, got m={m}")
    if k < 0 or k > m:
        return 0
    return math.comb(m, k)


def lattice_count_slice(r: int, s: int, n: int, t: int) -> int:
    """#{x in Z^n : 0 <= x_i <= t*r, sum x_i = t*s}.

    Coefficient of x^{ts} in (1 + x + ... + x^{tr})^n, built one factor at a time with
    prefix sums and truncated at degree ts.
    """

    if r < 1 or n < 1 or not 0 <= s <= r * n or t < 0:
        raise InvalidParams(
            f"lattice count needs r, n >= 1, 0 <= s <= rn, t >= 0; got {r, s, n, t}"
        )
    target, width = t * s, t * r
    coeffs = [1] + [0] * target
    for _ in range(n):
        prefix = list(itertools.accumulate(coeffs, initial=0))
        coeffs = [prefix[j + 1] - prefix[max(0, j - width)] for j in range(target + 1)]
    return coeffs[target]


def ehrhart_counts(r: int, s: int, n: int) -> EhrhartCounts:
    return EhrhartCounts(
        r=r, s=s, n=n, values=tuple(lattice_count_slice(r, s, n, t) for t in range(n))
    )


def hstar_from_counts(counts: EhrhartCounts, n: int) -> HStarVector:
    """h*-vector of an (n-1)-dimensional polytope from its counts L(0..n-1)."""

    values = counts.values
    if len(values) != n:
        raise LengthMismatch(f"need exactly {n} lattice counts, got {len(values)}")
    coeffs = tuple(
        sum((-1) ** i * binomial(n, i) * values[j - i] for i in range(j + 1)) for j in range(n)
    )
    if any(c < 0 for c in coeffs):
        raise NegativeCoefficient(
            f"counts {values} give h* = {coeffs}; a lattice polytope of dimension {n - 1} "
            "cannot have negative coefficients"
        )
    if coeffs[0] != 1:
        raise NegativeCoefficient(f"h*_0 must be 1, got {coeffs[0]}")
    return HStarVector(coeffs=coeffs)


def hstar_slice(r: int, s: int, n: int) -> HStarVector:
    """h*-vector of I_{r,s}^n by lattice-point counting (length n, zeros kept)."""

    if r < 1 or n < 1 or not 1 <= s <= r * n - 1:
        raise InvalidParams(f"slice needs r, n >= 1 and 1 <= s <= rn-1; got r={r}, s={s}, n={n}")
    hstar = hstar_from_counts(ehrhart_counts(r, s, n), n)
    logger.debug("hstar-slice", r=r, s=s, n=n, hstar=list(hstar.coeffs))
    return hstar


def simplex_lattice_count(r: int, n: int, t: int) -> int:
    """Closed-form Ehrhart polynomial of the dilated simplex: C(n - 1 + rt, n - 1)."""

    if r < 1 or n < 1 or t < 0:
        raise InvalidParams(f"simplex count needs r, n >= 1 and t >= 0; got {r, n, t}")
    return binomial(n - 1 + r * t, n - 1)


def hstar_simplex(r: int, n: int) -> HStarVector:
    """Numerator of sum_t C(n - 1 + rt, n - 1) x^t over (1 - x)^n."""

    if r < 1 or n < 2:
        raise InvalidParams(f"dilated simplex needs r >= 1 and n >= 2; got r={r}, n={n}")
    coeffs = tuple(
        sum(
            (-1) ** i * binomial(n, i) * simplex_lattice_count(r, n, j - i)
            for i in range(j + 1)
        )
        for j in range(n)
    )
    return HStarVector(coeffs=coeffs)


@lru_cache(maxsize=None)
def eulerian(m: int, k: int) -> int:
    """A(m, k): permutations of {1..m} with exactly k descents."""

    if m < 0:
        raise InvalidParams(f"eulerian needs m >= 0, got m={m}")
    if m == 0:
        return 1 if k == 0 else 0
    if k < 0 or k > m - 1:
        return 0
    return (k + 1) * eulerian(m - 1, k) + (m - k) * eulerian(m - 1, k - 1)


def hypersimplex_volume(a: int, b: int) -> int:
    """Normalized volume of B_{a,b}: the Eulerian number A(a + b - 1, a - 1)."""

    return eulerian(a + b - 1, a - 1)


def worpitzky_check(m: int, p: int) -> bool:
    """Check m^p = sum_{k=0}^{p-1} A(p, k) C(m + k, p)."""

    return m**p == sum(eulerian(p, k) * binomial(m + k, p) for k in range(p))


def slice_volumes(r: int, n: int) -> tuple[int, ...]:
    """Relative volumes of the slices I_{r,s}^n for s = 1, ..., rn - 1."""

    return tuple(hstar_slice(r, s, n).total for s in range(1, r * n))
