"""Exact counts of low-degree monomials and the entropy bound on them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .entropy import entropy_h, log_phi, minimize_1d
from .errors import InvalidArgumentError


def as_fraction(x) -> Fraction:
    """Exact rational for ``x``; floats snap to the nearest fraction with denominator <= 1e9."""
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    return Fraction(x)


@dataclass(frozen=True)
class DegreeCountQuery:
    """Monomials prod t_i^{l_i} with 0 <= l_i < degrees_per_var[i] and sum w_i l_i <= D."""

    degrees_per_var: Sequence[int]
    D: Fraction | int | float | str
    weights: Sequence[Fraction | int | float | str] | None = field(default=None)

    def __post_init__(self):
        k = tuple(int(x) for x in self.degrees_per_var)
        if any(x < 1 for x in k):
            raise InvalidArgumentError("exponent ranges must be >= 1")
        w = self.weights if self.weights is not None else (1,) * len(k)
        w = tuple(as_fraction(x) for x in w)
        if len(w) != len(k):
            raise InvalidArgumentError("weights and degrees_per_var differ in length")
        if any(x <= 0 for x in w):
            raise InvalidArgumentError("weights must be positive")
        object.__setattr__(self, "degrees_per_var", k)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "D", as_fraction(self.D))


def _integer_weights(weights: Sequence[Fraction], cap: Fraction) -> tuple[list[int], int]:
    denom = math.lcm(*(w.denominator for w in weights), cap.denominator) if weights else cap.denominator
    return [int(w * denom) for w in weights], math.floor(cap * denom)


def degree_distribution(degrees_per_var: Sequence[int], int_weights: Sequence[int], cap: int) -> list[int]:
    """dist[d] = number of exponent vectors with integer weighted degree d, for d <= cap."""
    dist = [0] * (cap + 1)
    dist[0] = 1
    for k, w in zip(degrees_per_var, int_weights):
        new = [0] * (cap + 1)
        for d, c in enumerate(dist):
            if not c:
                continue
            for j in range(k):
                e = d + j * w
                if e > cap:
                    break
                new[e] += c
        dist = new
    return dist


def count_monomials(q: DegreeCountQuery) -> int:
    """|{l : 0 <= l_i < k_i, sum w_i l_i <= D}| as an exact integer."""
    if q.D < 0:
        return 0
    int_w, cap = _integer_weights(q.weights, q.D)
    total_deg = sum(w * (k - 1) for w, k in zip(int_w, q.degrees_per_var))
    if cap >= total_deg:
        return math.prod(q.degrees_per_var)
    return sum(degree_distribution(q.degrees_per_var, int_w, cap))


def count_above(q: DegreeCountQuery) -> int:
    """Monomials of weighted degree strictly greater than D (direct DP, not by complement)."""
    int_w, cap = _integer_weights(q.weights, q.D)
    total_deg = sum(w * (k - 1) for w, k in zip(int_w, q.degrees_per_var))
    dist = degree_distribution(q.degrees_per_var, int_w, total_deg)
    return sum(c for d, c in enumerate(dist) if d > cap)


def codim_uniform(n: int, k: int, theta: float | Fraction) -> int:
    """codim X(theta) in F_2[C_k^n] with unit weights: monomials of degree <= theta n (k-1)."""
    return count_monomials(DegreeCountQuery((k,) * n, as_fraction(theta) * n * (k - 1)))


def exact_log2(count: int) -> float:
    """log2 of a positive big integer (math.log2 handles arbitrary ints)."""
    if count <= 0:
        return -math.inf
    return math.log2(count)


@dataclass(frozen=True)
class ChernoffBound:
    log2_bound: float

    @property
    def value(self) -> float:
        return 2.0 ** self.log2_bound if self.log2_bound < 1024 else math.inf


def chernoff_codim_bound(n: int, k: int, theta: float) -> ChernoffBound:
    """The bound codim X(theta) <= 2^{n H_k(theta)}."""
    return ChernoffBound(n * entropy_h(k, theta))


def codim_weighted(degrees_per_var: Sequence[int], theta, weights=None) -> int:
    """codim X(theta): monomials of weighted degree <= theta * deg_max."""
    if weights is None:
        weights = (1,) * len(degrees_per_var)
    w = [as_fraction(x) for x in weights]
    deg_max = sum(x * (k - 1) for x, k in zip(w, degrees_per_var))
    return count_monomials(DegreeCountQuery(degrees_per_var, as_fraction(theta) * deg_max, w))


def chernoff_log2_bound_weighted(degrees_per_var: Sequence[int], theta: float, weights=None) -> float:
    """log2 of min over x in (0, 1] of the Chernoff majorant."""
    if weights is None:
        weights = (1.0,) * len(degrees_per_var)
    weights = [float(x) for x in weights]
    res = minimize_1d(lambda t: log_phi(theta, t, weights, degrees_per_var), (-40.0, 0.0), 1e-12)
    return res.value / math.log(2.0)
