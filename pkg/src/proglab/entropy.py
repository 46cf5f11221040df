"""Entropy exponents H_k, the Chernoff majorant and the constants kappa_k.

Every minimum over x > 0 is taken after substituting x = e^t, which turns
x^{-a} (1 + x + ... + x^{k-1}) into a convex log-sum-exp in t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .errors import InvalidArgumentError, NoSolutionError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
LN2 = math.log(2.0)

T_BRACKET = (-40.0, 40.0)
T_TOL = 1e-12


@dataclass(frozen=True)
class MinimizeResult:
    argmin: float
    value: float
    iterations: int


@dataclass(frozen=True)
class EntropyParams:
    k: int
    theta: float

    def __post_init__(self):
        _check_k(self.k)
        _check_theta(self.theta)


def _check_k(k):
    if int(k) != k or k < 2:
        raise InvalidArgumentError(f"k must be an integer >= 2, got {k}")


def _check_theta(theta):
    if not 0.0 <= theta <= 1.0:
        raise InvalidArgumentError(f"theta must lie in [0, 1], got {theta}")


def minimize_1d(
    objective: Callable[[float], float],
    bracket: tuple[float, float],
    tol: float = 1e-10,
    max_iter: int = 500,
) -> MinimizeResult:
    """Golden-section search for the minimum of a unimodal function.

    Stops once the bracket is narrower than ``tol``.  The endpoints are
    compared against the interior estimate so that monotone objectives
    return the correct end of the bracket.
    """
    lo, hi = map(float, bracket)
    if not lo < hi or not math.isfinite(lo) or not math.isfinite(hi):
        raise InvalidArgumentError(f"invalid bracket {bracket}")
    if tol <= 0:
        raise InvalidArgumentError(f"tol must be positive, got {tol}")
    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = objective(x1), objective(x2)
    it = 0
    while b - a > tol and it < max_iter:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = objective(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = objective(x2)
        it += 1
    x, fx = (x1, f1) if f1 <= f2 else (x2, f2)
    for end in (lo, hi):
        fe = objective(end)
        if fe < fx:
            x, fx = end, fe
    return MinimizeResult(argmin=x, value=fx, iterations=it)


def _log_geometric(t: float, k: int, w: float = 1.0) -> float:
    """log(1 + e^{wt} + ... + e^{(k-1)wt}), stable for large |t|."""
    s = w * t
    r = math.exp(-abs(s))
    total = 1.0
    for _ in range(k - 1):
        total = 1.0 + r * total
    return (k - 1) * max(s, 0.0) + math.log(total)


def log_phi(theta: float, t: float, weights: Sequence[float], moduli: Sequence[int]) -> float:
    """Natural log of the Chernoff majorant at x = e^t."""
    deg_max = sum(w * (m - 1) for w, m in zip(weights, moduli))
    return -theta * deg_max * t + sum(_log_geometric(t, m, w) for w, m in zip(weights, moduli))


def phi(theta: float, x: float, weights: Sequence[float], moduli: Sequence[int]) -> float:
    """x^{-theta deg_max} prod_i (1 + x^{w_i} + ... + x^{(m_i - 1) w_i}).

    Returns ``inf`` rather than overflowing; use :func:`log_phi` for huge
    products.
    """
    if x <= 0:
        raise InvalidArgumentError(f"x must be positive, got {x}")
    if len(weights) != len(moduli):
        raise InvalidArgumentError("weights and moduli differ in length")
    if any(w <= 0 for w in weights):
        raise InvalidArgumentError("weights must be positive")
    _check_theta(theta)
    lv = log_phi(theta, math.log(x), weights, moduli)
    return math.exp(lv) if lv < 709.0 else math.inf


def _min_log_power_sum(a: float, k: int) -> MinimizeResult:
    """Minimise -a t + log(1 + e^t + ... + e^{(k-1)t}) over t."""
    return minimize_1d(lambda t: -a * t + _log_geometric(t, k), T_BRACKET, T_TOL)


@lru_cache(maxsize=65536)
def _entropy(k: int, theta: float) -> tuple[float, float]:
    if theta == 0.0:
        return 0.0, 0.0
    if theta == 1.0:
        return 0.0, math.inf
    res = _min_log_power_sum(theta * (k - 1), k)
    return res.value / LN2, math.exp(res.argmin)


def entropy_h(k: int, theta: float) -> float:
    """H_k(theta) = log2 min_{x>0} x^{-theta(k-1)} (1 + x + ... + x^{k-1}).

    H_k(0) = H_k(1) = 0 by continuity.
    """
    _check_k(k)
    _check_theta(theta)
    return _entropy(int(k), float(theta))[0]


def entropy_argmin(k: int, theta: float) -> float:
    """The minimising x behind :func:`entropy_h` (0 or inf at the endpoints)."""
    _check_k(k)
    _check_theta(theta)
    return _entropy(int(k), float(theta))[1]


def binary_entropy(theta: float) -> float:
    """Closed-form -theta log2 theta - (1-theta) log2 (1-theta)."""
    if theta in (0.0, 1.0):
        return 0.0
    return -theta * math.log2(theta) - (1.0 - theta) * math.log2(1.0 - theta)


def kappa_result(k: int) -> MinimizeResult:
    """Minimiser of x^{(1-k)/3} (1 + ... + x^{k-1}), reported in x (not t)."""
    _check_k(k)
    res = _min_log_power_sum((k - 1) / 3.0, int(k))
    return MinimizeResult(argmin=math.exp(res.argmin), value=math.exp(res.value), iterations=res.iterations)


def kappa(k: int) -> float:
    return kappa_result(k).value


def entropy_inverse(k: int, value: float, branch: tuple[float, float], tol: float = 1e-10) -> float:
    """Solve H_k(theta) = value for theta in ``branch`` by bisection.

    H_k must be strictly monotone on the branch (it is on [0, 1/2] and on
    [1/2, 1]).
    """
    _check_k(k)
    lo, hi = map(float, branch)
    _check_theta(lo)
    _check_theta(hi)
    if not lo < hi:
        raise InvalidArgumentError(f"invalid branch {branch}")
    f_lo, f_hi = entropy_h(k, lo) - value, entropy_h(k, hi) - value
    if abs(f_lo) <= tol:
        return lo
    if abs(f_hi) <= tol:
        return hi
    if f_lo * f_hi > 0:
        raise NoSolutionError(
            f"H_{k} = {value} has no solution on [{lo}, {hi}] "
            f"(range [{min(f_lo, f_hi) + value}, {max(f_lo, f_hi) + value}])"
        )
    increasing = f_hi > 0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = entropy_h(k, mid) - value
        if f_mid == 0.0 or hi - lo < 1e-14:
            break
        if (f_mid > 0) == increasing:
            hi = mid
        else:
            lo = mid
    mid = 0.5 * (lo + hi)
    if abs(entropy_h(k, mid) - value) > tol:
        raise NoSolutionError(f"bisection for H_{k} = {value} stalled at {mid}")
    return mid
