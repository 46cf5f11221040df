"""Numerical constants of the C_4^n and C_8^n progression-free bounds.

``gamma_clp`` is the exponent with r_3(C_4^n) <= 4^{gamma n}; it is unrelated
to ``log2_gamma_coset``, the coset-count exponent in the C_8^n system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .entropy import entropy_h, entropy_inverse, kappa, minimize_1d
from .errors import NoSolutionError, SolverFailure

QUARTER, HALF = 0.25, 0.5


def pair_entropy(x: float) -> float:
    """H_2(x) + H_2(1 - 2x), concave on [1/4, 1/2]."""
    return entropy_h(2, x) + entropy_h(2, 1.0 - 2.0 * x)


@dataclass(frozen=True)
class X0Result:
    x0: float
    max_value: float


def solve_x0(tol: float = 1e-10) -> X0Result:
    """Maximiser of H_2(x) + H_2(1 - 2x) on [1/4, 1/2]."""
    res = minimize_1d(lambda x: -pair_entropy(x), (QUARTER, HALF), tol)
    return X0Result(x0=res.argmin, max_value=-res.value)


def clp_gamma(tol: float = 1e-10) -> float:
    """(1/2) max_{0<eps<1/4} H_2(1/2 - eps) + H_2(2 eps)."""
    res = minimize_1d(lambda e: -(entropy_h(2, HALF - e) + entropy_h(2, 2.0 * e)), (0.0, QUARTER), tol)
    return -res.value / 2.0


@dataclass(frozen=True)
class BoundSystem:
    """A point of the C_8^n constraint system, all quantities as log2."""

    theta: float
    rho: float
    log2_alpha: float
    log2_beta: float
    log2_gamma_coset: float

    @property
    def bound(self) -> float:
        return 2.0 ** (self.log2_alpha + self.log2_beta + self.log2_gamma_coset)

    def violations(self, tol: float = 1e-9) -> list[str]:
        """Names of the constraints that fail by more than ``tol``."""
        out = []
        if not QUARTER - tol <= self.theta <= HALF + tol:
            out.append("theta range")
        if not QUARTER - tol <= self.rho <= HALF + tol:
            out.append("rho range")
        if out:
            return out
        if abs(self.log2_beta - entropy_h(2, 1.0 - 2.0 * self.theta)) > tol:
            out.append("beta equation")
        if self.log2_alpha > entropy_h(2, self.theta) + tol:
            out.append("alpha inequality")
        if abs(self.log2_gamma_coset + self.log2_beta - entropy_h(4, 1.0 - 2.0 * self.rho)) > tol:
            out.append("gamma-beta equation")
        if self.log2_alpha + self.log2_beta > entropy_h(4, self.rho) + tol:
            out.append("alpha-beta inequality")
        return out


def rho_from_first(theta: float) -> float:
    """rho in [0, 1/2] with H_4(rho) = H_2(theta) + H_2(1 - 2 theta)."""
    return entropy_inverse(4, pair_entropy(theta), (0.0, HALF))


def rho_from_second(theta: float, log2_gamma_coset: float = 1.0) -> float:
    """rho in [1/4, 1/2] with H_4(1 - 2 rho) = log2_gamma + H_2(1 - 2 theta)."""
    target = log2_gamma_coset + entropy_h(2, 1.0 - 2.0 * theta)
    return (1.0 - entropy_inverse(4, min(target, 2.0), (0.0, HALF))) / 2.0


def optimality_residuals(theta: float, rho: float) -> tuple[float, float]:
    r1 = entropy_h(4, rho) - pair_entropy(theta)
    r2 = entropy_h(4, 1.0 - 2.0 * rho) - 1.0 - entropy_h(2, 1.0 - 2.0 * theta)
    return r1, r2


@dataclass
class SolverReport:
    x0: float
    gamma_clp: float
    kappa4: float
    theta1: float
    rho1: float
    bound_c8: float
    residuals: list[float]
    tolerance: float
    constants: dict[str, float] = field(default_factory=dict)
    second_root_above_half: bool = False

    @property
    def system(self) -> BoundSystem:
        log2_beta = entropy_h(2, 1.0 - 2.0 * self.theta1)
        return BoundSystem(self.theta1, self.rho1, entropy_h(2, self.theta1), log2_beta, 1.0)

    def to_dict(self) -> dict:
        return {
            "x0": self.x0,
            "gamma_clp": self.gamma_clp,
            "kappa4": self.kappa4,
            "theta1": self.theta1,
            "rho1": self.rho1,
            "bound_c8": self.bound_c8,
            "residuals": list(self.residuals),
            "tolerance": self.tolerance,
            "constants": dict(self.constants),
            "second_root_above_half": self.second_root_above_half,
        }


def _scan_upper_half(points: int = 100) -> bool:
    """Look for a sign change of the branch difference on (1/2, 1], reading H_2(1 - 2t) as H_2(2t - 1)."""

    def diff(t):
        v = entropy_h(2, t) + entropy_h(2, 2.0 * t - 1.0)
        try:
            r1 = entropy_inverse(4, v, (0.0, HALF))
            r2 = (1.0 - entropy_inverse(4, 1.0 + entropy_h(2, 2.0 * t - 1.0), (0.0, HALF))) / 2.0
        except NoSolutionError:
            return None
        return r1 - r2

    prev = None
    for i in range(1, points + 1):
        d = diff(HALF + HALF * i / points)
        if d is None:
            continue
        if prev is not None and (d == 0 or (d > 0) != (prev > 0)):
            return True
        prev = d
    return False


def solve_c8_system(tol: float = 1e-12, x0: float | None = None, scan_upper_half: bool = False) -> SolverReport:
    """Solve H_4(rho) = H_2(theta) + H_2(1-2theta), H_4(1-2rho) = 1 + H_2(1-2theta).

    Bisection in theta on [x0, 1/2] of the gap between the two rho-branches:
    the first decreases in theta, the second increases.
    """
    if x0 is None:
        x0 = solve_x0().x0

    def gap(theta):
        return rho_from_first(theta) - rho_from_second(theta)

    lo, hi = x0, HALF
    g_lo, g_hi = gap(lo), gap(hi)
    if g_lo == 0:
        hi = lo
    elif g_hi == 0:
        lo = hi
    elif (g_lo > 0) == (g_hi > 0):
        raise SolverFailure(f"branch gap does not change sign on [{lo}, {hi}]: {g_lo}, {g_hi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        g = gap(mid)
        if g == 0:
            lo = hi = mid
            break
        if (g > 0) == (g_lo > 0):
            lo, g_lo = mid, g
        else:
            hi = mid
    theta1 = 0.5 * (lo + hi)
    rho1 = rho_from_first(theta1)
    if not QUARTER <= rho1 <= HALF:
        raise SolverFailure(f"root rho = {rho1} lies outside [1/4, 1/2]")
    residuals = list(optimality_residuals(theta1, rho1))
    bound = 2.0 * 2.0 ** entropy_h(4, rho1)
    k4 = kappa(4)
    return SolverReport(
        x0=x0,
        gamma_clp=clp_gamma(),
        kappa4=k4,
        theta1=theta1,
        rho1=rho1,
        bound_c8=bound,
        residuals=residuals,
        tolerance=tol,
        constants={
            "bound_c4_rk": k4 / 4.0,
            "bound_c8_rk": bound / 8.0,
            "two_kappa4": 2.0 * k4,
        },
        second_root_above_half=_scan_upper_half() if scan_upper_half else False,
    )


def headline_constants(tol: float = 1e-12) -> SolverReport:
    """Everything at once, including the upper-half root scan."""
    x0 = solve_x0()
    report = solve_c8_system(tol, x0=x0.x0, scan_upper_half=True)
    report.constants.update(
        {
            "x0_max_value": x0.max_value,
            "log2_kappa4": math.log2(report.kappa4),
            "four_pow_gamma": 4.0 ** report.gamma_clp,
            "clp_rank_factor": 4.0 ** -(1.0 - report.gamma_clp),
        }
    )
    return report


def best_objective(theta: float, log2_gamma_coset: float = 1.0) -> float | None:
    """Largest log2(alpha beta gamma) allowed by the constraint system at (theta, gamma).

    ``None`` when rho falls outside [1/4, 1/2] or the equation for rho has
    no solution.
    """
    log2_beta = entropy_h(2, 1.0 - 2.0 * theta)
    target = log2_gamma_coset + log2_beta
    if target > 2.0:
        return None
    try:
        rho = (1.0 - entropy_inverse(4, target, (0.0, HALF))) / 2.0
    except NoSolutionError:
        return None
    if not QUARTER <= rho <= HALF:
        return None
    log2_alpha = min(entropy_h(2, theta), entropy_h(4, rho) - log2_beta)
    return log2_gamma_coset + log2_alpha + log2_beta
