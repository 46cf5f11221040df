"""The group algebra F_2[G] in the group basis and in the nilpotent monomial basis.

For G = prod C_{2^{m_i}} the substitution tau_i = 1 + g_i identifies F_2[G]
with F_2[tau_1, ..., tau_n] / (tau_i^{2^{m_i}}).  Elements are stored
sparsely as the set of basis vectors with coefficient 1; products are
computed on dense 0/1 arrays.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.signal import fftconvolve

from ._parallel import ordered_map
from .errors import InvalidArgumentError, InvalidElementError
from .groups import GroupSpec

DEGREE_TOL = 1e-9


class Basis(enum.Enum):
    GROUP = "group"
    MONOMIAL = "monomial"


@dataclass(frozen=True)
class RingElement:
    """An element of F_2[G]: the exponent vectors whose coefficient is 1."""

    basis: Basis
    support: frozenset[tuple[int, ...]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(tuple(v) for v in self.support))

    @classmethod
    def zero(cls, basis: Basis) -> "RingElement":
        return cls(basis, frozenset())

    @classmethod
    def one(cls, spec: GroupSpec, basis: Basis) -> "RingElement":
        return cls(basis, frozenset([spec.identity]))

    @classmethod
    def from_terms(cls, basis: Basis, terms: Iterable[Sequence[int]]) -> "RingElement":
        """Sum of basis vectors over F_2 (repeated terms cancel)."""
        acc: set[tuple[int, ...]] = set()
        for t in terms:
            acc ^= {tuple(t)}
        return cls(basis, frozenset(acc))

    def is_zero(self) -> bool:
        return not self.support

    def __add__(self, other: "RingElement") -> "RingElement":
        _same_basis(self, other)
        return RingElement(self.basis, self.support ^ other.support)

    def __len__(self):
        return len(self.support)


def _same_basis(a: RingElement, b: RingElement):
    if a.basis is not b.basis:
        raise InvalidArgumentError(f"basis mismatch: {a.basis.value} vs {b.basis.value}")


def _validate(spec: GroupSpec, a: RingElement):
    for v in a.support:
        if len(v) != spec.n or any(not 0 <= x < m for x, m in zip(v, spec.moduli)):
            raise InvalidElementError(f"exponent vector {v} invalid for group {spec}")
    if a.basis is Basis.MONOMIAL and not spec.is_two_group():
        raise InvalidArgumentError(f"monomial basis needs a 2-group, got {spec}")


def to_dense(spec: GroupSpec, a: RingElement) -> np.ndarray:
    arr = np.zeros(spec.moduli, dtype=np.uint8)
    for v in a.support:
        arr[v] = 1
    return arr


def from_dense(basis: Basis, arr: np.ndarray) -> RingElement:
    return RingElement(basis, frozenset(tuple(int(x) for x in idx) for idx in np.argwhere(arr & 1)))


def _dense_mul(spec: GroupSpec, basis: Basis, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if spec.n == 0:
        return (x & y).astype(np.uint8)
    if not x.any() or not y.any():
        return np.zeros(spec.moduli, dtype=np.uint8)
    full = np.rint(fftconvolve(x.astype(np.float64), y.astype(np.float64))).astype(np.int64)
    if basis is Basis.MONOMIAL:
        out = full[tuple(slice(0, m) for m in spec.moduli)]
    else:
        out = full
        for axis, m in enumerate(spec.moduli):
            head = np.take(out, range(m), axis=axis)
            tail = np.take(out, range(m, 2 * m - 1), axis=axis)
            pad = [(0, 0)] * out.ndim
            pad[axis] = (0, 1)
            out = head + np.pad(tail, pad)
    return (out & 1).astype(np.uint8)


def ring_mul(spec: GroupSpec, a: RingElement, b: RingElement) -> RingElement:
    """Product in F_2[G], computed in the common basis of ``a`` and ``b``.

    Monomial basis: truncated polynomial product (tau_i^{m_i} = 0).
    Group basis: convolution over G.
    """
    _same_basis(a, b)
    _validate(spec, a)
    _validate(spec, b)
    return from_dense(a.basis, _dense_mul(spec, a.basis, to_dense(spec, a), to_dense(spec, b)))


@lru_cache(maxsize=None)
def _pascal_mod2(k: int) -> np.ndarray:
    p = np.zeros((k, k), dtype=np.int64)
    for lam in range(k):
        for j in range(lam + 1):
            p[lam, j] = math.comb(lam, j) & 1
    return p


def _dense_change_basis(spec: GroupSpec, arr: np.ndarray) -> np.ndarray:
    out = arr.astype(np.int64)
    for axis, m in enumerate(spec.moduli):
        # coefficient of basis vector j collects C(lam, j) from every lam
        out = np.moveaxis(np.tensordot(out, _pascal_mod2(m), axes=([axis], [0])), -1, axis) & 1
    return out.astype(np.uint8)


def change_basis(spec: GroupSpec, a: RingElement) -> RingElement:
    """Convert between bases via tau_i = 1 + g_i (equivalently g_i = 1 + tau_i)."""
    if not spec.is_two_group():
        raise InvalidArgumentError(f"monomial basis needs a 2-group, got {spec}")
    _validate(spec, a)
    target = Basis.MONOMIAL if a.basis is Basis.GROUP else Basis.GROUP
    return from_dense(target, _dense_change_basis(spec, to_dense(spec, a)))


@dataclass(frozen=True)
class SubspaceSpec:
    """X(theta): span of the monomials of weighted degree > theta * deg_max."""

    moduli: tuple[int, ...]
    weights: tuple[float, ...]
    theta: float

    @property
    def deg_max(self) -> float:
        return sum(w * (m - 1) for w, m in zip(self.weights, self.moduli))

    @property
    def threshold(self) -> float:
        return self.theta * self.deg_max

    def degree(self, lam: Sequence[int]) -> float:
        return sum(w * x for w, x in zip(self.weights, lam))

    def contains(self, lam: Sequence[int]) -> bool:
        return self.degree(lam) > self.threshold + DEGREE_TOL

    def degree_array(self) -> np.ndarray:
        grids = np.meshgrid(*(np.arange(m) for m in self.moduli), indexing="ij")
        deg = np.zeros(self.moduli, dtype=np.float64)
        for w, g in zip(self.weights, grids):
            deg = deg + w * g
        return deg

    def member_mask(self) -> np.ndarray:
        return self.degree_array() > self.threshold + DEGREE_TOL

    def members(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in v) for v in np.argwhere(self.member_mask())]

    def codim(self) -> int:
        return math.prod(self.moduli) - int(self.member_mask().sum())


def subspace_X(spec: GroupSpec, theta: float, weights: Sequence[float] | None = None) -> SubspaceSpec:
    if not 0.0 <= theta <= 1.0:
        raise InvalidArgumentError(f"theta must lie in [0, 1], got {theta}")
    if weights is None:
        weights = (1.0,) * spec.n
    weights = tuple(float(w) for w in weights)
    if len(weights) != spec.n:
        raise InvalidArgumentError("one weight per cyclic factor is required")
    if any(w <= 0 for w in weights):
        raise InvalidArgumentError("weights must be positive")
    sub = SubspaceSpec(spec.moduli, weights, float(theta))
    if sub.deg_max <= 0:
        raise InvalidArgumentError(f"deg_max must be positive for {spec}")
    return sub


def random_element(sub: SubspaceSpec, rng: np.random.Generator) -> np.ndarray:
    """Dense random member of the span: each monomial kept with probability 1/2."""
    mask = sub.member_mask()
    return (mask & (rng.random(sub.moduli) < 0.5)).astype(np.uint8)


@dataclass(frozen=True)
class ZeroProductReport:
    all_zero: bool
    samples: int
    nonzero_count: int
    counterexample: tuple[RingElement, ...] | None = None
    product: RingElement | None = None


def verify_zero_product(
    spec: GroupSpec, subspaces: Sequence[SubspaceSpec], samples: int = 100, seed: int = 0
) -> ZeroProductReport:
    """Multiply random members of each subspace and report whether every product vanishes.

    Samples are drawn sequentially from ``seed`` before evaluation, so the
    report does not depend on how the products are scheduled.
    """
    if not subspaces:
        raise InvalidArgumentError("at least one subspace is required")
    if not spec.is_two_group():
        raise InvalidArgumentError(f"monomial basis needs a 2-group, got {spec}")
    ws = {s.weights for s in subspaces}
    if len(ws) != 1 or any(s.moduli != spec.moduli for s in subspaces):
        raise InvalidArgumentError("subspaces must share the group and the weights")
    rng = np.random.default_rng(seed)
    draws = [[random_element(s, rng) for s in subspaces] for _ in range(samples)]

    def evaluate(factors):
        acc = factors[0]
        for f in factors[1:]:
            if not acc.any():
                break
            acc = _dense_mul(spec, Basis.MONOMIAL, acc, f)
        return acc

    products = ordered_map(evaluate, draws)
    bad = [i for i, p in enumerate(products) if p.any()]
    if not bad:
        return ZeroProductReport(True, samples, 0)
    i = bad[0]
    return ZeroProductReport(
        False,
        samples,
        len(bad),
        counterexample=tuple(from_dense(Basis.MONOMIAL, f) for f in draws[i]),
        product=from_dense(Basis.MONOMIAL, products[i]),
    )
