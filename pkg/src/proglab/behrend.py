"""Sphere constructions of progression-free sets in (Z/8Z)^n and (Z/4Z)^n.

Modulus 8: points of {0,...,4}^n with sum (x_i - 2)^2 = 2n.
Modulus 4: points of {0,1,2}^n with sum (x_i - 1)^2 = R, where R defaults to
the most populated sphere (smallest R on ties).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidArgumentError, TooLargeError
from .groups import GroupElement, GroupSpec

ENUMERATION_LIMIT = 10**7

_LAYOUT = {
    8: (5, 2),  # values 0..4, centre 2
    4: (3, 1),  # values 0..2, centre 1
}


@dataclass(frozen=True)
class SphereSpec:
    n: int
    modulus: int
    radius2: int

    def __post_init__(self):
        if self.modulus not in _LAYOUT:
            raise InvalidArgumentError(f"modulus must be 4 or 8, got {self.modulus}")
        if self.n < 0:
            raise InvalidArgumentError("dimension must be non-negative")
        if self.radius2 < 0:
            raise InvalidArgumentError("squared radius must be non-negative")

    @property
    def value_count(self) -> int:
        return _LAYOUT[self.modulus][0]

    @property
    def center(self) -> int:
        return _LAYOUT[self.modulus][1]

    @property
    def offsets2(self) -> tuple[int, ...]:
        """Squared offset from the centre for each coordinate value."""
        return tuple((v - self.center) ** 2 for v in range(self.value_count))


@lru_cache(maxsize=256)
def radius_distribution(n: int, modulus: int) -> tuple[int, ...]:
    """dist[R] = number of lattice points at squared distance R from the centre."""
    offsets2 = SphereSpec(0, modulus, 0).offsets2
    top = max(offsets2)
    dist = [1]
    for _ in range(n):
        new = [0] * (len(dist) + top)
        for r, c in enumerate(dist):
            if c:
                for o in offsets2:
                    new[r + o] += c
        dist = new
    return tuple(dist)


def sphere_count(spec: SphereSpec) -> int:
    dist = radius_distribution(spec.n, spec.modulus)
    return dist[spec.radius2] if spec.radius2 < len(dist) else 0


def default_radius2(n: int, modulus: int) -> int:
    if modulus == 8:
        return 2 * n
    if modulus == 4:
        dist = radius_distribution(n, 4)
        best = max(dist)
        return dist.index(best)
    raise InvalidArgumentError(f"modulus must be 4 or 8, got {modulus}")


def sphere_points(spec: SphereSpec) -> list[GroupElement]:
    """All lattice points on the sphere, in lexicographic order."""
    if spec.value_count ** spec.n > ENUMERATION_LIMIT:
        raise TooLargeError(
            f"{spec.value_count}^{spec.n} lattice points exceed the enumeration guard; use sphere_count"
        )
    offsets2 = spec.offsets2
    smallest = min(offsets2)
    largest = max(offsets2)
    out: list[GroupElement] = []
    prefix: list[int] = []

    def walk(i, remaining):
        left = spec.n - i
        if remaining < smallest * left or remaining > largest * left:
            return
        if i == spec.n:
            out.append(tuple(prefix))
            return
        for v, o in enumerate(offsets2):
            if o <= remaining:
                prefix.append(v)
                walk(i + 1, remaining - o)
                prefix.pop()

    walk(0, spec.radius2)
    return out


def build_behrend_set(n: int, modulus: int = 8, radius2: int | None = None) -> list[GroupElement]:
    """The sphere, read as a subset of (Z/mZ)^n through the identity embedding."""
    if n < 1:
        raise InvalidArgumentError("dimension must be >= 1")
    if radius2 is None:
        radius2 = default_radius2(n, modulus)
    return sphere_points(SphereSpec(n, modulus, radius2))


def group_of(n: int, modulus: int) -> GroupSpec:
    return GroupSpec.cyclic_power(modulus, n)


def growth_report(n_range, modulus: int = 8) -> list[dict]:
    """Rows {n, radius2, count, ratio = count * sqrt(n) / base^n} at the default radius."""
    base = SphereSpec(0, modulus, 0).value_count
    rows = []
    for n in n_range:
        r2 = default_radius2(n, modulus)
        count = sphere_count(SphereSpec(n, modulus, r2))
        ratio = math.exp(math.log(count) + 0.5 * math.log(n) - n * math.log(base)) if count else 0.0
        rows.append({"n": n, "radius2": r2, "count": count, "ratio": ratio})
    return rows


def swap_wraparound(a, b, c, modulus: int = 8):
    """Replace coordinatewise wrap-around progressions by honest ones.

    For modulus 8, (4,0,4) becomes (4,4,4) and (0,4,0) becomes (0,0,0); for
    modulus 4 the same with 2 in place of 4.  Only b changes.
    """
    high = modulus // 2
    b2 = list(b)
    for i, (x, y, z) in enumerate(zip(a, b, c)):
        if (x, y, z) == (high, 0, high):
            b2[i] = high
        elif (x, y, z) == (0, high, 0):
            b2[i] = 0
    return tuple(a), tuple(b2), tuple(c)
