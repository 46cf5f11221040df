"""Finite abelian groups written additively as products of cyclic groups.

Elements are plain tuples of reduced residues, so they hash and compare
structurally.  ``a + c = 2b`` is the additive form of ``ac = b^2``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InvalidArgumentError, InvalidElementError

GroupElement = tuple[int, ...]


@dataclass(frozen=True)
class GroupSpec:
    """The group C_{m_1} x ... x C_{m_n}."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if any(m < 1 for m in moduli):
            raise InvalidArgumentError(f"moduli must be >= 1, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    @classmethod
    def cyclic_power(cls, k: int, n: int) -> "GroupSpec":
        return cls((k,) * n)

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse ``"8^2"``, ``"4x8"``, ``"3^2x4"`` or ``"1"``."""
        text = text.strip().replace(" ", "")
        if not text:
            raise InvalidArgumentError("empty group spec")
        moduli: list[int] = []
        for token in re.split(r"[x*]", text):
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", token)
            if m is None:
                raise InvalidArgumentError(f"bad group spec token {token!r} in {text!r}")
            base = int(m.group(1))
            exp = int(m.group(2)) if m.group(2) is not None else 1
            moduli.extend([base] * exp)
        return cls(tuple(moduli))

    def __str__(self):
        parts = []
        for m, grp in itertools.groupby(self.moduli):
            e = len(list(grp))
            parts.append(f"{m}^{e}" if e > 1 else str(m))
        return "x".join(parts) if parts else "1"

    @property
    def n(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def identity(self) -> GroupElement:
        return (0,) * self.n

    def is_two_group(self) -> bool:
        return all(m & (m - 1) == 0 for m in self.moduli)

    def element(self, residues: Iterable[int]) -> GroupElement:
        """Build an element, reducing residues modulo the moduli."""
        residues = tuple(int(r) for r in residues)
        if len(residues) != self.n:
            raise InvalidElementError(
                f"element {residues} has length {len(residues)}, group {self} has dimension {self.n}"
            )
        return tuple(r % m for r, m in zip(residues, self.moduli))

    def check(self, g: Sequence[int]) -> GroupElement:
        """Return ``g`` as a tuple if it is a reduced element, else raise."""
        g = tuple(g)
        if len(g) != self.n:
            raise InvalidElementError(
                f"element {g} has length {len(g)}, group {self} has dimension {self.n}"
            )
        for r, m in zip(g, self.moduli):
            if not 0 <= r < m:
                raise InvalidElementError(f"residue {r} out of range for modulus {m} in {g}")
        return g

    def elements(self) -> Iterator[GroupElement]:
        return itertools.product(*(range(m) for m in self.moduli))

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def sub(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return tuple((x - y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: GroupElement) -> GroupElement:
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def scale(self, a: GroupElement, c: int) -> GroupElement:
        return tuple((c * x) % m for x, m in zip(a, self.moduli))

    def index(self, g: GroupElement) -> int:
        """Mixed-radix index of ``g`` (last coordinate fastest)."""
        idx = 0
        for r, m in zip(g, self.moduli):
            idx = idx * m + r
        return idx

    def from_index(self, idx: int) -> GroupElement:
        out = []
        for m in reversed(self.moduli):
            idx, r = divmod(idx, m)
            out.append(r)
        return tuple(reversed(out))

    def product(self, other: "GroupSpec") -> "GroupSpec":
        return GroupSpec(self.moduli + other.moduli)


def square(spec: GroupSpec, g: Sequence[int]) -> GroupElement:
    """The endomorphism g -> g^2, i.e. componentwise doubling."""
    g = spec.check(g)
    return spec.scale(g, 2)


def class_key(spec: GroupSpec, g: Sequence[int], level: int) -> GroupElement:
    """Key of ``g`` under g~h iff g^2=h^2 (level 1) or g^4=h^4 (level 2)."""
    if level not in (1, 2):
        raise InvalidArgumentError(f"level must be 1 or 2, got {level}")
    key = square(spec, g)
    if level == 2:
        key = square(spec, key)
    return key


def is_progression(spec: GroupSpec, a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> bool:
    """True iff a, b, c are mutually distinct and a + c = 2b."""
    a, b, c = spec.check(a), spec.check(b), spec.check(c)
    if a == b or b == c or a == c:
        return False
    return spec.add(a, c) == spec.scale(b, 2)


def squares_subgroup(spec: GroupSpec) -> set[GroupElement]:
    """The image {g^2 : g in G}."""
    return {spec.scale(g, 2) for g in spec.elements()}


def halving_spec(spec: GroupSpec) -> GroupSpec:
    """Cyclic decomposition of 2G for a 2-group G (each C_{2^m} becomes C_{2^(m-1)})."""
    if not spec.is_two_group():
        raise InvalidArgumentError(f"{spec} is not a 2-group")
    return GroupSpec(tuple(max(m // 2, 1) for m in spec.moduli))
