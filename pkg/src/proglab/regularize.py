"""Regular and super-regular subsets of weighted partitioned sets.

A subset B is regular when |B & C| is 0 or k for every class C.  Taking the
k heaviest items of every class that has at least k of them, for the best
k, always keeps at least w(A)/H_m of the weight, because summing
(1/i) * weight-of-B_i over i = 1..m recovers at least w(A).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import InvalidArgumentError
from .groups import GroupSpec, class_key

Weight = Fraction | int


def harmonic(m: int) -> Fraction:
    """1 + 1/2 + ... + 1/m, exactly."""
    if m < 1:
        raise InvalidArgumentError(f"harmonic number needs m >= 1, got {m}")
    return sum((Fraction(1, i) for i in range(1, m + 1)), Fraction(0))


@dataclass
class WeightedPartition:
    items: list[tuple[Hashable, Weight]]
    class_of: Mapping[Hashable, Hashable]
    superclass_of: Mapping[Hashable, Hashable] | None = None
    m: int | None = None
    m_prime: int | None = None

    def __post_init__(self):
        ids = [i for i, _ in self.items]
        if len(set(ids)) != len(ids):
            raise InvalidArgumentError("item ids must be unique")
        for i, w in self.items:
            if w < 0:
                raise InvalidArgumentError(f"negative weight for item {i!r}")
            if i not in self.class_of:
                raise InvalidArgumentError(f"item {i!r} has no class")
        sizes = self.class_sizes()
        largest = max(sizes.values(), default=1)
        if self.m is None:
            self.m = largest
        elif largest > self.m:
            raise InvalidArgumentError(f"a class has {largest} items, more than m = {self.m}")
        if self.superclass_of is not None:
            missing = [c for c in sizes if c not in self.superclass_of]
            if missing:
                raise InvalidArgumentError(f"classes without a superclass: {missing[:3]}")
            per_super = defaultdict(int)
            for c in sizes:
                per_super[self.superclass_of[c]] += 1
            widest = max(per_super.values(), default=1)
            if self.m_prime is None:
                self.m_prime = widest
            elif widest > self.m_prime:
                raise InvalidArgumentError(f"a superclass holds {widest} classes, more than m' = {self.m_prime}")

    def classes(self) -> dict[Hashable, list[tuple[Hashable, Weight]]]:
        """Class key -> its items, in input order."""
        out: dict[Hashable, list[tuple[Hashable, Weight]]] = {}
        for i, w in self.items:
            out.setdefault(self.class_of[i], []).append((i, w))
        return out

    def class_sizes(self) -> dict[Hashable, int]:
        return {c: len(v) for c, v in self.classes().items()}

    @property
    def total_weight(self) -> Weight:
        return sum((w for _, w in self.items), Fraction(0))


@dataclass(frozen=True)
class RegularSubset:
    ids: frozenset
    k: int
    weight: Weight
    k_prime: int | None = None
    classes: frozenset = field(default_factory=frozenset)


def _order_key(item):
    ident, w = item
    return (-w, _id_key(ident))


def _id_key(ident):
    # mixed id types still need a total order for tie breaking
    return (type(ident).__name__, ident)


def _best_level(
    groups: Mapping[Hashable, Sequence[tuple[Hashable, Weight]]], m: int
) -> tuple[int, list[Hashable], Weight, list[Hashable]]:
    """Best k in 1..m: k heaviest members of every group with at least k members."""
    ranked = {g: sorted(members, key=_order_key) for g, members in groups.items()}
    best = (0, [], Fraction(0), [])
    for k in range(1, m + 1):
        chosen, used, weight = [], [], Fraction(0)
        for g, members in ranked.items():
            if len(members) >= k:
                top = members[:k]
                chosen.extend(i for i, _ in top)
                used.append(g)
                weight += sum(w for _, w in top)
        if weight > best[2] or (best[0] == 0 and chosen):
            best = (k, chosen, weight, used)
    return best


def extract_regular(p: WeightedPartition) -> RegularSubset:
    """Regular subset of weight >= w(A)/H_m (smallest k wins ties)."""
    k, chosen, weight, used = _best_level(p.classes(), p.m or 1)
    return RegularSubset(frozenset(chosen), k, weight, classes=frozenset(used))


def extract_super_regular(p: WeightedPartition) -> RegularSubset:
    """Super-regular subset of weight >= w(A)/(H_m H_m').

    First a regular subset for the classes; then the surviving classes,
    weighted by what they kept, are regularised with respect to the
    superclasses.
    """
    if p.superclass_of is None:
        raise InvalidArgumentError("superclass map is required")
    first = extract_regular(p)
    kept = {i: w for i, w in p.items if i in first.ids}
    class_weight: dict[Hashable, Weight] = defaultdict(lambda: Fraction(0))
    for i, w in p.items:
        if i in kept:
            class_weight[p.class_of[i]] += w
    by_super: dict[Hashable, list[tuple[Hashable, Weight]]] = {}
    for c in sorted(first.classes, key=_id_key):
        by_super.setdefault(p.superclass_of[c], []).append((c, class_weight[c]))
    k2, chosen_classes, _, _ = _best_level(by_super, p.m_prime or 1)
    chosen_classes = set(chosen_classes)
    ids = frozenset(i for i in first.ids if p.class_of[i] in chosen_classes)
    weight = sum((w for i, w in p.items if i in ids), Fraction(0))
    return RegularSubset(ids, first.k if ids else 0, weight, k_prime=k2 if ids else 0,
                         classes=frozenset(chosen_classes))


def is_regular(ids: Iterable[Hashable], class_of: Mapping[Hashable, Hashable]) -> bool:
    counts = defaultdict(int)
    for i in ids:
        counts[class_of[i]] += 1
    return len(set(counts.values())) <= 1


def is_super_regular(
    ids: Iterable[Hashable], class_of: Mapping[Hashable, Hashable], superclass_of: Mapping[Hashable, Hashable]
) -> bool:
    ids = list(ids)
    if not is_regular(ids, class_of):
        return False
    classes_per_super = defaultdict(set)
    for i in ids:
        c = class_of[i]
        classes_per_super[superclass_of[c]].add(c)
    return len({len(v) for v in classes_per_super.values()}) <= 1


def partition_by_power(spec: GroupSpec, A: Iterable[Sequence[int]], level: int = 1) -> WeightedPartition:
    """Unit-weight partition of A by g^2, with superclasses by g^4 when level = 2."""
    if level not in (1, 2):
        raise InvalidArgumentError(f"level must be 1 or 2, got {level}")
    elems = sorted({spec.check(g) for g in A})
    class_of = {g: class_key(spec, g, 1) for g in elems}
    superclass_of = None
    if level == 2:
        superclass_of = {c: class_key(spec, c, 1) for c in set(class_of.values())}
    return WeightedPartition([(g, 1) for g in elems], class_of, superclass_of)
