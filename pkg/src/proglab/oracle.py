"""Ground truth for small groups: AP-freeness, r_3 by search, and finite lemma checks."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import gf2
from .codim import DegreeCountQuery, as_fraction, count_monomials
from .errors import BudgetExceeded, InvalidArgumentError
from .groups import GroupElement, GroupSpec, halving_spec

PAIR_LIMIT = 10**8


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 2_000_000
    time_limit: float = 60.0
    restarts: int = 64
    seed: int = 0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.time_limit <= 0 or self.restarts <= 0:
            raise InvalidArgumentError("search budget limits must be positive")


@dataclass(frozen=True)
class APReport:
    free: bool
    witness: tuple[GroupElement, GroupElement, GroupElement] | None = None


def verify_ap_free(spec: GroupSpec, A: Iterable[Sequence[int]], pair_limit: int = PAIR_LIMIT) -> APReport:
    """Scan ordered pairs (a, b) for c = 2b - a in A with a, b, c distinct."""
    elems = sorted({spec.check(a) for a in A})
    if len(elems) ** 2 > pair_limit:
        raise BudgetExceeded(f"|A|^2 = {len(elems) ** 2} exceeds the pair limit {pair_limit}")
    members = set(elems)
    for a in elems:
        for b in elems:
            if b == a:
                continue
            c = spec.sub(spec.scale(b, 2), a)
            if c != a and c != b and c in members:
                return APReport(False, (a, b, c))
    return APReport(True)


class ProgressionHypergraph:
    """Forbidden triples of a group as bitmasks over the element index."""

    def __init__(self, spec: GroupSpec, forbid_semitrivial: bool = False):
        self.spec = spec
        self.elements = list(spec.elements())
        self.index = {g: i for i, g in enumerate(self.elements)}
        n = len(self.elements)
        self.size = n
        halves: dict[GroupElement, list[int]] = {}
        for i, g in enumerate(self.elements):
            halves.setdefault(spec.scale(g, 2), []).append(i)
        # completion[x][y]: elements z making {x, y, z} a progression
        self.completion = [[0] * n for _ in range(n)]
        triples = set()
        for x, gx in enumerate(self.elements):
            for y, gy in enumerate(self.elements):
                if x == y:
                    continue
                mask = 0
                z = self.index[spec.sub(spec.scale(gy, 2), gx)]  # x, y, z with y in the middle
                if z != x and z != y:
                    mask |= 1 << z
                z = self.index[spec.sub(spec.scale(gx, 2), gy)]  # x in the middle
                if z != x and z != y:
                    mask |= 1 << z
                for z in halves.get(spec.add(gx, gy), ()):  # z in the middle
                    if z != x and z != y:
                        mask |= 1 << z
                self.completion[x][y] = mask
                m = mask
                while m:
                    low = m & -m
                    z = low.bit_length() - 1
                    triples.add((1 << x) | (1 << y) | low)
                    m ^= low
        self.triples = sorted(triples)
        self.pair_conflict = [0] * n
        if forbid_semitrivial:
            for group in halves.values():
                for x in group:
                    for y in group:
                        if x != y:
                            self.pair_conflict[x] |= 1 << y

    def forbidden_by(self, v: int, chosen: Sequence[int]) -> int:
        mask = self.pair_conflict[v]
        row = self.completion[v]
        for y in chosen:
            mask |= row[y]
        return mask

    def packing_bound(self, allowed: int) -> int:
        """popcount(allowed) minus a greedy count of disjoint triples inside it."""
        used = 0
        disjoint = 0
        for t in self.triples:
            if t & allowed == t and not t & used:
                used |= t
                disjoint += 1
        return bin(allowed).count("1") - disjoint

    def to_elements(self, idx: Iterable[int]) -> list[GroupElement]:
        return [self.elements[i] for i in sorted(idx)]


@lru_cache(maxsize=64)
def hypergraph(spec: GroupSpec, forbid_semitrivial: bool = False) -> ProgressionHypergraph:
    return ProgressionHypergraph(spec, forbid_semitrivial)


@dataclass(frozen=True)
class R3Result:
    size: int
    witness: tuple[GroupElement, ...]
    exact: bool
    upper_bound: int
    nodes: int = 0


def _checked(spec: GroupSpec, witness: Sequence[GroupElement], forbid_semitrivial: bool) -> tuple[GroupElement, ...]:
    witness = tuple(sorted(witness))
    if not verify_ap_free(spec, witness).free:
        raise AssertionError(f"search produced a set with a progression: {witness}")
    if forbid_semitrivial:
        doubles = [spec.scale(g, 2) for g in witness]
        if len(set(doubles)) != len(doubles):
            raise AssertionError("search produced a set with a semi-trivial pair")
    return witness


def r3_exact(
    spec: GroupSpec,
    budget: SearchBudget | None = None,
    forbid_semitrivial: bool = False,
    initial: Sequence[Sequence[int]] | None = None,
) -> R3Result:
    """Maximum progression-free subset by branch and bound.

    The identity is always included: translates of progression-free sets
    are progression-free.  Bounds are the number of compatible candidates,
    tightened by a greedy packing of disjoint forbidden triples.  On budget
    exhaustion the best set found is returned with ``exact=False``.
    """
    budget = budget or SearchBudget()
    hg = hypergraph(spec, forbid_semitrivial)
    n = hg.size
    best: tuple[int, ...] = (0,)
    if initial:
        init = tuple(sorted(hg.index[spec.check(g)] for g in initial))
        if len(init) > len(best):
            best = init
    full = (1 << n) - 1
    root_allowed = (full ^ 1) & ~hg.forbidden_by(0, ())
    stack = [((0,), root_allowed)]
    nodes = 0
    deadline = time.monotonic() + budget.time_limit
    exhausted = False
    while stack:
        chosen, allowed = stack.pop()
        nodes += 1
        if nodes > budget.max_nodes or (nodes & 1023 == 0 and time.monotonic() > deadline):
            exhausted = True
            stack.append((chosen, allowed))
            break
        if not allowed:
            if len(chosen) > len(best):
                best = chosen
            continue
        if len(chosen) + bin(allowed).count("1") <= len(best):
            continue
        if len(chosen) + hg.packing_bound(allowed) <= len(best):
            continue
        low = allowed & -allowed
        v = low.bit_length() - 1
        rest = allowed ^ low
        # exclude pushed first so include is explored first
        stack.append((chosen, rest))
        stack.append((chosen + (v,), rest & ~hg.forbidden_by(v, chosen)))
    witness = _checked(spec, hg.to_elements(best), forbid_semitrivial)
    if exhausted:
        upper = max(len(best), max(len(c) + bin(a).count("1") for c, a in stack))
        return R3Result(len(best), witness, False, upper, nodes)
    return R3Result(len(best), witness, True, len(best), nodes)


def r3_greedy(spec: GroupSpec, budget: SearchBudget | None = None, forbid_semitrivial: bool = False) -> R3Result:
    """Best of ``budget.restarts`` random-order greedy insertions (deterministic in the seed)."""
    budget = budget or SearchBudget()
    hg = hypergraph(spec, forbid_semitrivial)
    rng = random.Random(budget.seed)
    best: tuple[int, ...] = ()
    for _ in range(budget.restarts):
        order = list(range(hg.size))
        rng.shuffle(order)
        chosen: list[int] = []
        blocked = 0
        for v in order:
            if (blocked >> v) & 1:
                continue
            blocked |= hg.forbidden_by(v, chosen)
            chosen.append(v)
        cand = tuple(sorted(chosen))
        if len(cand) > len(best) or (len(cand) == len(best) and cand < best):
            best = cand
    witness = _checked(spec, hg.to_elements(best), forbid_semitrivial)
    return R3Result(len(best), witness, False, hg.size, 0)


def r3_bruteforce(spec: GroupSpec) -> int:
    """Largest progression-free subset by scanning all 2^|G| subsets (|G| <= 20)."""
    elems = list(spec.elements())
    if len(elems) > 20:
        raise BudgetExceeded("brute force is limited to groups of order 20")
    best = 0
    for mask in range(1 << len(elems)):
        size = bin(mask).count("1")
        if size <= best:
            continue
        subset = [elems[i] for i in range(len(elems)) if (mask >> i) & 1]
        if verify_ap_free(spec, subset).free:
            best = size
    return best


def product_set(A: Iterable[Sequence[int]], B: Iterable[Sequence[int]]) -> list[GroupElement]:
    return [tuple(a) + tuple(b) for a in A for b in B]


@dataclass(frozen=True)
class ProductLemmaReport:
    lhs: int
    rhs: int
    holds: bool
    lhs_exact: bool
    product_witness_free: bool


def check_product_lemma(spec1: GroupSpec, spec2: GroupSpec, budget: SearchBudget | None = None) -> ProductLemmaReport:
    """r_3(G1 x G2) >= r_3(G1) r_3(G2), with the product witness verified directly.

    The factors must be solved exactly.  For the product, the search is
    seeded with the product witness; if it runs out of budget ``lhs`` is a
    certified lower bound.
    """
    budget = budget or SearchBudget()
    r1, r2 = r3_exact(spec1, budget), r3_exact(spec2, budget)
    if not (r1.exact and r2.exact):
        raise BudgetExceeded("factor groups exceed the exact search budget", partial=(r1, r2))
    prod_spec = spec1.product(spec2)
    witness = product_set(r1.witness, r2.witness)
    free = verify_ap_free(prod_spec, witness).free
    big = r3_exact(prod_spec, budget, initial=witness)
    lhs = big.size
    return ProductLemmaReport(lhs, r1.size * r2.size, free and lhs >= r1.size * r2.size, big.exact, free)


@dataclass(frozen=True)
class MainLemmaReport:
    applicable: bool
    hypothesis_i: bool
    hypothesis_ii: bool
    hypothesis_iii: bool
    codim_X: int
    codim_Y: int
    codim_Z: int
    conclusion_checked: bool
    progression_found: bool | None = None
    feasible_at_scale: bool = True
    squares_count: int = 0

    @property
    def all_hypotheses(self) -> bool:
        return self.applicable and self.hypothesis_i and self.hypothesis_ii and self.hypothesis_iii

    @property
    def counterexample(self) -> bool:
        return not self.conclusion_checked


def _coset_key(spec: GroupSpec, g: GroupElement) -> GroupElement:
    # in a 2-group, 2G is cut out by the residues mod 2
    return tuple(r % 2 if m % 2 == 0 else 0 for r, m in zip(g, spec.moduli))


def main_lemma_codims(spec: GroupSpec, rho) -> tuple[int, int, int]:
    """codim X(rho), codim X(1 - 2 rho), codim X(rho) inside F_2[2G], unit weights."""
    h = halving_spec(spec)
    deg_max = sum(m - 1 for m in h.moduli)
    rho = as_fraction(rho)
    cx = count_monomials(DegreeCountQuery(h.moduli, rho * deg_max))
    cy = count_monomials(DegreeCountQuery(h.moduli, (1 - 2 * rho) * deg_max))
    return cx, cy, cx


def check_main_lemma(spec: GroupSpec, A: Iterable[Sequence[int]], rho) -> MainLemmaReport:
    """Evaluate the three hypotheses literally, with X = Z = X(rho) and Y = X(1 - 2 rho).

    If all of them hold, the conclusion is that A contains a progression;
    ``conclusion_checked`` is False exactly when that fails.
    """
    A = sorted({spec.check(a) for a in A})
    rho_q = as_fraction(rho)
    applicable = spec.is_two_group() and Fraction(1, 4) <= rho_q <= Fraction(1, 2)
    if not spec.is_two_group():
        return MainLemmaReport(False, False, False, False, 0, 0, 0, True, None, False)
    cx, cy, cz = main_lemma_codims(spec, rho_q)
    h_order = halving_spec(spec).order
    roots: dict[GroupElement, int] = {}
    for a in A:
        sq = spec.scale(a, 2)
        roots[sq] = roots.get(sq, 0) + 1
    cosets: dict[GroupElement, int] = {}
    for a in A:
        key = _coset_key(spec, a)
        cosets[key] = cosets.get(key, 0) + 1
    need = Fraction(5, 4) * (cx + cz)
    hyp_i = len(roots) >= 5 * cy
    hyp_ii = len(set(roots.values())) <= 1
    hyp_iii = all(c > need for c in cosets.values())
    feasible = h_order >= 5 * cy and h_order > need
    found = None
    ok = True
    if applicable and hyp_i and hyp_ii and hyp_iii:
        found = not verify_ap_free(spec, A).free
        ok = found
    return MainLemmaReport(applicable, hyp_i, hyp_ii, hyp_iii, cx, cy, cz, ok, found, feasible, len(roots))


@dataclass
class HuntReport:
    instances: int = 0
    hypotheses_met: int = 0
    hits: list = field(default_factory=list)


def main_lemma_hunt(spec: GroupSpec, sets: Iterable[Sequence[Sequence[int]]], rhos: Sequence) -> HuntReport:
    """Check every (A, rho) pair; a hit is an AP-free A meeting all hypotheses."""
    report = HuntReport()
    for A in sets:
        A = list(A)
        for rho in rhos:
            r = check_main_lemma(spec, A, rho)
            report.instances += 1
            if r.all_hypotheses:
                report.hypotheses_met += 1
            if r.counterexample:
                report.hits.append((tuple(A), rho))
    return report


# finite instances of the linear-algebra lemmas


def relative_codim(x1: Sequence[int], x2: Sequence[int], ncols: int) -> int:
    """codim of span(x1) & span(x2) inside span(x2)."""
    return gf2.rank(x2) - len(gf2.intersection(x1, x2, ncols))


def max_support_vector(space: Sequence[int], ncols: int) -> int:
    """A vector of support >= dim(space), grown by adding vectors that vanish on the current support."""
    space = gf2.basis(space)
    f = 0
    while gf2.popcount(f) < len(space):
        # vectors of the space vanishing on supp(f)
        vanish = gf2.restrict(space, ((1 << ncols) - 1) & ~f, ncols)
        g = next((v for v in vanish if v), 0)
        if not g:
            break
        f ^= g
    return f


def orthogonal_complement(a: int, X: Sequence[int], ncols: int) -> list[int]:
    """{g : sum_x a(x) f(x) g(x) = 0 for every f in X}."""
    return gf2.nullspace([a & f for f in X], ncols)
