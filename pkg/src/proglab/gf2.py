"""Small linear algebra over F_2 with vectors packed into Python ints.

Bit ``j`` of a vector is its coordinate ``j``.  A subspace is given by any
spanning list; :func:`basis` returns an echelon basis.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence


def popcount(v: int) -> int:
    return bin(v).count("1")


def basis(vectors: Iterable[int]) -> list[int]:
    """Echelon basis with distinct leading bits (highest set bit)."""
    pivots: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                break
            v ^= pivots[top]
    return [pivots[k] for k in sorted(pivots, reverse=True)]


def rank(vectors: Iterable[int]) -> int:
    return len(basis(vectors))


def reduce(v: int, echelon: Sequence[int]) -> int:
    for b in echelon:
        top = b.bit_length() - 1
        if (v >> top) & 1:
            v ^= b
    return v


def in_span(v: int, vectors: Iterable[int]) -> bool:
    return reduce(v, basis(vectors)) == 0


def nullspace(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of {x : <row, x> = 0 for every row}, coordinates 0..ncols-1."""
    rows = [r & ((1 << ncols) - 1) for r in rows]
    pivot_rows: list[tuple[int, int]] = []  # (pivot column, row), fully reduced
    for r in rows:
        for col, pr in pivot_rows:
            if (r >> col) & 1:
                r ^= pr
        if not r:
            continue
        col = (r & -r).bit_length() - 1
        new = []
        for c, pr in pivot_rows:
            if (pr >> col) & 1:
                pr ^= r
            new.append((c, pr))
        pivot_rows = new + [(col, r)]
    pivot_cols = {c for c, _ in pivot_rows}
    out = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        v = 1 << free
        for c, pr in pivot_rows:
            if (pr >> free) & 1:
                v |= 1 << c
        out.append(v)
    return out


def annihilator(vectors: Sequence[int], ncols: int) -> list[int]:
    """Linear equations cutting out span(vectors): its orthogonal complement."""
    return nullspace(list(vectors), ncols)


def intersection(xs: Sequence[int], ys: Sequence[int], ncols: int) -> list[int]:
    """Basis of span(xs) & span(ys): vectors of span(ys) solving the equations of span(xs)."""
    eqs = annihilator(basis(xs), ncols)
    ys = basis(ys)
    # coefficient vectors c with sum_j c_j ys_j satisfying every equation
    cols = []
    for e in eqs:
        row = 0
        for j, y in enumerate(ys):
            if popcount(e & y) & 1:
                row |= 1 << j
        cols.append(row)
    combos = nullspace(cols, len(ys))
    out = []
    for c in combos:
        v = 0
        for j, y in enumerate(ys):
            if (c >> j) & 1:
                v ^= y
        out.append(v)
    return basis(out)


def restrict(vectors: Sequence[int], mask: int, ncols: int) -> list[int]:
    """Basis of the vectors of span(vectors) supported inside ``mask``."""
    inside = [1 << j for j in range(ncols) if (mask >> j) & 1]
    if not inside:
        return []
    return intersection(inside, vectors, ncols)


def random_subspace(dim: int, ncols: int, rng: random.Random) -> list[int]:
    """Random subspace of F_2^ncols with exactly ``dim`` dimensions."""
    if dim > ncols:
        raise ValueError("dimension exceeds ambient dimension")
    out: list[int] = []
    while len(out) < dim:
        v = rng.getrandbits(ncols) if ncols else 0
        if v and rank(out + [v]) > len(out):
            out.append(v)
    return basis(out)


def bilinear(a: int, f: int, g: int) -> int:
    """sum_x a(x) f(x) g(x) over F_2."""
    return popcount(a & f & g) & 1
