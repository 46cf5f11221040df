import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from proglab import gf2
from proglab.errors import InvalidArgumentError
from proglab.groups import GroupSpec
from proglab.oracle import orthogonal_complement
from proglab.ring import (
    Basis,
    RingElement,
    change_basis,
    ring_mul,
    subspace_X,
    verify_zero_product,
)

M, G = Basis.MONOMIAL, Basis.GROUP
C4 = GroupSpec((4,))

RING_GROUPS = [GroupSpec(m) for m in [(2,), (4,), (8,), (2, 4), (4, 4), (2, 8), (4, 8), (2, 2, 2), (8, 8), (4, 4, 4), (16, 16)]]


def naive_mul(spec, a, b):
    """Term-by-term product, written independently of the array code."""
    acc = set()
    for u in a.support:
        for v in b.support:
            if a.basis is M:
                w = tuple(x + y for x, y in zip(u, v))
                if any(x >= m for x, m in zip(w, spec.moduli)):
                    continue
            else:
                w = spec.add(u, v)
            acc ^= {w}
    return RingElement(a.basis, frozenset(acc))


def naive_group_to_monomial(spec, a):
    """g^lam = prod (1 + tau_i)^{lam_i}, expanded by repeated multiplication."""
    total = RingElement.zero(M)
    for lam in a.support:
        term = RingElement.one(spec, M)
        for i, e in enumerate(lam):
            factor = RingElement(M, {tuple(1 if j == i else 0 for j in range(spec.n)), spec.identity})
            for _ in range(e):
                term = naive_mul(spec, term, factor)
        total = total + term
    return total


def rand_elem(spec, basis, rng, density=0.5):
    return RingElement(basis, {g for g in spec.elements() if rng.random() < density})


def m(*vs):
    return RingElement(M, set(vs))


def test_mul_examples():
    assert ring_mul(C4, m((1,)), m((1,))) == m((2,))
    assert ring_mul(C4, m((3,)), m((1,))).is_zero()
    assert ring_mul(C4, m((0,), (1,)), m((0,), (1,))) == m((0,), (2,))


def test_mul_basis_mismatch():
    with pytest.raises(InvalidArgumentError):
        ring_mul(C4, m((1,)), RingElement(G, {(1,)}))


def test_change_basis_examples():
    assert change_basis(C4, RingElement(G, {(1,)})) == m((0,), (1,))
    assert change_basis(C4, RingElement(G, {(2,)})) == m((0,), (2,))
    assert change_basis(C4, RingElement(G, {(0,)})) == m((0,))


def test_group_basis_identity_and_inverse():
    g = RingElement(G, {(3,)})
    assert ring_mul(C4, g, RingElement(G, {(1,)})) == RingElement(G, {(0,)})


@pytest.mark.parametrize("spec", RING_GROUPS[:9], ids=str)
def test_dense_mul_matches_naive(spec):
    rng = random.Random(11)
    for basis in (M, G):
        for _ in range(20):
            a, b = rand_elem(spec, basis, rng, 0.3), rand_elem(spec, basis, rng, 0.3)
            assert ring_mul(spec, a, b) == naive_mul(spec, a, b)


@pytest.mark.parametrize("spec", RING_GROUPS[:6], ids=str)
def test_change_basis_matches_substitution(spec):
    rng = random.Random(5)
    for _ in range(20):
        a = rand_elem(spec, G, rng, 0.3)
        assert change_basis(spec, a) == naive_group_to_monomial(spec, a)


@pytest.mark.parametrize("spec", [s for s in RING_GROUPS if s.order <= 256], ids=str)
def test_ring_axioms(spec):
    rng = random.Random(spec.order)
    for basis in (M, G):
        for _ in range(200):
            a, b, c = (rand_elem(spec, basis, rng) for _ in range(3))
            assert ring_mul(spec, a, b) == ring_mul(spec, b, a)
            assert ring_mul(spec, ring_mul(spec, a, b), c) == ring_mul(spec, a, ring_mul(spec, b, c))
            assert (a + a).is_zero()


@pytest.mark.parametrize("spec", [s for s in RING_GROUPS if s.order <= 256], ids=str)
def test_change_basis_involution_and_multiplicative(spec):
    rng = random.Random(3 * spec.order)
    for i in range(200):
        basis = G if i % 2 else M
        a = rand_elem(spec, basis, rng)
        assert change_basis(spec, change_basis(spec, a)) == a
    for _ in range(100):
        a, b = rand_elem(spec, G, rng), rand_elem(spec, G, rng)
        lhs = ring_mul(spec, change_basis(spec, a), change_basis(spec, b))
        assert lhs == change_basis(spec, ring_mul(spec, a, b))


def test_subspace_examples():
    x = subspace_X(C4, 0.5)
    assert x.deg_max == 3
    assert set(x.members()) == {(2,), (3,)} and x.codim() == 2
    x0 = subspace_X(C4, 0.0)
    assert set(x0.members()) == {(1,), (2,), (3,)} and x0.codim() == 1
    x1 = subspace_X(C4, 1.0)
    assert x1.members() == [] and x1.codim() == 4
    with pytest.raises(InvalidArgumentError):
        subspace_X(C4, 1.5)


def test_subspace_codim_matches_enumeration():
    spec = GroupSpec((4, 8))
    for theta in (0, 0.1, 0.2, 1 / 3, 0.5, 0.9):
        sub = subspace_X(spec, theta, (1.0, 0.5))
        low = [lam for lam in spec.elements() if 1.0 * lam[0] + 0.5 * lam[1] <= theta * sub.deg_max + 1e-9]
        assert sub.codim() == len(low)


def test_zero_product_examples():
    s44 = GroupSpec((4, 4))
    third = subspace_X(s44, 1 / 3)
    assert verify_zero_product(s44, [third] * 3, 100, seed=1).all_zero
    half = subspace_X(C4, 0.5)
    assert verify_zero_product(C4, [half, half], 50, seed=2).all_zero
    full = subspace_X(C4, 1.0)
    assert verify_zero_product(C4, [full], 20, seed=3).all_zero


def test_zero_product_needs_subspaces():
    with pytest.raises(InvalidArgumentError):
        verify_zero_product(C4, [], 10, 0)


def test_zero_product_deterministic():
    s = GroupSpec((4, 4))
    subs = [subspace_X(s, 0.2), subspace_X(s, 0.3)]
    r1 = verify_zero_product(s, subs, 60, seed=9)
    r2 = verify_zero_product(s, subs, 60, seed=9)
    assert r1 == r2 and not r1.all_zero


def test_zero_product_parallel_matches_sequential(monkeypatch):
    s = GroupSpec((8, 8))
    subs = [subspace_X(s, 0.25), subspace_X(s, 0.25)]
    monkeypatch.setenv("PROGLAB_THREADS", "1")
    seq = verify_zero_product(s, subs, 100, seed=4)
    monkeypatch.setenv("PROGLAB_THREADS", "4")
    par = verify_zero_product(s, subs, 100, seed=4)
    assert seq == par


def test_counterexample_product_is_nonzero():
    s = GroupSpec((4, 4))
    subs = [subspace_X(s, 1 / 3)] * 2
    rep = verify_zero_product(s, subs, 200, seed=0)
    assert not rep.all_zero
    prod = ring_mul(s, *rep.counterexample)
    assert prod == rep.product and not prod.is_zero()


def _diagonal_form_instances(rng, count):
    for _ in range(count):
        n = rng.randint(1, 10)
        a = rng.getrandbits(n)
        X = gf2.random_subspace(rng.randint(0, n), n, rng)
        Y_full = orthogonal_complement(a, X, n)
        keep = rng.randint(0, len(Y_full))
        Y = gf2.basis(rng.sample(Y_full, keep)) if keep else []
        yield n, a, X, Y


def test_diagonal_form_codim_bound():
    rng = random.Random(2024)
    for n, a, X, Y in _diagonal_form_instances(rng, 400):
        for f in X:
            for g in Y:
                assert gf2.bilinear(a, f, g) == 0
        assert (n - len(X)) + (n - len(Y)) >= gf2.popcount(a)
