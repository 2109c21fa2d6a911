from itertools import product

import pytest
from hypothesis import given, strategies as st

from gl2lab.errors import InvalidDivisor, MismatchedModulus, SingularMatrix, ZeroVector
from gl2lab.mat2 import Mat2
from gl2lab.torsion import (
    TorsionVector,
    act_on_cyclic,
    act_on_vector,
    c_inf,
    canonical_cyclic,
    ck,
    cyc_table,
    cyclic_of,
    enumerate_cyclic,
    enumerate_vectors,
    vector_order,
)


def spans(n):
    """Distinct nontrivial cyclic subgroups of (Z/n)^2 by brute force."""
    out = set()
    for x, y in product(range(n), repeat=2):
        if x or y:
            out.add(frozenset(((k * x) % n, (k * y) % n) for k in range(n)))
    return out


def test_vector_order_examples():
    assert vector_order(TorsionVector(9, 1, 0)) == 9
    assert vector_order(TorsionVector(8, 2, 4)) == 4
    with pytest.raises(ZeroVector):
        TorsionVector(5, 0, 0)
    with pytest.raises(ZeroVector):
        TorsionVector(5, 5, 10)


def test_canonical_cyclic_examples():
    assert canonical_cyclic(TorsionVector(5, 1, 0)) == c_inf(5)
    c3 = canonical_cyclic(TorsionVector(5, 3, 1))
    assert (c3.generator.x, c3.generator.y) == (3, 1) and c3 == ck(3, 5)
    assert canonical_cyclic(TorsionVector(5, 2, 4)) == ck(3, 5)
    assert ck(3, 5).label() == "C_3" and c_inf(5).label() == "C_inf"


def test_enumerate_cyclic_examples():
    assert len(enumerate_cyclic(7, 7)) == 8
    assert len(enumerate_cyclic(4, 4)) == 6
    assert enumerate_cyclic(2, 1) == []
    with pytest.raises(InvalidDivisor):
        enumerate_cyclic(6, 4)


@pytest.mark.parametrize("n", range(2, 25))
def test_cyclic_table_matches_brute_force(n):
    mods = enumerate_cyclic(n)
    assert {c.elements() for c in mods} == spans(n)
    assert len({c.elements() for c in mods}) == len(mods)
    # canonical generator is the (y, x)-least generator of the span
    for c in mods:
        gens = [v for v in c.elements() if v != (0, 0)
                and vector_order(TorsionVector(n, *v)) == c.order]
        assert min((y, x) for x, y in gens) == c.key
    assert [c.key for c in mods] == sorted(c.key for c in mods)


def test_enumerate_vectors_sorted_and_filtered():
    vs = enumerate_vectors(6, 3)
    assert all(v.order == 3 for v in vs)
    assert [(v.x, v.y) for v in vs] == sorted((v.x, v.y) for v in vs)
    assert len(vs) == 8


def test_action_examples():
    ell = 11
    for k in range(ell):
        assert act_on_cyclic(Mat2.identity(ell), ck(k, ell)) == ck(k, ell)
    for b, c, k in product(range(1, ell), range(1, ell), range(1, ell)):
        m = Mat2(ell, 0, b, c, 0)
        assert act_on_cyclic(m, ck(k, ell)) == ck(b * pow(c * k, -1, ell), ell)
    for b, k in product(range(1, ell), range(1, ell)):
        m = Mat2(ell, 0, b, pow(b, -1, ell), 0)
        assert act_on_cyclic(m, ck(k, ell)) == ck(b * b * pow(k, -1, ell), ell)


def test_action_errors():
    with pytest.raises(MismatchedModulus):
        act_on_cyclic(Mat2.identity(5), ck(1, 7))
    with pytest.raises(SingularMatrix):
        act_on_vector(Mat2(5, 1, 1, 1, 1), TorsionVector(5, 1, 0))


@given(st.sampled_from([4, 6, 8, 9, 12]).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, n - 1), st.integers(0, n - 1))))
def test_cyclic_of_is_span_invariant(args):
    n, x, y = args
    if x == 0 and y == 0:
        return
    c = cyclic_of(x, y, n)
    assert (x % n, y % n) in c.elements()
    assert cyc_table(n).modules[cyc_table(n).position(c)] == c
