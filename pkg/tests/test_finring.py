"""Finite rings: catalog construction, decomposition, spectrum, loci."""

import itertools
from math import prod

import pytest
from hypothesis import given, strategies as st

from cosupport.finring import (
    CATALOG, Ideal, RingError, U, V, build_ring, catalog_ring, closure, is_field, maximal, minimal,
    ring_to_json, unit_group_order, zariski_closure,
)

F2X2 = {"kind": "quot", "char": 2, "vars": ["x"], "relations": [["x", 2]]}


def elems(I):
    return sorted(x[0] for x in I.elements())


def test_zmod12():
    R = catalog_ring("z12")
    assert list(R.orders) == [12] and R.order == 12
    assert [elems(p.ideal) for p in R.spectrum] == [[0, 2, 4, 6, 8, 10], [0, 3, 6, 9]]
    assert [p.label for p in R.spectrum] == ["(2)", "(3)"]


def test_gf4_unit_order():
    R = catalog_ring("gf4")
    assert list(R.orders) == [2, 2]
    one_plus_x = R.add(R.one, (0, 1))
    assert unit_group_order(R, one_plus_x) == 3
    assert is_field(R)


def test_gf8_is_a_field():
    R = build_ring({"kind": "gf", "p": 2, "deg": 3, "min_poly": [1, 0, 1, 1]})
    assert R.order == 8 and is_field(R)
    assert [p.label for p in R.spectrum] == ["(0)"]


def test_reducible_min_poly_rejected():
    with pytest.raises(RingError):
        build_ring({"kind": "gf", "p": 2, "deg": 2, "min_poly": [1, 0, 1]})


def test_product():
    R = build_ring({"kind": "product", "factors": [{"kind": "zmod", "n": 4}, F2X2]})
    assert R.order == 16 and len(R.local_factors) == 2


def test_product_maximal_ideals():
    R = build_ring({"kind": "product", "factors": [F2X2, {"kind": "zmod", "n": 9}]})
    sizes = sorted(p.ideal.size for p in R.spectrum)
    # (x) x Z/9 has 2*9 elements, F2[x]/(x^2) x (3) has 4*3
    assert sizes == [12, 18]
    for f in R.local_factors:
        assert f.ring.is_local


def test_z6_idempotents():
    R = catalog_ring("z6")
    assert sorted(f.idempotent[0] for f in R.local_factors) == [3, 4]
    assert sorted(f.ring.order for f in R.local_factors) == [2, 3]
    brute = sorted(x[0] for x in R.elements() if R.mult(x, x) == x and any(x) and x != R.one)
    assert brute == [3, 4]


def test_z4_local():
    R = catalog_ring("z4")
    assert R.is_local
    assert R.local_factors[0].idempotent == R.one
    assert [p.label for p in R.spectrum] == ["(2)"]
    assert elems(R.jacobson_radical) == [0, 2]


def test_loci_z12():
    R = catalog_ring("z12")
    two, three = R.spectrum
    assert V(R, Ideal(R, [(6,)])) == {two, three}
    assert V(R, Ideal(R, [(1,)])) == frozenset()
    assert V(R, Ideal(R, [(4,)])) == {two}
    assert closure(R, [two]) == {two}
    assert U(R, two) == {two}
    assert minimal([two, three]) == maximal([two, three]) == {two, three}
    assert zariski_closure(R, [two, three]) == {two, three}


def test_unknown_ring():
    with pytest.raises(RingError):
        build_ring("z13x")


@pytest.mark.parametrize("name", CATALOG)
def test_catalog_invariants(name):
    R = catalog_ring(name)
    assert R.order == prod(f.ring.order for f in R.local_factors)
    es = [f.idempotent for f in R.local_factors]
    total = R.zero
    for e in es:
        total = R.add(total, e)
        assert R.mult(e, e) == e
    assert total == R.one
    for a, b in itertools.combinations(es, 2):
        assert R.mult(a, b) == R.zero
    J = R.jacobson_radical
    inter = R.spectrum[0].ideal
    for p in R.spectrum[1:]:
        inter = inter & p.ideal
    assert J == inter
    for x in J.elements():
        assert R.power(x, R.order) == R.zero
    for p in R.spectrum:
        assert p.residue_size >= 2
        assert p.ideal.is_proper


@pytest.mark.parametrize("name", CATALOG)
def test_residue_fields(name):
    # R/p has no zero divisors: a*b in p forces a or b in p
    R = catalog_ring(name)
    for p in R.spectrum:
        for a in R.elements():
            for b in R.elements():
                if p.contains(R.mult(a, b)):
                    assert p.contains(a) or p.contains(b)


@pytest.mark.parametrize("name", CATALOG)
def test_json_round_trip(name):
    R = catalog_ring(name)
    S = build_ring(ring_to_json(R))
    assert S == R
    assert len(S.spectrum) == len(R.spectrum)


@given(st.sampled_from(CATALOG), st.data())
def test_V_lattice(name, data):
    R = catalog_ring(name)
    pick = st.lists(st.sampled_from(R.elements()), max_size=2)
    a = Ideal(R, data.draw(pick))
    b = Ideal(R, data.draw(pick))
    assert V(R, a) | V(R, b) == V(R, a & b)
    assert V(R, a) & V(R, b) == V(R, a + b)
    assert (a & b) <= a and a <= (a + b)
