"""Linear algebra over Z/n checked against element enumeration."""

from itertools import product
from math import gcd, prod

from hypothesis import given, strategies as st

from cosupport.linalg import (
    Factorization, Quotient, Subgroup, elements, group_kernel, image_size, invariant_factors, lcm,
)


@st.composite
def groups(draw):
    # small ambient groups (Z/e1 + ... + Z/ek) so that enumeration stays cheap
    n = draw(st.sampled_from([4, 6, 8, 12]))
    divs = [d for d in range(2, n + 1) if n % d == 0]
    orders = draw(st.lists(st.sampled_from(divs), min_size=1, max_size=3))
    ngen = draw(st.integers(0, 3))
    gens = [[draw(st.integers(0, e - 1)) for e in orders] for _ in range(ngen)]
    return orders, gens, lcm(*orders)


def _span(orders, gens):
    out = set()
    for coef in product(*[range(lcm(*orders))] * len(gens)) if gens else [()]:
        v = tuple(sum(c * g[t] for c, g in zip(coef, gens)) % e for t, e in enumerate(orders))
        out.add(v)
    return out


@given(groups())
def test_subgroup_matches_enumeration(g):
    orders, gens, n = g
    S = Subgroup(orders, gens, n)
    span = _span(orders, gens)
    assert S.size == len(span)
    for v in elements(orders):
        assert S.contains(v) == (tuple(v) in span)
    for v in span:
        c = S.coords(list(v))
        back = [sum(a * b[t] for a, b in zip(c, S.basis)) % e for t, e in enumerate(orders)]
        assert tuple(back) == v


@given(groups())
def test_quotient_order(g):
    orders, gens, n = g
    Q = Quotient(orders, gens, n)
    assert Q.size * len(_span(orders, gens)) == prod(orders)
    # proj kills the generators and is onto
    for v in gens:
        assert not any(Q.project(v))
    images = {tuple(Q.project(v)) for v in elements(orders)}
    assert len(images) == Q.size


@given(groups(), st.data())
def test_group_kernel(g, data):
    src, _, n = g
    tgt = data.draw(st.lists(st.sampled_from([d for d in range(2, n + 1) if n % d == 0]),
                             min_size=1, max_size=2))
    F = [[data.draw(st.integers(0, n - 1)) for _ in src] for _ in tgt]
    # keep only well-defined maps: e_j * F[t][j] = 0 mod tgt[t]
    F = [[(x * (t // gcd(t, s))) % t for x, s in zip(row, src)] for row, t in zip(F, tgt)]
    ker = set()
    for v in elements(src):
        if all(sum(a * b for a, b in zip(row, v)) % t == 0 for row, t in zip(F, tgt)):
            ker.add(tuple(v))
    gens = group_kernel(F, src, tgt, n)
    assert _span(src, gens) == ker
    assert image_size(F, tgt, n) * len(ker) == prod(src)


def test_solve_and_kernel():
    f = Factorization([[2, 4], [0, 6]], 2, 2, 8)
    x = f.solve([2, 6])
    assert x is not None
    assert [(2 * x[0] + 4 * x[1]) % 8, (6 * x[1]) % 8] == [2, 6]
    assert f.solve([1, 0]) is None
    for v in f.kernel():
        assert (2 * v[0] + 4 * v[1]) % 8 == 0 and (6 * v[1]) % 8 == 0


def test_invariant_factors():
    assert invariant_factors([2, 3]) == [6]
    assert invariant_factors([4, 2]) == [2, 4]
    assert invariant_factors([]) == []
