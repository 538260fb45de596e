"""Bounded complexes: homology, truncations, cones, resolutions and windows."""

import random

import pytest
from hypothesis import given, strategies as st

from cosupport import dercat as dc
from cosupport import finmod as fm
from cosupport.finring import CATALOG, catalog_ring
from cosupport.verify import Profile, random_complex, random_module

SMALL = Profile(name="small", max_module=64, max_degrees=4)


def quo(R, *gens):
    return fm.build_module(R, {"quotient": list(gens)})


def two_by_two(R):
    """0 -> Z/4 --2--> Z/4 -> 0 in degrees 1, 0."""
    return dc.two_term(fm.mult_map(fm.regular_module(R), (2,)))


@st.composite
def complexes(draw, names=CATALOG):
    R = catalog_ring(draw(st.sampled_from(names)))
    rng = random.Random(draw(st.integers(0, 10**6)))
    return random_complex(R, rng, SMALL, want_multi=rng.random() < 0.5)


# -- construction and homology ----------------------------------------------------------


def test_build_examples(z4):
    C = two_by_two(z4)
    assert (C.lo, C.hi) == (0, 1)
    Z4 = fm.regular_module(z4)
    C1 = dc.build_complex(z4, {"modules": {"0": Z4}})
    assert (C1.lo, C1.hi) == (0, 0)
    bad = {"modules": {"0": Z4, "1": Z4, "2": Z4}, "maps": {"2": [[1]], "1": [[2]]}}
    with pytest.raises(dc.ComplexError, match="degree 2"):
        dc.build_complex(z4, bad)


def test_missing_module_reference(z4):
    with pytest.raises(dc.ComplexError, match="missing module"):
        dc.build_complex(z4, {"modules": {"0": fm.regular_module(z4)}, "maps": {"1": [[2]]}})


def test_homology_examples(z4):
    h = dc.homology(two_by_two(z4))
    assert h.orders() == {1: [2], 0: [2]}
    assert (h.inf, h.sup) == (0, 1)
    exact = dc.two_term(fm.identity_map(fm.regular_module(z4)))
    assert dc.homology(exact).modules == {}
    assert exact.is_zero_object()
    M = quo(z4, 2)
    assert dc.homology(dc.concentrated(M)).modules[0].orders == M.orders


def test_truncation_examples(z4):
    C = two_by_two(z4)
    G = dc.shift_truncate(C, "trunc_ge", 1)
    assert (G.lo, G.hi) == (1, 1) and list(G.module(1).orders) == [2]
    assert dc.shift_truncate(C, "shift", 0) == C
    L = dc.shift_truncate(C, "trunc_le", 0)
    assert (L.lo, L.hi) == (0, 0) and list(L.module(0).orders) == [2]


def test_cone_examples(z4):
    Z4 = dc.concentrated(fm.regular_module(z4))
    c = dc.cone(dc.mult_chain(Z4, (2,)))
    assert dc.homology_orders(c) == {0: 2, 1: 2}
    zero = dc.zero_complex(z4)
    C = two_by_two(z4)
    into = dc.ChainMap(zero, C, {})
    assert dc.homology_orders(dc.cone(into)) == dc.homology_orders(C)


def test_not_a_chain_map(z4):
    C = two_by_two(z4)
    Z4 = fm.regular_module(z4)
    with pytest.raises(dc.ComplexError):
        dc.ChainMap(C, C, {0: fm.identity_map(Z4), 1: fm.zero_map(Z4, Z4)})


# -- resolutions and windows --------------------------------------------------------------


def test_periodic_resolution(z4):
    res = dc.free_resolution_window(quo(z4, 2), 3)
    assert res.ranks == [1, 1, 1, 1]
    assert all(res.coeff[i] == [[(2,)]] for i in (1, 2, 3))
    assert dc.free_resolution_window(fm.regular_module(z4), 3).ranks == [1]


def test_z3_over_z6_resolution(z6):
    res = dc.free_resolution_window(quo(z6, 3), 2)
    assert res.ranks == [1, 1, 1]
    assert res.coeff[1] == [[(3,)]] and res.coeff[2] == [[(2,)]]
    # exact below the top of the window, H_0 = M
    h = dc.homology_orders(res.as_complex())
    assert {k: v for k, v in h.items() if k < res.length} == {0: 3}


def test_tor_ext_z2(z4):
    Z2 = quo(z4, 2)
    tor = dc.ext_tor_window(Z2, Z2, "tor", 0, 3)
    ext = dc.ext_tor_window(Z2, Z2, "ext", 0, 3)
    assert {i: list(H.orders) for i, H in tor.items()} == {i: [2] for i in range(4)}
    assert {i: list(H.orders) for i, H in ext.items()} == {i: [2] for i in range(4)}


def test_tor_zero_unit(z6):
    M = quo(z6, 2)
    tor = dc.ext_tor_window(fm.regular_module(z6), M, "tor", 0, 2)
    assert list(tor) == [0] and tor[0].size == M.size


def test_window_cap(z4):
    with pytest.raises(dc.ComplexError):
        dc.ext_tor_window(quo(z4, 2), quo(z4, 2), "tor", 0, 100)


# -- nonvanishing criteria -------------------------------------------------------------------


def test_nonvanishing_examples(z4, z6):
    m = z4.spectrum[0]
    assert dc.derived_nonvanishing(dc.concentrated(quo(z4, 2)), m, "rhom_residue", validate=True) == (True, 0)
    assert dc.derived_nonvanishing(dc.zero_complex(z4), m, "rhom_residue")[0] is False
    two = z6.spectrum[0]
    assert dc.derived_nonvanishing(dc.concentrated(quo(z6, 3)), two, "tensor_residue", validate=True)[0] is False


def test_duality_examples(z4, z6):
    D = dc.apply_duality(two_by_two(z4), "D_R")
    assert dc.homology_orders(D) == {0: 2, -1: 2}
    assert dc.apply_duality(dc.zero_complex(z4), "D_R").is_zero_object()
    M = fm.direct_sum([quo(z6, 2), quo(z6, 3)]).module
    C = dc.concentrated(M)
    X = dc.apply_duality(C, "colocalize", z6.spectrum[0])
    assert dc.homology_orders(X) == {0: 2}


# -- invariants ---------------------------------------------------------------------------------


@given(complexes())
def test_d_squared_and_euler(C):
    C.validate()
    assert dc.euler_check(C)
    h = dc.homology(C)
    assert {n: H.size for n, H in h.modules.items()} == dc.homology_orders(C)


@given(complexes(), st.integers(-2, 3))
def test_truncations_keep_homology(C, n):
    h = dc.homology_orders(C)
    ge = dc.homology_orders(dc.trunc_ge(C, n))
    le = dc.homology_orders(dc.trunc_le(C, n))
    assert ge == {k: v for k, v in h.items() if k >= n}
    assert le == {k: v for k, v in h.items() if k <= n}
    dc.trunc_ge(C, n).validate()
    dc.trunc_le(C, n).validate()


@given(complexes(), st.integers(-3, 3))
def test_shift(C, k):
    S = dc.shift(C, k)
    S.validate()
    assert dc.homology_orders(S) == {n + k: v for n, v in dc.homology_orders(C).items()}


@given(complexes(), st.data())
def test_cones(C, data):
    assert dc.cone(dc.identity_chain(C)).is_zero_object()
    r = data.draw(st.sampled_from(C.ring.elements()))
    f = dc.mult_chain(C, r)
    f.validate()
    K = dc.cone(f)
    K.validate()
    # long exact sequence: H_n(cone) sits between H_n(C) and H_{n-1}(C)
    h, hk = dc.homology_orders(C), dc.homology_orders(K)
    for n, o in hk.items():
        assert (h.get(n, 1) * h.get(n - 1, 1)) % o == 0


@given(complexes())
def test_duality_commutes_with_homology(C):
    D = dc.apply_duality(C, "D_R")
    assert dc.homology_orders(D) == {-n: o for n, o in dc.homology_orders(C).items()}
    for n, H in dc.homology(C).modules.items():
        HD = dc.homology_module(D, -n)[0]
        assert fm.annihilator(HD) == fm.annihilator(H)
    for p in C.ring.spectrum:
        X = dc.apply_duality(C, "colocalize", p)
        L = dc.apply_duality(C, "localize", p)
        assert dc.homology_orders(X) == dc.homology_orders(L)
        want = {n: fm.localize(H, p).size for n, H in dc.homology(C).modules.items()}
        assert dc.homology_orders(L) == {n: o for n, o in want.items() if o > 1}


@given(complexes())
def test_nonvanishing_matches_windows(C):
    for p in C.ring.spectrum:
        for kind in ("rhom_residue", "tensor_residue"):
            dc.derived_nonvanishing(C, p, kind, validate=True)


@given(st.sampled_from(["z4", "z6", "z8", "f2x2", "z2xz4"]), st.integers(0, 10**6))
def test_tor_symmetry(name, seed):
    R = catalog_ring(name)
    rng = random.Random(seed)
    M, N = random_module(R, rng, 16), random_module(R, rng, 16)
    a = dc.ext_tor_window(M, N, "tor", 0, 2)
    b = dc.ext_tor_window(N, M, "tor", 0, 2)
    assert {i: H.size for i, H in a.items()} == {i: H.size for i, H in b.items()}
