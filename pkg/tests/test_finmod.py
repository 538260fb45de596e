"""Finite modules: constructors, Hom/tensor, localization and dualities."""

import random

import pytest
from hypothesis import given, strategies as st

from cosupport import finmod as fm
from cosupport.finring import CATALOG, Ideal, catalog_ring
from cosupport.verify import random_module


def quo(R, *gens):
    return fm.build_module(R, {"quotient": list(gens)})


@st.composite
def modules(draw, cap=64, names=CATALOG):
    R = catalog_ring(draw(st.sampled_from(names)))
    rng = random.Random(draw(st.integers(0, 10**6)))
    return random_module(R, rng, cap)


@st.composite
def sub_sequences(draw):
    """A short exact sequence 0 -> S -> M -> M/S -> 0."""
    M = draw(modules())
    k = draw(st.integers(0, 2))
    gens = [[draw(st.integers(0, e - 1)) for e in M.orders] for _ in range(k)]
    S = fm.submodule(M, gens)
    Q = fm.quotient_module(M, gens)
    return S.incl, Q.proj


# -- examples -----------------------------------------------------------------------------


def test_cokernel_of_two(z4):
    M = fm.build_module(z4, {"cokernel": [[2]]})
    assert list(M.orders) == [2]
    assert fm.mult_map(M, (2,)).is_zero()


def test_free_rank_one():
    for name in CATALOG:
        R = catalog_ring(name)
        assert fm.build_module(R, {"free": 1}).size == R.order


def test_z3_over_z6(z6):
    M = quo(z6, 3)
    assert M.size == 3
    two, three = z6.spectrum
    assert fm.localize(M, two).is_zero()
    assert fm.localize(M, three).size == 3


def test_hom_examples(z4, z6):
    Z2 = quo(z4, 2)
    assert fm.hom_module(Z2, fm.regular_module(z4)).size == 2
    assert fm.hom_module(Z2, fm.zero_module(z4)).size == 1
    assert fm.hom_module(quo(z6, 3), quo(z6, 2)).size == 1


def test_tensor_examples(z4, z6):
    Z2 = quo(z4, 2)
    assert fm.tensor_module(Z2, Z2).size == 2
    assert fm.tensor_module(quo(z6, 3), quo(z6, 2)).size == 1
    for name in CATALOG:
        R = catalog_ring(name)
        M = random_module(R, random.Random(name), 64)
        assert fm.tensor_module(fm.regular_module(R), M).size == M.size


def test_map_spaces(z4, z12):
    two = fm.mult_map(fm.regular_module(z4), (2,))
    assert fm.map_spaces(two, "kernel").module.size == 2
    assert fm.map_spaces(fm.identity_map(fm.regular_module(z4)), "cokernel").module.is_zero()
    three = fm.mult_map(fm.regular_module(z12), (3,))
    img = fm.map_spaces(three, "image").module
    assert list(img.orders) == [4]


def test_localization_examples(z6, z12):
    two, three = z6.spectrum
    assert fm.localize(quo(z6, 2), three).is_zero()
    assert fm.localize(fm.regular_module(z12), z12.spectrum[0]).size == 4
    R = catalog_ring("z8")
    M = quo(R, 4)
    assert fm.localize(M, R.spectrum[0]) == M


def test_char_dual_and_envelopes(z4, z6):
    assert list(fm.char_dual(fm.regular_module(z4)).orders) == [4]
    assert list(fm.injective_envelope(z4, z4.spectrum[0]).orders) == [4]
    assert fm.injective_envelope(z6, z6.spectrum[0]).size == 2
    gf4 = catalog_ring("gf4")
    assert fm.injective_envelope(gf4, gf4.spectrum[0]).size == 4


def test_foreign_prime_rejected(z4, z6):
    with pytest.raises(fm.ModuleError):
        fm.injective_envelope(z4, z6.spectrum[0])


def test_matlis_examples(z4, z6):
    M = quo(z6, 2)
    assert fm.matlis_dual(M, route="literal").size == 2
    assert fm.matlis_dual(M, route="char").size == 2
    assert fm.matlis_dual(fm.zero_module(z6)).is_zero()
    N = quo(z4, 2)
    m = z4.spectrum[0]
    assert fm.matlis_dual(N, m, route="literal").size == fm.matlis_dual(N, route="literal").size


def test_colocalize_examples(z6, z12):
    two, three = z6.spectrum
    assert fm.colocalize(quo(z6, 2), two).size == 2
    assert fm.colocalize(quo(z6, 2), three).is_zero()
    assert fm.colocalize(fm.regular_module(z12), z12.spectrum[0]).size == 4


def test_tilde_examples(z4, z6):
    assert fm.tilde_bidual(quo(z6, 2)).size == 2
    assert fm.tilde_bidual(fm.zero_module(z6)).is_zero()
    assert fm.tilde_bidual(fm.regular_module(z4)).size == 4


def test_annihilator_examples(z4, z12):
    assert fm.annihilator(quo(z4, 2)) == Ideal(z4, [(2,)])
    assert fm.annihilator(fm.regular_module(z12)) == Ideal(z12, [])
    A = fm.annihilator(quo(z12, 3))
    assert sorted(x[0] for x in A.elements()) == [0, 3, 6, 9]


def test_bad_action_rejected(z4):
    with pytest.raises(fm.ModuleError):
        fm.FinModule(z4, [3], [[[1]]])


# -- invariants ------------------------------------------------------------------------------


@given(modules())
def test_double_dual(M):
    assert fm.char_dual(M).size == M.size
    assert fm.double_dual_map(M).is_iso()


@given(modules(cap=32))
def test_collapse_isomorphisms(M):
    assert fm.tilde_comparison(M).is_iso()
    assert fm.matlis_comparison(M).is_iso()
    for p in M.ring.spectrum:
        assert fm.colocalization_comparison(M, p).is_iso()


@given(modules())
def test_annihilator_kills(M):
    A = fm.annihilator(M)
    for r in A.basis:
        assert fm.mult_map(M, r).is_zero()
    for r in M.ring.elements():
        assert A.contains(r) == fm.mult_map(M, r).is_zero()


@given(sub_sequences())
def test_exactness_and_duals(seq):
    i, p = seq
    A, B, C = i.source, i.target, p.target
    assert B.size == A.size * C.size
    assert (p @ i).is_zero()
    assert i.is_injective() and p.is_surjective()
    # the character dual reverses the sequence exactly
    Di, Dp = fm.char_dual_map(i), fm.char_dual_map(p)
    assert Dp.is_injective() and Di.is_surjective()
    assert (Di @ Dp).is_zero()
    assert fm.map_spaces(Di, "kernel").module.size == Dp.image_size()


@given(sub_sequences())
def test_envelope_injective(seq):
    # Hom(-, E) turns 0 -> A -> B -> C -> 0 into an exact sequence
    i, p = seq
    R = i.source.ring
    E = fm.envelope_sum(R).module
    hp, hi = fm.hom_pre(p, E), fm.hom_pre(i, E)
    assert hp.is_injective() and hi.is_surjective()
    assert (hi @ hp).is_zero()
    assert fm.map_spaces(hi, "kernel").module.size == hp.image_size()


@given(modules(cap=16), modules(cap=16))
def test_adjunction_orders(M, N):
    if M.ring != N.ring:
        N = random_module(M.ring, random.Random(N.size), 16)
    E = fm.envelope_sum(M.ring).module
    lhs = fm.hom_module(fm.tensor_module(M, N), E).size
    rhs = fm.hom_module(M, fm.hom_module(N, E)).size
    assert lhs == rhs


@given(modules(cap=32))
def test_envelope_socle(M):
    R = M.ring
    for m in R.spectrum:
        E = fm.injective_envelope(R, m)
        assert fm.socle(E, m).module.size == m.residue_size


@given(modules())
def test_json_round_trip(M):
    assert fm.module_from_json(M.ring, M.to_json()) == M
