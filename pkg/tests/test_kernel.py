"""Smith normal form kernel: both backends against the defining identities."""

from math import gcd

import pytest
from hypothesis import given, strategies as st

from cosupport import _kernel
from cosupport._kernel import snf_mod_py, snf_mod_c, unit_for, xgcd
from cosupport.linalg import matmul, identity

MODULI = [2, 4, 6, 8, 9, 12, 72, 1024]


@st.composite
def matrices(draw):
    n = draw(st.sampled_from(MODULI))
    r = draw(st.integers(1, 6))
    c = draw(st.integers(1, 6))
    A = [[draw(st.integers(0, n - 1)) for _ in range(c)] for _ in range(r)]
    return A, r, c, n


def _check_snf(A, r, c, n, U, Ui, V, d):
    assert matmul(U, Ui, n) == identity(r)
    D = matmul(matmul(U, A, n), V, n)
    for i in range(r):
        for j in range(c):
            want = d[i] % n if i == j and i < len(d) else 0
            assert D[i][j] == want
    assert len(d) == min(r, c)
    for a, b in zip(d, d[1:]):
        assert n % a == 0 and b % a == 0


@given(matrices())
def test_python_snf_identity(m):
    A, r, c, n = m
    _check_snf(A, r, c, n, *snf_mod_py(A, r, c, n))


@pytest.mark.skipif(snf_mod_c is None, reason="compiled kernel not built")
@given(matrices())
def test_backends_agree(m):
    A, r, c, n = m
    assert snf_mod_c(A, r, c, n) == snf_mod_py(A, r, c, n)


def test_backend_selected():
    assert _kernel.BACKEND in ("cython", "python")
    if snf_mod_c is not None:
        assert _kernel.BACKEND == "cython"


def test_small_cases():
    # [2] over Z/4: pivot 2; [0] stays a zero pivot (value n)
    assert snf_mod_py([[2]], 1, 1, 4)[3] == [2]
    assert snf_mod_py([[0]], 1, 1, 4)[3] == [4]
    # diag(2, 3) over Z/6 is equivalent to diag(1, 6)
    assert snf_mod_py([[2, 0], [0, 3]], 2, 2, 6)[3] == [1, 6]


@given(st.integers(0, 500), st.integers(0, 500))
def test_xgcd(a, b):
    g, s, t = xgcd(a, b)
    assert g == gcd(a, b)
    assert s * a + t * b == g


@given(st.sampled_from(MODULI), st.integers(0, 2000))
def test_unit_for(n, a):
    u = unit_for(a % n, n)
    assert gcd(u, n) == 1
    assert (u * a) % n == gcd(a, n) % n
