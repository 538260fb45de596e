"""The symbolic DVR layer: parser, rule tables, duality and demos."""

import pytest
from hypothesis import given, strategies as st

from cosupport import dvr
from cosupport.dvr import MAX, ZERO, parse

BOTH = {ZERO, MAX}


def sup(expr, kind):
    return dvr.dvr_support(expr, kind).primes


def test_parse():
    o = parse("R + 2*E + T(3) + K")
    assert o.counts == {"R": 1, "E": 2, ("T", 3): 1, "K": 1}
    assert str(o) == "R + K + T(3) + 2*E"
    assert parse("0").is_zero()
    assert parse("T(1) + T(1)").counts == {("T", 1): 2}
    for bad in ("", "Q", "T(0)", "R +", "2*"):
        with pytest.raises(dvr.DVRError):
            parse(bad)


def test_published_table():
    assert sup("R", "cosupp") == {MAX}
    assert sup("R", "supp") == BOTH
    assert sup("K", "cosupp") == {ZERO} == sup("K", "supp")
    assert sup("T(1)", "cosupp") == {MAX} == sup("T(1)", "supp")
    assert sup("E", "supp") == {MAX}
    assert sup("E", "cosupp") == BOTH == dvr.CONTEXT.U(MAX)


def test_remaining_table():
    assert sup("K", "coSupp") == BOTH
    assert sup("E", "Coass") == {ZERO}
    assert sup("R", "Coass") == {MAX}
    assert sup("R", "Ass") == {ZERO} == sup("K", "Ass")
    assert sup("T(2)", "Ass") == {MAX} == sup("E", "Ass")


def test_additivity():
    for kind in dvr.DVR_KINDS:
        assert sup("R + E", kind) == sup("R", kind) | sup("E", kind)
    assert sup("0", "supp") == set()


def test_duality_examples():
    assert dvr.dvr_dual("R") == parse("E")
    assert dvr.dvr_dual("T(3)") == parse("T(3)")
    assert dvr.dvr_dual("E") == parse("R")
    with pytest.raises(dvr.DVRError, match="outside closed duality table"):
        dvr.dvr_dual("R + K")


def test_spectrum():
    assert ZERO <= MAX and not MAX <= ZERO
    assert dvr.CONTEXT.V(ZERO) == BOTH
    assert dvr.CONTEXT.U(ZERO) == {ZERO}
    assert [p.label for p in dvr.CONTEXT.maximal] == ["m"]


def test_strictness_demo():
    rep = dvr.dvr_demo("strictness")
    assert rep["verdict"] == "pass"
    rows = {r["object"]: r for r in rep["details"]["rows"]}
    assert rows["R"]["display"] == "cosupp R = {m} ⊊ Spec R = supp R"
    assert rows["E"]["display"] == "supp E = {m} ⊊ Spec R = cosupp E"
    assert rows["K"]["smaller_set"] == ["(0)"] and rows["K"]["larger_set"] == ["(0)", "m"]


def test_cor34_demo():
    rep = dvr.dvr_demo("cor34")
    assert rep["verdict"] == "flagged"
    d = rep["details"]
    assert d["literal_holds"] is False and d["minmin_holds"] is True
    assert d["cosupp"] == ["(0)", "m"] and d["min_cosupp_H"] == ["(0)"]


def test_maxmin_demo():
    rep = dvr.dvr_demo("maxmin")
    assert rep["verdict"] == "pass"
    rows = {r["object"]: r for r in rep["details"]["rows"]}
    assert rows["E"]["max_supp"] == ["m"] == rows["E"]["max_cosupp"]
    assert rows["K"]["max_supp"] == ["(0)"] == rows["K"]["max_cosupp"]
    with pytest.raises(dvr.DVRError):
        dvr.dvr_demo("nope")


def test_complex_helpers():
    H = dvr.parse_complex({"0": "E", 1: "R", "2": "0"})
    assert sorted(H) == [0, 1]
    assert dvr.complex_coSupp(H).primes == BOTH
    assert dvr.complex_min_cosupp(H) == {ZERO}
    with pytest.raises(dvr.DVRError):
        dvr.cor34_literal(H)


objects = st.dictionaries(st.sampled_from(["R", "K", "E", ("T", 1), ("T", 2), ("T", 5)]),
                          st.integers(0, 3)).map(dvr.BasicObject.of)


@given(objects)
def test_consistency(o):
    checks = dvr.consistency_checks(o)
    assert all(checks.values()), checks


@given(objects)
def test_strict_exactly_at_frac(o):
    a, b = sup(o, "cosupp"), sup(o, "coSupp")
    assert a <= b
    if len(o.terms) == 1:
        assert (a < b) == ("K" in o.counts)
