"""Symbolic layer over a complete discrete valuation ring.

Objects are formal finite sums over the alphabet

    R      the ring itself (Free)
    K      its fraction field (Frac)
    T(k)   R/m^k, k >= 1 (Tors)
    E      the injective envelope E(R/m) = K/R (Env)

and every invariant is a union of per-generator table values.  The spectrum
is {zero, max} with zero ⊂ max.  Complexes are given by their homology, one
object per degree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .finring import maximal, minimal
from .supports import SupportSet


@dataclass(frozen=True)
class DVRPrime:
    name: str           # "zero" or "max"

    @property
    def local_index(self) -> int:
        return 0 if self.name == "zero" else 1

    @property
    def label(self) -> str:
        return "(0)" if self.name == "zero" else "m"

    def __le__(self, other):
        return self.name == "zero" or other.name == "max"

    def to_json(self):
        return {"local_index": self.local_index, "generators": [] if self.name == "zero" else ["t"]}

    def __repr__(self):
        return self.label


ZERO = DVRPrime("zero")
MAX = DVRPrime("max")


@dataclass(frozen=True)
class DVRContext:
    description: str = "k[[t]], k a finite field"
    spectrum: tuple = (ZERO, MAX)
    maximal: tuple = (MAX,)

    def U(self, p):
        return frozenset(q for q in self.spectrum if q <= p)

    def V(self, p):
        return frozenset(q for q in self.spectrum if p <= q)


CONTEXT = DVRContext()


class DVRError(ValueError):
    pass


@dataclass(frozen=True)
class BasicObject:
    """A formal sum: ``terms`` maps "R", "K", "E" or ("T", k) to multiplicities."""

    terms: tuple = ()

    @classmethod
    def of(cls, counts: dict) -> "BasicObject":
        for g, c in counts.items():
            if c < 0:
                raise DVRError(f"negative multiplicity for {g}")
            if isinstance(g, tuple):
                if g[0] != "T" or g[1] < 1:
                    raise DVRError(f"bad torsion summand {g}")
            elif g not in ("R", "K", "E"):
                raise DVRError(f"unknown generator {g!r}")
        items = [(g, c) for g, c in counts.items() if c > 0]
        return cls(tuple(sorted(items, key=lambda t: _gen_key(t[0]))))

    @property
    def counts(self) -> dict:
        return dict(self.terms)

    def generators(self):
        return [g for g, _ in self.terms]

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        c = self.counts
        for g, k in other.terms:
            c[g] = c.get(g, 0) + k
        return BasicObject.of(c)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for g, c in self.terms:
            s = f"T({g[1]})" if isinstance(g, tuple) else g
            parts.append(s if c == 1 else f"{c}*{s}")
        return " + ".join(parts)


def _gen_key(g):
    order = {"R": 0, "K": 1, "T": 2, "E": 3}
    if isinstance(g, tuple):
        return order["T"], g[1]
    return order[g], 0


_TERM = re.compile(r"^(?:(\d+)\s*\*\s*)?(R|K|E|T\(\s*(\d+)\s*\)|0)$")


def parse(expr: str) -> BasicObject:
    """Parse expressions such as ``"R + 2*E + T(3) + K"``."""
    counts = {}
    text = expr.strip()
    if not text:
        raise DVRError("empty expression")
    for raw in text.split("+"):
        m = _TERM.match(raw.strip())
        if not m:
            raise DVRError(f"cannot parse term {raw.strip()!r}")
        mult = int(m.group(1) or 1)
        sym = m.group(2)
        if sym == "0":
            continue
        if sym.startswith("T"):
            k = int(m.group(3))
            if k < 1:
                raise DVRError("torsion exponent must be >= 1")
            g = ("T", k)
        else:
            g = sym
        counts[g] = counts.get(g, 0) + mult
    return BasicObject.of(counts)


def residue_field(p: DVRPrime) -> BasicObject:
    return parse("K") if p == ZERO else parse("T(1)")


_Z, _M, _B = frozenset([ZERO]), frozenset([MAX]), frozenset([ZERO, MAX])

# generator -> kind -> primes
RULES = {
    "R": {"Supp": _B, "supp": _B, "cosupp": _M, "coSupp": _M, "Ass": _Z, "Coass": _M},
    "K": {"Supp": _Z, "supp": _Z, "cosupp": _Z, "coSupp": _B, "Ass": _Z, "Coass": _Z},
    "T": {"Supp": _M, "supp": _M, "cosupp": _M, "coSupp": _M, "Ass": _M, "Coass": _M},
    "E": {"Supp": _M, "supp": _M, "cosupp": _B, "coSupp": _B, "Ass": _M, "Coass": _Z},
}
DVR_KINDS = ("Supp", "supp", "coSupp", "cosupp", "Ass", "Coass")


def dvr_support(obj, kind: str) -> SupportSet:
    """Union over summands of the rule table for ``kind``."""
    if isinstance(obj, str):
        obj = parse(obj)
    if kind not in DVR_KINDS:
        raise DVRError(f"unknown kind {kind!r}; expected one of {DVR_KINDS}")
    out, prov = set(), {}
    for g in obj.generators():
        key = g[0] if isinstance(g, tuple) else g
        for p in RULES[key][kind]:
            out.add(p)
            prov.setdefault(p, f"table:{key}")
    return SupportSet(frozenset(out), kind, prov)


def dvr_dual(obj) -> BasicObject:
    """Summandwise Matlis dual over the complete DVR."""
    if isinstance(obj, str):
        obj = parse(obj)
    out = {}
    for g, c in obj.terms:
        if g == "K":
            raise DVRError("K is outside closed duality table")
        d = {"R": "E", "E": "R"}.get(g, g)
        out[d] = out.get(d, 0) + c
    return BasicObject.of(out)


# -- complexes given by homology -------------------------------------------------------


def parse_complex(data) -> dict:
    """``{degree: expr}`` (ints or digit strings as keys) to ``{degree: BasicObject}``."""
    out = {}
    for k, v in dict(data).items():
        o = v if isinstance(v, BasicObject) else parse(v)
        if not o.is_zero():
            out[int(k)] = o
    return out


def homology_union(H: dict, kind: str) -> frozenset:
    out = set()
    for o in H.values():
        out |= dvr_support(o, kind).primes
    return frozenset(out)


def complex_coSupp(H: dict) -> SupportSet:
    """Big cosupport of a complex from its homology (a union over degrees)."""
    return SupportSet(homology_union(H, "coSupp"), "coSupp")


def complex_min_cosupp(H: dict) -> frozenset:
    """The certified part of the small cosupport: its minimal elements."""
    return minimal(homology_union(H, "cosupp"))


def cor34_literal(H: dict):
    """(table cosupp, min of homology cosupp) for a module-like complex.

    The literal statement predicts these agree; for a single homology
    object the table value is exact.
    """
    if len(H) != 1:
        raise DVRError("the literal probe needs homology in a single degree")
    (o,) = H.values()
    return dvr_support(o, "cosupp").primes, minimal(homology_union(H, "cosupp"))


ALPHABET = ("R", "K", "T(1)", "T(2)", "T(3)", "E")


def dvr_demo(probe: str) -> dict:
    """Run one of the demos and return a report object."""
    if probe == "strictness":
        rows = []
        for expr, small, big in (("R", "cosupp", "supp"), ("E", "supp", "cosupp"), ("K", "cosupp", "coSupp")):
            a, b = dvr_support(expr, small), dvr_support(expr, big)
            rows.append({"object": expr, "smaller": small, "larger": big,
                         "smaller_set": a.labels(), "larger_set": b.labels(),
                         "strict": a.primes < b.primes,
                         "display": f"{small} {expr} = {_fmt(a)} ⊊ {_fmt(b)} = {big} {expr}"})
        ok = all(r["strict"] for r in rows)
        return {"property": "dvr-strictness", "verdict": "pass" if ok else "fail", "details": {"rows": rows}}
    if probe == "cor34":
        H = {0: parse("E")}
        table, mins = cor34_literal(H)
        literal = table == mins
        minmin = minimal(table) == mins
        return {"property": "dvr-cor34", "verdict": "flagged" if not literal and minmin else
                ("pass" if literal and minmin else "fail"),
                "details": {"object": "E in degree 0", "cosupp": _labels(table),
                            "min_cosupp_H": _labels(mins), "literal_holds": literal,
                            "minmin_holds": minmin}}
    if probe == "maxmin":
        rows = []
        for expr in ALPHABET:
            s, c, C = (dvr_support(expr, k).primes for k in ("supp", "cosupp", "coSupp"))
            rows.append({"object": expr, "max_supp": _labels(maximal(s)), "max_cosupp": _labels(maximal(c)),
                         "min_cosupp": _labels(minimal(c)), "min_coSupp": _labels(minimal(C)),
                         "max_ok": maximal(s) == maximal(c), "min_ok": minimal(c) == minimal(C)})
        ok = all(r["max_ok"] and r["min_ok"] for r in rows)
        return {"property": "dvr-maxmin", "verdict": "pass" if ok else "fail", "details": {"rows": rows}}
    raise DVRError(f"unknown probe {probe!r}; expected strictness, cor34 or maxmin")


def _labels(ps):
    return [p.label for p in sorted(ps, key=lambda p: p.local_index)]


def _fmt(s):
    labels = s.labels() if isinstance(s, SupportSet) else _labels(s)
    if len(labels) == 2:
        return "Spec R"
    return "{" + ", ".join(labels) + "}"


def consistency_checks(obj) -> dict:
    """Duality, inclusion and max/min checks for one object; name -> bool."""
    if isinstance(obj, str):
        obj = parse(obj)
    sup = {k: dvr_support(obj, k).primes for k in DVR_KINDS}
    out = {
        "cosupp<=coSupp": sup["cosupp"] <= sup["coSupp"],
        "max(supp)=max(cosupp)": maximal(sup["supp"]) == maximal(sup["cosupp"]),
        "min(cosupp)=min(coSupp)": minimal(sup["cosupp"]) == minimal(sup["coSupp"]),
    }
    if len(obj.terms) == 1:
        out["strict_iff_K"] = (sup["cosupp"] < sup["coSupp"]) == ("K" in obj.counts)
    if "K" not in obj.counts and not obj.is_zero():
        D = dvr_dual(obj)
        out["cosupp=supp(D)"] = sup["cosupp"] == dvr_support(D, "supp").primes
        out["coSupp=Supp(D)"] = sup["coSupp"] == dvr_support(D, "Supp").primes
        out["Coass=Ass(D)"] = sup["Coass"] == dvr_support(D, "Ass").primes
        out["D(D)=id"] = dvr_dual(D) == obj
    return out


__all__ = [
    "DVRPrime", "ZERO", "MAX", "DVRContext", "CONTEXT", "DVRError", "BasicObject", "parse",
    "residue_field", "RULES", "DVR_KINDS", "dvr_support", "dvr_dual", "parse_complex",
    "homology_union", "complex_coSupp", "complex_min_cosupp", "cor34_literal", "dvr_demo",
    "consistency_checks", "ALPHABET",
]
