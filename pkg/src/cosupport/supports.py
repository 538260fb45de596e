"""Support-type invariants of complexes over finite rings, each by several routes.

Kinds: ``Supp`` (M_p ≠ 0), ``supp`` (k(p) ⊗^L M ≠ 0), ``coSupp`` (^pM ≠ 0),
``cosupp`` (RHom(R/p, ^pM) ≠ 0), ``co_supp`` (RHom(k(p), M) ≠ 0) and
``Co_supp`` (RHom(R_p, M) ≠ 0).

Routes:
  definitional  evaluate the defining nonvanishing prime by prime;
  dual          pass through the Matlis dual D_R(M) and a dual kind;
  homology      union over homology modules of V(Ann H_i).

Disagreement between routes raises RouteDisagreement carrying all sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import dercat as dc
from . import finmod as fm
from .dercat import INF, Complex
from .finmod import FinModule, ModuleError
from .finring import Ideal, PrimeIdeal, Ring, V, maximal, minimal

KINDS = ("Supp", "supp", "coSupp", "cosupp", "co_supp", "Co_supp")
ROUTES = ("definitional", "dual", "homology")

# kind -> kind evaluated on D_R(M)
DUAL_KIND = {"Supp": "coSupp", "supp": "cosupp", "coSupp": "Supp", "cosupp": "supp",
             "co_supp": "supp", "Co_supp": "Supp"}


class RouteDisagreement(ArithmeticError):
    def __init__(self, message, sets=None):
        super().__init__(message)
        self.sets = sets or {}


@dataclass(frozen=True)
class SupportSet:
    """A set of primes with the route that produced it."""

    primes: frozenset
    kind: str = ""
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    def __iter__(self):
        return iter(sorted(self.primes, key=_prime_key))

    def __len__(self):
        return len(self.primes)

    def __contains__(self, p):
        return p in self.primes

    def __eq__(self, other):
        if isinstance(other, SupportSet):
            return self.primes == other.primes
        return self.primes == frozenset(other)

    def __hash__(self):
        return hash(self.primes)

    def __le__(self, other):
        return self.primes <= _primes(other)

    def __or__(self, other):
        return SupportSet(self.primes | _primes(other), self.kind)

    def __and__(self, other):
        return SupportSet(self.primes & _primes(other), self.kind)

    def labels(self):
        return [p.label for p in self]

    def to_json(self):
        return {"kind": self.kind, "primes": [p.to_json() for p in self],
                "labels": self.labels(),
                "provenance": {p.label: self.provenance.get(p, "") for p in self}}

    def __repr__(self):
        return "{" + ", ".join(self.labels()) + "}"


def _prime_key(p):
    return getattr(p, "local_index", 0), getattr(p, "label", str(p))


def _primes(x):
    return x.primes if isinstance(x, SupportSet) else frozenset(x)


def as_complex(C) -> Complex:
    return dc.concentrated(C) if isinstance(C, FinModule) else C


# -- per-prime nonvanishing tests ----------------------------------------------------------


def _nonzero(C: Complex) -> bool:
    return bool(dc.homology_orders(C))


def restrict_to_factor(M: FinModule, p: PrimeIdeal) -> FinModule:
    """M (killed by 1 - e_p) as a module over the local factor ring R_p."""
    f = p.factor
    cols = list(zip(*f.embed)) if f.embed else []
    action = [M.act_matrix(list(c)) for c in cols]
    return fm.FinModule(f.ring, M.orders, action, check=False)


def restrict_complex(C: Complex, p: PrimeIdeal) -> Complex:
    Cp = dc.localize_complex(C, p)
    Rp = p.factor.ring
    mods = {n: restrict_to_factor(Cp.module(n), p) for n in Cp.degrees}
    diffs = {n: fm.ModuleMap(mods[n], mods[n - 1], Cp.d(n).matrix, check=False)
             for n in range(Cp.lo + 1, Cp.hi + 1) if n in mods and n - 1 in mods}
    return Complex(Rp, mods, diffs, check=False)


@lru_cache(maxsize=4096)
def colocalize_complex(C: Complex, p: PrimeIdeal) -> Complex:
    return dc.apply_duality(C, "colocalize", p, route="literal")


@lru_cache(maxsize=4096)
def dual_complex(C: Complex, route: str = "char") -> Complex:
    return dc.apply_duality(C, "D_R", route=route)


@lru_cache(maxsize=4096)
def tilde_complex(C: Complex) -> Complex:
    return dc.apply_duality(C, "tilde")


def dm_complex(C: Complex, m: PrimeIdeal) -> Complex:
    return dc.apply_duality(C, "D_m", m, route="literal")


def hom_from_projective(C: Complex, p: PrimeIdeal) -> Complex:
    """``Hom(e_p R, C)`` degreewise, which computes ``RHom(R_p, C)``."""
    P = fm.localize(fm.regular_module(C.ring), p)
    mods = {n: fm.hom_module(P, C.module(n)) for n in C.degrees}
    diffs = {n: fm.hom_post(P, C.d(n)) for n in range(C.lo + 1, C.hi + 1)}
    return Complex(C.ring, mods, diffs, check=False)


def _hom_into_window(X: Complex, N: FinModule) -> bool:
    """Nonvanishing of ``RHom(X, N)`` via ``D(D(N) ⊗^L X)``, on a certified window."""
    if X.hi < X.lo:
        return False
    A = fm.char_dual(N)
    length = X.hi - X.lo + 3
    T, (_, top) = dc.tensor_window(A, X, length)
    h = dc.homology_orders(T)
    return any(n <= top for n in h)


def _window_nonvanishing(X: FinModule, C: Complex, kind: str) -> bool:
    """Nonvanishing of ``X ⊗^L C`` or ``RHom(X, C)`` read off a certified window."""
    if C.hi < C.lo:
        return False
    length = C.hi - C.lo + 3
    if kind == "tensor":
        T, (_, top) = dc.tensor_window(X, C, length)
        return any(n <= top for n in dc.homology_orders(T))
    T, (bottom, _) = dc.rhom_window(X, C, length)
    return any(n >= bottom for n in dc.homology_orders(T))


def _definitional(C: Complex, kind: str, p: PrimeIdeal, validate: bool) -> bool:
    if kind == "Supp":
        return _nonzero(dc.localize_complex(C, p))
    if kind == "supp":
        return dc.derived_nonvanishing(C, p, "tensor_residue", validate)[0]
    if kind == "coSupp":
        return _nonzero(colocalize_complex(C, p))
    if kind == "cosupp":
        return dc.derived_nonvanishing(colocalize_complex(C, p), p, "rhom_residue", validate)[0]
    if kind == "co_supp":
        return dc.derived_nonvanishing(C, p, "rhom_residue", validate)[0]
    if kind == "Co_supp":
        return _nonzero(hom_from_projective(C, p))
    raise ValueError(f"unknown kind {kind!r}")


# -- support sets ----------------------------------------------------------------------


def ann_complex(C) -> Ideal:
    """``∩_j Ann H_j(C)``; the unit ideal for an exact complex."""
    C = as_complex(C)
    R = C.ring
    out = Ideal(R, [R.one])
    for H in dc.homology(C).modules.values():
        out = out & fm.annihilator(H)
    return out


@lru_cache(maxsize=16384)
def _support_cached(C: Complex, kind: str, route: str, validate: bool) -> SupportSet:
    R = C.ring
    if route == "definitional":
        ps = frozenset(p for p in R.spectrum if _definitional(C, kind, p, validate))
        return SupportSet(ps, kind, {p: "definitional" for p in ps})
    if route == "dual":
        D = dual_complex(C)
        inner = _support_cached(D, DUAL_KIND[kind], "definitional", validate)
        tag = f"dual:{DUAL_KIND[kind]}(D_R M)"
        return SupportSet(inner.primes, kind, {p: tag for p in inner.primes})
    if route == "homology":
        ps = set()
        for H in dc.homology(C).modules.values():
            ps |= V(R, fm.annihilator(H))
        ps = frozenset(ps)
        return SupportSet(ps, kind, {p: "homology:V(Ann H_i)" for p in ps})
    raise ValueError(f"unknown route {route!r}")


def support_set(C, kind: str, route: str = "definitional", validate: bool = False) -> SupportSet:
    """The support-type set ``kind`` of C computed along ``route``."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    return _support_cached(as_complex(C), kind, route, validate)


def all_routes(C, kind: str, routes=ROUTES, validate: bool = False) -> SupportSet:
    """Compute ``kind`` along every route and insist they agree."""
    sets = {r: support_set(C, kind, r, validate) for r in routes}
    first = sets[routes[0]]
    if any(s != first for s in sets.values()):
        raise RouteDisagreement(f"routes disagree for {kind}: " +
                                ", ".join(f"{r}={s}" for r, s in sets.items()), sets)
    prov = {}
    for r, s in sets.items():
        for p in s.primes:
            prov[p] = (prov[p] + "," + r) if p in prov else r
    return SupportSet(first.primes, kind, prov)


# -- clause lists for the big and small cosupport ----------------------------------------


def cosupport_clauses(C) -> dict:
    """The nine equivalent characterizations of the small cosupport, as sets."""
    C = as_complex(C)
    R = C.ring
    D = dual_complex(C)
    T = tilde_complex(C)
    dm = {m: dm_complex(C, m) for m in R.spectrum}
    sum_dm = _sum_complexes([dm[m] for m in R.spectrum], R)
    out = {}
    for clause in range(1, 10):
        ps = set()
        for p in R.spectrum:
            k = dc.residue_field(p)
            if clause == 1:
                ok = dc.derived_nonvanishing(colocalize_complex(C, p), p, "rhom_residue")[0]
            elif clause == 2:
                ok = _hom_into_window(D, k)
            elif clause == 3:
                ok = dc.derived_nonvanishing(D, p, "tensor_residue")[0]
            elif clause == 4:
                ok = _window_nonvanishing(k, colocalize_complex(C, p), "tensor")
            elif clause == 5:
                X = restrict_complex(colocalize_complex(C, p), p)
                q = X.ring.spectrum[0]
                ok = dc.derived_nonvanishing(colocalize_complex(X, q), q, "rhom_residue")[0]
            elif clause == 6:
                ok = _window_nonvanishing(k, T, "rhom")
            elif clause == 7:
                ok = _hom_into_window(sum_dm, k)
            elif clause == 8:
                ok = any(dc.derived_nonvanishing(dm[m], p, "tensor_residue")[0]
                         for m in R.spectrum if p.ideal <= m.ideal)
            else:
                ok = _window_nonvanishing(k, hom_from_projective(T, p), "tensor")
            if ok:
                ps.add(p)
        out[clause] = SupportSet(frozenset(ps), "cosupp", {p: f"clause {clause}" for p in ps})
    return out


def big_cosupport_clauses(C) -> dict:
    """The four equivalent characterizations of the big cosupport."""
    C = as_complex(C)
    R = C.ring
    D = dual_complex(C)
    T = tilde_complex(C)
    dm = {m: dm_complex(C, m) for m in R.spectrum}
    out = {1: support_set(C, "coSupp"),
           2: support_set(D, "Supp")}
    out[3] = SupportSet(frozenset(p for p in R.spectrum
                                  if any(_nonzero(dc.localize_complex(dm[m], p))
                                         for m in R.spectrum if p.ideal <= m.ideal)), "coSupp")
    out[4] = SupportSet(frozenset(p for p in R.spectrum if _nonzero(hom_from_projective(T, p))), "coSupp")
    return out


def _sum_complexes(cs, R: Ring) -> Complex:
    lo = min((c.lo for c in cs if c.hi >= c.lo), default=0)
    hi = max((c.hi for c in cs if c.hi >= c.lo), default=-1)
    mods, diffs = {}, {}
    for n in range(lo, hi + 1):
        mods[n] = fm.direct_sum([c.module(n) for c in cs], ring=R).module
    for n in range(lo + 1, hi + 1):
        blocks = [[c.d(n).matrix if a == b else None for b, c in enumerate(cs)] for a, _ in enumerate(cs)]
        mat = dc._block(blocks, [c.module(n - 1) for c in cs], [c.module(n) for c in cs])
        diffs[n] = fm.ModuleMap(mods[n], mods[n - 1], mat, check=False)
    return Complex(R, mods, diffs, check=False)


# -- derived functors with a module first argument --------------------------------------


def derived_tensor(M: FinModule, C) -> Complex:
    """A bounded model of ``M ⊗^L C``: the window soft-truncated to its certified range.

    At each prime the bottom homology of ``M ⊗^L C`` sits in degree
    ``inf C_p ≤ sup C``, and the certified range reaches one step past
    ``sup C``, so every support-type invariant is visible on the model.
    """
    C = as_complex(C)
    inf, sup = dc.inf_sup(C)
    if sup == -INF:
        return dc.zero_complex(C.ring)
    length = sup - C.lo + 2
    T, (_, top) = dc.tensor_window(M, C, length)
    return dc.trunc_le(T, int(min(top, T.hi)))


def derived_rhom(M: FinModule, C) -> Complex:
    """A bounded model of ``RHom(M, C)`` keeping its certified top degrees.

    The top homology at each prime sits in degree ``sup C_p ≥ inf C``; the
    certified range reaches one step below ``inf C``.
    """
    C = as_complex(C)
    inf, sup = dc.inf_sup(C)
    if sup == -INF:
        return dc.zero_complex(C.ring)
    length = C.hi - inf + 2
    T, (bottom, _) = dc.rhom_window(M, C, length)
    return dc.trunc_ge(T, int(max(bottom, T.lo)))


# -- depth, width, Ass and Coass -------------------------------------------------------


def depth_width(C, p: PrimeIdeal, route: str = "window", reach: int | None = None):
    """``(depth C_p, width C_p)`` over the local factor at p.

    Conventions for the zero complex: depth +∞, width −∞.  Route "window"
    reads the extreme degrees off resolution windows; route "criterion"
    uses the witness degrees of the nonvanishing criteria.  ``reach`` caps
    the window length (the default spans the whole complex plus two).
    """
    C = as_complex(C)
    if route == "criterion":
        ok, s = dc.derived_nonvanishing(C, p, "rhom_residue")
        ok2, i = dc.derived_nonvanishing(C, p, "tensor_residue")
        return (-s if ok else INF), (i if ok2 else -INF)
    return _depth_window(C, p, reach), _width_window(C, p, reach)


def _depth_window(C, p, reach=None):
    Cp = dc.localize_complex(C, p)
    if Cp.hi < Cp.lo:
        return INF
    length = reach or Cp.hi - Cp.lo + 3
    T, (bottom, _) = dc.rhom_window(dc.residue_field(p), Cp, length)
    hr = [n for n in dc.homology_orders(T) if n >= bottom]
    return -max(hr) if hr else INF


def _width_window(C, p, reach=None):
    Cp = dc.localize_complex(C, p)
    if Cp.hi < Cp.lo:
        return -INF
    length = reach or Cp.hi - Cp.lo + 3
    T, (_, top) = dc.tensor_window(dc.residue_field(p), Cp, length)
    ht = [n for n in dc.homology_orders(T) if n <= top]
    return min(ht) if ht else -INF


@dataclass
class PrimeBundle:
    primes: SupportSet
    which: str
    elements: frozenset = frozenset()     # union of the primes as ring elements (z/Z/w/W)
    extras: dict = field(default_factory=dict)


def _union_elements(primes) -> frozenset:
    out = set()
    for p in primes:
        out |= set(p.ideal.elements())
    return frozenset(out)


def ass(C, route: str = "depth") -> SupportSet:
    """Ass: primes with ``depth C_p = -sup C_p < ∞``."""
    C = as_complex(C)
    R = C.ring
    ps = set()
    for p in R.spectrum:
        if route == "depth":
            # RHom(k, C_p) lives in degrees <= sup C_p, so a window reaching
            # one step below sup decides whether depth = -sup
            Cp = dc.localize_complex(C, p)
            _, sup = dc.inf_sup(Cp)
            if sup == -INF:
                continue
            depth = _depth_window(Cp, p, Cp.hi - sup + 2)
            if depth < INF and depth == -sup:
                ps.add(p)
        elif route == "socle":
            Cp = dc.localize_complex(C, p)
            h = dc.homology_orders(Cp)
            if h:
                H = dc.homology_module(Cp, max(h))[0]
                if not fm.socle(H, p).module.is_zero():
                    ps.add(p)
        else:
            raise ValueError(f"unknown route {route!r}")
    return SupportSet(frozenset(ps), "Ass", {p: route for p in ps})


def coass(C, route: str = "width") -> SupportSet:
    """Coass: primes with ``width ^pC = inf ^pC > -∞`` (route "width") or Ass D_R(C)."""
    C = as_complex(C)
    R = C.ring
    if route == "dual":
        s = ass(dual_complex(C), "depth")
        return SupportSet(s.primes, "Coass", {p: "Ass D_R" for p in s.primes})
    if route != "width":
        raise ValueError(f"unknown route {route!r}")
    ps = set()
    for p in R.spectrum:
        X = dc.localize_complex(colocalize_complex(C, p), p)
        inf, _ = dc.inf_sup(X)
        if inf == INF:
            continue
        # k ⊗^L X lives in degrees >= inf X; reach one step past it
        width = _width_window(X, p, inf - X.lo + 2)
        if width > -INF and width == inf:
            ps.add(p)
    return SupportSet(frozenset(ps), "Coass", {p: "width" for p in ps})


def _module_route(C, which):
    h = dc.homology(as_complex(C))
    if not h.modules:
        return None
    return h.modules[h.sup] if which == "ass" else h.modules[h.inf]


def ass_coass(C, which: str) -> PrimeBundle:
    """Ass/ass/Coass/coass with the matching element set z/Z/w/W.

    Ass and Coass are computed by two routes which must agree.
    """
    C = as_complex(C)
    if which == "Ass":
        a, b = ass(C, "depth"), ass(C, "socle")
        if a != b:
            raise RouteDisagreement(f"Ass routes disagree: depth={a}, socle={b}", {"depth": a, "socle": b})
        return PrimeBundle(a, "Ass", _union_elements(a))
    if which == "Coass":
        a, b = coass(C, "width"), coass(C, "dual")
        if a != b:
            raise RouteDisagreement(f"Coass routes disagree: width={a}, dual={b}", {"width": a, "dual": b})
        return PrimeBundle(a, "Coass", _union_elements(a))
    if which == "ass":
        H = _module_route(C, "ass")
        if H is None:
            return PrimeBundle(SupportSet(frozenset(), "ass"), "ass", frozenset())
        s = ass_coass(H, "Ass").primes
        return PrimeBundle(SupportSet(s.primes, "ass"), "ass", zero_divisors(H))
    if which == "coass":
        H = _module_route(C, "coass")
        if H is None:
            return PrimeBundle(SupportSet(frozenset(), "coass"), "coass", frozenset())
        s = ass_coass(H, "Coass").primes
        return PrimeBundle(SupportSet(s.primes, "coass"), "coass", non_surjective(H))
    raise ValueError(f"unknown set {which!r}")


def zero_divisors(K: FinModule) -> frozenset:
    """``z_R K``: ring elements whose multiplication on K is not injective."""
    R = K.ring
    return frozenset(r for r in R.elements() if not fm.mult_map(K, r).is_injective())


def non_surjective(K: FinModule) -> frozenset:
    """``w_R K``: ring elements whose multiplication on K is not surjective."""
    R = K.ring
    return frozenset(r for r in R.elements() if not fm.mult_map(K, r).is_surjective())


# -- brute-force coassociated primes -----------------------------------------------------


MAX_BRUTE_ORDER = 256


def _tables(K: FinModule):
    """Elements of K as tuples and the multiplication table of every ring element."""
    elems = [tuple(x) for x in K.elements()]
    ring_els = K.ring.elements()
    act = {r: {x: tuple(K.act(r, list(x))) for x in elems} for r in ring_els}
    return elems, act


def _add(x, y, orders):
    return tuple((a + b) % e for a, b, e in zip(x, y, orders))


def submodules(K: FinModule, tables=None):
    """All submodules of K as (frozenset of elements, generator list).

    Breadth-first over ``S + Rx``; elements of one coset ``x + S`` give the
    same sum, so only one representative per coset is tried.
    """
    if K.size > MAX_BRUTE_ORDER:
        raise ModuleError(f"|K| = {K.size} exceeds the enumeration cap {MAX_BRUTE_ORDER}")
    elems, act = tables or _tables(K)
    orders = K.orders
    cyc = {x: frozenset(t[x] for t in act.values()) for x in elems}
    zero = frozenset([tuple([0] * K.rank)])
    seen = {zero: []}
    frontier = [zero]
    while frontier:
        nxt = []
        for S in frontier:
            done = set(S)
            for x in elems:
                if x in done:
                    continue
                done.update(_add(x, s, orders) for s in S)
                T = frozenset(_add(s, y, orders) for s in S for y in cyc[x])
                if T not in seen:
                    seen[T] = seen[S] + [list(x)]
                    nxt.append(T)
        frontier = nxt
    return list(seen.items())


def is_cocyclic(L: FinModule) -> bool:
    """Simple socle (for finite modules: embeds in some E(R/m))."""
    if L.is_zero():
        return False
    soc = fm.socle(L).module
    for p in L.ring.spectrum:
        if soc.size == p.residue_size and fm.localize(soc, p).size == soc.size:
            return True
    return False


def coass_bruteforce(K: FinModule):
    """(Coass, Yassemi Cosupp) by enumerating every cocyclic quotient of K.

    For each submodule N the quotient ``L = K/N`` is handled on element
    sets: the m-socle of L is ``{x : m x ⊆ N} / N`` and ``Ann L`` is the set
    of ring elements carrying K into N.
    """
    R = K.ring
    tables = _tables(K)
    elems, act = tables
    prime_gens = {p: [tuple(g) for g in p.ideal.basis] for p in R.spectrum}
    prime_els = {p: frozenset(p.ideal.elements()) for p in R.spectrum}
    co, cos = set(), set()
    for N, _ in submodules(K, tables):
        if len(N) == K.size:
            continue
        socles = []
        for p in R.spectrum:
            gs = [act[g] for g in prime_gens[p]]
            size = sum(1 for x in elems if all(t[x] in N for t in gs)) // len(N)
            if size > 1:
                socles.append((p, size))
        if len(socles) != 1 or socles[0][1] != socles[0][0].residue_size:
            continue
        ann = frozenset(r for r, t in act.items() if all(t[x] in N for x in elems))
        for p in R.spectrum:
            if ann == prime_els[p]:
                co.add(p)
            if prime_els[p] <= ann:
                cos.add(p)
    return (SupportSet(frozenset(co), "Coass", {p: "bruteforce" for p in co}),
            SupportSet(frozenset(cos), "Cosupp", {p: "bruteforce" for p in cos}))


# -- Nakayama extension ----------------------------------------------------------------


class HypothesisError(ValueError):
    pass


def nakayama_check(a: Ideal, C) -> dict:
    """Instance of the Nakayama extension for an ideal a ⊆ J(R).

    Returns the hypotheses, conclusions and whether both implications hold.
    """
    C = as_complex(C)
    R = C.ring
    if not a <= R.jacobson_radical:
        raise HypothesisError("the ideal is not inside the Jacobson radical")
    A = fm.ring_quotient(R, a.basis)
    maxR = frozenset(R.spectrum)
    co = ass_coass(C, "Coass").primes
    asp = ass_coass(C, "Ass").primes
    hyp_co = bool(co.primes & maxR)
    hyp_ass = bool(asp.primes & maxR)
    tensor_nz = _nonzero(derived_tensor(A, C))
    rhom_nz = _nonzero(derived_rhom(A, C))
    return {"hyp_coass": hyp_co, "tensor_nonzero": tensor_nz,
            "hyp_ass": hyp_ass, "rhom_nonzero": rhom_nz,
            "holds": (not hyp_co or tensor_nz) and (not hyp_ass or rhom_nz)}


__all__ = [
    "KINDS", "ROUTES", "SupportSet", "PrimeBundle", "RouteDisagreement", "support_set", "all_routes",
    "cosupport_clauses", "big_cosupport_clauses", "ann_complex", "derived_tensor", "derived_rhom",
    "depth_width", "ass", "coass", "ass_coass", "zero_divisors", "non_surjective", "submodules",
    "is_cocyclic", "coass_bruteforce", "nakayama_check", "HypothesisError", "maximal", "minimal",
]
