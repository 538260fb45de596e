"""Randomized property harness.

Instances are regenerated from ``(seed, profile)``; every property returns a
verdict dict and never raises.  Reports are JSON lines of the form
``{"property", "seed", "ring", "verdict", "details"}``.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
import traceback
from dataclasses import dataclass, field, replace

from . import dercat as dc
from . import dvr
from . import finmod as fm
from . import supports as sp
from .dercat import Complex
from .finmod import FinModule
from .finring import CATALOG, Ideal, V, catalog_ring, maximal, minimal, ring_to_json, zariski_closure

REGISTRY_VERSION = 1


# -- profiles and instances ------------------------------------------------------------


@dataclass(frozen=True)
class Profile:
    name: str = "default"
    weights: tuple = tuple((r, 1) for r in CATALOG)
    max_module: int = 1024
    max_degrees: int = 5
    aux_cap: int = 64
    multi_homology_rate: float = 0.4
    target: str | None = None     # "nakayama" forces Coass ∩ Max ≠ ∅ and a ⊆ J

    def __post_init__(self):
        if self.max_module > fm.MAX_MODULE_ORDER:
            raise ValueError(f"module cap {self.max_module} exceeds {fm.MAX_MODULE_ORDER}")
        if self.aux_cap > sp.MAX_BRUTE_ORDER:
            raise ValueError(f"auxiliary cap {self.aux_cap} exceeds {sp.MAX_BRUTE_ORDER}")
        if not 1 <= self.max_degrees <= 8:
            raise ValueError("complex length cap must lie in 1..8")


DEFAULT = Profile()
NAKAYAMA = Profile(name="nakayama", target="nakayama")
PROFILES = {"default": DEFAULT, "nakayama": NAKAYAMA}


@dataclass
class Instance:
    seed: int
    profile: str
    ring_name: str
    complex: Complex
    module: FinModule
    ideal: Ideal
    jideal: Ideal
    scalar: tuple
    cut: int
    dvr_homology: dict = field(default_factory=dict)

    @property
    def ring(self):
        return self.complex.ring

    def to_json(self):
        R = self.ring
        return {"seed": self.seed, "profile": self.profile, "ring": self.ring_name,
                "ring_spec": ring_to_json(R), "complex": self.complex.to_json(),
                "module": self.module.to_json(ring_ref=self.ring_name),
                "ideal": [list(g) for g in self.ideal.gens], "jideal": [list(g) for g in self.jideal.gens],
                "scalar": list(self.scalar), "cut": self.cut,
                "dvr_homology": {str(k): str(v) for k, v in sorted(self.dvr_homology.items())}}

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def size(self):
        """Sort key for shrinking: (degrees, total order, ring order)."""
        C = self.complex
        return (len(list(C.degrees)), sum(C.module(n).size for n in C.degrees), self.ring.order)


def _pick_ring(rng, profile):
    names = [r for r, _ in profile.weights]
    w = [x for _, x in profile.weights]
    return rng.choices(names, weights=w)[0]


def random_element(R, rng):
    return tuple(rng.randrange(e) for e in R.orders)


def random_module(R, rng, cap: int, nested: bool = True) -> FinModule:
    """A random nonzero module of order at most ``cap``."""
    kinds = ["cyclic", "cyclic", "quotient", "dual", "residue", "sum"] + (["big"] if nested else [])
    for _ in range(20):
        kind = rng.choice(kinds)
        if kind == "cyclic":
            M = fm.ring_quotient(R, [random_element(R, rng)])
        elif kind == "quotient":
            k = rng.choice([1, 2])
            if R.order ** k > 4 * cap:
                k = 1
            F = fm.free_module(R, k)
            gens = [_free_vector(R, k, rng) for _ in range(rng.randint(0, 2))]
            M = fm.quotient_module(F, gens).module if gens else F
        elif kind == "dual":
            M = fm.char_dual(fm.ring_quotient(R, [random_element(R, rng)]))
        elif kind == "residue":
            M = dc.residue_field(rng.choice(R.spectrum))
        elif kind == "sum":
            A = fm.ring_quotient(R, [random_element(R, rng)])
            B = rng.choice([dc.residue_field(rng.choice(R.spectrum)), fm.char_dual(A)])
            M = fm.direct_sum([A, B]).module
        else:
            parts = [random_module(R, rng, max(2, cap // 4), False) for _ in range(rng.randint(2, 3))]
            M = fm.direct_sum_module(parts)
        if 2 <= M.size <= cap:
            return M
    return dc.residue_field(R.spectrum[0])


def _free_vector(R, k, rng):
    # coordinates of R^k are k blocks of ring coordinates
    return [x for _ in range(k) for x in random_element(R, rng)]


def random_map(M: FinModule, N: FinModule, rng) -> fm.ModuleMap:
    H = fm.hom_module(M, N)
    coords = [rng.randrange(e) for e in H.orders]
    return H.to_map(coords)


def random_complex(R, rng, profile: Profile, want_multi: bool) -> Complex:
    """Kernel-restriction construction: each new differential lands in ker of the previous one."""
    for _ in range(40):
        length = rng.randint(1, profile.max_degrees)
        lo = rng.randint(-2, 1)
        mods = {lo: random_module(R, rng, profile.max_module)}
        diffs = {}
        prev = None
        for n in range(lo + 1, lo + length):
            X = random_module(R, rng, profile.max_module)
            if prev is None:
                K = fm.submodule(mods[n - 1], [[int(i == j) for i in range(mods[n - 1].rank)]
                                               for j in range(mods[n - 1].rank)], closed=True)
            else:
                K = fm.map_spaces(prev, "kernel")
            if K.module.is_zero():
                d = fm.zero_map(X, mods[n - 1])
            elif rng.random() < 0.3 and K.module.size <= profile.max_module:
                X = K.module
                d = K.incl
            else:
                d = K.incl @ random_map(X, K.module, rng)
            mods[n] = X
            diffs[n] = d
            prev = d
        C = Complex(R, mods, diffs)
        if not want_multi or len(dc.homology_orders(C)) >= 2:
            return C
    return C


def generate_instance(seed: int, profile: Profile | str = DEFAULT) -> Instance:
    """Deterministic instance for ``(seed, profile)``."""
    if isinstance(profile, str):
        profile = PROFILES[profile]
    rng = random.Random(f"{profile.name}:{seed}")
    name = _pick_ring(rng, profile)
    R = catalog_ring(name)
    want_multi = rng.random() < profile.multi_homology_rate
    C = random_complex(R, rng, profile, want_multi)
    if profile.target == "nakayama":
        while not dc.homology_orders(C):
            C = random_complex(R, rng, profile, False)
    M = random_module(R, rng, profile.aux_cap)
    a = Ideal(R, [random_element(R, rng)])
    J = R.jacobson_radical.elements()
    b = Ideal(R, [rng.choice(J)])
    r = random_element(R, rng)
    cut = rng.randint(C.lo, max(C.lo, C.hi))
    H = {}
    for deg in range(rng.randint(1, 3)):
        terms = rng.sample(["R", "K", "E", "T(1)", "T(2)", "T(3)"], rng.randint(1, 2))
        H[deg] = dvr.parse(" + ".join(terms))
    return Instance(seed, profile.name, name, C, M, a, b, r, cut, H)


# -- properties --------------------------------------------------------------------------


def _s(x):
    return sorted(p.label for p in (x.primes if isinstance(x, sp.SupportSet) else x))


class _Ctx:
    """Collects named sub-checks for one property evaluation."""

    def __init__(self):
        self.checks = {}
        self.sets = {}
        self.vacuous = False

    def eq(self, name, a, b):
        self.sets[name] = [_s(a), _s(b)]
        self.checks[name] = frozenset(_p(a)) == frozenset(_p(b))

    def sub(self, name, a, b):
        self.sets[name] = [_s(a), _s(b)]
        self.checks[name] = frozenset(_p(a)) <= frozenset(_p(b))

    def truth(self, name, value, **info):
        self.checks[name] = bool(value)
        if info:
            self.sets[name] = info


def _p(x):
    return x.primes if isinstance(x, sp.SupportSet) else x


def _hom_union(C, kind):
    out = set()
    for H in dc.homology(C).modules.values():
        out |= sp.support_set(H, kind).primes
    return frozenset(out)


def p_routes(inst, ctx):
    for kind in sp.KINDS:
        sets = {r: sp.support_set(inst.complex, kind, r) for r in sp.ROUTES}
        ctx.eq(f"{kind}:definitional=dual", sets["definitional"], sets["dual"])
        ctx.eq(f"{kind}:definitional=homology", sets["definitional"], sets["homology"])


def p_thmA(inst, ctx):
    C = inst.complex
    ctx.eq("coSupp C = ∪ coSupp H_i", sp.support_set(C, "coSupp"), _hom_union(C, "coSupp"))


def p_nonempty(inst, ctx):
    C = inst.complex
    nz = bool(dc.homology_orders(C))
    ctx.truth("C≠0 ⟺ coSupp≠∅", nz == bool(sp.support_set(C, "coSupp")))
    ctx.truth("C≠0 ⟺ cosupp≠∅", nz == bool(sp.support_set(C, "cosupp")))
    Z = dc.zero_complex(C.ring)
    ctx.truth("zero complex", not sp.support_set(Z, "coSupp") and not sp.support_set(Z, "cosupp"))


def p_vann(inst, ctx):
    C = inst.complex
    R = C.ring
    A = sp.ann_complex(C)
    co = sp.support_set(C, "coSupp")
    ctx.eq("coSupp = V(Ann C)", co, V(R, A))
    ctx.eq("coSupp = Supp R/Ann C", co, sp.support_set(fm.ring_quotient(R, A.basis), "Supp"))


def p_thmB(inst, ctx):
    cl = sp.big_cosupport_clauses(inst.complex)
    for i in (2, 3, 4):
        ctx.eq(f"clause 1 = clause {i}", cl[1], cl[i])


def p_dual(inst, ctx):
    C = inst.complex
    D = sp.dual_complex(C)
    Dl = sp.dual_complex(C, "literal")
    ctx.eq("Supp C = coSupp D C", sp.support_set(C, "Supp"), sp.support_set(D, "coSupp"))
    ctx.eq("supp C = cosupp D C", sp.support_set(C, "supp"), sp.support_set(D, "cosupp"))
    ctx.eq("coSupp C = Supp D C", sp.support_set(C, "coSupp"), sp.support_set(D, "Supp"))
    ctx.eq("cosupp C = supp D C", sp.support_set(C, "cosupp"), sp.support_set(D, "supp"))
    ctx.eq("Supp D_char = Supp D_literal", sp.support_set(D, "Supp"), sp.support_set(Dl, "Supp"))
    ctx.truth("homology orders of D", dc.homology_orders(D) == _dual_orders(C))


def _dual_orders(C):
    # H_n(D C) ≅ D(H_{-n} C), which has the same order
    h = dc.homology_orders(C)
    return {-n: o for n, o in h.items()}


def p_thm32(inst, ctx):
    cl = sp.cosupport_clauses(inst.complex)
    for i in range(2, 10):
        ctx.eq(f"clause 1 = clause {i}", cl[1], cl[i])


def p_triangle(inst, ctx):
    C = inst.complex
    maps = {"r·": dc.mult_chain(C, inst.scalar)}
    if C.hi >= C.lo:
        maps["σ≥"] = dc.trunc_ge_inclusion(C, inst.cut)
    for tag, f in maps.items():
        L, M, N = f.source, f.target, dc.cone(f)
        for kind in ("coSupp", "cosupp"):
            sL, sM, sN = (sp.support_set(X, kind) for X in (L, M, N))
            ctx.sub(f"{tag} {kind} M ⊆ L ∪ N", sM, sL | sN)
            ctx.sub(f"{tag} {kind} N ⊆ M ∪ ΣL", sN, sM | sp.support_set(dc.shift(L, 1), kind))
            ctx.sub(f"{tag} {kind} L ⊆ Σ⁻¹N ∪ M", sL, sp.support_set(dc.shift(N, -1), kind) | sM)
    for k in (-1, 1):
        ctx.eq(f"coSupp Σ^{k} C = coSupp C", sp.support_set(dc.shift(C, k), "coSupp"),
               sp.support_set(C, "coSupp"))


def p_tensorhom(inst, ctx):
    C, M = inst.complex, inst.module
    R = C.ring
    T = sp.derived_tensor(M, C)
    H = sp.derived_rhom(M, C)
    suppM = sp.support_set(M, "supp")
    SuppM = sp.support_set(M, "Supp")
    cosN = sp.support_set(C, "cosupp")
    coSN = sp.support_set(C, "coSupp")
    ctx.eq("cosupp RHom(M,N) = supp M ∩ cosupp N", sp.support_set(H, "cosupp"), suppM & cosN)
    ctx.eq("cosupp M⊗N = supp M ∩ cosupp N", sp.support_set(T, "cosupp"), suppM & cosN)
    ctx.sub("coSupp M⊗N ⊆ Supp M ∩ coSupp N", sp.support_set(T, "coSupp"), SuppM & coSN)
    ctx.sub("coSupp RHom(M,N) ⊆ Supp M ∩ coSupp N", sp.support_set(H, "coSupp"), SuppM & coSN)
    A = fm.ring_quotient(R, inst.ideal.basis)
    Va = V(R, inst.ideal)
    ctx.eq("cosupp RHom(R/a,N) = cosupp N ∩ V(a)", sp.support_set(sp.derived_rhom(A, C), "cosupp"), cosN & Va)
    ctx.eq("cosupp R/a⊗N = cosupp N ∩ V(a)", sp.support_set(sp.derived_tensor(A, C), "cosupp"), cosN & Va)
    ctx.eq("Ass RHom(M,N) = Supp M ∩ Ass N", sp.ass_coass(H, "Ass").primes, SuppM & sp.ass_coass(C, "Ass").primes)
    ctx.eq("Coass M⊗N = Supp M ∩ Coass N", sp.ass_coass(T, "Coass").primes,
           SuppM & sp.ass_coass(C, "Coass").primes)


def p_minmax(inst, ctx):
    C = inst.complex
    R = C.ring
    s, c, w, S = (sp.support_set(C, k).primes for k in ("supp", "cosupp", "co_supp", "coSupp"))
    ctx.eq("max supp = max cosupp", maximal(s), maximal(c))
    ctx.eq("max cosupp = max co-supp", maximal(c), maximal(w))
    ctx.eq("min cosupp = min coSupp", minimal(c), minimal(S))
    Va = V(R, inst.ideal)
    ctx.truth("coSupp ⊆ V(a) ⟺ cosupp ⊆ V(a)", (S <= Va) == (c <= Va))
    ctx.eq("Zariski closures", zariski_closure(R, S), zariski_closure(R, c))


def p_inclusion(inst, ctx):
    C = inst.complex
    g = {k: sp.support_set(C, k) for k in sp.KINDS}
    ctx.sub("cosupp ⊆ coSupp", g["cosupp"], g["coSupp"])
    ctx.eq("cosupp = coSupp", g["cosupp"], g["coSupp"])
    ctx.eq("cosupp = co-supp", g["cosupp"], g["co_supp"])
    ctx.eq("coSupp = Co-supp", g["coSupp"], g["Co_supp"])
    ctx.sub("cosupp ⊆ supp", g["cosupp"], g["supp"])
    ctx.sub("supp ⊆ cosupp", g["supp"], g["cosupp"])


def p_homology_bounds(inst, ctx):
    C = inst.complex
    for kind in ("supp", "cosupp"):
        u = _hom_union(C, kind)
        ctx.sub(f"{kind} C ⊆ ∪ {kind} H_i", sp.support_set(C, kind), u)
        ctx.eq(f"{kind} C = ∪ {kind} H_i", sp.support_set(C, kind), u)


def p_coass(inst, ctx):
    C, K = inst.complex, inst.module
    R = C.ring
    Co = sp.ass_coass(C, "Coass").primes
    As = sp.ass_coass(C, "Ass").primes
    ctx.eq("Coass C = Ass D C", Co, sp.ass(sp.dual_complex(C), "socle"))
    ctx.sub("coass ⊆ Coass", sp.ass_coass(C, "coass").primes, Co)
    ctx.sub("ass ⊆ Ass", sp.ass_coass(C, "ass").primes, As)
    ctx.sub("min coSupp ⊆ Coass", minimal(sp.support_set(C, "coSupp").primes), Co)
    ctx.sub("Coass ⊆ cosupp", Co, sp.support_set(C, "cosupp"))
    # modules: brute force, element sets
    bf_co, bf_cos = sp.coass_bruteforce(K)
    kCo = sp.ass_coass(K, "Coass")
    kAs = sp.ass_coass(K, "Ass")
    ctx.eq("brute Coass K = Coass K", bf_co, kCo.primes)
    ctx.eq("Yassemi Cosupp K = coSupp K", bf_cos, sp.support_set(K, "coSupp"))
    ctx.eq("coass K = Coass K", sp.ass_coass(K, "coass").primes, kCo.primes)
    ctx.truth("z K = ∪ Ass K", sp.zero_divisors(K) == kAs.elements)
    ctx.truth("w K = ∪ Coass K", sp.non_surjective(K) == kCo.elements)
    ctx.truth("w K = z D K", sp.non_surjective(K) == sp.zero_divisors(fm.char_dual(K)))
    maxR = frozenset(R.spectrum)
    rh = any(sp._nonzero(sp.derived_rhom(dc.residue_field(m), C)) for m in maxR)
    tn = any(sp._nonzero(sp.derived_tensor(dc.residue_field(m), C)) for m in maxR)
    ctx.truth("Ass ∩ Max ≠ ∅ ⟺ RHom(R/m, C) ≠ 0", bool(As.primes & maxR) == rh)
    ctx.truth("Coass ∩ Max ≠ ∅ ⟺ R/m ⊗ C ≠ 0", bool(Co.primes & maxR) == tn)
    for m in maxR:
        ctx.truth(f"m={m.label} ∈ Ass ⟺ RHom(R/m,C)≠0",
                  (m in As) == sp._nonzero(sp.derived_rhom(dc.residue_field(m), C)))


def p_nakayama(inst, ctx):
    out = sp.nakayama_check(inst.jideal, inst.complex)
    ctx.vacuous = not out["hyp_coass"] and not out["hyp_ass"]
    ctx.truth("Coass∩Max≠∅ ⇒ R/a⊗C≠0", not out["hyp_coass"] or out["tensor_nonzero"])
    ctx.truth("Ass∩Max≠∅ ⇒ RHom(R/a,C)≠0", not out["hyp_ass"] or out["rhom_nonzero"])
    ctx.sets["nakayama"] = out


def p_cor34(inst, ctx):
    C = inst.complex
    u = _hom_union(C, "cosupp")
    ctx.eq("min cosupp C = min cosupp H(C)", minimal(sp.support_set(C, "cosupp").primes), minimal(u))
    H = inst.dvr_homology
    ctx.eq("dvr: min cosupp = min cosupp H", dvr.complex_min_cosupp(H),
           minimal(dvr.homology_union(H, "cosupp")))


def p_cor34_literal(inst, ctx):
    C = inst.complex
    ctx.eq("cosupp C = min cosupp H(C)", sp.support_set(C, "cosupp"), minimal(_hom_union(C, "cosupp")))


def p_cor34_literal_dvr(inst, ctx):
    # the DVR probe: each homology object taken as a module in degree 0
    for deg, o in sorted(inst.dvr_homology.items()):
        table, mins = dvr.cor34_literal({0: o})
        ctx.eq(f"dvr {o}: cosupp = min cosupp H", table, mins)


def p_dvr(inst, ctx):
    objs = list(inst.dvr_homology.values()) + [dvr.parse(a) for a in dvr.ALPHABET]
    for o in objs:
        for name, ok in dvr.consistency_checks(o).items():
            ctx.truth(f"{o}: {name}", ok)
    H = inst.dvr_homology
    ctx.eq("dvr coSupp = ∪ coSupp H_i", dvr.complex_coSupp(H), dvr.homology_union(H, "coSupp"))


def p_windows(inst, ctx):
    C = inst.complex
    for kind in ("rhom_residue", "tensor_residue"):
        for p in C.ring.spectrum:
            try:
                dc.derived_nonvanishing(C, p, kind, validate=True)
                ctx.truth(f"{kind} at {p.label}", True)
            except dc.WindowMismatch as e:
                ctx.truth(f"{kind} at {p.label}", False, error=str(e))


def p_duality_invariants(inst, ctx):
    mods = [inst.module] + [inst.complex.module(n) for n in inst.complex.degrees]
    for i, M in enumerate(mods):
        ctx.truth(f"|D M|=|M| #{i}", fm.matlis_dual(M).size == M.size)
        ctx.truth(f"double dual iso #{i}", fm.double_dual_map(M).is_iso())
        ctx.truth(f"Matlis comparison iso #{i}", fm.matlis_comparison(M).is_iso())
        ctx.truth(f"tilde comparison iso #{i}", fm.tilde_comparison(M).is_iso())
        for p in M.ring.spectrum:
            ctx.truth(f"colocalization comparison #{i} {p.label}", fm.colocalization_comparison(M, p).is_iso())


# id -> (function, implication-shaped, flagged class)
REGISTRY = {
    "P-ThmA": (p_thmA, False, False),
    "P-Nonempty": (p_nonempty, False, False),
    "P-VAnn": (p_vann, False, False),
    "P-ThmB": (p_thmB, False, False),
    "P-Dual": (p_dual, False, False),
    "P-Thm32": (p_thm32, False, False),
    "P-Triangle": (p_triangle, False, False),
    "P-TensorHom": (p_tensorhom, False, False),
    "P-MinMax": (p_minmax, False, False),
    "P-Inclusion": (p_inclusion, False, False),
    "P-HomologyBounds": (p_homology_bounds, False, False),
    "P-Coass": (p_coass, False, False),
    "P-Nakayama": (p_nakayama, True, False),
    "P-Cor34": (p_cor34, False, False),
    "P-Cor34-literal": (p_cor34_literal, False, False),
    "P-Cor34-literal-dvr": (p_cor34_literal_dvr, False, True),
    "P-DVR": (p_dvr, False, False),
    "P-Routes": (p_routes, False, False),
    "P-Windows": (p_windows, False, False),
    "P-Duality": (p_duality_invariants, False, False),
}

# properties run on the targeted generator in addition to the default one
TARGETED = {"P-Nakayama": NAKAYAMA}


def _wrong_V(R, a):
    # deliberately wrong V(a): primes inside a proper ideal instead of primes containing it
    if not a.is_proper:
        return frozenset()
    return frozenset(p for p in R.spectrum if p.ideal <= a)


def p_injected_vann(inst, ctx):
    C = inst.complex
    ctx.eq("coSupp = V(Ann C) [wrong V]", sp.support_set(C, "coSupp"), _wrong_V(C.ring, sp.ann_complex(C)))


DEMO_REGISTRY = {"P-Injected-VAnn": (p_injected_vann, False, False)}


def _lookup(pid):
    if pid in REGISTRY:
        return REGISTRY[pid]
    if pid in DEMO_REGISTRY:
        return DEMO_REGISTRY[pid]
    raise KeyError(f"unknown property {pid!r}")


def check(property_id: str, instance: Instance) -> dict:
    """Evaluate one property; errors become fail verdicts."""
    fn, implication, flagged_class = _lookup(property_id)
    ctx = _Ctx()
    t0 = time.perf_counter()
    try:
        fn(instance, ctx)
        ok = all(ctx.checks.values())
        error = None
    except sp.RouteDisagreement as e:
        ok, error = False, f"route disagreement: {e}"
    except Exception as e:      # a crash is a verdict, not an exception
        ok, error = False, f"{type(e).__name__}: {e}\n{traceback.format_exc(limit=4)}"
    if ok:
        verdict = "pass"
    elif flagged_class and error is None:
        verdict = "flagged"
    else:
        verdict = "fail"
    details = {"checks": ctx.checks, "sets": _jsonable(ctx.sets), "vacuous": ctx.vacuous,
               "digest": instance.digest()}
    if error:
        details["error"] = error
    if verdict == "fail":
        details["instance"] = instance.to_json()
    return {"property": property_id, "seed": instance.seed, "profile": instance.profile,
            "ring": instance.ring_name, "verdict": verdict, "details": details,
            "elapsed_ms": round(1000 * (time.perf_counter() - t0), 3)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


# -- shrinking ---------------------------------------------------------------------------


def _candidates(inst: Instance):
    C = inst.complex
    R = C.ring
    # drop end degrees
    if C.hi > C.lo:
        yield replace(inst, complex=dc.trunc_ge(C, C.lo + 1))
        yield replace(inst, complex=dc.trunc_le(C, C.hi - 1))
        for n in C.degrees:
            yield replace(inst, complex=dc.concentrated(C.module(n), n))
    elif C.hi == C.lo and C.lo != 0:
        yield replace(inst, complex=dc.concentrated(C.module(C.lo), 0))
    # shrink modules: C ⊗ R/(r) degreewise for r in the radical or a prime generator
    gens = set()
    for p in R.spectrum:
        gens.update(tuple(g) for g in p.ideal.basis)
    for g in sorted(gens):
        Q = _reduce_complex(C, g)
        if Q is not None and Q != C:
            yield replace(inst, complex=Q)
    # reduce to a single local factor
    if len(R.spectrum) > 1:
        for p in R.spectrum:
            yield _restrict_instance(inst, p)
    if inst.module.size > 1:
        yield replace(inst, module=dc.residue_field(R.spectrum[0]))


def _reduce_complex(C: Complex, r):
    mods, quos = {}, {}
    for n in C.degrees:
        M = C.module(n)
        q = fm.quotient_module(M, [M.act(r, e) for e in _units(M.rank)])
        quos[n] = q
        mods[n] = q.module
    diffs = {}
    for n in range(C.lo + 1, C.hi + 1):
        src, tgt = quos[n], quos[n - 1]
        if src.module.is_zero() or tgt.module.is_zero():
            continue
        cols = []
        for i in range(src.module.rank):
            lift = src.section[i]
            cols.append(tgt.proj(C.d(n)(lift)))
        mat = [[c[t] for c in cols] for t in range(tgt.module.rank)]
        diffs[n] = fm.ModuleMap(src.module, tgt.module, mat, check=False)
    return Complex(C.ring, mods, diffs, check=False)


def _units(k):
    return [[int(i == j) for i in range(k)] for j in range(k)]


def _restrict_instance(inst: Instance, p):
    f = p.factor
    C = sp.restrict_complex(inst.complex, p)
    M = sp.restrict_to_factor(fm.localize(inst.module, p), p)
    a = Ideal(f.ring, [f.from_parent(g) for g in inst.ideal.gens])
    b = Ideal(f.ring, [f.from_parent(g) for g in inst.jideal.gens])
    return replace(inst, ring_name=f"{inst.ring_name}@{p.label}", complex=C, module=M,
                   ideal=a, jideal=b, scalar=f.from_parent(inst.scalar))


def shrink(property_id: str, failing: Instance, max_steps: int = 200) -> Instance:
    """Greedy minimization keeping the verdict a failure; returns a locally minimal instance."""
    if check(property_id, failing)["verdict"] == "pass":
        return failing
    cur = failing
    for _ in range(max_steps):
        for cand in _candidates(cur):
            if cand.size() >= cur.size() and cand.ring.order >= cur.ring.order \
                    and cand.module.size >= cur.module.size:
                continue
            if check(property_id, cand)["verdict"] != "pass":
                cur = cand
                break
        else:
            return cur
    return cur


# -- suites -------------------------------------------------------------------------------


@dataclass
class SuiteConfig:
    properties: list = field(default_factory=lambda: list(REGISTRY))
    seeds: range = range(0, 200)
    jobs: int = 1
    out: str | None = None
    profile: str = "default"
    append: bool = True

    @classmethod
    def from_json(cls, data):
        props = data.get("properties", "all")
        seeds = data.get("seeds", [0, 199])
        return cls(properties=resolve_properties(props), seeds=parse_seeds(seeds),
                   jobs=int(data.get("jobs", 1)), out=data.get("out"), profile=data.get("profile", "default"))


def resolve_properties(spec) -> list:
    if spec in ("all", None):
        return list(REGISTRY)
    if isinstance(spec, str):
        spec = [s for s in spec.split(",") if s.strip()]
    out = []
    for s in spec:
        s = s.strip()
        _lookup(s)
        out.append(s)
    return out


def parse_seeds(spec) -> range:
    """``"a..b"`` (inclusive), ``[a, b]`` or a single int."""
    if isinstance(spec, range):
        return spec
    if isinstance(spec, int):
        return range(spec, spec + 1)
    if isinstance(spec, (list, tuple)):
        a, b = spec
        return range(int(a), int(b) + 1)
    text = str(spec)
    if ".." in text:
        a, b = text.split("..")
        return range(int(a), int(b) + 1)
    return range(int(text), int(text) + 1)


def _run_seed(args):
    props, seed, profile = args
    out = []
    inst = generate_instance(seed, profile)
    for pid in props:
        if pid in TARGETED and profile == "default":
            out.append(check(pid, generate_instance(seed, TARGETED[pid])))
        else:
            out.append(check(pid, inst))
    return out


@dataclass
class SuiteResult:
    reports: list
    summary: dict

    @property
    def ok(self) -> bool:
        return self.summary["ok"]


def summarize(reports, props) -> dict:
    per = {}
    for pid in props:
        per[pid] = {"pass": 0, "fail": 0, "flagged": 0, "vacuous": 0, "total": 0}
    for r in reports:
        c = per[r["property"]]
        c[r["verdict"]] += 1
        c["total"] += 1
        c["vacuous"] += bool(r["details"].get("vacuous"))
    vacuity = {}
    for pid, c in per.items():
        if _lookup(pid)[1] and c["total"]:
            vacuity[pid] = c["vacuous"] / c["total"]
    fails = sum(c["fail"] for c in per.values())
    flagged = sum(c["flagged"] for c in per.values())
    too_vacuous = [p for p, v in vacuity.items() if v > 0.8]
    return {"per_property": per, "pass": sum(c["pass"] for c in per.values()), "fail": fails,
            "flagged": flagged, "vacuity": vacuity, "too_vacuous": too_vacuous,
            "flagged_properties": sorted(p for p, c in per.items() if c["flagged"]),
            "ok": fails == 0 and not too_vacuous}


def run_suite(config: SuiteConfig, stream=None) -> SuiteResult:
    """Run properties over seeds; reports are written in (seed, property) order."""
    props = list(config.properties)
    tasks = [(props, s, config.profile) for s in config.seeds]
    if not props:
        tasks = []
    if config.jobs > 1 and len(tasks) > 1:
        from multiprocessing import Pool
        with Pool(config.jobs) as pool:
            chunks = pool.map(_run_seed, tasks)
    else:
        chunks = [_run_seed(t) for t in tasks]
    reports = [r for chunk in chunks for r in chunk]
    fh = open(config.out, "a" if config.append else "w") if config.out else None
    try:
        for r in reports:
            line = json.dumps(r, sort_keys=True, ensure_ascii=False)
            if fh:
                fh.write(line + "\n")
            if stream is not None:
                stream.write(line + "\n")
    finally:
        if fh:
            fh.close()
    return SuiteResult(reports, summarize(reports, props))


def report_body(r: dict) -> str:
    """A report line without its timing field, for determinism comparisons."""
    return json.dumps({k: v for k, v in r.items() if k != "elapsed_ms"}, sort_keys=True, ensure_ascii=False)


def injected_bug_demo(seed_range=range(0, 50)):
    """Find a failure of the deliberately broken property and shrink it."""
    for s in seed_range:
        inst = generate_instance(s)
        if len(inst.ring.spectrum) < 2 or len(list(inst.complex.degrees)) < 2:
            continue
        if check("P-Injected-VAnn", inst)["verdict"] == "fail":
            small = shrink("P-Injected-VAnn", inst)
            return inst, small
    return None, None


__all__ = [
    "Profile", "DEFAULT", "NAKAYAMA", "PROFILES", "Instance", "generate_instance", "random_module",
    "random_complex", "REGISTRY", "DEMO_REGISTRY", "TARGETED", "check", "shrink", "SuiteConfig",
    "SuiteResult", "run_suite", "summarize", "parse_seeds", "resolve_properties", "report_body",
    "injected_bug_demo", "REGISTRY_VERSION",
]
