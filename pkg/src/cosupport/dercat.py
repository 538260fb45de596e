"""Bounded chain complexes of finite modules.

Grading is homological: ``d_n: C_n -> C_{n-1}``.  Besides homology, shifts,
soft truncations and cones, this module builds truncated free resolutions
and from them windows of ``X ⊗^L C`` and ``RHom(X, C)`` for a module X.  The
windows are only correct in a known range of degrees; the finite
nonvanishing criteria decide derived nonvanishing outright and the windows
serve as cross-checking evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import finmod as fm
from .finmod import FinModule, ModuleMap
from .finring import PrimeIdeal, Ring
from .linalg import Subgroup

INF = math.inf


class ComplexError(ValueError):
    """Invalid complex data (nonzero composite, mismatched boundaries)."""


class Complex:
    """A bounded complex; degrees outside ``[lo, hi]`` hold zero modules."""

    def __init__(self, ring: Ring, modules: dict, diffs: dict | None = None, check: bool = True):
        self.ring = ring
        mods = {int(k): v for k, v in modules.items() if not v.is_zero()}
        if mods:
            self.lo, self.hi = min(mods), max(mods)
        else:
            self.lo, self.hi = 0, -1
        self._mods = mods
        self._zero = fm.zero_module(ring)
        self._diffs = {}
        for k, f in (diffs or {}).items():
            k = int(k)
            if not isinstance(f, ModuleMap):
                f = ModuleMap(self.module(k), self.module(k - 1), f, check=check)
            if self.module(k).is_zero() or self.module(k - 1).is_zero():
                continue
            if f.source != self.module(k) or f.target != self.module(k - 1):
                raise ComplexError(f"boundary mismatch at degree {k}")
            self._diffs[k] = f
        if check:
            self.validate()

    def module(self, n: int) -> FinModule:
        return self._mods.get(n, self._zero)

    def d(self, n: int) -> ModuleMap:
        f = self._diffs.get(n)
        if f is None:
            return fm.zero_map(self.module(n), self.module(n - 1))
        return f

    @property
    def degrees(self):
        return range(self.lo, self.hi + 1)

    def is_zero_object(self) -> bool:
        """True when the complex is exact (zero in the derived category)."""
        return not homology_orders(self)

    def validate(self):
        for n in range(self.lo + 2, self.hi + 1):
            if n in self._diffs and n - 1 in self._diffs:
                if not (self._diffs[n - 1] @ self._diffs[n]).is_zero():
                    raise ComplexError(f"d_{n - 1} ∘ d_{n} is nonzero at degree {n}")
        return self

    @property
    def _key(self):
        key = self.__dict__.get("_cached_key")
        if key is None:
            key = self.__dict__["_cached_key"] = self._make_key()
        return key

    def _make_key(self):
        return (self.ring, tuple(sorted(self._mods.items(), key=lambda t: t[0])),
                tuple((k, tuple(map(tuple, f.matrix))) for k, f in sorted(self._diffs.items())))

    def __eq__(self, other):
        return isinstance(other, Complex) and self._key == other._key

    def __hash__(self):
        h = self.__dict__.get("_cached_hash")
        if h is None:
            h = self.__dict__["_cached_hash"] = hash(self._key)
        return h

    def __repr__(self):
        parts = [f"{n}:{list(self.module(n).orders)}" for n in self.degrees]
        return f"Complex({self.ring.name}; {' '.join(parts) or '0'})"

    def to_json(self):
        return {"modules": {str(n): {"orders": list(M.orders),
                                     "action": {str(i): [list(r) for r in A] for i, A in enumerate(M.action)}}
                            for n, M in sorted(self._mods.items())},
                "maps": {str(k): [list(r) for r in f.matrix] for k, f in sorted(self._diffs.items())}}


def build_complex(ring: Ring, entries) -> Complex:
    """Build a validated complex from ``{"modules": {deg: module}, "maps": {deg: matrix}}``.

    Modules may be FinModules or JSON module objects; maps may be ModuleMaps
    or matrices of ``d_n: C_n -> C_{n-1}``.
    """
    mods = {}
    for k, v in entries.get("modules", {}).items():
        if not isinstance(v, FinModule):
            v = fm.module_from_json(ring, v) if "orders" in v else fm.build_module(ring, v)
        mods[int(k)] = v
    for k in entries.get("maps", {}):
        for deg in (int(k), int(k) - 1):
            if deg not in mods:
                raise ComplexError(f"map d_{k} refers to missing module in degree {deg}")
    return Complex(ring, mods, entries.get("maps", {}))


def concentrated(M: FinModule, degree: int = 0) -> Complex:
    return Complex(M.ring, {degree: M}, {}, check=False)


def two_term(f: ModuleMap, degree: int = 1) -> Complex:
    """``f`` as the complex ``source -> target`` in degrees ``degree, degree-1``."""
    return Complex(f.source.ring, {degree: f.source, degree - 1: f.target}, {degree: f})


def zero_complex(R: Ring) -> Complex:
    return Complex(R, {}, {}, check=False)


# -- homology --------------------------------------------------------------------------


@dataclass
class HomologyProfile:
    modules: dict
    inf: float
    sup: float

    def orders(self):
        return {n: list(M.orders) for n, M in self.modules.items()}


def homology_orders(C: Complex) -> dict:
    """``{n: |H_n(C)|}`` for the nonzero homology, from image sizes only."""
    out = {}
    imgs = {}
    for n in range(C.lo, C.hi + 2):
        f = C.d(n)
        imgs[n] = f.image_size() if f.source.rank and f.target.rank else 1
    for n in C.degrees:
        h = C.module(n).size // imgs[n] // imgs[n + 1]
        if h > 1:
            out[n] = h
    return out


def homology_module(C: Complex, n: int):
    """``H_n(C)`` with the inclusion of cycles and the projection onto H_n."""
    K = fm.map_spaces(C.d(n), "kernel")
    dn1 = C.d(n + 1)
    cols = []
    for j in range(dn1.source.rank):
        v = dn1([int(i == j) for i in range(dn1.source.rank)])
        c = K.coords(v)
        if c is None:
            raise ComplexError(f"image of d_{n + 1} not inside the cycles")
        cols.append(c)
    Q = fm.quotient_module(K.module, cols, closed=True)
    return Q.module, K.incl, Q.proj


def homology(C: Complex) -> HomologyProfile:
    mods = {}
    for n in homology_orders(C):
        H = homology_module(C, n)[0]
        if not H.is_zero():
            mods[n] = H
    if not mods:
        return HomologyProfile({}, INF, -INF)
    return HomologyProfile(mods, min(mods), max(mods))


def inf_sup(C: Complex):
    h = homology_orders(C)
    if not h:
        return INF, -INF
    return min(h), max(h)


# -- shift, truncations, cones ------------------------------------------------------------


def shift(C: Complex, k: int) -> Complex:
    """``Σ^k C``: ``(Σ^k C)_n = C_{n-k}`` with differential ``(-1)^k d``."""
    sign = -1 if k % 2 else 1
    mods = {n + k: C.module(n) for n in C.degrees}
    diffs = {n + k: C.d(n).scale(sign) for n in range(C.lo + 1, C.hi + 1)}
    return Complex(C.ring, mods, diffs, check=False)


def trunc_ge(C: Complex, n: int) -> Complex:
    """Soft truncation σ≥n: ``... -> C_{n+1} -> Ker d_n -> 0``."""
    if n > C.hi:
        return zero_complex(C.ring)
    if n < C.lo:
        return C
    K = fm.map_spaces(C.d(n), "kernel")
    mods = {m: C.module(m) for m in range(n + 1, C.hi + 1)}
    mods[n] = K.module
    diffs = {m: C.d(m) for m in range(n + 2, C.hi + 1)}
    d = C.d(n + 1)
    cols = [K.coords(d([int(i == j) for i in range(d.source.rank)])) for j in range(d.source.rank)]
    diffs[n + 1] = ModuleMap(C.module(n + 1), K.module,
                             [[c[t] for c in cols] for t in range(K.module.rank)], check=False)
    return Complex(C.ring, mods, diffs, check=False)


def trunc_le(C: Complex, n: int) -> Complex:
    """Soft truncation σ≤n: ``0 -> Coker d_{n+1} -> C_{n-1} -> ...``."""
    if n < C.lo:
        return zero_complex(C.ring)
    if n > C.hi:
        return C
    Q = fm.map_spaces(C.d(n + 1), "cokernel")
    mods = {m: C.module(m) for m in range(C.lo, n)}
    mods[n] = Q.module
    diffs = {m: C.d(m) for m in range(C.lo + 1, n)}
    d = C.d(n)
    mat = fm._matmul(d.matrix, [list(r) for r in zip(*Q.section)] if Q.section else
                     [[] for _ in range(C.module(n).rank)], Q.module.rank)
    diffs[n] = ModuleMap(Q.module, C.module(n - 1), mat, check=False)
    return Complex(C.ring, mods, diffs, check=False)


def shift_truncate(C: Complex, op: str, k: int) -> Complex:
    if op == "shift":
        return shift(C, k)
    if op == "trunc_ge":
        return trunc_ge(C, k)
    if op == "trunc_le":
        return trunc_le(C, k)
    raise ValueError(f"unknown op {op!r}")


class ChainMap:
    """Degreewise module maps ``f_n: C_n -> D_n`` commuting with differentials."""

    def __init__(self, source: Complex, target: Complex, maps: dict, check: bool = True):
        self.source, self.target = source, target
        self.maps = {}
        for n in range(min(source.lo, target.lo), max(source.hi, target.hi) + 1):
            f = maps.get(n)
            S, T = source.module(n), target.module(n)
            if f is None or S.is_zero() or T.is_zero():
                f = fm.zero_map(S, T)
            self.maps[n] = f
        if check:
            self.validate()

    def f(self, n):
        return self.maps.get(n) or fm.zero_map(self.source.module(n), self.target.module(n))

    def validate(self):
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for n in range(lo, hi + 2):
            a = self.target.d(n) @ self.f(n)
            b = self.f(n - 1) @ self.source.d(n)
            if a.matrix != b.matrix:
                raise ComplexError(f"not a chain map at degree {n}")
        return self


def identity_chain(C: Complex) -> ChainMap:
    return ChainMap(C, C, {n: fm.identity_map(C.module(n)) for n in C.degrees}, check=False)


def mult_chain(C: Complex, r) -> ChainMap:
    return ChainMap(C, C, {n: fm.mult_map(C.module(n), r) for n in C.degrees}, check=False)


def trunc_ge_inclusion(C: Complex, n: int) -> ChainMap:
    T = trunc_ge(C, n)
    maps = {m: fm.identity_map(C.module(m)) for m in range(n + 1, C.hi + 1)}
    if C.lo <= n <= C.hi:
        maps[n] = fm.map_spaces(C.d(n), "kernel").incl
    return ChainMap(T, C, maps, check=False)


def trunc_le_projection(C: Complex, n: int) -> ChainMap:
    T = trunc_le(C, n)
    maps = {m: fm.identity_map(C.module(m)) for m in range(C.lo, n)}
    if C.lo <= n <= C.hi:
        maps[n] = fm.map_spaces(C.d(n + 1), "cokernel").proj
    return ChainMap(C, T, maps, check=False)


def _block(maps_rows, row_mods, col_mods):
    """Assemble a block matrix; ``maps_rows[a][b]`` is a matrix or None."""
    nr = sum(M.rank for M in row_mods)
    nc = sum(M.rank for M in col_mods)
    out = [[0] * nc for _ in range(nr)]
    ro = 0
    for a, RM in enumerate(row_mods):
        co = 0
        for b, CM in enumerate(col_mods):
            blk = maps_rows[a][b]
            if blk is not None:
                for t in range(RM.rank):
                    for j in range(CM.rank):
                        out[ro + t][co + j] = blk[t][j]
            co += CM.rank
        ro += RM.rank
    return out


def cone(f: ChainMap) -> Complex:
    """Mapping cone: ``cone_n = C_{n-1} ⊕ D_n``, ``d(c, x) = (-d c, f c + d x)``."""
    C, D, R = f.source, f.target, f.source.ring
    lo = min(C.lo + 1, D.lo)
    hi = max(C.hi + 1, D.hi)
    mods, parts = {}, {}
    for n in range(lo, hi + 1):
        pieces = [C.module(n - 1), D.module(n)]
        mods[n] = fm.direct_sum(pieces, ring=R).module
        parts[n] = pieces
    diffs = {}
    for n in range(lo + 1, hi + 1):
        src, tgt = parts[n], parts[n - 1]
        mc = C.d(n - 1).scale(-1).matrix
        blocks = [[mc, None],
                  [f.f(n - 1).matrix, D.d(n).matrix]]
        diffs[n] = ModuleMap(mods[n], mods[n - 1], _block(blocks, tgt, src), check=False)
    return Complex(R, mods, diffs, check=False)


# -- free resolutions and derived windows -----------------------------------------------


def r_generators(M: FinModule):
    """Greedy R-module generators of M taken from its group basis."""
    gens = []
    span = Subgroup(M.orders, [], M.n)
    for j in range(M.rank):
        b = [int(i == j) for i in range(M.rank)]
        if not span.contains(b):
            gens.append(b)
            span = Subgroup(M.orders, fm.r_span(M, gens), M.n)
    return gens


def _cover(M: FinModule, gens) -> ModuleMap:
    """The surjection ``R^g -> M`` sending the i-th basis vector to gens[i]."""
    R = M.ring
    F = fm.free_module(R, len(gens))
    cols = []
    for x in gens:
        for A in M.action:
            cols.append([sum(a * b for a, b in zip(row, x)) for row in A])
    mat = [[c[t] for c in cols] for t in range(M.rank)]
    return ModuleMap(F, M, mat, check=False)


@dataclass
class FreeResolution:
    """``F_L -> ... -> F_0 -> M``; ``coeff[i][s][t]`` is the ring entry of ``d_i`` (row s, column t)."""

    module: FinModule
    ranks: list
    diffs: list          # diffs[i]: F_i -> F_{i-1} for i >= 1 (diffs[0] is None)
    augmentation: ModuleMap
    coeff: list

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def as_complex(self) -> Complex:
        R = self.module.ring
        mods = {i: fm.free_module(R, g) for i, g in enumerate(self.ranks)}
        return Complex(R, mods, {i: self.diffs[i] for i in range(1, len(self.ranks))}, check=False)


def _ring_coeffs(R: Ring, d: ModuleMap, g_src: int, g_tgt: int):
    """Ring-element entries of a map between free modules."""
    k = R.rank
    out = [[None] * g_src for _ in range(g_tgt)]
    for t in range(g_src):
        v = [0] * (g_src * k)
        v[t * k:(t + 1) * k] = R.one
        col = d(v)
        for s in range(g_tgt):
            out[s][t] = tuple(col[s * k:(s + 1) * k])
    return out


_RES_CACHE: dict = {}


def free_resolution_window(M: FinModule, length: int) -> FreeResolution:
    """A free resolution truncated at ``F_length``."""
    key = (M, length)
    if key in _RES_CACHE:
        return _RES_CACHE[key]
    R = M.ring
    gens = r_generators(M)
    eps = _cover(M, gens)
    ranks, diffs, coeff = [len(gens)], [None], [None]
    prev = eps
    for _ in range(length):
        K = fm.map_spaces(prev, "kernel")
        kg = [K.incl(v) for v in r_generators(K.module)]
        if not kg:
            break
        d = _cover(prev.source, kg)
        ranks.append(len(kg))
        diffs.append(d)
        coeff.append(_ring_coeffs(R, d, len(kg), ranks[-2]))
        prev = d
    res = FreeResolution(M, ranks, diffs, eps, coeff)
    _RES_CACHE[key] = res
    return res


@lru_cache(maxsize=4096)
def _copies(N: FinModule, g: int) -> FinModule:
    return fm.direct_sum_module([N] * g, ring=N.ring)


def tensor_window(X: FinModule, C: Complex, length: int):
    """``Tot(F ⊗ C)`` for a resolution window F of X.

    Returns the complex and the range of degrees where it computes
    ``X ⊗^L C`` (all degrees ≤ ``C.lo + length - 1``, or all degrees when the
    resolution terminated).
    """
    R = C.ring
    F = free_resolution_window(X, length)
    L = F.length
    mods, layout = {}, {}
    for n in range(C.lo, C.hi + L + 1):
        pieces = [(i, n - i) for i in range(0, L + 1) if C.lo <= n - i <= C.hi]
        pieces = [(i, j) for i, j in pieces if F.ranks[i] and not C.module(j).is_zero()]
        layout[n] = pieces
        mods[n] = fm.direct_sum_module([_copies(C.module(j), F.ranks[i]) for i, j in pieces], ring=R)
    diffs = {}
    for n in range(C.lo + 1, C.hi + L + 1):
        src, tgt = layout[n], layout[n - 1]
        tmods = [_copies(C.module(j), F.ranks[i]) for i, j in tgt]
        smods = [_copies(C.module(j), F.ranks[i]) for i, j in src]
        blocks = [[None] * len(src) for _ in tgt]
        for b, (i, j) in enumerate(src):
            for a, (i2, j2) in enumerate(tgt):
                N = C.module(j)
                if i2 == i - 1 and j2 == j:
                    gs, gt = F.ranks[i], F.ranks[i - 1]
                    acts = [[N.act_matrix(F.coeff[i][s][t]) for t in range(gs)] for s in range(gt)]
                    blocks[a][b] = _block(acts, [N] * gt, [N] * gs)
                elif i2 == i and j2 == j - 1:
                    dm = C.d(j).matrix if i % 2 == 0 else C.d(j).scale(-1).matrix
                    g = F.ranks[i]
                    acts = [[dm if s == t else None for t in range(g)] for s in range(g)]
                    blocks[a][b] = _block(acts, [C.module(j - 1)] * g, [N] * g)
        diffs[n] = ModuleMap(mods[n], mods[n - 1], _block(blocks, tmods, smods), check=False)
    T = Complex(R, mods, diffs, check=False)
    exact_top = INF if L < length else C.lo + length - 1
    return T, (-INF, exact_top)


def rhom_window(X: FinModule, C: Complex, length: int):
    """``Hom(F, C)`` for a resolution window F of X.

    Homological degree of ``Hom(F_i, C_j)`` is ``j - i``; the result agrees
    with ``RHom(X, C)`` in degrees ≥ ``C.hi - length + 1``.
    """
    R = C.ring
    F = free_resolution_window(X, length)
    L = F.length
    mods, layout = {}, {}
    for n in range(C.lo - L, C.hi + 1):
        pieces = [(i, n + i) for i in range(0, L + 1) if C.lo <= n + i <= C.hi]
        pieces = [(i, j) for i, j in pieces if F.ranks[i] and not C.module(j).is_zero()]
        layout[n] = pieces
        mods[n] = fm.direct_sum_module([_copies(C.module(j), F.ranks[i]) for i, j in pieces], ring=R)
    diffs = {}
    for n in range(C.lo - L + 1, C.hi + 1):
        src, tgt = layout[n], layout[n - 1]
        tmods = [_copies(C.module(j), F.ranks[i]) for i, j in tgt]
        smods = [_copies(C.module(j), F.ranks[i]) for i, j in src]
        blocks = [[None] * len(src) for _ in tgt]
        sign = -1 if n % 2 == 0 else 1
        for b, (i, j) in enumerate(src):
            N = C.module(j)
            for a, (i2, j2) in enumerate(tgt):
                if i2 == i and j2 == j - 1:
                    g = F.ranks[i]
                    dm = C.d(j).matrix
                    acts = [[dm if s == t else None for t in range(g)] for s in range(g)]
                    blocks[a][b] = _block(acts, [C.module(j - 1)] * g, [N] * g)
                elif i2 == i + 1 and j2 == j:
                    gs, gt = F.ranks[i], F.ranks[i + 1]
                    acts = [[fm.ModuleMap(N, N, N.act_matrix(F.coeff[i + 1][s][t]), check=False)
                             .scale(sign).matrix for s in range(gs)] for t in range(gt)]
                    blocks[a][b] = _block(acts, [N] * gt, [N] * gs)
        diffs[n] = ModuleMap(mods[n], mods[n - 1], _block(blocks, tmods, smods), check=False)
    T = Complex(R, mods, diffs, check=False)
    exact_bottom = -INF if L < length else C.hi - length + 1
    return T, (exact_bottom, INF)


def ext_tor_window(M, N, kind: str, lo: int, hi: int, pad: int = 2, cap: int = 64) -> dict:
    """``{i: H}`` for ``Tor_i(M, N)`` or ``Ext^i(M, N)`` with ``lo ≤ i ≤ hi``.

    M must be a module; N may be a module or a complex.  The resolution
    window is chosen so that every queried degree is certified, plus
    ``pad`` extra steps.
    """
    if isinstance(M, Complex):
        raise ComplexError("first argument must be a module")
    if hi - lo > cap:
        raise ComplexError(f"range {lo}..{hi} exceeds the cap of {cap} degrees")
    C = N if isinstance(N, Complex) else concentrated(N)
    out = {}
    if C.hi < C.lo:
        return out
    if kind == "tor":
        length = max(0, hi - C.lo + 1) + pad
        T, (a, b) = tensor_window(M, C, length)
        assert hi <= b
        for i in range(lo, hi + 1):
            H = homology_module(T, i)[0]
            if not H.is_zero():
                out[i] = H
    elif kind == "ext":
        length = max(0, C.hi + hi + 1) + pad
        T, (a, b) = rhom_window(M, C, length)
        assert -hi >= a
        for i in range(lo, hi + 1):
            H = homology_module(T, -i)[0]
            if not H.is_zero():
                out[i] = H
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return out


# -- nonvanishing criteria ----------------------------------------------------------------


def localize_complex(C: Complex, p: PrimeIdeal) -> Complex:
    mods = {n: fm.localize(C.module(n), p) for n in C.degrees}
    diffs = {n: fm.localize_map(C.d(n), p) for n in range(C.lo + 1, C.hi + 1)}
    return Complex(C.ring, mods, diffs, check=False)


def residue_field(p: PrimeIdeal) -> FinModule:
    return fm.ring_quotient(p.ring, p.ideal.basis)


class WindowMismatch(ComplexError):
    """The finite criterion and the resolution window disagree."""


def derived_nonvanishing(C: Complex, p: PrimeIdeal, kind: str, validate: bool = False):
    """Decide ``RHom(k(p), C_p) ≠ 0`` or ``k(p) ⊗^L C_p ≠ 0``.

    Returns ``(nonzero, witness)``; the witness is the top (rhom) or bottom
    (tensor) degree of the localized homology, where the derived functor
    has its extreme nonzero homology.
    """
    if kind not in ("rhom_residue", "tensor_residue"):
        raise ValueError(f"unknown kind {kind!r}")
    Cp = localize_complex(C, p)
    h = homology_orders(Cp)
    if not h:
        nonzero, witness = False, None
    else:
        nonzero = True
        witness = max(h) if kind == "rhom_residue" else min(h)
    if validate:
        _window_check(Cp, p, kind, h, witness)
    return nonzero, witness


def _window_check(Cp: Complex, p: PrimeIdeal, kind: str, h: dict, witness):
    k = residue_field(p)
    if Cp.hi < Cp.lo:
        return
    if h:
        a, b = min(h) - 2, max(h) + 2
    else:
        a, b = Cp.lo - 2, Cp.hi + 2
    if kind == "rhom_residue":
        T, _ = rhom_window(k, Cp, max(0, Cp.hi - a + 1))
        degs = range(max(a, T.lo), b + 1)
    else:
        T, _ = tensor_window(k, Cp, max(0, b - Cp.lo + 1))
        degs = range(a, min(b, T.hi) + 1)
    hw = homology_orders(T)
    seen = [n for n in degs if n in hw]
    if witness is None:
        if seen:
            raise WindowMismatch(f"window homology in degree {seen[0]} for an exact complex")
        return
    if witness not in hw:
        raise WindowMismatch(f"no window homology at the witness degree {witness}")
    beyond = [n for n in seen if (n > witness if kind == "rhom_residue" else n < witness)]
    if beyond:
        raise WindowMismatch(f"window homology beyond the witness at degree {beyond[0]}")


# -- degreewise functors ------------------------------------------------------------------


def apply_duality(C: Complex, functor: str, p: PrimeIdeal | None = None, route: str = "char") -> Complex:
    """Apply D_R, D_m, localize, colocalize or tilde degreewise.

    Duals reverse the grading: ``(DC)_n = D(C_{-n})``.
    """
    R = C.ring
    if functor == "D_R":
        if route == "char":
            mods = {-n: fm.char_dual(C.module(n)) for n in C.degrees}
            diffs = {1 - n: fm.char_dual_map(C.d(n)) for n in range(C.lo + 1, C.hi + 1)}
        else:
            mods = {-n: fm.matlis_dual(C.module(n), route="literal") for n in C.degrees}
            diffs = {1 - n: fm.matlis_dual_map(C.d(n), route="literal") for n in range(C.lo + 1, C.hi + 1)}
        return Complex(R, mods, diffs, check=False)
    if functor == "D_m":
        L = localize_complex(C, p)
        return apply_duality(L, "D_R", route=route) if route == "char" else _literal_dm(C, p)
    if functor == "localize":
        return localize_complex(C, p)
    if functor == "colocalize":
        if route == "fast":
            return localize_complex(C, p)
        mods = {n: fm.colocalize(C.module(n), p) for n in C.degrees}
        diffs = {n: fm.colocalize_map(C.d(n), p) for n in range(C.lo + 1, C.hi + 1)}
        return Complex(R, mods, diffs, check=False)
    if functor == "tilde":
        mods = {n: fm.tilde_bidual(C.module(n)) for n in C.degrees}
        diffs = {n: fm.tilde_map(C.d(n)) for n in range(C.lo + 1, C.hi + 1)}
        return Complex(R, mods, diffs, check=False)
    raise ValueError(f"unknown functor {functor!r}")


def _literal_dm(C: Complex, m: PrimeIdeal) -> Complex:
    E = fm.injective_envelope(C.ring, m)
    mods = {-n: fm.hom_module(C.module(n), E) for n in C.degrees}
    diffs = {1 - n: fm.hom_pre(C.d(n), E) for n in range(C.lo + 1, C.hi + 1)}
    return Complex(C.ring, mods, diffs, check=False)


def euler_check(C: Complex) -> bool:
    """Alternating products of |C_n| and |H_n| agree."""
    from fractions import Fraction
    a = Fraction(1)
    b = Fraction(1)
    h = homology_orders(C)
    for n in C.degrees:
        s = C.module(n).size
        a = a * s if n % 2 == 0 else a / s
        hn = h.get(n, 1)
        b = b * hn if n % 2 == 0 else b / hn
    return a == b


__all__ = [
    "Complex", "ComplexError", "ChainMap", "HomologyProfile", "FreeResolution", "WindowMismatch",
    "build_complex", "concentrated", "two_term", "zero_complex", "homology", "homology_module",
    "homology_orders", "inf_sup", "shift", "trunc_ge", "trunc_le", "shift_truncate", "cone",
    "identity_chain", "mult_chain", "trunc_ge_inclusion", "trunc_le_projection",
    "free_resolution_window", "tensor_window", "rhom_window", "ext_tor_window",
    "derived_nonvanishing", "localize_complex", "residue_field", "apply_duality", "euler_check",
]
