"""Finite modules over finite rings, their maps, and the duality functors.

A module is ``⊕ Z/e_j`` (``orders``) with one action matrix per additive
generator ``g_i`` of the ring: column ``j`` of ``action[i]`` holds the
coordinates of ``g_i * b_j``.  Every coordinate computation happens in
``Z/n`` with ``n`` the additive exponent of the ring, which kills every
module over it.

The Matlis dual has two implementations: ``char_dual`` (the group dual into
Q/Z with transposed action) and the literal ``Hom(-, ⊕ E(R/m))``.  The
comparison maps between them, and between ``M`` and its co-localizations and
bidual, are built explicitly and checked for bijectivity.
"""

from __future__ import annotations

from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod

from .finring import Ideal, PrimeIdeal, Ring
from .linalg import Quotient, Subgroup, elements, group_kernel, image_size

MAX_MODULE_ORDER = 1 << 20
MAX_ENUM_ORDER = 256


class ModuleError(ValueError):
    """Invalid module data or a failed internal consistency check."""


def _reduce_matrix(A, row_orders):
    return tuple(tuple([v % e for v in row]) for row, e in zip(A, row_orders))


def _matmul(A, B, ncols):
    """Integer product of A and B; ``ncols`` is the column count of B."""
    if not A:
        return []
    out = []
    for row in A:
        r = [0] * ncols
        for s, a in enumerate(row):
            if a:
                for j, b in enumerate(B[s]):
                    if b:
                        r[j] += a * b
        out.append(r)
    return out


class FinModule:
    """A finite R-module."""

    def __init__(self, ring: Ring, orders, action, check: bool = True):
        orders = [int(e) for e in orders]
        keep = [j for j, e in enumerate(orders) if e > 1]
        if len(keep) != len(orders):
            action = [[[A[t][j] for j in keep] for t in keep] for A in action]
            orders = [orders[j] for j in keep]
        self.ring = ring
        self.orders = tuple(orders)
        if len(action) != ring.rank:
            raise ModuleError(f"need {ring.rank} action matrices, got {len(action)}")
        self.action = tuple(_reduce_matrix(A, self.orders) for A in action)
        self._key = (ring, self.orders, self.action)
        self._hash = hash(self._key)
        if check:
            self.validate()

    # -- basic data -------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return prod(self.orders)

    @property
    def n(self) -> int:
        return self.ring.n

    def is_zero(self) -> bool:
        return not self.orders

    def __eq__(self, other):
        return isinstance(other, FinModule) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FinModule({self.ring.name}; orders={list(self.orders)})"

    def zero_vec(self):
        return [0] * self.rank

    def reduce(self, x):
        return [int(a) % e for a, e in zip(x, self.orders)]

    def elements(self):
        return elements(self.orders)

    def act_matrix(self, r):
        """Matrix of multiplication by the ring element r."""
        m = self.rank
        out = [[0] * m for _ in range(m)]
        for c, A in zip(r, self.action):
            if c:
                for t in range(m):
                    row, src = out[t], A[t]
                    for j in range(m):
                        row[j] += c * src[j]
        return [[v % e for v in row] for row, e in zip(out, self.orders)]

    def act(self, r, x):
        out = [0] * self.rank
        for c, A in zip(r, self.action):
            if c:
                for t, row in enumerate(A):
                    out[t] += c * sum(a * b for a, b in zip(row, x))
        return [v % e for v, e in zip(out, self.orders)]

    # -- validation ---------------------------------------------------------------

    def validate(self):
        R, n, m = self.ring, self.ring.n, self.rank
        if self.size > MAX_MODULE_ORDER:
            raise ModuleError(f"|M| = {self.size} exceeds the cap {MAX_MODULE_ORDER}")
        for e in self.orders:
            if n % e:
                raise ModuleError(f"order mismatch: {e} does not divide the ring exponent {n}")
        for i, A in enumerate(self.action):
            for t in range(m):
                for j in range(m):
                    if (self.orders[j] * A[t][j]) % self.orders[t]:
                        raise ModuleError(f"action of g{i} is not well defined on coordinate {j}")
                    if (R.orders[i] * A[t][j]) % self.orders[t]:
                        raise ModuleError(f"action of g{i} incompatible with its additive order")
        ident = [[int(i == j) for j in range(m)] for i in range(m)]
        if self.act_matrix(R.one) != ident:
            raise ModuleError("action of 1 is not the identity")
        for i in range(R.rank):
            for j in range(i, R.rank):
                lhs = self.reduce_matrix(_matmul(self.action[i], self.action[j], m))
                rhs = self.act_matrix(R.mul[i][j])
                if lhs != rhs:
                    raise ModuleError(f"action incompatible with ring relations at g{i}*g{j}")
        return self

    def reduce_matrix(self, A):
        return [[v % e for v in row] for row, e in zip(A, self.orders)]

    # -- serialization ----------------------------------------------------------------

    def to_json(self, ring_ref=None):
        return {"ring": ring_ref if ring_ref is not None else self.ring.spec,
                "orders": list(self.orders),
                "action": {str(i): [list(r) for r in A] for i, A in enumerate(self.action)}}


class ModuleMap:
    """An R-linear map; ``matrix`` is ``target.rank x source.rank``."""

    def __init__(self, source: FinModule, target: FinModule, matrix, check: bool = True):
        if source.ring != target.ring:
            raise ModuleError("ring mismatch")
        self.source = source
        self.target = target
        if not matrix:
            matrix = [[0] * source.rank for _ in range(target.rank)]
        if len(matrix) != target.rank or any(len(r) != source.rank for r in matrix):
            raise ModuleError("map matrix has the wrong shape")
        self.matrix = [list(r) for r in _reduce_matrix(matrix, target.orders)]
        if check:
            self.validate()

    def validate(self):
        S, T, F = self.source, self.target, self.matrix
        for t in range(T.rank):
            for j in range(S.rank):
                if (S.orders[j] * F[t][j]) % T.orders[t]:
                    raise ModuleError(f"map not well defined on source coordinate {j}")
        for i in range(S.ring.rank):
            lhs = T.reduce_matrix(_matmul(F, S.action[i], S.rank))
            rhs = T.reduce_matrix(_matmul(T.action[i], F, S.rank))
            if lhs != rhs:
                raise ModuleError(f"map does not commute with the action of g{i}")
        return self

    def __call__(self, x):
        return [sum(a * b for a, b in zip(row, x)) % e for row, e in zip(self.matrix, self.target.orders)]

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition ``self ∘ other``."""
        if other.target != self.source:
            raise ModuleError("composition of non-composable maps")
        return ModuleMap(other.source, self.target,
                         _matmul(self.matrix, other.matrix, other.source.rank), check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        F = [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)]
        return ModuleMap(self.source, self.target, F, check=False)

    def __neg__(self):
        return ModuleMap(self.source, self.target, [[-a for a in r] for r in self.matrix], check=False)

    def scale(self, c: int) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [[c * a for a in r] for r in self.matrix], check=False)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)

    def __eq__(self, other):
        return (isinstance(other, ModuleMap) and self.source == other.source
                and self.target == other.target and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.source, self.target, tuple(map(tuple, self.matrix))))

    def kernel_gens(self):
        return group_kernel(self.matrix, self.source.orders, self.target.orders, self.source.n)

    def image_size(self) -> int:
        return image_size(self.matrix, self.target.orders, self.target.n)

    def is_injective(self) -> bool:
        return self.image_size() == self.source.size

    def is_surjective(self) -> bool:
        return self.image_size() == self.target.size

    def is_iso(self) -> bool:
        return self.source.size == self.target.size and self.is_surjective()

    def to_json(self):
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "matrix": [list(r) for r in self.matrix]}


# -- constructors ---------------------------------------------------------------------


def zero_module(R: Ring) -> FinModule:
    return FinModule(R, [], [[] for _ in range(R.rank)], check=False)


def regular_module(R: Ring) -> FinModule:
    return FinModule(R, R.orders, R.regular_action, check=False)


def identity_map(M: FinModule) -> ModuleMap:
    return ModuleMap(M, M, [[int(i == j) for j in range(M.rank)] for i in range(M.rank)], check=False)


def zero_map(M: FinModule, N: FinModule) -> ModuleMap:
    return ModuleMap(M, N, [[0] * M.rank for _ in range(N.rank)], check=False)


def mult_map(M: FinModule, r) -> ModuleMap:
    """Multiplication by the ring element r."""
    return ModuleMap(M, M, M.act_matrix(r), check=False)


DirectSum = namedtuple("DirectSum", "module incls projs")


def direct_sum_module(mods, ring: Ring | None = None) -> FinModule:
    """The direct sum as a module only (no structure maps)."""
    mods = list(mods)
    if not mods:
        if ring is None:
            raise ModuleError("empty direct sum needs a ring")
        return zero_module(ring)
    if len(mods) == 1:
        return mods[0]
    R = mods[0].ring
    orders = [e for M in mods for e in M.orders]
    m = len(orders)
    action = []
    for i in range(R.rank):
        A = []
        off = 0
        for M in mods:
            k = M.rank
            pad_l, pad_r = [0] * off, [0] * (m - off - k)
            for row in M.action[i]:
                A.append(pad_l + list(row) + pad_r)
            off += k
        action.append(A)
    return FinModule(R, orders, action, check=False)


def direct_sum(mods, ring: Ring | None = None) -> DirectSum:
    mods = list(mods)
    S = direct_sum_module(mods, ring)
    if not mods:
        return DirectSum(S, [], [])
    m = S.rank
    incls, projs = [], []
    off = 0
    for M in mods:
        inc = [[int(t == off + j) for j in range(M.rank)] for t in range(m)]
        pr = [[int(j == off + t) for j in range(m)] for t in range(M.rank)]
        incls.append(ModuleMap(M, S, inc, check=False))
        projs.append(ModuleMap(S, M, pr, check=False))
        off += M.rank
    return DirectSum(S, incls, projs)


def free_module(R: Ring, rank: int) -> FinModule:
    return direct_sum([regular_module(R)] * rank, ring=R).module


def r_span(M: FinModule, gens):
    """Additive generators of the R-submodule generated by ``gens``."""
    out = []
    for v in gens:
        for A in M.action:
            out.append([sum(a * b for a, b in zip(row, v)) % e for row, e in zip(A, M.orders)])
    return out


Sub = namedtuple("Sub", "module incl coords")
Quo = namedtuple("Quo", "module proj section")


def submodule(M: FinModule, gens, closed: bool = False) -> Sub:
    """The submodule generated by ``gens`` with its inclusion map.

    ``closed`` asserts that the additive span is already an R-submodule
    (true for kernels and images of R-maps).
    """
    if not closed:
        gens = r_span(M, gens)
    sub = Subgroup(M.orders, gens, M.n)
    basis = sub.basis
    action = []
    for A in M.action:
        cols = []
        for b in basis:
            c = sub.coords([sum(a * x for a, x in zip(row, b)) for row in A])
            if c is None:
                raise ModuleError("generated subgroup is not closed under the action")
            cols.append(c)
        action.append([[c[t] for c in cols] for t in range(len(basis))])
    S = FinModule(M.ring, sub.orders, action, check=False)
    incl = ModuleMap(S, M, sub.incl if basis else [], check=False)
    return Sub(S, incl, sub.coords)


def quotient_module(M: FinModule, gens, closed: bool = False) -> Quo:
    if not closed:
        gens = r_span(M, gens)
    q = Quotient(M.orders, gens, M.n)
    k = len(q.orders)
    action = []
    for A in M.action:
        AS = _matmul(A, q.section, k) if k else []
        action.append(_matmul(q.proj, AS, k) if k else [])
    Q = FinModule(M.ring, q.orders, action, check=False)
    proj = ModuleMap(M, Q, q.proj, check=False)
    section = [[q.section[r][i] for r in range(M.rank)] for i in range(k)]
    return Quo(Q, proj, section)


def map_spaces(f: ModuleMap, which: str):
    """Kernel, image or cokernel of f with its structural map."""
    if which == "kernel":
        return submodule(f.source, f.kernel_gens(), closed=True)
    if which == "image":
        cols = [list(c) for c in zip(*f.matrix)] if f.matrix and f.source.rank else []
        return submodule(f.target, cols, closed=True)
    if which == "cokernel":
        cols = [list(c) for c in zip(*f.matrix)] if f.matrix and f.source.rank else []
        return quotient_module(f.target, cols, closed=True)
    raise ValueError(f"unknown map space {which!r}")


def normalize(M: FinModule) -> tuple[FinModule, ModuleMap]:
    """Invariant-factor form of M together with an isomorphism onto M."""
    sub = submodule(M, [[int(i == j) for i in range(M.rank)] for j in range(M.rank)], closed=True)
    return sub.module, sub.incl


def ring_quotient(R: Ring, gens) -> FinModule:
    """The cyclic module R/(gens)."""
    return quotient_module(regular_module(R), [list(g) for g in gens]).module


def _ring_elem(R: Ring, v):
    if isinstance(v, int):
        return R.scale(v, R.one)
    return R.reduce(v)


def build_module(R: Ring, presentation) -> FinModule:
    """Build a normalized module from a presentation.

    Accepted forms: ``{"orders": [...], "action": {"0": matrix, ...}}``,
    ``{"free": k}``, ``{"quotient": [ring elements]}`` for R/I, and
    ``{"cokernel": matrix}`` where the matrix has ring-element entries and
    presents ``R^b / image(R^a)`` (b rows, a columns).
    """
    if isinstance(presentation, FinModule):
        M = presentation
    elif "orders" in presentation:
        act = presentation["action"]
        if isinstance(act, dict):
            act = [act[str(i)] if str(i) in act else act[i] for i in range(R.rank)]
        M = FinModule(R, presentation["orders"], act)
    elif "free" in presentation:
        M = free_module(R, int(presentation["free"]))
    elif "quotient" in presentation:
        M = ring_quotient(R, [_ring_elem(R, g) for g in presentation["quotient"]])
    elif "cokernel" in presentation:
        rows = presentation["cokernel"]
        b = len(rows)
        a = len(rows[0]) if rows else 0
        F = free_module(R, b)
        gens = []
        for j in range(a):
            v = []
            for i in range(b):
                v += list(_ring_elem(R, rows[i][j]))
            gens.append(v)
        M = quotient_module(F, gens).module
    else:
        raise ModuleError(f"unrecognized module presentation: {sorted(presentation)}")
    return normalize(M)[0]


# -- Hom and tensor ---------------------------------------------------------------------


class HomModule(FinModule):
    """``Hom_R(M, N)`` with a basis of representative maps.

    Coordinates of the ambient space list the columns of a map matrix one
    after another (column j occupies ``j*N.rank .. (j+1)*N.rank``).
    """

    def __init__(self, M: FinModule, N: FinModule):
        if M.ring != N.ring:
            raise ModuleError("ring mismatch")
        R, n = M.ring, M.n
        mM, mN = M.rank, N.rank
        xorders = [N.orders[t] for _ in range(mM) for t in range(mN)]
        rows, rorders = [], []
        for j in range(mM):
            for t in range(mN):
                r = [0] * (mM * mN)
                r[j * mN + t] = M.orders[j]
                rows.append(r)
                rorders.append(N.orders[t])
        for i in range(R.rank):
            AM, AN = M.action[i], N.action[i]
            for j in range(mM):
                for t in range(mN):
                    r = [0] * (mM * mN)
                    for s in range(mM):
                        if AM[s][j]:
                            r[s * mN + t] += AM[s][j]
                    for u in range(mN):
                        if AN[t][u]:
                            r[j * mN + u] -= AN[t][u]
                    rows.append(r)
                    rorders.append(N.orders[t])
        gens = group_kernel(rows, xorders, rorders, n) if xorders else []
        sub = Subgroup(xorders, gens, n)
        self._sub = sub
        self._xorders = xorders
        self.hom_source = M
        self.hom_target = N
        basis = sub.basis
        action = []
        for i in range(R.rank):
            cols = []
            for b in basis:
                cols.append(sub.coords(self._precompose_flat(b, M.action[i])))
            action.append([[c[t] for c in cols] for t in range(len(basis))])
        super().__init__(R, sub.orders, action, check=False)
        self.basis_vectors = basis

    def _precompose_flat(self, x, A):
        """Flat coordinates of F∘A where x holds the columns of F."""
        mM, mN = self.hom_source.rank, self.hom_target.rank
        out = [0] * (mM * mN)
        for j in range(mM):
            for s in range(mM):
                a = A[s][j]
                if a:
                    for t in range(mN):
                        out[j * mN + t] += a * x[s * mN + t]
        return [v % e for v, e in zip(out, self._xorders)]

    def to_matrix(self, coords):
        """The map matrix (target.rank x source.rank) for Hom coordinates."""
        mM, mN = self.hom_source.rank, self.hom_target.rank
        flat = [0] * (mM * mN)
        for c, b in zip(coords, self.basis_vectors):
            if c:
                for k, v in enumerate(b):
                    flat[k] += c * v
        return [[flat[j * mN + t] % self.hom_target.orders[t] for j in range(mM)] for t in range(mN)]

    def to_map(self, coords) -> ModuleMap:
        return ModuleMap(self.hom_source, self.hom_target, self.to_matrix(coords), check=False)

    def from_matrix(self, F):
        """Hom coordinates of the map with matrix F (None if F is not R-linear)."""
        mM, mN = self.hom_source.rank, self.hom_target.rank
        flat = [F[t][j] for j in range(mM) for t in range(mN)]
        return self._sub.coords(flat)

    def basis_maps(self):
        return [self.to_map([int(i == j) for i in range(self.rank)]) for j in range(self.rank)]


@lru_cache(maxsize=4096)
def hom_module(M: FinModule, N: FinModule) -> HomModule:
    """``Hom_R(M, N)`` with R-action ``(r f)(x) = f(r x)``."""
    return HomModule(M, N)


def hom_pre(f: ModuleMap, E: FinModule) -> ModuleMap:
    """``Hom(f, E): Hom(N, E) -> Hom(M, E)`` for ``f: M -> N``, i.e. φ ↦ φ∘f."""
    HN, HM = hom_module(f.target, E), hom_module(f.source, E)
    cols = []
    for j in range(HN.rank):
        phi = HN.to_matrix([int(i == j) for i in range(HN.rank)])
        c = HM.from_matrix(_matmul(phi, f.matrix, f.source.rank))
        if c is None:
            raise ModuleError("precomposition left Hom(M, E)")
        cols.append(c)
    mat = [[c[t] for c in cols] for t in range(HM.rank)]
    return ModuleMap(HN, HM, mat, check=False)


def hom_post(M: FinModule, g: ModuleMap) -> ModuleMap:
    """``Hom(M, g): Hom(M, A) -> Hom(M, B)`` for ``g: A -> B``."""
    HA, HB = hom_module(M, g.source), hom_module(M, g.target)
    cols = []
    for j in range(HA.rank):
        phi = HA.to_matrix([int(i == j) for i in range(HA.rank)])
        c = HB.from_matrix(_matmul(g.matrix, phi, M.rank))
        if c is None:
            raise ModuleError("postcomposition left Hom(M, B)")
        cols.append(c)
    return ModuleMap(HA, HB, [[c[t] for c in cols] for t in range(HB.rank)], check=False)


class TensorModule(FinModule):
    """``M ⊗_R N`` presented as a quotient of the span of ``x_j ⊗ y_l``."""

    def __init__(self, M: FinModule, N: FinModule):
        if M.ring != N.ring:
            raise ModuleError("ring mismatch")
        R, n = M.ring, M.n
        mM, mN = M.rank, N.rank
        xorders = [gcd(M.orders[j], N.orders[l]) for j in range(mM) for l in range(mN)]
        rels = []
        for i in range(R.rank):
            AM, AN = M.action[i], N.action[i]
            for j in range(mM):
                for l in range(mN):
                    v = [0] * (mM * mN)
                    for s in range(mM):
                        v[s * mN + l] += AM[s][j]
                    for u in range(mN):
                        v[j * mN + u] -= AN[u][l]
                    rels.append(v)
        q = Quotient(xorders, rels, n)
        self._q = q
        self._xorders = xorders
        self.left, self.right = M, N
        k = len(q.orders)
        action = []
        for i in range(R.rank):
            AM = M.action[i]
            cols = []
            for c in range(k):
                x = [q.section[r][c] for r in range(mM * mN)]
                y = [0] * (mM * mN)
                for j in range(mM):
                    for l in range(mN):
                        v = x[j * mN + l]
                        if v:
                            for s in range(mM):
                                y[s * mN + l] += AM[s][j] * v
                cols.append(q.project(y))
            action.append([[c[t] for c in cols] for t in range(k)])
        super().__init__(R, q.orders, action, check=False)

    def pure(self, x, y):
        """Coordinates of ``x ⊗ y``."""
        mN = self.right.rank
        v = [0] * len(self._xorders)
        for j, a in enumerate(x):
            if a:
                for l, b in enumerate(y):
                    v[j * mN + l] += a * b
        return self._q.project(v)


@lru_cache(maxsize=4096)
def tensor_module(M: FinModule, N: FinModule) -> TensorModule:
    return TensorModule(M, N)


def tensor_maps(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    """``f ⊗ g`` between the tensor modules."""
    S, T = tensor_module(f.source, g.source), tensor_module(f.target, g.target)
    cols = []
    for c in range(S.rank):
        x = [S._q.section[r][c] for r in range(len(S._xorders))]
        y = [0] * len(T._xorders)
        mS, mT = g.source.rank, g.target.rank
        for j in range(f.source.rank):
            for l in range(mS):
                v = x[j * mS + l]
                if v:
                    for s in range(f.target.rank):
                        a = f.matrix[s][j]
                        if a:
                            for u in range(mT):
                                b = g.matrix[u][l]
                                if b:
                                    y[s * mT + u] += v * a * b
        cols.append(T._q.project(y))
    return ModuleMap(S, T, [[c[t] for c in cols] for t in range(T.rank)], check=False)


# -- localization and annihilators ---------------------------------------------------


Localized = namedtuple("Localized", "module proj incl")


def _check_prime(M: FinModule, p: PrimeIdeal):
    if not isinstance(p, PrimeIdeal) or p.ring != M.ring:
        raise ModuleError("foreign prime: not in Spec of the module's ring")


def localize_module(M: FinModule, p: PrimeIdeal) -> Localized:
    """``M_p = e_p M`` with projection ``M -> M_p`` and inclusion back."""
    _check_prime(M, p)
    e = p.idempotent
    imgs = [M.act(e, [int(i == j) for i in range(M.rank)]) for j in range(M.rank)]
    sub = submodule(M, imgs, closed=True)
    cols = [sub.coords(v) for v in imgs]
    proj = ModuleMap(M, sub.module, [[c[t] for c in cols] for t in range(sub.module.rank)], check=False)
    return Localized(sub.module, proj, sub.incl)


@lru_cache(maxsize=8192)
def _localized(M: FinModule, p: PrimeIdeal) -> Localized:
    return localize_module(M, p)


def localize(M: FinModule, p: PrimeIdeal) -> FinModule:
    return _localized(M, p).module


def localize_map(f: ModuleMap, p: PrimeIdeal) -> ModuleMap:
    LS, LT = _localized(f.source, p), _localized(f.target, p)
    return LT.proj @ f @ LS.incl


def annihilator(M: FinModule) -> Ideal:
    """``Ann_R M`` by solving ``sum c_i A_i = 0`` over the ring coordinates."""
    R, m = M.ring, M.rank
    rows, rorders = [], []
    for j in range(m):
        for t in range(m):
            rows.append([M.action[i][t][j] for i in range(R.rank)])
            rorders.append(M.orders[t])
    gens = group_kernel(rows, R.orders, rorders, R.n) if rows else [list(R.gen(i)) for i in range(R.rank)]
    return Ideal(R, [tuple(g) for g in gens])


def socle(M: FinModule, p: PrimeIdeal | None = None) -> Sub:
    """Elements killed by p (by J(R) when p is None)."""
    I = p.ideal if p is not None else M.ring.jacobson_radical
    rows, rorders = [], []
    for g in I.basis:
        A = M.act_matrix(g)
        rows += A
        rorders += list(M.orders)
    if not rows:
        return submodule(M, [[int(i == j) for i in range(M.rank)] for j in range(M.rank)], closed=True)
    return submodule(M, group_kernel(rows, M.orders, rorders, M.n), closed=True)


# -- dualities -------------------------------------------------------------------------


@lru_cache(maxsize=8192)
def char_dual(M: FinModule) -> FinModule:
    """``Hom_Z(M, Q/Z)`` on the dual basis ``φ_j(b_s) = δ_js / e_j``."""
    m, e = M.rank, M.orders
    action = []
    for A in M.action:
        action.append([[(A[j][s] * e[s] // e[j]) % e[s] for j in range(m)] for s in range(m)])
    return FinModule(M.ring, e, action, check=False)


def char_dual_map(f: ModuleMap) -> ModuleMap:
    """The transpose map ``char_dual(N) -> char_dual(M)`` of ``f: M -> N``."""
    S, T = f.source, f.target
    mat = [[(f.matrix[t][j] * S.orders[j] // T.orders[t]) % S.orders[j] for t in range(T.rank)]
           for j in range(S.rank)]
    return ModuleMap(char_dual(T), char_dual(S), mat, check=False)


def double_dual_map(M: FinModule) -> ModuleMap:
    """Evaluation ``M -> char_dual(char_dual(M))``; the identity on dual-dual bases."""
    return ModuleMap(M, char_dual(char_dual(M)), identity_map(M).matrix)


def _is_essential(E: FinModule, soc: Sub) -> bool:
    if E.size > MAX_ENUM_ORDER:
        return True
    soc_set = set()
    for c in soc.module.elements():
        soc_set.add(tuple(soc.incl(c)))
    for x in E.elements():
        if not any(x):
            continue
        span = Subgroup(E.orders, r_span(E, [x]), E.n)
        if not any(span.contains(list(s)) for s in soc_set if any(s)):
            return False
    return True


@lru_cache(maxsize=1024)
def injective_envelope(R: Ring, m: PrimeIdeal) -> FinModule:
    """``E(R/m)`` modelled as ``char_dual(R_m)``, checked to be an essential extension of R/m."""
    if not isinstance(m, PrimeIdeal) or m.ring != R:
        raise ModuleError("foreign prime: not in Spec R")
    E = char_dual(localize(regular_module(R), m))
    soc = socle(E, m)
    if soc.module.size != m.residue_size:
        raise ModuleError("essentiality check failed: socle of E(R/m) is not R/m")
    if not _is_essential(E, soc):
        raise ModuleError("essentiality check failed: E(R/m) is not essential over its socle")
    return E


@lru_cache(maxsize=256)
def envelope_sum(R: Ring) -> DirectSum:
    """``⊕_{m ∈ Max R} E(R/m)`` with its structure maps (ordered like Spec R)."""
    return direct_sum([injective_envelope(R, m) for m in R.spectrum], ring=R)


def matlis_dual(M: FinModule, target="all", route: str = "char") -> FinModule:
    """``D_R(M)`` (target "all") or ``D_m(M)`` (target a maximal ideal).

    route "char" uses the character dual, route "literal" computes the Hom
    module into the envelope(s).
    """
    if target != "all":
        _check_prime(M, target)
    if route == "char":
        return char_dual(M) if target == "all" else char_dual(localize(M, target))
    if route == "literal":
        E = envelope_sum(M.ring).module if target == "all" else injective_envelope(M.ring, target)
        return hom_module(M, E)
    raise ValueError(f"unknown route {route!r}")


def matlis_dual_map(f: ModuleMap, route: str = "char") -> ModuleMap:
    if route == "char":
        return char_dual_map(f)
    return hom_pre(f, envelope_sum(f.source.ring).module)


def _envelope_unit_coords(R: Ring, m: PrimeIdeal):
    """Coordinates ``w`` of e_m in R_m, and the orders of R_m."""
    L = _localized(regular_module(R), m)
    return L.proj(list(R.one)), L.module.orders


def matlis_comparison(M: FinModule, target="all") -> ModuleMap:
    """Natural map from the literal Hom dual to the character dual.

    A map f into ``⊕ E(R/m)`` is sent to the character ``x ↦ Σ_m f_m(x)(e_m)``
    (evaluation at 1).  For a single maximal ideal m the character lives on
    ``M_m``.  Raises ModuleError when the map is not an isomorphism.
    """
    R = M.ring
    H = matlis_dual(M, target, route="literal")
    if target == "all":
        primes, projs = R.spectrum, envelope_sum(R).projs
        src, incl = M, identity_map(M)
    else:
        primes, projs = [target], [identity_map(injective_envelope(R, target))]
        L = _localized(M, target)
        src, incl = L.module, L.incl
    units = [_envelope_unit_coords(R, m) for m in primes]
    C = char_dual(src)
    cols = []
    for b in range(H.rank):
        F = H.to_matrix([int(i == b) for i in range(H.rank)])
        col = []
        for s in range(src.rank):
            x = incl([int(i == s) for i in range(src.rank)])
            fx = [sum(a * v for a, v in zip(row, x)) for row in F]
            val = Fraction(0)
            for pr, (w, lorders) in zip(projs, units):
                y = pr(fx)
                val += sum(Fraction(c * wt, o) for c, wt, o in zip(y, w, lorders))
            c = val * src.orders[s]
            if c.denominator != 1:
                raise ModuleError("evaluation at 1 is not a character")
            col.append(int(c) % src.orders[s])
        cols.append(col)
    phi = ModuleMap(H, C, [[c[t] for c in cols] for t in range(C.rank)])
    if not phi.is_iso():
        raise ModuleError("literal and character Matlis duals disagree")
    return phi


def colocalize(M: FinModule, p: PrimeIdeal, route: str = "literal") -> FinModule:
    """``^pM = Hom_{R_p}(D_R(M)_p, E(k(p)))``; route "fast" returns ``M_p``."""
    _check_prime(M, p)
    if route == "fast":
        return localize(M, p)
    return _colocalized(M, p).module


Colocalized = namedtuple("Colocalized", "module dual local_dual envelope")


@lru_cache(maxsize=4096)
def _colocalized(M: FinModule, p: PrimeIdeal) -> Colocalized:
    R = M.ring
    D = matlis_dual(M, "all", route="literal")
    Dp = _localized(D, p)
    E = injective_envelope(R, p)
    return Colocalized(hom_module(Dp.module, E), D, Dp, E)


def colocalize_map(f: ModuleMap, p: PrimeIdeal, route: str = "literal") -> ModuleMap:
    if route == "fast":
        return localize_map(f, p)
    Df = hom_pre(f, envelope_sum(f.source.ring).module)      # D(N) -> D(M)
    Dfp = localize_map(Df, p)
    return hom_pre(Dfp, injective_envelope(f.source.ring, p))  # ^pM -> ^pN


def colocalization_comparison(M: FinModule, p: PrimeIdeal) -> ModuleMap:
    """Evaluation ``M_p -> ^pM``, checked to be an isomorphism.

    An element x of e_p M goes to φ ↦ (p-component of φ(x)) on D_R(M)_p.
    """
    R = M.ring
    L = _localized(M, p)
    C = _colocalized(M, p)
    H, D, Dp = C.module, C.dual, C.local_dual
    idx = R.spectrum.index(p)
    comp = envelope_sum(R).projs[idx]
    cols = []
    for s in range(L.module.rank):
        x = L.incl([int(i == s) for i in range(L.module.rank)])
        F = []
        for t in range(Dp.module.rank):
            phi_coords = Dp.incl([int(i == t) for i in range(Dp.module.rank)])
            phi = D.to_matrix(phi_coords)
            F.append(comp([sum(a * b for a, b in zip(row, x)) for row in phi]))
        mat = [[F[t][u] for t in range(Dp.module.rank)] for u in range(C.envelope.rank)]
        c = H.from_matrix(mat)
        if c is None:
            raise ModuleError("evaluation does not land in the co-localization")
        cols.append(c)
    ev = ModuleMap(L.module, H, [[c[t] for c in cols] for t in range(H.rank)])
    if not ev.is_iso():
        raise ModuleError(f"route mismatch: ^pM and M_p differ at {p.label}")
    return ev


@lru_cache(maxsize=4096)
def tilde_bidual(M: FinModule) -> FinModule:
    """``M~ = ∏_m D_m(D_m(M))`` computed literally."""
    R = M.ring
    parts = []
    for m in R.spectrum:
        E = injective_envelope(R, m)
        parts.append(hom_module(hom_module(M, E), E))
    return direct_sum(parts, ring=R).module


def tilde_comparison(M: FinModule) -> ModuleMap:
    """Evaluation ``M -> M~``, checked to be an isomorphism."""
    R = M.ring
    T = tilde_bidual(M)
    cols = []
    for s in range(M.rank):
        x = [int(i == s) for i in range(M.rank)]
        col = []
        for m in R.spectrum:
            E = injective_envelope(R, m)
            D = hom_module(M, E)
            DD = hom_module(D, E)
            F = []
            for t in range(D.rank):
                phi = D.to_matrix([int(i == t) for i in range(D.rank)])
                F.append([sum(a * b for a, b in zip(row, x)) % e for row, e in zip(phi, E.orders)])
            mat = [[F[t][u] for t in range(D.rank)] for u in range(E.rank)]
            c = DD.from_matrix(mat)
            if c is None:
                raise ModuleError("evaluation does not land in the bidual")
            col += c
        cols.append(col)
    ev = ModuleMap(M, T, [[c[t] for c in cols] for t in range(T.rank)])
    if not ev.is_iso():
        raise ModuleError("M and its bidual M~ differ")
    return ev


def tilde_map(f: ModuleMap) -> ModuleMap:
    R = f.source.ring
    blocks = []
    for m in R.spectrum:
        E = injective_envelope(R, m)
        blocks.append(hom_pre(hom_pre(f, E), E))
    S, T = tilde_bidual(f.source), tilde_bidual(f.target)
    mat = [[0] * S.rank for _ in range(T.rank)]
    ro = co = 0
    for b in blocks:
        for t in range(b.target.rank):
            for j in range(b.source.rank):
                mat[ro + t][co + j] = b.matrix[t][j]
        ro += b.target.rank
        co += b.source.rank
    return ModuleMap(S, T, mat, check=False)


# -- serialization -------------------------------------------------------------------


def module_from_json(R: Ring, data) -> FinModule:
    act = data["action"]
    if isinstance(act, dict):
        act = [act[str(i)] for i in range(R.rank)]
    return FinModule(R, data["orders"], act)


def map_from_json(R: Ring, data) -> ModuleMap:
    S = module_from_json(R, data["source"])
    T = module_from_json(R, data["target"])
    return ModuleMap(S, T, data["matrix"])
