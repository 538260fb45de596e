"""Finite commutative rings, their local decomposition and prime spectrum.

A ring is stored as an additive group ``⊕ Z/d_i`` (``orders``) together
with structure constants ``mul[i][j]`` giving the product of the additive
generators ``g_i * g_j`` in coordinates.  Finite rings are artinian, so the
spectrum is the set of maximal ideals, one per local factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, prod

from .linalg import Quotient, Subgroup, elements, lcm

MAX_RING_ORDER = 65536


class RingError(ValueError):
    """Invalid ring specification or structure constants."""


class Ring:
    """A finite commutative unital ring given by structure constants."""

    def __init__(self, orders, mul, one, name: str = "", basis_names=None, spec=None, formatter=None):
        self.orders = tuple(int(d) for d in orders)
        self.mul = tuple(tuple(tuple(int(c) % d for c, d in zip(v, self.orders)) for v in row)
                         for row in mul)
        self.one = tuple(int(c) % d for c, d in zip(one, self.orders))
        self.name = name or "R"
        self.basis_names = list(basis_names) if basis_names else [f"g{i}" for i in range(len(self.orders))]
        self.spec = spec
        self.formatter = formatter
        self.n = lcm(*self.orders) if self.orders else 1
        self._key = (self.orders, self.mul, self.one)
        self._hash = hash(self._key)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Ring({self.name}, orders={list(self.orders)})"

    # -- element arithmetic -------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def zero(self):
        return (0,) * self.rank

    def gen(self, i):
        return tuple(int(i == j) for j in range(self.rank))

    def reduce(self, x):
        return tuple(int(a) % d for a, d in zip(x, self.orders))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def sub(self, x, y):
        return tuple((a - b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def scale(self, c, x):
        return tuple((c * a) % d for a, d in zip(x, self.orders))

    def mult(self, x, y):
        out = [0] * self.rank
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.mul[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return tuple(v % d for v, d in zip(out, self.orders))

    def power(self, x, e: int):
        out = self.one
        base = x
        while e:
            if e & 1:
                out = self.mult(out, base)
            base = self.mult(base, base)
            e >>= 1
        return out

    def is_zero(self, x) -> bool:
        return not any(x)

    def elements(self):
        """All elements, in coordinate lexicographic order."""
        return [tuple(v) for v in elements(self.orders)]

    def fmt(self, x) -> str:
        if self.formatter is not None:
            return self.formatter(x)
        terms = []
        for c, name in zip(x, self.basis_names):
            if not c:
                continue
            if name == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(name)
            else:
                terms.append(f"{c}{name}" if name[0] != "(" else f"{c}*{name}")
        return " + ".join(terms) if terms else "0"

    def mult_matrix(self, x):
        """Matrix of multiplication by x on R (columns = images of g_j)."""
        cols = [self.mult(x, self.gen(j)) for j in range(self.rank)]
        return [[c[i] for c in cols] for i in range(self.rank)]

    @cached_property
    def regular_action(self):
        """Action matrices of the additive generators on R itself."""
        out = []
        for i in range(self.rank):
            cols = self.mul[i]
            out.append(tuple(tuple(cols[j][k] for j in range(self.rank)) for k in range(self.rank)))
        return tuple(out)

    # -- validation ---------------------------------------------------------

    def validate(self):
        k = self.rank
        if self.order > MAX_RING_ORDER:
            raise RingError(f"|R| = {self.order} exceeds the cap {MAX_RING_ORDER}")
        if any(d < 2 for d in self.orders):
            raise RingError("additive orders must be >= 2")
        if len(self.mul) != k or any(len(row) != k for row in self.mul):
            raise RingError("structure constants must be a rank x rank table")
        for i in range(k):
            for j in range(k):
                v = self.mul[i][j]
                if v != self.mul[j][i]:
                    raise RingError(f"not commutative on generators {i},{j}")
                if any((self.orders[i] * c) % d for c, d in zip(v, self.orders)):
                    raise RingError(f"product g{i}*g{j} incompatible with additive order of g{i}")
        for i, j, l in itertools.product(range(k), repeat=3):
            gi, gj, gl = self.gen(i), self.gen(j), self.gen(l)
            if self.mult(self.mult(gi, gj), gl) != self.mult(gi, self.mult(gj, gl)):
                raise RingError(f"not associative on generators {i},{j},{l}")
        for i in range(k):
            if self.mult(self.one, self.gen(i)) != self.gen(i):
                raise RingError("'one' is not a multiplicative identity")
        return self

    # -- ideals and geometry -------------------------------------------------

    def ideal(self, gens) -> "Ideal":
        return Ideal(self, gens)

    @cached_property
    def nilpotents(self):
        bound = max(1, self.order.bit_length())
        return [x for x in self.elements() if self.is_zero(self.power(x, bound))]

    @cached_property
    def jacobson_radical(self) -> "Ideal":
        """J(R), computed as the ideal of nilpotent elements."""
        basis = []
        sub = Subgroup(self.orders, [], self.n)
        for x in self.nilpotents:
            if not sub.contains(list(x)):
                basis.append(x)
                sub = Subgroup(self.orders, [list(b) for b in basis], self.n)
        return Ideal(self, basis)

    @cached_property
    def local_factors(self) -> list["LocalFactor"]:
        return _decompose(self)

    @cached_property
    def spectrum(self) -> list["PrimeIdeal"]:
        return [f.prime for f in self.local_factors]

    @property
    def is_local(self) -> bool:
        return len(self.local_factors) == 1

    def prime(self, key) -> "PrimeIdeal":
        """Look up a prime by index, label (e.g. "(2)") or PrimeIdeal."""
        if isinstance(key, PrimeIdeal):
            if key.ring != self:
                raise RingError("prime not in Spec R")
            return key
        if isinstance(key, int):
            if not 0 <= key < len(self.spectrum):
                raise RingError(f"prime index {key} not in Spec R")
            return self.spectrum[key]
        for p in self.spectrum:
            if key in (p.label, str(p.local_index), f"p{p.local_index}"):
                return p
        raise RingError(f"prime {key!r} not in Spec R")


class Ideal:
    """An ideal, held as the additive subgroup generated by ``R * gens``."""

    def __init__(self, ring: Ring, gens):
        self.ring = ring
        self.gens = [ring.reduce(g) for g in gens]
        span = [list(ring.mult(ring.gen(i), g)) for g in self.gens for i in range(ring.rank)]
        self._sub = Subgroup(ring.orders, span, ring.n)
        self.basis = [ring.reduce(v) for v in self._sub.basis]

    @property
    def size(self) -> int:
        return self._sub.size

    def contains(self, x) -> bool:
        return self._sub.contains(list(x))

    def __contains__(self, x):
        return self.contains(x)

    def elements(self):
        out = set()
        for c in elements(self._sub.orders):
            v = [0] * self.ring.rank
            for coef, b in zip(c, self.basis):
                for t, bt in enumerate(b):
                    v[t] += coef * bt
            out.add(self.ring.reduce(v))
        return sorted(out)

    def __le__(self, other: "Ideal") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and self <= other and other <= self

    def __hash__(self):
        return hash((self.ring, self.size))

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.basis + other.basis)

    def __and__(self, other: "Ideal") -> "Ideal":
        R = self.ring
        k = R.rank
        a, b = self.basis, other.basis
        mat = [[x[i] for x in a] + [y[i] for y in b] + [R.orders[i] if j == i else 0 for j in range(k)]
               for i in range(k)]
        from .linalg import kernel_gens
        gens = []
        for v in kernel_gens(mat, k, len(a) + len(b) + k, R.n):
            y = v[:len(a)]
            gens.append(R.reduce([sum(c * x[t] for c, x in zip(y, a)) for t in range(k)]))
        return Ideal(R, gens)

    def mul(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [self.ring.mult(x, y) for x in self.basis for y in other.basis])

    @property
    def is_proper(self) -> bool:
        return self.size < self.ring.order

    def __repr__(self):
        return f"Ideal({self.label})"

    @property
    def label(self) -> str:
        return _principal_label(self)


@dataclass(eq=False)
class PrimeIdeal:
    """A prime (= maximal) ideal: the preimage of a local factor's maximal ideal."""

    ring: Ring
    local_index: int
    generators: list = field(default_factory=list)

    def __eq__(self, other):
        return (isinstance(other, PrimeIdeal) and self.local_index == other.local_index
                and self.ring == other.ring)

    def __hash__(self):
        return hash((self.ring, self.local_index))

    @cached_property
    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)

    def contains(self, x) -> bool:
        return self.ideal.contains(x)

    def __le__(self, other: "PrimeIdeal") -> bool:
        return self.ideal <= other.ideal

    def __lt__(self, other: "PrimeIdeal") -> bool:
        return self.local_index < other.local_index

    @cached_property
    def label(self) -> str:
        return _principal_label(self.ideal)

    @property
    def factor(self) -> "LocalFactor":
        return self.ring.local_factors[self.local_index]

    @property
    def idempotent(self):
        return self.factor.idempotent

    @cached_property
    def residue_size(self) -> int:
        return self.ring.order // self.ideal.size

    def to_json(self):
        return {"local_index": self.local_index, "generators": [list(g) for g in self.generators]}

    def __repr__(self):
        return self.label


@dataclass(eq=False)
class LocalFactor:
    """A local factor ``eR`` with its embedding into and projection from R."""

    index: int
    idempotent: tuple
    ring: Ring
    embed: list      # R-coordinates of the factor basis, as columns
    project: list    # matrix R-coords -> factor coords of e*x
    prime: PrimeIdeal = None

    def to_parent(self, x):
        R_rank = len(self.embed)
        return tuple(sum(self.embed[t][j] * x[j] for j in range(len(x))) for t in range(R_rank))

    def from_parent(self, x):
        return tuple(sum(row[j] * x[j] for j in range(len(x))) % d
                     for row, d in zip(self.project, self.ring.orders))


def _principal_label(I: Ideal) -> str:
    R = I.ring
    if I.size == 1:
        return "(0)"
    if I.size == R.order:
        return "(1)"
    if R.order <= 4096:
        for x in I.elements():
            if R.is_zero(x):
                continue
            if Ideal(R, [x]).size == I.size:
                return f"({R.fmt(x)})"
    return "(" + ", ".join(R.fmt(b) for b in I.basis) + ")"


def _idempotent_lift(R: Ring, e):
    while True:
        e2 = R.mult(e, e)
        nxt = R.sub(R.scale(3, e2), R.scale(2, R.mult(e2, e)))
        if nxt == e:
            return e
        e = nxt


def _decompose(R: Ring) -> list[LocalFactor]:
    J = R.jacobson_radical
    quo = Quotient(R.orders, [list(b) for b in J.basis], R.n)

    def lift(c):
        return R.reduce([sum(quo.section[t][i] * c[i] for i in range(len(c))) for t in range(R.rank)])

    idem = []
    for c in elements(quo.orders):
        x = lift(c)
        if J.contains(R.sub(R.mult(x, x), x)) and not J.contains(x):
            idem.append(x)
    primitive = []
    for e in idem:
        smaller = [f for f in idem if not J.contains(R.sub(f, e)) and J.contains(R.sub(R.mult(f, e), f))]
        if not smaller:
            primitive.append(_idempotent_lift(R, e))
    if not primitive:
        raise RingError("zero ring has no local factors")

    total = R.zero
    for i, e in enumerate(primitive):
        total = R.add(total, e)
        for f in primitive[i + 1:]:
            if not R.is_zero(R.mult(e, f)):
                raise RingError("lifted idempotents are not orthogonal")
    if total != R.one:
        raise RingError("lifted idempotents do not sum to 1")

    raw = []
    for e in primitive:
        sub = Subgroup(R.orders, [list(R.mult(e, R.gen(j))) for j in range(R.rank)], R.n)
        one_minus = R.sub(R.one, e)
        pgens = [list(b) for b in J.basis] + [list(R.mult(one_minus, R.gen(j))) for j in range(R.rank)]
        psub = Subgroup(R.orders, pgens, R.n)
        residue = R.order // psub.size
        raw.append((residue, e, sub, psub))
    # ordered by residue field size, then idempotent coordinates
    raw.sort(key=lambda t: (t[0], t[1]))

    factors = []
    for idx, (residue, e, sub, psub) in enumerate(raw):
        basis = sub.basis
        k = len(basis)
        mul = [[sub.coords(list(R.mult(tuple(a), tuple(b)))) for b in basis] for a in basis]
        one = sub.coords(list(e))
        names = [f"e{idx}*({R.fmt(tuple(b))})" for b in basis]
        if k == 1:
            names = ["1"]
        fr = Ring(sub.orders, mul, one, name=f"{R.name}[{idx}]", basis_names=names)
        project_cols = [sub.coords(list(R.mult(e, R.gen(j)))) for j in range(R.rank)]
        project = [[col[i] for col in project_cols] for i in range(k)]
        prime = PrimeIdeal(R, idx, [R.reduce(b) for b in psub.basis])
        factors.append(LocalFactor(idx, e, fr, sub.incl, project, prime))
    return factors


# -- construction -----------------------------------------------------------


def _poly_mod(a, m, p):
    """Remainder of polynomial a modulo monic m (coefficient lists, low->high)."""
    a = [c % p for c in a]
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _is_irreducible(m, p) -> bool:
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for coeffs in itertools.product(range(p), repeat=d):
            f = list(coeffs) + [1]
            if not _poly_mod(m, f, p):
                return False
    return True


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n ** 0.5) + 1))


def _zmod(n: int) -> Ring:
    if n < 2:
        raise RingError("Z/n needs n >= 2")
    return Ring([n], [[[1]]], [1], name=f"Z/{n}", basis_names=["1"], spec={"kind": "zmod", "n": n})


def _gf(p: int, deg: int, min_poly) -> Ring:
    if not _is_prime(p):
        raise RingError(f"characteristic {p} is not prime")
    if min_poly is None:
        if deg != 1:
            raise RingError("min_poly required for deg > 1")
        min_poly = [1, 0]
    if len(min_poly) != deg + 1 or min_poly[0] % p != 1:
        raise RingError("min_poly must be monic of degree deg (coefficients leading first)")
    m = [c % p for c in reversed(min_poly)]
    if not _is_irreducible(m, p):
        raise RingError(f"polynomial {min_poly} is not irreducible over F_{p}")
    mul = []
    for i in range(deg):
        row = []
        for j in range(deg):
            prodp = [0] * (i + j) + [1]
            r = _poly_mod(prodp, m, p)
            row.append([r[t] if t < len(r) else 0 for t in range(deg)])
        mul.append(row)
    names = ["1"] + ["x" if i == 1 else f"x^{i}" for i in range(1, deg)]
    return Ring([p] * deg, mul, [1] + [0] * (deg - 1), name=f"GF({p}^{deg})" if deg > 1 else f"F_{p}",
                basis_names=names, spec={"kind": "gf", "p": p, "deg": deg, "min_poly": list(min_poly)})


def _parse_monomial(rel, names):
    if isinstance(rel, dict):
        items = list(rel.items())
    else:
        if len(rel) % 2:
            raise RingError(f"relation {rel} must alternate variable names and exponents")
        items = [(rel[i], rel[i + 1]) for i in range(0, len(rel), 2)]
    exp = [0] * len(names)
    for v, e in items:
        if v not in names:
            raise RingError(f"unknown variable {v!r} in relation")
        exp[names.index(v)] += int(e)
    return tuple(exp)


def _quot(char: int, names, relations) -> Ring:
    if char < 2:
        raise RingError("char must be >= 2")
    rels = [_parse_monomial(r, names) for r in relations]
    bounds = []
    for i in range(len(names)):
        pure = [r[i] for r in rels if r[i] > 0 and sum(r) == r[i]]
        if not pure:
            raise RingError(f"quotient not finite-dimensional: no pure power relation for {names[i]}")
        bounds.append(min(pure))

    def in_ideal(mono):
        return any(all(a >= b for a, b in zip(mono, r)) for r in rels)

    monos = [m for m in itertools.product(*[range(b) for b in bounds]) if not in_ideal(m)]
    monos.sort(key=lambda m: (sum(m), tuple(-x for x in m)))
    index = {m: i for i, m in enumerate(monos)}
    k = len(monos)
    mul = []
    for a in monos:
        row = []
        for b in monos:
            c = tuple(x + y for x, y in zip(a, b))
            v = [0] * k
            if c in index:
                v[index[c]] = 1
            row.append(v)
        mul.append(row)

    def mono_name(m):
        parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(names, m) if e]
        return "*".join(parts) if parts else "1"

    one = [1 if sum(m) == 0 else 0 for m in monos]
    rel_txt = ", ".join(mono_name(r) for r in rels)
    base = f"Z/{char}" if not _is_prime(char) else f"F_{char}"
    return Ring([char] * k, mul, one, name=f"{base}[{','.join(names)}]/({rel_txt})",
                basis_names=[mono_name(m) for m in monos],
                spec={"kind": "quot", "char": char, "vars": list(names),
                      "relations": [list(r) if not isinstance(r, dict) else r for r in relations]})


def _product(rings) -> Ring:
    if not rings:
        raise RingError("product needs at least one factor")
    orders, one = [], []
    offs = []
    for R in rings:
        offs.append(len(orders))
        orders += list(R.orders)
        one += list(R.one)
    k = len(orders)
    mul = [[[0] * k for _ in range(k)] for _ in range(k)]
    for R, off in zip(rings, offs):
        for i in range(R.rank):
            for j in range(R.rank):
                for t, c in enumerate(R.mul[i][j]):
                    mul[off + i][off + j][off + t] = c
    names = []
    for idx, R in enumerate(rings):
        names += [f"[{nm}]{idx}" for nm in R.basis_names]

    def formatter(x):
        parts = [R.fmt(tuple(x[off:off + R.rank])) for R, off in zip(rings, offs)]
        return "[" + ", ".join(parts) + "]"

    return Ring(orders, mul, one, name=" x ".join(R.name for R in rings), basis_names=names,
                spec={"kind": "product", "factors": [R.spec for R in rings]}, formatter=formatter)


def _sorted_coordinates(R: Ring) -> Ring:
    """Reorder coordinates so additive orders ascend (stable)."""
    perm = sorted(range(R.rank), key=lambda i: R.orders[i])
    if perm == list(range(R.rank)):
        return R
    orders = [R.orders[i] for i in perm]
    mul = [[[R.mul[i][j][t] for t in perm] for j in perm] for i in perm]
    one = [R.one[i] for i in perm]
    names = [R.basis_names[i] for i in perm]
    def unpermute(x, inner=R.formatter):
        back = [0] * len(x)
        for new, old in enumerate(perm):
            back[old] = x[new]
        return inner(tuple(back))

    formatter = unpermute if R.formatter is not None else None
    return Ring(orders, mul, one, name=R.name, basis_names=names, spec=R.spec, formatter=formatter)


CATALOG_SPECS = {
    "z4": {"kind": "zmod", "n": 4},
    "z8": {"kind": "zmod", "n": 8},
    "z9": {"kind": "zmod", "n": 9},
    "z6": {"kind": "zmod", "n": 6},
    "z12": {"kind": "zmod", "n": 12},
    "f2x2": {"kind": "quot", "char": 2, "vars": ["x"], "relations": [["x", 2]]},
    "f2x3": {"kind": "quot", "char": 2, "vars": ["x"], "relations": [["x", 3]]},
    "f3x2": {"kind": "quot", "char": 3, "vars": ["x"], "relations": [["x", 2]]},
    "gf4": {"kind": "gf", "p": 2, "deg": 2, "min_poly": [1, 1, 1]},
    "z2xz4": {"kind": "product", "factors": [{"kind": "zmod", "n": 2}, {"kind": "zmod", "n": 4}]},
}
CATALOG = list(CATALOG_SPECS)

_BUILT: dict = {}


def _build(spec) -> Ring:
    if isinstance(spec, str):
        if spec not in CATALOG_SPECS:
            raise RingError(f"unknown catalog ring {spec!r}")
        return _build(CATALOG_SPECS[spec])
    if not isinstance(spec, dict) or "kind" not in spec:
        raise RingError(f"ring spec must be an object with a 'kind': {spec!r}")
    kind = spec["kind"]
    if kind == "zmod":
        return _zmod(int(spec["n"]))
    if kind == "gf":
        return _gf(int(spec["p"]), int(spec.get("deg", 1)), spec.get("min_poly"))
    if kind == "quot":
        return _quot(int(spec["char"]), list(spec["vars"]), spec["relations"])
    if kind == "product":
        return _product([_build(f) for f in spec["factors"]])
    if kind == "catalog":
        return _build(spec["name"])
    if kind == "table":
        return Ring(spec["orders"], spec["mul"], spec["one"], name=spec.get("name", "R"), spec=spec)
    raise RingError(f"unknown ring kind {kind!r}")


def build_ring(spec) -> Ring:
    """Build and validate a ring from a JSON-style spec or a catalog name."""
    key = spec if isinstance(spec, str) else repr(spec)
    if key in _BUILT:
        return _BUILT[key]
    R = _sorted_coordinates(_build(spec)).validate()
    if isinstance(spec, str):
        R.name = spec if R.name == "R" else R.name
        R.catalog_name = spec
    _BUILT[key] = R
    return R


def catalog_ring(name: str) -> Ring:
    R = build_ring(name)
    return R


def catalog_name(R: Ring) -> str:
    for name in CATALOG:
        if build_ring(name) == R:
            return name
    return R.name


def ring_to_json(R: Ring) -> dict:
    """Canonical serialization: ascending orders, row-major structure constants."""
    return {"kind": "table", "name": R.name, "orders": list(R.orders),
            "mul": [[list(v) for v in row] for row in R.mul],
            "one": list(R.one)}


# -- locus operations ---------------------------------------------------------


def V(R: Ring, a: Ideal) -> frozenset:
    """Primes containing the ideal a."""
    return frozenset(p for p in R.spectrum if a <= p.ideal)


def U(R: Ring, p: PrimeIdeal) -> frozenset:
    """Primes contained in p."""
    p = R.prime(p)
    return frozenset(q for q in R.spectrum if q <= p)


def closure(R: Ring, primes) -> frozenset:
    """Specialization closure: primes containing some member."""
    primes = [R.prime(q) for q in primes]
    return frozenset(p for p in R.spectrum if any(q <= p for q in primes))


def minimal(primes) -> frozenset:
    primes = list(primes)
    return frozenset(p for p in primes if not any(q <= p and q != p for q in primes))


def maximal(primes) -> frozenset:
    primes = list(primes)
    return frozenset(p for p in primes if not any(p <= q and q != p for q in primes))


def zariski_closure(R: Ring, primes) -> frozenset:
    """V of the intersection of the given primes (empty set -> empty)."""
    primes = [R.prime(q) for q in primes]
    if not primes:
        return frozenset()
    inter = primes[0].ideal
    for q in primes[1:]:
        inter = inter & q.ideal
    return V(R, inter)


def locus_ops(R: Ring, op: str, arg):
    if op == "V":
        return V(R, arg)
    if op == "U":
        return U(R, arg)
    if op == "cl":
        return closure(R, arg)
    if op == "min":
        return minimal(arg)
    if op == "max":
        return maximal(arg)
    if op == "zariski":
        return zariski_closure(R, arg)
    raise ValueError(f"unknown locus op {op!r}")


def spectrum(R: Ring):
    return R.spectrum, R.jacobson_radical


def local_decomposition(R: Ring):
    return R.local_factors


def is_field(R: Ring) -> bool:
    """Exhaustive check that every nonzero element is a unit."""
    els = R.elements()
    units = set()
    for x in els:
        if R.is_zero(x) or x in units:
            continue
        if not any(R.mult(x, y) == R.one for y in els):
            return False
        units.add(x)
    return True


def unit_group_order(R: Ring, x) -> int:
    """Multiplicative order of a unit x (0 if x is not a unit)."""
    y = x
    for k in range(1, R.order + 1):
        if y == R.one:
            return k
        y = R.mult(y, x)
    return 0


def is_power_of_prime(q: int) -> bool:
    for p in range(2, q + 1):
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
    return False


__all__ = [
    "Ring", "Ideal", "PrimeIdeal", "LocalFactor", "RingError", "build_ring", "catalog_ring",
    "CATALOG", "CATALOG_SPECS", "V", "U", "closure", "minimal", "maximal", "zariski_closure",
    "locus_ops", "spectrum", "local_decomposition", "ring_to_json", "is_field", "gcd",
]
