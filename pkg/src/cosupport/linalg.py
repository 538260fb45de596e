"""Linear algebra over Z/n built on the Smith normal form kernel.

Every finite abelian group handled by the package is a quotient of some
(Z/n)^k by the span of ``orders[j] * e_j``; this module supplies kernels,
solvers, subgroup and quotient presentations for such groups.  Matrices
are lists of rows; vectors are lists of ints; a matrix "column" is the image
of a basis vector.
"""

from __future__ import annotations

from math import gcd, prod

from ._kernel import snf_mod


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def identity(k: int) -> list[list[int]]:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def transpose(A, ncols: int | None = None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A, B, n: int | None = None, inner: int | None = None):
    """Product of A (r x m) and B (m x c); reduced mod n when given."""
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    cols = list(zip(*B))
    if n is None:
        return [[sum(a * b for a, b in zip(row, c)) for c in cols] for row in A]
    return [[sum(a * b for a, b in zip(row, c)) % n for c in cols] for row in A]


def matvec(A, x, n: int | None = None):
    if n is None:
        return [sum(a * b for a, b in zip(row, x)) for row in A]
    return [sum(a * b for a, b in zip(row, x)) % n for row in A]


def reduce_vec(x, orders):
    return [v % e for v, e in zip(x, orders)]


def reduce_cols(A, orders):
    """Reduce the rows of A modulo ``orders`` (row i mod orders[i])."""
    return [[v % e for v in row] for row, e in zip(A, orders)]


def columns(A, ncols: int):
    if not A:
        return [[] for _ in range(ncols)]
    return [list(c) for c in zip(*A)]


def from_columns(cols, nrows: int):
    if not cols:
        return [[] for _ in range(nrows)]
    return [list(r) for r in zip(*cols)]


class Factorization:
    """Smith factorization ``U A V = diag(d)`` of a matrix over Z/n."""

    __slots__ = ("n", "nrows", "ncols", "U", "Uinv", "V", "d")

    def __init__(self, A, nrows: int, ncols: int, n: int):
        self.n = n
        self.nrows = nrows
        self.ncols = ncols
        if nrows == 0 or ncols == 0:
            self.U = identity(nrows)
            self.Uinv = identity(nrows)
            self.V = identity(ncols)
            self.d = []
        else:
            self.U, self.Uinv, self.V, self.d = snf_mod(A, nrows, ncols, n)

    def rank_orders(self):
        """Orders of the cokernel coordinates (Z/n)^nrows / image."""
        n = self.n
        return [self.d[i] if i < len(self.d) else n for i in range(self.nrows)]

    def solve(self, b):
        """Some x with A x == b (mod n), or None."""
        n = self.n
        w = matvec(self.U, b, n)
        y = [0] * self.ncols
        for i, wi in enumerate(w):
            if i < len(self.d):
                di = self.d[i]
                if di == n:
                    if wi:
                        return None
                    continue
                if wi % di:
                    return None
                y[i] = (wi // di) % n
            elif wi:
                return None
        return matvec(self.V, y, n)

    def kernel(self):
        """Generators of {x : A x == 0 (mod n)}."""
        n = self.n
        gens = []
        for j in range(self.ncols):
            if j < len(self.d):
                step = n // self.d[j]
                if step == n:
                    continue
            else:
                step = 1
            gens.append([(row[j] * step) % n for row in self.V])
        return gens


def kernel_gens(A, nrows: int, ncols: int, n: int):
    return Factorization(A, nrows, ncols, n).kernel()


def _relation_matrix(gens, orders):
    """Matrix ``[G | diag(orders)]`` whose column span is <gens> + relations."""
    k = len(orders)
    return [[g[i] for g in gens] + [orders[i] if j == i else 0 for j in range(k)]
            for i in range(k)]


class Subgroup:
    """A subgroup of ``(Z/n)^k / <orders>`` presented in invariant-factor form.

    Attributes: ``orders`` (new invariant factors), ``incl`` (ambient
    coordinates of the new basis, as columns), and ``coords`` which maps an
    ambient element of the subgroup to its new coordinates.
    """

    def __init__(self, ambient_orders, gens, n: int):
        self.n = n
        self.ambient_orders = list(ambient_orders)
        k = len(ambient_orders)
        gens = [reduce_vec(g, ambient_orders) for g in gens]
        gens = [g for g in gens if any(g)]
        m = len(gens)
        self._gens = gens
        self._big = Factorization(_relation_matrix(gens, ambient_orders), k, m + k, n)
        rel = [v[:m] for v in self._big.kernel()]
        rel_mat = from_columns(rel, m) if rel else zeros(m, 0)
        self._rel = Factorization(rel_mat, m, len(rel), n)
        ords = self._rel.rank_orders()
        self._keep = [i for i, o in enumerate(ords) if o > 1]
        self.orders = [ords[i] for i in self._keep]
        Ui = self._rel.Uinv
        cols = []
        for i in self._keep:
            y = [Ui[r][i] for r in range(m)]
            v = [sum(g[t] * y[j] for j, g in enumerate(gens)) % e
                 for t, e in enumerate(ambient_orders)]
            cols.append(v)
        self.basis = cols
        self.incl = from_columns(cols, k)

    @property
    def size(self) -> int:
        return prod(self.orders)

    def coords(self, v):
        """New coordinates of ambient element v, or None if v is not inside."""
        m = len(self._gens)
        x = self._big.solve(list(v))
        if x is None:
            return None
        y = x[:m]
        U = self._rel.U
        return [sum(U[i][j] * y[j] for j in range(m)) % o
                for i, o in zip(self._keep, self.orders)]

    def contains(self, v) -> bool:
        return self._big.solve(list(v)) is not None


class Quotient:
    """The quotient ``(Z/n)^k / (<orders> + <gens>)`` in invariant-factor form.

    ``proj`` maps ambient coordinates to quotient coordinates; ``section``
    lists ambient lifts of the quotient basis (as columns).
    """

    def __init__(self, ambient_orders, gens, n: int):
        self.n = n
        k = len(ambient_orders)
        gens = [g for g in (reduce_vec(g, ambient_orders) for g in gens) if any(g)]
        mat = [[ambient_orders[i] if j == i else 0 for j in range(k)] + [g[i] for g in gens]
               for i in range(k)]
        f = Factorization(mat, k, k + len(gens), n)
        ords = f.rank_orders()
        self._keep = [i for i, o in enumerate(ords) if o > 1]
        self.orders = [ords[i] for i in self._keep]
        self.proj = [[f.U[i][j] % ords[i] for j in range(k)] for i in self._keep]
        self.section = [[f.Uinv[r][i] % ambient_orders[r] for i in self._keep] for r in range(k)]

    @property
    def size(self) -> int:
        return prod(self.orders)

    def project(self, v):
        return [sum(a * b for a, b in zip(row, v)) % o for row, o in zip(self.proj, self.orders)]


def group_order(orders) -> int:
    return prod(orders)


def invariant_factors(orders, n: int | None = None):
    """Invariant factors (divisibility order, 1s dropped) of ``⊕ Z/orders``."""
    if not orders:
        return []
    n = n or lcm(*orders)
    return Quotient(list(orders), [], n).orders


def elements(orders):
    """All coordinate vectors of ``⊕ Z/orders`` in lexicographic order."""
    out = [[]]
    for e in orders:
        out = [v + [a] for v in out for a in range(e)]
    return out


def group_kernel(F, src_orders, tgt_orders, n: int):
    """Generators of the kernel of the group map given by F.

    F is a ``len(tgt) x len(src)`` matrix sending ``⊕ Z/src`` to ``⊕ Z/tgt``;
    the returned vectors are reduced modulo ``src_orders``.
    """
    m, r = len(src_orders), len(tgt_orders)
    if m == 0:
        return []
    if r == 0:
        return [[int(i == j) for i in range(m)] for j in range(m)]
    mat = [list(F[t]) + [tgt_orders[t] if s == t else 0 for s in range(r)] for t in range(r)]
    out = []
    for v in Factorization(mat, r, m + r, n).kernel():
        x = reduce_vec(v[:m], src_orders)
        if any(x):
            out.append(x)
    return out


def image_size(F, tgt_orders, n: int) -> int:
    """Order of the subgroup of ``⊕ Z/tgt`` spanned by the columns of F."""
    r = len(tgt_orders)
    if r == 0:
        return 1
    cols = columns(F, len(F[0]) if F else 0) if F else []
    return prod(tgt_orders) // Quotient(tgt_orders, cols, n).size
