"""Exact integer linear algebra.

Matrices hold Python integers, so nothing ever overflows.  The central tool is
the Smith normal form, from which cokernels (finitely generated abelian
groups), kernels and integer solutions of linear systems are read off.

A linear map ``Z^c -> Z^r`` is stored as an ``r x c`` matrix acting on column
vectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

INFINITE = math.inf

Vector = tuple  # tuple of ints


def dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


def primitive(v: Sequence[int]) -> tuple:
    """Divide ``v`` by the gcd of its entries; the zero vector is returned as is."""
    g = reduce(math.gcd, v, 0)
    if g <= 1:
        return tuple(v)
    return tuple(a // g for a in v)


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix in row-major order."""

    rows: int
    cols: int
    entries: tuple = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [tuple(int(a) for a in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix without rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(a for r in rows for a in r))

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: int) -> IntMatrix:
        columns = [tuple(c) for c in columns]
        return cls.from_rows(
            [[c[i] for c in columns] for i in range(rows)], cols=len(columns)
        )

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows(_identity(n), cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def row_tuples(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def column_tuples(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix.from_rows(self.column_tuples(), cols=self.rows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.column_tuples()
            return IntMatrix.from_rows(
                [[dot(self.row(i), c) for c in ocols] for i in range(self.rows)],
                cols=other.cols,
            )
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for matrix with {self.cols} columns")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows)
                   for j in range(self.cols) if i != j)

    def diagonal(self) -> tuple:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det(self.tolist())

    def rank(self) -> int:
        return rank(self.tolist(), self.cols)

    def __str__(self):
        return "\n".join(" ".join(f"{a:>4}" for a in self.row(i)) for i in range(self.rows))


def _bareiss_det(a):
    n = len(a)
    if n == 0:
        return 1
    a = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(rows: Sequence[Sequence[int]], ncols: int | None = None, p: int | None = None) -> int:
    """Rank over the rationals, or over ``GF(p)`` when ``p`` is given."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    ncols = len(a[0]) if ncols is None else ncols
    if p is not None:
        a = [[x % p for x in r] for r in a]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c] == 0:
                continue
            if p is None:
                f, g = a[r][c], a[i][c]
                a[i] = [f * x - g * y for x, y in zip(a[i], a[r])]
                h = reduce(math.gcd, a[i], 0)
                if h > 1:
                    a[i] = [x // h for x in a[i]]
            else:
                f = a[i][c] * pow(a[r][c], -1, p)
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def _snf(m: IntMatrix):
    """Smith normal form with transforms and their inverses.

    Returns lists ``(U, D, V, Uinv, Vinv)`` with ``D = U m V``.
    """
    r, c = m.rows, m.cols
    a = m.tolist()
    U, Uinv = _identity(r), _identity(r)
    V, Vinv = _identity(c), _identity(c)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]
        for row in Uinv:
            row[src] -= q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in a:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vinv[src] = [x - q * y for x, y in zip(Vinv[src], Vinv[dst])]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            swap_rows(t, best[0])
        if best[1] != t:
            swap_cols(t, best[1])
        p = a[t][t]
        clean = True
        for i in range(t + 1, r):
            if a[i][t]:
                add_row(i, t, -(a[i][t] // p))
                clean = clean and a[i][t] == 0
        for j in range(t + 1, c):
            if a[t][j]:
                add_col(j, t, -(a[t][j] // p))
                clean = clean and a[t][j] == 0
        if not clean:
            continue
        bad = next((i for i in range(t + 1, r)
                    if any(a[i][j] % p for j in range(t + 1, c))), None)
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if p < 0:
            negate_row(t)
        t += 1
    return U, a, V, Uinv, Vinv


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(u, d, v)`` with ``d = u @ m @ v``, ``u, v`` unimodular and
    ``d`` diagonal, nonnegative, with each diagonal entry dividing the next."""
    U, D, V, _, _ = _snf(m)
    return (IntMatrix.from_rows(U, cols=m.rows), IntMatrix.from_rows(D, cols=m.cols),
            IntMatrix.from_rows(V, cols=m.cols))


def invariant_factors(m: IntMatrix) -> tuple:
    """Nonzero diagonal entries of the Smith normal form."""
    _, D, _, _, _ = _snf(m)
    return tuple(D[i][i] for i in range(min(m.rows, m.cols)) if D[i][i] != 0)


def hermite_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``h = u @ m``, ``u`` unimodular, ``h`` in row
    echelon form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)`` and zero rows at the bottom.
    """
    r, c = m.rows, m.cols
    a = m.tolist()
    U = _identity(r)
    pr = 0
    for j in range(c):
        if pr == r:
            break
        # gcd-combine the column below pr into row pr
        for i in range(pr + 1, r):
            if a[i][j] == 0:
                continue
            x, y = a[pr][j], a[i][j]
            g, s, t = _xgcd(x, y)
            xg, yg = x // g, y // g
            a[pr], a[i] = ([s * p + t * q for p, q in zip(a[pr], a[i])],
                           [-yg * p + xg * q for p, q in zip(a[pr], a[i])])
            U[pr], U[i] = ([s * p + t * q for p, q in zip(U[pr], U[i])],
                           [-yg * p + xg * q for p, q in zip(U[pr], U[i])])
        if a[pr][j] == 0:
            continue
        if a[pr][j] < 0:
            a[pr] = [-x for x in a[pr]]
            U[pr] = [-x for x in U[pr]]
        piv = a[pr][j]
        for i in range(pr):
            q = a[i][j] // piv
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[pr])]
                U[i] = [x - q * y for x, y in zip(U[i], U[pr])]
        pr += 1
    return IntMatrix.from_rows(a, cols=c), IntMatrix.from_rows(U, cols=r)


def _xgcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) > 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def lattice_basis(vectors: Iterable[Sequence[int]], dim: int) -> tuple:
    """Canonical basis (nonzero HNF rows) of the lattice spanned by ``vectors``."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return ()
    h, _ = hermite_normal_form(IntMatrix.from_rows(vectors, cols=dim))
    return tuple(row for row in h.row_tuples() if any(row))


def reduce_modulo(x: Sequence[int], hnf_rows: Sequence[Sequence[int]]) -> tuple:
    """Canonical representative of ``x`` modulo the lattice with HNF ``hnf_rows``."""
    x = list(x)
    for row in hnf_rows:
        j = next(k for k, a in enumerate(row) if a)
        q = x[j] // row[j]
        if q:
            x = [a - q * b for a, b in zip(x, row)]
    return tuple(x)


def in_lattice(x: Sequence[int], hnf_rows: Sequence[Sequence[int]]) -> bool:
    """Decide membership of ``x`` in the lattice with HNF basis ``hnf_rows``."""
    return not any(reduce_modulo(x, hnf_rows))


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a Z-basis of ``{x : m x = 0}``, in canonical (HNF) form."""
    _, D, V, _, _ = _snf(m)
    k = sum(1 for i in range(min(m.rows, m.cols)) if D[i][i] != 0)
    cols = [tuple(V[i][j] for i in range(m.cols)) for j in range(k, m.cols)]
    basis = lattice_basis(cols, m.cols)
    return IntMatrix.from_columns(basis, rows=m.cols)


def image_basis(m: IntMatrix) -> tuple:
    """Canonical basis of the lattice spanned by the columns of ``m``."""
    return lattice_basis(m.column_tuples(), m.rows)


def solve_integer(m: IntMatrix, b: Sequence[int]):
    """Some integer ``x`` with ``m x = b``, or ``None`` if there is none."""
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    U, D, V, _, _ = _snf(m)
    y = [dot(U[i], b) for i in range(m.rows)]
    z = [0] * m.cols
    for i in range(m.rows):
        d = D[i][i] if i < m.cols else 0
        if d == 0:
            if y[i] != 0:
                return None
        else:
            if y[i] % d:
                return None
            z[i] = y[i] // d
    return tuple(dot(V[i], z) for i in range(m.cols))


def complete_basis(basis_columns: Sequence[Sequence[int]], n: int):
    """Split ``Z^n`` along a saturated sublattice.

    Returns ``(U, Uinv)`` (lists of rows) with ``U`` unimodular such that the
    first ``k`` columns of ``Uinv`` span the same lattice as the ``k`` given
    columns.  Coordinates ``U x`` then put the sublattice in front.
    """
    if not basis_columns:
        return _identity(n), _identity(n)
    m = IntMatrix.from_columns(basis_columns, rows=n)
    U, D, _, Uinv, _ = _snf(m)
    k = len(basis_columns)
    if any(D[i][i] != 1 for i in range(k)):
        raise ValueError("sublattice is not saturated or not of full rank")
    return U, Uinv


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FinAbGroup:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ...``.

    When the group arises as a cokernel, ``presentation_map`` projects the
    ambient lattice onto the coordinates (free coordinates first, then one per
    torsion factor) and ``section`` lifts coordinates back.  Equality only
    compares invariant factors.
    """

    free_rank: int
    torsion: tuple = ()
    presentation_map: IntMatrix | None = field(default=None, compare=False, repr=False)
    section: IntMatrix | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion coefficients must be at least 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")

    @classmethod
    def from_orders(cls, free_rank: int, orders: Iterable[int]) -> FinAbGroup:
        """Group ``Z^free_rank + sum Z/o`` put into invariant-factor form."""
        orders = [o for o in orders if o != 1]
        if any(o < 1 for o in orders):
            raise ValueError("cyclic orders must be positive")
        if not orders:
            return cls(free_rank)
        m = IntMatrix.from_rows([[o if i == j else 0 for j in range(len(orders))]
                                 for i, o in enumerate(orders)], cols=len(orders))
        return cls(free_rank, tuple(d for d in invariant_factors(m) if d > 1))

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    def order(self):
        return INFINITE if self.free_rank else math.prod(self.torsion)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def element(self, coords: Sequence[int]) -> GroupElement:
        coords = tuple(coords)
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        f = self.free_rank
        return GroupElement(self, coords[:f],
                            tuple(x % d for x, d in zip(coords[f:], self.torsion)))

    def zero(self) -> GroupElement:
        return self.element((0,) * self.ngens)

    def generators(self) -> list:
        return [self.element([int(i == j) for j in range(self.ngens)])
                for i in range(self.ngens)]

    def project(self, x: Sequence[int]) -> GroupElement:
        if self.presentation_map is None:
            raise ValueError("group has no presentation map")
        return self.element(self.presentation_map @ x)

    def lift(self, g: GroupElement) -> tuple:
        if self.section is None:
            raise ValueError("group has no section")
        return self.section @ g.coords

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class GroupElement:
    group: FinAbGroup
    free_part: tuple
    torsion_part: tuple = ()

    def __post_init__(self):
        if len(self.free_part) != self.group.free_rank or \
                len(self.torsion_part) != len(self.group.torsion):
            raise ValueError("coordinates do not match the group")
        if any(not 0 <= x < d for x, d in zip(self.torsion_part, self.group.torsion)):
            raise ValueError("torsion residue out of range")

    @property
    def coords(self) -> tuple:
        return tuple(self.free_part) + tuple(self.torsion_part)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise ValueError("elements of different groups")

    def __add__(self, other):
        self._check(other)
        return self.group.element([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return self.group.element([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return self.group.element([-a for a in self.coords])

    def __mul__(self, k: int):
        return self.group.element([k * a for a in self.coords])

    __rmul__ = __mul__

    def __str__(self):
        return "(" + ", ".join(map(str, self.coords)) + ")"


def cokernel(m: IntMatrix) -> tuple[FinAbGroup, IntMatrix]:
    """Cokernel of ``m: Z^c -> Z^r`` with its projection ``Z^r -> g``.

    The free coordinates are normalised so the projection's free rows are in
    Hermite normal form, and torsion rows are reduced modulo their order.
    """
    r, c = m.rows, m.cols
    U, D, _, Uinv, _ = _snf(m)
    diag = [D[i][i] if i < c else 0 for i in range(r)]
    free = [i for i in range(r) if diag[i] == 0]
    tors = [i for i in range(r) if diag[i] > 1]

    free_rows = [U[i] for i in free]
    free_sec = [[Uinv[k][i] for i in free] for k in range(r)]  # r x f
    if free_rows:
        h, w = hermite_normal_form(IntMatrix.from_rows(free_rows, cols=r))
        free_rows = h.tolist()
        # new coords = w @ old coords, so the section becomes old_section @ w^-1
        winv = _unimodular_inverse(w)
        free_sec = (IntMatrix.from_rows(free_sec, cols=len(free)) @ winv).tolist()
    tors_rows = [[x % diag[i] for x in U[i]] for i in tors]
    proj_rows = free_rows + tors_rows
    sec_rows = [free_sec[k] + [Uinv[k][i] for i in tors] for k in range(r)]
    ngens = len(free) + len(tors)
    proj = IntMatrix.from_rows(proj_rows, cols=r)
    section = IntMatrix.from_rows(sec_rows, cols=ngens)
    g = FinAbGroup(len(free), tuple(diag[i] for i in tors), proj, section)
    return g, proj


def _unimodular_inverse(w: IntMatrix) -> IntMatrix:
    U, D, V, _, _ = _snf(w)
    # U w V = I, hence w^-1 = V U
    if IntMatrix.from_rows(D, cols=w.cols) != IntMatrix.identity(w.rows):
        raise ValueError("matrix is not unimodular")
    return IntMatrix.from_rows(V, cols=w.cols) @ IntMatrix.from_rows(U, cols=w.rows)


def _lifted_lattice(gens, g: FinAbGroup):
    f = g.free_rank
    rows = [tuple(x.coords) for x in gens]
    for i, d in enumerate(g.torsion):
        rows.append(tuple(d if k == f + i else 0 for k in range(g.ngens)))
    return rows


def subgroup_index(gens: Sequence[GroupElement], g: FinAbGroup):
    """Index ``[g : <gens>]``; ``INFINITE`` when the subgroup has lower free rank."""
    if g.ngens == 0:
        return 1
    rows = _lifted_lattice(gens, g)
    if not rows:
        return INFINITE
    factors = invariant_factors(IntMatrix.from_rows(rows, cols=g.ngens))
    if len(factors) < g.ngens:
        return INFINITE
    return math.prod(factors)


def subgroup_membership(x: GroupElement, gens: Sequence[GroupElement]) -> bool:
    """Decide ``x in <gens>`` by reducing against the HNF of the lifted generators."""
    g = x.group
    for y in gens:
        x._check(y)
    rows = _lifted_lattice(gens, g)
    if g.ngens == 0:
        return True
    basis = lattice_basis(rows, g.ngens)
    return in_lattice(x.coords, basis)


def subgroup_structure(gens: Sequence[GroupElement], g: FinAbGroup) -> FinAbGroup:
    """Abstract isomorphism type of the subgroup generated by ``gens``."""
    k = len(gens)
    if k == 0:
        return FinAbGroup(0)
    f = g.free_rank
    # relations x in Z^k with sum x_i gens_i = 0 in g
    rows = []
    for i in range(g.ngens):
        row = [gens[j].coords[i] for j in range(k)]
        row += [-(g.torsion[i - f]) if i >= f and t == i - f else 0
                for t in range(len(g.torsion))]
        rows.append(row)
    system = IntMatrix.from_rows(rows, cols=k + len(g.torsion))
    ker = kernel_basis(system)
    rels = [col[:k] for col in ker.column_tuples()]
    if not rels:
        return FinAbGroup(k)
    grp, _ = cokernel(IntMatrix.from_columns(rels, rows=k))
    return FinAbGroup(grp.free_rank, grp.torsion)
