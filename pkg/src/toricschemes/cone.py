"""Rational polyhedral cones in ``Z^n`` and their lattice-point monoids.

A :class:`Polycone` is kept in a canonical double description: extreme rays
(primitive, reduced modulo the lineality space), a canonical lineality basis,
the equations cutting out the linear span and the facet normals, each list
sorted.  Structural equality of two ``Polycone`` objects is therefore
equality of cones.

Facets are found by enumerating candidate hyperplanes through ``dim - 1``
linearly independent generators and keeping those that support the cone,
which is exact and needs no LP solver.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import floor

from .errors import InputError, NotSharpError
from .lattice import (
    IntMatrix,
    _snf,
    complete_basis,
    dot,
    kernel_basis,
    lattice_basis,
    primitive,
    rank,
    reduce_modulo,
    solve_integer,
)


@dataclass(frozen=True)
class Polycone:
    """Cone generated by finitely many lattice vectors.

    ``generators`` is a minimal generating set: the extreme rays together
    with plus and minus the lineality basis.  A facet normal ``u`` satisfies
    ``u(x) >= 0`` on the cone; together with ``equations`` (``e(x) = 0``)
    they cut the cone out of the ambient space.
    """

    ambient_rank: int
    rays: tuple
    lineality_basis: tuple
    equations: tuple
    facet_normals: tuple

    @property
    def generators(self) -> tuple:
        lin = self.lineality_basis
        return tuple(sorted(set(self.rays) | set(lin) | {tuple(-a for a in v) for v in lin}))

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    @property
    def lineality_rank(self) -> int:
        return len(self.lineality_basis)

    @property
    def is_sharp(self) -> bool:
        return not self.lineality_basis

    def contains(self, x) -> bool:
        return all(dot(e, x) == 0 for e in self.equations) and \
            all(dot(u, x) >= 0 for u in self.facet_normals)

    def contains_cone(self, other: Polycone) -> bool:
        return all(self.contains(g) for g in other.generators)

    def relative_interior_point(self) -> tuple:
        """Sum of the generators; lies in the relative interior."""
        return tuple(sum(c) for c in zip(*self.generators)) if self.generators \
            else (0,) * self.ambient_rank

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators]}

    def __repr__(self):
        return f"Polycone(dim={self.dim}, generators={list(map(list, self.generators))})"


@dataclass(frozen=True)
class MonoidBasis:
    """Minimal generators of a monoid of lattice points.

    ``elements`` generate the pointed part; ``units`` is a basis of the group
    of invertible elements (empty for the lattice points of a sharp cone).
    """

    elements: tuple
    units: tuple = ()

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _check_vectors(vecs, n):
    out = []
    for v in vecs:
        v = tuple(int(a) for a in v)
        if len(v) != n:
            raise InputError(f"vector {list(v)} does not have length {n}")
        out.append(v)
    return out


def _full_dim_facets(gens, d):
    """Primitive facet normals of the full-dimensional cone ``cone(gens)`` in ``Z^d``."""
    normals = set()
    if d == 0:
        return normals
    for sub in combinations(range(len(gens)), d - 1):
        rows = [gens[i] for i in sub]
        if rank(rows, d) != d - 1:
            continue
        w = kernel_basis(IntMatrix.from_rows(rows, cols=d)).col(0)
        vals = [dot(w, g) for g in gens]
        if all(x >= 0 for x in vals):
            normals.add(primitive(w))
        elif all(x <= 0 for x in vals):
            normals.add(primitive(tuple(-a for a in w)))
    return normals


def cone_from_generators(vecs, ambient_rank: int) -> Polycone:
    """Canonical cone spanned by ``vecs`` in ``R^ambient_rank``."""
    n = ambient_rank
    gens = [v for v in _check_vectors(vecs, n) if any(v)]
    if not gens:
        eqs = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return Polycone(n, (), (), eqs, ())

    # equations: the lattice orthogonal to the span
    eq_basis = kernel_basis(IntMatrix.from_rows(gens, cols=n)).column_tuples()
    equations = lattice_basis(eq_basis, n)
    # saturated lattice basis of the span and coordinates in it
    if equations:
        span = kernel_basis(IntMatrix.from_rows(equations, cols=n)).column_tuples()
    else:
        span = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    d = len(span)
    B = IntMatrix.from_columns(span, rows=n)
    coords = [solve_integer(B, g) for g in gens]

    facets_d = sorted(_full_dim_facets(coords, d))
    BT = B.T
    facets = []
    for f in facets_d:
        u = solve_integer(BT, f)
        facets.append(reduce_modulo(u, equations))

    # lineality space, in ambient coordinates
    if facets_d:
        lin_d = kernel_basis(IntMatrix.from_rows(facets_d, cols=d)).column_tuples()
    else:
        lin_d = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    lineality = lattice_basis([B @ k for k in lin_d], n)

    rays = set()
    l = len(lineality)
    U, Uinv = complete_basis(lineality, n)
    Um, Uinvm = IntMatrix.from_rows(U, cols=n), IntMatrix.from_rows(Uinv, cols=n)
    target = d - l - 1
    for g, k in zip(gens, coords):
        tight = [f for f in facets_d if dot(f, k) == 0]
        if len(tight) == len(facets_d) and l == d:
            continue  # g lies in the lineality space
        if (rank(tight, d) if tight else 0) != target:
            continue
        y = Um @ g
        if not any(y[l:]):
            continue
        rep = (0,) * l + primitive(y[l:])
        rays.add(Uinvm @ rep if l else primitive(g))
    return Polycone(n, tuple(sorted(rays)), tuple(sorted(lineality)), equations,
                    tuple(sorted(facets)))


def cone_from_inequalities(normals, ambient_rank: int, equations=()) -> Polycone:
    """The cone ``{x : u(x) >= 0 for u in normals, e(x) = 0 for e in equations}``."""
    n = ambient_rank
    eqs = _check_vectors(equations, n)
    gens = _check_vectors(normals, n) + eqs + [tuple(-a for a in e) for e in eqs]
    return dual_cone(cone_from_generators(gens, n))


def dual_cone(c: Polycone) -> Polycone:
    """The dual cone ``{u : u(x) >= 0 for all x in c}`` in the dual lattice."""
    gens = list(c.facet_normals) + list(c.equations) + \
        [tuple(-a for a in e) for e in c.equations]
    return cone_from_generators(gens, c.ambient_rank)


def intersect(a: Polycone, b: Polycone) -> Polycone:
    if a.ambient_rank != b.ambient_rank:
        raise InputError("cones live in different ambient spaces")
    return cone_from_inequalities(a.facet_normals + b.facet_normals, a.ambient_rank,
                                  a.equations + b.equations)


def faces(c: Polycone) -> list:
    """All faces of a sharp cone, from the zero cone up to ``c`` itself."""
    if not c.is_sharp:
        raise NotSharpError("faces() needs a sharp cone")
    start = frozenset(range(len(c.rays)))
    seen = {start}
    stack = [start]
    while stack:
        s = stack.pop()
        for u in c.facet_normals:
            t = frozenset(i for i in s if dot(u, c.rays[i]) == 0)
            if t not in seen:
                seen.add(t)
                stack.append(t)
    out = [cone_from_generators([c.rays[i] for i in sorted(s)], c.ambient_rank)
           for s in seen]
    return sorted(out, key=lambda f: (f.dim, f.generators))


def is_face_of(t: Polycone, s: Polycone) -> bool:
    """Whether ``t`` is a face of ``s``: ``t`` equals ``s`` cut by the facets
    of ``s`` that vanish on ``t``."""
    if t.ambient_rank != s.ambient_rank:
        raise InputError("cones live in different ambient spaces")
    if not s.contains_cone(t):
        return False
    tight = tuple(u for u in s.facet_normals if all(dot(u, g) == 0 for g in t.generators))
    face = cone_from_inequalities(s.facet_normals, s.ambient_rank, s.equations + tight)
    return face == t


# ---------------------------------------------------------------------------
# Hilbert bases


def _triangulate(idx, points, n):
    """Simplicial cones (index lists) covering ``cone(points[idx])``, which must be sharp."""
    c = cone_from_generators([points[i] for i in idx], n)
    ray_set = set(c.rays)
    ray_idx = []
    for i in idx:
        p = primitive(points[i])
        if p in ray_set:
            ray_set.discard(p)
            ray_idx.append(i)
    if len(ray_idx) == c.dim:
        return [ray_idx]
    v = ray_idx[0]
    out = []
    for u in c.facet_normals:
        if dot(u, points[v]) > 0:
            sub = [i for i in ray_idx if dot(u, points[i]) == 0]
            out.extend([v] + s for s in _triangulate(sub, points, n))
    return out


def _parallelepiped_points(simplex):
    """Lattice points ``sum l_i r_i`` with ``0 <= l_i < 1`` for a full-dimensional
    simplicial cone in ``Z^d`` given by the columns ``simplex``."""
    d = len(simplex)
    R = IntMatrix.from_columns(simplex, rows=d)
    U, D, V, Uinv, _ = _snf(R)
    diag = [D[i][i] for i in range(d)]
    pts = []
    for k in product(*(range(x) for x in diag)):
        # x = Uinv k and R^-1 x = V D^-1 k
        lam = [sum(Fraction(V[i][j] * k[j], diag[j]) for j in range(d)) for i in range(d)]
        frac = [l - floor(l) for l in lam]
        p = [sum(frac[j] * simplex[j][i] for j in range(d)) for i in range(d)]
        assert all(x.denominator == 1 for x in p)
        pts.append(tuple(int(x) for x in p))
    return pts


def hilbert_basis(c: Polycone) -> MonoidBasis:
    """Minimal generating set of the monoid of lattice points of a sharp cone."""
    if not c.is_sharp:
        raise NotSharpError("hilbert_basis() needs a sharp cone; use monoid_presentation_split")
    if not c.rays:
        return MonoidBasis(())
    n = c.ambient_rank
    if c.equations:
        span = kernel_basis(IntMatrix.from_rows(c.equations, cols=n)).column_tuples()
    else:
        span = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    B = IntMatrix.from_columns(span, rows=n)
    rays = list(c.rays)
    coords = [solve_integer(B, r) for r in rays]
    candidates = set(rays)
    for simplex in _triangulate(list(range(len(rays))), rays, n):
        for p in _parallelepiped_points([coords[i] for i in simplex]):
            if any(p):
                candidates.add(B @ p)
    cand = sorted(candidates)
    basis = []
    for x in cand:
        reducible = any(h != x and c.contains(tuple(a - b for a, b in zip(x, h)))
                        for h in cand)
        if not reducible:
            basis.append(x)
    return MonoidBasis(tuple(sorted(basis)))


def monoid_presentation_split(c: Polycone) -> MonoidBasis:
    """Lattice points of ``c`` as (pointed monoid) x (free unit group).

    The pointed part is the Hilbert basis of the sharp quotient by the
    lineality space, lifted through a fixed complement.
    """
    if c.is_sharp:
        return hilbert_basis(c)
    n, l = c.ambient_rank, c.lineality_rank
    U, Uinv = complete_basis(c.lineality_basis, n)
    Um, Uinvm = IntMatrix.from_rows(U, cols=n), IntMatrix.from_rows(Uinv, cols=n)
    quotient = cone_from_generators([(Um @ r)[l:] for r in c.rays], n - l)
    lifted = [Uinvm @ ((0,) * l + tuple(h)) for h in hilbert_basis(quotient)]
    return MonoidBasis(tuple(sorted(lifted)), tuple(c.lineality_basis))
