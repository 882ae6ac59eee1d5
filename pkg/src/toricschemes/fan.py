"""Fans of sharp cones and the affine charts of their toric schemes."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

from .cone import (
    MonoidBasis,
    Polycone,
    cone_from_generators,
    dual_cone,
    faces,
    intersect,
    is_face_of,
    monoid_presentation_split,
)
from .errors import InputError, InvalidFanError, NotAFaceError, NotSharpError
from .lattice import IntMatrix, dot, kernel_basis, primitive, rank


@dataclass(frozen=True)
class Fan:
    """A finite face-closed collection of sharp cones.

    ``rays`` lists the primitive generators of the one-dimensional cones in
    the order given at construction; ``cone_rays[i]`` is the set of ray
    indices spanning ``cones[i]``.  ``face_relation`` holds the pairs
    ``(i, j)`` with ``cones[i]`` a face of ``cones[j]``.
    """

    ambient_rank: int
    rays: tuple
    cones: tuple
    cone_rays: tuple
    maximal_cones: tuple
    face_relation: frozenset

    @property
    def is_empty(self) -> bool:
        return not self.cones

    def index_of(self, cone: Polycone) -> int:
        try:
            return self.cones.index(cone)
        except ValueError:
            raise InputError("cone is not in the fan") from None

    def cone_with_rays(self, ray_indices) -> int:
        key = frozenset(ray_indices)
        for i, r in enumerate(self.cone_rays):
            if r == key:
                return i
        raise InputError(f"no cone spanned by rays {sorted(key)}")

    def is_face(self, tau: int, sigma: int) -> bool:
        return (tau, sigma) in self.face_relation

    def to_json(self) -> dict:
        return {
            "ambient_rank": self.ambient_rank,
            "rays": [list(r) for r in self.rays],
            "maximal_cones": [sorted(self.cone_rays[i]) for i in self.maximal_cones],
        }

    @classmethod
    def from_json(cls, data: dict) -> Fan:
        try:
            n = int(data["ambient_rank"])
            rays = [list(r) for r in data["rays"]]
            maxc = [list(c) for c in data["maximal_cones"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed fan description: {exc}") from None
        return fan_from_maximal_cones(n, rays, maxc)


def fan_from_maximal_cones(ambient_rank: int, ray_vectors, max_cones) -> Fan:
    """Build a fan from rays and the ray-index sets of its maximal cones.

    Raises ``InvalidFanError`` when two cones meet outside a common face or a
    listed ray is not extremal in a listed cone, ``NotSharpError`` when a
    listed cone contains a line.
    """
    n = int(ambient_rank)
    if n < 0:
        raise InputError("ambient rank must be nonnegative")
    rays = []
    for v in ray_vectors:
        v = tuple(int(a) for a in v)
        if len(v) != n:
            raise InputError(f"ray {list(v)} does not have length {n}")
        if not any(v):
            raise InputError("rays must be nonzero")
        rays.append(primitive(v))
    if len(set(rays)) != len(rays):
        raise InputError("repeated ray")
    listed = []
    for s in max_cones:
        s = frozenset(int(i) for i in s)
        if any(not 0 <= i < len(rays) for i in s):
            raise InputError(f"ray index out of range in cone {sorted(s)}")
        listed.append(s)

    ray_index = {r: i for i, r in enumerate(rays)}
    all_cones = {}
    listed_cones = []
    for s in listed:
        c = cone_from_generators([rays[i] for i in sorted(s)], n)
        if not c.is_sharp:
            raise NotSharpError(f"cone on rays {sorted(s)} contains a line")
        if len(c.rays) != len(s):
            raise InvalidFanError(f"rays {sorted(s)} are not all extremal in their cone")
        listed_cones.append(c)
        for f in faces(c):
            all_cones[f] = frozenset(ray_index[r] for r in f.rays)

    used = set().union(*all_cones.values()) if all_cones else set()
    if used != set(range(len(rays))):
        raise InputError(f"rays {sorted(set(range(len(rays))) - used)} lie in no cone")

    for (i, a), (j, b) in combinations(enumerate(listed_cones), 2):
        m = intersect(a, b)
        if not (is_face_of(m, a) and is_face_of(m, b)):
            raise InvalidFanError(
                f"cones {sorted(listed[i])} and {sorted(listed[j])} meet outside a common face")

    order = sorted(all_cones, key=lambda c: (c.dim, sorted(all_cones[c])))
    cone_rays = tuple(all_cones[c] for c in order)
    relation = frozenset((i, j) for i, a in enumerate(cone_rays)
                         for j, b in enumerate(cone_rays) if a <= b)
    maximal = tuple(i for i, a in enumerate(cone_rays)
                    if not any(a < b for b in cone_rays))
    return Fan(n, tuple(rays), tuple(order), cone_rays, maximal, relation)


def is_full(f: Fan) -> bool:
    """Whether the rays span the ambient space."""
    return rank(f.rays, f.ambient_rank) == f.ambient_rank if f.rays else f.ambient_rank == 0


def is_simplicial(f: Fan) -> bool:
    return all(len(r) == c.dim for c, r in zip(f.cones, f.cone_rays))


def is_complete(f: Fan) -> bool:
    """Whether the support of ``f`` is the whole space.

    Decided by facet pairing: every maximal cone is full-dimensional and
    every codimension-one face of a maximal cone lies in exactly two of them.
    """
    if f.is_empty:
        return False
    n = f.ambient_rank
    if n == 0:
        return True
    if any(f.cones[i].dim != n for i in f.maximal_cones):
        return False
    count = defaultdict(int)
    for i in f.maximal_cones:
        for j in range(len(f.cones)):
            if f.cones[j].dim == n - 1 and f.is_face(j, i):
                count[j] += 1
    return all(k == 2 for k in count.values())


# ---------------------------------------------------------------------------
# affine charts


@dataclass(frozen=True)
class ChartPresentation:
    """Presentation of the monoid algebra of ``sigma^dual`` intersected with ``M``.

    The algebra is generated by the monomials of ``monoid_basis.elements``
    and the Laurent monomials of ``monoid_basis.units``; ``binomial_relations``
    are pairs of exponent vectors over ``monoid_basis.elements`` with equal
    evaluations.
    """

    monoid_basis: MonoidBasis
    unit_rank: int
    binomial_relations: tuple
    degree_bound: int

    def evaluate(self, exponents) -> tuple:
        n = len(self.monoid_basis.elements[0]) if self.monoid_basis.elements else 0
        return tuple(sum(a * h[i] for a, h in zip(exponents, self.monoid_basis.elements))
                     for i in range(n))


def _exponent_vectors(weights, bound):
    """All ``a`` in ``N^k`` with ``sum a_i weights_i <= bound``."""
    k = len(weights)
    out = []

    def rec(i, remaining, acc):
        if i == k:
            out.append(tuple(acc))
            return
        for a in range(remaining // weights[i] + 1):
            acc.append(a)
            rec(i + 1, remaining - a * weights[i], acc)
            acc.pop()

    rec(0, bound, [])
    return out


def toric_relations(elements, weights, degree_bound: int) -> tuple:
    """Markov basis of binomial relations among ``elements`` up to a degree bound.

    ``weights[i] > 0`` is a grading of the ``i``-th element.  Fibres of the
    evaluation map are processed in order of weight; within a fibre, two
    exponent vectors sharing a variable are already connected by relations of
    lower weight, so one relation per extra connected component is added.
    Every fibre whose members all have total degree at most ``degree_bound``
    is handled.
    """
    if not elements:
        return ()
    wmax = degree_bound * min(weights)
    fibres = defaultdict(list)
    for a in _exponent_vectors(weights, wmax):
        if not any(a):
            continue
        val = tuple(sum(x * h[i] for x, h in zip(a, elements)) for i in range(len(elements[0])))
        fibres[val].append(a)
    relations = []
    for val in sorted(fibres, key=lambda v: (sum(x * w for x, w in zip(fibres[v][0], weights)), v)):
        members = sorted(fibres[val])
        if len(members) < 2:
            continue
        parent = list(range(len(members)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, j in combinations(range(len(members)), 2):
            if any(x and y for x, y in zip(members[i], members[j])):
                parent[find(i)] = find(j)
        reps = {}
        for i, a in enumerate(members):
            reps.setdefault(find(i), a)
        reps = sorted(reps.values())
        relations.extend((reps[0], b) for b in reps[1:])
    return tuple(relations)


def chart_presentation(f: Fan, cone_index: int, degree_bound: int = 12) -> ChartPresentation:
    """Generators and binomial relations of the chart algebra ``R[sigma^dual & M]``."""
    sigma = f.cones[cone_index]
    basis = monoid_presentation_split(dual_cone(sigma))
    interior = sigma.relative_interior_point()
    weights = [dot(h, interior) for h in basis.elements]
    relations = toric_relations(basis.elements, weights, degree_bound)
    return ChartPresentation(basis, len(basis.units), relations, degree_bound)


def gluing_element(f: Fan, tau: int, sigma: int) -> tuple:
    """Exponent vector, over the chart basis of ``sigma``, of a monomial ``u``
    with ``tau = sigma & ker(u)``: the sum of the basis elements vanishing on ``tau``.

    Localising the chart of ``sigma`` at ``u`` gives the chart of ``tau``.
    """
    if not f.is_face(tau, sigma):
        raise NotAFaceError(f"cone {tau} is not a face of cone {sigma}")
    basis = monoid_presentation_split(dual_cone(f.cones[sigma])).elements
    gens = f.cones[tau].generators
    return tuple(int(all(dot(h, g) == 0 for g in gens)) for h in basis)


def chart_basis(f: Fan, cone_index: int) -> MonoidBasis:
    return monoid_presentation_split(dual_cone(f.cones[cone_index]))


def kernel_lattice(elements, ambient_rank: int) -> tuple:
    """Canonical basis of the integer relations among ``elements``."""
    if not elements:
        return ()
    m = IntMatrix.from_columns(elements, rows=ambient_rank)
    return kernel_basis(m).column_tuples()
