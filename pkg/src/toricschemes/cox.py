"""Cox rings of fans: the class group grading, the irrelevant ideal and
subgroups of degrees.

The exact sequence ``M --c--> Z^rays --a--> A --> 0`` is computed with
``c(u) = (u(rho))_rho`` and ``a`` its cokernel.  The Cox ring is the
polynomial ring in one variable per ray, graded by ``a``; monomials are
exponent vectors indexed like ``fan.rays``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from .cone import MonoidBasis, cone_from_inequalities, monoid_presentation_split
from .errors import InputError, NotBigError
from .fan import Fan, chart_basis
from .lattice import (
    INFINITE,
    FinAbGroup,
    GroupElement,
    IntMatrix,
    cokernel,
    kernel_basis,
    lattice_basis,
    solve_integer,
    subgroup_index,
    subgroup_membership,
)


@dataclass(frozen=True)
class CoxGrading:
    """``c_matrix`` has one row per ray (so ``c(u) = c_matrix @ u``);
    ``degree_map`` is ``a`` in the coordinates of ``class_group``."""

    c_matrix: IntMatrix
    class_group: FinAbGroup
    degree_map: IntMatrix
    ray_degrees: tuple

    @property
    def nvars(self) -> int:
        return self.c_matrix.rows

    def degree(self, exponents) -> GroupElement:
        return self.class_group.element(self.degree_map @ tuple(exponents))

    def lift(self, alpha: GroupElement) -> tuple:
        """Some exponent vector (possibly negative) of degree ``alpha``."""
        return self.class_group.lift(alpha)

    def c(self, u) -> tuple:
        return self.c_matrix @ tuple(u)

    def element(self, value) -> GroupElement:
        """Coerce an int or coordinate sequence into an element of the class group."""
        if isinstance(value, GroupElement):
            if value.group != self.class_group:
                raise InputError("degree belongs to a different group")
            return value
        if isinstance(value, int):
            value = (value,)
        return self.class_group.element(tuple(value))

    def degree_kernel(self) -> tuple:
        """Canonical basis of ``{v : a(v) = 0}``, computed from ``a`` alone."""
        g = self.class_group
        r, f, t = self.nvars, g.free_rank, len(g.torsion)
        rows = []
        for i in range(g.ngens):
            row = list(self.degree_map.row(i)) + [0] * t
            if i >= f:
                row[r + i - f] = -g.torsion[i - f]
            rows.append(row)
        if not rows:
            return lattice_basis([tuple(int(i == j) for j in range(r)) for i in range(r)], r)
        ker = kernel_basis(IntMatrix.from_rows(rows, cols=r + t)).column_tuples()
        return lattice_basis([k[:r] for k in ker], r)

    def to_json(self) -> dict:
        return {
            "c_matrix": self.c_matrix.tolist(),
            "class_group": self.class_group.to_json(),
            "degree_map": self.degree_map.tolist(),
            "ray_degrees": [list(d.coords) for d in self.ray_degrees],
        }


def cox_grading(f: Fan) -> CoxGrading:
    c = IntMatrix.from_rows(f.rays, cols=f.ambient_rank)
    group, proj = cokernel(c)
    degrees = tuple(group.element(proj.col(j)) for j in range(c.rows))
    return CoxGrading(c, group, proj, degrees)


def zhat(f: Fan, cone_index: int) -> tuple:
    """Exponent vector of the product of the variables of rays outside the cone."""
    inside = f.cone_rays[cone_index]
    return tuple(int(i not in inside) for i in range(len(f.rays)))


# ---------------------------------------------------------------------------
# monomial ideals


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out = []
    for g in gens:
        if not any(divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal in ``nvars`` variables with minimal generators."""

    nvars: int
    generators: tuple = ()

    def __post_init__(self):
        gens = []
        for g in self.generators:
            g = tuple(int(a) for a in g)
            if len(g) != self.nvars or any(a < 0 for a in g):
                raise InputError(f"bad monomial exponent {list(g)}")
            gens.append(g)
        object.__setattr__(self, "generators", _minimalize(gens))

    @classmethod
    def unit(cls, nvars: int) -> MonomialIdeal:
        return cls(nvars, ((0,) * nvars,))

    def __contains__(self, monomial) -> bool:
        return any(divides(g, monomial) for g in self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return (0,) * self.nvars in self.generators

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal(self.nvars, self.generators + other.generators)

    def __mul__(self, other: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal(self.nvars, [tuple(x + y for x, y in zip(a, b))
                                          for a in self.generators for b in other.generators])

    def __pow__(self, k: int) -> MonomialIdeal:
        out = MonomialIdeal.unit(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def intersection(self, other: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal(self.nvars, [tuple(max(x, y) for x, y in zip(a, b))
                                          for a in self.generators for b in other.generators])

    def colon_infinity(self, monomial) -> MonomialIdeal:
        """``(self : m^infinity)``: forget the exponents on the support of ``m``."""
        support = [i for i, a in enumerate(monomial) if a]
        return MonomialIdeal(self.nvars, [tuple(0 if i in support else a for i, a in enumerate(g))
                                          for g in self.generators])

    def to_json(self) -> list:
        return [list(g) for g in self.generators]


def irrelevant_ideal(f: Fan) -> MonomialIdeal:
    """Ideal generated by ``zhat`` of the maximal cones (no cones: the zero ideal)."""
    return MonomialIdeal(len(f.rays), [zhat(f, i) for i in f.maximal_cones])


# ---------------------------------------------------------------------------
# subgroups of the class group


@dataclass(frozen=True)
class SubgroupB:
    generators: tuple

    @classmethod
    def whole(cls, g: CoxGrading) -> SubgroupB:
        return cls(tuple(g.class_group.generators()))

    @classmethod
    def of(cls, g: CoxGrading, gens) -> SubgroupB:
        return cls(tuple(g.element(x) for x in gens))

    def contains(self, x: GroupElement) -> bool:
        return subgroup_membership(x, self.generators)

    def index(self, g: CoxGrading):
        return subgroup_index(self.generators, g.class_group)


def is_big(b: SubgroupB, g: CoxGrading) -> bool:
    """Finite index in the class group."""
    return b.index(g) != INFINITE


def complement_span(f: Fan, g: CoxGrading, cone_index: int) -> list:
    inside = f.cone_rays[cone_index]
    return [d for i, d in enumerate(g.ray_degrees) if i not in inside]


def is_small(b: SubgroupB, f: Fan, g: CoxGrading) -> bool:
    """Contained in the span of the degrees of the rays outside each cone."""
    for i in range(len(f.cones)):
        span = complement_span(f, g, i)
        if not all(subgroup_membership(x, span) for x in b.generators):
            return False
    return True


def restriction_exponent(b: SubgroupB, f: Fan, g: CoxGrading) -> int:
    """Least ``m >= 1`` with ``m * deg(zhat(sigma))`` in ``b`` for every cone."""
    index = b.index(g)
    if index == INFINITE:
        raise NotBigError("subgroup has infinite index")
    degs = [g.degree(zhat(f, i)) for i in range(len(f.cones))]
    exponent = g.class_group.torsion[-1] if g.class_group.torsion else 1
    for m in range(1, index * exponent + 1):
        if all(b.contains(m * d) for d in degs):
            return m
    raise NotBigError("no restriction exponent found within the index bound")


def restricted_irrelevant_ideal(b: SubgroupB, f: Fan, g: CoxGrading) -> MonomialIdeal:
    """Minimal monomial generators of ``I & S_B`` as an ideal of ``S_B``.

    A minimal generator is ``zhat(sigma) * y`` where no proper monomial factor
    of ``y`` has degree in ``b``; by the zero-sum property of the finite group
    ``A/B`` such ``y`` have total degree below the index.
    """
    index = b.index(g)
    if index == INFINITE:
        raise NotBigError("subgroup has infinite index")
    r = len(f.rays)
    cands = []
    for i in f.maximal_cones:
        z = zhat(f, i)
        for k in range(index):
            for combo in combinations_with_replacement(range(r), k):
                x = list(z)
                for j in combo:
                    x[j] += 1
                if b.contains(g.degree(x)):
                    cands.append(tuple(x))
    return MonomialIdeal(r, cands)


# ---------------------------------------------------------------------------
# degree-zero chart monoids


def chart_degree_zero(f: Fan, g: CoxGrading, cone_index: int) -> MonoidBasis:
    """Generators of ``{v : a(v) = 0, v_rho >= 0 for rho in the cone}``.

    These are the exponents of the degree-zero Laurent monomials of the Cox
    ring localised at ``zhat(sigma)``.
    """
    r = g.nvars
    K = g.degree_kernel()
    if not K:
        return MonoidBasis(())
    Km = IntMatrix.from_columns(K, rows=r)
    normals = [Km.row(i) for i in sorted(f.cone_rays[cone_index])]
    cone = cone_from_inequalities(normals, len(K))
    split = monoid_presentation_split(cone)
    elements = tuple(sorted(Km @ h for h in split.elements))
    units = lattice_basis([Km @ u for u in split.units], r)
    return MonoidBasis(elements, tuple(units))


def compare_chart_iso(f: Fan, g: CoxGrading, cone_index: int) -> bool:
    """Whether ``c`` maps the chart monoid of the cone bijectively onto its
    degree-zero Cox monoid."""
    target = chart_degree_zero(f, g, cone_index)
    c = g.c_matrix
    if kernel_basis(c).cols:
        return False  # not injective on the group generated by the chart monoid
    source = chart_basis(f, cone_index)
    # c(u) lies in the target monoid for every u in the source monoid
    image_units = [c @ u for u in source.units]
    image = [c @ h for h in source.elements]
    tgt_units = lattice_basis(target.units, g.nvars) if target.units else ()
    if lattice_basis(image_units, g.nvars) != tgt_units:
        return False
    inside = f.cone_rays[cone_index]
    if any(v[i] < 0 for v in image for i in inside):
        return False
    # every target generator has a preimage, which then lies in the chart monoid
    return all(solve_integer(c, v) is not None for v in target.elements)


def multidegrees(g: CoxGrading, alpha_ranges) -> list:
    """All class-group elements whose free coordinates lie in the inclusive
    ``alpha_ranges`` (one ``(lo, hi)`` per free coordinate); torsion
    coordinates are enumerated fully."""
    grp = g.class_group
    axes = [range(lo, hi + 1) for lo, hi in alpha_ranges] + [range(d) for d in grp.torsion]
    return [grp.element(c) for c in product(*axes)]
