"""Virtual polytopes over a fan and the Picard group as a subgroup of the
class group."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cox import CoxGrading, SubgroupB, is_big, is_small
from .errors import EmptyFanError
from .fan import Fan, is_simplicial
from .lattice import (
    FinAbGroup,
    IntMatrix,
    dot,
    kernel_basis,
    lattice_basis,
    subgroup_index,
    subgroup_structure,
)


def _compatibility_rows(f: Fan, cones):
    """One row ``(m_s - m_t)(x) = 0`` per generator ``x`` of each common face."""
    n = f.ambient_rank
    rows = []
    for (i, s), (j, t) in combinations(enumerate(cones), 2):
        common = f.cone_rays[s] & f.cone_rays[t]
        for r in sorted(common):
            row = [0] * (n * len(cones))
            for k in range(n):
                row[i * n + k] = f.rays[r][k]
                row[j * n + k] = -f.rays[r][k]
            rows.append(row)
    return rows


def virtual_polytope_lattice(f: Fan) -> tuple:
    """Z-basis of the families ``(m_sigma)`` over the maximal cones whose
    differences vanish on common faces.

    A basis vector is a flat tuple: ``m_sigma`` for the ``i``-th maximal cone
    sits at positions ``i*n .. i*n + n - 1``.
    """
    n, k = f.ambient_rank, len(f.maximal_cones)
    rows = _compatibility_rows(f, f.maximal_cones)
    if not rows:
        return tuple(tuple(int(i == j) for j in range(n * k)) for i in range(n * k))
    return tuple(kernel_basis(IntMatrix.from_rows(rows, cols=n * k)).column_tuples())


def support_values(f: Fan, assignment) -> tuple:
    """``(m_sigma(rho))_rho`` with ``sigma`` the first maximal cone containing ``rho``."""
    n = f.ambient_rank
    out = []
    for r, ray in enumerate(f.rays):
        i = next(i for i, s in enumerate(f.maximal_cones) if r in f.cone_rays[s])
        out.append(dot(assignment[i * n:(i + 1) * n], ray))
    return tuple(out)


@dataclass(frozen=True)
class PicardGroup:
    as_subgroup_of_A: tuple
    abstract_type: FinAbGroup
    index_in_A: object

    def to_json(self) -> dict:
        idx = self.index_in_A
        return {
            "abstract": self.abstract_type.to_json(),
            "generators_in_A": [list(x.coords) for x in self.as_subgroup_of_A],
            "index_in_A": "infinite" if idx == float("inf") else idx,
        }


def picard_group(f: Fan, g: CoxGrading) -> PicardGroup:
    """Image of the virtual polytopes in the class group."""
    if f.is_empty:
        raise EmptyFanError("the Picard group needs a nonempty fan")
    A = g.class_group
    images = [g.degree(support_values(f, v)).coords for v in virtual_polytope_lattice(f)]
    relations = [tuple(d if k == A.free_rank + i else 0 for k in range(A.ngens))
                 for i, d in enumerate(A.torsion)]
    gens = []
    for row in lattice_basis(images + relations, A.ngens):
        x = A.element(row)
        if not x.is_zero():
            gens.append(x)
    return PicardGroup(tuple(gens), subgroup_structure(gens, A), subgroup_index(gens, A))


@dataclass(frozen=True)
class PicReport:
    small: bool
    big: bool
    simplicial: bool

    @property
    def passed(self) -> bool:
        return self.small and (self.big or not self.simplicial)

    def to_json(self) -> dict:
        return {"small": self.small, "big": self.big, "simplicial": self.simplicial,
                "passed": self.passed}


def verify_pic_properties(f: Fan, g: CoxGrading, p: PicardGroup) -> PicReport:
    """Check that Pic is small, and big when the fan is simplicial."""
    b = SubgroupB(p.as_subgroup_of_A)
    return PicReport(small=is_small(b, f, g), big=is_big(b, g), simplicial=is_simplicial(f))
