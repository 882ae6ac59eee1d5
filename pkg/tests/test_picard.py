from itertools import product

import pytest

from conftest import FANS, SIMPLICIAL, make_fan
from toricschemes.cox import cox_grading
from toricschemes.errors import EmptyFanError
from toricschemes.fan import fan_from_maximal_cones
from toricschemes.lattice import IntMatrix, dot, kernel_basis, lattice_basis
from toricschemes.picard import (
    _compatibility_rows,
    picard_group,
    support_values,
    verify_pic_properties,
    virtual_polytope_lattice,
)


def pic(name):
    f = make_fan(name)
    return picard_group(f, cox_grading(f))


def test_index_examples():
    assert pic("p2").index_in_A == 1
    assert pic("p1xp1").index_in_A == 1
    assert pic("f1").index_in_A == 1
    p = pic("p112")
    assert p.index_in_A == 2 and [x.coords for x in p.as_subgroup_of_A] == [(2,)]
    assert p.abstract_type.free_rank == 1


def test_json_shape():
    assert pic("p112").to_json() == {"abstract": {"free_rank": 1, "torsion": []},
                                     "generators_in_A": [[2]], "index_in_A": 2}
    assert pic("cone_over_square").to_json()["index_in_A"] == "infinite"


def test_virtual_polytope_ranks():
    assert len(virtual_polytope_lattice(make_fan("orthant"))) == 2
    assert len(virtual_polytope_lattice(make_fan("p1"))) == 2
    assert len(virtual_polytope_lattice(make_fan("p112"))) == 3


def test_empty_fan_rejected():
    f = fan_from_maximal_cones(2, [], [])
    with pytest.raises(EmptyFanError):
        picard_group(f, cox_grading(f))


@pytest.mark.parametrize("name", sorted(FANS))
def test_small_always_and_big_when_simplicial(name):
    f = make_fan(name)
    g = cox_grading(f)
    rep = verify_pic_properties(f, g, picard_group(f, g))
    assert rep.small
    if name in SIMPLICIAL:
        assert rep.big
    assert rep.passed


@pytest.mark.parametrize("name", sorted(FANS))
def test_support_values_well_defined(name):
    f = make_fan(name)
    n = f.ambient_rank
    for v in virtual_polytope_lattice(f):
        for r, ray in enumerate(f.rays):
            vals = {dot(v[i * n:(i + 1) * n], ray)
                    for i, s in enumerate(f.maximal_cones) if r in f.cone_rays[s]}
            assert len(vals) == 1


@pytest.mark.parametrize("name", sorted(FANS))
def test_all_cone_unknowns_give_same_image(name):
    f = make_fan(name)
    g = cox_grading(f)
    n = f.ambient_rank
    cones = list(range(len(f.cones)))
    rows = _compatibility_rows(f, cones)
    k = len(cones) * n
    sols = kernel_basis(IntMatrix.from_rows(rows, cols=k)).column_tuples() if rows else \
        [tuple(int(i == j) for j in range(k)) for i in range(k)]
    images = []
    for v in sols:
        vals = []
        for r, ray in enumerate(f.rays):
            i = next(i for i in cones if r in f.cone_rays[i])
            vals.append(dot(v[i * n:(i + 1) * n], ray))
        images.append(g.degree(vals).coords)
    A = g.class_group
    rel = [tuple(d if j == A.free_rank + i else 0 for j in range(A.ngens)) for i, d in enumerate(A.torsion)]
    expected = lattice_basis(images + rel, A.ngens)
    got = lattice_basis([x.coords for x in picard_group(f, g).as_subgroup_of_A] + rel, A.ngens)
    assert expected == got


@pytest.mark.parametrize("name", ["p2", "p1xp1", "f1", "p112"])
def test_kernel_is_translations(name):
    f = make_fan(name)
    g = cox_grading(f)
    n = f.ambient_rank
    basis = virtual_polytope_lattice(f)
    for coeffs in product(range(-1, 2), repeat=len(basis)):
        v = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(len(basis[0]))]
        zero = g.degree(support_values(f, v)).is_zero()
        parts = {tuple(v[i * n:(i + 1) * n]) for i in range(len(f.maximal_cones))}
        assert zero == (len(parts) == 1)
