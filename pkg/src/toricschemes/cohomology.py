"""Sheaf cohomology and local cohomology of monomial modules over Cox rings.

Everything is finely graded by exponent vectors ``v`` in ``Z^rays``: every
localisation of a monomial module ``S(beta)/a`` at a monomial is, in fine
degree ``v``, either the base ring (spanned by ``z^v``) or zero, and all
restriction maps send ``z^v`` to ``z^v``.  So the Čech complex of the
maximal-cone cover and the stable Koszul complex on the irrelevant ideal
both split into finite complexes, one per fine degree, indexed by subsets of
maximal cones.  A class-group degree ``alpha`` is the fibre
``v0 + c(M)``; for a full fan ``c`` is injective and the fibre is walked as
``u`` ranges over a box in ``M``.

The box is only trusted after checking that the shell of width 2 around it
contributes nothing; otherwise :class:`BoxUnstableError` is raised.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .cox import (
    CoxGrading,
    MonomialIdeal,
    SubgroupB,
    cox_grading,
    irrelevant_ideal,
    is_big,
)
from .errors import (
    BoxUnstableError,
    EmptyFanError,
    InputError,
    NotBigError,
    NotCompleteWarning,
    NotFullError,
)
from .fan import Fan, is_complete, is_full
from .lattice import (
    FinAbGroup,
    GroupElement,
    IntMatrix,
    invariant_factors,
    kernel_basis,
    rank,
    solve_integer,
)


@dataclass(frozen=True)
class BaseRing:
    """``QQ``, ``ZZ`` or the prime field ``GF(p)``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("QQ", "ZZ", "Fp"):
            raise InputError(f"unknown base ring {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p ** .5) + 1)):
                raise InputError(f"{self.p} is not a prime")
        elif self.p is not None:
            raise InputError("only Fp takes a characteristic")

    @classmethod
    def parse(cls, text: str) -> BaseRing:
        t = text.strip()
        if t in ("QQ", "ZZ"):
            return cls(t)
        for prefix in ("Fp:", "GF(", "F"):
            if t.startswith(prefix):
                digits = t[len(prefix):].rstrip(")")
                if digits.isdigit():
                    return cls("Fp", int(digits))
        raise InputError(f"cannot parse base ring {text!r}; use QQ, ZZ or F<p>")

    @property
    def is_field(self) -> bool:
        return self.kind != "ZZ"

    def __str__(self):
        return f"F{self.p}" if self.kind == "Fp" else self.kind


QQ = BaseRing("QQ")
ZZ = BaseRing("ZZ")


@dataclass(frozen=True)
class ModuleDescriptor:
    """A finitely generated module over the base: free rank plus torsion
    invariant factors (always empty over a field)."""

    rank: int = 0
    torsion: tuple = ()

    def __add__(self, other: ModuleDescriptor) -> ModuleDescriptor:
        return ModuleDescriptor.of(self.rank + other.rank, self.torsion + other.torsion)

    @classmethod
    def of(cls, rank: int, orders) -> ModuleDescriptor:
        g = FinAbGroup.from_orders(0, orders)
        return cls(rank, g.torsion)

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


ZERO = ModuleDescriptor()


# ---------------------------------------------------------------------------
# monomial modules


@dataclass(frozen=True)
class Summand:
    """``S(shift) / annihilator``."""

    shift: GroupElement
    annihilator: MonomialIdeal


class MonomialModule:
    """Finite direct sum of shifted monomial quotients ``S_B(beta)/a`` over
    the Cox ring of ``fan``, graded by the subgroup ``subgroup`` (default:
    the whole class group)."""

    def __init__(self, fan: Fan, summands=(), subgroup: SubgroupB | None = None,
                 grading: CoxGrading | None = None):
        self.fan = fan
        self.grading = grading or cox_grading(fan)
        self.subgroup = subgroup or SubgroupB.whole(self.grading)
        g, r = self.grading, len(fan.rays)
        checked = []
        for shift, ann in summands:
            shift = g.element(shift)
            if not isinstance(ann, MonomialIdeal):
                ann = MonomialIdeal(r, ann)
            if ann.nvars != r:
                raise InputError("annihilator has the wrong number of variables")
            if not self.subgroup.contains(shift):
                raise InputError(f"shift {shift} is not in the grading subgroup")
            for gen in ann.generators:
                if not self.subgroup.contains(g.degree(gen)):
                    raise InputError(f"annihilator generator {list(gen)} has degree outside the subgroup")
            checked.append(Summand(shift, ann))
        self.summands = tuple(checked)

    @classmethod
    def free(cls, fan: Fan, shift=None, **kw) -> MonomialModule:
        g = kw.get("grading") or cox_grading(fan)
        kw["grading"] = g
        shift = g.class_group.zero() if shift is None else shift
        return cls(fan, [(shift, MonomialIdeal(len(fan.rays)))], **kw)

    @classmethod
    def quotient(cls, fan: Fan, ideal, shift=None, **kw) -> MonomialModule:
        g = kw.get("grading") or cox_grading(fan)
        kw["grading"] = g
        shift = g.class_group.zero() if shift is None else shift
        return cls(fan, [(shift, ideal)], **kw)

    @classmethod
    def from_json(cls, fan: Fan, data: dict, **kw) -> MonomialModule:
        try:
            items = [(tuple(s["shift"]), [tuple(a) for a in s.get("annihilator", [])])
                     for s in data["summands"]]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed module description: {exc}") from None
        return cls(fan, items, **kw)

    def to_json(self) -> dict:
        return {"summands": [{"shift": list(s.shift.coords),
                              "annihilator": s.annihilator.to_json()} for s in self.summands]}

    def __add__(self, other: MonomialModule) -> MonomialModule:
        if other.fan != self.fan:
            raise InputError("direct sum of modules over different fans")
        return MonomialModule(self.fan, [(s.shift, s.annihilator)
                                         for s in self.summands + other.summands],
                              subgroup=self.subgroup, grading=self.grading)


def _alive(v, rays, gens) -> bool:
    """Whether ``z^v`` is a nonzero basis element after inverting every
    variable outside ``rays``."""
    if any(v[r] < 0 for r in rays):
        return False
    return not any(all(g[r] <= v[r] for r in rays) for g in gens)


def chart_monomial_predicate(F: MonomialModule, cone_index: int, v, summand: int = 0) -> bool:
    """Whether ``z^v`` is a nonzero basis monomial of ``F`` localised at
    ``zhat(sigma)`` for ``sigma = F.fan.cones[cone_index]``."""
    v = tuple(v)
    if len(v) != len(F.fan.rays):
        raise InputError("exponent vector has the wrong length")
    s = F.summands[summand]
    return _alive(v, F.fan.cone_rays[cone_index], s.annihilator.generators)


# ---------------------------------------------------------------------------
# per-fine-degree complexes


class _Cover:
    """Ray sets of all intersections of maximal cones, indexed by bitmask.

    Mask 0 stands for the module itself (nothing inverted, all rays kept).
    """

    def __init__(self, fan: Fan):
        self.k = len(fan.maximal_cones)
        all_rays = frozenset(range(len(fan.rays)))
        self.rays = []
        for mask in range(1 << self.k):
            s = all_rays
            for i, c in enumerate(fan.maximal_cones):
                if mask >> i & 1:
                    s = s & fan.cone_rays[c]
            self.rays.append(tuple(sorted(s)))

    def pattern(self, v, gens) -> int:
        bits = 0
        for mask, rays in enumerate(self.rays):
            if _alive(v, rays, gens):
                bits |= 1 << mask
        return bits


def _differential(alive, k, s):
    """Coboundary from alive subsets of size ``s`` to alive subsets of size ``s+1``."""
    src = [J for J in alive if bin(J).count("1") == s]
    tgt = [J for J in alive if bin(J).count("1") == s + 1]
    pos = {J: i for i, J in enumerate(tgt)}
    rows = [[0] * len(src) for _ in tgt]
    for c, J in enumerate(src):
        for j in range(k):
            if J >> j & 1:
                continue
            Jp = J | 1 << j
            if Jp in pos:
                sign = -1 if bin(J & ((1 << j) - 1)).count("1") % 2 else 1
                rows[pos[Jp]][c] = sign
    return src, tgt, rows


def _rank(rows, ncols, base):
    if not rows or not ncols:
        return 0
    return rank(rows, ncols, base.p)


def _torsion(rows, ncols, base):
    if base.is_field or not rows or not ncols:
        return ()
    return tuple(d for d in invariant_factors(IntMatrix.from_rows(rows, cols=ncols)) if d > 1)


@lru_cache(maxsize=None)
def _pattern_cohomology(bits: int, k: int, base: BaseRing):
    """Cohomology of the complexes on the alive subsets in ``bits``.

    Returns ``(local, cech, assembled)``.  ``local[s]`` is ``(rank, torsion)``
    of the augmented complex in position ``s`` (subset size); ``cech[p]`` is
    the Čech complex in position ``p`` (subset size ``p + 1``);
    ``assembled`` is ``(kernel rank, cokernel rank, cokernel torsion)`` of
    the augmentation ``F -> ker(d^0)``.
    """
    alive = [J for J in range(1 << k) if bits >> J & 1]
    sizes = [sum(1 for J in alive if bin(J).count("1") == s) for s in range(k + 1)]
    diffs = [_differential(alive, k, s) for s in range(k)]
    ranks = [_rank(d[2], len(d[0]), base) for d in diffs] + [0]
    tors_in = [()] + [_torsion(d[2], len(d[0]), base) for d in diffs]
    local = tuple((sizes[s] - ranks[s] - (ranks[s - 1] if s else 0), tors_in[s])
                  for s in range(k + 1))
    cech = ((sizes[1] - ranks[1], ()),) + local[2:]

    # augmentation F_v -> Z^0 = ker(d^0 of the Čech complex)
    n1, h0 = sizes[1], cech[0][0]
    if not sizes[0] or not n1:
        return local, cech, (sizes[0], h0, ())
    eps = tuple(row[0] for row in diffs[0][2])
    if base.is_field:
        return local, cech, (0, h0 - 1, ())
    if k > 1 and diffs[1][1]:
        zbasis = kernel_basis(IntMatrix.from_rows(diffs[1][2], cols=n1)).column_tuples()
    else:
        zbasis = [tuple(int(i == j) for j in range(n1)) for i in range(n1)]
    y = solve_integer(IntMatrix.from_columns(zbasis, rows=n1), eps)
    if y is None:
        raise AssertionError("augmentation does not land in the cycles")
    tors = _torsion([[a] for a in y], 1, base)
    return local, cech, (0, len(zbasis) - 1, tors)


@dataclass
class _Totals:
    """Running direct sums over fine degrees, for the inner box and the shell."""

    k: int
    local: list = field(default_factory=list)
    local_tors: list = field(default_factory=list)
    cech: list = field(default_factory=list)
    cech_tors: list = field(default_factory=list)
    module: int = 0
    gamma_basis: list = field(default_factory=list)
    assembled: list = field(default_factory=lambda: [0, 0, []])

    def __post_init__(self):
        self.local = [0] * (self.k + 1)
        self.local_tors = [[] for _ in range(self.k + 1)]
        self.cech = [0] * self.k
        self.cech_tors = [[] for _ in range(self.k)]

    def add(self, local, cech, assembled):
        for i, (rk, tors) in enumerate(local):
            self.local[i] += rk
            self.local_tors[i].extend(tors)
        for i, (rk, tors) in enumerate(cech):
            self.cech[i] += rk
            self.cech_tors[i].extend(tors)
        self.assembled[0] += assembled[0]
        self.assembled[1] += assembled[1]
        self.assembled[2].extend(assembled[2])


def _validate(F: MonomialModule, alpha):
    fan = F.fan
    if fan.is_empty:
        raise EmptyFanError("cohomology needs a nonempty fan")
    if not is_full(fan):
        raise NotFullError("the fibre decomposition over M needs a full fan")
    if not is_big(F.subgroup, F.grading):
        raise NotBigError("grading subgroup has infinite index")
    alpha = F.grading.element(alpha)
    if not F.subgroup.contains(alpha):
        raise InputError(f"degree {alpha} is not in the grading subgroup")
    return alpha


def default_box_radius(F: MonomialModule, alpha) -> int:
    g = F.grading
    alpha = g.element(alpha)
    r = 0
    for s in F.summands:
        v0 = g.lift(alpha + s.shift)
        r = max(r, max((abs(a) for a in v0), default=0),
                max((max(gen) for gen in s.annihilator.generators), default=0))
    return 2 + r


def _scan(F: MonomialModule, alpha: GroupElement, base: BaseRing, radius: int):
    """Direct sums over the fibre of ``alpha``: ``(inner, shell)`` totals."""
    fan, g = F.fan, F.grading
    cover = _Cover(fan)
    k, n = cover.k, fan.ambient_rank
    inner, shell = _Totals(k), _Totals(k)
    outer = radius + 2
    for si, s in enumerate(F.summands):
        v0 = g.lift(alpha + s.shift)
        gens = s.annihilator.generators
        for u in product(range(-outer, outer + 1), repeat=n):
            v = tuple(a + b for a, b in zip(v0, g.c(u)))
            bits = cover.pattern(v, gens)
            if not bits:
                continue
            tot = inner if max((abs(a) for a in u), default=0) <= radius else shell
            local, cech, assembled = _pattern_cohomology(bits, k, base)
            tot.add(local, cech, assembled)
            if bits & 1:
                tot.module += 1
                if local[0][0]:
                    tot.gamma_basis.append((si, v))
    return inner, shell


def _descriptors(ranks, torsions):
    return tuple(ModuleDescriptor.of(r, tors) for r, tors in zip(ranks, torsions))


@dataclass(frozen=True)
class CohomologyReport:
    """Graded pieces in one degree.  ``sheaf[i]`` is ``H^i`` of the Čech
    complex of the maximal-cone cover; ``local[i]`` is the ``i``-th local
    cohomology with respect to the irrelevant ideal; ``torsion`` is the
    irrelevant-torsion submodule (equal to ``local[0]``)."""

    degree: GroupElement
    base: BaseRing
    box_radius: int
    sheaf: tuple | None = None
    local: tuple | None = None
    torsion: ModuleDescriptor | None = None

    def to_json(self) -> dict:
        out = {"degree": list(self.degree.coords), "base": str(self.base),
               "box_radius": self.box_radius}
        if self.sheaf is not None:
            out["H"] = [d.to_json() for d in self.sheaf]
        if self.local is not None:
            out["local"] = [d.to_json() for d in self.local]
            out["gamma_I"] = self.torsion.to_json()
        return out


def _run(F, alpha, base, box_radius, what):
    alpha = _validate(F, alpha)
    radius = default_box_radius(F, alpha) if box_radius is None else box_radius
    inner, shell = _scan(F, alpha, base, radius)
    if what == "sheaf":
        unstable = any(shell.cech) or any(shell.cech_tors)
    else:
        unstable = any(shell.local) or any(shell.local_tors)
    if unstable:
        raise BoxUnstableError(
            f"degree {alpha}: cohomology found outside the box of radius {radius}")
    return alpha, radius, inner


def cech_cohomology(F: MonomialModule, alpha, base: BaseRing = QQ,
                    box_radius: int | None = None) -> CohomologyReport:
    """``H^i`` in degree ``alpha`` of the sheaf attached to ``F``."""
    alpha, radius, inner = _run(F, alpha, base, box_radius, "sheaf")
    sheaf = _descriptors(inner.cech, inner.cech_tors)
    return CohomologyReport(alpha, base, radius, sheaf=sheaf)


def local_cohomology(F: MonomialModule, alpha, base: BaseRing = QQ,
                     box_radius: int | None = None) -> CohomologyReport:
    """Local cohomology of ``F`` in degree ``alpha`` with respect to the
    irrelevant ideal, from the stable Koszul complex on its generators."""
    alpha, radius, inner = _run(F, alpha, base, box_radius, "local")
    local = _descriptors(inner.local, inner.local_tors)
    return CohomologyReport(alpha, base, radius, local=local, torsion=local[0])


@dataclass(frozen=True)
class TorsionPiece:
    """Monomial basis of the irrelevant-torsion part of ``F`` in one degree,
    as ``(summand index, exponent vector)`` pairs."""

    degree: GroupElement
    basis: tuple

    @property
    def rank(self) -> int:
        return len(self.basis)


def torsion_functor(F: MonomialModule, degrees, box_radius: int | None = None) -> dict:
    """Irrelevant-torsion submodule of ``F``, degree by degree.

    A monomial is torsion exactly when it dies in the localisation at every
    generator of the irrelevant ideal.
    """
    out = {}
    for alpha in degrees:
        alpha = _validate(F, alpha)
        radius = default_box_radius(F, alpha) if box_radius is None else box_radius
        inner, shell = _scan(F, alpha, ZZ, radius)
        if shell.gamma_basis:
            raise BoxUnstableError(f"degree {alpha}: torsion monomials outside the box")
        out[alpha] = TorsionPiece(alpha, tuple(sorted(inner.gamma_basis)))
    return out


def saturate(a: MonomialIdeal, irrelevant: MonomialIdeal) -> MonomialIdeal:
    """``union_k (a : irrelevant^k)``, as the intersection over the generators
    ``g`` of ``irrelevant`` of the stable colons ``(a : g^infinity)``."""
    if a.nvars != irrelevant.nvars:
        raise InputError("ideals in different rings")
    if not irrelevant.generators:
        return a
    out = None
    for g in irrelevant.generators:
        c = a.colon_infinity(g)
        out = c if out is None else out.intersection(c)
    return out


# ---------------------------------------------------------------------------
# the correspondence between sheaf and local cohomology


@dataclass(frozen=True)
class DegreeVerdict:
    degree: GroupElement
    torsion: ModuleDescriptor
    module: ModuleDescriptor
    sections: ModuleDescriptor
    local_one: ModuleDescriptor
    sheaf: tuple
    local: tuple
    sequence_exact: bool
    isomorphisms: tuple

    @property
    def passed(self) -> bool:
        return self.sequence_exact and all(self.isomorphisms)

    def to_json(self) -> dict:
        return {
            "degree": list(self.degree.coords),
            "gamma_I": self.torsion.to_json(),
            "module": self.module.to_json(),
            "gamma_star_star": self.sections.to_json(),
            "H1_I": self.local_one.to_json(),
            "H": [d.to_json() for d in self.sheaf],
            "local": [d.to_json() for d in self.local],
            "sequence_exact": self.sequence_exact,
            "isomorphisms": list(self.isomorphisms),
            "pass": self.passed,
        }


@dataclass(frozen=True)
class SGReport:
    base: BaseRing
    verdicts: tuple

    @property
    def all_pass(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_json(self) -> dict:
        return {"base": str(self.base), "all_pass": self.all_pass,
                "degrees": [v.to_json() for v in self.verdicts]}


def serre_grothendieck_check(F: MonomialModule, degrees, base: BaseRing = QQ,
                             box_radius: int | None = None) -> SGReport:
    """Check, degree by degree, the four-term sequence
    ``0 -> torsion -> F -> sections -> H^1_I -> 0`` and ``H^i = H^{i+1}_I``
    for ``i >= 1``.

    Sheaf cohomology comes from the Čech complex and local cohomology from
    the stable Koszul complex, each through its own call.  The sequence is
    checked by rank bookkeeping and, independently, by computing the kernel
    and cokernel of the augmentation ``F -> ker(d^0)``.
    """
    verdicts = []
    for alpha in degrees:
        sheaf_rep = cech_cohomology(F, alpha, base, box_radius)
        local_rep = local_cohomology(F, alpha, base, box_radius)
        alpha = sheaf_rep.degree
        radius = sheaf_rep.box_radius
        inner, _ = _scan(F, alpha, base, radius)
        module = ModuleDescriptor(inner.module)
        sheaf, local = sheaf_rep.sheaf, local_rep.local
        sections = sheaf[0]
        torsion, local_one = local[0], local[1] if len(local) > 1 else ZERO
        ker_rank, coker_rank, coker_tors = inner.assembled
        coker = ModuleDescriptor.of(coker_rank, coker_tors)
        euler = torsion.rank - module.rank + sections.rank - local_one.rank == 0
        assembled = (ker_rank == torsion.rank and torsion.torsion == ()
                     and coker == local_one)
        isos = tuple(sheaf[i] == (local[i + 1] if i + 1 < len(local) else ZERO)
                     for i in range(1, len(sheaf)))
        verdicts.append(DegreeVerdict(alpha, torsion, module, sections, local_one,
                                      sheaf, local, euler and assembled, isos))
    return SGReport(base, tuple(verdicts))


@dataclass(frozen=True)
class FinitenessReport:
    complete: bool
    stable: tuple
    warning: str | None

    @property
    def holds(self) -> bool:
        """Whether the finiteness claim was asserted and every piece stabilised."""
        return self.complete and all(ok for _, ok in self.stable)

    def to_json(self) -> dict:
        return {"complete": self.complete, "warning": self.warning, "holds": self.holds,
                "stable": [{"degree": list(a.coords), "stable": ok} for a, ok in self.stable]}


def finiteness_probe(F: MonomialModule, degrees, base: BaseRing = QQ,
                     box_radius: int | None = None) -> FinitenessReport:
    """Witness finite generation of all graded pieces: every sheaf and local
    cohomology piece must stabilise under enlarging the box.

    On a non-complete fan a :class:`NotCompleteWarning` is issued and the
    claim is not asserted, though the pieces are still probed.
    """
    complete = is_complete(F.fan)
    warning = None
    if not complete:
        warning = "fan is not complete; finiteness is not claimed"
        warnings.warn(warning, NotCompleteWarning, stacklevel=2)
    stable = []
    for alpha in degrees:
        alpha = F.grading.element(alpha)
        try:
            cech_cohomology(F, alpha, base, box_radius)
            local_cohomology(F, alpha, base, box_radius)
            ok = True
        except BoxUnstableError:
            ok = False
        stable.append((alpha, ok))
    return FinitenessReport(complete, tuple(stable), warning)


def irrelevant_generators(F: MonomialModule) -> MonomialIdeal:
    """Generators used for the stable Koszul complex: ``zhat(sigma)^m`` for
    the maximal cones, with ``m`` the restriction exponent of the subgroup."""
    from .cox import restriction_exponent
    m = restriction_exponent(F.subgroup, F.fan, F.grading)
    base = irrelevant_ideal(F.fan)
    return MonomialIdeal(base.nvars, [tuple(m * a for a in g) for g in base.generators])
