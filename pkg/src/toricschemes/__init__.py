"""Exact invariants of toric schemes computed from lattice fans."""
from .cohomology import (
    BaseRing,
    CohomologyReport,
    ModuleDescriptor,
    MonomialModule,
    cech_cohomology,
    chart_monomial_predicate,
    finiteness_probe,
    local_cohomology,
    saturate,
    serre_grothendieck_check,
    torsion_functor,
)
from .cone import (
    MonoidBasis,
    Polycone,
    cone_from_generators,
    cone_from_inequalities,
    dual_cone,
    faces,
    hilbert_basis,
    intersect,
    is_face_of,
    monoid_presentation_split,
)
from .cox import (
    CoxGrading,
    MonomialIdeal,
    SubgroupB,
    chart_degree_zero,
    compare_chart_iso,
    cox_grading,
    irrelevant_ideal,
    is_big,
    is_small,
    restricted_irrelevant_ideal,
    restriction_exponent,
    zhat,
)
from .errors import (
    BoxUnstableError,
    EmptyFanError,
    InputError,
    InvalidFanError,
    NotAFaceError,
    NotBigError,
    NotCompleteWarning,
    NotFullError,
    NotSharpError,
    PreconditionError,
    ToricError,
)
from .fan import (
    Fan,
    chart_presentation,
    fan_from_maximal_cones,
    gluing_element,
    is_complete,
    is_full,
    is_simplicial,
)
from .lattice import (
    FinAbGroup,
    GroupElement,
    IntMatrix,
    cokernel,
    hermite_normal_form,
    kernel_basis,
    smith_normal_form,
)
from .picard import PicardGroup, picard_group, verify_pic_properties, virtual_polytope_lattice
from .scheme import RingDescriptor, SchemeReport, scheme_property_report

__version__ = "0.1.0"
