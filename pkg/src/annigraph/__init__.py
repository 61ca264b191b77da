"""Finite commutative rings, ideal lattices, annihilating-ideal graphs, and
exact graph genus at desk scale."""

from .classify import RingClassification, classify, unique_minimal_ideal, vdim
from .genus import (
    GenusResult,
    euler_lower_bound,
    genus_exact,
    genus_formula_bipartite,
    genus_formula_complete,
    is_planar,
    planar_rotation,
    verify_embedding,
)
from .graphs import (
    SimpleGraph,
    build_ag,
    build_zero_divisor_graph,
    complete_bipartite,
    complete_graph,
    find_complete_bipartite_subgraph,
    simple_graph,
    to_dot,
)
from .ideals import (
    Ideal,
    IdealLattice,
    all_ideals,
    annihilating_ideals,
    annihilator,
    ideal_intersection,
    ideal_power,
    ideal_product,
    ideal_sum,
    name_ideal,
    principal_ideal,
    sub_ideals,
)
from .rings import (
    FiniteRing,
    RingError,
    ValidationReport,
    make_poly_quotient,
    make_product,
    make_structure_constants,
    make_zn,
    quotient_ring,
    validate_ring,
)
from .specs import RingSpec, SpecParseError, builtin_corpus, parse_ring_spec
from .verify import CheckResult, ShapeMatch, SuiteReport, match_shape, run_suite

__version__ = "0.1.0"
