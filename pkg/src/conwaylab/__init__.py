"""Exact Conway polynomials, linking matrices, and cyclic lifts of links.

Diagrams are PD codes; periodic structure is described by annular tape
patterns whose p-fold lifts carry an explicit rotation action.  Everything
is computed exactly over the integers.
"""

from conwaylab.diagram import (
    ComponentLabeling,
    Crossing,
    LinkDiagram,
    ParseError,
    ValidationError,
    components,
    linking_number,
    parse_pd,
    render_pd,
    simplify,
    smooth_crossing,
    switch_crossing,
)
from conwaylab.linking import (
    LinkingMatrix,
    a0_from_matrix,
    bareiss_determinant,
    cofactor,
    is_algebraically_split,
    linking_matrix,
)
from conwaylab.periodic import (
    CapEvent,
    CrossEvent,
    CupEvent,
    EquivariantTriple,
    GenerationError,
    OrbitLabeling,
    PatternConfig,
    PatternError,
    QuotientPattern,
    TypeMDecomposition,
    classify_type_m,
    cross_event_rank,
    equivariant_triple,
    is_orbitally_separated,
    is_os_strongly_periodic,
    is_strongly_periodic,
    lift,
    make_type_m_pattern,
    quotient_diagram,
    random_pattern,
    set_event_sign,
    smooth_event,
    validate_pattern,
    winding_numbers,
)
from conwaylab.polynomial import (
    ConwayNormalForm,
    IntPolynomial,
    ParityError,
    to_normal_form,
)
from conwaylab.skein import (
    DEFAULT_MAX_CROSSINGS,
    DEFAULT_TIME_LIMIT,
    MemoCache,
    ResourceLimitError,
    available_kernels,
    canonical_code,
    conway,
    default_kernel_name,
    skein_triple,
)
from conwaylab.verify import (
    SuiteConfig,
    SuiteResult,
    VerificationReport,
    check_lifted_skein_congruence,
    check_low_coefficient_vanishing,
    check_matrix_route_agreement,
    check_period_two_counterexample,
    check_split_divisibility,
    check_type_m_lowest_coefficient,
    hopf_quotient_pattern,
    replay,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # polynomial
    "IntPolynomial",
    "ConwayNormalForm",
    "ParityError",
    "to_normal_form",
    # diagram
    "Crossing",
    "LinkDiagram",
    "ComponentLabeling",
    "ParseError",
    "ValidationError",
    "components",
    "linking_number",
    "parse_pd",
    "render_pd",
    "simplify",
    "smooth_crossing",
    "switch_crossing",
    # skein
    "DEFAULT_MAX_CROSSINGS",
    "DEFAULT_TIME_LIMIT",
    "MemoCache",
    "ResourceLimitError",
    "available_kernels",
    "canonical_code",
    "conway",
    "default_kernel_name",
    "skein_triple",
    # linking
    "LinkingMatrix",
    "a0_from_matrix",
    "bareiss_determinant",
    "cofactor",
    "is_algebraically_split",
    "linking_matrix",
    # periodic
    "CapEvent",
    "CrossEvent",
    "CupEvent",
    "EquivariantTriple",
    "GenerationError",
    "OrbitLabeling",
    "PatternConfig",
    "PatternError",
    "QuotientPattern",
    "TypeMDecomposition",
    "classify_type_m",
    "cross_event_rank",
    "equivariant_triple",
    "is_orbitally_separated",
    "is_os_strongly_periodic",
    "is_strongly_periodic",
    "lift",
    "make_type_m_pattern",
    "quotient_diagram",
    "random_pattern",
    "set_event_sign",
    "smooth_event",
    "validate_pattern",
    "winding_numbers",
    # verify
    "SuiteConfig",
    "SuiteResult",
    "VerificationReport",
    "check_lifted_skein_congruence",
    "check_low_coefficient_vanishing",
    "check_matrix_route_agreement",
    "check_period_two_counterexample",
    "check_split_divisibility",
    "check_type_m_lowest_coefficient",
    "hopf_quotient_pattern",
    "replay",
    "run_suite",
]
