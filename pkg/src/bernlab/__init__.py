"""Numerical laboratory for L_p inequalities on polynomials over the unit circle."""

__version__ = "0.1.0"

from .polycore import (  # noqa: F401
    MAX_DEGREE,
    DegreeError,
    InconsistentRootsError,
    Poly,
    PolyJSONError,
    RootMultiset,
    ZERO_CONST,
    ZeroPolynomialError,
    blaschke_flip,
    conj_reciprocal,
    derivative,
    eval_at,
    from_roots,
    is_self_inversive,
    is_zero_const,
    poly_from_json,
    poly_to_json,
    rotate,
    scale,
)
from .roots import LocationStatus, RootReport, ZeroLocation, classify, find_roots  # noqa: F401
from .norms import (  # noqa: F401
    NormExponent,
    NormInfo,
    NormKind,
    RootFindingError,
    lp_norm,
    lp_norm_info,
    mahler_measure,
    mahler_measure_info,
    mahler_quadrature,
    mahler_quadrature_info,
    norm,
    norm_info,
    one_plus_z_norm_info,
    sup_norm,
    sup_norm_info,
)
from .operators import (  # noqa: F401
    DominanceReport,
    OperatorParams,
    conj_side,
    d2_compose,
    d_alpha,
    pointwise_dominance,
)
from .inequalities import (  # noqa: F401
    CheckReport,
    DegenerateRHSError,
    Gate,
    GateStatus,
    InequalityId,
    Verdict,
    check,
    check_classical,
    check_cor1,
    check_cor2,
    check_thm1_first,
    check_thm1_second,
    check_thm2_first,
    check_thm2_second,
    check_thm3,
)
from .explore import (  # noqa: F401
    AlphaMapResult,
    AlphaPolicy,
    ExtremalResult,
    FuzzConfig,
    FuzzReport,
    GeneratorKind,
    alpha_map,
    extremal_search,
    fuzz,
    gen_poly,
    self_inversive_from_half,
)
