"""Exact computations with orbifold signatures of Fenchel groups.

Euler characteristics, abelianizations, induced signatures of finite-index
covers, derived towers, explicit torsion-free cover chains and the checks the
3-step solvable quotient can perform.
"""
from .errors import (
    AbelianShape,
    BoundExceeded,
    ClassificationGap,
    DomainError,
    EmptyInput,
    FenchelError,
    HasTorsion,
    IdentityCover,
    InvalidPayload,
    InvalidPeriod,
    MalformedHom,
    NegativeParameter,
    NonIntegralGenus,
    NonSurjective,
    NotAffine,
    PerfectInput,
    TrivialGroupInput,
    TrivialInput,
    UnknownCommand,
    ValidationError,
    WrongShape,
    ZeroOneObstruction,
)
from .signature import (
    PARABOLIC_SIGNATURES,
    TABLE_1,
    AbelianInvariants,
    CurvatureClass,
    DMCurveData,
    InvariantsReport,
    Signature,
    abelian_period_condition,
    abelianization,
    classify_curvature,
    classify_nonhyperbolic,
    condition_star,
    dm_euler_characteristic,
    euler_characteristic,
    format_rational,
    free_rank,
    gcd_subset_products,
    invariants_report,
    is_affine,
    is_hyperbolic,
    is_perfect,
    is_trivial_group,
    lcm_gcd_identity,
    normalize_signature,
    sig,
    torsion_subgroup_order,
)
from .smith import invariant_factors, smith_normal_form
from .groups import FiniteAbelianGroup
from .covers import (
    AbelianHom,
    InducedSignatureResult,
    PermHom,
    enumerate_abelian_homs,
    enumerate_perm_homs,
    generators,
    induced_signature,
    induced_signature_abelian,
    regular_action,
    riemann_hurwitz_genus,
    verify_abelian_hom,
    verify_perm_hom,
)
from .tower import (
    Status,
    Tower,
    TowerStep,
    commutator_signature_01,
    derived_tower,
    m_derived_perfect,
    s4_uniqueness_scan,
    torsion_kernel_signature,
)
from .fenchel_nielsen import (
    CoverChain,
    CoverStep,
    certify_chain,
    cusp_growth_chain,
    fn_chain,
    m_delta_upper_bound,
)
from .step_invariants import (
    ChenData,
    Shape,
    affine_3step_check,
    affineness_equation,
    chen_ranks,
    derived_length_upto3,
    hyperbolic_3step_check,
    metabelian_torsion_free,
)

__version__ = "0.1.0"
