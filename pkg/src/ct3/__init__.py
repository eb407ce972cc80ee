"""Exact-arithmetic toolkit for threefold canonical thresholds.

Certified upper bounds via weighted blow-ups over smooth and compound
Du Val centers, plus executable pruning pipelines that classify which
threshold values survive on a rational interval.
"""

__version__ = "0.1.0"

from .blowup import (
    Certificate,
    Refusal,
    SingularityPresentation,
    certify_irreducible,
    discrepancy,
    index1_presentation,
    initial_form,
    model,
    monomial_weight,
    multiplicity,
    poly_weight,
    smooth_presentation,
)
from .classify import (
    AssumptionAReport,
    ClassifyReport,
    IntervalSpec,
    Survivor,
    UnionEntry,
    check_assumption_A,
    check_boundindex,
    check_sm_lower,
    classify_interval,
    half_plus_unit,
    union_report,
)
from .poly import (
    Monomial,
    NewtonDiagram,
    PolyError,
    PolySupport,
    diagram_contains,
    format_poly,
    gamma_plus,
    is_semi_invariant,
    make_support,
    parse_poly,
)
from .threshold import (
    AuxConstraint,
    BezoutSplit,
    CASplit,
    CtCandidate,
    DeltaData,
    NoCertifiedWeight,
    bezout_split,
    brieskorn_ct,
    ca_split,
    ct_upper_bound,
    delta_data,
    feasible_m,
    joint_feasible,
)
from .weights import (
    CAParams,
    CAnParams,
    CD1Params,
    CD2Params,
    CD2q1Params,
    CD2q2Params,
    FamilyBounds,
    FamilyError,
    QuotientAction,
    SmoothParams,
    WeightVec,
    admissible_multiplier,
    auxiliary_weight,
    dominates,
    domination_ratio,
    enumerate_family,
    family_weight,
    is_admissible,
)

__all__ = [name for name in dir() if not name.startswith("_")]
