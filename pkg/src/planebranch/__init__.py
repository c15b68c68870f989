"""Exact invariants of plane algebroid branches.

Truncated rational power series, numerical semigroups, characteristic
exponents, multiplicity sequences, Apery bases, semigroup-ring
presentations, and brute-force verification oracles, with a CLI.
"""

from .branch import (
    AperyBasisElement,
    CharExponents,
    EquivalenceEvidence,
    PlaneBranch,
    WitnessGenerator,
    formally_equivalent,
)
from .errors import (
    BaseNotInSemigroup,
    BranchError,
    DuplicateVariable,
    EpsilonBeyondPrecision,
    GcdNotOne,
    InsufficientPrecision,
    InternalMismatch,
    LiftNotSemigroup,
    NonMonic,
    NonPositiveExponent,
    NotAPerfectPower,
    NotMember,
    NotNonIncreasing,
    NotNumericalSemigroup,
    NotPlane,
    ParseError,
    SemigroupError,
    SeriesError,
    ZeroUpToPrecision,
)
from .multseq import (
    MultiplicitySequence,
    euclid_M,
    from_char_exponents,
    is_branch_admissible,
    is_plane_admissible,
)
from .oracle import ValueTable, brute_apery, brute_semigroup, valuation_oracle
from .parser import (
    parse_branch,
    parse_multseq,
    parse_semigroup,
    render_branch,
    render_json,
    render_multseq,
    render_semigroup,
    render_series,
)
from .presentation import (
    ExponentVector,
    GeneratingFunction,
    Presentation,
    expand_gf,
    generating_function,
    graded_relations,
    minimals,
    normal_form,
    relations,
)
from .semigroup import (
    AperySet,
    DescentFailure,
    NumericalSemigroup,
    apery_set,
    conductor_closed_forms,
    d_conductor,
    descend,
    from_generators,
    from_multseq,
    is_plane,
    is_plane_iterative,
    is_symmetric,
    lift,
    realize,
    semigroup_from_apery,
)
from .series import DVector, TruncatedSeries, dvector, eval_poly

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
