"""Almost Gorenstein tests for Rees algebras of parameter and socle ideals."""

from .artinian import (
    LocalIdeal,
    colon,
    contains_ideal,
    ideal_equal,
    linear_rank,
    local_length,
    membership,
    mu,
    mu_subquotient,
    socle_dimension,
    socle_ideal,
    stabilized_quotient,
)
from .decider import (
    AG_PROPER,
    GORENSTEIN,
    NOT_AG,
    UNKNOWN,
    AGVerdict,
    decide,
    socle_rees_type,
)
from .eagon_northcott import build_en_complex, canonical_presentation, last_differential, verify_complex
from .errors import (
    HypothesisError,
    InputError,
    InternalInconsistency,
    NotPrimaryError,
    ParseError,
    ReesAGError,
    RingMismatchError,
    ShapeError,
)
from .localideal import classify_parameter_ideal, delta_construction, parameter_ideal, reduction_check
from .oracle import run_suite, verify_identity
from .polyring import QQ, Field, Polynomial, RingDescriptor, parse_polynomial, polynomial_ring

__version__ = "0.1.0"
