"""Certificates for non-speciality of plane fat point systems and for
containments ``I^(2r) ⊆ M^r I^r`` of fat points ideals."""

from .core import (
    ContractViolation,
    HypothesisNotMet,
    MalformedSequenceError,
    MultiplicitySequence,
    QuadraticBound,
    cmp_int_vs_quadratic,
    dominated_by,
    edim,
    parse_int_list,
    size,
    vdim,
)
from .reduction import ReductionCertificate, ReductionFailure, ReductionStep, classify_failure, reduce_chain, reduce_once
from .speciality import (
    OrderStrategy,
    SpecialityVerdict,
    Status,
    criterion_kryterium,
    order_kryterium,
    prove_h1_regular,
    reg_upper_bound,
    staircase,
)
from .containment import (
    ContainmentVerdict,
    check_comb1,
    check_drugie,
    check_hopefullylast,
    check_nowa2,
    check_zastosowanie,
    cremona_transform,
    find_d_gwiazdka,
    rho,
    theorem_b_dispatch,
)

__version__ = "0.1.0"
