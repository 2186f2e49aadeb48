"""Exact certification of surjective arboreal Galois representations for
quadratic maps x^2 + c over Q with strictly preperiodic base points."""

from .backorbit import RenderConfig, points_csv, render, sample_backward
from .critorbit import (
    AdjustedOrbit,
    CongruenceReport,
    Decomposition1,
    Decomposition2,
    SignPrediction,
    ValuationCheck,
    check_valuations,
    congruence_check,
    d_sequence,
    decompose1,
    decompose2,
    numerator_recursion,
    orbit_report,
    sign_predict,
)
from .dynamics import (
    Family,
    OrbitInfo,
    QuadMap,
    custom,
    detect_orbit,
    family1,
    family2,
    iterate,
    poonen_fixed,
    poonen_period2,
)
from .errors import DegenerateBasePoint, InvariantViolation
from .exactnum import (
    Rational,
    factor_refine,
    format_rational,
    is_perfect_square,
    jacobi,
    parse_rational,
    perfect_power_decompose,
    rational_is_square,
    v_p,
)
from .independence import (
    CoprimeBasis,
    IndependenceResult,
    SquareClassVector,
    StructuredResult,
    brute_force_independent,
    square_classes,
    structured_independent_family1,
    two_independent,
)
from .search import SearchConfig, SearchSummary, enumerate_rationals, search
from .verdict import (
    DeltaE,
    Verdict,
    VerdictStatus,
    certify,
    certify_family1,
    certify_family2,
    compute_delta_e,
)

__version__ = "0.1.0"

__all__ = [
    "AdjustedOrbit",
    "CongruenceReport",
    "CoprimeBasis",
    "Decomposition1",
    "Decomposition2",
    "DegenerateBasePoint",
    "DeltaE",
    "Family",
    "IndependenceResult",
    "InvariantViolation",
    "OrbitInfo",
    "QuadMap",
    "Rational",
    "RenderConfig",
    "SearchConfig",
    "SearchSummary",
    "SignPrediction",
    "SquareClassVector",
    "StructuredResult",
    "ValuationCheck",
    "Verdict",
    "VerdictStatus",
    "brute_force_independent",
    "certify",
    "certify_family1",
    "certify_family2",
    "check_valuations",
    "compute_delta_e",
    "congruence_check",
    "custom",
    "d_sequence",
    "decompose1",
    "decompose2",
    "detect_orbit",
    "enumerate_rationals",
    "factor_refine",
    "family1",
    "family2",
    "format_rational",
    "is_perfect_square",
    "iterate",
    "jacobi",
    "numerator_recursion",
    "orbit_report",
    "parse_rational",
    "perfect_power_decompose",
    "points_csv",
    "poonen_fixed",
    "poonen_period2",
    "rational_is_square",
    "render",
    "sample_backward",
    "search",
    "sign_predict",
    "square_classes",
    "structured_independent_family1",
    "two_independent",
    "v_p",
]
