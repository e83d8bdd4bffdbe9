"""knotdeform: exact arithmetic for SL2 representations of 2-bridge knot
groups -- Riley polynomials, character varieties, pseudo-representation
axioms, and explicit universal deformations over truncated local rings.
"""

from ._kernels import BACKEND as kernel_backend
from .charvariety import (
    CurveModel,
    TracePolynomial,
    TraceReducer,
    all_reduced_words,
    character_point,
    contains_point,
    curve_model,
    trace_reduce,
)
from .deform import (
    DeformationData,
    character_check,
    deformation_data,
    deformation_matrices,
    hensel_u,
    ramified_check,
    specialization_point,
    specialize,
    verify_deformation,
)
from .errors import KnotDeformError
from .polynomials import (
    BiPoly,
    LaurentBiPoly,
    UniPoly,
    discriminant,
    resultant,
    substitute_u,
    symmetric_reduce,
)
from .pseudorep import (
    PseudoRepTable,
    RelationGenerator,
    WordSet,
    check_axioms_C,
    check_axioms_P,
    equivalence_harness,
    relation_ideal_truncated,
    trace_table,
)
from .riley import (
    Representation,
    RileyData,
    find_conjugator,
    is_abs_irreducible,
    riley_data,
    riley_rep,
    riley_roots,
    valid_knots,
)
from .rings import (
    HbarTruncRing,
    PadicTruncRing,
    PrimeField,
    Rationals,
    RingElement,
    make_ring,
    residue_field,
    teichmuller_lift,
)
from .series import (
    TruncSeries,
    divide_by_var_power,
    newton_root,
    series_invert,
    series_sqrt,
    to_ramified,
)
from .words import (
    FreeWord,
    SL2Matrix,
    TwoBridgeKnot,
    epsilon_sequence,
    evaluate_word,
    schubert_word,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BiPoly",
    "CurveModel",
    "DeformationData",
    "FreeWord",
    "HbarTruncRing",
    "KnotDeformError",
    "LaurentBiPoly",
    "PadicTruncRing",
    "PrimeField",
    "PseudoRepTable",
    "Rationals",
    "RelationGenerator",
    "Representation",
    "RileyData",
    "RingElement",
    "SL2Matrix",
    "TracePolynomial",
    "TraceReducer",
    "TruncSeries",
    "TwoBridgeKnot",
    "UniPoly",
    "WordSet",
    "all_reduced_words",
    "character_check",
    "character_point",
    "check_axioms_C",
    "check_axioms_P",
    "contains_point",
    "curve_model",
    "deformation_data",
    "deformation_matrices",
    "discriminant",
    "divide_by_var_power",
    "epsilon_sequence",
    "equivalence_harness",
    "evaluate_word",
    "find_conjugator",
    "hensel_u",
    "is_abs_irreducible",
    "kernel_backend",
    "make_ring",
    "newton_root",
    "ramified_check",
    "relation_ideal_truncated",
    "residue_field",
    "resultant",
    "riley_data",
    "riley_rep",
    "riley_roots",
    "schubert_word",
    "series_invert",
    "series_sqrt",
    "specialization_point",
    "specialize",
    "substitute_u",
    "symmetric_reduce",
    "teichmuller_lift",
    "to_ramified",
    "trace_reduce",
    "trace_table",
    "valid_knots",
    "verify_deformation",
]
