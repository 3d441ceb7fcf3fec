"""Choi-type operators for pair-sum maps on a standard-form factor.

The factor module fixes the representation (weights, standard vector,
state projection); projection_algebra does symbolic calculus with
finite-rank elements around that projection; maps ties pair-sum maps on
M_n to their Choi and dual Choi operators, Kraus decompositions and the
five-way complete positivity check; positivity certifies plain positivity
through product-vector pairings.
"""
from .errors import (
    BadWeights,
    ChoiFactorError,
    DimensionMismatch,
    FileFormatError,
    InternalDisagreement,
    NotAProjection,
    NotHermitian,
    NotInSpan,
    NotPositive,
    NotRankOneProjection,
    NotSelfAdjoint,
    NotTracial,
    RepMismatch,
    UnsupportedDimension,
    ZeroProjection,
)
from .factor import (
    FactorRep,
    embed,
    implementer_from_vector,
    make_factor,
    modular_conjugate,
    state_projection,
    vector_state,
)
from .formats import (
    dumps,
    load_element_file,
    load_map_file,
    map_doc,
    matrix_doc,
    parse_element_file,
    parse_map_file,
    vector_doc,
)
from .maps import (
    AdjointSymmetryReport,
    CpReport,
    ExtensionReport,
    KrausDecomposition,
    PairSumMap,
    adjoint_choi_symmetry,
    adjoint_map,
    apply_map,
    check_cp,
    choi,
    conjugation_map,
    dual_choi,
    extension_positivity_check,
    identity_map,
    kraus_apply,
    kraus_decompose,
    map_from_dual_choi,
    map_scale,
    map_sum,
    trace_map,
    transfer,
    transpose_map,
)
from .positivity import (
    PositivityCertificate,
    brute_product_min,
    check_positive,
    product_pairing,
    seesaw_product_min,
)
from .projection_algebra import (
    PairSumElement,
    SpectralDecomposition,
    compress,
    decomposition_element,
    element_add,
    element_adjoint,
    element_product,
    element_scale,
    identity_element,
    materialize,
    rank_one_implementer,
    rank_one_subprojection,
    spectral_decompose,
    zero_element,
)

__version__ = "0.1.0"

__all__ = [
    "AdjointSymmetryReport",
    "BadWeights",
    "ChoiFactorError",
    "CpReport",
    "DimensionMismatch",
    "ExtensionReport",
    "FactorRep",
    "FileFormatError",
    "InternalDisagreement",
    "KrausDecomposition",
    "NotAProjection",
    "NotHermitian",
    "NotInSpan",
    "NotPositive",
    "NotRankOneProjection",
    "NotSelfAdjoint",
    "NotTracial",
    "PairSumElement",
    "PairSumMap",
    "PositivityCertificate",
    "RepMismatch",
    "SpectralDecomposition",
    "UnsupportedDimension",
    "ZeroProjection",
    "adjoint_choi_symmetry",
    "adjoint_map",
    "apply_map",
    "brute_product_min",
    "check_cp",
    "check_positive",
    "choi",
    "compress",
    "conjugation_map",
    "decomposition_element",
    "dual_choi",
    "dumps",
    "element_add",
    "element_adjoint",
    "element_product",
    "element_scale",
    "embed",
    "extension_positivity_check",
    "identity_element",
    "identity_map",
    "implementer_from_vector",
    "kraus_apply",
    "kraus_decompose",
    "load_element_file",
    "load_map_file",
    "make_factor",
    "map_doc",
    "map_from_dual_choi",
    "map_scale",
    "map_sum",
    "materialize",
    "matrix_doc",
    "modular_conjugate",
    "parse_element_file",
    "parse_map_file",
    "product_pairing",
    "rank_one_implementer",
    "rank_one_subprojection",
    "seesaw_product_min",
    "spectral_decompose",
    "state_projection",
    "trace_map",
    "transfer",
    "transpose_map",
    "vector_doc",
    "vector_state",
    "zero_element",
]
