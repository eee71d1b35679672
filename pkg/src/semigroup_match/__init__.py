"""Finite semigroup analysis: Green's relations, egg-box structure, and
permutation/involution matchings onto inverses."""

from .errors import (
    CapExceededError,
    EntryRangeError,
    LiftFailureError,
    NotAssociativeError,
    NotOrthodoxError,
    NotRegularDClassError,
    NotRegularError,
    NotRegularMatrixError,
    SemigroupError,
    TableFormatError,
    TooLargeError,
)
from .factors import (
    BandDecomposition,
    PrincipalFactor,
    SimilarityVerdict,
    Subband,
    ZeroRectBand,
    h_quotient_band,
    maximal_rect_subbands,
    principal_factors,
    similarity_check,
)
from .green import (
    EggBox,
    GreenStructure,
    OmegaData,
    green_classes,
    is_combinatorial,
    omega_data,
)
from .matching import (
    DEFAULT_BRUTE_CAP,
    DEFAULT_INVOLUTION_CAP,
    CharacterizationReport,
    ClassSizeMismatch,
    ClauseResult,
    DClassVerdict,
    HallBruteResult,
    HallCertificate,
    Matching,
    MatchingCount,
    OrthodoxDecision,
    SearchExhausted,
    VerifyResult,
    count_permutation_matchings,
    decide_orthodox_matching,
    find_involution_matching,
    find_permutation_matching,
    formula_characterizations,
    hall_brute_force,
    lift_band_matching,
    orthodox_involution,
    verify_matching,
)
from .structure import (
    ClassificationFlags,
    InverseSets,
    InverseSquare,
    classify,
    find_inverse_square,
    gamma_structure,
    idempotents,
    inverse_sets,
    inverses_of,
    inverses_of_set,
    orthodoxy_witness,
)
from .table import (
    DEFAULT_RANK_CAP,
    DEFAULT_SIZE_CAP,
    BoolStructureMatrix,
    MulTable,
    direct_product,
    full_transformation,
    parse_table,
    rectangular_band,
    rees_matrix,
    render_table,
)

__version__ = "0.1.0"
