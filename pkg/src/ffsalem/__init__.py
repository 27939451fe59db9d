"""Desk-scale Fourier analysis and shattering searches over prime-field planes."""

__version__ = "0.1.0"

from .analysis import (
    BilinearReport,
    ConvolutionTable,
    CubeWitness,
    EdgeCountReport,
    IntersectionProfile,
    RhombusWitness,
    WeightTable,
    bilinear_form,
    build_cube,
    convolve,
    distance_set,
    edge_count,
    find_rhombus,
    intersection_profile,
    prune,
    triple_count,
)
from .curves import (
    CanonicalForm,
    Classification,
    CurveHandle,
    Quadratic,
    classify_quadratic,
    conic,
    make_curve,
    paraboloid,
    poly_graph,
    reduce_quadratic,
    sphere,
    symmetrized_parabola,
)
from .errors import (
    BadDegree,
    BudgetExceeded,
    ConstantPolynomial,
    DegenerateConic,
    DegenerateSize,
    DegreeDivisibleByP,
    DimensionMismatch,
    EmptySet,
    NotSymmetric,
    PointSetParseError,
    SingularMatrix,
    SizeOutOfRange,
    ZeroParameter,
)
from .field import (
    CharacterEvaluator,
    FieldContext,
    gauss_sum,
    is_prime,
    kloosterman,
    legendre,
    weil_poly_sum,
)
from .pointset import (
    PointSet,
    SalemParams,
    SalemReport,
    SpectrumTable,
    dump_points,
    fourier_spectrum,
    load_points,
    salem_bound,
    salem_report,
)
from .randomsets import (
    GENERATOR_NAME,
    HayesReport,
    SymmetrizeReport,
    TrialSummary,
    hayes_check,
    monte_carlo,
    sample_subset,
    symmetrize,
    trial_seed,
)
from .shatter import (
    Exhaustive,
    RandomSearch,
    SearchOutcome,
    SearchStats,
    SearchStatus,
    ShatterProblem,
    ShatterWitness,
    VCBounds,
    construct_shatter3,
    shatter_search,
    vc_bounds,
    verify_witness,
    witness_for_points,
)

__all__ = [name for name in dir() if not name.startswith("_")]
