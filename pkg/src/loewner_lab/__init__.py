"""loewner-lab: operator means, positive linear maps, and monotone function
calculus on positive definite matrices, with randomized certificate suites
that verify, hunt, and probe a family of mean-reversal inequalities."""

from .certificates import (
    ALL_INEQUALITIES,
    AUDIT_INEQUALITIES,
    NON_AUDIT_INEQUALITIES,
    Certificate,
    ando_check,
    check_alpha_scaling,
    check_diaz_metcalf,
    check_gruss,
    check_kantorovich_f,
    check_klamkin_mclenaghan,
    check_main_decreasing,
    check_main_monotone,
    check_midpoint,
    check_norm_ratio,
    check_polya_szego,
    check_sandwich_lemma,
    check_specht_bound,
    check_squared,
    check_squared_consequences,
    check_strengthened_remark,
)
from .errors import (
    ConditionCapError,
    DimensionMismatchError,
    DomainError,
    EigenSolverError,
    HypothesisError,
    LoewnerLabError,
    NotPositiveDefiniteError,
    NotUnitalError,
)
from .generate import (
    BoundedPair,
    SandwichPair,
    SplitMix64,
    derive_seed,
    estimate_sandwich,
    quadratic_form_slack,
    random_bounded_pair,
    random_orthogonal,
    random_sandwich_pair,
    random_spd,
)
from .kernels import (
    ARITHMETIC,
    GEOMETRIC,
    HARMONIC,
    LOG1P,
    LOGARITHMIC,
    SQUARE,
    MonotoneFunction,
    ScalarKernel,
    default_grid,
    eval_kernel,
    heinz,
    inv_power,
    is_symmetric_kernel,
    kernel_catalog,
    kernel_dominance,
    loewner_matrix_psd_test,
    parse_function,
    parse_kernel,
    power,
    rational,
    sandwich_constant,
    shifted_inverse,
    specht_ratio,
)
from .maps import (
    CongruenceMap,
    IdentityMap,
    KrausSumMap,
    MapSpec,
    MixtureMap,
    NormalizedTraceMap,
    PinchingMap,
    apply_map,
    check_unital,
    map_catalog,
    parse_map,
)
from .means import MeanContext, arithmetic, geometric, harmonic, kernel_mean, mean
from .spectral import (
    FROBENIUS,
    OPERATOR,
    TRACE,
    LoewnerVerdict,
    NormKind,
    SpectralDecomposition,
    SymMatrix,
    as_sym,
    decompose,
    ky_fan,
    loewner_compare,
    loewner_slack,
    matrix_function,
    op_norm,
    parse_norm,
    schatten,
    spectrum_bounds,
    ui_norm,
)
from .suite import (
    Report,
    SuiteConfig,
    hunt_counterexamples,
    load_matrix,
    load_report,
    probe_tightness,
    recheck,
    run_suite,
    save_matrix,
    write_report,
)

__version__ = "0.1.0"
