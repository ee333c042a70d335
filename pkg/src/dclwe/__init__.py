"""Divide-and-conquer LWE: classical simulation and analysis toolkit.

The package splits an n-dimensional learning-with-errors instance into
single-coordinate subproblems by modular elimination, simulates the
transform kernel that reads a coordinate off a batch of reduced pairs,
verifies candidates with repeated residual tests, and checks every
probability claim against closed-form oracles.
"""

from .errors import (
    BoundTooLarge,
    ConfigError,
    DclweError,
    DegenerateTest,
    DuplicateInput,
    EmptyResult,
    InfeasibleParameters,
    InvalidLength,
    InvalidModulus,
    InvariantViolation,
    SingularMatrix,
    TestSourceExhausted,
    ZeroInverse,
)
from .fq import (
    MODULUS_CEILING,
    PrimeField,
    centered,
    is_prime,
    mat_inverse,
    mat_mul,
    mat_vec,
    solve_noiseless,
)
from .instance import (
    GAUSSIAN,
    UNIFORM,
    ErrorDistribution,
    LweInstance,
    Sample,
    gen_sample,
    gen_samples,
    gen_secret,
    make_instance,
    read_samples,
    read_secret,
    sample_error,
    sample_errors,
    samples_to_arrays,
    write_samples,
    write_secret,
)
from .oracle import (
    FORM_DIVIDED,
    FORM_FULL,
    SCHEME_BUCKET,
    SCHEME_PRIMITIVE,
    BoundReport,
    WrongAcceptBound,
    baseline_coordinate_rate,
    bound_report,
    classical_baseline_solve,
    exact_success_probability,
    lower_bound_p,
    prob_i_bound,
    prob_iii_bound,
    qram_cost,
    restricted_ridge_sum,
)
from .qsim import (
    NORM_TOL,
    REGISTER_A,
    REGISTER_D,
    MeasurementOutcome,
    TwoQuditState,
    bv_kernel,
    dump_state,
    extract_candidate,
    kernel_distribution,
    measure,
    prepare_sample_state,
    qft_matrix,
    qft_register,
    sample_bv_outcome,
    sample_bv_outcomes,
)
from .reduce import (
    ReducedBatch,
    ReducedPair,
    dump_batch,
    elimination_batch,
    kappa_observed,
    make_test_sample,
    reduce_to_coordinate,
    synth_reduced_batch,
)
from .rng import derive_rng
from .solver import (
    MODE_CONTROLLED,
    MODE_ELIMINATION,
    OUTCOME_FAILURE,
    OUTCOME_SUCCESS,
    OUTCOME_WRONG_ACCEPT,
    CoordinateStats,
    SolveOutcome,
    SolveParameters,
    choose_parameters,
    controlled_sources,
    elimination_sources,
    solve,
    solve_coordinate,
)
from .verify import (
    FalseAcceptBound,
    TestVerdict,
    delta,
    false_accept_probability,
    m_trial_test,
    single_trial_pass_rate,
)

__version__ = "0.1.0"
