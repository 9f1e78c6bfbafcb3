"""Frank-Wolfe solvers for objectives that mix a diminishing-returns
part with a concave part over solvable convex bodies."""

from .core import (
    DEFAULT_TOLS,
    ObjectivePair,
    OracleCounts,
    ProblemInstance,
    SolverReport,
    Tolerances,
    as_vector,
    evaluate_objective,
    objective_gradient,
)
from .errors import (
    ConfigurationError,
    DimensionMismatch,
    DomainError,
    FwsubmixError,
    OracleFailure,
    ParseError,
    SimplexError,
    UnsupportedRegion,
)
from .objectives import (
    DOptimalDesign,
    LogBarrier,
    NonObliviousWrapper,
    QuadraticObjective,
    SimilarityConcave,
    SoftmaxExtension,
    doptimal_problem,
    grid_points_2d,
    make_bound_instance,
    make_doptimal_instance,
    make_gaussian_kernel,
    make_qp_instance,
    qp_problem,
    shrink_epsilon,
)
from .regions import Box, Cardinality, LmoResult, Polytope
from .solvers import (
    SOLVERS,
    SolverConfig,
    concave_fw_initializer,
    gradient_combining_fw,
    greedy_fw,
    measured_greedy_fw,
    non_oblivious_fw,
    non_oblivious_iterations,
    pga,
    projected_gradient_ascent,
    standard_fw,
)
from .verify import (
    CheckReport,
    GridOracleResult,
    GuaranteeBound,
    GuaranteeCheck,
    check_concave,
    check_dr_submodular,
    check_guarantee,
    estimate_smoothness,
    finite_diff_grad,
    gradient_combining_bound,
    gradient_rel_error,
    greedy_bound,
    grid_maximize,
    measured_bound,
    non_oblivious_bound,
)

__version__ = "0.1.0"
