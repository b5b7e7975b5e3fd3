"""Log-Sobolev-1 constants of generalized depolarizing semigroups and the
entropy inequalities that follow from them."""

__version__ = "0.1.0"

from .errors import (
    ArgumentError,
    ConvergenceError,
    LsobError,
    PreconditionError,
    ResourceError,
    ValidationError,
)
from .matcore import (
    DensityMatrix,
    HermitianMatrix,
    Spectrum,
    as_density,
    commuting_state,
    eigh,
    jacobi_eigh,
    matrix_log,
    partial_trace,
    tensor,
    tensor_power,
    trace_norm,
)
from .entropy import (
    Q_ratio,
    binary_relative_entropy,
    continuity_ratio_scan,
    entropy_production_depolarizing,
    entropy_production_fd,
    q_ratio,
    relative_entropy,
    relative_entropy_integral,
    von_neumann_entropy,
)
from .depolarize import (
    DepolarizingChannel,
    liouvillian_apply,
    semigroup_apply,
    tensor_semigroup_apply,
)
from .logsobolev import (
    Alpha1Result,
    alpha1_bruteforce,
    alpha1_depolarizing,
    alpha1_lower_bound,
    best_commuting_value,
    minimizer_two_ratio_check,
    mh_formula,
    unimodality_scan,
)
from .pinsker import (
    PinskerReport,
    balance_pi,
    improved_pinsker_constant,
    min_relent_at_distance,
    mixing_time_bound,
    phi,
    tightness_sequence,
)
from .concavity import (
    BoundReport,
    bound_report,
    c_exponent,
    combined_trace_bound,
    concavity_gap,
    kim_bounds,
    thm2_bound,
)
from .shearer import CoverFamily, k_uniform_slack, shearer_slack, subset_entropy, theorem3_slack
from .sampler import SamplerConfig, Stream, random_density
