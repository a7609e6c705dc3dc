"""Bayesian inverses of unital qubit channels.

The package decides when a unital qubit channel admits a Bayesian
inverse with respect to a prior state, constructs that inverse
(coefficients, Choi matrix, Kraus operators), certifies the resulting
two-time expectation symmetry, and sweeps channel families to map out
feasibility regions.
"""

from .bayes import (
    FeasibilityReport,
    InverseRecord,
    NoInverse,
    PseudoDensityMatrix,
    adjoint_is_inverse,
    analytic_inverse,
    bayes_residual,
    bayesian_inverse,
    gamel_report,
    is_unscathed,
    solve_anticommutator,
    star_product,
    two_time_expectation,
    two_time_projector,
    unscathed_residuals,
)
from .channels import (
    BlochState,
    ChannelRep,
    PauliChannel,
    adjoint,
    apply,
    apply_operator,
    choi_from_jam,
    compose,
    fujiwara_algoet,
    is_cptp,
    jam_from_choi,
    jamiolkowski,
    kraus_from_choi,
    rotation_from_su2,
    transport_inverse,
    unital_to_pauli,
)
from .errors import (
    EigenvalueOnBoundaryError,
    InternalCPViolationError,
    MonotonicityWarning,
    NonUniqueSolutionWarning,
    NotCPTPError,
    NotHermitianError,
    NotPSDError,
    NotUnitalError,
    QubitRetroError,
    RankDeficientError,
    SingularSError,
)
from .linalg import (
    PAULIS,
    anticommutator,
    herm_eig,
    partial_transpose,
    pauli_expand,
    pauli_reconstruct,
    swap_matrix,
    tensor,
)
from .scans import (
    RegionCell,
    ScanGrid,
    ThreeEntrySummary,
    bb84_channel,
    boundary_chi,
    depolarizing_lambda,
    depolarizing_quantities,
    emit_csv,
    emit_svg,
    scan_bb84,
    scan_depolarizing,
    scan_three_entry,
)
from .serialize import (
    channel_from_json,
    channel_to_json,
    dump_json,
    load_channel,
    load_state,
    matrix_from_pairs,
    matrix_to_pairs,
    state_from_json,
    state_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # channels
    "BlochState",
    "PauliChannel",
    "ChannelRep",
    "jamiolkowski",
    "choi_from_jam",
    "jam_from_choi",
    "kraus_from_choi",
    "apply",
    "apply_operator",
    "adjoint",
    "compose",
    "is_cptp",
    "fujiwara_algoet",
    "rotation_from_su2",
    "unital_to_pauli",
    "transport_inverse",
    # bayes
    "PseudoDensityMatrix",
    "FeasibilityReport",
    "InverseRecord",
    "NoInverse",
    "star_product",
    "two_time_expectation",
    "two_time_projector",
    "bayes_residual",
    "is_unscathed",
    "unscathed_residuals",
    "adjoint_is_inverse",
    "gamel_report",
    "analytic_inverse",
    "solve_anticommutator",
    "bayesian_inverse",
    # scans
    "ScanGrid",
    "RegionCell",
    "ThreeEntrySummary",
    "depolarizing_lambda",
    "depolarizing_quantities",
    "bb84_channel",
    "scan_depolarizing",
    "scan_bb84",
    "scan_three_entry",
    "boundary_chi",
    "emit_csv",
    "emit_svg",
    # linalg
    "PAULIS",
    "tensor",
    "anticommutator",
    "swap_matrix",
    "partial_transpose",
    "pauli_expand",
    "pauli_reconstruct",
    "herm_eig",
    # serialize
    "matrix_to_pairs",
    "matrix_from_pairs",
    "channel_to_json",
    "channel_from_json",
    "state_to_json",
    "state_from_json",
    "load_channel",
    "load_state",
    "dump_json",
    # errors
    "QubitRetroError",
    "NotHermitianError",
    "NotPSDError",
    "NotUnitalError",
    "NotCPTPError",
    "InternalCPViolationError",
    "SingularSError",
    "EigenvalueOnBoundaryError",
    "RankDeficientError",
    "NonUniqueSolutionWarning",
    "MonotonicityWarning",
]
