"""Mirror-symmetric spin-chain channels: spectral design, exact transfer
dynamics, and boundary entanglement."""

from .chains import (
    BasisState,
    ChainSpec,
    Model,
    hamiltonian_single_excitation,
    validate_mirror_symmetry,
)
from .design import (
    CouplingSolution,
    DesignRequest,
    Parity,
    design_closed_form,
    design_general,
    reconstruct_from_spectrum,
    reduce_half,
    target_spectrum,
)
from .dynamics import (
    TransferReport,
    fidelity_scan,
    peak_fidelity,
    transition_amplitude,
    verify_perfect_transfer,
)
from .entanglement import (
    TwoQubitState,
    boundary_pair_state,
    concurrence_pure_boundary,
    concurrence_thermal_xxx4,
    sector_gibbs_weights,
    wootters_oracle,
)
from .errors import (
    AsymmetricInput,
    ConvergenceFailure,
    DuplicateEigenvalue,
    InvalidParams,
    InvalidRange,
    InvalidState,
    NotAntisymmetric,
    NumericalError,
    ReconstructionFailure,
    SpinChannelError,
    ValidationError,
)
from .tridiag import (
    EigenDecomposition,
    JacobiMatrix,
    char_poly,
    eigen_decompose,
    eval_char_poly,
    spectrum_is_antisymmetric,
)

__version__ = "0.1.0"

__all__ = [
    "BasisState",
    "ChainSpec",
    "Model",
    "hamiltonian_single_excitation",
    "validate_mirror_symmetry",
    "CouplingSolution",
    "DesignRequest",
    "Parity",
    "design_closed_form",
    "design_general",
    "reconstruct_from_spectrum",
    "reduce_half",
    "target_spectrum",
    "TransferReport",
    "fidelity_scan",
    "peak_fidelity",
    "transition_amplitude",
    "verify_perfect_transfer",
    "TwoQubitState",
    "boundary_pair_state",
    "concurrence_pure_boundary",
    "concurrence_thermal_xxx4",
    "sector_gibbs_weights",
    "wootters_oracle",
    "AsymmetricInput",
    "ConvergenceFailure",
    "DuplicateEigenvalue",
    "InvalidParams",
    "InvalidRange",
    "InvalidState",
    "NotAntisymmetric",
    "NumericalError",
    "ReconstructionFailure",
    "SpinChannelError",
    "ValidationError",
    "EigenDecomposition",
    "JacobiMatrix",
    "char_poly",
    "eigen_decompose",
    "eval_char_poly",
    "spectrum_is_antisymmetric",
    "__version__",
]
