"""Mixed-state and off-diagonal geometric phases for thermal spin systems."""
from .exceptions import (
    DegenerateParameters,
    DomainError,
    GeometricPhaseError,
    IndexOutOfRange,
    InvalidDensityOperator,
    NoConvergence,
    NodalPoint,
    NonAntiHermitianGenerator,
    NotHermitian,
    NotOrthonormal,
    NotPSD,
    StepCountTooSmall,
)
from .holonomy import (
    FamilyMember,
    PhaseFactor,
    TransportSpec,
    diagonal_gp,
    noninterfering_family,
    off_diagonal_gp,
    permutation_unitary,
    phase_of,
    supplementary_operator,
    transport_block_closed,
    transport_block_ordered,
)
from .hydrogen import (
    ModelParams,
    canonical_eigenbasis,
    geometric_phase,
    hyperfine_hamiltonian,
    mixedness_closed_form,
    period,
    zeeman_term,
)
from .matkernel import (
    SpectralDecomposition,
    hermitian_eig,
    projector_from_columns,
    psd_root,
    spectral_function,
    unitary_exp,
)
from .quantum import (
    DensityOperator,
    EigenspaceFamily,
    decompose_density,
    evolve,
    gibbs_state,
    kron,
    mixedness,
    spin_half,
    thermal_state,
)

__version__ = "0.1.0"
