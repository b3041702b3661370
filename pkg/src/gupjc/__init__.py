"""Simulator and analysis toolkit for the GUP-corrected Jaynes-Cummings model.

Submodules:

- ``fock``: truncated Fock-space states, ladder operators, exact evolution
- ``gup``: GUP parameters, derived coefficients, Hamiltonian builders
- ``dynamics``: resonant Rabi dynamics and the corrected Rabi frequency
- ``dispersive``: large-detuning evolution and photon-added coherent states
- ``wigner``: Wigner functions and Wigner-difference maps
- ``rwa_validity``: perturbative validity ratios for the rotating-wave model
- ``cli``: command-line front end with reproducible run artifacts
"""

__version__ = "0.1.0"

from .constants import HBAR, C_LIGHT, PLANCK_LENGTH, PLANCK_MASS
from .errors import (
    DegenerateModelError,
    DispersiveRegimeError,
    GupJcError,
    IntegrationError,
    LinearityError,
    NonHermitianError,
    SingularDenominatorError,
    TruncationError,
)
from .fock import (
    AtomFieldState,
    FockVector,
    OperatorMatrix,
    build_annihilation,
    build_creation,
    build_number,
    coherent_state,
    evolve_atom_field,
    evolve_fock,
    evolve_on_grid,
    fock_state,
    laguerre,
    matrix_exponential_apply,
    photon_added_coherent_state,
)
from .gup import (
    GupCoefficients,
    GupParams,
    InteractionConfig,
    build_full_interaction_hamiltonian,
    build_modified_free_field,
    build_rwa_hamiltonian,
    derive_coefficients,
    length_scale_bounds,
)
from .dynamics import (
    RabiSolution,
    amplitude_angular_frequency,
    analytic_amplitudes,
    atomic_inversion,
    rabi_shift,
    validate_against_numeric,
)
from .dispersive import (
    DispersiveConfig,
    PhotonAddedDecomposition,
    build_effective_hamiltonian,
    commutator_check,
    decomposition_field_state,
    dyson_consistency_check,
    evolve_dispersive_exact,
    photon_added_decomposition,
)
from .wigner import (
    GridSpec,
    WignerGrid,
    wigner_difference,
    wigner_of_state,
    wigner_precision_ratio,
)
from .rwa_validity import (
    ZetaMap,
    ZetaMapSpec,
    first_order_amplitudes,
    perturbation_cross_check,
    time_averaged_magnitudes,
    zeta_lq,
    zeta_map,
    zeta_rq,
)
