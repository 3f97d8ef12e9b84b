"""Collapse and revival, spin cat states and metrology for a qubit coupled to a big spin."""

__version__ = "0.1.0"

from .dicke import (
    BigSpinState,
    DickeBasis,
    FockState,
    SpinCoherentParams,
    collective_operator,
    commutator_defect,
    embed_to_fock,
    expectation,
    fock_coherent,
    poisson_convergence,
    spin_coherent,
)
from .dynamics import (
    TimeGrid,
    Trajectory,
    attractor_time,
    evolve,
    fidelity,
    linear_entropy,
    rabi_period,
    reduce_bigspin,
    reduce_qubit,
    sliding_envelope,
    state_at,
)
from .cat import (
    CatSpec,
    attractor_qubit_states,
    cat_state,
    conditional_evolution,
    fidelity_surface,
    fidelity_to_cat,
    fidelity_vs_time,
    initial_composite,
    reduced_bigspin_at,
)
from .errors import InvariantViolation
from .hamiltonians import (
    BlockDecomposition,
    CompositeState,
    ModelParams,
    block_decompose,
    build_jc_hamiltonian,
    build_spin_hamiltonian,
    composite_from_parts,
    excitation_operator,
)
from .metrology import (
    CrossSection,
    PhaseParams,
    cross_section,
    precision_surface,
    qfi_jy,
    qfi_jy_oracle,
    rotate_about_y,
)
from .wigner import (
    MultipoleDecomposition,
    SphereGrid,
    clebsch_gordan,
    multipole_decomposition,
    multipole_operator,
    sphere_overlap,
    wigner_at,
    wigner_function,
)
