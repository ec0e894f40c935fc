"""Creutz and two-particle Creutz-Hubbard ladder simulations."""

from .dynamics import (
    EdgeProfileFit,
    Trajectory,
    breathing_half_period,
    cage_support,
    edge_profile_fit,
    evolve,
    occupation_profile,
)
from .effective import (
    EffectiveDoublonParams,
    build_effective_doublon_hamiltonian,
    compare_effective_vs_full,
    doublon_projector,
    effective_params,
    embed_doublon_state,
)
from .hubbard import (
    TwoParticleBasis,
    build_two_particle_hamiltonian,
    doublonness,
    first_quant_to_fock,
    fock_to_first_quant,
    occupation_expectation,
    product_state,
    two_particle_evolve,
)
from .lattice import (
    BlochPoint,
    LatticeParams,
    allowed_momenta,
    band_energies,
    bloch_hamiltonian,
    canonical_phase,
    flux_to_phase,
    k_grid,
    single_particle_hamiltonian,
    site_index,
    site_label,
    site_name,
)
from .mapping2d import (
    Trajectory2D,
    ZetaLayout,
    build_2d_hamiltonian,
    evolve_2d,
    fock_states_from_2d,
    occupancy_grid,
    symmetric_sector_spectrum_check,
    zeta_layout,
)
from .states import (
    analytic_caged_evolution,
    doublon_edge_state,
    edge_state,
    noon_state,
    site_in_wannier_basis,
    wannier_state,
)
from .topology import (
    PhaseClassification,
    PhaseDiagram,
    classify_phase,
    min_gap,
    phase_diagram_scan,
    winding_number,
    zak_phase,
)

__version__ = "0.1.0"
