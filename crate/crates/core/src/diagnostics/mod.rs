//! Energies, compactness functionals, truncations, transported weights and
//! operator audits.

mod commutator;
mod energy;
mod evf;
mod exponents;
mod kernel;
mod lhp;
mod maximal;
mod report;
mod truncation;
mod weight;
mod weighted;

pub use energy::{dissipation, energy_and_dissipation, free_energy, kinetic_energy};
pub use kernel::{
    audit_kernel_scaling, kernel_norm_l1, kernel_profile, radial_mass, sphere_area_in_cell, Kernel, KernelAudit,
    KernelRow, BRIDGE_START, H0, RADIAL_POINTS, SUPPORT_RADIUS,
};
pub use lhp::{l_hp, l_hp_with, LhpOptions, LhpValue};
pub use truncation::{chi, chi_audit, chi_prime, fractions, renormalization_residual, t_k, t_k_prime, ChiAudit};
pub use maximal::{ball_average, d_r, maximal_m, node_distance, pair_inequality_audit, radius_ladder, PairAudit};
pub use evf::{effective_viscous_flux, evf_audit, EvfAudit};
pub use commutator::{
    commutator_audit, gradient_l2, random_pair, riesz_commutator, riesz_commutator_pair, riesz_commutator_quadratic,
    CommutatorAudit,
};
pub use weight::{
    gradient_magnitude, interpolate, weight_evolve, xi, WeightField, WeightParams, WeightSnapshot, WEIGHT_BOUND_TOL,
};
pub use weighted::{weighted_chain, weighted_functional, WeightedChain};
pub use exponents::{
    cascade_boundedness, higher_integrability_probe, theta, theta_raw, theta_split, theta_split_raw, Boundedness,
    ProbeMode,
};
pub use report::{diagnose_trajectory, domination_ratio, DiagnosticsConfig, DiagnosticsReport, ReportRow};
