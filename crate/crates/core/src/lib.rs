//! Simulation and gate characterization for two Ising-coupled qubits whose
//! oscillating drives are not perpendicular to their static fields.
//!
//! - [`linalg`]: fixed-size complex matrices, Pauli algebra, Hermitian
//!   eigendecomposition and unitary exponentials.
//! - [`model`]: physical parameters and Hamiltonians in the lab and aligned frames.
//! - [`propagator`]: exact time-ordered propagation and gate overlaps.
//! - [`rwa`]: closed-form rotating-wave gates, rotary echo and regime checks.
//! - [`invariants`]: local invariants, entangling power, perfect entanglers.
//! - [`tomography`]: process matrices and fidelity up to local rotations.
//! - [`config`], [`study`]: run configuration and the command-line studies.

pub mod config;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod model;
pub mod optimize;
pub mod propagator;
pub mod rwa;
pub mod study;
pub mod tomography;
pub mod unitary;

pub use config::RunConfig;
pub use error::{Error, Result};
pub use invariants::{
    classify_local_equivalence, closed_form_dissimilar, closed_form_equal_rabi, closed_form_rotary, closed_form_zz,
    entangling_power, is_perfect_entangler, makhlin_invariants, GateClass, InvariantPair,
};
pub use linalg::{kron, pauli, pauli2, CMat16, CMat2, CMat4, Pauli, C64};
pub use model::{DerivedParams, Model, QubitParams, SystemParams};
pub use propagator::{overlap_trace, propagate, propagate_echo, IntegratorConfig};
pub use rwa::{rotary_echo, regime_check, AnalyticGateKind, RegimeReport};
pub use tomography::{chi_of_unitary, local_equivalence_fidelity, process_fidelity, LocalSearch, ProcessMatrix};
pub use unitary::{overlap_fidelity, NamedGate, Unitary4};
