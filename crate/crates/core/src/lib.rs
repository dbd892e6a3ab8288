//! Thermal entanglement of a two-qubit Heisenberg XYZ chain with a
//! Dzyaloshinskii–Moriya interaction along a single Cartesian axis.
//!
//! The crate computes Wootters concurrence of the Gibbs state two ways: from
//! closed-form λ spectra, and from brute-force diagonalisation of the
//! Hamiltonian and of the Hermitian spin-flip sandwich. [`analysis`] builds
//! parameter sweeps, critical-point searches and axis comparisons on top.

pub mod analysis;
pub mod entanglement;
pub mod error;
pub mod linalg4;
pub mod model;
pub mod thermal;

pub use analysis::{
    critical_dm, critical_temperature, dominance_report, figure_preset, figure_regression, sweep,
    CriticalKind, CriticalResult, CriticalStatus, DominanceReport, FigurePreset, FigureVerdict,
    SweepRow, SweepSpec, SweepVariable,
};
pub use entanglement::{
    concurrence_closed_form, concurrence_oracle, concurrence_oracle_at, lambda_closed_form,
    ConcurrenceResult, EvaluationPath,
};
pub use error::{Error, Result};
pub use linalg4::{Complex, ComplexMatrix4, HermitianEigenSystem};
pub use model::{
    analytic_eigenstates, analytic_spectrum, build_hamiltonian, AnalyticSpectrum, CouplingParams,
    DmAxis, DmCoupling, ModelSpec,
};
pub use thermal::{
    closed_form_density, gibbs_state, partition_function, DensityMatrix, Temperature, ThermalState,
};
