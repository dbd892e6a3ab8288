//! Sweeps, critical points and axis comparisons.

mod critical;
mod dominance;
mod figures;
mod sweep;
pub mod verify;

pub use critical::{
    critical_dm, critical_temperature, CriticalKind, CriticalResult, CriticalStatus,
    DEFAULT_DM_BRACKET, DEFAULT_T_BRACKET, INDICATOR_EPS,
};
pub use dominance::{dominance_report, AxisAssessment, DominanceReport};
pub use figures::{
    figure_preset, figure_regression, AxisCriticals, FigurePreset, FigureVerdict, CRITICAL_MARGIN,
    FIGURE_IDS,
};
pub use sweep::{sweep, SweepRow, SweepSpec, SweepVariable, DEFAULT_STEPS};
