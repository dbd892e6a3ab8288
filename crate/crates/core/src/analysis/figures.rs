//! The six figure parameter sets and the axis orderings expected for them.

use std::fmt;
use std::ops::RangeInclusive;

use super::critical::{
    critical_dm, critical_temperature, CriticalResult, DEFAULT_DM_BRACKET, DEFAULT_T_BRACKET,
};
use super::sweep::{sweep, SweepSpec, SweepVariable, DEFAULT_STEPS};
use crate::error::{Error, Result};
use crate::model::{CouplingParams, DmAxis, DmCoupling, ModelSpec};
use crate::thermal::Temperature;

pub const FIGURE_IDS: RangeInclusive<u8> = 1..=6;

/// Required gap between the two axes' critical values.
pub const CRITICAL_MARGIN: f64 = 1e-6;

const PANEL_TEMPERATURE: f64 = 3.0;
const PANEL_DM: f64 = 3.0;
const DM_RANGE: (f64, f64) = (0.0, 6.0);
const T_RANGE: (f64, f64) = (0.1, 10.0);
const CRITICAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigurePreset {
    pub id: u8,
    pub coupling: CouplingParams,
    /// The two DM axes compared in the figure, in `x < y < z` order.
    pub axes: [DmAxis; 2],
    /// Panel (a): D swept at fixed T, first axis.
    pub dm_panel: SweepSpec,
    /// Panel (b): T swept at fixed D, first axis.
    pub temperature_panel: SweepSpec,
}

impl FigurePreset {
    /// The compared axis carrying the larger exchange coupling.
    pub fn favored(&self) -> DmAxis {
        let [a, b] = self.axes;
        if self.coupling.along(b) > self.coupling.along(a) {
            b
        } else {
            a
        }
    }

    pub fn other(&self) -> DmAxis {
        let fav = self.favored();
        if self.axes[0] == fav {
            self.axes[1]
        } else {
            self.axes[0]
        }
    }

    pub fn panel_temperature(&self) -> Temperature {
        Temperature::new(PANEL_TEMPERATURE).expect("positive constant")
    }

    pub fn panel_dm(&self) -> f64 {
        PANEL_DM
    }
}

pub fn figure_preset(id: u8) -> Result<FigurePreset> {
    use DmAxis::{X, Y, Z};
    let (j, axes) = match id {
        1 => ((0.2, -1.0, -0.5), [X, Y]),
        2 => ((-1.0, 0.2, -0.5), [X, Y]),
        3 => ((-0.5, 1.0, 0.2), [Y, Z]),
        4 => ((-0.5, 0.2, 1.0), [Y, Z]),
        5 => ((-0.2, 0.3, -1.0), [X, Z]),
        6 => ((-1.0, 0.3, -0.2), [X, Z]),
        _ => return Err(Error::UnknownFigure(id)),
    };
    let coupling = CouplingParams::new(j.0, j.1, j.2)?;
    let temperature = Temperature::new(PANEL_TEMPERATURE)?;
    let dm_panel = SweepSpec::new(
        coupling,
        axes[0],
        SweepVariable::DmStrength { temperature },
        DM_RANGE.0,
        DM_RANGE.1,
        DEFAULT_STEPS,
    )?;
    let temperature_panel = SweepSpec::new(
        coupling,
        axes[0],
        SweepVariable::Temperature {
            dm_strength: PANEL_DM,
        },
        T_RANGE.0,
        T_RANGE.1,
        DEFAULT_STEPS,
    )?;
    Ok(FigurePreset {
        id,
        coupling,
        axes,
        dm_panel,
        temperature_panel,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisCriticals {
    pub axis: DmAxis,
    /// At the panel temperature.
    pub critical_dm: CriticalResult,
    /// At the panel DM strength.
    pub critical_temperature: CriticalResult,
}

impl AxisCriticals {
    pub fn compute(coupling: CouplingParams, axis: DmAxis, t: Temperature, d: f64) -> Result<Self> {
        let (d_lo, d_hi) = DEFAULT_DM_BRACKET;
        let (t_lo, t_hi) = DEFAULT_T_BRACKET;
        let spec = ModelSpec::new(coupling, DmCoupling::new(axis, d)?);
        Ok(Self {
            axis,
            critical_dm: critical_dm(coupling, axis, t, d_lo, d_hi, CRITICAL_TOL)?,
            critical_temperature: critical_temperature(&spec, t_lo, t_hi, CRITICAL_TOL)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureVerdict {
    pub figure: u8,
    pub favored: AxisCriticals,
    pub other: AxisCriticals,
    /// `D_c(favored) + margin < D_c(other)`, both converged.
    pub smaller_critical_dm: bool,
    /// `T_c(favored) > T_c(other) + margin`, both converged.
    pub higher_critical_temperature: bool,
    /// Favored concurrence is at least the other's at every panel (a) grid
    /// point where both are positive.
    pub pointwise_dominant: bool,
}

impl FigureVerdict {
    pub fn holds(&self) -> bool {
        self.smaller_critical_dm && self.higher_critical_temperature && self.pointwise_dominant
    }
}

impl fmt::Display for FigureVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fav = self.favored.axis.as_str();
        if self.holds() {
            return write!(f, "D{fav} dominates");
        }
        let mut failed = Vec::new();
        if !self.smaller_critical_dm {
            failed.push("critical D");
        }
        if !self.higher_critical_temperature {
            failed.push("critical T");
        }
        if !self.pointwise_dominant {
            failed.push("pointwise concurrence");
        }
        write!(
            f,
            "regression: D{fav} expected to dominate D{} but {} ordering failed",
            self.other.axis.as_str(),
            failed.join(", ")
        )
    }
}

/// Checks the favored axis against the other one at the preset's panels.
pub fn figure_regression(preset: &FigurePreset) -> Result<FigureVerdict> {
    let t = preset.panel_temperature();
    let d = preset.panel_dm();
    let favored = AxisCriticals::compute(preset.coupling, preset.favored(), t, d)?;
    let other = AxisCriticals::compute(preset.coupling, preset.other(), t, d)?;

    let gap = |lower: &CriticalResult, upper: &CriticalResult| match (lower.value, upper.value) {
        (Some(l), Some(u)) => u - l >= CRITICAL_MARGIN,
        _ => false,
    };
    let smaller_critical_dm = gap(&favored.critical_dm, &other.critical_dm);
    let higher_critical_temperature =
        gap(&other.critical_temperature, &favored.critical_temperature);

    let fav_rows = sweep(&preset.dm_panel.with_axis(favored.axis))?;
    let other_rows = sweep(&preset.dm_panel.with_axis(other.axis))?;
    let pointwise_dominant = fav_rows.iter().zip(&other_rows).all(|(f, o)| {
        f.concurrence <= 0.0 || o.concurrence <= 0.0 || f.concurrence >= o.concurrence
    });

    Ok(FigureVerdict {
        figure: preset.id,
        favored,
        other,
        smaller_critical_dm,
        higher_critical_temperature,
        pointwise_dominant,
    })
}
