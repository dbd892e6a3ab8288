use rayon::prelude::*;

use crate::entanglement::{concurrence_closed_form, EvaluationPath};
use crate::error::{Error, Result};
use crate::model::{CouplingParams, DmAxis, DmCoupling, ModelSpec};
use crate::thermal::Temperature;

pub const DEFAULT_STEPS: usize = 201;

/// Which parameter varies along a sweep, with the other one held fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepVariable {
    DmStrength { temperature: Temperature },
    Temperature { dm_strength: f64 },
}

impl SweepVariable {
    pub fn name(&self) -> &'static str {
        match self {
            SweepVariable::DmStrength { .. } => "d",
            SweepVariable::Temperature { .. } => "t",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    coupling: CouplingParams,
    axis: DmAxis,
    variable: SweepVariable,
    start: f64,
    stop: f64,
    steps: usize,
}

impl SweepSpec {
    pub fn new(
        coupling: CouplingParams,
        axis: DmAxis,
        variable: SweepVariable,
        start: f64,
        stop: f64,
        steps: usize,
    ) -> Result<Self> {
        if !start.is_finite() || !stop.is_finite() {
            return Err(Error::invalid("range", "endpoints must be finite"));
        }
        if start >= stop {
            return Err(Error::invalid(
                "range",
                format!("start {start} must be below stop {stop}"),
            ));
        }
        if steps < 2 {
            return Err(Error::invalid(
                "steps",
                format!("need at least 2, got {steps}"),
            ));
        }
        match variable {
            SweepVariable::Temperature { dm_strength } => {
                DmCoupling::new(axis, dm_strength)?;
                if start <= 0.0 {
                    return Err(Error::invalid(
                        "range",
                        format!("temperature sweep must start above 0, got {start}"),
                    ));
                }
            }
            SweepVariable::DmStrength { .. } => {}
        }
        Ok(Self {
            coupling,
            axis,
            variable,
            start,
            stop,
            steps,
        })
    }

    pub fn coupling(&self) -> CouplingParams {
        self.coupling
    }

    pub fn axis(&self) -> DmAxis {
        self.axis
    }

    pub fn variable(&self) -> SweepVariable {
        self.variable
    }

    pub fn range(&self) -> (f64, f64) {
        (self.start, self.stop)
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Same sweep with the DM vector along another axis.
    pub fn with_axis(&self, axis: DmAxis) -> Self {
        Self { axis, ..*self }
    }

    /// Uniform grid; the last point is `stop` exactly.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.steps - 1;
        let width = self.stop - self.start;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.stop
                } else {
                    self.start + width * (i as f64 / n as f64)
                }
            })
            .collect()
    }

    /// Model and temperature at one value of the swept variable.
    pub fn point(&self, value: f64) -> Result<(ModelSpec, Temperature)> {
        let (d, t) = match self.variable {
            SweepVariable::DmStrength { temperature } => (value, temperature),
            SweepVariable::Temperature { dm_strength } => (dm_strength, Temperature::new(value)?),
        };
        Ok((
            ModelSpec::new(self.coupling, DmCoupling::new(self.axis, d)?),
            t,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub variable_value: f64,
    pub concurrence: f64,
    /// Sorted descending.
    pub lambdas: [f64; 4],
    pub path: EvaluationPath,
}

/// Closed-form concurrence at every grid point, in grid order. On failure the
/// error names the first offending grid point.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let rows: Vec<Result<SweepRow>> = spec
        .grid()
        .into_par_iter()
        .map(|value| {
            let at = |e: Error| Error::AtGridPoint {
                value,
                source: Box::new(e),
            };
            let (model, t) = spec.point(value).map_err(at)?;
            let c = concurrence_closed_form(&model, t).map_err(at)?;
            Ok(SweepRow {
                variable_value: value,
                concurrence: c.value,
                lambdas: c.lambdas,
                path: c.path,
            })
        })
        .collect();
    rows.into_iter().collect()
}
