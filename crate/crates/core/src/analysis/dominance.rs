use super::critical::{CriticalResult, CriticalStatus};
use super::figures::AxisCriticals;
use crate::entanglement::concurrence_closed_form;
use crate::error::Result;
use crate::model::{CouplingParams, DmAxis, DmCoupling, ModelSpec};
use crate::thermal::Temperature;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAssessment {
    pub axis: DmAxis,
    pub concurrence: f64,
    /// At the report temperature.
    pub critical_dm: CriticalResult,
    /// At the report DM strength.
    pub critical_temperature: CriticalResult,
}

/// Critical D treated as a number: entangled over the whole bracket counts as
/// its lower end, never entangled as +∞.
fn effective_dm(r: &CriticalResult) -> Option<f64> {
    match r.status {
        CriticalStatus::Converged => r.value,
        CriticalStatus::AlwaysPositive => Some(r.bracket.0),
        CriticalStatus::AlwaysZero => Some(f64::INFINITY),
        CriticalStatus::NoSignChange => None,
    }
}

fn effective_temperature(r: &CriticalResult) -> Option<f64> {
    match r.status {
        CriticalStatus::Converged => r.value,
        CriticalStatus::AlwaysPositive => Some(f64::INFINITY),
        CriticalStatus::AlwaysZero => Some(r.bracket.0),
        CriticalStatus::NoSignChange => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    pub coupling: CouplingParams,
    pub temperature: Temperature,
    pub dm_strength: f64,
    /// By concurrence, highest first; exact ties go to the larger coupling.
    pub ranking: [AxisAssessment; 3],
    /// Axis of the strictly largest coupling.
    pub largest: Option<DmAxis>,
    /// Ways in which the largest-coupling axis fails to dominate.
    pub violations: Vec<String>,
}

impl DominanceReport {
    /// `None` when no coupling is strictly largest and the rule says nothing.
    pub fn rule_holds(&self) -> Option<bool> {
        self.largest.map(|_| self.violations.is_empty())
    }

    /// Max minus min concurrence over the three axes.
    pub fn spread(&self) -> f64 {
        self.ranking[0].concurrence - self.ranking[2].concurrence
    }

    pub fn get(&self, axis: DmAxis) -> &AxisAssessment {
        self.ranking
            .iter()
            .find(|a| a.axis == axis)
            .expect("every axis is ranked")
    }
}

/// Ranks the three DM orientations at one `(T, D)` and checks that the axis
/// of the largest coupling has the most entanglement, the smallest critical D
/// and the highest critical temperature.
pub fn dominance_report(
    coupling: CouplingParams,
    t: Temperature,
    d: f64,
) -> Result<DominanceReport> {
    let mut assessed = Vec::with_capacity(3);
    for axis in DmAxis::ALL {
        let spec = ModelSpec::new(coupling, DmCoupling::new(axis, d)?);
        let crit = AxisCriticals::compute(coupling, axis, t, d)?;
        assessed.push(AxisAssessment {
            axis,
            concurrence: concurrence_closed_form(&spec, t)?.value,
            critical_dm: crit.critical_dm,
            critical_temperature: crit.critical_temperature,
        });
    }
    assessed.sort_by(|a, b| {
        b.concurrence
            .total_cmp(&a.concurrence)
            .then(coupling.along(b.axis).total_cmp(&coupling.along(a.axis)))
    });
    let ranking = [assessed[0], assessed[1], assessed[2]];

    let largest = coupling.largest_axis();
    let mut violations = Vec::new();
    if let Some(lead) = largest {
        let me = *ranking.iter().find(|a| a.axis == lead).unwrap();
        for other in ranking.iter().filter(|a| a.axis != lead) {
            let (name, o) = (other.axis.as_str(), other.axis);
            if me.concurrence < other.concurrence {
                violations.push(format!("concurrence below axis {name}"));
            }
            match (
                effective_dm(&me.critical_dm),
                effective_dm(&other.critical_dm),
            ) {
                (Some(a), Some(b)) if a <= b => {}
                (Some(_), Some(_)) => violations.push(format!("critical D above axis {name}")),
                _ => violations.push(format!("critical D not bracketed for {lead} or {o}")),
            }
            match (
                effective_temperature(&me.critical_temperature),
                effective_temperature(&other.critical_temperature),
            ) {
                (Some(a), Some(b)) if a >= b => {}
                (Some(_), Some(_)) => violations.push(format!("critical T below axis {name}")),
                _ => violations.push(format!("critical T not bracketed for {lead} or {o}")),
            }
        }
    }

    Ok(DominanceReport {
        coupling,
        temperature: t,
        dm_strength: d,
        ranking,
        largest,
        violations,
    })
}
