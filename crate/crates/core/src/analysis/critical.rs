//! Critical points by bisection on the indicator `C > ε`.
//!
//! Concurrence is clamped to exactly zero on a whole region, so the function
//! itself has no sign change to root-find on. The boolean indicator does.

use crate::entanglement::concurrence_closed_form;
use crate::error::{Error, Result};
use crate::model::{CouplingParams, DmAxis, DmCoupling, ModelSpec};
use crate::thermal::Temperature;

pub const INDICATOR_EPS: f64 = 1e-12;
pub const DEFAULT_DM_BRACKET: (f64, f64) = (0.0, 10.0);
pub const DEFAULT_T_BRACKET: (f64, f64) = (0.05, 50.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalKind {
    CriticalTemperature,
    CriticalDm,
}

impl CriticalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CriticalKind::CriticalTemperature => "temp",
            CriticalKind::CriticalDm => "dm",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalStatus {
    Converged,
    NoSignChange,
    AlwaysZero,
    AlwaysPositive,
}

impl CriticalStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CriticalStatus::Converged => "Converged",
            CriticalStatus::NoSignChange => "NoSignChange",
            CriticalStatus::AlwaysZero => "AlwaysZero",
            CriticalStatus::AlwaysPositive => "AlwaysPositive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalResult {
    pub kind: CriticalKind,
    /// Midpoint of the final bracket; `None` unless converged.
    pub value: Option<f64>,
    /// Final bracket when converged, otherwise the bracket that was searched.
    pub bracket: (f64, f64),
    pub residual_width: f64,
    pub status: CriticalStatus,
}

impl CriticalResult {
    pub fn is_converged(&self) -> bool {
        self.status == CriticalStatus::Converged
    }
}

/// Temperature above which the state is separable, searched in `[t_lo, t_hi]`.
pub fn critical_temperature(
    spec: &ModelSpec,
    t_lo: f64,
    t_hi: f64,
    tol: f64,
) -> Result<CriticalResult> {
    if t_lo.is_nan() || t_lo <= 0.0 {
        return Err(Error::invalid(
            "lo",
            format!("must be positive, got {t_lo}"),
        ));
    }
    check_bracket(t_lo, t_hi, tol)?;
    let entangled = |t: f64| -> Result<bool> {
        let c = concurrence_closed_form(spec, Temperature::new(t)?)?;
        Ok(c.value > INDICATOR_EPS)
    };
    // Entangled below T_c, separable above.
    bisect(
        CriticalKind::CriticalTemperature,
        t_lo,
        t_hi,
        tol,
        true,
        entangled,
    )
}

/// DM strength above which the state at temperature `t` is entangled,
/// searched in `[d_lo, d_hi]`.
pub fn critical_dm(
    coupling: CouplingParams,
    axis: DmAxis,
    t: Temperature,
    d_lo: f64,
    d_hi: f64,
    tol: f64,
) -> Result<CriticalResult> {
    if d_lo.is_nan() || d_lo < 0.0 {
        return Err(Error::invalid(
            "lo",
            format!("must be nonnegative, got {d_lo}"),
        ));
    }
    check_bracket(d_lo, d_hi, tol)?;
    let entangled = |d: f64| -> Result<bool> {
        let spec = ModelSpec::new(coupling, DmCoupling::new(axis, d)?);
        Ok(concurrence_closed_form(&spec, t)?.value > INDICATOR_EPS)
    };
    bisect(CriticalKind::CriticalDm, d_lo, d_hi, tol, false, entangled)
}

fn check_bracket(lo: f64, hi: f64, tol: f64) -> Result<()> {
    if !hi.is_finite() || lo >= hi {
        return Err(Error::invalid(
            "hi",
            format!("bracket ({lo}, {hi}) must satisfy lo < hi"),
        ));
    }
    // Below a few ulps the midpoint stops moving and bisection cannot finish.
    let floor = 4.0 * f64::EPSILON * lo.abs().max(hi.abs());
    if !tol.is_finite() || tol <= 0.0 || tol < floor {
        return Err(Error::invalid(
            "tol",
            format!("must be finite and at least {floor:e}, got {tol}"),
        ));
    }
    Ok(())
}

/// `low_side` is the indicator value expected at `lo`; the high end must
/// show the opposite.
fn bisect(
    kind: CriticalKind,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    low_side: bool,
    mut indicator: impl FnMut(f64) -> Result<bool>,
) -> Result<CriticalResult> {
    let at_lo = indicator(lo)?;
    let at_hi = indicator(hi)?;
    let status = match (at_lo, at_hi) {
        (false, false) => Some(CriticalStatus::AlwaysZero),
        (true, true) => Some(CriticalStatus::AlwaysPositive),
        (a, _) if a != low_side => Some(CriticalStatus::NoSignChange),
        _ => None,
    };
    if let Some(status) = status {
        return Ok(CriticalResult {
            kind,
            value: None,
            bracket: (lo, hi),
            residual_width: hi - lo,
            status,
        });
    }
    while hi - lo > tol {
        let mid = lo + 0.5 * (hi - lo);
        if indicator(mid)? == low_side {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CriticalResult {
        kind,
        value: Some(lo + 0.5 * (hi - lo)),
        bracket: (lo, hi),
        residual_width: hi - lo,
        status: CriticalStatus::Converged,
    })
}
