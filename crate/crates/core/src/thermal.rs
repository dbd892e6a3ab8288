//! Gibbs states `ρ(T) = exp(−H/T) / Z` with `k_B = 1`.
//!
//! Boltzmann weights are always evaluated relative to the ground energy,
//! `exp(−(E_k − E_min)/T)`, so neither `ρ` nor the λ spectrum overflows at low
//! temperature. A shifted exponent below `-EXPONENT_BUDGET` is reported as
//! [`Error::Overflow`] instead of silently flushing to zero.

use crate::error::{Error, Result};
use crate::linalg4::{hermitian_eigensystem, Complex, ComplexMatrix4, HERMITIAN_TOL, PSD_FLOOR};
use crate::model::{analytic_spectrum, build_hamiltonian, DmAxis, Mixing, ModelSpec};

pub const EXPONENT_BUDGET: f64 = 700.0;
/// Trace tolerance for density matrices accepted from outside.
pub const TRACE_TOL: f64 = 1e-10;
/// Trace tolerance for states built by this crate.
pub const THERMAL_TRACE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(t: f64) -> Result<Self> {
        if t.is_finite() && t > 0.0 {
            Ok(Self(t))
        } else {
            Err(Error::InvalidTemperature(t))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Temperature {
    type Error = Error;

    fn try_from(t: f64) -> Result<Self> {
        Self::new(t)
    }
}

/// Normalised Boltzmann factors for a set of energies, plus `ln Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoltzmannWeights {
    pub populations: [f64; 4],
    pub ln_z: f64,
}

/// Populations `exp(x_k) / Σ exp(x_j)` for exponents `x_k`, computed after
/// subtracting the largest exponent.
pub fn normalized_exponentials(exponents: [f64; 4]) -> Result<BoltzmannWeights> {
    let top = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut populations = [0.0; 4];
    for (p, &x) in populations.iter_mut().zip(&exponents) {
        let shifted = x - top;
        if shifted.is_nan() || shifted < -EXPONENT_BUDGET {
            return Err(Error::Overflow {
                exponent: shifted,
                budget: EXPONENT_BUDGET,
            });
        }
        *p = shifted.exp();
    }
    let sum: f64 = populations.iter().sum();
    for p in &mut populations {
        *p /= sum;
    }
    Ok(BoltzmannWeights {
        populations,
        ln_z: top + sum.ln(),
    })
}

pub fn boltzmann_weights(energies: [f64; 4], t: Temperature) -> Result<BoltzmannWeights> {
    normalized_exponentials(energies.map(|e| -e / t.value()))
}

/// Closed-form partition function,
/// `Z = 2 e^{−p/T} cosh((a − b)/T) + 2 e^{p/T} cosh(w/T)`
/// with `p` the coupling along the DM axis and `(a, b)` the perpendicular pair.
pub fn partition_function(spec: &ModelSpec, t: Temperature) -> Result<f64> {
    let (p, a, b) = spec.split_couplings();
    let w = spec.mixing_frequency();
    let t = t.value();
    // the four exponentials hidden in the two cosh terms
    let exponents = [(-p + a - b) / t, (-p - a + b) / t, (p + w) / t, (p - w) / t];
    let weights = normalized_exponentials(exponents)?;
    if weights.ln_z > EXPONENT_BUDGET {
        return Err(Error::Overflow {
            exponent: weights.ln_z,
            budget: EXPONENT_BUDGET,
        });
    }
    Ok(weights.ln_z.exp())
}

/// A validated two-qubit density matrix: Hermitian, unit trace, PSD.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(ComplexMatrix4);

impl DensityMatrix {
    pub fn new(rho: ComplexMatrix4) -> Result<Self> {
        Self::validate(rho, TRACE_TOL)
    }

    fn validate(rho: ComplexMatrix4, trace_tol: f64) -> Result<Self> {
        if !rho.is_finite() {
            return Err(Error::InvalidDensityMatrix("non-finite entry".into()));
        }
        let herm = rho.hermiticity_deviation();
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let trace = rho.trace();
        if (trace - Complex::new(1.0, 0.0)).norm() > trace_tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {trace} differs from 1"
            )));
        }
        let min = hermitian_eigensystem(&rho)?.eigenvalues[0];
        if min < -PSD_FLOOR {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(Self(rho))
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.0
    }

    /// The maximally mixed state `I/4`.
    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix4::identity().scale(0.25))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    pub rho: DensityMatrix,
    pub z: f64,
    pub spec: ModelSpec,
    pub temperature: Temperature,
}

impl ThermalState {
    pub fn density(&self) -> &DensityMatrix {
        &self.rho
    }
}

/// Numeric Gibbs state: diagonalise `H` and exponentiate its spectrum.
pub fn gibbs_state(spec: &ModelSpec, t: Temperature) -> Result<ThermalState> {
    let h = build_hamiltonian(spec);
    let eig = hermitian_eigensystem(&h)?;
    let weights = boltzmann_weights(eig.eigenvalues, t)?;
    let mut it = weights.populations.iter();
    let rho = eig.map_spectrum(|_| *it.next().expect("four eigenvalues"))?;
    Ok(ThermalState {
        rho: DensityMatrix::validate(rho, THERMAL_TRACE_TOL)?,
        z: weights.ln_z.exp(),
        spec: *spec,
        temperature: t,
    })
}

/// Density matrix assembled entry by entry from the closed-form populations
/// and mixing angles. Only the x and y axes have a printed closed form.
pub fn closed_form_density(spec: &ModelSpec, t: Temperature) -> Result<ComplexMatrix4> {
    let spectrum = analytic_spectrum(spec);
    let (a1, a2) = match (spec.axis(), spectrum.mixing) {
        (DmAxis::Z, _) | (_, Mixing::Phase(_)) => return Err(Error::UnsupportedAxis(spec.axis())),
        (_, Mixing::Angles(a1, a2)) => (a1, a2),
    };
    let [p1, p2, p3, p4] = boltzmann_weights(spectrum.energies, t)?.populations;
    let (s1, c1) = a1.sin_cos();
    let (s2, c2) = a2.sin_cos();

    let n1 = 0.5 * (p1 + p3 * c1 * c1 + p4 * c2 * c2);
    let n2 = 0.5 * (p1 - p3 * c1 * c1 - p4 * c2 * c2);
    let r = |x: f64| Complex::new(x, 0.0);

    let rows = if spec.axis() == DmAxis::X {
        let m1 = 0.5 * (p2 + p3 * s1 * s1 + p4 * s2 * s2);
        let m2 = 0.5 * (p2 - p3 * s1 * s1 - p4 * s2 * s2);
        let q = Complex::new(0.0, 0.5 * (p3 * s1 * c1 - p4 * s2 * c2));
        let qc = q.conj();
        [
            [r(m1), q, qc, r(m2)],
            [qc, r(n1), r(n2), q],
            [q, r(n2), r(n1), qc],
            [r(m2), qc, q, r(m1)],
        ]
    } else {
        let m1 = 0.5 * (p2 + p3 * s1 * s1 + p4 * s2 * s2);
        let m2 = 0.5 * (-p2 + p3 * s1 * s1 + p4 * s2 * s2);
        let q = 0.5 * (p3 * s1 * c1 + p4 * s2 * c2);
        [
            [r(m1), r(-q), r(q), r(m2)],
            [r(-q), r(n1), r(n2), r(-q)],
            [r(q), r(n2), r(n1), r(q)],
            [r(m2), r(-q), r(q), r(m1)],
        ]
    };
    Ok(ComplexMatrix4::from_rows(rows))
}
