//! Seeded comparisons of the closed forms against brute-force evaluation.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::entanglement::{concurrence_closed_form, concurrence_oracle_at};
use crate::error::{Error, Result};
use crate::linalg4::hermitian_eigensystem;
use crate::model::{
    analytic_spectrum, build_hamiltonian, CouplingParams, DmAxis, DmCoupling, ModelSpec,
};
use crate::thermal::{partition_function, Temperature};

pub const ORACLE_TOL: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 42;

pub const J_RANGE: (f64, f64) = (-3.0, 3.0);
pub const D_RANGE: (f64, f64) = (-3.0, 3.0);
pub const T_RANGE: (f64, f64) = (0.1, 20.0);

/// Deterministic source of model parameters.
#[derive(Debug, Clone)]
pub struct ParamSampler(ChaCha8Rng);

impl ParamSampler {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn uniform(&mut self, (lo, hi): (f64, f64)) -> f64 {
        self.0.random_range(lo..=hi)
    }

    pub fn coupling(&mut self) -> CouplingParams {
        let mut j = || self.uniform(J_RANGE);
        CouplingParams {
            jx: j(),
            jy: j(),
            jz: j(),
        }
    }

    pub fn strength(&mut self) -> f64 {
        self.uniform(D_RANGE)
    }

    pub fn temperature(&mut self) -> Temperature {
        Temperature::new(self.uniform(T_RANGE)).expect("range is positive")
    }

    pub fn point(&mut self, axis: DmAxis) -> SamplePoint {
        let coupling = self.coupling();
        let strength = self.strength();
        SamplePoint {
            spec: ModelSpec::new(coupling, DmCoupling { axis, strength }),
            temperature: self.temperature(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePoint {
    pub spec: ModelSpec,
    pub temperature: Temperature,
}

impl fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let CouplingParams { jx, jy, jz } = self.spec.coupling;
        write!(
            f,
            "axis={} jx={jx:e} jy={jy:e} jz={jz:e} d={:e} t={:e}",
            self.spec.axis(),
            self.spec.dm.strength,
            self.temperature.value()
        )
    }
}

/// `samples` points per axis, drawn X first, then Y, then Z, from one stream.
pub fn sample_points(samples: usize, seed: u64) -> [Vec<SamplePoint>; 3] {
    let mut sampler = ParamSampler::new(seed);
    DmAxis::ALL.map(|axis| (0..samples).map(|_| sampler.point(axis)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisDiscrepancy {
    pub axis: DmAxis,
    pub samples: usize,
    pub max_concurrence_diff: f64,
    pub max_lambda_diff: f64,
    /// Point with the largest concurrence discrepancy.
    pub worst: Option<SamplePoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub seed: u64,
    pub per_axis: [AxisDiscrepancy; 3],
}

impl OracleReport {
    pub fn max_concurrence_diff(&self) -> f64 {
        self.per_axis
            .iter()
            .map(|a| a.max_concurrence_diff)
            .fold(0.0, f64::max)
    }

    pub fn passes(&self) -> bool {
        self.passes_within(ORACLE_TOL)
    }

    pub fn passes_within(&self, tol: f64) -> bool {
        self.max_concurrence_diff() <= tol
    }
}

fn check_samples(samples: usize) -> Result<()> {
    if samples == 0 {
        return Err(Error::invalid("samples", "must be at least 1"));
    }
    Ok(())
}

/// Evaluates `f` at every point in parallel, keeping the order; errors are
/// tagged with the first failing sample.
fn evaluate<T: Send>(
    points: &[SamplePoint],
    f: impl Fn(&SamplePoint) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let out: Vec<Result<T>> = points.par_iter().map(&f).collect();
    out.into_iter()
        .enumerate()
        .map(|(index, r)| {
            r.map_err(|e| Error::AtSample {
                index,
                point: points[index].to_string(),
                source: Box::new(e),
            })
        })
        .collect()
}

/// Closed-form concurrence and λ against the brute-force oracle.
pub fn verify_oracle(samples: usize, seed: u64) -> Result<OracleReport> {
    check_samples(samples)?;
    let grids = sample_points(samples, seed);
    let mut per_axis = Vec::with_capacity(3);
    for (axis, points) in DmAxis::ALL.into_iter().zip(&grids) {
        let diffs = evaluate(points, |p| {
            let closed = concurrence_closed_form(&p.spec, p.temperature)?;
            let oracle = concurrence_oracle_at(&p.spec, p.temperature)?;
            let dl = closed
                .lambdas
                .iter()
                .zip(&oracle.lambdas)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            Ok(((closed.value - oracle.value).abs(), dl))
        })?;
        let mut acc = AxisDiscrepancy {
            axis,
            samples,
            max_concurrence_diff: 0.0,
            max_lambda_diff: 0.0,
            worst: None,
        };
        for (p, (dc, dl)) in points.iter().zip(diffs) {
            if acc.worst.is_none() || dc > acc.max_concurrence_diff {
                acc.max_concurrence_diff = dc;
                acc.worst = Some(*p);
            }
            acc.max_lambda_diff = acc.max_lambda_diff.max(dl);
        }
        per_axis.push(acc);
    }
    Ok(OracleReport {
        seed,
        per_axis: [per_axis[0], per_axis[1], per_axis[2]],
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumDiscrepancy {
    pub axis: DmAxis,
    /// Max over samples of the largest sorted-eigenvalue difference.
    pub max_energy_diff: f64,
    /// Max over samples of `|Z_closed − Z_numeric| / Z_numeric`.
    pub max_partition_rel_diff: f64,
}

/// Analytic energies and partition function against diagonalisation of the
/// assembled Hamiltonian.
pub fn verify_spectrum(samples: usize, seed: u64) -> Result<[SpectrumDiscrepancy; 3]> {
    check_samples(samples)?;
    let grids = sample_points(samples, seed);
    let mut out = Vec::with_capacity(3);
    for (axis, points) in DmAxis::ALL.into_iter().zip(&grids) {
        let diffs = evaluate(points, |p| {
            let eig = hermitian_eigensystem(&build_hamiltonian(&p.spec))?;
            let analytic = analytic_spectrum(&p.spec).sorted_energies();
            let de = analytic
                .iter()
                .zip(&eig.eigenvalues)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            let t = p.temperature.value();
            let numeric_z = eig.map_spectrum(|e| (-e / t).exp())?.trace().re;
            let closed_z = partition_function(&p.spec, p.temperature)?;
            Ok((de, ((closed_z - numeric_z) / numeric_z).abs()))
        })?;
        let (de, dz) = diffs
            .into_iter()
            .fold((0.0f64, 0.0f64), |(a, b), (x, y)| (a.max(x), b.max(y)));
        out.push(SpectrumDiscrepancy {
            axis,
            max_energy_diff: de,
            max_partition_rel_diff: dz,
        });
    }
    Ok([out[0], out[1], out[2]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_deterministic_and_in_range() {
        let a = sample_points(50, 7);
        let b = sample_points(50, 7);
        assert_eq!(a, b);
        assert_ne!(a, sample_points(50, 8));
        for (axis, pts) in DmAxis::ALL.into_iter().zip(&a) {
            for p in pts {
                assert_eq!(p.spec.axis(), axis);
                let CouplingParams { jx, jy, jz } = p.spec.coupling;
                for v in [jx, jy, jz, p.spec.dm.strength] {
                    assert!((-3.0..=3.0).contains(&v));
                }
                assert!((0.1..=20.0).contains(&p.temperature.value()));
            }
        }
    }

    #[test]
    fn oracle_report_passes() {
        let r = verify_oracle(100, DEFAULT_SEED).unwrap();
        assert!(r.passes(), "{r:?}");
        assert!(r
            .per_axis
            .iter()
            .all(|a| a.worst.is_some() && a.samples == 100));
    }

    #[test]
    fn spectrum_report_is_tight() {
        for d in verify_spectrum(100, 3).unwrap() {
            assert!(d.max_energy_diff <= 1e-10, "{d:?}");
            assert!(d.max_partition_rel_diff <= 1e-10, "{d:?}");
        }
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(matches!(
            verify_oracle(0, 1),
            Err(Error::InvalidParameter {
                name: "samples",
                ..
            })
        ));
        assert!(verify_spectrum(0, 1).is_err());
    }
}
