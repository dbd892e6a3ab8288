//! Model parameters, Hamiltonians and their closed-form spectra.
//!
//! The Hamiltonian is
//!
//! ```text
//! H = Jx σx⊗σx + Jy σy⊗σy + Jz σz⊗σz + D (σj⊗σk − σk⊗σj)
//! ```
//!
//! where (j, k) = (y, z), (z, x) or (x, y) for a DM vector along x, y or z.
//! All three cases share the same spectral structure once the couplings are
//! split into the one parallel to the DM axis and the two perpendicular ones,
//! see [`ModelSpec::split_couplings`].

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg4::{Complex, ComplexMatrix4, Vector4};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
}

impl CouplingParams {
    pub fn new(jx: f64, jy: f64, jz: f64) -> Result<Self> {
        for (name, v) in [("jx", jx), ("jy", jy), ("jz", jz)] {
            if !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {v}")));
            }
        }
        Ok(Self { jx, jy, jz })
    }

    pub fn along(&self, axis: DmAxis) -> f64 {
        match axis {
            DmAxis::X => self.jx,
            DmAxis::Y => self.jy,
            DmAxis::Z => self.jz,
        }
    }

    /// Axis of the strictly largest coupling, `None` on a tie for the maximum.
    pub fn largest_axis(&self) -> Option<DmAxis> {
        let mut axes = DmAxis::ALL;
        axes.sort_by(|a, b| self.along(*b).total_cmp(&self.along(*a)));
        (self.along(axes[0]) > self.along(axes[1])).then_some(axes[0])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DmAxis {
    X,
    Y,
    Z,
}

impl DmAxis {
    pub const ALL: [DmAxis; 3] = [DmAxis::X, DmAxis::Y, DmAxis::Z];

    pub fn as_str(self) -> &'static str {
        match self {
            DmAxis::X => "x",
            DmAxis::Y => "y",
            DmAxis::Z => "z",
        }
    }
}

impl fmt::Display for DmAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DmAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Ok(DmAxis::X),
            "y" => Ok(DmAxis::Y),
            "z" => Ok(DmAxis::Z),
            other => Err(Error::invalid(
                "axis",
                format!("expected one of x, y, z, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DmCoupling {
    pub axis: DmAxis,
    pub strength: f64,
}

impl DmCoupling {
    pub fn new(axis: DmAxis, strength: f64) -> Result<Self> {
        if !strength.is_finite() {
            return Err(Error::invalid(
                "d",
                format!("must be finite, got {strength}"),
            ));
        }
        Ok(Self { axis, strength })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub coupling: CouplingParams,
    pub dm: DmCoupling,
}

impl ModelSpec {
    pub fn new(coupling: CouplingParams, dm: DmCoupling) -> Self {
        Self { coupling, dm }
    }

    /// Convenience constructor validating every field.
    pub fn from_values(jx: f64, jy: f64, jz: f64, axis: DmAxis, d: f64) -> Result<Self> {
        Ok(Self::new(
            CouplingParams::new(jx, jy, jz)?,
            DmCoupling::new(axis, d)?,
        ))
    }

    pub fn axis(&self) -> DmAxis {
        self.dm.axis
    }

    pub fn with_strength(&self, d: f64) -> Self {
        Self {
            dm: DmCoupling {
                strength: d,
                ..self.dm
            },
            ..*self
        }
    }

    /// `(parallel, a, b)`: the coupling along the DM axis and the two
    /// perpendicular ones in the order the closed forms use them
    /// (x: (Jy, Jz); y: (Jx, Jz); z: (Jx, Jy)).
    pub fn split_couplings(&self) -> (f64, f64, f64) {
        let CouplingParams { jx, jy, jz } = self.coupling;
        match self.dm.axis {
            DmAxis::X => (jx, jy, jz),
            DmAxis::Y => (jy, jx, jz),
            DmAxis::Z => (jz, jx, jy),
        }
    }

    /// `w = sqrt(4D² + (a + b)²)`.
    pub fn mixing_frequency(&self) -> f64 {
        let (_, a, b) = self.split_couplings();
        (2.0 * self.dm.strength).hypot(a + b)
    }
}

/// Hamiltonian in the basis |00⟩, |01⟩, |10⟩, |11⟩.
pub fn build_hamiltonian(spec: &ModelSpec) -> ComplexMatrix4 {
    let CouplingParams { jx, jy, jz } = spec.coupling;
    let d = spec.dm.strength;
    let r = |x: f64| Complex::new(x, 0.0);
    let i = |x: f64| Complex::new(0.0, x);
    let (diff, sum) = (r(jx - jy), r(jx + jy));
    let (zp, zm, o) = (r(jz), r(-jz), r(0.0));

    let rows = match spec.dm.axis {
        DmAxis::X => [
            [zp, i(d), i(-d), diff],
            [i(-d), zm, sum, i(d)],
            [i(d), sum, zm, i(-d)],
            [diff, i(-d), i(d), zp],
        ],
        DmAxis::Y => [
            [zp, r(d), r(-d), diff],
            [r(d), zm, sum, r(d)],
            [r(-d), sum, zm, r(-d)],
            [diff, r(d), r(-d), zp],
        ],
        DmAxis::Z => [
            [zp, o, o, diff],
            [o, zm, Complex::new(jx + jy, 2.0 * d), o],
            [o, Complex::new(jx + jy, -2.0 * d), zm, o],
            [diff, o, o, zp],
        ],
    };
    ComplexMatrix4::from_rows(rows)
}

/// Parameters that mix the basis states inside the `w`-split doublet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mixing {
    /// θ₁, θ₂ (x axis) or φ₁, φ₂ (y axis).
    Angles(f64, f64),
    /// χ (z axis), unit modulus.
    Phase(Complex),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticSpectrum {
    /// E₁..E₄ in the closed-form labelling; not sorted.
    pub energies: [f64; 4],
    pub w: f64,
    pub mixing: Mixing,
}

impl AnalyticSpectrum {
    pub fn sorted_energies(&self) -> [f64; 4] {
        let mut e = self.energies;
        e.sort_by(f64::total_cmp);
        e
    }

    pub fn min_energy(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `atan(num / den)` in (−π/2, π/2], with π/2 when `den` is zero.
fn angle(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        FRAC_PI_2
    } else {
        (num / den).atan()
    }
}

/// θ₁ = atan(2D / (w − s)), θ₂ = atan(2D / (w + s)) with s = Jy + Jz.
///
/// Each angle is evaluated through whichever of the two equivalent ratios
/// (using (w − s)(w + s) = 4D²) avoids cancellation.
fn x_angles(d: f64, s: f64, w: f64) -> (f64, f64) {
    if w == 0.0 {
        return (FRAC_PI_2, 0.0);
    }
    let two_d = 2.0 * d;
    let theta1 = if s >= 0.0 {
        angle(w + s, two_d)
    } else {
        angle(two_d, w - s)
    };
    let theta2 = if s <= 0.0 {
        angle(w - s, two_d)
    } else {
        angle(two_d, w + s)
    };
    (theta1, theta2)
}

/// φ₁ = atan(2D / (b − w′)), φ₂ = atan(2D / (b + w′)) with b = Jx + Jz.
fn y_angles(d: f64, b: f64, w: f64) -> (f64, f64) {
    if w == 0.0 {
        return (FRAC_PI_2, 0.0);
    }
    let two_d = 2.0 * d;
    let phi1 = if b > 0.0 {
        angle(-(b + w), two_d)
    } else {
        angle(two_d, b - w)
    };
    let phi2 = if b < 0.0 {
        angle(w - b, two_d)
    } else {
        angle(two_d, b + w)
    };
    (phi1, phi2)
}

pub fn analytic_spectrum(spec: &ModelSpec) -> AnalyticSpectrum {
    let (p, a, b) = spec.split_couplings();
    let d = spec.dm.strength;
    let w = spec.mixing_frequency();
    let energies = [p + a - b, p - a + b, -p + w, -p - w];
    let mixing = match spec.dm.axis {
        DmAxis::X => {
            let (t1, t2) = x_angles(d, a + b, w);
            Mixing::Angles(t1, t2)
        }
        DmAxis::Y => {
            let (f1, f2) = y_angles(d, a + b, w);
            Mixing::Angles(f1, f2)
        }
        DmAxis::Z => {
            let chi = if w == 0.0 {
                Complex::new(1.0, 0.0)
            } else {
                Complex::new(a + b, -2.0 * d) / w
            };
            Mixing::Phase(chi)
        }
    };
    AnalyticSpectrum {
        energies,
        w,
        mixing,
    }
}

/// Closed-form eigenstates Ψ₁..Ψ₄, paired with `analytic_spectrum(spec).energies`.
pub fn analytic_eigenstates(spec: &ModelSpec) -> [Vector4; 4] {
    let h = FRAC_1_SQRT_2;
    let r = |x: f64| Complex::new(x * h, 0.0);
    let i = |x: f64| Complex::new(0.0, x * h);
    let o = Complex::new(0.0, 0.0);

    match analytic_spectrum(spec).mixing {
        Mixing::Angles(t1, t2) if spec.dm.axis == DmAxis::X => {
            let (s1, c1) = t1.sin_cos();
            let (s2, c2) = t2.sin_cos();
            [
                [o, r(1.0), r(1.0), o],
                [r(1.0), o, o, r(1.0)],
                [r(s1), i(-c1), i(c1), r(-s1)],
                [r(s2), i(c2), i(-c2), r(-s2)],
            ]
        }
        Mixing::Angles(f1, f2) => {
            let (s1, c1) = f1.sin_cos();
            let (s2, c2) = f2.sin_cos();
            [
                [o, r(1.0), r(1.0), o],
                [r(1.0), o, o, r(-1.0)],
                [r(s1), r(-c1), r(c1), r(s1)],
                [r(s2), r(-c2), r(c2), r(s2)],
            ]
        }
        Mixing::Phase(chi) => [
            [r(1.0), o, o, r(1.0)],
            [r(1.0), o, o, r(-1.0)],
            [o, r(1.0), chi * h, o],
            [o, r(1.0), -chi * h, o],
        ],
    }
}
