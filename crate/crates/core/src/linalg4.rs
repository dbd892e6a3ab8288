//! Dense complex linear algebra for 4×4 matrices.
//!
//! Everything here is sized for a two-qubit Hilbert space. Row/column index
//! `k` corresponds to the computational basis state with binary digits of `k`,
//! i.e. the order |00⟩, |01⟩, |10⟩, |11⟩.
//!
//! The eigensolver is a cyclic complex Jacobi method. For a 4×4 Hermitian
//! matrix it converges in a handful of sweeps and is unconditionally stable,
//! which is all that the Gibbs-state and concurrence oracles need.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

pub use num_complex::Complex64 as Complex;

use crate::error::{Error, Result};

/// Tolerance on `max |a - a^H|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues above `-PSD_FLOOR` are clamped to zero where a PSD input is required.
pub const PSD_FLOOR: f64 = 1e-12;
/// Relative off-diagonal Frobenius tolerance for Jacobi convergence.
pub const JACOBI_OFF_TOL: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 60;
/// Relative column-orthogonality threshold for the one-sided Jacobi SVD.
const SVD_ORTHO_TOL: f64 = 1e-14;

pub type Vector4 = [Complex; 4];

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// Dense 4×4 complex matrix, row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix4 {
    entries: [[Complex; 4]; 4],
}

impl ComplexMatrix4 {
    pub const fn from_rows(entries: [[Complex; 4]; 4]) -> Self {
        Self { entries }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut entries = [[ZERO; 4]; 4];
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e = f(r, c);
            }
        }
        Self { entries }
    }

    pub fn zeros() -> Self {
        Self::from_rows([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { ONE } else { ZERO })
    }

    pub fn from_real_diagonal(diag: [f64; 4]) -> Self {
        Self::from_fn(|r, c| {
            if r == c {
                Complex::new(diag[r], 0.0)
            } else {
                ZERO
            }
        })
    }

    /// Outer product `u v^H`.
    pub fn outer(u: &Vector4, v: &Vector4) -> Self {
        Self::from_fn(|r, c| u[r] * v[c].conj())
    }

    pub fn rows(&self) -> &[[Complex; 4]; 4] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|r, c| self.entries[c][r].conj())
    }

    /// Entrywise complex conjugate (not transposed).
    pub fn conj(&self) -> Self {
        Self::from_fn(|r, c| self.entries[r][c].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.entries[c][r])
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::from_fn(|r, c| self.entries[r][c] * k)
    }

    pub fn trace(&self) -> Complex {
        (0..4).map(|k| self.entries[k][k]).sum()
    }

    /// Largest entry modulus. This is the `‖·‖∞` used for all tolerances in this crate.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `max |a - a^H|` over all entries.
    pub fn hermiticity_deviation(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }

    /// `(a + a^H) / 2`, exactly Hermitian by construction.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(|r, c| (self.entries[r][c] + self.entries[c][r].conj()) * 0.5)
    }

    pub fn mul_vec(&self, v: &Vector4) -> Vector4 {
        let mut out = [ZERO; 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|c| self.entries[r][c] * v[c]).sum();
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.is_finite())
    }

    fn check_finite(&self) -> Result<()> {
        for (r, row) in self.entries.iter().enumerate() {
            for (c, z) in row.iter().enumerate() {
                if !z.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
            }
        }
        Ok(())
    }

    fn check_hermitian(&self) -> Result<()> {
        self.check_finite()?;
        let deviation = self.hermiticity_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }
}

impl Default for ComplexMatrix4 {
    fn default() -> Self {
        Self::zeros()
    }
}

impl Index<(usize, usize)> for ComplexMatrix4 {
    type Output = Complex;

    fn index(&self, (r, c): (usize, usize)) -> &Complex {
        &self.entries[r][c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix4 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex {
        &mut self.entries[r][c]
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.entries[r][c] + rhs.entries[r][c])
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.entries[r][c] - rhs.entries[r][c])
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| (0..4).map(|k| self.entries[r][k] * rhs.entries[k][c]).sum())
    }
}

impl fmt::Debug for ComplexMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix4 [")?;
        for row in &self.entries {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>12.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub fn inner(u: &Vector4, v: &Vector4) -> Complex {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(v: &Vector4) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigen-decomposition of a Hermitian matrix: eigenvalues ascending,
/// `eigenvectors[k]` pairs with `eigenvalues[k]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianEigenSystem {
    pub eigenvalues: [f64; 4],
    pub eigenvectors: [Vector4; 4],
}

impl HermitianEigenSystem {
    /// Matrix whose column `k` is `eigenvectors[k]`.
    pub fn eigenvector_matrix(&self) -> ComplexMatrix4 {
        ComplexMatrix4::from_fn(|r, c| self.eigenvectors[c][r])
    }

    /// `V diag(f(λ)) V^H`.
    pub fn map_spectrum(&self, mut f: impl FnMut(f64) -> f64) -> Result<ComplexMatrix4> {
        let mut out = ComplexMatrix4::zeros();
        for (k, (&lambda, v)) in self.eigenvalues.iter().zip(&self.eigenvectors).enumerate() {
            let fk = f(lambda);
            if !fk.is_finite() {
                return Err(Error::invalid(
                    "f",
                    format!("non-finite value {fk} at eigenvalue #{k} ({lambda})"),
                ));
            }
            for r in 0..4 {
                for c in 0..4 {
                    out[(r, c)] += v[r] * v[c].conj() * fk;
                }
            }
        }
        Ok(out)
    }
}

fn off_diagonal_norm(m: &[[Complex; 4]; 4]) -> f64 {
    let mut acc = 0.0;
    for (r, row) in m.iter().enumerate() {
        for (c, z) in row.iter().enumerate() {
            if r != c {
                acc += z.norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic complex Jacobi eigensolver for a Hermitian 4×4 matrix.
pub fn hermitian_eigensystem(a: &ComplexMatrix4) -> Result<HermitianEigenSystem> {
    a.check_hermitian()?;
    let mut m = a.hermitian_part().entries;
    let mut v = ComplexMatrix4::identity().entries;
    let target = JACOBI_OFF_TOL * a.frobenius_norm();

    let mut converged = false;
    for _ in 0..=JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            converged = true;
            break;
        }
        for p in 0..3 {
            for q in p + 1..4 {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order = [0usize, 1, 2, 3];
    // stable: ties keep original index order
    order.sort_by(|&i, &j| m[i][i].re.total_cmp(&m[j][j].re));

    let mut eigenvalues = [0.0; 4];
    let mut eigenvectors = [[ZERO; 4]; 4];
    for (slot, &k) in order.iter().enumerate() {
        eigenvalues[slot] = m[k][k].re;
        let mut col = [v[0][k], v[1][k], v[2][k], v[3][k]];
        fix_phase(&mut col);
        eigenvectors[slot] = col;
    }
    Ok(HermitianEigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// One Jacobi rotation zeroing `m[p][q]`; accumulates the rotation into `v`.
// Row and column pairs are updated together, so index loops read best.
#[allow(clippy::needless_range_loop)]
fn rotate(m: &mut [[Complex; 4]; 4], v: &mut [[Complex; 4]; 4], p: usize, q: usize) {
    let g = m[p][q];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let phase = g / g_abs;
    let tau = (m[q][q].re - m[p][p].re) / (2.0 * g_abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + tau.hypot(1.0))
    } else {
        -1.0 / (-tau + tau.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let s_phase = phase * s;
    let s_phase_conj = s_phase.conj();

    // m <- m U, with U_pp = U_qq = c, U_pq = s e^{iφ}, U_qp = -s e^{-iφ}
    for row in m.iter_mut() {
        let (akp, akq) = (row[p], row[q]);
        row[p] = akp * c - akq * s_phase_conj;
        row[q] = akp * s_phase + akq * c;
    }
    // m <- U^H m
    for k in 0..4 {
        let (apk, aqk) = (m[p][k], m[q][k]);
        m[p][k] = apk * c - aqk * s_phase;
        m[q][k] = apk * s_phase_conj + aqk * c;
    }
    m[p][q] = ZERO;
    m[q][p] = ZERO;
    m[p][p].im = 0.0;
    m[q][q].im = 0.0;

    for row in v.iter_mut() {
        let (akp, akq) = (row[p], row[q]);
        row[p] = akp * c - akq * s_phase_conj;
        row[q] = akp * s_phase + akq * c;
    }
}

/// Rotate so the first component with modulus above 1e-12 is real and nonnegative.
fn fix_phase(v: &mut Vector4) {
    if let Some(lead) = v.iter().copied().find(|z| z.norm() > 1e-12) {
        let rot = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= rot;
        }
    }
}

/// `V diag(f(λ_k)) V^H` for Hermitian `a`.
pub fn matrix_function_hermitian(
    a: &ComplexMatrix4,
    f: impl FnMut(f64) -> f64,
) -> Result<ComplexMatrix4> {
    hermitian_eigensystem(a)?.map_spectrum(f)
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in `[-PSD_FLOOR, 0)` are treated as zero.
pub fn hermitian_sqrt(a: &ComplexMatrix4) -> Result<ComplexMatrix4> {
    let eig = hermitian_eigensystem(a)?;
    let min = eig.eigenvalues[0];
    if min < -PSD_FLOOR {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
        });
    }
    eig.map_spectrum(|x| x.max(0.0).sqrt())
}

/// Singular values of `a`, sorted descending.
///
/// One-sided (Hestenes) Jacobi: columns are rotated pairwise until mutually
/// orthogonal, and the singular values are the final column norms. Each value
/// carries an absolute error of order `ε‖a‖`, without the squaring of the
/// spectrum that `a^H a` would introduce. Values below that floor are noise.
#[allow(clippy::needless_range_loop)]
pub fn singular_values(a: &ComplexMatrix4) -> Result<[f64; 4]> {
    a.check_finite()?;
    // cols[k] is column k of `a`
    let mut cols = a.transpose().entries;
    // columns below this norm are rounding noise and are not rotated further
    let negligible = (f64::EPSILON * a.frobenius_norm()).powi(2);
    let mut converged = false;
    for _ in 0..=JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in p + 1..4 {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = inner(&cols[p], &cols[q]);
                let g_abs = gamma.norm();
                if g_abs == 0.0
                    || alpha <= negligible
                    || beta <= negligible
                    || g_abs <= SVD_ORTHO_TOL * (alpha * beta).sqrt()
                {
                    continue;
                }
                rotated = true;
                let phase = gamma / g_abs;
                let tau = (beta - alpha) / (2.0 * g_abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + tau.hypot(1.0))
                } else {
                    -1.0 / (-tau + tau.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                let s_phase = phase * (t * c);
                for i in 0..4 {
                    let (xp, xq) = (cols[p][i], cols[q][i]);
                    cols[p][i] = xp * c - xq * s_phase.conj();
                    cols[q][i] = xp * s_phase + xq * c;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }
    let mut sv = cols.map(|col| vec_norm(&col));
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn assert_eigensystem_valid(a: &ComplexMatrix4, eig: &HermitianEigenSystem) {
        let tol = 1e-10 * (1.0 + a.max_abs());
        for k in 0..4 {
            let av = a.mul_vec(&eig.eigenvectors[k]);
            let residual = av
                .iter()
                .zip(&eig.eigenvectors[k])
                .map(|(x, y)| (x - y * eig.eigenvalues[k]).norm())
                .fold(0.0, f64::max);
            assert!(residual <= tol, "residual {residual} for k={k}");
            for j in 0..4 {
                let ip = inner(&eig.eigenvectors[j], &eig.eigenvectors[k]);
                let expect = if j == k { 1.0 } else { 0.0 };
                assert!((ip - c(expect, 0.0)).norm() <= 1e-10);
            }
        }
        assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn identity_spectrum() {
        let eig = hermitian_eigensystem(&ComplexMatrix4::identity()).unwrap();
        assert_eq!(eig.eigenvalues, [1.0; 4]);
        assert_eigensystem_valid(&ComplexMatrix4::identity(), &eig);
    }

    #[test]
    fn diagonal_matrix_is_sorted_with_standard_basis() {
        let a = ComplexMatrix4::from_real_diagonal([2.0, -1.0, 5.0, -3.0]);
        let eig = hermitian_eigensystem(&a).unwrap();
        assert_eq!(eig.eigenvalues, [-3.0, -1.0, 2.0, 5.0]);
        let expect_index = [3, 1, 0, 2];
        for (k, &idx) in expect_index.iter().enumerate() {
            for r in 0..4 {
                let want = if r == idx { 1.0 } else { 0.0 };
                assert_eq!(eig.eigenvectors[k][r], c(want, 0.0));
            }
        }
    }

    #[test]
    fn zero_matrix() {
        let eig = hermitian_eigensystem(&ComplexMatrix4::zeros()).unwrap();
        assert_eq!(eig.eigenvalues, [0.0; 4]);
    }

    #[test]
    fn phase_convention_first_component_real() {
        let a = ComplexMatrix4::from_rows([
            [c(1.0, 0.0), c(0.0, 2.0), c(0.3, -0.1), ZERO],
            [c(0.0, -2.0), c(-1.0, 0.0), ZERO, c(0.5, 0.5)],
            [c(0.3, 0.1), ZERO, c(0.2, 0.0), c(0.0, 1.0)],
            [ZERO, c(0.5, -0.5), c(0.0, -1.0), c(0.7, 0.0)],
        ]);
        let eig = hermitian_eigensystem(&a).unwrap();
        assert_eigensystem_valid(&a, &eig);
        for v in &eig.eigenvectors {
            let lead = v.iter().find(|z| z.norm() > 1e-12).unwrap();
            assert_eq!(lead.im, 0.0);
            assert!(lead.re > 0.0);
        }
        let rebuilt = eig.map_spectrum(|x| x).unwrap();
        assert!((rebuilt - a).max_abs() <= 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut a = ComplexMatrix4::identity();
        a[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(
            hermitian_eigensystem(&a),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn rejects_non_finite() {
        let mut a = ComplexMatrix4::identity();
        a[(2, 2)] = c(f64::NAN, 0.0);
        assert_eq!(
            hermitian_eigensystem(&a),
            Err(Error::NonFinite { row: 2, col: 2 })
        );
    }

    #[test]
    fn exp_of_identity() {
        let e = matrix_function_hermitian(&ComplexMatrix4::identity(), f64::exp).unwrap();
        let want = ComplexMatrix4::identity().scale(std::f64::consts::E);
        assert!((e - want).max_abs() <= 1e-15);
    }

    #[test]
    fn exp_of_log_diagonal() {
        let a = ComplexMatrix4::from_real_diagonal([0.0, 2f64.ln(), 3f64.ln(), 4f64.ln()]);
        let e = matrix_function_hermitian(&a, f64::exp).unwrap();
        let want = ComplexMatrix4::from_real_diagonal([1.0, 2.0, 3.0, 4.0]);
        assert!((e - want).max_abs() <= 1e-14);
    }

    #[test]
    fn non_finite_function_value_is_rejected() {
        let a = ComplexMatrix4::from_real_diagonal([0.0, 1.0, 2.0, 3.0]);
        assert!(matrix_function_hermitian(&a, |x| 1.0 / x).is_err());
    }

    #[test]
    fn sqrt_examples() {
        let id = ComplexMatrix4::identity();
        assert!((hermitian_sqrt(&id).unwrap() - id).max_abs() <= 1e-15);

        let d = ComplexMatrix4::from_real_diagonal([4.0, 9.0, 0.0, 1.0]);
        let want = ComplexMatrix4::from_real_diagonal([2.0, 3.0, 0.0, 1.0]);
        assert!((hermitian_sqrt(&d).unwrap() - want).max_abs() <= 1e-15);

        let mixed = id.scale(0.25);
        assert!((hermitian_sqrt(&mixed).unwrap() - id.scale(0.5)).max_abs() <= 1e-15);
    }

    #[test]
    fn sqrt_clamps_tiny_negative_and_rejects_large_negative() {
        let tiny = ComplexMatrix4::from_real_diagonal([1.0, -5e-13, 0.0, 0.0]);
        let s = hermitian_sqrt(&tiny).unwrap();
        assert_eq!(s[(1, 1)], ZERO);

        let bad = ComplexMatrix4::from_real_diagonal([1.0, -1e-6, 0.0, 0.0]);
        assert!(matches!(
            hermitian_sqrt(&bad),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn singular_values_of_diagonal_and_unitary() {
        let d = ComplexMatrix4::from_real_diagonal([-3.0, 0.5, 2.0, 0.0]);
        assert_eq!(singular_values(&d).unwrap(), [3.0, 2.0, 0.5, 0.0]);

        let a = ComplexMatrix4::from_rows([
            [c(1.0, 0.0), c(0.0, 2.0), c(0.3, -0.1), ZERO],
            [c(0.0, -2.0), c(-1.0, 0.0), ZERO, c(0.5, 0.5)],
            [c(0.3, 0.1), ZERO, c(0.2, 0.0), c(0.0, 1.0)],
            [ZERO, c(0.5, -0.5), c(0.0, -1.0), c(0.7, 0.0)],
        ]);
        // Hermitian: singular values are |eigenvalues|
        let mut want = hermitian_eigensystem(&a).unwrap().eigenvalues.map(f64::abs);
        want.sort_by(|x, y| y.total_cmp(x));
        for (s, w) in singular_values(&a).unwrap().iter().zip(want) {
            assert!((s - w).abs() <= 1e-13);
        }
    }

    #[test]
    fn singular_values_resolve_tiny_values_absolutely() {
        let d = ComplexMatrix4::from_real_diagonal([1.0, 1e-9, 1e-14, 1e-20]);
        let u = hermitian_eigensystem(&ComplexMatrix4::from_rows([
            [c(1.0, 0.0), c(0.0, 2.0), c(0.3, -0.1), ZERO],
            [c(0.0, -2.0), c(-1.0, 0.0), ZERO, c(0.5, 0.5)],
            [c(0.3, 0.1), ZERO, c(0.2, 0.0), c(0.0, 1.0)],
            [ZERO, c(0.5, -0.5), c(0.0, -1.0), c(0.7, 0.0)],
        ]))
        .unwrap()
        .eigenvector_matrix();
        let sv = singular_values(&(u * d * u.adjoint())).unwrap();
        for (s, w) in sv.iter().zip([1.0, 1e-9, 1e-14, 1e-20]) {
            assert!((s - w).abs() <= 1e-15, "{s} vs {w}");
        }
    }
}
