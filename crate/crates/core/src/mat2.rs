//! Exact 2x2 complex linear algebra: general complex matrices, Hermitian
//! matrices stored in reduced form, special unitaries parametrized by Euler
//! angles, and the closed-form Hermitian eigendecomposition.
//!
//! The Euler parametrization used throughout is
//!
//! ```text
//! u(alpha, beta, gamma) =
//!   [ cos(beta/2) e^{-i(alpha+gamma)/2}   -sin(beta/2) e^{ i(alpha-gamma)/2} ]
//!   [ sin(beta/2) e^{-i(alpha-gamma)/2}    cos(beta/2) e^{ i(alpha+gamma)/2} ]
//! ```
//!
//! which is special-unitary (det u = 1) for all angles. Angle extraction from
//! a matrix recovers `(alpha, beta, gamma)` only up to the global sign of the
//! matrix; every consumer in this crate uses unitaries through conjugation,
//! which is insensitive to that sign.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::ops::{Add, Mul, Sub};

/// Construction-check tolerance for unitarity and hermiticity.
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// Wrap an angle into [0, 2*pi).
pub(crate) fn wrap_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// General 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2 {
    pub e: [[Complex64; 2]; 2],
}

impl CMat2 {
    pub fn new(e: [[Complex64; 2]; 2]) -> Self {
        Self { e }
    }

    pub fn zero() -> Self {
        Self {
            e: [[Complex64::new(0.0, 0.0); 2]; 2],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        m.e[0][0] = Complex64::new(1.0, 0.0);
        m.e[1][1] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn from_real_diag(a: f64, b: f64) -> Self {
        let mut m = Self::zero();
        m.e[0][0] = Complex64::new(a, 0.0);
        m.e[1][1] = Complex64::new(b, 0.0);
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            e: [
                [self.e[0][0].conj(), self.e[1][0].conj()],
                [self.e[0][1].conj(), self.e[1][1].conj()],
            ],
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for row in m.e.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        m
    }

    /// Entrywise max-modulus distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.e[i][j] - other.e[i][j]).norm());
            }
        }
        d
    }

    /// Max modulus over entries.
    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Self::zero())
    }

    pub fn is_special_unitary(&self, tol: f64) -> bool {
        let gram = *self * self.adjoint();
        gram.max_abs_diff(&Self::identity()) <= tol && (self.det() - 1.0).norm() <= tol
    }

    /// Exact Hermitian symmetrization (m + m^dag)/2, dropping the
    /// anti-Hermitian roundoff of a product that is Hermitian in exact
    /// arithmetic.
    pub fn hermitian_part(&self) -> Hermitian2 {
        let off = (self.e[0][1] + self.e[1][0].conj()) * 0.5;
        Hermitian2 {
            d1: self.e[0][0].re,
            d2: self.e[1][1].re,
            off,
        }
    }
}

impl Add for CMat2 {
    type Output = CMat2;
    fn add(self, rhs: CMat2) -> CMat2 {
        let mut m = CMat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.e[i][j] = self.e[i][j] + rhs.e[i][j];
            }
        }
        m
    }
}

impl Sub for CMat2 {
    type Output = CMat2;
    fn sub(self, rhs: CMat2) -> CMat2 {
        let mut m = CMat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.e[i][j] = self.e[i][j] - rhs.e[i][j];
            }
        }
        m
    }
}

impl Mul for CMat2 {
    type Output = CMat2;
    fn mul(self, rhs: CMat2) -> CMat2 {
        let mut m = CMat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.e[i][j] = self.e[i][0] * rhs.e[0][j] + self.e[i][1] * rhs.e[1][j];
            }
        }
        m
    }
}

/// 2x2 Hermitian matrix in reduced storage: real diagonal plus the (1,2)
/// entry; the (2,1) entry is its conjugate by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hermitian2 {
    d1: f64,
    d2: f64,
    off: Complex64,
}

impl Hermitian2 {
    pub fn new(h11: f64, h22: f64, h12: Complex64) -> Self {
        Self {
            d1: h11,
            d2: h22,
            off: h12,
        }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0, Complex64::new(0.0, 0.0))
    }

    pub fn identity() -> Self {
        Self::new(1.0, 1.0, Complex64::new(0.0, 0.0))
    }

    pub fn diagonal(a: f64, b: f64) -> Self {
        Self::new(a, b, Complex64::new(0.0, 0.0))
    }

    /// Validating constructor from a general matrix; rejects matrices whose
    /// anti-Hermitian part exceeds `tol`.
    pub fn from_matrix(m: &CMat2, tol: f64) -> Result<Self> {
        let asym = ((m.e[0][1] - m.e[1][0].conj()).norm())
            .max(m.e[0][0].im.abs())
            .max(m.e[1][1].im.abs());
        if asym > tol {
            return Err(Error::NotHermitian { max_asym: asym });
        }
        Ok(m.hermitian_part())
    }

    pub fn h11(&self) -> f64 {
        self.d1
    }

    pub fn h22(&self) -> f64 {
        self.d2
    }

    pub fn h12(&self) -> Complex64 {
        self.off
    }

    pub fn h21(&self) -> Complex64 {
        self.off.conj()
    }

    pub fn to_matrix(&self) -> CMat2 {
        CMat2::new([
            [Complex64::new(self.d1, 0.0), self.off],
            [self.off.conj(), Complex64::new(self.d2, 0.0)],
        ])
    }

    pub fn trace(&self) -> f64 {
        self.d1 + self.d2
    }

    pub fn det(&self) -> f64 {
        self.d1 * self.d2 - self.off.norm_sqr()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.d1 + other.d1, self.d2 + other.d2, self.off + other.off)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.d1 - other.d1, self.d2 - other.d2, self.off - other.off)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.d1 * s, self.d2 * s, self.off * s)
    }

    /// Matrix square; Hermitian by construction.
    pub fn square(&self) -> Self {
        let n = self.off.norm_sqr();
        Self::new(
            self.d1 * self.d1 + n,
            self.d2 * self.d2 + n,
            self.off * (self.d1 + self.d2),
        )
    }

    /// Real trace of the product of two Hermitian matrices.
    pub fn trace_product(&self, other: &Self) -> f64 {
        self.d1 * other.d1 + self.d2 * other.d2 + 2.0 * (self.off * other.off.conj()).re
    }

    /// Entrywise max-modulus distance.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.d1 - other.d1)
            .abs()
            .max((self.d2 - other.d2).abs())
            .max((self.off - other.off).norm())
    }

    /// Max modulus over entries.
    pub fn max_abs(&self) -> f64 {
        self.d1.abs().max(self.d2.abs()).max(self.off.norm())
    }

    /// Closed-form eigenvalues `tr/2 +- sqrt((h11-h22)^2/4 + |h12|^2)`,
    /// returned as (larger, smaller).
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * (self.d1 + self.d2);
        let disc = (0.25 * (self.d1 - self.d2) * (self.d1 - self.d2) + self.off.norm_sqr()).sqrt();
        (mean + disc, mean - disc)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().1
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues().0
    }

    /// Closed-form eigendecomposition with a deterministic gauge.
    ///
    /// Returns `EigenDecomp2 { lambda_up >= lambda_down, basis }` with
    /// `basis.conjugate_diag(lambda_up, lambda_down)` reproducing `self`.
    /// A degenerate spectrum yields the identity basis.
    pub fn eigendecompose(&self) -> EigenDecomp2 {
        let (up, down) = self.eigenvalues();
        let scale = self.max_abs().max(1.0);
        if up - down <= 1e-14 * scale {
            return EigenDecomp2 {
                lambda_up: up,
                lambda_down: down,
                basis: EulerUnitary::identity(),
            };
        }
        // Eigenvector of the larger eigenvalue; of the two algebraic
        // candidates pick the one whose leading component cannot vanish.
        let (a, b) = if self.d1 >= self.d2 {
            (Complex64::new(up - self.d2, 0.0), self.off.conj())
        } else {
            (self.off, Complex64::new(up - self.d1, 0.0))
        };
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (a, b) = (a / norm, b / norm);
        // u^dag has columns (v_up, v_down) with v_down the orthogonal
        // complement chosen so det(u) = 1.
        let u = CMat2::new([[a.conj(), b.conj()], [-b, a]]);
        let basis = EulerUnitary::from_special_unitary(&u)
            .expect("eigenvector matrix is special-unitary by construction");
        EigenDecomp2 {
            lambda_up: up,
            lambda_down: down,
            basis,
        }
    }

    /// Conjugation `u^dag h u`. The result is Hermitian in exact arithmetic;
    /// roundoff is removed by exact symmetrization.
    pub fn conjugated_by(&self, u: &EulerUnitary) -> Self {
        let m = u.matrix();
        (m.adjoint() * self.to_matrix() * m).hermitian_part()
    }
}

/// Rotation-group element parametrized by Euler angles, with
/// `alpha, gamma in [0, 2*pi)` and `beta in [0, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EulerAngles", into = "EulerAngles")]
pub struct EulerUnitary {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

/// Plain serialization mirror of [`EulerUnitary`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl TryFrom<EulerAngles> for EulerUnitary {
    type Error = Error;
    fn try_from(a: EulerAngles) -> Result<Self> {
        EulerUnitary::new(a.alpha, a.beta, a.gamma)
    }
}

impl From<EulerUnitary> for EulerAngles {
    fn from(u: EulerUnitary) -> Self {
        EulerAngles {
            alpha: u.alpha,
            beta: u.beta,
            gamma: u.gamma,
        }
    }
}

impl EulerUnitary {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || !gamma.is_finite() {
            return Err(Error::AngleOutOfRange {
                name: "angle",
                value: f64::NAN,
                range: "finite values",
            });
        }
        if !(0.0..=std::f64::consts::PI).contains(&beta) {
            return Err(Error::AngleOutOfRange {
                name: "beta",
                value: beta,
                range: "[0, pi]",
            });
        }
        Ok(Self {
            alpha: wrap_angle(alpha),
            beta,
            gamma: wrap_angle(gamma),
        })
    }

    pub fn identity() -> Self {
        Self {
            alpha: 0.0,
            beta: 0.0,
            gamma: 0.0,
        }
    }

    /// Measurement direction with `gamma = 0`; tomographic quantities never
    /// depend on `gamma`.
    pub fn from_axis_angles(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, 0.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Materialize the Euler-angle matrix.
    pub fn matrix(&self) -> CMat2 {
        let c = (0.5 * self.beta).cos();
        let s = (0.5 * self.beta).sin();
        let hp = 0.5 * (self.alpha + self.gamma);
        let hm = 0.5 * (self.alpha - self.gamma);
        CMat2::new([
            [
                Complex64::from_polar(c, -hp),
                -Complex64::from_polar(s, hm),
            ],
            [Complex64::from_polar(s, -hm), Complex64::from_polar(c, hp)],
        ])
    }

    /// Unit Bloch axis this unitary measures along: the direction n such
    /// that w_up - w_down = n . (Bloch vector of the state).
    pub fn axis(&self) -> [f64; 3] {
        let sb = self.beta.sin();
        [
            -self.alpha.cos() * sb,
            self.alpha.sin() * sb,
            self.beta.cos(),
        ]
    }

    /// Recover Euler angles from a special-unitary matrix.
    ///
    /// The parametrization covers SU(2) only up to global sign, so the
    /// returned element satisfies `u.matrix() = +/- m`; conjugation by the
    /// result is identical to conjugation by `m`. When the matrix is
    /// diagonal or anti-diagonal the convention `gamma = 0` is applied and
    /// all phase is absorbed into `alpha`.
    pub fn from_special_unitary(m: &CMat2) -> Result<Self> {
        if !m.is_special_unitary(1e-9) {
            return Err(Error::NotSpecialUnitary);
        }
        let ch = m.e[0][0].norm();
        let sh = m.e[1][0].norm();
        let beta = 2.0 * sh.atan2(ch);
        let (alpha, gamma) = if sh <= 1e-12 {
            (-2.0 * m.e[0][0].arg(), 0.0)
        } else if ch <= 1e-12 {
            (-2.0 * m.e[1][0].arg(), 0.0)
        } else {
            let p = m.e[1][1].arg();
            let q = -m.e[1][0].arg();
            (p + q, p - q)
        };
        Self::new(alpha, beta.clamp(0.0, std::f64::consts::PI), gamma)
    }
}

/// Traceless Hermitian operator measuring spin along the axis selected by
/// `(alpha, beta)`:
///
/// ```text
/// F(alpha, beta) = [ cos(beta)                  -e^{ i alpha} sin(beta) ]
///                  [ -e^{-i alpha} sin(beta)    -cos(beta)              ]
/// ```
///
/// Its eigenvalues are +/-1 for every direction, so `F^2 = I`.
pub fn spin_axis_operator(alpha: f64, beta: f64) -> Hermitian2 {
    let cb = beta.cos();
    let sb = beta.sin();
    Hermitian2::new(cb, -cb, -Complex64::from_polar(sb, alpha))
}

/// Eigendecomposition of a 2x2 Hermitian matrix: eigenvalues ordered
/// `lambda_up >= lambda_down`, with the basis unitary `u` satisfying
/// `h = u^dag diag(lambda_up, lambda_down) u`.
#[derive(Debug, Clone, Copy)]
pub struct EigenDecomp2 {
    pub lambda_up: f64,
    pub lambda_down: f64,
    pub basis: EulerUnitary,
}

impl EigenDecomp2 {
    /// Rebuild `u^dag diag(lambda_up, lambda_down) u`.
    pub fn reconstruct(&self) -> Hermitian2 {
        Hermitian2::diagonal(self.lambda_up, self.lambda_down).conjugated_by(&self.basis)
    }
}
