//! Spin tomograms and the star-product machinery around them.
//!
//! A qubit state is fully encoded by its tomogram `w(m, u)`: the probability
//! of finding spin projection `m = +/-1/2` along the axis selected by the
//! rotation `u`. The dequantizer `U(x) = I/2 + m F(alpha, beta)` produces the
//! tomogram by trace pairing, the quantizer
//! `D(x) = (I/2 + 3m F(alpha, beta)) / (8 pi^2)` reconstructs the state by
//! integrating `w(x) D(x)` over the rotation group, and observable averages
//! come out of the same pairing in three interchangeable ways (trace, dual
//! symbol under the group integral, and eigen-outcome weighting). All three
//! are implemented side by side so they can be checked against each other.

use crate::error::{Error, Result};
use crate::mat2::{spin_axis_operator, CMat2, EulerUnitary, Hermitian2, CONSTRUCTION_TOL};
use crate::quad::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// 1 / (8 pi^2): the quantizer normalization, also the group volume inverse.
pub const INV_GROUP_VOLUME: f64 = 1.0 / (8.0 * PI * PI);

/// Spin projection label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    /// Numeric projection value, +1/2 or -1/2.
    pub fn value(self) -> f64 {
        match self {
            Spin::Up => 0.5,
            Spin::Down => -0.5,
        }
    }
}

/// Point `x = (m, alpha, beta, gamma)` on the measurement parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub m: Spin,
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl PhasePoint {
    pub fn new(m: Spin, alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&beta) {
            return Err(Error::AngleOutOfRange {
                name: "beta",
                value: beta,
                range: "[0, pi]",
            });
        }
        Ok(Self {
            m,
            alpha,
            beta,
            gamma,
        })
    }

    pub fn at_direction(m: Spin, u: &EulerUnitary) -> Self {
        Self {
            m,
            alpha: u.alpha(),
            beta: u.beta(),
            gamma: u.gamma(),
        }
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
}

/// Dequantizer `U(x) = I/2 + m F(alpha, beta)`: the rank-1 projector onto
/// the spin-`m` eigenstate along the measurement axis.
pub fn dequantizer(x: &PhasePoint) -> Hermitian2 {
    Hermitian2::identity()
        .scale(0.5)
        .add(&spin_axis_operator(x.alpha, x.beta).scale(x.m.value()))
}

/// Quantizer `D(x) = (I/2 + 3m F(alpha, beta)) / (8 pi^2)`, the dual element
/// that inverts the tomogram map under the group integral.
pub fn quantizer(x: &PhasePoint) -> Hermitian2 {
    Hermitian2::identity()
        .scale(0.5)
        .add(&spin_axis_operator(x.alpha, x.beta).scale(3.0 * x.m.value()))
        .scale(INV_GROUP_VOLUME)
}

/// Tomogram value pair `(w_up, w_down)` at one measurement direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TomogramPoint {
    w_up: f64,
    w_down: f64,
}

impl TomogramPoint {
    /// Validating constructor: both components in [0, 1] and summing to 1,
    /// within 1e-12.
    pub fn new(w_up: f64, w_down: f64) -> Result<Self> {
        let in_range =
            |w: f64| (-CONSTRUCTION_TOL..=1.0 + CONSTRUCTION_TOL).contains(&w) && w.is_finite();
        if !in_range(w_up) || !in_range(w_down) || (w_up + w_down - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::InvalidProbabilities {
                p_up: w_up,
                p_down: w_down,
            });
        }
        Ok(Self { w_up, w_down })
    }

    /// Build from the asymmetry `t = w_up - w_down`, so the pair is
    /// normalized by construction.
    pub(crate) fn from_asymmetry(t: f64) -> Self {
        Self {
            w_up: 0.5 * (1.0 + t),
            w_down: 0.5 * (1.0 - t),
        }
    }

    pub fn w_up(&self) -> f64 {
        self.w_up
    }

    pub fn w_down(&self) -> f64 {
        self.w_down
    }

    pub fn component(&self, m: Spin) -> f64 {
        match m {
            Spin::Up => self.w_up,
            Spin::Down => self.w_down,
        }
    }

    /// `w_up - w_down`.
    pub fn asymmetry(&self) -> f64 {
        self.w_up - self.w_down
    }
}

/// Serialization shape of a density matrix.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct StateJson {
    pub rho11: f64,
    pub rho22: f64,
    pub re_rho12: f64,
    pub im_rho12: f64,
}

/// Qubit density matrix: Hermitian, unit trace, positive semidefinite
/// (both checked at construction within 1e-12).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateJson", into = "StateJson")]
pub struct DensityMatrix {
    h: Hermitian2,
}

impl TryFrom<StateJson> for DensityMatrix {
    type Error = Error;
    fn try_from(s: StateJson) -> Result<Self> {
        DensityMatrix::from_entries(s.rho11, s.rho22, Complex64::new(s.re_rho12, s.im_rho12))
    }
}

impl From<DensityMatrix> for StateJson {
    fn from(d: DensityMatrix) -> Self {
        StateJson {
            rho11: d.h.h11(),
            rho22: d.h.h22(),
            re_rho12: d.h.h12().re,
            im_rho12: d.h.h12().im,
        }
    }
}

impl DensityMatrix {
    pub fn new(h: Hermitian2) -> Result<Self> {
        let trace = h.trace();
        if !(trace - 1.0).abs().is_finite() || (trace - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::NonUnitTrace { trace });
        }
        let min_eig = h.min_eigenvalue();
        if min_eig < -CONSTRUCTION_TOL {
            return Err(Error::NotPositiveSemidefinite { min_eig });
        }
        Ok(Self { h })
    }

    pub fn from_entries(rho11: f64, rho22: f64, rho12: Complex64) -> Result<Self> {
        Self::new(Hermitian2::new(rho11, rho22, rho12))
    }

    /// State with Bloch vector `(x, y, z)`; the vector must lie in the unit
    /// ball.
    pub fn from_bloch(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_entries(
            0.5 * (1.0 + z),
            0.5 * (1.0 - z),
            Complex64::new(0.5 * x, -0.5 * y),
        )
    }

    pub fn maximally_mixed() -> Self {
        Self {
            h: Hermitian2::diagonal(0.5, 0.5),
        }
    }

    pub fn hermitian(&self) -> &Hermitian2 {
        &self.h
    }

    pub fn matrix(&self) -> CMat2 {
        self.h.to_matrix()
    }

    /// Bloch vector `(x, y, z)`.
    pub fn bloch(&self) -> [f64; 3] {
        [
            2.0 * self.h.h12().re,
            -2.0 * self.h.h12().im,
            self.h.h11() - self.h.h22(),
        ]
    }

    /// Euclidean norm of the Bloch vector: 0 for the maximally mixed state,
    /// 1 for pure states.
    pub fn bloch_radius(&self) -> f64 {
        let [x, y, z] = self.bloch();
        (x * x + y * y + z * z).sqrt()
    }

    /// Tomogram at direction `u`, in closed form:
    /// `w(m, u) = 1/2 + m (rho11 - rho22) cos(beta)
    ///          - 2 m Re(rho12 e^{-i alpha}) sin(beta)`.
    /// Independent of `gamma`.
    pub fn tomogram(&self, u: &EulerUnitary) -> TomogramPoint {
        let t = (self.h.h11() - self.h.h22()) * u.beta().cos()
            - 2.0 * (self.h.h12() * Complex64::from_polar(1.0, -u.alpha())).re * u.beta().sin();
        TomogramPoint::from_asymmetry(t)
    }

    /// Tomogram via the trace pairing `Tr(rho U(x))`; agrees with
    /// [`Self::tomogram`] to 1e-12 and exists so the two routes can be
    /// checked against each other.
    pub fn tomogram_trace(&self, x: &PhasePoint) -> f64 {
        self.h.trace_product(&dequantizer(x))
    }

    /// `u^dag rho u`; valid by spectrum preservation.
    pub fn conjugated_by(&self, u: &EulerUnitary) -> DensityMatrix {
        DensityMatrix {
            h: self.h.conjugated_by(u),
        }
    }
}

/// Serialization shape of an observable.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ObservableJson {
    pub a11: f64,
    pub a22: f64,
    pub re_a12: f64,
    pub im_a12: f64,
}

/// Hermitian observable with its eigen-outcome decomposition on demand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "ObservableJson", into = "ObservableJson")]
pub struct Observable {
    h: Hermitian2,
}

impl From<ObservableJson> for Observable {
    fn from(o: ObservableJson) -> Self {
        Observable {
            h: Hermitian2::new(o.a11, o.a22, Complex64::new(o.re_a12, o.im_a12)),
        }
    }
}

impl From<Observable> for ObservableJson {
    fn from(o: Observable) -> Self {
        ObservableJson {
            a11: o.h.h11(),
            a22: o.h.h22(),
            re_a12: o.h.h12().re,
            im_a12: o.h.h12().im,
        }
    }
}

impl Observable {
    pub fn new(h: Hermitian2) -> Self {
        Self { h }
    }

    pub fn identity() -> Self {
        Self {
            h: Hermitian2::identity(),
        }
    }

    pub fn hermitian(&self) -> &Hermitian2 {
        &self.h
    }

    pub fn eigendecompose(&self) -> crate::mat2::EigenDecomp2 {
        self.h.eigendecompose()
    }

    /// Ordinary tomographic symbol `w_A(x) = Tr(A U(x))`.
    pub fn symbol(&self, x: &PhasePoint) -> f64 {
        self.h.trace_product(&dequantizer(x))
    }

    /// Dual tomographic symbol `w_A^d(x) = Tr(A D(x))` via the trace pairing.
    pub fn dual_symbol(&self, x: &PhasePoint) -> f64 {
        self.h.trace_product(&quantizer(x))
    }

    /// Dual symbol in closed form,
    /// `(1/8pi^2) [ (A11+A22)/2 + 3m (A11-A22) cos(beta)
    ///            - 6m Re(A12 e^{-i alpha}) sin(beta) ]`.
    pub fn dual_symbol_closed(&self, x: &PhasePoint) -> f64 {
        let m = x.m.value();
        INV_GROUP_VOLUME
            * (0.5 * self.h.trace()
                + 3.0 * m * (self.h.h11() - self.h.h22()) * x.beta.cos()
                - 6.0
                    * m
                    * (self.h.h12() * Complex64::from_polar(1.0, -x.alpha)).re
                    * x.beta.sin())
    }

    /// Dual symbol through the eigen-outcome factorization
    /// `A = u_A^dag diag(A_up, A_down) u_A` with `u_A = u(phi, theta, .)`:
    /// `(1/8pi^2) { (A_up+A_down)/2 + 3m (A_up-A_down)
    ///   [cos(beta) cos(theta) + cos(alpha-phi) sin(beta) sin(theta)] }`.
    pub fn dual_symbol_outcomes(&self, x: &PhasePoint) -> f64 {
        let d = self.eigendecompose();
        let (phi, theta) = (d.basis.alpha(), d.basis.beta());
        let m = x.m.value();
        INV_GROUP_VOLUME
            * (0.5 * (d.lambda_up + d.lambda_down)
                + 3.0
                    * m
                    * (d.lambda_up - d.lambda_down)
                    * (x.beta.cos() * theta.cos()
                        + (x.alpha - phi).cos() * x.beta.sin() * theta.sin()))
    }
}

/// Quadrature over the measurement group: trapezoid (uniform, periodic) in
/// `alpha`, Gauss-Legendre in `cos(beta)` so the `sin(beta) d beta` measure
/// is handled exactly, and the `gamma` integral taken analytically as a
/// `2 pi` factor since no tomographic integrand depends on `gamma`. The
/// integrands arising here are trigonometric polynomials of degree <= 2, so
/// the rule is exact up to roundoff at the default 16x16 resolution.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    n_alpha: usize,
    n_beta: usize,
    gl: GaussLegendre,
}

impl QuadratureRule {
    pub fn new(n_alpha: usize, n_beta: usize) -> Result<Self> {
        if n_alpha < 4 || n_beta < 2 {
            return Err(Error::InvalidQuadrature { n_alpha, n_beta });
        }
        Ok(Self {
            n_alpha,
            n_beta,
            gl: GaussLegendre::new(n_beta),
        })
    }

    /// The default 16x16 rule.
    pub fn default16() -> Self {
        Self::new(16, 16).expect("16x16 is a valid rule")
    }

    pub fn n_alpha(&self) -> usize {
        self.n_alpha
    }

    pub fn n_beta(&self) -> usize {
        self.n_beta
    }

    /// Uniform alpha nodes `2 pi i / n_alpha`.
    pub fn alpha_nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_alpha).map(move |i| TAU * i as f64 / self.n_alpha as f64)
    }

    /// Per-node alpha weight `2 pi / n_alpha`.
    pub fn alpha_weight(&self) -> f64 {
        TAU / self.n_alpha as f64
    }

    /// Beta nodes as `(beta, weight)` pairs; the weight already contains the
    /// `sin(beta) d beta` measure through the `cos(beta)` substitution. Nodes
    /// are ordered by ascending `cos(beta)`.
    pub fn beta_nodes(&self) -> Vec<(f64, f64)> {
        self.gl
            .nodes
            .iter()
            .zip(&self.gl.weights)
            .map(|(&x, &w)| (x.acos(), w))
            .collect()
    }

    /// Integrate `f` over the full parameter set
    /// (sum over m, alpha and beta quadrature, analytic 2 pi for gamma).
    /// Summation order is fixed (m, then beta, then alpha) so results are
    /// bit-reproducible.
    pub fn integrate(&self, f: impl Fn(&PhasePoint) -> f64) -> f64 {
        let mut total = 0.0;
        for m in Spin::BOTH {
            for (beta, wb) in self.beta_nodes() {
                for alpha in self.alpha_nodes() {
                    let x = PhasePoint {
                        m,
                        alpha,
                        beta,
                        gamma: 0.0,
                    };
                    total += self.alpha_weight() * wb * TAU * f(&x);
                }
            }
        }
        total
    }
}

/// Reconstruct a density matrix from its tomogram by the group integral
/// `rho = integral of w(x) D(x) dx`.
///
/// Returns an error if the integrated trace deviates from 1 by more than
/// 1e-6 or the result fails density-matrix validation; both signal an
/// inconsistent input tomogram.
pub fn reconstruct(
    w: impl Fn(&EulerUnitary) -> TomogramPoint,
    rule: &QuadratureRule,
) -> Result<DensityMatrix> {
    let mut acc = Hermitian2::zero();
    for (beta, wb) in rule.beta_nodes() {
        for alpha in rule.alpha_nodes() {
            let u = EulerUnitary::from_axis_angles(alpha, beta)?;
            let tp = w(&u);
            let base = rule.alpha_weight() * wb * TAU;
            for m in Spin::BOTH {
                let x = PhasePoint {
                    m,
                    alpha,
                    beta,
                    gamma: 0.0,
                };
                acc = acc.add(&quantizer(&x).scale(base * tp.component(m)));
            }
        }
    }
    let trace = acc.trace();
    if (trace - 1.0).abs() > 1e-6 {
        return Err(Error::ReconstructionDiverged { trace });
    }
    DensityMatrix::new(acc)
}

/// Tomogram tabulated on the nodes of a [`QuadratureRule`].
///
/// `w_up[i * n_beta + j]` is the spin-up probability at
/// `alpha_i = 2 pi i / n_alpha` and the j-th Gauss-Legendre node of
/// `cos(beta)` in ascending order; the spin-down value is `1 - w_up`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridTomogram {
    pub n_alpha: usize,
    pub n_beta: usize,
    pub w_up: Vec<f64>,
}

impl GridTomogram {
    /// Sample a tomogram function on the nodes of `rule`.
    pub fn tabulate(w: impl Fn(&EulerUnitary) -> TomogramPoint, rule: &QuadratureRule) -> Self {
        let mut w_up = Vec::with_capacity(rule.n_alpha * rule.n_beta);
        for alpha in rule.alpha_nodes() {
            for (beta, _) in rule.beta_nodes() {
                let u = EulerUnitary::from_axis_angles(alpha, beta)
                    .expect("quadrature nodes are valid angles");
                w_up.push(w(&u).w_up());
            }
        }
        Self {
            n_alpha: rule.n_alpha,
            n_beta: rule.n_beta,
            w_up,
        }
    }

    fn validate(&self) -> Result<QuadratureRule> {
        if self.w_up.len() != self.n_alpha * self.n_beta {
            return Err(Error::InvalidGrid {
                reason: format!(
                    "expected {} values for a {}x{} grid, got {}",
                    self.n_alpha * self.n_beta,
                    self.n_alpha,
                    self.n_beta,
                    self.w_up.len()
                ),
            });
        }
        for &v in &self.w_up {
            if !(-CONSTRUCTION_TOL..=1.0 + CONSTRUCTION_TOL).contains(&v) || !v.is_finite() {
                return Err(Error::InvalidGrid {
                    reason: format!("tomogram value {v} outside [0, 1]"),
                });
            }
        }
        QuadratureRule::new(self.n_alpha, self.n_beta)
    }

    /// Reconstruct the state encoded by the tabulated values.
    pub fn reconstruct(&self) -> Result<DensityMatrix> {
        let rule = self.validate()?;
        let betas = rule.beta_nodes();
        let mut acc = Hermitian2::zero();
        for (i, alpha) in rule.alpha_nodes().enumerate() {
            for (j, &(beta, wb)) in betas.iter().enumerate() {
                let up = self.w_up[i * self.n_beta + j];
                let tp = TomogramPoint::from_asymmetry(2.0 * up - 1.0);
                let base = rule.alpha_weight() * wb * TAU;
                for m in Spin::BOTH {
                    let x = PhasePoint {
                        m,
                        alpha,
                        beta,
                        gamma: 0.0,
                    };
                    acc = acc.add(&quantizer(&x).scale(base * tp.component(m)));
                }
            }
        }
        let trace = acc.trace();
        if (trace - 1.0).abs() > 1e-6 {
            return Err(Error::ReconstructionDiverged { trace });
        }
        DensityMatrix::new(acc)
    }
}

/// Observable average as the direct trace `Tr(rho A)`.
pub fn expectation_trace(rho: &DensityMatrix, a: &Observable) -> f64 {
    rho.hermitian().trace_product(a.hermitian())
}

/// Observable average as the group integral of tomogram times dual symbol,
/// `integral of w(x) w_A^d(x) dx`, evaluated by quadrature. Both factors use
/// their trace-pairing forms so this is an independent route to the same
/// number as [`expectation_trace`].
pub fn expectation_quadrature(rho: &DensityMatrix, a: &Observable, rule: &QuadratureRule) -> f64 {
    rule.integrate(|x| rho.tomogram_trace(x) * a.dual_symbol(x))
}

/// Observable average through eigen-outcomes:
/// `w_up(u_A) A_up + w_down(u_A) A_down`.
pub fn expectation_outcomes(rho: &DensityMatrix, a: &Observable) -> f64 {
    let d = a.eigendecompose();
    let tp = rho.tomogram(&d.basis);
    tp.w_up() * d.lambda_up + tp.w_down() * d.lambda_down
}

/// Observable average in closed form,
/// `(A11+A22)/2 + (rho11-rho22)(A11-A22)/2 + 2 Re(rho12 conj(A12))`.
pub fn expectation_closed_form(rho: &DensityMatrix, a: &Observable) -> f64 {
    let r = rho.hermitian();
    let h = a.hermitian();
    0.5 * h.trace()
        + 0.5 * (r.h11() - r.h22()) * (h.h11() - h.h22())
        + 2.0 * (r.h12() * h.h12().conj()).re
}
