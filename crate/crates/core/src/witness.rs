//! Quantumness-witness family for qubits and its qudit embedding.
//!
//! For the diagonal state `rho_d(r) = diag((1+r)/2, (1-r)/2)` the family is
//!
//! ```text
//! A_d = [ 1/(2r^2) - a/r     s ]        s = sqrt(1/(4r^2) - a^2) / r
//!       [ s     1/(2r^2) + a/r ]
//! B_d = A_d + b r^k [  1  -1 ]
//!                   [ -1   1 ]
//! ```
//!
//! with `0 <= A_d <= B_d`, so first moments satisfy `<A> <= <B>` for every
//! state, while `Tr[rho_d (B_d^2 - A_d^2)]` is negative throughout
//! `0 < r <= 1` for suitable `(a, b, k)`. A negative second-moment gap on a
//! measured state therefore rules out any classical two-outcome model for
//! it. Witnesses for non-diagonal states come from rotating the family by
//! the maximizer of the tomogram asymmetry.

use crate::error::{Error, Result};
use crate::mat2::{EulerUnitary, Hermitian2};
use crate::matn::HermitianN;
use crate::tomography::{DensityMatrix, Observable, TomogramPoint};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Parameters `(r, a, b, k)` of the diagonal witness family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WitnessParamsJson", into = "WitnessParamsJson")]
pub struct WitnessParams {
    r: f64,
    a: f64,
    b: f64,
    k: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct WitnessParamsJson {
    r: f64,
    a: f64,
    b: f64,
    k: f64,
}

impl TryFrom<WitnessParamsJson> for WitnessParams {
    type Error = Error;
    fn try_from(p: WitnessParamsJson) -> Result<Self> {
        WitnessParams::new(p.r, p.a, p.b, p.k)
    }
}

impl From<WitnessParams> for WitnessParamsJson {
    fn from(p: WitnessParams) -> Self {
        WitnessParamsJson {
            r: p.r,
            a: p.a,
            b: p.b,
            k: p.k,
        }
    }
}

impl WitnessParams {
    /// Validates the family domain: `r` in (0, 1], `|a| <= 1/(2r)` so the
    /// square root in the off-diagonal is real, `b >= 0`, `k` finite.
    pub fn new(r: f64, a: f64, b: f64, k: f64) -> Result<Self> {
        if !r.is_finite() || r <= 0.0 || r > 1.0 {
            return Err(Error::RadiusOutOfRange { r });
        }
        if !a.is_finite() || a.abs() > 0.5 / r {
            return Err(Error::WitnessDomain { a, r });
        }
        if !b.is_finite() || b < 0.0 {
            return Err(Error::WitnessParam {
                name: "b",
                value: b,
                reason: "must be nonnegative",
            });
        }
        if !k.is_finite() {
            return Err(Error::WitnessParam {
                name: "k",
                value: k,
                reason: "must be finite",
            });
        }
        Ok(Self { r, a, b, k })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// The rank-1 offset magnitude `b r^k`.
    pub fn offset(&self) -> f64 {
        self.b * self.r.powf(self.k)
    }
}

/// Operator pair with `0 <= A <= B`, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessPair {
    a_op: Observable,
    b_op: Observable,
}

impl WitnessPair {
    /// Validates the ordering chain `0 <= A`, `0 <= B`, `0 <= B - A`.
    /// The tolerance is absolute 1e-12, relaxed proportionally for
    /// large-norm operators where eigenvalue roundoff exceeds it.
    pub fn new(a_op: Observable, b_op: Observable) -> Result<Self> {
        let scale = a_op
            .hermitian()
            .max_abs()
            .max(b_op.hermitian().max_abs())
            .max(1.0);
        let tol = 1e-12f64.max(1e-14 * scale);
        let checks = [
            ("A", a_op.hermitian().min_eigenvalue()),
            ("B", b_op.hermitian().min_eigenvalue()),
            (
                "B - A",
                b_op.hermitian().sub(a_op.hermitian()).min_eigenvalue(),
            ),
        ];
        for (name, min_eig) in checks {
            if min_eig < -tol {
                return Err(Error::WitnessOrdering {
                    reason: format!("{name} has min eigenvalue {min_eig:.3e}"),
                });
            }
        }
        Ok(Self { a_op, b_op })
    }

    pub fn a_op(&self) -> &Observable {
        &self.a_op
    }

    pub fn b_op(&self) -> &Observable {
        &self.b_op
    }

    /// The residual `B - A` (positive semidefinite).
    pub fn difference(&self) -> Hermitian2 {
        self.b_op.hermitian().sub(self.a_op.hermitian())
    }

    /// Rotate both operators by `u^dag . u`; the ordering chain is
    /// spectrum-preserving so no re-validation is needed.
    pub fn conjugated_by(&self, u: &EulerUnitary) -> Self {
        Self {
            a_op: Observable::new(self.a_op.hermitian().conjugated_by(u)),
            b_op: Observable::new(self.b_op.hermitian().conjugated_by(u)),
        }
    }
}

/// The diagonal state `diag((1+r)/2, (1-r)/2)`: maximally mixed at `r = 0`,
/// pure at `r = 1`.
pub fn diagonal_state(r: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidValue {
            reason: format!("Bloch radius {r} outside [0, 1]"),
        });
    }
    DensityMatrix::from_entries(0.5 * (1.0 + r), 0.5 * (1.0 - r), Complex64::new(0.0, 0.0))
}

/// Construct the diagonal witness pair `(A_d, B_d)` for the given
/// parameters. `A_d` is `1/r^2` times a rank-1 projector (spectrum
/// `{0, 1/r^2}`) and `B_d - A_d` has spectrum `{0, 2 b r^k}`.
pub fn witness_family(p: &WitnessParams) -> WitnessPair {
    let r = p.r;
    let s = (0.25 / (r * r) - p.a * p.a).sqrt() / r;
    let half_inv = 0.5 / (r * r);
    let a_op = Hermitian2::new(half_inv - p.a / r, half_inv + p.a / r, Complex64::new(s, 0.0));
    let d = p.offset();
    let b_op = a_op.add(&Hermitian2::new(d, d, Complex64::new(-d, 0.0)));
    WitnessPair::new(Observable::new(a_op), Observable::new(b_op))
        .expect("family satisfies 0 <= A <= B by construction")
}

/// Witness expectation `Tr[rho (B^2 - A^2)]`; a negative value certifies
/// that no classical two-outcome model reproduces the state's statistics.
pub fn witness_expectation(rho: &DensityMatrix, w: &WitnessPair) -> f64 {
    let gap = w.b_op.hermitian().square().sub(&w.a_op.hermitian().square());
    rho.hermitian().trace_product(&gap)
}

/// First-moment gap `<B> - <A> = Tr[rho (B - A)]`; nonnegative for every
/// state because `B - A` is positive semidefinite.
pub fn first_moment_gap(rho: &DensityMatrix, w: &WitnessPair) -> f64 {
    rho.hermitian().trace_product(&w.difference())
}

/// `Tr[rho_d(r) (B_d^2 - A_d^2)]` in a cancellation-free closed form.
///
/// Expanding with `B = A + Delta`, `Delta = b r^k [[1,-1],[-1,1]]`:
///
/// ```text
/// gap(r) = b r^k [ (1 - sqrt(1 - 4 a^2 r^2)) / r^2 - 2a ] + 2 (b r^k)^2
/// ```
///
/// evaluated with `1 - sqrt(1-x) = x / (1 + sqrt(1-x))`. The direct matrix
/// route loses precision below `r ~ 1e-2` because `A^2` entries grow as
/// `r^-4`; this form stays accurate down to arbitrarily small radii, which
/// the statistical pipeline relies on.
pub fn diagonal_gap(p: &WitnessParams) -> f64 {
    let r = p.r;
    let x = 4.0 * p.a * p.a * r * r;
    let one_minus_root = x / (1.0 + (1.0 - x).sqrt());
    let d = p.offset();
    d * (one_minus_root / (r * r) - 2.0 * p.a) + 2.0 * d * d
}

/// Maximum tomogram asymmetry `max_u (w_up(u) - w_down(u))` together with a
/// maximizing direction.
///
/// The maximum is first located analytically from the three canonical
/// directions (the asymmetry is linear in the Bloch vector, so three axes
/// determine it); a coarse 64x32 grid scan plus local ascent then refines
/// or replaces that candidate, which keeps the result within 1e-6 for
/// tomograms that are only approximately linear (noisy or interpolated
/// data). For exact tomograms the analytic candidate is already the
/// maximizer and the returned radius equals the Bloch-vector norm.
pub fn extract_bloch_radius(w: impl Fn(&EulerUnitary) -> TomogramPoint) -> (f64, EulerUnitary) {
    let asym = |alpha: f64, beta: f64| {
        w(&EulerUnitary::from_axis_angles(alpha, beta).expect("beta kept in [0, pi]")).asymmetry()
    };

    // Analytic candidate: recover the Bloch vector from three axes.
    let z = asym(0.0, 0.0);
    let x = -asym(0.0, FRAC_PI_2);
    let y = asym(FRAC_PI_2, FRAC_PI_2);
    let planar = (x * x + y * y).sqrt();
    let (alpha0, beta0) = if planar <= 1e-15 {
        (0.0, if z >= 0.0 { 0.0 } else { PI })
    } else {
        // rho12 = (x - i y)/2; the asymmetry peaks at alpha = arg(rho12)+pi.
        let zeta = Complex64::new(0.5 * x, -0.5 * y).arg();
        (zeta + PI, planar.atan2(z))
    };
    let u0 = EulerUnitary::from_axis_angles(alpha0, beta0).expect("atan2 keeps beta in [0, pi]");
    let mut best_val = asym(u0.alpha(), u0.beta());
    let mut best = (u0.alpha(), u0.beta());

    // Coarse grid scan.
    for i in 0..64 {
        let alpha = TAU * i as f64 / 64.0;
        for j in 0..32 {
            let beta = PI * (j as f64 + 0.5) / 32.0;
            let v = asym(alpha, beta);
            if v > best_val {
                best_val = v;
                best = (alpha, beta);
            }
        }
    }

    // Local ascent with shrinking steps.
    let mut h = PI / 32.0;
    while h > 1e-8 {
        let (alpha, beta) = best;
        let candidates = [
            (alpha + h, beta),
            (alpha - h, beta),
            (alpha, (beta + h).min(PI)),
            (alpha, (beta - h).max(0.0)),
        ];
        let mut improved = false;
        for (ca, cb) in candidates {
            let v = asym(ca, cb);
            if v > best_val {
                best_val = v;
                best = (ca, cb);
                improved = true;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }

    let u = EulerUnitary::from_axis_angles(best.0, best.1).expect("beta kept in [0, pi]");
    (best_val.max(0.0), u)
}

/// Build the rotated witness pair for the state behind a tomogram:
/// extract `(r, u_rho)` from the asymmetry maximum and return
/// `(u_rho^dag A_d(r) u_rho, u_rho^dag B_d(r) u_rho)` with the parameters
/// actually used. Fails with [`Error::ClassicalState`] when `r = 0`.
pub fn witness_from_tomogram(
    w: impl Fn(&EulerUnitary) -> TomogramPoint,
    a: f64,
    b: f64,
    k: f64,
) -> Result<(WitnessPair, WitnessParams, EulerUnitary)> {
    let (r, u_rho) = extract_bloch_radius(&w);
    if r < 1e-12 {
        return Err(Error::ClassicalState);
    }
    let params = WitnessParams::new(r.min(1.0), a, b, k)?;
    let pair = witness_family(&params).conjugated_by(&u_rho);
    Ok((pair, params, u_rho))
}

/// Embed the two-level witness into an n-level space.
///
/// Selects the eigenvector pair of `rho_n` with the largest eigenvalue gap
/// (ties broken toward lower indices), builds the diagonal family at
/// `r = (lam_i - lam_j) / (lam_i + lam_j)` and returns the pair embedded as
/// operators acting as zero outside the selected two-dimensional subspace.
/// The embedded expectation satisfies
/// `Tr[rho_n (B_n^2 - A_n^2)] = (lam_i + lam_j) * Tr[rho_d (B_d^2 - A_d^2)]`.
pub fn embed_qudit_witness(
    rho_n: &HermitianN,
    a: f64,
    b: f64,
    k: f64,
) -> Result<(HermitianN, HermitianN)> {
    let n = rho_n.dim();
    if n < 2 {
        return Err(Error::InvalidDimension {
            reason: format!("need dimension >= 2, got {n}"),
        });
    }
    let trace = rho_n.trace();
    if (trace - 1.0).abs() > 1e-12 {
        return Err(Error::NonUnitTrace { trace });
    }
    let (vals, vecs) = rho_n.eigendecompose();
    let min_eig = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_eig < -1e-12 {
        return Err(Error::NotPositiveSemidefinite { min_eig });
    }
    let mut i_max = 0;
    let mut i_min = 0;
    for (i, &v) in vals.iter().enumerate() {
        if v > vals[i_max] {
            i_max = i;
        }
        if v < vals[i_min] {
            i_min = i;
        }
    }
    let gap = vals[i_max] - vals[i_min];
    if gap <= 1e-12 {
        return Err(Error::ClassicalDirectionNotFound);
    }
    let sum = vals[i_max] + vals[i_min];
    let params = WitnessParams::new(gap / sum, a, b, k)?;
    let pair = witness_family(&params);
    let a_n = embed_two_level(pair.a_op().hermitian(), &vecs[i_max], &vecs[i_min], n);
    let b_n = embed_two_level(pair.b_op().hermitian(), &vecs[i_max], &vecs[i_min], n);
    Ok((a_n, b_n))
}

/// `sum_{a,b} h_ab |v_a><v_b|` over the orthonormal pair `(v1, v2)`.
fn embed_two_level(h: &Hermitian2, v1: &[Complex64], v2: &[Complex64], n: usize) -> HermitianN {
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    let h12 = h.h12();
    for x in 0..n {
        for y in 0..n {
            entries[x * n + y] = h.h11() * v1[x] * v1[y].conj()
                + h12 * v1[x] * v2[y].conj()
                + h12.conj() * v2[x] * v1[y].conj()
                + h.h22() * v2[x] * v2[y].conj();
        }
    }
    HermitianN::new(n, entries).expect("embedding of a Hermitian block is Hermitian")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tomography::expectation_trace;
    use approx::assert_abs_diff_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const ANCHOR_GAP: f64 = -0.021_414_284_285_428_5; // 0.05 - 0.2 sqrt(0.1275)

    #[test]
    fn diagonal_state_examples() {
        assert_eq!(
            diagonal_state(0.0).unwrap(),
            DensityMatrix::maximally_mixed()
        );
        let pure = diagonal_state(1.0).unwrap();
        assert_abs_diff_eq!(pure.hermitian().h11(), 1.0);
        let half = diagonal_state(0.5).unwrap();
        assert_abs_diff_eq!(half.hermitian().h11(), 0.75);
        assert_abs_diff_eq!(half.hermitian().h22(), 0.25);
        assert!(diagonal_state(1.5).is_err());
        assert!(diagonal_state(-0.1).is_err());
    }

    #[test]
    fn family_matches_direct_substitution() {
        let p = WitnessParams::new(1.0, 0.35, 0.1, 1.0).unwrap();
        let pair = witness_family(&p);
        let s = 0.1275f64.sqrt();
        let a = pair.a_op().hermitian();
        assert_abs_diff_eq!(a.h11(), 0.15, epsilon = 1e-15);
        assert_abs_diff_eq!(a.h22(), 0.85, epsilon = 1e-15);
        assert_abs_diff_eq!(a.h12().re, s, epsilon = 1e-15);
        let b = pair.b_op().hermitian();
        assert_abs_diff_eq!(b.h11(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(b.h22(), 0.95, epsilon = 1e-15);
        assert_abs_diff_eq!(b.h12().re, s - 0.1, epsilon = 1e-15);
    }

    #[test]
    fn family_spectra() {
        let mut rng = StdRng::seed_from_u64(29);
        for _ in 0..1000 {
            let r = rng.gen_range(0.05..=1.0);
            let a = rng.gen_range(-1.0f64..1.0) * 0.5 / r;
            let b = rng.gen_range(0.0..2.0);
            let k = *[0.0, 1.0, 2.0, 3.0]
                .iter()
                .nth(rng.gen_range(0..4))
                .unwrap();
            let p = WitnessParams::new(r, a, b, k).unwrap();
            let pair = witness_family(&p);
            let (up, down) = pair.a_op().hermitian().eigenvalues();
            assert_abs_diff_eq!(down, 0.0, epsilon = 1e-10 * (1.0 / (r * r)).max(1.0));
            assert_abs_diff_eq!(up, 1.0 / (r * r), epsilon = 1e-10 * (1.0 / (r * r)).max(1.0));
            let (dup, ddown) = pair.difference().eigenvalues();
            assert_abs_diff_eq!(ddown, 0.0, epsilon = 1e-10);
            assert_abs_diff_eq!(dup, 2.0 * p.offset(), epsilon = 1e-10);
            // A_d is 1/r^2 times a projector.
            let a_h = pair.a_op().hermitian();
            assert!(
                a_h.square().max_abs_diff(&a_h.scale(1.0 / (r * r)))
                    <= 1e-10 * (1.0 / (r * r)).powi(2).max(1.0)
            );
        }
    }

    #[test]
    fn params_domain_errors() {
        assert!(matches!(
            WitnessParams::new(0.0, 0.1, 0.1, 1.0),
            Err(Error::RadiusOutOfRange { .. })
        ));
        assert!(matches!(
            WitnessParams::new(1.0, 0.6, 0.1, 1.0),
            Err(Error::WitnessDomain { .. })
        ));
        assert!(matches!(
            WitnessParams::new(0.5, 0.3, -0.1, 1.0),
            Err(Error::WitnessParam { .. })
        ));
        // |a| = 1/(2r) is the boundary and allowed.
        assert!(WitnessParams::new(0.5, 1.0, 0.1, 1.0).is_ok());
    }

    #[test]
    fn expectation_anchor_value() {
        let p = WitnessParams::new(1.0, 0.35, 0.1, 1.0).unwrap();
        let pair = witness_family(&p);
        let rho = diagonal_state(1.0).unwrap();
        assert_abs_diff_eq!(witness_expectation(&rho, &pair), ANCHOR_GAP, epsilon = 1e-12);
        assert_abs_diff_eq!(diagonal_gap(&p), ANCHOR_GAP, epsilon = 1e-12);
    }

    #[test]
    fn expectation_on_mixed_state_is_half_trace() {
        let p = WitnessParams::new(0.8, 0.2, 0.3, 2.0).unwrap();
        let pair = witness_family(&p);
        let gap = pair
            .b_op()
            .hermitian()
            .square()
            .sub(&pair.a_op().hermitian().square());
        let expected = 0.5 * gap.trace();
        assert_abs_diff_eq!(
            witness_expectation(&DensityMatrix::maximally_mixed(), &pair),
            expected,
            epsilon = 1e-12
        );
    }

    #[test]
    fn first_moment_examples() {
        let p = WitnessParams::new(1.0, 0.35, 0.1, 1.0).unwrap();
        let pair = witness_family(&p);
        assert_abs_diff_eq!(
            first_moment_gap(&diagonal_state(1.0).unwrap(), &pair),
            0.1,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            first_moment_gap(&DensityMatrix::maximally_mixed(), &pair),
            0.1,
            epsilon = 1e-15
        );
        let same = WitnessPair::new(*pair.a_op(), *pair.a_op()).unwrap();
        assert_abs_diff_eq!(
            first_moment_gap(&diagonal_state(0.3).unwrap(), &same),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn diagonal_gap_matches_matrix_route() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..500 {
            let r = rng.gen_range(0.3..=1.0);
            let p = WitnessParams::new(r, 0.35, 0.1, rng.gen_range(0.0..3.0)).unwrap();
            let matrix_route = witness_expectation(&diagonal_state(r).unwrap(), &witness_family(&p));
            assert_abs_diff_eq!(diagonal_gap(&p), matrix_route, epsilon = 1e-12);
        }
    }

    #[test]
    fn extract_radius_diagonal_state() {
        let rho = diagonal_state(0.8).unwrap();
        let (r, u) = extract_bloch_radius(|u| rho.tomogram(u));
        assert_abs_diff_eq!(r, 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(u.beta(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn extract_radius_flat_tomogram() {
        let (r, _) = extract_bloch_radius(|_| TomogramPoint::from_asymmetry(0.0));
        assert_abs_diff_eq!(r, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn extract_radius_pure_x_state() {
        let rho = DensityMatrix::from_entries(0.5, 0.5, c(0.5, 0.0)).unwrap();
        let (r, u) = extract_bloch_radius(|u| rho.tomogram(u));
        assert_abs_diff_eq!(r, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(u.beta(), FRAC_PI_2, epsilon = 1e-9);
        assert_abs_diff_eq!(u.alpha(), PI, epsilon = 1e-9);
    }

    #[test]
    fn extract_radius_equals_bloch_norm() {
        let mut rng = StdRng::seed_from_u64(37);
        for _ in 0..100 {
            let rho = crate::tomography::tests::random_state(&mut rng);
            let (r, u) = extract_bloch_radius(|u| rho.tomogram(u));
            assert_abs_diff_eq!(r, rho.bloch_radius(), epsilon = 1e-9);
            // The maximizer rotates the state into diagonal form.
            let rotated = rho.conjugated_by(&u);
            assert_abs_diff_eq!(
                rotated.hermitian().h11(),
                0.5 * (1.0 + r),
                epsilon = 1e-9
            );
            assert!(rotated.hermitian().h12().norm() <= 1e-9);
        }
    }

    #[test]
    fn witness_from_tomogram_diagonal_reduces_to_family() {
        let rho = diagonal_state(0.6).unwrap();
        let (pair, params, u_rho) = witness_from_tomogram(|u| rho.tomogram(u), 0.35, 0.1, 1.0).unwrap();
        assert_abs_diff_eq!(params.r(), 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(u_rho.beta(), 0.0, epsilon = 1e-12);
        let direct = witness_family(&WitnessParams::new(0.6, 0.35, 0.1, 1.0).unwrap());
        assert!(
            pair.a_op()
                .hermitian()
                .max_abs_diff(direct.a_op().hermitian())
                <= 1e-9
        );
    }

    #[test]
    fn witness_from_tomogram_expectation_is_rotation_invariant() {
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..50 {
            let r = rng.gen_range(0.1..=1.0);
            let v = EulerUnitary::new(
                rng.gen_range(0.0..TAU),
                rng.gen_range(0.0..PI),
                rng.gen_range(0.0..TAU),
            )
            .unwrap();
            let rho = diagonal_state(r).unwrap().conjugated_by(&v);
            let (pair, params, _) = witness_from_tomogram(|u| rho.tomogram(u), 0.35, 0.1, 1.0).unwrap();
            let rotated = witness_expectation(&rho, &pair);
            let diagonal = witness_expectation(
                &diagonal_state(params.r()).unwrap(),
                &witness_family(&params),
            );
            assert_abs_diff_eq!(rotated, diagonal, epsilon = 1e-9);
        }
    }

    #[test]
    fn witness_from_tomogram_rejects_mixed_state() {
        let rho = DensityMatrix::maximally_mixed();
        assert!(matches!(
            witness_from_tomogram(|u| rho.tomogram(u), 0.35, 0.1, 1.0),
            Err(Error::ClassicalState)
        ));
    }

    #[test]
    fn unitary_covariance_of_expectation() {
        let mut rng = StdRng::seed_from_u64(43);
        for _ in 0..200 {
            let rho = crate::tomography::tests::random_state(&mut rng);
            let p = WitnessParams::new(rng.gen_range(0.2..=1.0), 0.35, 0.1, 1.0).unwrap();
            let pair = witness_family(&p);
            let v = EulerUnitary::new(
                rng.gen_range(0.0..TAU),
                rng.gen_range(0.0..PI),
                rng.gen_range(0.0..TAU),
            )
            .unwrap();
            let lhs = witness_expectation(&rho.conjugated_by(&v), &pair.conjugated_by(&v));
            let rhs = witness_expectation(&rho, &pair);
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
        }
    }

    #[test]
    fn embedding_matches_two_level_witness_for_qubits() {
        let p = WitnessParams::new(0.4, 0.35, 0.1, 1.0).unwrap();
        let rho = diagonal_state(0.4).unwrap();
        let rho2 = HermitianN::from_real_diagonal(&[0.7, 0.3]);
        let (a2, b2) = embed_qudit_witness(&rho2, 0.35, 0.1, 1.0).unwrap();
        let qudit_gap = rho2.trace_product(&b2.square()) - rho2.trace_product(&a2.square());
        let qubit_gap = witness_expectation(&rho, &witness_family(&p));
        // (lam_i + lam_j) = 1 for a qubit, so the values coincide.
        assert_abs_diff_eq!(qudit_gap, qubit_gap, epsilon = 1e-12);
    }

    #[test]
    fn embedding_three_level_example() {
        let rho3 = HermitianN::from_real_diagonal(&[0.5, 0.3, 0.2]);
        let (a3, b3) = embed_qudit_witness(&rho3, 0.35, 0.1, 1.0).unwrap();
        let r = 0.3 / 0.7;
        let p = WitnessParams::new(r, 0.35, 0.1, 1.0).unwrap();
        let two_level = witness_expectation(&diagonal_state(r).unwrap(), &witness_family(&p));
        let embedded = rho3.trace_product(&b3.square()) - rho3.trace_product(&a3.square());
        assert_abs_diff_eq!(embedded, 0.7 * two_level, epsilon = 1e-9);
        // The embedded operators act as zero on the middle eigenvector.
        assert_abs_diff_eq!(a3.get(1, 1).re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b3.get(1, 1).re, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn embedding_rejects_uniform_state() {
        let rho3 = HermitianN::from_real_diagonal(&[1.0 / 3.0; 3]);
        assert!(matches!(
            embed_qudit_witness(&rho3, 0.35, 0.1, 1.0),
            Err(Error::ClassicalDirectionNotFound)
        ));
    }

    #[test]
    fn embedding_validates_density() {
        let bad = HermitianN::from_real_diagonal(&[0.5, 0.4]);
        assert!(matches!(
            embed_qudit_witness(&bad, 0.35, 0.1, 1.0),
            Err(Error::NonUnitTrace { .. })
        ));
    }

    #[test]
    fn ordering_violation_detected() {
        let a = Observable::new(Hermitian2::diagonal(2.0, 0.0));
        let b = Observable::new(Hermitian2::diagonal(1.0, 1.0));
        assert!(matches!(
            WitnessPair::new(a, b),
            Err(Error::WitnessOrdering { .. })
        ));
        let neg = Observable::new(Hermitian2::diagonal(-1.0, 1.0));
        assert!(WitnessPair::new(neg, b).is_err());
    }
}
