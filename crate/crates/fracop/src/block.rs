//! Per-mode blocks of the first-order system operator and its functions.
//!
//! Restricting the n-th order evolution operator to one eigenvalue `mu` of
//! the base operator yields an n x n matrix with `-1` on the first
//! superdiagonal and `mu` in the lower-left corner. This module computes that
//! block, its inverse, its resolvent, and its fractional powers by three
//! routes that the test suite plays against each other:
//!
//! 1. the closed form, whose (i, j) entry is
//!    `(-1)^(i-j)/n * U_{n-1}(cos((alpha+i-j) pi / n)) * mu^((alpha+i-j)/n)`,
//! 2. the principal-branch eigendecomposition power `V diag(z^alpha) V^{-1}`,
//! 3. entrywise quadrature of the Balakrishnan integral built on the closed
//!    resolvent.
//!
//! All three must agree; none of them is privileged as "the" implementation.

use crate::chebyshev::eval_u_trig;
use crate::error::{Error, Result};
use crate::linalg;
use crate::quadrature::{balakrishnan_integral, de_raw_integral, QuadScheme, QuadratureSpec};
use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Eigenvector condition number above which a block is treated as
/// numerically defective.
pub const DEFECTIVE_CONDITION: f64 = 1e8;

/// Distance of an eigenvalue argument from `pi` below which the principal
/// matrix power is refused.
pub const BRANCH_CUT_TOLERANCE: f64 = 1e-12;

/// One n x n complex block: the system operator, its resolvent, or a
/// fractional power, restricted to a single base-operator eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModeBlock", into = "RawModeBlock")]
pub struct ModeBlock {
    n: usize,
    mu: f64,
    entries: Array2<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawModeBlock {
    n: usize,
    mu: f64,
    /// Row-major [re, im] pairs.
    entries: Vec<[f64; 2]>,
}

impl TryFrom<RawModeBlock> for ModeBlock {
    type Error = Error;
    fn try_from(raw: RawModeBlock) -> Result<Self> {
        if raw.entries.len() != raw.n * raw.n {
            return Err(Error::domain(format!(
                "entry count {} does not match n = {}",
                raw.entries.len(),
                raw.n
            )));
        }
        let entries = Array2::from_shape_fn((raw.n, raw.n), |(i, j)| {
            let [re, im] = raw.entries[i * raw.n + j];
            Complex64::new(re, im)
        });
        ModeBlock::from_entries(raw.n, raw.mu, entries)
    }
}

impl From<ModeBlock> for RawModeBlock {
    fn from(block: ModeBlock) -> Self {
        let entries = block
            .entries
            .rows()
            .into_iter()
            .flat_map(|row| row.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
            .collect();
        RawModeBlock {
            n: block.n,
            mu: block.mu,
            entries,
        }
    }
}

impl ModeBlock {
    pub(crate) fn from_entries(n: usize, mu: f64, entries: Array2<Complex64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("block order must be >= 2, got {n}")));
        }
        if mu <= 0.0 || !mu.is_finite() {
            return Err(Error::domain(format!("mu must be positive and finite, got {mu}")));
        }
        if entries.dim() != (n, n) {
            return Err(Error::domain("entry array must be n x n"));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::domain("entries must be finite"));
        }
        Ok(Self { n, mu, entries })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ModeBlock serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::domain(format!("invalid block JSON: {e}")))
    }

    /// Max-abs difference of entries against another block.
    pub fn max_abs_diff(&self, other: &ModeBlock) -> f64 {
        linalg::max_abs(&(&self.entries - &other.entries))
    }
}

fn check_order_mu(n: usize, mu: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("block order must be >= 2, got {n}")));
    }
    if mu <= 0.0 || !mu.is_finite() {
        return Err(Error::domain(format!("mu must be positive and finite, got {mu}")));
    }
    Ok(())
}

/// The block of the system operator itself: `-1` on the first superdiagonal,
/// `mu` at position (n, 1).
pub fn assemble_lambda(n: usize, mu: f64) -> Result<ModeBlock> {
    check_order_mu(n, mu)?;
    let mut entries = Array2::zeros((n, n));
    for i in 0..n - 1 {
        entries[[i, i + 1]] = Complex64::new(-1.0, 0.0);
    }
    entries[[n - 1, 0]] = Complex64::new(mu, 0.0);
    ModeBlock::from_entries(n, mu, entries)
}

/// Closed-form inverse: `1/mu` at position (1, n), `-1` on the first
/// subdiagonal.
pub fn inverse_closed_form(n: usize, mu: f64) -> Result<ModeBlock> {
    check_order_mu(n, mu)?;
    let mut entries = Array2::zeros((n, n));
    entries[[0, n - 1]] = Complex64::new(1.0 / mu, 0.0);
    for i in 1..n {
        entries[[i, i - 1]] = Complex64::new(-1.0, 0.0);
    }
    ModeBlock::from_entries(n, mu, entries)
}

/// Closed-form resolvent `(lambda I + Lambda)^{-1}`: the Toeplitz block with
/// entry `lambda^(n-1+i-j) / (lambda^n + mu)` for `i <= j` and
/// `-lambda^(i-j-1) mu / (lambda^n + mu)` for `i > j` (1-based indices).
pub fn resolvent_closed_form(n: usize, mu: f64, lambda: Complex64) -> Result<ModeBlock> {
    check_order_mu(n, mu)?;
    let lambda_n = lambda.powu(n as u32);
    let denom = lambda_n + mu;
    if denom.norm() <= 1e-14 * (lambda.norm().powi(n as i32) + mu) {
        return Err(Error::SingularResolvent { lambda });
    }
    let entries = Array2::from_shape_fn((n, n), |(i, j)| {
        if i <= j {
            lambda.powu((n - 1 + i - j) as u32) / denom
        } else {
            -lambda.powu((i - j - 1) as u32) * mu / denom
        }
    });
    ModeBlock::from_entries(n, mu, entries)
}

/// Exponent and Chebyshev factor of one closed-form entry: for the diagonal
/// offset `d = i - j`, the entry is
/// `(-1)^d / n * U_{n-1}(cos((alpha+d) pi / n)) * mu^((alpha+d)/n)`.
fn closed_form_entry(n: usize, mu: f64, alpha: f64, d: i64) -> f64 {
    let theta = (alpha + d as f64) * PI / n as f64;
    let u = eval_u_trig(n as u32 - 1, theta);
    let sign = if d.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    sign / n as f64 * u * mu.powf((alpha + d as f64) / n as f64)
}

/// Closed-form fractional power block for `alpha` in [0, 1]. The identity at
/// `alpha = 0` and the system block at `alpha = 1` fall out of the structural
/// zeros of the Chebyshev factor.
pub fn fractional_power_closed_form(n: usize, mu: f64, alpha: f64) -> Result<ModeBlock> {
    check_order_mu(n, mu)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    let entries = Array2::from_shape_fn((n, n), |(i, j)| {
        let d = i as i64 - j as i64;
        Complex64::new(closed_form_entry(n, mu, alpha, d), 0.0)
    });
    ModeBlock::from_entries(n, mu, entries)
}

/// Principal-branch matrix power by eigendecomposition:
/// `V diag(z_k^alpha) V^{-1}` with `z^alpha = exp(alpha Log z)`.
///
/// The block is balanced by an exact power-of-two diagonal similarity
/// before the eigensolve and the power is unbalanced afterwards, preserving
/// entrywise relative accuracy across the block's dynamic range. Refuses
/// eigenvalues on the closed negative real axis (within
/// [`BRANCH_CUT_TOLERANCE`] of argument `pi`, or zero) and eigenvector bases
/// with 2-norm condition number above [`DEFECTIVE_CONDITION`].
pub fn fractional_power_eig_oracle(block: &ModeBlock, alpha: f64) -> Result<ModeBlock> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    let (scale, balanced) = linalg::balance(&block.entries);
    let (values, vectors) = linalg::eig_unbalanced(&balanced)?;
    for &z in &values {
        if z.norm() == 0.0 || (z.arg().abs() - PI).abs() < BRANCH_CUT_TOLERANCE {
            return Err(Error::BranchCut { value: z });
        }
    }
    let cond = linalg::condition_number(&vectors);
    if cond >= DEFECTIVE_CONDITION || cond.is_nan() {
        return Err(Error::Defective { cond });
    }
    let n = block.n;
    let powered = Array2::from_shape_fn((n, n), |(i, j)| vectors[[i, j]] * values[j].powf(alpha));
    // balanced^alpha = (V diag(z^alpha)) V^{-1}, via solve(V^T, powered^T)^T,
    // then the exact unbalancing d_i / d_j.
    let vt = vectors.t().to_owned();
    let xt = linalg::solve(&vt, &powered.t().to_owned())?;
    let result =
        Array2::from_shape_fn((n, n), |(i, j)| xt[[j, i]] * (scale[i] / scale[j]));
    ModeBlock::from_entries(n, block.mu, result)
}

/// Entrywise quadrature of
/// `sin(alpha pi)/pi * integral of lambda^(alpha-1) Lambda (lambda I + Lambda)^{-1} d lambda`,
/// using the closed-form resolvent structure. The Gauss-Legendre scheme
/// integrates in the substituted variable `nu = lambda^n`; the tanh-sinh
/// scheme integrates the raw lambda form in log space.
pub fn balakrishnan_block(
    n: usize,
    mu: f64,
    alpha: f64,
    quad: &QuadratureSpec,
) -> Result<ModeBlock> {
    check_order_mu(n, mu)?;
    if alpha.is_nan() || alpha <= 0.0 || alpha >= 1.0 {
        return Err(Error::domain(format!(
            "balakrishnan_block requires alpha in (0, 1), got {alpha}"
        )));
    }
    let nf = n as f64;
    let prefactor = (alpha * PI).sin() / PI;
    let mut entries = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let d = i as i64 - j as i64;
            let value = match quad.scheme {
                QuadScheme::GaussLegendreSplit => {
                    // nu = lambda^n maps every entry to the scalar integral
                    // with exponent beta in (0, 1).
                    let beta = if d >= 0 {
                        (alpha + d as f64) / nf
                    } else {
                        (alpha + d as f64 + nf) / nf
                    };
                    let integral = balakrishnan_integral(beta, mu, quad)?;
                    if d >= 0 {
                        prefactor / nf * integral
                    } else {
                        -prefactor / nf * integral / mu
                    }
                }
                QuadScheme::TanhSinh => {
                    // Raw integrand: lambda^(alpha+d-1) mu/(lambda^n+mu) above
                    // the diagonal offset, -lambda^(alpha+n+d-1)/(lambda^n+mu)
                    // below; evaluated in s = ln(lambda).
                    let (c1, r_right, numerator_mu) = if d >= 0 {
                        (alpha + d as f64, nf - alpha - d as f64, true)
                    } else {
                        (alpha + nf + d as f64, -alpha - d as f64, false)
                    };
                    let phi = move |s: f64| -> f64 {
                        let magnitude = if nf * s > 350.0 {
                            let tail = ((c1 - nf) * s).exp();
                            if numerator_mu {
                                mu * tail
                            } else {
                                tail
                            }
                        } else {
                            let den = (nf * s).exp() + mu;
                            let num = if numerator_mu { mu } else { 1.0 };
                            (c1 * s).exp() * num / den
                        };
                        if numerator_mu {
                            magnitude
                        } else {
                            -magnitude
                        }
                    };
                    prefactor * de_raw_integral(&phi, c1, r_right, quad.tolerance)?
                }
            };
            entries[[i, j]] = Complex64::new(value, 0.0);
        }
    }
    ModeBlock::from_entries(n, mu, entries)
}

/// Frobenius norm of `Lambda^a Lambda^b - Lambda^(a+b)` from closed forms.
pub fn power_semigroup_check(n: usize, mu: f64, alpha: f64, beta: f64) -> Result<f64> {
    if alpha < 0.0 || beta < 0.0 || alpha + beta > 1.0 {
        return Err(Error::domain(format!(
            "power_semigroup_check requires alpha, beta, alpha+beta in [0, 1]; got ({alpha}, {beta})"
        )));
    }
    let a = fractional_power_closed_form(n, mu, alpha)?;
    let b = fractional_power_closed_form(n, mu, beta)?;
    let ab = fractional_power_closed_form(n, mu, alpha + beta)?;
    let product = a.entries().dot(b.entries());
    Ok(linalg::frobenius(&(&product - ab.entries())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn assemble_matches_displayed_matrices() {
        let b = assemble_lambda(3, 5.0).unwrap();
        let expected = ndarray::array![
            [c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
            [c(5.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        ];
        assert_eq!(b.entries(), &expected);

        let b2 = assemble_lambda(2, 1.0).unwrap();
        let expected2 = ndarray::array![[c(0.0, 0.0), c(-1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
        assert_eq!(b2.entries(), &expected2);
    }

    #[test]
    fn assemble_row_sums() {
        // Each row above the last sums to -1; structure forced.
        let b = assemble_lambda(5, 3.2).unwrap();
        for i in 0..4 {
            let s: Complex64 = b.entries().row(i).iter().sum();
            assert_abs_diff_eq!(s.re, -1.0, epsilon = 0.0);
        }
        assert!(assemble_lambda(1, 1.0).is_err());
        assert!(assemble_lambda(3, 0.0).is_err());
    }

    #[test]
    fn inverse_matches_displayed_matrices() {
        let inv = inverse_closed_form(3, 2.0).unwrap();
        let expected = ndarray::array![
            [c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
            [c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]
        ];
        assert_eq!(inv.entries(), &expected);

        let inv2 = inverse_closed_form(2, 1.0).unwrap();
        let expected2 = ndarray::array![[c(0.0, 0.0), c(1.0, 0.0)], [c(-1.0, 0.0), c(0.0, 0.0)]];
        assert_eq!(inv2.entries(), &expected2);
    }

    #[test]
    fn inverse_residual_is_zero() {
        for n in 2..=6 {
            let lambda = assemble_lambda(n, 7.3).unwrap();
            let inverse = inverse_closed_form(n, 7.3).unwrap();
            let product = lambda.entries().dot(inverse.entries());
            let residual = &product - &linalg::identity(n);
            assert!(linalg::max_abs(&residual) <= 1e-14);
        }
    }

    #[test]
    fn resolvent_matches_n2_pattern() {
        // n = 2, mu = 1, lambda = 1: (1/2) [[1, 1], [-1, 1]].
        let r = resolvent_closed_form(2, 1.0, c(1.0, 0.0)).unwrap();
        let expected = ndarray::array![[c(0.5, 0.0), c(0.5, 0.0)], [c(-0.5, 0.0), c(0.5, 0.0)]];
        for (a, b) in r.entries().iter().zip(expected.iter()) {
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-15);
            assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-15);
        }
    }

    #[test]
    fn resolvent_at_zero_is_inverse() {
        for n in 2..=6 {
            let r = resolvent_closed_form(n, 3.7, c(0.0, 0.0)).unwrap();
            let inv = inverse_closed_form(n, 3.7).unwrap();
            assert!(r.max_abs_diff(&inv) <= 1e-15);
        }
    }

    #[test]
    fn resolvent_residual_and_dense_solve() {
        let n = 4;
        let mu = 3.2;
        let lambda = c(0.7, 0.2);
        let r = resolvent_closed_form(n, mu, lambda).unwrap();
        let block = assemble_lambda(n, mu).unwrap();
        let shifted = block.entries() + &linalg::identity(n).mapv(|z| z * lambda);
        let residual = &shifted.dot(r.entries()) - &linalg::identity(n);
        assert!(linalg::max_abs(&residual) <= 1e-13);

        let direct = linalg::solve(&shifted, &linalg::identity(n)).unwrap();
        assert!(linalg::max_abs(&(&direct - r.entries())) <= 1e-13);
    }

    #[test]
    fn resolvent_rejects_spectrum_points() {
        // lambda^3 = -8 at lambda = -2 for mu = 8 (n = 3).
        assert!(matches!(
            resolvent_closed_form(3, 8.0, c(-2.0, 0.0)),
            Err(Error::SingularResolvent { .. })
        ));
    }

    #[test]
    fn closed_form_endpoints() {
        for n in 2..=6 {
            for &mu in &[0.5, 1.0, 2.0, 17.5, 1e4] {
                let id = fractional_power_closed_form(n, mu, 0.0).unwrap();
                let diff = id.entries() - &linalg::identity(n);
                assert!(linalg::max_abs(&diff) <= 1e-12, "n={n} mu={mu}");

                let one = fractional_power_closed_form(n, mu, 1.0).unwrap();
                let lambda = assemble_lambda(n, mu).unwrap();
                assert!(one.max_abs_diff(&lambda) <= 1e-11, "n={n} mu={mu}");
            }
        }
    }

    #[test]
    fn closed_form_n2_wave_like_formula() {
        let mu: f64 = 5.5;
        let alpha = 0.37;
        let b = fractional_power_closed_form(2, mu, alpha).unwrap();
        let half = alpha * PI / 2.0;
        let expected = ndarray::array![
            [
                c(half.cos() * mu.powf(alpha / 2.0), 0.0),
                c(-half.sin() * mu.powf((alpha - 1.0) / 2.0), 0.0)
            ],
            [
                c(half.sin() * mu.powf((alpha + 1.0) / 2.0), 0.0),
                c(half.cos() * mu.powf(alpha / 2.0), 0.0)
            ]
        ];
        for (a, e) in b.entries().iter().zip(expected.iter()) {
            assert_abs_diff_eq!(a.re, e.re, epsilon = 1e-13 * (1.0 + e.re.abs()));
        }
    }

    #[test]
    fn closed_form_n3_diagonal_formula() {
        let mu: f64 = 17.5;
        for &alpha in &[0.1, 0.5, 0.9] {
            let b = fractional_power_closed_form(3, mu, alpha).unwrap();
            let expected = (4.0 * (alpha * PI / 3.0).cos().powi(2) - 1.0) / 3.0
                * mu.powf(alpha / 3.0);
            for i in 0..3 {
                assert_abs_diff_eq!(
                    b.entries()[[i, i]].re,
                    expected,
                    epsilon = 1e-12 * (1.0 + expected.abs())
                );
            }
        }
    }

    #[test]
    fn closed_form_blocks_are_toeplitz() {
        let b = fractional_power_closed_form(5, 17.5, 0.63).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(b.entries()[[i, j]], b.entries()[[i + 1, j + 1]]);
            }
        }
        let r = resolvent_closed_form(5, 17.5, c(0.4, 1.1)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(r.entries()[[i, j]], r.entries()[[i + 1, j + 1]]);
            }
        }
    }

    #[test]
    fn eig_oracle_rotation_block() {
        let lambda = assemble_lambda(2, 1.0).unwrap();
        let b = fractional_power_eig_oracle(&lambda, 0.5).unwrap();
        let q = PI / 4.0;
        let expected = ndarray::array![
            [c(q.cos(), 0.0), c(-q.sin(), 0.0)],
            [c(q.sin(), 0.0), c(q.cos(), 0.0)]
        ];
        for (a, e) in b.entries().iter().zip(expected.iter()) {
            assert_abs_diff_eq!(a.re, e.re, epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, e.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn eig_oracle_matches_closed_form() {
        for n in [2, 3, 5] {
            for &mu in &[0.5, 17.5] {
                for &alpha in &[0.25, 0.75] {
                    let lambda = assemble_lambda(n, mu).unwrap();
                    let via_eig = fractional_power_eig_oracle(&lambda, alpha).unwrap();
                    let closed = fractional_power_closed_form(n, mu, alpha).unwrap();
                    let scale = linalg::max_abs(closed.entries());
                    assert!(
                        via_eig.max_abs_diff(&closed) <= 1e-10 * scale,
                        "n={n} mu={mu} alpha={alpha}"
                    );
                }
            }
        }
    }

    #[test]
    fn eig_oracle_on_identity_like_block() {
        let id = ModeBlock::from_entries(3, 1.0, linalg::identity(3)).unwrap();
        let b = fractional_power_eig_oracle(&id, 0.6).unwrap();
        assert!(linalg::max_abs(&(b.entries() - &linalg::identity(3))) <= 1e-12);
    }

    #[test]
    fn eig_oracle_rejects_branch_cut() {
        // diag(-1, -2) has both eigenvalues on the negative real axis.
        let mut entries = Array2::zeros((2, 2));
        entries[[0, 0]] = c(-1.0, 0.0);
        entries[[1, 1]] = c(-2.0, 0.0);
        let blk = ModeBlock::from_entries(2, 1.0, entries).unwrap();
        assert!(matches!(
            fractional_power_eig_oracle(&blk, 0.5),
            Err(Error::BranchCut { .. })
        ));
    }

    #[test]
    fn balakrishnan_rotation_block() {
        let quad = QuadratureSpec::default();
        let b = balakrishnan_block(2, 1.0, 0.5, &quad).unwrap();
        let closed = fractional_power_closed_form(2, 1.0, 0.5).unwrap();
        assert!(b.max_abs_diff(&closed) <= 1e-6);
    }

    #[test]
    fn balakrishnan_matches_closed_form_both_schemes() {
        for scheme in [QuadScheme::GaussLegendreSplit, QuadScheme::TanhSinh] {
            let quad = QuadratureSpec {
                scheme,
                ..Default::default()
            };
            let closed = fractional_power_closed_form(3, 17.5, 0.3).unwrap();
            let b = balakrishnan_block(3, 17.5, 0.3, &quad).unwrap();
            let scale = 1.0 + linalg::max_abs(closed.entries());
            assert!(
                b.max_abs_diff(&closed) <= quad.tolerance * scale * 10.0,
                "scheme {scheme:?}, diff {}",
                b.max_abs_diff(&closed)
            );
        }
    }

    #[test]
    fn balakrishnan_rejects_alpha_endpoints() {
        let quad = QuadratureSpec::default();
        assert!(balakrishnan_block(3, 1.0, 0.0, &quad).is_err());
        assert!(balakrishnan_block(3, 1.0, 1.0, &quad).is_err());
    }

    #[test]
    fn semigroup_residuals() {
        // Rotation composition at alpha = beta = 1/2.
        assert!(power_semigroup_check(2, 1.0, 0.5, 0.5).unwrap() <= 1e-12);
        // alpha = 0 factor is the identity.
        assert!(power_semigroup_check(4, 3.0, 0.0, 0.6).unwrap() <= 1e-12);
        // General case, residual relative to the target block norm.
        let target = fractional_power_closed_form(5, 100.0, 0.75).unwrap();
        let norm = linalg::frobenius(target.entries());
        assert!(power_semigroup_check(5, 100.0, 0.3, 0.45).unwrap() <= 1e-9 * norm);
        assert!(power_semigroup_check(3, 1.0, 0.7, 0.7).is_err());
    }

    #[test]
    fn block_json_round_trip() {
        let b = fractional_power_closed_form(3, 2.5, 0.4).unwrap();
        let json = b.to_json();
        let back = ModeBlock::from_json(&json).unwrap();
        assert!(b.max_abs_diff(&back) == 0.0);
        assert_eq!(back.order(), 3);
    }
}
