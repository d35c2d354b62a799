//! The base operator, realized through its eigenvalue list.
//!
//! Every formula downstream acts diagonally mode by mode, so the positive
//! self-adjoint base operator is represented only by its ascending positive
//! eigenvalues: coordinates are the eigenbasis. Scalar fractional powers and
//! the Balakrishnan quadrature oracle live here.

use crate::error::{Error, Result};
use crate::quadrature::{balakrishnan_integral, QuadratureSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A positive diagonal operator in its eigenbasis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpectralOperator", into = "RawSpectralOperator")]
pub struct SpectralOperator {
    label: String,
    eigenvalues: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawSpectralOperator {
    label: String,
    eigenvalues: Vec<f64>,
}

impl TryFrom<RawSpectralOperator> for SpectralOperator {
    type Error = Error;
    fn try_from(raw: RawSpectralOperator) -> Result<Self> {
        SpectralOperator::new(raw.label, raw.eigenvalues)
    }
}

impl From<SpectralOperator> for RawSpectralOperator {
    fn from(op: SpectralOperator) -> Self {
        RawSpectralOperator {
            label: op.label,
            eigenvalues: op.eigenvalues,
        }
    }
}

impl SpectralOperator {
    /// Build from an ascending list of positive eigenvalues.
    pub fn new(label: impl Into<String>, eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::domain("eigenvalue list must be nonempty"));
        }
        let mut prev = 0.0;
        for (j, &mu) in eigenvalues.iter().enumerate() {
            if mu <= 0.0 || !mu.is_finite() {
                return Err(Error::domain(format!(
                    "eigenvalue {j} must be positive and finite, got {mu}"
                )));
            }
            if mu < prev {
                return Err(Error::domain(format!(
                    "eigenvalues must be ascending; entry {j} = {mu} < {prev}"
                )));
            }
            prev = mu;
        }
        Ok(Self {
            label: label.into(),
            eigenvalues,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Number of retained modes.
    pub fn count(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("SpectralOperator serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::domain(format!("invalid operator JSON: {e}")))
    }
}

/// `mu^beta` on the real positive branch; `beta` may be negative since the
/// operator is invertible.
pub fn scalar_power(mu: f64, beta: f64) -> Result<f64> {
    if mu <= 0.0 || mu.is_nan() {
        return Err(Error::domain(format!("scalar_power requires mu > 0, got {mu}")));
    }
    Ok(mu.powf(beta))
}

/// Balakrishnan quadrature approximation of `mu^alpha`:
/// `sin(alpha pi)/pi * integral of lambda^(alpha-1) mu/(lambda+mu) d lambda`.
pub fn balakrishnan_scalar(mu: f64, alpha: f64, quad: &QuadratureSpec) -> Result<f64> {
    if mu <= 0.0 || mu.is_nan() {
        return Err(Error::domain(format!(
            "balakrishnan_scalar requires mu > 0, got {mu}"
        )));
    }
    if alpha.is_nan() || alpha <= 0.0 || alpha >= 1.0 {
        return Err(Error::domain(format!(
            "balakrishnan_scalar requires alpha in (0,1), got {alpha}"
        )));
    }
    let integral = balakrishnan_integral(alpha, mu, quad)?;
    Ok((alpha * PI).sin() / PI * integral)
}

/// Outcome of a randomized moment-inequality scan.
#[derive(Debug, Clone, Serialize)]
pub struct MomentReport {
    pub alpha: f64,
    pub trials: usize,
    pub seed: u64,
    /// Largest observed `|A^a x| / (|x|^(1-a) |Ax|^a)`; for a positive
    /// diagonal operator this never exceeds 1.
    pub max_ratio: f64,
}

/// Measure the interpolation ratio `|A^a x| / (|x|^(1-a) |Ax|^a)` over random
/// modal vectors. For each trial the coefficients are standard normal in the
/// eigenbasis; the maximum ratio is reported.
pub fn moment_inequality_check(
    op: &SpectralOperator,
    alpha: f64,
    trials: usize,
    seed: u64,
) -> Result<MomentReport> {
    if trials == 0 {
        return Err(Error::domain("trials must be at least 1"));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain(format!("alpha must lie in [0,1], got {alpha}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mus = op.eigenvalues();
    let mut max_ratio = f64::NEG_INFINITY;
    for _ in 0..trials {
        let x: Vec<f64> = (0..mus.len())
            .map(|_| StandardNormal.sample(&mut rng))
            .collect();
        max_ratio = max_ratio.max(moment_ratio(mus, alpha, &x));
    }
    Ok(MomentReport {
        alpha,
        trials,
        seed,
        max_ratio,
    })
}

/// The ratio for one explicit vector; exposed for direct oracle checks.
pub fn moment_ratio(mus: &[f64], alpha: f64, x: &[f64]) -> f64 {
    let mut n0 = 0.0; // |x|^2
    let mut na = 0.0; // |A^alpha x|^2
    let mut n1 = 0.0; // |A x|^2
    for (&mu, &xi) in mus.iter().zip(x) {
        let x2 = xi * xi;
        n0 += x2;
        na += mu.powf(2.0 * alpha) * x2;
        n1 += mu * mu * x2;
    }
    na.sqrt() / (n0.sqrt().powf(1.0 - alpha) * n1.sqrt().powf(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn scalar_power_basics() {
        assert_abs_diff_eq!(scalar_power(4.0, 0.5).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(scalar_power(1.0, -0.37).unwrap(), 1.0, epsilon = 1e-15);
        // logarithm oracle
        let expected = ((2.0 / 3.0) * 17.5f64.ln()).exp();
        assert_abs_diff_eq!(scalar_power(17.5, 2.0 / 3.0).unwrap(), expected, epsilon = 1e-12);
        assert!(scalar_power(0.0, 0.5).is_err());
        assert!(scalar_power(-1.0, 0.5).is_err());
    }

    #[test]
    fn balakrishnan_scalar_against_powf() {
        let quad = QuadratureSpec::default();
        assert_abs_diff_eq!(
            balakrishnan_scalar(1.0, 0.5, &quad).unwrap(),
            1.0,
            epsilon = 1e-8
        );
        assert_abs_diff_eq!(
            balakrishnan_scalar(9.0, 0.5, &quad).unwrap(),
            3.0,
            epsilon = 1e-6
        );
        let expected = scalar_power(2.7, 0.31).unwrap();
        assert_abs_diff_eq!(
            balakrishnan_scalar(2.7, 0.31, &quad).unwrap(),
            expected,
            epsilon = 1e-6
        );
    }

    #[test]
    fn balakrishnan_scalar_rejects_endpoints() {
        let quad = QuadratureSpec::default();
        assert!(balakrishnan_scalar(2.0, 0.0, &quad).is_err());
        assert!(balakrishnan_scalar(2.0, 1.0, &quad).is_err());
    }

    #[test]
    fn operator_validation() {
        assert!(SpectralOperator::new("ok", vec![1.0, 2.0, 2.0]).is_ok());
        assert!(SpectralOperator::new("empty", vec![]).is_err());
        assert!(SpectralOperator::new("neg", vec![-1.0]).is_err());
        assert!(SpectralOperator::new("desc", vec![2.0, 1.0]).is_err());
    }

    #[test]
    fn operator_json_round_trip() {
        let op = SpectralOperator::new("dirichlet", vec![1.0, 4.0, 9.0]).unwrap();
        let json = op.to_json();
        let back = SpectralOperator::from_json(&json).unwrap();
        assert_eq!(op, back);
        // descending lists are rejected on the way in
        assert!(SpectralOperator::from_json(r#"{"label":"x","eigenvalues":[2.0,1.0]}"#).is_err());
    }

    #[test]
    fn moment_ratio_single_mode_is_one() {
        let mus = [1.0, 4.0, 9.0];
        let mut x = [0.0, 0.0, 0.0];
        x[1] = 3.0;
        assert_abs_diff_eq!(moment_ratio(&mus, 0.37, &x), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn moment_ratio_two_mode_oracle() {
        // mu = {1, 4}, alpha = 1/2, x = (1, 1):
        // |A^(1/2)x|^2 = 1 + 4 = 5, |x| = sqrt(2), |Ax|^2 = 1 + 16 = 17,
        // ratio = sqrt(5) / (2^(1/4) 17^(1/4)).
        let expected = 5.0f64.sqrt() / (2.0f64.powf(0.25) * 17.0f64.powf(0.25));
        let got = moment_ratio(&[1.0, 4.0], 0.5, &[1.0, 1.0]);
        assert_abs_diff_eq!(got, expected, epsilon = 1e-14);
        assert!(got <= 1.0);
    }

    #[test]
    fn moment_check_never_exceeds_one() {
        let op = SpectralOperator::new("test", vec![0.5, 1.0, 3.0, 10.0, 100.0]).unwrap();
        for &alpha in &[0.25, 0.5, 0.75] {
            let report = moment_inequality_check(&op, alpha, 500, 42).unwrap();
            assert!(report.max_ratio <= 1.0 + 1e-12, "ratio {}", report.max_ratio);
        }
    }
}
