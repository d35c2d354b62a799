//! Eigenvalue locations, sectoriality classification, and resolvent bounds.
//!
//! For one base eigenvalue `mu`, the block spectrum sits on the circle of
//! radius `mu^(alpha/n)` at angles determined by the branch index
//! `k = 0, ..., floor((n-1)/2)`: writing `x = n - 2k - 1`, the fractional
//! system operator has eigenvalue angles `-x alpha pi / n` and the conjugate,
//! and its negative the angles `pi (n -+ x alpha) / n`. The formulas here are
//! validated elsewhere against dense eigensolves of the closed-form blocks.

use crate::block::fractional_power_closed_form;
use crate::error::{Error, Result};
use crate::linalg;
use crate::spectral::SpectralOperator;
use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt::Write as _;

/// Which operator a spectrum report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorTag {
    /// The system block operator itself (order `alpha = 1`).
    Lambda,
    /// Its negative.
    MinusLambda,
    /// The fractional power.
    LambdaAlpha,
    /// The negative of the fractional power (the semigroup generator).
    MinusLambdaAlpha,
}

/// One tagged eigenvalue.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumEntry {
    /// 1-based mode index into the operator's eigenvalue list.
    pub mode_index: usize,
    /// Branch index `k` in `0 ..= floor((n-1)/2)`.
    pub branch_index: usize,
    /// Whether this entry is the conjugate partner of the branch.
    pub conjugate: bool,
    /// Algebraic multiplicity within the mode block (always 1 here; kept
    /// explicit because coincident +/- branches are stored only once).
    pub multiplicity: usize,
    pub value: Complex64,
}

/// Tagged eigenvalues of a (fractional power of a) block operator over a
/// truncated mode set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub operator_tag: OperatorTag,
    pub n: usize,
    pub alpha: f64,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumReport {
    /// All eigenvalues belonging to one mode, in branch order.
    pub fn mode_values(&self, mode_index: usize) -> Vec<Complex64> {
        self.entries
            .iter()
            .filter(|e| e.mode_index == mode_index)
            .map(|e| e.value)
            .collect()
    }

    /// Largest real part over all entries.
    pub fn max_real_part(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.value.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The distinct angles (in [0, 2 pi), sorted) of the semilines carrying
    /// the spectrum.
    pub fn semiline_angles(&self) -> Vec<f64> {
        let mut angles: Vec<f64> = self.entries.iter().map(|e| wrap_angle(e.value)).collect();
        angles.sort_by(f64::total_cmp);
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        angles
    }

    /// CSV with columns `j,k,conjugate,re,im,modulus,angle`; angles are
    /// reported in [0, 2 pi).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,k,conjugate,re,im,modulus,angle\n");
        for e in &self.entries {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                e.mode_index,
                e.branch_index,
                e.conjugate,
                e.value.re,
                e.value.im,
                e.value.norm(),
                wrap_angle(e.value)
            )
            .expect("string write");
        }
        out
    }
}

fn wrap_angle(z: Complex64) -> f64 {
    let theta = z.arg();
    if theta < 0.0 {
        theta + 2.0 * PI
    } else {
        theta
    }
}

/// Eigenvalue locations from the closed formulas, for every mode of `op`.
///
/// For `MinusLambdaAlpha` the values are
/// `mu_j^(alpha/n) exp(i pi (n -+ (n-2k-1) alpha) / n)`; the other tags
/// adjust sign and exponent. The `Lambda` and `MinusLambda` tags describe the
/// unfractioned operator and ignore `alpha`. Coincident branches (`n` odd,
/// `k = (n-1)/2`) are stored once.
pub fn eigenvalues_formula(
    n: usize,
    alpha: f64,
    op: &SpectralOperator,
    tag: OperatorTag,
) -> Result<SpectrumReport> {
    if n < 2 {
        return Err(Error::domain(format!("n must be >= 2, got {n}")));
    }
    let effective_alpha = match tag {
        OperatorTag::Lambda | OperatorTag::MinusLambda => 1.0,
        OperatorTag::LambdaAlpha | OperatorTag::MinusLambdaAlpha => {
            if alpha.is_nan() || alpha <= 0.0 || alpha > 1.0 {
                return Err(Error::domain(format!(
                    "alpha must lie in (0, 1], got {alpha}"
                )));
            }
            alpha
        }
    };
    let nf = n as f64;
    let k_max = (n - 1) / 2;
    let mut entries = Vec::new();
    for (idx, &mu) in op.eigenvalues().iter().enumerate() {
        let modulus = mu.powf(effective_alpha / nf);
        for k in 0..=k_max {
            let x = (n - 2 * k - 1) as f64;
            // Angle of the non-conjugate entry and of its partner.
            let (theta, theta_conj) = match tag {
                OperatorTag::Lambda => (-x * PI / nf, x * PI / nf),
                OperatorTag::LambdaAlpha => {
                    (-x * effective_alpha * PI / nf, x * effective_alpha * PI / nf)
                }
                OperatorTag::MinusLambda => (PI * (nf - x) / nf, PI * (nf + x) / nf),
                OperatorTag::MinusLambdaAlpha => (
                    PI * (nf - x * effective_alpha) / nf,
                    PI * (nf + x * effective_alpha) / nf,
                ),
            };
            entries.push(SpectrumEntry {
                mode_index: idx + 1,
                branch_index: k,
                conjugate: false,
                multiplicity: 1,
                value: Complex64::from_polar(modulus, theta),
            });
            if x != 0.0 {
                entries.push(SpectrumEntry {
                    mode_index: idx + 1,
                    branch_index: k,
                    conjugate: true,
                    multiplicity: 1,
                    value: Complex64::from_polar(modulus, theta_conj),
                });
            }
        }
    }
    Ok(SpectrumReport {
        operator_tag: tag,
        n,
        alpha: effective_alpha,
        entries,
    })
}

/// The fractional order below which the negative fractional operator has all
/// eigenvalues in the open left half-plane: `n / (2 (n - 1))`.
pub fn sectoriality_threshold(n: usize) -> f64 {
    assert!(n >= 2, "order must be at least 2");
    n as f64 / (2.0 * (n as f64 - 1.0))
}

/// Generation classification of the negative fractional operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generation {
    /// All eigenvalue real parts negative: decaying analytic regime.
    DecayingAnalytic,
    /// Extreme eigenvalues purely imaginary.
    Boundary,
    /// Some eigenvalue real part positive: no bounded semigroup.
    Unstable,
}

/// Classify by the sign of the largest eigenvalue real-part coefficient
/// `max_k cos(pi (n - (n-2k-1) alpha) / n)`, which is negative exactly for
/// `alpha < n / (2(n-1))`. A band of width 1e-12 around zero is reported as
/// the boundary case.
pub fn classify_generation(n: usize, alpha: f64) -> Generation {
    assert!(n >= 2, "order must be at least 2");
    assert!(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
    let nf = n as f64;
    let mut max_cos = f64::NEG_INFINITY;
    for k in 0..=(n - 1) / 2 {
        let x = (n - 2 * k - 1) as f64;
        max_cos = max_cos.max((PI * (nf - x * alpha) / nf).cos());
    }
    if max_cos.abs() <= 1e-12 {
        Generation::Boundary
    } else if max_cos < 0.0 {
        Generation::DecayingAnalytic
    } else {
        Generation::Unstable
    }
}

/// Compare numerically computed eigenvalues of the closed-form fractional
/// blocks against the formula locations, mode by mode. Matching is greedy
/// nearest-neighbor in formula order (lowest branch index first); returns the
/// maximum matched distance over all modes.
pub fn numeric_spectrum_check(n: usize, alpha: f64, op: &SpectralOperator) -> Result<f64> {
    let report = eigenvalues_formula(n, alpha, op, OperatorTag::LambdaAlpha)?;
    let distances: Vec<f64> = op
        .eigenvalues()
        .par_iter()
        .enumerate()
        .map(|(idx, &mu)| -> Result<f64> {
            let block = fractional_power_closed_form(n, mu, alpha)?;
            let mut numeric = linalg::eigenvalues(block.entries())?;
            let mut worst = 0.0f64;
            for target in report.mode_values(idx + 1) {
                let (pos, dist) = numeric
                    .iter()
                    .enumerate()
                    .map(|(p, z)| (p, (z - target).norm()))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("mode has eigenvalues");
                worst = worst.max(dist);
                numeric.swap_remove(pos);
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(distances.into_iter().fold(0.0, f64::max))
}

/// Result of a resolvent-bound scan.
#[derive(Debug, Clone, Serialize)]
pub struct ResolventScan {
    /// Largest observed `(1 + lambda) ||(lambda I + Lambda)^{-1}||` over the
    /// grid, in the weighted phase-space operator norm over the truncation.
    pub sup_bound: f64,
    pub argmax_lambda: f64,
}

/// Scan `(1 + lambda) ||(lambda I + Lambda)^{-1}||` over a grid of
/// nonnegative `lambda`. The norm is the largest per-mode spectral norm of
/// `W R W^{-1}` where `W` carries the phase-space weights
/// `mu^((n-i)/n), i = 1..n`. Finiteness of the sup at a fixed truncation is
/// the measurable shadow of the positive-type resolvent estimate.
pub fn resolvent_bound_scan(
    n: usize,
    op: &SpectralOperator,
    lambda_grid: &[f64],
) -> Result<ResolventScan> {
    if lambda_grid.is_empty() {
        return Err(Error::domain("lambda grid must be nonempty"));
    }
    if lambda_grid.iter().any(|&l| l < 0.0 || !l.is_finite()) {
        return Err(Error::domain("lambda grid must be nonnegative and finite"));
    }
    let results: Vec<(f64, f64)> = lambda_grid
        .par_iter()
        .map(|&lambda| -> Result<(f64, f64)> {
            let mut norm = 0.0f64;
            for &mu in op.eigenvalues() {
                let resolvent =
                    crate::block::resolvent_closed_form(n, mu, Complex64::new(lambda, 0.0))?;
                norm = norm.max(weighted_spectral_norm(resolvent.entries(), n, mu));
            }
            Ok((lambda, (1.0 + lambda) * norm))
        })
        .collect::<Result<Vec<_>>>()?;
    let (argmax_lambda, sup_bound) = results
        .into_iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty grid");
    Ok(ResolventScan {
        sup_bound,
        argmax_lambda,
    })
}

/// Spectral norm of `W M W^{-1}` with the phase-space weight
/// `W = diag(mu^((n-1)/n), ..., mu^0)`.
fn weighted_spectral_norm(m: &Array2<Complex64>, n: usize, mu: f64) -> f64 {
    let weights: Vec<f64> = (0..n).map(|i| mu.powf((n - 1 - i) as f64 / n as f64)).collect();
    let scaled = Array2::from_shape_fn((n, n), |(i, j)| m[[i, j]] * (weights[i] / weights[j]));
    linalg::spectral_norm(&scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn op(eigs: &[f64]) -> SpectralOperator {
        SpectralOperator::new("test", eigs.to_vec()).unwrap()
    }

    #[test]
    fn figure_angles_n3() {
        let operator = op(&[2.0]);
        // alpha = 3/4 with n = 3: semilines at pi/2, pi, 3 pi/2.
        let report =
            eigenvalues_formula(3, 0.75, &operator, OperatorTag::MinusLambdaAlpha).unwrap();
        let angles = report.semiline_angles();
        assert_eq!(angles.len(), 3);
        assert_abs_diff_eq!(angles[0], PI / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(angles[1], PI, epsilon = 1e-12);
        assert_abs_diff_eq!(angles[2], 3.0 * PI / 2.0, epsilon = 1e-12);
        for e in &report.entries {
            assert_abs_diff_eq!(e.value.norm(), 2.0f64.powf(0.25), epsilon = 1e-12);
        }

        // alpha = 1/2 with n = 3: semilines at 2 pi/3, pi, 4 pi/3, modulus mu^(1/6).
        let report =
            eigenvalues_formula(3, 0.5, &operator, OperatorTag::MinusLambdaAlpha).unwrap();
        let angles = report.semiline_angles();
        assert_abs_diff_eq!(angles[0], 2.0 * PI / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(angles[1], PI, epsilon = 1e-12);
        assert_abs_diff_eq!(angles[2], 4.0 * PI / 3.0, epsilon = 1e-12);
        for e in &report.entries {
            assert_abs_diff_eq!(e.value.norm(), 2.0f64.powf(1.0 / 6.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn figure_angles_n2_alpha_one() {
        let operator = op(&[4.0]);
        let report = eigenvalues_formula(2, 1.0, &operator, OperatorTag::Lambda).unwrap();
        let angles = report.semiline_angles();
        assert_eq!(angles.len(), 2);
        assert_abs_diff_eq!(angles[0], PI / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(angles[1], 3.0 * PI / 2.0, epsilon = 1e-12);
        for e in &report.entries {
            assert_abs_diff_eq!(e.value.norm(), 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn mode_counts_match_block_order() {
        // Each mode contributes exactly n eigenvalues after deduplication.
        for n in 2..=7 {
            let report =
                eigenvalues_formula(n, 0.6, &op(&[1.0, 4.0]), OperatorTag::LambdaAlpha).unwrap();
            assert_eq!(report.mode_values(1).len(), n);
            assert_eq!(report.mode_values(2).len(), n);
        }
    }

    #[test]
    fn conjugate_entries_are_conjugates() {
        let report =
            eigenvalues_formula(5, 0.37, &op(&[3.0]), OperatorTag::MinusLambdaAlpha).unwrap();
        for e in report.entries.iter().filter(|e| !e.conjugate) {
            if e.value.im.abs() > 1e-14 {
                let partner = report
                    .entries
                    .iter()
                    .find(|p| p.branch_index == e.branch_index && p.conjugate)
                    .expect("conjugate present");
                assert_abs_diff_eq!(partner.value.re, e.value.re, epsilon = 1e-14);
                assert_abs_diff_eq!(partner.value.im, -e.value.im, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn thresholds() {
        assert_abs_diff_eq!(sectoriality_threshold(3), 0.75, epsilon = 0.0);
        assert_abs_diff_eq!(sectoriality_threshold(4), 2.0 / 3.0, epsilon = 1e-16);
        assert_abs_diff_eq!(sectoriality_threshold(5), 0.625, epsilon = 0.0);
    }

    #[test]
    fn classification_around_threshold() {
        assert_eq!(classify_generation(3, 0.74), Generation::DecayingAnalytic);
        assert_eq!(classify_generation(3, 0.76), Generation::Unstable);
        assert_eq!(classify_generation(3, 1.0), Generation::Unstable);
        assert_eq!(classify_generation(5, 1.0), Generation::Unstable);
        // n = 2 stays on the boundary at alpha = 1 (skew block).
        assert_eq!(classify_generation(2, 1.0), Generation::Boundary);
        assert_eq!(classify_generation(4, 2.0 / 3.0), Generation::Boundary);
    }

    #[test]
    fn numeric_check_small_grid() {
        let operator = op(&[1.0, 4.0, 9.0]);
        let d = numeric_spectrum_check(3, 0.5, &operator).unwrap();
        assert!(d <= 1e-10, "distance {d}");
        // alpha = 1: block eigenvalues are the n-th roots.
        let d = numeric_spectrum_check(3, 1.0, &operator).unwrap();
        assert!(d <= 1e-12, "distance {d}");
        // rotation block
        let d = numeric_spectrum_check(2, 0.33, &op(&[1.0])).unwrap();
        assert!(d <= 1e-12, "distance {d}");
    }

    #[test]
    fn spectral_mapping_between_tags() {
        // Formula eigenvalues of the fractional power equal the principal
        // powers of the formula eigenvalues of the block operator.
        let operator = op(&[6.7]);
        for n in [2, 4, 5] {
            for &alpha in &[0.2, 0.55, 0.9] {
                let base = eigenvalues_formula(n, 1.0, &operator, OperatorTag::Lambda).unwrap();
                let frac =
                    eigenvalues_formula(n, alpha, &operator, OperatorTag::LambdaAlpha).unwrap();
                let mut mapped: Vec<Complex64> =
                    base.entries.iter().map(|e| e.value.powf(alpha)).collect();
                for e in &frac.entries {
                    let (pos, dist) = mapped
                        .iter()
                        .enumerate()
                        .map(|(p, z)| (p, (z - e.value).norm()))
                        .min_by(|a, b| a.1.total_cmp(&b.1))
                        .unwrap();
                    assert!(dist <= 1e-12, "n={n} alpha={alpha} dist={dist}");
                    mapped.swap_remove(pos);
                }
            }
        }
    }

    #[test]
    fn resolvent_scan_single_rotation_mode() {
        // n = 2, single mode mu = 1, lambda = 0: the inverse is the rotation
        // by pi/2, spectral norm 1, so the bound is exactly 1 there.
        let operator = op(&[1.0]);
        let scan = resolvent_bound_scan(2, &operator, &[0.0]).unwrap();
        assert_abs_diff_eq!(scan.sup_bound, 1.0, epsilon = 1e-12);
        assert_eq!(scan.argmax_lambda, 0.0);
    }

    #[test]
    fn resolvent_scan_is_finite_and_truncation_stable() {
        let mus: Vec<f64> = (1..=50).map(|j| (j * j) as f64).collect();
        let operator = op(&mus);
        let grid: Vec<f64> = (0..=60).map(|i| (i as f64 / 60.0) * 1000.0).collect();
        let scan = resolvent_bound_scan(3, &operator, &grid).unwrap();
        assert!(scan.sup_bound.is_finite());

        let mus2: Vec<f64> = (1..=100).map(|j| (j * j) as f64).collect();
        let scan2 = resolvent_bound_scan(3, &op(&mus2), &grid).unwrap();
        let rel = (scan2.sup_bound - scan.sup_bound).abs() / scan.sup_bound;
        assert!(rel <= 0.01, "bound moved {rel} under doubling the truncation");
    }

    #[test]
    fn csv_shape() {
        let report = eigenvalues_formula(3, 0.75, &op(&[1.0]), OperatorTag::MinusLambdaAlpha)
            .unwrap();
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines[0], "j,k,conjugate,re,im,modulus,angle");
        assert_eq!(lines.len(), 1 + 3);
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 7);
        }
    }
}
