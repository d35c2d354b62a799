//! Property tests for the module invariants.

use fracop::block::{fractional_power_closed_form, resolvent_closed_form};
use fracop::chebyshev::eval_u;
use fracop::quadrature::QuadratureSpec;
use fracop::spectral::{balakrishnan_scalar, scalar_power, SpectralOperator};
use fracop::ModeBlock;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

proptest! {
    /// Parity: U_k(-x) = (-1)^k U_k(x) over the complex disk of radius 2.
    #[test]
    fn chebyshev_parity(
        k in 0u32..=50,
        re in -1.4f64..1.4,
        im in -1.4f64..1.4,
    ) {
        let x = Complex64::new(re, im);
        prop_assume!(x.norm() <= 2.0);
        let plus = eval_u(k, x);
        let minus = eval_u(k, -x);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let residual = (minus - plus * sign).norm();
        prop_assert!(residual <= 1e-10 * (1.0 + plus.norm()));
    }

    /// Trig form: U_k(cos t) sin t = sin((k+1) t) on the open interval.
    #[test]
    fn chebyshev_trig_identity(k in 0u32..=50, theta in 1e-3f64..(PI - 1e-3)) {
        let u = eval_u(k, Complex64::new(theta.cos(), 0.0)).re;
        let residual = (u * theta.sin() - ((k as f64 + 1.0) * theta).sin()).abs();
        prop_assert!(residual <= 1e-10);
    }

    /// Scalar power law on a wide parameter box.
    #[test]
    fn scalar_power_law(
        log_mu in -2.0f64..6.0,
        alpha in -1.0f64..1.0,
        beta in -1.0f64..1.0,
    ) {
        let mu = 10f64.powf(log_mu);
        let lhs = scalar_power(mu, alpha).unwrap() * scalar_power(mu, beta).unwrap();
        let rhs = scalar_power(mu, alpha + beta).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1e-300));
    }

    /// Closed-form fractional blocks are exactly Toeplitz.
    #[test]
    fn fractional_blocks_are_toeplitz(
        n in 2usize..=8,
        alpha in 0.0f64..=1.0,
        log_mu in -1.0f64..4.0,
    ) {
        let mu = 10f64.powf(log_mu);
        let block = fractional_power_closed_form(n, mu, alpha).unwrap();
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                prop_assert_eq!(block.entries()[[i, j]], block.entries()[[i + 1, j + 1]]);
            }
        }
    }

    /// Resolvent blocks are exactly Toeplitz wherever defined.
    #[test]
    fn resolvent_blocks_are_toeplitz(
        n in 2usize..=8,
        re in -3.0f64..3.0,
        im in -3.0f64..3.0,
        log_mu in -1.0f64..3.0,
    ) {
        let mu = 10f64.powf(log_mu);
        let lambda = Complex64::new(re, im);
        if let Ok(block) = resolvent_closed_form(n, mu, lambda) {
            for i in 0..n - 1 {
                for j in 0..n - 1 {
                    prop_assert_eq!(block.entries()[[i, j]], block.entries()[[i + 1, j + 1]]);
                }
            }
        }
    }

    /// Formula eigenvalue moduli equal mu^(alpha/n) for every tag.
    #[test]
    fn spectrum_modulus_law(
        n in 2usize..=7,
        alpha in 0.05f64..=1.0,
        log_mu in -1.0f64..4.0,
    ) {
        use fracop::spectrum::{eigenvalues_formula, OperatorTag};
        let mu = 10f64.powf(log_mu);
        let op = SpectralOperator::new("p", vec![mu]).unwrap();
        for tag in [
            OperatorTag::Lambda,
            OperatorTag::MinusLambda,
            OperatorTag::LambdaAlpha,
            OperatorTag::MinusLambdaAlpha,
        ] {
            let report = eigenvalues_formula(n, alpha, &op, tag).unwrap();
            let expected = mu.powf(report.alpha / n as f64);
            for entry in &report.entries {
                prop_assert!((entry.value.norm() - expected).abs() <= 1e-12 * expected);
            }
        }
    }

    /// Block JSON serialization round-trips bit-exactly.
    #[test]
    fn block_json_round_trip(
        n in 2usize..=6,
        alpha in 0.0f64..=1.0,
        log_mu in -1.0f64..4.0,
    ) {
        let mu = 10f64.powf(log_mu);
        let block = fractional_power_closed_form(n, mu, alpha).unwrap();
        let back = ModeBlock::from_json(&block.to_json()).unwrap();
        prop_assert_eq!(block, back);
    }
}

/// Balakrishnan consistency on the canonical grid (deterministic, so kept
/// outside proptest).
#[test]
fn balakrishnan_consistency_grid() {
    let quad = QuadratureSpec::default();
    for &mu in &[0.5, 1.0, 2.0, 17.5, 1e4] {
        for k in 1..=9 {
            let alpha = k as f64 / 10.0;
            let exact = scalar_power(mu, alpha).unwrap();
            let approx = balakrishnan_scalar(mu, alpha, &quad).unwrap();
            assert!(
                (approx - exact).abs() <= 1e-6 * exact,
                "mu={mu} alpha={alpha}: {approx} vs {exact}"
            );
        }
    }
}

/// Scalar powers are strictly increasing over an ascending eigenvalue list
/// for positive exponents.
#[test]
fn scalar_power_monotonicity() {
    let op = SpectralOperator::new("mono", vec![0.3, 1.0, 2.5, 17.5, 400.0]).unwrap();
    for &alpha in &[0.1, 0.5, 0.9] {
        let powered: Vec<f64> = op
            .eigenvalues()
            .iter()
            .map(|&mu| scalar_power(mu, alpha).unwrap())
            .collect();
        for pair in powered.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }
}
