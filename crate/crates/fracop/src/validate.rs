//! The validation suite: every closed form against its independent route.
//!
//! Each check function pins its own grid and tolerance and returns a
//! [`CheckResult`]; [`run_all`] executes the full suite. The acceptance test
//! target drives the same functions with the canonical grids, so the library,
//! the command line `validate` subcommand, and CI all exercise one code path.

use crate::block::{
    assemble_lambda, balakrishnan_block, fractional_power_closed_form,
    fractional_power_eig_oracle, resolvent_closed_form,
};
use crate::chebyshev::eval_u;
use crate::error::Result;
use crate::evolution::{dichotomy_report, PhaseState};
use crate::laplacian::{eigenpairs, solve_pde, DirichletModel, InitialData};
use crate::linalg;
use crate::quadrature::QuadratureSpec;
use crate::reduction::{char_coeffs, det_identity_check, exterior_trace, trace_identity_check};
use crate::spectral::{moment_inequality_check, SpectralOperator};
use crate::spectrum::{
    classify_generation, eigenvalues_formula, numeric_spectrum_check, sectoriality_threshold,
    Generation, OperatorTag,
};
use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

/// Canonical block orders exercised by the suite.
pub const ORDERS: [usize; 5] = [2, 3, 4, 5, 6];
/// Canonical fractional orders.
pub const ALPHAS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];
/// Canonical base eigenvalues.
pub const MUS: [f64; 5] = [0.5, 1.0, 2.0, 17.5, 1e4];

/// Outcome of one validation check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Where the worst residual occurred.
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, max_residual: f64, tolerance: f64, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            max_residual,
            tolerance,
            pass: max_residual <= tolerance,
            detail,
        }
    }
}

/// Suite-wide knobs. `tolerance_scale` multiplies every criterion tolerance
/// (1.0 runs the canonical suite; 0.0 must fail, since rounding alone
/// exceeds it).
#[derive(Debug, Clone, Serialize)]
pub struct ValidationConfig {
    pub seed: u64,
    pub tolerance_scale: f64,
    pub quadrature: QuadratureSpec,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            seed: 20240901,
            tolerance_scale: 1.0,
            quadrature: QuadratureSpec::default(),
        }
    }
}

struct Worst {
    value: f64,
    detail: String,
}

impl Worst {
    fn new() -> Self {
        Worst {
            value: 0.0,
            detail: String::from("-"),
        }
    }

    fn update(&mut self, value: f64, detail: impl FnOnce() -> String) {
        if value > self.value {
            self.value = value;
            self.detail = detail();
        }
    }
}

/// Criterion 1a: closed form vs principal-branch eigendecomposition,
/// max entrywise relative error over the canonical grid.
pub fn check_closed_vs_eig(tolerance: f64) -> Result<CheckResult> {
    let mut worst = Worst::new();
    for &n in &ORDERS {
        for &alpha in &ALPHAS {
            for &mu in &MUS {
                let closed = fractional_power_closed_form(n, mu, alpha)?;
                let lambda = assemble_lambda(n, mu)?;
                let eig = fractional_power_eig_oracle(&lambda, alpha)?;
                let rel = max_entrywise_relative(closed.entries(), eig.entries());
                worst.update(rel, || format!("n={n} alpha={alpha} mu={mu}"));
            }
        }
    }
    Ok(CheckResult::new(
        "three_route_closed_vs_eig",
        worst.value,
        tolerance,
        worst.detail,
    ))
}

/// Criterion 1b: closed form vs Balakrishnan quadrature, entrywise relative.
pub fn check_closed_vs_balakrishnan(
    tolerance: f64,
    quad: &QuadratureSpec,
) -> Result<CheckResult> {
    let mut worst = Worst::new();
    for &n in &ORDERS {
        for &alpha in &ALPHAS {
            for &mu in &MUS {
                let closed = fractional_power_closed_form(n, mu, alpha)?;
                let quadrature = balakrishnan_block(n, mu, alpha, quad)?;
                let rel = max_entrywise_relative(closed.entries(), quadrature.entries());
                worst.update(rel, || format!("n={n} alpha={alpha} mu={mu}"));
            }
        }
    }
    Ok(CheckResult::new(
        "three_route_closed_vs_balakrishnan",
        worst.value,
        tolerance,
        worst.detail,
    ))
}

fn max_entrywise_relative(reference: &Array2<Complex64>, other: &Array2<Complex64>) -> f64 {
    let mut rel: f64 = 0.0;
    for (a, b) in reference.iter().zip(other.iter()) {
        let denom = a.norm().max(1e-300);
        rel = rel.max((a - b).norm() / denom);
    }
    rel
}

/// Criterion 2: closed form at alpha = 0 is the identity and at alpha = 1
/// the system block, entrywise absolute.
pub fn check_endpoint_limits(tolerance: f64) -> Result<CheckResult> {
    let mut worst = Worst::new();
    for &n in &ORDERS {
        for &mu in &MUS {
            let zero = fractional_power_closed_form(n, mu, 0.0)?;
            let id_diff = linalg::max_abs(&(zero.entries() - &linalg::identity(n)));
            worst.update(id_diff, || format!("alpha=0 n={n} mu={mu}"));

            let one = fractional_power_closed_form(n, mu, 1.0)?;
            let lambda = assemble_lambda(n, mu)?;
            worst.update(one.max_abs_diff(&lambda), || format!("alpha=1 n={n} mu={mu}"));
        }
    }
    Ok(CheckResult::new(
        "endpoint_limits",
        worst.value,
        tolerance,
        worst.detail,
    ))
}

/// Criterion 3: the power law `Lambda^a Lambda^b = Lambda^(a+b)` for random
/// exponent pairs, relative to the Frobenius norm of the target.
pub fn check_power_law(tolerance: f64, pairs: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = Worst::new();
    for _ in 0..pairs {
        let alpha: f64 = rng.gen_range(0.0..1.0);
        let beta: f64 = rng.gen_range(0.0..(1.0 - alpha));
        for &n in &ORDERS {
            for &mu in &MUS {
                let target = fractional_power_closed_form(n, mu, alpha + beta)?;
                let norm = linalg::frobenius(target.entries());
                let residual = crate::block::power_semigroup_check(n, mu, alpha, beta)?;
                worst.update(residual / norm, || {
                    format!("n={n} mu={mu} alpha={alpha:.4} beta={beta:.4}")
                });
            }
        }
    }
    Ok(CheckResult::new(
        "power_law",
        worst.value,
        tolerance,
        worst.detail,
    ))
}

/// Deterministic 50-point lambda grid per `(n, mu)`: reals covering
/// `[0, 10 mu^(1/n)]` and points on complex rays away from the spectrum
/// angles.
fn resolvent_lambda_grid(n: usize, mu: f64) -> Vec<Complex64> {
    let radius = 10.0 * mu.powf(1.0 / n as f64);
    let mut grid = Vec::with_capacity(50);
    for i in 0..30 {
        grid.push(Complex64::new(radius * i as f64 / 29.0, 0.0));
    }
    // Rays at angles chosen away from pi (2k+1)/n for every n <= 6.
    let rays = [0.31f64, -0.31, 1.07, -1.07, 2.23];
    for (ri, &angle) in rays.iter().enumerate() {
        for s in 0..4 {
            let r = radius * (s as f64 + 0.7) / 4.0 * (0.6 + 0.1 * ri as f64);
            grid.push(Complex64::from_polar(r, angle));
        }
    }
    grid
}

/// Criterion 4: resolvent identity residual and agreement with a dense
/// direct solve. Returns two results.
pub fn check_resolvent(
    residual_tolerance: f64,
    solve_tolerance: f64,
) -> Result<(CheckResult, CheckResult)> {
    let mut worst_res = Worst::new();
    let mut worst_solve = Worst::new();
    for &n in &ORDERS {
        for &mu in &MUS {
            let lambda_block = assemble_lambda(n, mu)?;
            for lambda in resolvent_lambda_grid(n, mu) {
                let resolvent = resolvent_closed_form(n, mu, lambda)?;
                let shifted =
                    lambda_block.entries() + &linalg::identity(n).mapv(|z| z * lambda);
                let residual = &shifted.dot(resolvent.entries()) - &linalg::identity(n);
                worst_res.update(linalg::max_abs(&residual), || {
                    format!("n={n} mu={mu} lambda={lambda}")
                });

                let direct = linalg::solve(&shifted, &linalg::identity(n))?;
                let diff = linalg::max_abs(&(&direct - resolvent.entries()));
                worst_solve.update(diff, || format!("n={n} mu={mu} lambda={lambda}"));
            }
        }
    }
    Ok((
        CheckResult::new(
            "resolvent_identity",
            worst_res.value,
            residual_tolerance,
            worst_res.detail,
        ),
        CheckResult::new(
            "resolvent_vs_dense_solve",
            worst_solve.value,
            solve_tolerance,
            worst_solve.detail,
        ),
    ))
}

/// Criterion 5a: numeric block spectra match the eigenvalue formula as
/// multisets over the canonical grid.
pub fn check_spectrum_formula(tolerance: f64) -> Result<CheckResult> {
    let mut mus = MUS.to_vec();
    mus.sort_by(f64::total_cmp);
    let op = SpectralOperator::new("canonical", mus)?;
    let mut worst = Worst::new();
    for &n in &ORDERS {
        for &alpha in &ALPHAS {
            let distance = numeric_spectrum_check(n, alpha, &op)?;
            worst.update(distance, || format!("n={n} alpha={alpha}"));
        }
    }
    Ok(CheckResult::new(
        "spectrum_formula",
        worst.value,
        tolerance,
        worst.detail,
    ))
}

/// Criterion 5b: reproduced semiline angle sets for the showcase
/// `(n, alpha)` pairs.
pub fn check_figure_angles(tolerance: f64) -> Result<CheckResult> {
    let cases: [(usize, f64, Vec<f64>); 4] = [
        (3, 0.75, vec![PI / 2.0, PI, 3.0 * PI / 2.0]),
        (3, 0.5, vec![2.0 * PI / 3.0, PI, 4.0 * PI / 3.0]),
        (
            4,
            2.0 / 3.0,
            vec![PI / 2.0, 5.0 * PI / 6.0, 7.0 * PI / 6.0, 3.0 * PI / 2.0],
        ),
        (
            5,
            0.625,
            vec![
                PI / 2.0,
                3.0 * PI / 4.0,
                PI,
                5.0 * PI / 4.0,
                3.0 * PI / 2.0,
            ],
        ),
    ];
    let op = SpectralOperator::new("single", vec![2.0])?;
    let mut worst = Worst::new();
    for (n, alpha, expected) in &cases {
        let report = eigenvalues_formula(*n, *alpha, &op, OperatorTag::MinusLambdaAlpha)?;
        let angles = report.semiline_angles();
        if angles.len() != expected.len() {
            worst.update(f64::INFINITY, || {
                format!("n={n} alpha={alpha}: {} semilines, expected {}", angles.len(), expected.len())
            });
            continue;
        }
        for (got, want) in angles.iter().zip(expected) {
            worst.update((got - want).abs(), || format!("n={n} alpha={alpha}"));
        }
    }
    Ok(CheckResult::new(
        "figure_semiline_angles",
        worst.value,
        tolerance,
        worst.detail,
    ))
}

/// Criterion 6: the classification flips across the threshold and the
/// fitted growth sign agrees. Residual is 0.0 when all cases agree,
/// infinity otherwise (with the failing case in the detail).
pub fn check_sectoriality_flip(seed: u64) -> Result<CheckResult> {
    let delta = 0.01;
    let expected_thresholds = [(3usize, 0.75), (4, 2.0 / 3.0), (5, 0.625)];
    let op = SpectralOperator::new("flip", vec![1.0, 2.0, 3.0])?;
    let horizon = 600.0;
    let mut worst = Worst::new();
    for &(n, expected) in &expected_thresholds {
        let threshold = sectoriality_threshold(n);
        if (threshold - expected).abs() > 1e-15 {
            worst.update(f64::INFINITY, || format!("threshold(n={n}) != {expected}"));
            continue;
        }
        let below = threshold - delta;
        let above = threshold + delta;
        if classify_generation(n, below) != Generation::DecayingAnalytic {
            worst.update(f64::INFINITY, || format!("n={n} alpha={below} not decaying"));
        }
        if classify_generation(n, above) != Generation::Unstable {
            worst.update(f64::INFINITY, || format!("n={n} alpha={above} not unstable"));
        }
        let report_below = dichotomy_report(&op, n, below, horizon, seed)?;
        if report_below.growth_rate_estimate >= 0.0 {
            worst.update(f64::INFINITY, || {
                format!(
                    "n={n} alpha={below}: fitted rate {} not negative",
                    report_below.growth_rate_estimate
                )
            });
        }
        let report_above = dichotomy_report(&op, n, above, horizon, seed)?;
        if report_above.growth_rate_estimate <= 0.0 {
            worst.update(f64::INFINITY, || {
                format!(
                    "n={n} alpha={above}: fitted rate {} not positive",
                    report_above.growth_rate_estimate
                )
            });
        }
    }
    Ok(CheckResult::new(
        "sectoriality_flip",
        worst.value,
        0.5,
        worst.detail,
    ))
}

/// Criterion 7: the ill-posedness witness at `n = 3`, `alpha = 1` on the
/// Dirichlet operator. Returns (formula residual, fit relative error,
/// strictly-increasing flag) folded into two results.
pub fn check_illposedness_witness(
    formula_tolerance: f64,
    fit_relative_tolerance: f64,
    seed: u64,
) -> Result<(CheckResult, CheckResult)> {
    let mut fitted_rates = Vec::new();
    let mut worst_formula = Worst::new();
    let mut worst_fit = Worst::new();
    for &modes in &[32usize, 64] {
        let model = DirichletModel::new(PI, 1, modes, 513)?;
        let basis = eigenpairs(&model)?;
        let op = basis.operator();
        let mu_top = op.eigenvalues()[modes - 1];
        let expected_rate = mu_top.powf(1.0 / 3.0) / 2.0;

        let report = eigenvalues_formula(3, 1.0, op, OperatorTag::MinusLambda)?;
        let formula_residual = (report.max_real_part() - expected_rate).abs();
        worst_formula.update(formula_residual, || format!("J={modes}"));

        let dichotomy = dichotomy_report(op, 3, 1.0, 5.0, seed)?;
        let fit_rel = (dichotomy.growth_rate_estimate - expected_rate).abs() / expected_rate;
        worst_fit.update(fit_rel, || {
            format!(
                "J={modes}: fitted {} vs {expected_rate}",
                dichotomy.growth_rate_estimate
            )
        });
        fitted_rates.push(dichotomy.growth_rate_estimate);
    }
    if fitted_rates[1] <= fitted_rates[0] {
        worst_fit.update(f64::INFINITY, || {
            format!(
                "rate did not increase when doubling the truncation: {} -> {}",
                fitted_rates[0], fitted_rates[1]
            )
        });
    }
    Ok((
        CheckResult::new(
            "illposedness_max_real_part",
            worst_formula.value,
            formula_tolerance,
            worst_formula.detail,
        ),
        CheckResult::new(
            "illposedness_growth_fit",
            worst_fit.value,
            fit_relative_tolerance,
            worst_fit.detail,
        ),
    ))
}

/// Criterion 8: trace and determinant identities, relative over the grid,
/// plus the exact endpoint at `alpha = 1`.
pub fn check_trace_det(tolerance: f64) -> Result<CheckResult> {
    let mut worst = Worst::new();
    for &n in &ORDERS {
        for &mu in &MUS {
            for &alpha in &ALPHAS {
                let trace_residual = trace_identity_check(n, alpha, mu)?;
                let trace_scale = 1.0 + mu.powf(alpha / n as f64);
                worst.update(trace_residual / trace_scale, || {
                    format!("trace n={n} alpha={alpha} mu={mu}")
                });
                let det_residual = det_identity_check(n, alpha, mu)?;
                let det_scale = mu.powf(alpha);
                worst.update(det_residual / det_scale, || {
                    format!("det n={n} alpha={alpha} mu={mu}")
                });
            }
            // alpha = 1: trace vanishes, determinant equals mu.
            let trace_residual = trace_identity_check(n, 1.0, mu)?;
            worst.update(trace_residual / (1.0 + mu.powf(1.0 / n as f64)), || {
                format!("trace n={n} alpha=1 mu={mu}")
            });
            let det_residual = det_identity_check(n, 1.0, mu)?;
            worst.update(det_residual / mu, || format!("det n={n} alpha=1 mu={mu}"));
        }
    }
    Ok(CheckResult::new(
        "trace_det_identities",
        worst.value,
        tolerance,
        worst.detail,
    ))
}

/// Brute-force elementary symmetric function over eigenvalue subsets,
/// together with the sum of absolute products (the conditioning scale).
fn brute_force_esf(values: &[Complex64], k: usize) -> (Complex64, f64) {
    fn rec(
        values: &[Complex64],
        k: usize,
        start: usize,
        acc: Complex64,
        total: &mut Complex64,
        total_abs: &mut f64,
    ) {
        if k == 0 {
            *total += acc;
            *total_abs += acc.norm();
            return;
        }
        for i in start..=values.len() - k {
            rec(values, k - 1, i + 1, acc * values[i], total, total_abs);
        }
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_abs = 0.0;
    rec(values, k, 0, Complex64::new(1.0, 0.0), &mut total, &mut total_abs);
    (total, total_abs)
}

/// Criterion 9: exterior traces vs brute-force elementary symmetric
/// functions on random matrices, and characteristic polynomials vanishing at
/// the exponential rates. Two results.
pub fn check_cayley_hamilton(
    esf_tolerance: f64,
    root_tolerance: f64,
    seed: u64,
) -> Result<(CheckResult, CheckResult)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_esf = Worst::new();
    for trial in 0..100 {
        let dim = rng.gen_range(2..=8usize);
        let m = Array2::from_shape_fn((dim, dim), |_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let eigenvalues = linalg::eigenvalues(&m)?;
        for k in 1..=dim {
            let (brute, scale) = brute_force_esf(&eigenvalues, k);
            let fast = exterior_trace(&m, k)?;
            let rel = (fast - brute).norm() / scale.max(1.0);
            worst_esf.update(rel, || format!("trial={trial} dim={dim} k={k}"));
        }
    }

    let mut worst_root = Worst::new();
    for &n in &ORDERS {
        for &alpha in &ALPHAS {
            for &mu in &[0.5, 17.5, 1e4] {
                let cc = char_coeffs(n, alpha, mu)?;
                let block = fractional_power_closed_form(n, mu, alpha)?;
                for z in linalg::eigenvalues(block.entries())? {
                    let rate = -z;
                    let rel = cc.eval(rate).norm() / cc.eval_scale(rate).max(1e-300);
                    worst_root.update(rel, || format!("n={n} alpha={alpha} mu={mu}"));
                }
            }
        }
    }
    Ok((
        CheckResult::new(
            "exterior_trace_vs_brute_force",
            worst_esf.value,
            esf_tolerance,
            worst_esf.detail,
        ),
        CheckResult::new(
            "char_poly_roots",
            worst_root.value,
            root_tolerance,
            worst_root.detail,
        ),
    ))
}

/// Criterion 10: the Chebyshev identity suite.
pub fn check_chebyshev_identities(tolerance: f64, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = Worst::new();
    // Trig identity over random interior angles.
    for _ in 0..200 {
        let theta: f64 = rng.gen_range(0.0..PI);
        let k = rng.gen_range(0..=50u32);
        let u = eval_u(k, Complex64::new(theta.cos(), 0.0)).re;
        let residual = (u * theta.sin() - ((k as f64 + 1.0) * theta).sin()).abs();
        worst.update(residual, || format!("trig k={k} theta={theta}"));
    }
    // Parity over random complex points with |x| <= 2.
    for _ in 0..200 {
        let x = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if x.norm() > 2.0 {
            continue;
        }
        let k = rng.gen_range(0..=50u32);
        let plus = eval_u(k, x);
        let minus = eval_u(k, -x);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let residual = (minus - plus * sign).norm() / (1.0 + plus.norm());
        worst.update(residual, || format!("parity k={k} x={x}"));
    }
    // Endpoint values for every degree.
    for k in 0..=50u32 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let at_one = (eval_u(k, Complex64::new(1.0, 0.0)).re - (k as f64 + 1.0)).abs();
        let at_minus = (eval_u(k, Complex64::new(-1.0, 0.0)).re - sign * (k as f64 + 1.0)).abs();
        worst.update(at_one, || format!("endpoint +1 k={k}"));
        worst.update(at_minus, || format!("endpoint -1 k={k}"));
    }
    Ok(CheckResult::new(
        "chebyshev_identities",
        worst.value,
        tolerance,
        worst.detail,
    ))
}

/// Criterion 11: the single-mode wave solution and Parseval consistency.
/// Two results.
pub fn check_pde_wave(
    wave_tolerance: f64,
    parseval_tolerance: f64,
) -> Result<(CheckResult, CheckResult)> {
    let model = DirichletModel::new(PI, 1, 64, 513)?;
    let basis = eigenpairs(&model)?;
    let f = |x: f64| basis.eigenfunction(1, x);
    let zero = |_: f64| 0.0;
    let data = [InitialData::Function(&f), InitialData::Function(&zero)];
    let t_grid: Vec<f64> = (0..=16).map(|i| i as f64 * 0.25).collect();
    let x_grid: Vec<f64> = (0..=512).map(|i| PI * i as f64 / 512.0).collect();
    let solution = solve_pde(&basis, 2, 1.0, &data, &t_grid, &x_grid)?;

    // L2 error of u(x, t) - cos(t) phi_1(x) by the trapezoid rule.
    let mut worst_wave = Worst::new();
    for (ti, &t) in t_grid.iter().enumerate() {
        let mut acc = 0.0;
        for xi in 0..x_grid.len() - 1 {
            let dx = x_grid[xi + 1] - x_grid[xi];
            let ea = solution.field[[ti, xi]] - t.cos() * basis.eigenfunction(1, x_grid[xi]);
            let eb = solution.field[[ti, xi + 1]]
                - t.cos() * basis.eigenfunction(1, x_grid[xi + 1]);
            acc += 0.5 * dx * (ea * ea + eb * eb);
        }
        worst_wave.update(acc.sqrt(), || format!("t={t}"));
    }

    // Parseval with richer data across all 64 modes.
    let g = |x: f64| x * (PI - x);
    let h = |x: f64| (3.0 * x).sin() * (1.0 - x / PI);
    let data = [InitialData::Function(&g), InitialData::Function(&h)];
    let solution = solve_pde(&basis, 2, 1.0, &data, &t_grid, &x_grid)?;
    let l2 = solution.l2_norms();
    let mut worst_parseval = Worst::new();
    for (ti, _) in t_grid.iter().enumerate() {
        let coeff_norm = solution.trajectory.states[ti]
            .coeffs()
            .column(0)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        let residual = (l2[ti] - coeff_norm).abs() / (1.0 + coeff_norm);
        worst_parseval.update(residual, || format!("t={}", t_grid[ti]));
    }
    Ok((
        CheckResult::new(
            "pde_wave_mode",
            worst_wave.value,
            wave_tolerance,
            worst_wave.detail,
        ),
        CheckResult::new(
            "pde_parseval",
            worst_parseval.value,
            parseval_tolerance,
            worst_parseval.detail,
        ),
    ))
}

/// Criterion 12: the moment inequality ratio never exceeds 1.
pub fn check_moment_inequality(slack: f64, seed: u64) -> Result<CheckResult> {
    let model = DirichletModel::new(PI, 1, 64, 513)?;
    let basis = eigenpairs(&model)?;
    let mut worst = Worst::new();
    for &alpha in &[0.25, 0.5, 0.75] {
        let report = moment_inequality_check(basis.operator(), alpha, 1000, seed)?;
        let excess = (report.max_ratio - 1.0).max(0.0);
        worst.update(excess, || format!("alpha={alpha} max ratio {}", report.max_ratio));
    }
    Ok(CheckResult::new(
        "moment_inequality",
        worst.value,
        slack,
        worst.detail,
    ))
}

/// Supplementary: scalar Balakrishnan quadrature against the scalar power.
pub fn check_balakrishnan_scalar(tolerance: f64, quad: &QuadratureSpec) -> Result<CheckResult> {
    let mut worst = Worst::new();
    for &mu in &MUS {
        for &alpha in &ALPHAS {
            let exact = crate::spectral::scalar_power(mu, alpha)?;
            let approx = crate::spectral::balakrishnan_scalar(mu, alpha, quad)?;
            worst.update((approx - exact).abs() / exact, || {
                format!("mu={mu} alpha={alpha}")
            });
        }
    }
    Ok(CheckResult::new(
        "balakrishnan_scalar",
        worst.value,
        tolerance,
        worst.detail,
    ))
}

/// Supplementary: the semigroup functional equation for the evolution.
pub fn check_semigroup(tolerance: f64, seed: u64) -> Result<CheckResult> {
    let op = Arc::new(SpectralOperator::new("semigroup", vec![0.5, 2.0, 9.0])?);
    let mut worst = Worst::new();
    for &n in &[2usize, 3, 5] {
        let initial = PhaseState::random_unit(op.clone(), n, seed)?;
        for &alpha in &[0.3, 0.7, 1.0] {
            let residual =
                crate::evolution::semigroup_property_check(&initial, alpha, 0.9, 1.4)?;
            worst.update(residual, || format!("n={n} alpha={alpha}"));
        }
    }
    Ok(CheckResult::new(
        "semigroup_property",
        worst.value,
        tolerance,
        worst.detail,
    ))
}

/// Run the full suite with the canonical tolerances scaled by
/// `cfg.tolerance_scale`.
#[allow(clippy::vec_init_then_push)]
pub fn run_all(cfg: &ValidationConfig) -> Result<Vec<CheckResult>> {
    let s = cfg.tolerance_scale;
    let mut results = Vec::new();
    results.push(check_closed_vs_eig(1e-9 * s)?);
    results.push(check_closed_vs_balakrishnan(1e-5 * s, &cfg.quadrature)?);
    results.push(check_endpoint_limits(1e-11 * s)?);
    results.push(check_power_law(1e-9 * s, 20, cfg.seed)?);
    let (residual, solve) = check_resolvent(1e-12 * s, 1e-11 * s)?;
    results.push(residual);
    results.push(solve);
    results.push(check_spectrum_formula(1e-8 * s)?);
    results.push(check_figure_angles(1e-12 * s)?);
    let mut flip = check_sectoriality_flip(cfg.seed)?;
    flip.tolerance *= s;
    flip.pass = flip.max_residual <= flip.tolerance;
    results.push(flip);
    let (formula, fit) = check_illposedness_witness(1e-10 * s, 0.05 * s, cfg.seed)?;
    results.push(formula);
    results.push(fit);
    results.push(check_trace_det(1e-10 * s)?);
    let (esf, roots) = check_cayley_hamilton(1e-9 * s, 1e-8 * s, cfg.seed)?;
    results.push(esf);
    results.push(roots);
    results.push(check_chebyshev_identities(1e-10 * s, cfg.seed)?);
    let (wave, parseval) = check_pde_wave(1e-9 * s, 1e-8 * s)?;
    results.push(wave);
    results.push(parseval);
    results.push(check_moment_inequality(1e-12 * s, cfg.seed)?);
    results.push(check_balakrishnan_scalar(1e-6 * s, &cfg.quadrature)?);
    results.push(check_semigroup(1e-10 * s, cfg.seed)?);
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_tolerance_scale_fails() {
        let cfg = ValidationConfig {
            tolerance_scale: 0.0,
            ..Default::default()
        };
        // Only a cheap subset; rounding alone must exceed a zero tolerance.
        let check = check_closed_vs_eig(0.0).unwrap();
        assert!(!check.pass);
        let _ = cfg;
    }
}
