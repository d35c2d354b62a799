//! Reduction of the first-order fractional system to a scalar n-th order
//! equation.
//!
//! For `du/dt + B u = 0` with an n x n block `B`, every component solves the
//! scalar constant-coefficient equation whose characteristic roots are the
//! exponential rates `-z`, `z` an eigenvalue of `B`. The coefficients are the
//! elementary symmetric functions `e_k` of the eigenvalues, computed here
//! from power traces through the exterior-power determinant formula
//!
//! ```text
//! e_k = 1/k! * det [ tr(B)      k-1                      ]
//!                  [ tr(B^2)    tr(B)    k-2             ]
//!                  [ ...                 ...   1         ]
//!                  [ tr(B^k)    ...            tr(B)     ]
//! ```
//!
//! and cross-checked against Faddeev-LeVerrier and an eigenvalue oracle in
//! the tests. The sign convention is fixed so that the polynomial vanishes
//! exactly at the exponential rates of the evolved solutions: with
//! `p(r) = sum_k e_k r^(n-k)` the roots are `-z`, matching solutions
//! `exp(-z t)` of the system.

use crate::block::fractional_power_closed_form;
use crate::chebyshev::eval_u_trig;
use crate::error::{Error, Result};
use crate::linalg;
use ndarray::Array2;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// `tr(Lambda^k M)`: the k-th elementary symmetric function of the
/// eigenvalues of `M`, via the determinant of the power-trace matrix above.
pub fn exterior_trace(m: &Array2<Complex64>, k: usize) -> Result<Complex64> {
    let dim = m.nrows();
    if dim != m.ncols() {
        return Err(Error::domain("exterior_trace requires a square matrix"));
    }
    if k == 0 || k > dim {
        return Err(Error::domain(format!(
            "exterior_trace order k must satisfy 1 <= k <= {dim}, got {k}"
        )));
    }
    // Power traces p_1 .. p_k by exact repeated multiplication.
    let mut traces = Vec::with_capacity(k);
    let mut power = m.clone();
    traces.push(trace(&power));
    for _ in 1..k {
        power = power.dot(m);
        traces.push(trace(&power));
    }
    let t = Array2::from_shape_fn((k, k), |(r, c)| {
        if c <= r {
            traces[r - c]
        } else if c == r + 1 {
            Complex64::new((k - 1 - r) as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let mut factorial = 1.0;
    for j in 2..=k {
        factorial *= j as f64;
    }
    Ok(linalg::det(&t)? / factorial)
}

fn trace(m: &Array2<Complex64>) -> Complex64 {
    (0..m.nrows()).map(|i| m[[i, i]]).sum()
}

/// Characteristic coefficients of elementary symmetric functions by the
/// Faddeev-LeVerrier recurrence `M_1 = M`, `c_k = tr(M_k)/k`,
/// `M_{k+1} = M (M_k - c_k I)`. Returns `[e_1, ..., e_n]`; an independent
/// route used to cross-check [`exterior_trace`].
pub fn faddeev_leverrier(m: &Array2<Complex64>) -> Result<Vec<Complex64>> {
    let dim = m.nrows();
    if dim != m.ncols() {
        return Err(Error::domain("faddeev_leverrier requires a square matrix"));
    }
    let mut coeffs = Vec::with_capacity(dim);
    let mut mk = m.clone();
    for k in 1..=dim {
        let ck = trace(&mk) / k as f64;
        // The recurrence produces (-1)^(k-1) e_k; normalize to e_k.
        coeffs.push(if k % 2 == 1 { ck } else { -ck });
        if k < dim {
            let shifted = &mk - &linalg::identity(dim).mapv(|z| z * ck);
            mk = m.dot(&shifted);
        }
    }
    Ok(coeffs)
}

/// Coefficients of the scalar n-th order equation satisfied by each
/// component of the evolved system for one mode.
#[derive(Debug, Clone, Serialize)]
pub struct CharCoeffs {
    pub n: usize,
    pub mu: f64,
    pub alpha: f64,
    /// Degree-descending; leading coefficient 1, constant coefficient equal
    /// to the determinant of the fractional block.
    pub coefficients: Vec<Complex64>,
}

impl CharCoeffs {
    /// Horner evaluation of the polynomial at `r`.
    pub fn eval(&self, r: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in &self.coefficients {
            acc = acc * r + c;
        }
        acc
    }

    /// Magnitude scale of the evaluation at `r`, for relative residuals.
    pub fn eval_scale(&self, r: Complex64) -> f64 {
        let mut acc = 0.0;
        let deg = self.coefficients.len() - 1;
        for (k, &c) in self.coefficients.iter().enumerate() {
            acc += c.norm() * r.norm().powi((deg - k) as i32);
        }
        acc
    }
}

/// Characteristic coefficients `[1, e_1, ..., e_n]` of the scalar equation
/// for the fractional block of order `n` at mode `mu`. The roots of the
/// returned polynomial are the exponential rates of the system's solutions.
pub fn char_coeffs(n: usize, alpha: f64, mu: f64) -> Result<CharCoeffs> {
    let block = fractional_power_closed_form(n, mu, alpha)?;
    let mut coefficients = vec![Complex64::new(1.0, 0.0)];
    for k in 1..=n {
        coefficients.push(exterior_trace(block.entries(), k)?);
    }
    Ok(CharCoeffs {
        n,
        mu,
        alpha,
        coefficients,
    })
}

/// `|tr(block) - U_{n-1}(cos(alpha pi / n)) mu^(alpha/n)|`: the numeric trace
/// of the closed-form fractional block against its Chebyshev expression.
pub fn trace_identity_check(n: usize, alpha: f64, mu: f64) -> Result<f64> {
    let block = fractional_power_closed_form(n, mu, alpha)?;
    let numeric = trace(block.entries());
    let expected = eval_u_trig(n as u32 - 1, alpha * PI / n as f64) * mu.powf(alpha / n as f64);
    Ok((numeric - expected).norm())
}

/// `|det(block) - mu^alpha|`, with the determinant computed both densely and
/// by cofactor expansion along the first row; the returned residual includes
/// the disagreement between the two determinant routes.
pub fn det_identity_check(n: usize, alpha: f64, mu: f64) -> Result<f64> {
    let block = fractional_power_closed_form(n, mu, alpha)?;
    let dense = linalg::det(block.entries())?;
    let cofactor = cofactor_expansion(block.entries(), 0)?;
    let expected = mu.powf(alpha);
    let route_gap = (dense - cofactor).norm();
    Ok((dense.re - expected).hypot(dense.im).max(route_gap))
}

/// Determinant by cofactor expansion along `row`, with minors evaluated by
/// dense LU.
fn cofactor_expansion(m: &Array2<Complex64>, row: usize) -> Result<Complex64> {
    let dim = m.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..dim {
        let minor = Array2::from_shape_fn((dim - 1, dim - 1), |(r, c)| {
            let rr = if r < row { r } else { r + 1 };
            let cc = if c < j { c } else { c + 1 };
            m[[rr, cc]]
        });
        let sign = if (row + j).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += m[[row, j]] * linalg::det(&minor)? * sign;
    }
    Ok(acc)
}
