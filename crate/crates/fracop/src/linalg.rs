//! Dense complex linear algebra for the small per-mode blocks.
//!
//! Matrices are `ndarray::Array2<Complex64>` throughout the crate; the
//! factorizations (eigendecomposition, LU solve, determinant, singular
//! values) are delegated to `faer`. Block dimensions never exceed the system
//! order, so everything here is tuned for clarity, not scale.

use crate::error::{Error, Result};
use faer::prelude::*;
use faer::Mat;
use ndarray::Array2;
use num_complex::Complex64;

pub(crate) fn to_faer(a: &Array2<Complex64>) -> Mat<Complex64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[[i, j]])
}

pub fn identity(n: usize) -> Array2<Complex64> {
    Array2::from_shape_fn((n, n), |(i, j)| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Largest absolute entry.
pub fn max_abs(a: &Array2<Complex64>) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn frobenius(a: &Array2<Complex64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Diagonal balancing (Parlett-Reinsch): returns the power-of-two scale
/// vector `d` and `D^{-1} A D`, whose rows and columns have comparable
/// norms. Balancing is a similarity, so eigenvalues are unchanged, and the
/// scales are exact in floating point.
pub fn balance(a: &Array2<Complex64>) -> (Vec<f64>, Array2<Complex64>) {
    const RADIX: f64 = 2.0;
    let n = a.nrows();
    let mut m = a.clone();
    let mut scale = vec![1.0f64; n];
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += m[[j, i]].norm();
                    row += m[[i, j]].norm();
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let total = col + row;
            let mut f = 1.0;
            let mut c = col;
            while c < row / RADIX {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            while c > row * RADIX {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + row) / f < 0.95 * total && f != 1.0 {
                converged = false;
                scale[i] *= f;
                for j in 0..n {
                    m[[i, j]] /= f;
                }
                for j in 0..n {
                    m[[j, i]] *= f;
                }
            }
        }
    }
    (scale, m)
}

/// Eigenvalues and right eigenvectors (columns) of a general complex matrix.
/// The matrix is balanced first; the returned eigenvectors belong to the
/// original matrix.
pub fn eig(a: &Array2<Complex64>) -> Result<(Vec<Complex64>, Array2<Complex64>)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::domain("eig requires a square matrix"));
    }
    let (scale, balanced) = balance(a);
    let (values, balanced_vectors) = eig_unbalanced(&balanced)?;
    let vectors = Array2::from_shape_fn((n, n), |(i, j)| balanced_vectors[[i, j]] * scale[i]);
    Ok((values, vectors))
}

/// Eigendecomposition without the balancing pass; callers that unbalance
/// matrix functions themselves use this directly.
pub fn eig_unbalanced(a: &Array2<Complex64>) -> Result<(Vec<Complex64>, Array2<Complex64>)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::domain("eig requires a square matrix"));
    }
    let decomposition = to_faer(a).eigendecomposition::<Complex64>();
    let u = decomposition.u();
    let s = decomposition.s().column_vector();
    let values: Vec<Complex64> = (0..n).map(|k| s.read(k)).collect();
    let vectors = Array2::from_shape_fn((n, n), |(i, j)| u.read(i, j));
    Ok((values, vectors))
}

/// Eigenvalues only.
pub fn eigenvalues(a: &Array2<Complex64>) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::domain("eigenvalues requires a square matrix"));
    }
    Ok(to_faer(a).eigenvalues::<Complex64>())
}

/// Solve `A X = B` for dense complex `A` by full-pivot LU.
pub fn solve(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Result<Array2<Complex64>> {
    let n = a.nrows();
    if n != a.ncols() || n != b.nrows() {
        return Err(Error::domain("solve: dimension mismatch"));
    }
    let lu = to_faer(a).full_piv_lu();
    let x = lu.solve(&to_faer(b));
    Ok(Array2::from_shape_fn((n, b.ncols()), |(i, j)| x.read(i, j)))
}

pub fn det(a: &Array2<Complex64>) -> Result<Complex64> {
    if a.nrows() != a.ncols() {
        return Err(Error::domain("det requires a square matrix"));
    }
    Ok(to_faer(a).determinant())
}

pub fn singular_values(a: &Array2<Complex64>) -> Vec<f64> {
    to_faer(a).singular_values()
}

/// Operator 2-norm (largest singular value).
pub fn spectral_norm(a: &Array2<Complex64>) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// 2-norm condition number; infinite for singular input.
pub fn condition_number(a: &Array2<Complex64>) -> f64 {
    let sv = singular_values(a);
    match (sv.first(), sv.last()) {
        (Some(&smax), Some(&smin)) if smin > 0.0 => smax / smin,
        _ => f64::INFINITY,
    }
}

/// Matrix exponential by scaling and squaring with a Taylor series on the
/// scaled matrix. Used as the fallback when an eigenvector basis is too
/// ill-conditioned to trust, and as a second route in tests.
pub fn expm(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");
    let norm = frobenius(a);
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scale = Complex64::new(1.0 / 2f64.powi(squarings as i32), 0.0);
    let scaled = a.mapv(|z| z * scale);

    // Taylor: I + A + A^2/2! + ... until terms fall below machine epsilon.
    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..=40u32 {
        term = term.dot(&scaled).mapv(|z| z / k as f64);
        result = &result + &term;
        if max_abs(&term) < 1e-18 * max_abs(&result).max(1.0) {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}
