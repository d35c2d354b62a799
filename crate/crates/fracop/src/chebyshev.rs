//! Chebyshev polynomials of the second kind.
//!
//! `U_k` is the scalar kernel of every entry of the fractional power blocks:
//! the closed forms evaluate `U_{n-1}(cos(theta))` at angles `theta` that are
//! rational multiples of pi shifted by the fractional order. Two evaluation
//! paths are provided: the three-term recurrence for arbitrary complex
//! arguments, and the trigonometric form `sin((k+1)theta)/sin(theta)` which
//! is exact at the structural zeros of the block entries.

use num_complex::Complex64;

/// Below this value of `|sin(theta)|` the trigonometric ratio form loses
/// precision and [`eval_u_trig`] falls back to the recurrence at `cos(theta)`,
/// where the limit is analytically known.
pub const TRIG_SIN_THRESHOLD: f64 = 1e-6;

/// Evaluate `U_k(x)` by the three-term recurrence
/// `U_{k+1}(x) = 2x U_k(x) - U_{k-1}(x)`, `U_0 = 1`, `U_1 = 2x`.
///
/// The recurrence is run iteratively; degrees in this crate never exceed the
/// block order minus one, so growth of rounding error is negligible.
pub fn eval_u(k: u32, x: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if k == 0 {
        return one;
    }
    let two_x = 2.0 * x;
    let mut prev = one; // U_0
    let mut cur = two_x; // U_1
    for _ in 1..k {
        let next = two_x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Evaluate `U_k(cos(theta))` for real `theta`.
///
/// Uses `sin((k+1)theta)/sin(theta)` when `|sin(theta)|` is above
/// [`TRIG_SIN_THRESHOLD`]; otherwise evaluates the recurrence at `cos(theta)`,
/// which reproduces the endpoint values `U_k(1) = k+1` and
/// `U_k(-1) = (-1)^k (k+1)` exactly.
pub fn eval_u_trig(k: u32, theta: f64) -> f64 {
    let s = theta.sin();
    if s.abs() < TRIG_SIN_THRESHOLD {
        eval_u(k, Complex64::new(theta.cos(), 0.0)).re
    } else {
        ((k as f64 + 1.0) * theta).sin() / s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn degree_three_is_8x3_minus_4x() {
        for &x in &[c(0.3, 0.0), c(-1.2, 0.0)] {
            let expected = 8.0 * x * x * x - 4.0 * x;
            let got = eval_u(3, x);
            assert_abs_diff_eq!(got.re, expected.re, epsilon = 1e-14);
            assert_abs_diff_eq!(got.im, expected.im, epsilon = 1e-14);
        }
    }

    #[test]
    fn u2_at_one_is_three() {
        assert_abs_diff_eq!(eval_u(2, c(1.0, 0.0)).re, 3.0, epsilon = 1e-14);
    }

    #[test]
    fn degree_four_matches_hand_applied_recurrence() {
        // U_2(1/2) = 4(1/4) - 1 = 0, U_3(1/2) = 8/8 - 4/2 = -1,
        // U_4(1/2) = 2(1/2)U_3 - U_2 = -1.
        let x = c(0.5, 0.0);
        let u2 = 4.0 * x * x - c(1.0, 0.0);
        let u3 = 8.0 * x * x * x - 4.0 * x;
        let expected = 2.0 * x * u3 - u2;
        assert_abs_diff_eq!(eval_u(4, x).re, expected.re, epsilon = 1e-14);
        assert_abs_diff_eq!(expected.re, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn trig_form_matches_sine_ratio() {
        let theta = PI / 7.0;
        let expected = (6.0 * PI / 7.0).sin() / (PI / 7.0).sin();
        assert_abs_diff_eq!(eval_u_trig(5, theta), expected, epsilon = 1e-14);
    }

    #[test]
    fn trig_form_endpoint_limits() {
        // theta = 0 forces the U_k(1) = k+1 limit.
        assert_abs_diff_eq!(eval_u_trig(9, 0.0), 10.0, epsilon = 1e-12);
        // theta = pi forces U_k(-1) = (-1)^k (k+1), here with k even.
        assert_abs_diff_eq!(eval_u_trig(4, PI), 5.0, epsilon = 1e-12);
    }

    #[test]
    fn endpoints_up_to_degree_fifty() {
        for k in 0..=50u32 {
            let at_one = eval_u(k, c(1.0, 0.0)).re;
            let at_minus_one = eval_u(k, c(-1.0, 0.0)).re;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert_abs_diff_eq!(at_one, (k + 1) as f64, epsilon = 1e-12);
            assert_abs_diff_eq!(at_minus_one, sign * (k + 1) as f64, epsilon = 1e-12);
        }
    }
}
