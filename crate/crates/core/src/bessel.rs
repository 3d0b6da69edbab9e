//! Modified Bessel function of the first kind for integer order.
//!
//! Both entry points sum the power series
//! `I_n(x) = (x/2)^n * sum_k (x^2/4)^k / (k! (n+k)!)`
//! until a term drops below `1e-16` of the running sum. For the arguments
//! that appear in score modelling (`x = 2 sqrt(lambda_a lambda_b)`, at most
//! a few tens) the series is short and every term is positive, so no
//! asymptotic branch is needed.

use crate::error::{Error, Result};

const REL_TOL: f64 = 1e-16;
const MAX_TERMS: usize = 10_000;

/// Sum of `r_k` with `r_0 = 1` and `r_{k+1} = r_k * q / ((k+1)(n+k+1))`.
fn reduced_series(order: u32, quarter_sq: f64) -> f64 {
    let n = order as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= quarter_sq / ((kf + 1.0) * (n + kf + 1.0));
        sum += term;
        if term < REL_TOL * sum {
            break;
        }
    }
    sum
}

/// `I_order(x)` for `order >= 0`, `x >= 0`.
pub fn bessel_i(order: i32, x: f64) -> Result<f64> {
    if order < 0 {
        return Err(Error::domain("Bessel order must be nonnegative"));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain("Bessel argument must be finite and nonnegative"));
    }
    let order = order as u32;
    if x == 0.0 {
        return Ok(if order == 0 { 1.0 } else { 0.0 });
    }
    let half = 0.5 * x;
    // (x/2)^n / n!, built up one factor at a time
    let mut prefactor = 1.0;
    for k in 1..=order {
        prefactor *= half / k as f64;
    }
    Ok(prefactor * reduced_series(order, half * half))
}

/// `ln I_order(x)` for `x > 0`. Stays finite where `I_order(x)` itself
/// would underflow (large order, small argument).
pub(crate) fn ln_bessel_i(order: u32, x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let half = 0.5 * x;
    let n = order as f64;
    n * libm::log(half) - ln_factorial(order) + libm::log(reduced_series(order, half * half))
}

pub(crate) fn ln_factorial(n: u32) -> f64 {
    // exact summation for small n keeps the common case free of lgamma error
    if n < 32 {
        (2..=n).map(|k| libm::log(k as f64)).sum()
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}
