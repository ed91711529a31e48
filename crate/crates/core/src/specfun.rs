//! Special functions used by the basis, kinematics and potential modules.

use crate::{Error, Result};

/// Generalized Laguerre polynomial Lₙᵃ(x) by upward recurrence in n.
pub fn laguerre(n: usize, a: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut curr = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + a + 1.0 - x) * curr - (kf + a) * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// Lₙᵃ(x) for n = 0..=n_max in one pass.
pub fn laguerre_sequence(n_max: usize, a: f64, x: f64) -> alloc::vec::Vec<f64> {
    let mut out = alloc::vec::Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    out.push(1.0 + a - x);
    for k in 1..n_max {
        let kf = k as f64;
        let next = ((2.0 * kf + a + 1.0 - x) * out[k] - (kf + a) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

const KUMMER_MAX_TERMS: usize = 20_000;

/// Kummer's confluent hypergeometric function ₁F₁(a; b; z) for real arguments.
///
/// Direct power series with Neumaier-compensated summation. No asymptotic
/// branch: the series converges for every finite z, and the callers only
/// need moderate z.
pub fn kummer_1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if b <= 0.0 && b == libm::floor(b) {
        return Err(Error::Domain("1F1: b must not be a nonpositive integer"));
    }
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(Error::Domain("1F1: arguments must be finite"));
    }
    let mut sum = 1.0;
    let mut comp = 0.0;
    let mut term = 1.0;
    for k in 0..KUMMER_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * z / (kf + 1.0);
        if term == 0.0 {
            return Ok(sum + comp);
        }
        let t = sum + term;
        if libm::fabs(sum) >= libm::fabs(term) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        // past the turning point every further term shrinks geometrically
        if kf > libm::fabs(a) + libm::fabs(z)
            && libm::fabs(term) <= 1e-17 * libm::fabs(sum + comp)
        {
            return Ok(sum + comp);
        }
    }
    Err(Error::Domain("1F1: series did not converge"))
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Γ(num)/Γ(den), evaluated in log space. Both arguments must be positive.
pub fn gamma_ratio(num: f64, den: f64) -> Result<f64> {
    if !(num > 0.0 && den > 0.0) {
        return Err(Error::Domain("gamma_ratio: arguments must be positive"));
    }
    if num == den {
        return Ok(1.0);
    }
    Ok(libm::exp(libm::lgamma(num) - libm::lgamma(den)))
}
