//! Closed forms for the crossing counts and bounds.
//!
//! Integer formulas are evaluated in `i128` and checked for exact divisibility;
//! the lower bounds carry the constant 0.8594 as the exact rational
//! 8594/10000 and are evaluated in arbitrary precision.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("{name} is defined for {requirement}, got n = {n}")]
    Domain {
        name: &'static str,
        requirement: &'static str,
        n: i64,
    },
    #[error("{name}({n}) is not integral")]
    NotIntegral { name: &'static str, n: i64 },
}

fn domain(name: &'static str, requirement: &'static str, n: i64) -> FormulaError {
    FormulaError::Domain { name, requirement, n }
}

fn floor_half(k: i64) -> i128 {
    k.div_euclid(2) as i128
}

/// Zarankiewicz number `⌊m/2⌋⌊(m-1)/2⌋⌊n/2⌋⌊(n-1)/2⌋`.
pub fn z_bipartite(m: i64, n: i64) -> i128 {
    if m <= 0 || n <= 0 {
        return 0;
    }
    floor_half(m) * floor_half(m - 1) * floor_half(n) * floor_half(n - 1)
}

/// `⌊n/2⌋⌊(n-1)/2⌋⌊(n-2)/2⌋⌊(n-3)/2⌋`, the drawing count of `D_n`.
pub fn z_complete4(n: i64) -> i128 {
    if n < 4 {
        return 0;
    }
    floor_half(n) * floor_half(n - 1) * floor_half(n - 2) * floor_half(n - 3)
}

fn exact_div(name: &'static str, n: i64, num: i128, den: i128) -> Result<i128, FormulaError> {
    if num % den != 0 {
        return Err(FormulaError::NotIntegral { name, n });
    }
    Ok(num / den)
}

/// Crossings among the top-disk chords of `D_n`, even `n >= 6`: `n²(n-2)(n-4)/96`.
pub fn nu_ex(n: i64) -> Result<i128, FormulaError> {
    if n < 6 || n % 2 != 0 {
        return Err(domain("nu_EX", "even n >= 6", n));
    }
    let n = n as i128;
    exact_div("nu_EX", n as i64, n * n * (n - 2) * (n - 4), 96)
}

/// Crossings among the helices of `D_n`, even `n >= 6`: `n(n-2)(n-3)(n-4)/24`.
pub fn nu_exy(n: i64) -> Result<i128, FormulaError> {
    if n < 6 || n % 2 != 0 {
        return Err(domain("nu_EXY", "even n >= 6", n));
    }
    let n = n as i128;
    exact_div("nu_EXY", n as i64, n * (n - 2) * (n - 3) * (n - 4), 24)
}

/// Extra crossings from the two centre vertices, odd `n >= 5`: `(n-1)(n-3)²/4`.
pub fn odd_increment(n: i64) -> Result<i128, FormulaError> {
    if n < 5 || n % 2 == 0 {
        return Err(domain("odd_increment", "odd n >= 5", n));
    }
    let n = n as i128;
    exact_div("odd_increment", n as i64, (n - 1) * (n - 3) * (n - 3), 4)
}

/// Upper bound for `cr(K_n x P_3)`.
pub fn ub_p3(n: i64) -> Result<i128, FormulaError> {
    if n < 1 {
        return Err(domain("ub_P3", "n >= 1", n));
    }
    Ok(4 * z_complete4(n) + n as i128 * floor_half(n - 1) * floor_half(n - 2))
}

/// Upper bound for `cr(K_n x C_4)`.
pub fn ub_c4(n: i64) -> Result<i128, FormulaError> {
    if n < 3 {
        return Err(domain("ub_C4", "n >= 3", n));
    }
    let m = n as i128;
    Ok(16 * z_complete4(n) + m * (m - 1) * (2 * m - 5))
}

/// 0.8594 as an exact rational.
pub fn deklerk_constant() -> BigRational {
    BigRational::new(BigInt::from(8594), BigInt::from(10000))
}

fn int(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `0.8594 / (1 + 3/(n-1))²`.
fn scaled_constant(n: i64) -> BigRational {
    let ratio = BigRational::new(BigInt::from(n - 1), BigInt::from(n + 2));
    deklerk_constant() * &ratio * &ratio
}

/// Lower bound for `cr(K_{n,n} - nK_2)` (raw, possibly negative), `n >= 2`.
pub fn lb_knn(n: i64) -> Result<BigRational, FormulaError> {
    if n < 2 {
        return Err(domain("lb_knn", "n >= 2", n));
    }
    let f = floor_half(n) * floor_half(n - 1);
    let m = n as i128;
    Ok(scaled_constant(n) * int(f * f) - int(m * (m - 1) * (m - 1)))
}

/// Lower bound for `cr(K_n x P_3)` (raw), `n >= 2`.
pub fn lb_p3(n: i64) -> Result<BigRational, FormulaError> {
    if n < 2 {
        return Err(domain("lb_P3", "n >= 2", n));
    }
    let m = n as i128;
    let z = m * floor_half(2 * n - 1) * floor_half(n) * floor_half(n - 1);
    let penalty = BigRational::new(BigInt::from(3), BigInt::from(2)) * int(m * (2 * m - 2) * (2 * m - 2));
    Ok(scaled_constant(n) * int(z) - penalty)
}

/// Lower bound for `cr(K_n x C_4)` (raw), `n >= 2`.
pub fn lb_c4(n: i64) -> Result<BigRational, FormulaError> {
    if n < 2 {
        return Err(domain("lb_C4", "n >= 2", n));
    }
    let m = n as i128;
    let f = floor_half(2 * n - 1);
    Ok(scaled_constant(n) * int(m * m * f * f) - int(2 * m * (2 * m - 2) * (2 * m - 2)))
}

/// Clamps a raw lower bound at zero.
pub fn clamp_nonnegative(v: &BigRational) -> BigRational {
    if v < &BigRational::zero() {
        BigRational::zero()
    } else {
        v.clone()
    }
}

/// Smallest integer not below `v`.
pub fn ceil_integer(v: &BigRational) -> BigInt {
    let c = v.ceil();
    debug_assert!(c.denom() == &BigInt::one());
    c.to_integer()
}
