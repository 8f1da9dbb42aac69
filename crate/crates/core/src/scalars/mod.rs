//! Exact coefficient arithmetic: sparse polynomials in the weight symbols
//! δ, μ, r, θ, κ over ℚ, their quotient field, and the integer constants
//! that appear in the structure tables.

mod gcd;
mod poly;
mod scalar;

pub use gcd::{content, gcd};
pub use poly::{Monomial, ParamPoly, Symbol, NSYM};
pub use scalar::Scalar;

use num::BigInt;

use crate::algebra::{AlgebraSpec, Extension};
use crate::error::{Error, Result};

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Falling factorial `n (n-1) ... (n-i+1)`, i.e. `i! * C(n, i)`.
pub fn falling(n: i64, i: i64) -> BigInt {
    if i < 0 || i > n {
        return BigInt::from(0);
    }
    (0..i).fold(BigInt::from(1), |acc, j| acc * BigInt::from(n - j))
}

/// Central structure constant `I_m` of the family.
///
/// Mass: `(-1)^(m + ℓ + 1/2) (2ℓ-m)! m!`; exotic: `(-1)^m (2ℓ-m)! m!`.
/// Written in terms of `2ℓ` so every exponent and factorial argument is an integer.
pub fn central_constant(spec: &AlgebraSpec, m: u32) -> Result<BigInt> {
    let two_ell = spec.two_ell();
    if m > two_ell {
        return Err(Error::InvalidSpec(format!("index {m} exceeds 2l = {two_ell}")));
    }
    let magnitude = factorial(two_ell - m) * factorial(m);
    let exponent = match spec.ext() {
        Extension::Mass => m + two_ell.div_ceil(2),
        Extension::Exotic => m,
        Extension::None => {
            return Err(Error::UnsupportedFamily("centerless algebra has no central constant".into()))
        }
    };
    Ok(if exponent % 2 == 0 { magnitude } else { -magnitude })
}
