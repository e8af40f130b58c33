//! Exact rational scalars and small conversion helpers.
//!
//! Every geometric predicate in this crate is evaluated over `Rat`
//! (arbitrary-precision rationals, always in lowest terms), so the helpers
//! here are mostly about moving between `f64` and `Rat` without introducing
//! rounding: every finite `f64` is a dyadic rational and converts exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, kept in lowest terms by construction.
pub type Rat = BigRational;

/// Rational from an integer numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact conversion of a finite `f64` (which is a dyadic rational).
///
/// Panics on NaN/infinite input.
pub fn from_f64_exact(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float")
}

/// Convert a finite `f64` to a nearby dyadic rational with at most `bits`
/// fractional bits.
///
/// Quadrature nodes pass through this so that downstream exact arithmetic
/// works with bounded-size numerators while the placement error stays below
/// `2^-bits`.
pub fn from_f64_dyadic(x: f64, bits: u32) -> Rat {
    let scale = (x * (bits as f64).exp2()).round();
    Rat::new(
        from_f64_exact(scale).to_integer(),
        BigInt::one() << bits as usize,
    )
}

/// Lossy conversion to `f64` (used only after exact arithmetic is finished).
pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of leading digits for extreme magnitudes.
        let n = x.numer().to_f64().unwrap_or(f64::MAX);
        let d = x.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rat::from_integer(acc)
}

/// `n!` as a `usize`, for small capacity computations (saturating).
pub fn factorial_usize(n: usize) -> usize {
    (1..=n).try_fold(1usize, |acc, i| acc.checked_mul(i)).unwrap_or(usize::MAX)
}

/// Harmonic number `H_n = 1 + 1/2 + … + 1/n`.
pub fn harmonic(n: usize) -> Rat {
    let mut acc = Rat::zero();
    for i in 1..=n {
        acc += rat(1, i as i64);
    }
    acc
}

/// Sign of a rational as -1, 0, or 1.
pub fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_roundtrip_is_exact() {
        for x in [0.5, 0.1, 1.0 / 3.0, 123.456e-7] {
            assert_eq!(to_f64(&from_f64_exact(x)), x);
        }
    }

    #[test]
    fn dyadic_snap_bounds_error() {
        let x = 0.123456789;
        let snapped = from_f64_dyadic(x, 48);
        assert!((to_f64(&snapped) - x).abs() < 2.0f64.powi(-47));
        assert!(snapped.denom() <= &(BigInt::one() << 48));
    }

    #[test]
    fn harmonic_small() {
        assert_eq!(harmonic(3), rat(11, 6));
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(5), int(120));
    }
}
