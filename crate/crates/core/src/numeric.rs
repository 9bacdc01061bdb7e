//! Shared numeric helpers: exact rational roots and big-integer logarithms.

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Natural logarithm of a positive big integer, accurate to f64 precision.
///
/// Values beyond the f64 range are handled by splitting off the binary
/// exponent, so counts with thousands of bits still produce a finite log.
pub fn ln_biguint(n: &BigUint) -> f64 {
    assert!(!n.is_zero(), "ln of zero");
    let bits = n.bits();
    if bits <= 900 {
        return n.to_f64().expect("fits f64 range").ln();
    }
    // n = top * 2^shift with top holding the leading 64 bits.
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64-bit prefix");
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Rational enclosure `[lo, hi]` of `delta^(1/4)` with `hi - lo <= 2^-precision`.
///
/// Requires `0 <= delta <= 1`. Bisection keeps both endpoints exact, so either
/// endpoint can serve as a certified one-sided bound.
pub fn fourth_root_bounds(delta: &BigRational, precision: u32) -> (BigRational, BigRational) {
    assert!(!delta.is_negative(), "negative radicand");
    assert!(*delta <= BigRational::one(), "radicand above one");
    if delta.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let mut lo = BigRational::zero();
    let mut hi = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    for _ in 0..precision {
        let mid = (&lo + &hi) / &two;
        let mid4 = &mid * &mid * &mid * &mid;
        if mid4 <= *delta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Ceiling of a nonnegative rational, as usize.
pub fn ceil_to_usize(r: &BigRational) -> usize {
    if r.is_negative() {
        return 0;
    }
    r.ceil().to_integer().to_usize().expect("fits usize")
}

/// Widens a machine-word rational to arbitrary precision.
pub fn widen(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}
