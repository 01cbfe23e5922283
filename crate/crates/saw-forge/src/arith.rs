//! Exact comparisons involving rational powers of integers.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

/// A rational exponent such as `1/2`.
pub type Exponent = Rational64;

fn pow_rat(a: &BigRational, k: u64) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..k {
        r *= a;
    }
    r
}

fn pow_int(n: u64, k: u64) -> BigInt {
    num_traits::pow(BigInt::from(n), k as usize)
}

/// Compares `a * n^e` with `b` for non-negative `a`, `b` and `n >= 1`.
pub fn pow_cmp(a: &BigRational, n: u64, e: &Exponent, b: &BigRational) -> Ordering {
    assert!(n >= 1, "base must be positive");
    assert!(!a.is_negative() && !b.is_negative());
    let p = *e.numer();
    let q = *e.denom() as u64;
    let aq = pow_rat(a, q);
    let bq = pow_rat(b, q);
    let np = BigRational::from_integer(pow_int(n, p.unsigned_abs()));
    if p >= 0 {
        (aq * np).cmp(&bq)
    } else {
        aq.cmp(&(bq * np))
    }
}

/// `a * n^e >= b`.
pub fn pow_ge(a: &BigRational, n: u64, e: &Exponent, b: &BigRational) -> bool {
    pow_cmp(a, n, e, b) != Ordering::Less
}

/// `floor(n^e)` for `e >= 0`.
pub fn floor_pow(n: u64, e: &Exponent) -> u64 {
    assert!(*e >= Exponent::zero());
    let one = BigRational::one();
    // largest t with t <= n^e, i.e. 1 * n^e >= t
    let mut lo = 0u64;
    let up = (*e.numer() as u64).div_ceil(*e.denom() as u64) as u32;
    let mut hi = n.max(1).pow(up.max(1));
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        let t = BigRational::from_integer(BigInt::from(mid));
        if pow_ge(&one, n, e, &t) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// `ceil(n^e / k)` for `e >= 0`, `k >= 1`.
pub fn ceil_pow_div(n: u64, e: &Exponent, k: u64) -> u64 {
    let one = BigRational::one();
    let mut t = 0u64;
    loop {
        let kt = BigRational::from_integer(BigInt::from(k * t));
        // k t >= n^e
        if pow_cmp(&one, n, e, &kt) != Ordering::Greater {
            return t;
        }
        t += 1;
    }
}

/// `floor(sqrt(k) / c)`: the largest `w` with `(w c)^2 <= k`.
pub fn floor_sqrt_div(k: u64, c: u64) -> u64 {
    assert!(c >= 1);
    let mut w = 0;
    while ((w + 1) * c).pow(2) <= k {
        w += 1;
    }
    w
}

/// Binomial coefficient as a big integer.
pub fn choose(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    binomial(BigUint::from(n), BigUint::from(k))
}
