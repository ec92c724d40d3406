//! Exact sign determination for the classification predicates.
//!
//! Every threshold in the regime map is a rational combination of the inputs
//! and of at most the two square roots √δ₁, √δ₂. Deciding a predicate
//! exactly therefore reduces to the sign of `a + b√x` or of
//! `a + b√x + c√y` with rational a, b, c and nonnegative rational x, y,
//! which repeated squaring settles without any rounding.
//!
//! Inputs arrive as `f64` and are treated as the exact rationals they are
//! (every finite double is `m · 2^e`); callers who need decimal fractions
//! exact can supply them as strings through the config layer, which converts
//! before the float ever exists.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

pub type Rat = BigRational;

/// The exact rational value of a finite f64.
pub fn rat(x: f64) -> Rat {
    BigRational::from_float(x).expect("finite input required for exact arithmetic")
}

pub fn rat_int(k: i64) -> Rat {
    BigRational::from_integer(BigInt::from(k))
}

fn sign_rat(a: &Rat) -> i8 {
    match a.cmp(&Rat::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Sign of `a + b√x`, requiring `x ≥ 0`.
pub fn sign1(a: &Rat, b: &Rat, x: &Rat) -> i8 {
    debug_assert!(!x.is_negative(), "radicand must be nonnegative");
    if b.is_zero() || x.is_zero() {
        return sign_rat(a);
    }
    let sa = sign_rat(a);
    let sb = sign_rat(b);
    if sa == 0 {
        return sb;
    }
    if sa == sb {
        return sa;
    }
    // Opposite signs: compare a² with b²x. For a > 0 the value is positive
    // iff a² > b²x; for a < 0 the inequality flips.
    let lhs = a * a;
    let rhs = b * b * x;
    sa * sign_rat(&(lhs - rhs))
}

/// Sign of `a + b√x + c√y`, requiring `x, y ≥ 0`.
pub fn sign2(a: &Rat, b: &Rat, x: &Rat, c: &Rat, y: &Rat) -> i8 {
    if b.is_zero() || x.is_zero() {
        return sign1(a, c, y);
    }
    if c.is_zero() || y.is_zero() {
        return sign1(a, b, x);
    }
    let s_left = sign1(a, b, x); // sign of a + b√x
    let s_right = sign_rat(c); // sign of c√y (y > 0 here)
    if s_left == 0 {
        return s_right;
    }
    if s_right == 0 {
        return s_left;
    }
    if s_left == s_right {
        return s_left;
    }
    // Opposite signs: the value is sign(L)·sign(L² - c²y) with
    // L = a + b√x, and L² - c²y = (a² + b²x - c²y) + 2ab·√x.
    let a2 = a * a + b * b * x - c * c * y;
    let b2 = rat_int(2) * a * b;
    s_left * sign1(&a2, &b2, x)
}
