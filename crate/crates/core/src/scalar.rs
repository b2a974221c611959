//! Coefficient rings for the truncated-series engine.
//!
//! Two rings share one interface:
//!
//! * [`num_rational::BigRational`] — exact arithmetic, the reference ring for
//!   identity checks and oracle comparisons;
//! * [`ExtFloat`] — an f64 mantissa with a detached `i64` exponent, so EGF
//!   coefficients keep ~16 significant digits far past f64's 1e308 range
//!   (series of order several thousand overflow plain f64 around order 600).
//!
//! Invariants: an `ExtFloat` is either exactly zero (`m == 0.0, e == 0`) or
//! normalized with `1.0 <= |m| < 2.0`. All ring operations preserve this, so
//! structural equality is well-defined and fixed-point iterations terminate
//! bit-exactly in both rings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ring interface shared by the exact and float coefficient types.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Exact ratio constructor; `den > 0`.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Division; callers guarantee `rhs` is nonzero.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den > 0, "from_ratio: denominator must be positive");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        assert!(!Zero::is_zero(rhs), "division by zero");
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

const EXP_MASK: u64 = 0x7ff << 52;

/// 2^d as f64 for |d| <= 1022 (exact).
#[inline]
fn exp2i(d: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&d));
    f64::from_bits(((1023 + d) as u64) << 52)
}

/// Wide-exponent float: value = `m * 2^e` with `1 <= |m| < 2` (or exact zero).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtFloat {
    m: f64,
    e: i64,
}

impl ExtFloat {
    pub const ZERO: ExtFloat = ExtFloat { m: 0.0, e: 0 };
    pub const ONE: ExtFloat = ExtFloat { m: 1.0, e: 0 };

    fn normalize(m: f64, e: i64) -> ExtFloat {
        if m == 0.0 {
            return ExtFloat::ZERO;
        }
        assert!(m.is_finite(), "ExtFloat: non-finite mantissa {m}");
        let mut m = m;
        let mut e = e;
        let mut be = ((m.to_bits() & EXP_MASK) >> 52) as i64;
        if be == 0 {
            // Subnormal mantissa (only reachable via from_f64): rescale first.
            m *= exp2i(128);
            e -= 128;
            be = ((m.to_bits() & EXP_MASK) >> 52) as i64;
        }
        let mant = f64::from_bits((m.to_bits() & !EXP_MASK) | (1023u64 << 52));
        ExtFloat {
            m: mant,
            e: e + (be - 1023),
        }
    }

    pub fn from_f64(v: f64) -> ExtFloat {
        ExtFloat::normalize(v, 0)
    }

    /// Nearest f64; overflows to signed infinity, underflows to zero.
    pub fn to_f64(self) -> f64 {
        if self.m == 0.0 {
            0.0
        } else if self.e > 1023 {
            f64::INFINITY * self.m.signum()
        } else if self.e < -1020 {
            // Give up well before the subnormal range; callers treating
            // magnitudes below 2^-1020 as zero is fine for this crate.
            0.0
        } else {
            self.m * exp2i(self.e)
        }
    }

    /// Natural log of |self|; `-inf` for zero.
    pub fn ln_abs(self) -> f64 {
        if self.m == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.m.abs().ln() + self.e as f64 * std::f64::consts::LN_2
        }
    }

    /// e^x as an ExtFloat, for |x| far beyond f64's overflow range.
    pub fn exp_of(x: f64) -> ExtFloat {
        let e2 = x / std::f64::consts::LN_2;
        let k = e2.floor();
        let frac = (e2 - k) * std::f64::consts::LN_2;
        ExtFloat::normalize(frac.exp(), 0).shift(k as i64)
    }

    fn shift(self, d: i64) -> ExtFloat {
        if self.m == 0.0 {
            self
        } else {
            ExtFloat {
                m: self.m,
                e: self.e + d,
            }
        }
    }

    pub fn abs(self) -> ExtFloat {
        ExtFloat {
            m: self.m.abs(),
            e: self.e,
        }
    }

    pub fn is_sign_positive(self) -> bool {
        self.m > 0.0
    }

    /// Total order (zero sits between negatives and positives).
    pub fn cmp_value(self, rhs: ExtFloat) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        let sa = if self.m == 0.0 { 0 } else if self.m > 0.0 { 1 } else { -1 };
        let sb = if rhs.m == 0.0 { 0 } else if rhs.m > 0.0 { 1 } else { -1 };
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Equal;
        }
        let key = |x: ExtFloat| (x.e, x.m);
        let (ka, kb) = (key(self), key(rhs));
        let ord = ka.0.cmp(&kb.0).then(ka.1.partial_cmp(&kb.1).unwrap());
        if sa > 0 {
            ord
        } else {
            ord.reverse()
        }
    }
}

impl Scalar for ExtFloat {
    fn zero() -> Self {
        ExtFloat::ZERO
    }
    fn one() -> Self {
        ExtFloat::ONE
    }
    fn from_i64(v: i64) -> Self {
        ExtFloat::from_f64(v as f64)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den > 0, "from_ratio: denominator must be positive");
        ExtFloat::from_f64(num as f64).div(&ExtFloat::from_f64(den as f64))
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.m == 0.0 {
            return *rhs;
        }
        if rhs.m == 0.0 {
            return *self;
        }
        let d = self.e - rhs.e;
        if d >= 106 {
            *self
        } else if d <= -106 {
            *rhs
        } else if d >= 0 {
            ExtFloat::normalize(self.m + rhs.m * exp2i(-d), self.e)
        } else {
            ExtFloat::normalize(rhs.m + self.m * exp2i(d), rhs.e)
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.m == 0.0 || rhs.m == 0.0 {
            return ExtFloat::ZERO;
        }
        ExtFloat::normalize(self.m * rhs.m, self.e + rhs.e)
    }
    fn div(&self, rhs: &Self) -> Self {
        assert!(rhs.m != 0.0, "division by zero");
        if self.m == 0.0 {
            return ExtFloat::ZERO;
        }
        ExtFloat::normalize(self.m / rhs.m, self.e - rhs.e)
    }
    fn neg(&self) -> Self {
        ExtFloat { m: -self.m, e: self.e }
    }
    fn is_zero(&self) -> bool {
        self.m == 0.0
    }
}

/// Round a big rational into the wide-exponent float ring.
pub fn rat_to_ext(r: &BigRational) -> ExtFloat {
    fn mant_exp(x: &BigInt) -> (f64, i64) {
        let bits = x.bits();
        if bits <= 53 {
            (x.to_f64().expect("small BigInt fits f64"), 0)
        } else {
            let shift = bits - 53;
            let top = (x >> shift).to_f64().expect("53-bit BigInt fits f64");
            (top, shift as i64)
        }
    }
    if Zero::is_zero(r) {
        return ExtFloat::ZERO;
    }
    let (nm, ne) = mant_exp(&r.numer().abs());
    let (dm, de) = mant_exp(&r.denom().abs());
    let sign = if (r.numer().sign() == num_bigint::Sign::Minus)
        != (r.denom().sign() == num_bigint::Sign::Minus)
    {
        -1.0
    } else {
        1.0
    };
    ExtFloat::normalize(sign * nm / dm, ne - de)
}

/// Natural log of |r| without materializing the quotient as f64.
pub fn rat_ln_abs(r: &BigRational) -> f64 {
    rat_to_ext(r).ln_abs()
}

/// n! in any ring (plain loop; callers cache tables where this is hot).
pub fn factorial_scalar<S: Scalar>(n: u64) -> S {
    let mut acc = S::one();
    for i in 2..=n {
        acc = acc.mul(&S::from_i64(i as i64));
    }
    acc
}

/// ln(n!) as f64, accurate for all n.
pub fn ln_factorial(n: u64) -> f64 {
    statrs::function::gamma::ln_gamma(n as f64 + 1.0)
}
