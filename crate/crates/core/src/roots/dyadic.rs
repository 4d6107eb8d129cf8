//! Dyadic rationals `m * 2^e` with explicitly rounded operations.
//!
//! Addition, subtraction, multiplication and comparison are exact. Division,
//! square roots and mantissa truncation take a [`Round`] direction so that
//! interval endpoints can be rounded outward.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Integer, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

#[derive(Clone, Debug)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn shr_round(m: &BigInt, shift: u64, dir: Round) -> BigInt {
    let q = m >> shift;
    if dir == Round::Up && (&q << shift) != *m {
        q + 1
    } else {
        q
    }
}

fn div_round(a: &BigInt, b: &BigInt, dir: Round) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if dir == Round::Up && !r.is_zero() {
        q + 1
    } else {
        q
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    pub fn zero() -> Self {
        Dyadic::new(BigInt::zero(), 0)
    }

    pub fn from_int(v: &Integer) -> Self {
        Dyadic::new(v.clone(), 0)
    }

    /// `2^e`
    pub fn pow2(e: i64) -> Self {
        Dyadic::new(BigInt::one(), e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Self {
        Dyadic::new(self.mant.abs(), self.exp)
    }

    pub fn neg(&self) -> Self {
        Dyadic::new(-&self.mant, self.exp)
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        (
            &self.mant << (self.exp - e) as u64,
            &other.mant << (other.exp - e) as u64,
            e,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a - b, e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Multiply by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        Dyadic::new(self.mant.clone(), self.exp + k)
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Keep at most `bits` significant bits, rounding in direction `dir`.
    pub fn round(&self, bits: u64, dir: Round) -> Self {
        let have = self.mant.bits();
        if have <= bits {
            return self.clone();
        }
        let shift = have - bits;
        Dyadic::new(shr_round(&self.mant, shift, dir), self.exp + shift as i64)
    }

    pub fn div(&self, other: &Self, bits: u64, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        // Quotient of the mantissas carries at least `bits` significant bits.
        let extra = (bits + other.mant.bits()).saturating_sub(self.mant.bits()) + 2;
        let (mut a, mut b) = (&self.mant << extra, other.mant.clone());
        if b.is_negative() {
            a = -a;
            b = -b;
        }
        Dyadic::new(div_round(&a, &b, dir), self.exp - other.exp - extra as i64).round(bits, dir)
    }

    /// Square root of a non-negative value.
    pub fn sqrt(&self, bits: u64, dir: Round) -> Self {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut shift = (2 * bits + 2).saturating_sub(self.mant.bits()) as i64;
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let scaled = &self.mant << shift as u64;
        let mut s = scaled.sqrt();
        if dir == Round::Up && &s * &s != scaled {
            s += 1;
        }
        Dyadic::new(s, (self.exp - shift) / 2)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn from_rational(q: &Rational, bits: u64, dir: Round) -> Self {
        Dyadic::from_int(q.numer()).div(&Dyadic::from_int(q.denom()), bits, dir)
    }

    /// Exact conversion from a finite `f64`.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let m = BigInt::from(m);
        Dyadic::new(if negative { -m } else { m }, e)
    }

    /// Nearest `f64` in direction `dir`. Values outside the normal range are
    /// clamped soundly (to zero, the smallest normal, or infinity).
    pub fn to_f64(&self, dir: Round) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if self.is_negative() {
            let flipped = match dir {
                Round::Down => Round::Up,
                Round::Up => Round::Down,
            };
            return -self.neg().to_f64(flipped);
        }
        let r = self.round(53, dir);
        let mut m = r.mant.clone();
        let mut e = r.exp;
        let b = m.bits();
        if b < 53 {
            m <<= 53 - b;
            e -= (53 - b) as i64;
        } else if b > 53 {
            // upward rounding carried into a 54th bit: m = 2^53
            m >>= 1u32;
            e += 1;
        }
        // value = m * 2^e with 2^52 <= m < 2^53
        let top = e + 52;
        if top > 1023 {
            return match dir {
                Round::Down => f64::MAX,
                Round::Up => f64::INFINITY,
            };
        }
        if top < -1022 {
            return match dir {
                Round::Down => 0.0,
                Round::Up => f64::MIN_POSITIVE,
            };
        }
        let m: u64 = m.try_into().expect("53-bit mantissa");
        f64::from_bits((((top + 1023) as u64) << 52) | (m & ((1u64 << 52) - 1)))
    }

    /// Approximate base-2 logarithm of a positive value.
    pub fn log2_approx(&self) -> f64 {
        assert!(self.is_positive());
        log2_bigint(&self.mant) + self.exp as f64
    }

    /// Approximate natural logarithm of a positive value.
    pub fn ln_approx(&self) -> f64 {
        self.log2_approx() * std::f64::consts::LN_2
    }

    /// Exact hexadecimal rendering `0x<hex mantissa>p<exp>`.
    pub fn to_hex_string(&self) -> String {
        let sign = if self.is_negative() { "-" } else { "" };
        format!("{sign}0x{}p{}", self.mant.abs().to_str_radix(16), self.exp)
    }
}

/// Approximate `log2 |v|` for a nonzero integer.
pub fn log2_bigint(v: &BigInt) -> f64 {
    let bits = v.bits();
    let keep = bits.min(60);
    let top: u64 = (v.abs() >> (bits - keep)).try_into().expect("fits u64");
    (top as f64).log2() + (bits - keep) as f64
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.mant.sign(), other.mant.sign()) {
            (a, b) if a != b => return sign_rank(a).cmp(&sign_rank(b)),
            (Sign::NoSign, _) => return Ordering::Equal,
            _ => {}
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

fn sign_rank(s: Sign) -> i8 {
    match s {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64(Round::Down))
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(v: Dyadic) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_rational(&self, v: &Rational) -> bool {
        &self.lo.to_rational() <= v && v <= &self.hi.to_rational()
    }

    /// Product of two intervals with non-negative endpoints, rounded outward
    /// to `bits` significant bits.
    pub fn mul_nonneg(&self, other: &Self, bits: u64) -> Self {
        debug_assert!(!self.lo.is_negative() && !other.lo.is_negative());
        Interval {
            lo: self.lo.mul(&other.lo).round(bits, Round::Down),
            hi: self.hi.mul(&other.hi).round(bits, Round::Up),
        }
    }
}
