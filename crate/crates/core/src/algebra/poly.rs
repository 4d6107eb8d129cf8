//! Dense univariate polynomials over an exact coefficient ring.
//!
//! Coefficients are stored in ascending degree order with no trailing zero;
//! the zero polynomial is the empty vector. The same type serves as a
//! polynomial in `x` over the integers ([`IntPoly`]), in the parameter `n`
//! ([`NPoly`]) and in `x` with `NPoly` coefficients ([`BiPoly`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Integer, Rational};

/// Exact commutative ring usable as a polynomial coefficient.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Multiply by a small non-negative integer.
    fn scale_u64(&self, k: u64) -> Self;
}

impl Coeff for BigInt {
    fn scale_u64(&self, k: u64) -> Self {
        self * k
    }
}

impl<C: Coeff> Coeff for Poly<C> {
    fn scale_u64(&self, k: u64) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.scale_u64(k)).collect())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

/// Polynomial in `x` with integer coefficients.
pub type IntPoly = Poly<Integer>;
/// Polynomial in the family parameter `n` with integer coefficients.
pub type NPoly = Poly<Integer>;
/// Polynomial in `x` whose coefficients are polynomials in `n`.
pub type BiPoly = Poly<NPoly>;

impl<C: Coeff> Poly<C> {
    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `x^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale_u64(k as u64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation in the coefficient ring.
    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x + c)
    }

    /// Truncate to the terms of degree `< k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(k).cloned().collect())
    }

    /// Division by a divisor whose leading coefficient is one.
    ///
    /// Returns `(q, r)` with `self = divisor * q + r` and `deg r < deg divisor`.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        let db = divisor.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        if !divisor.is_monic() {
            return Err(AlgebraError::NotMonic);
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![C::zero(); rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            let base = k - db;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[base + j] = rem[base + j].clone() - &(c.clone() * b);
            }
            quot[base] = c;
        }
        rem.truncate(db);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Map every coefficient through `f`.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Coeff> Zero for Poly<C> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Coeff> One for Poly<C> {
    fn one() -> Self {
        Poly {
            coeffs: vec![C::one()],
        }
    }
}

fn add_coeffs<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = o.clone() + s;
    }
    out
}

fn sub_coeffs<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), C::zero());
    }
    for (o, s) in out.iter_mut().zip(b) {
        *o = o.clone() - s;
    }
    out
}

fn mul_coeffs<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + &(x.clone() * y);
        }
    }
    out
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $f:ident) => {
        impl<'a, 'b, C: Coeff> $tr<&'b Poly<C>> for &'a Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &'b Poly<C>) -> Poly<C> {
                Poly::from_coeffs($f(&self.coeffs, &rhs.coeffs))
            }
        }
        impl<'b, C: Coeff> $tr<&'b Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &'b Poly<C>) -> Poly<C> {
                (&self).$method(rhs)
            }
        }
        impl<'a, C: Coeff> $tr<Poly<C>> for &'a Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                self.$method(&rhs)
            }
        }
        impl<C: Coeff> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_coeffs);
forward_binop!(Sub, sub, sub_coeffs);
forward_binop!(Mul, mul, mul_coeffs);

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -(self.clone())
    }
}

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Naive height: the largest coefficient in absolute value.
    pub fn height(&self) -> Result<Integer, AlgebraError> {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .ok_or(AlgebraError::ZeroPolynomial)
    }

    /// gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> Integer {
        self.coeffs
            .iter()
            .fold(Integer::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        self.map(|c| c / &g)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, v: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * v + Rational::from_integer(c.clone()))
    }

    /// `den^deg * p(num/den)`, an exact integer.
    pub fn eval_homogeneous(&self, num: &Integer, den: &Integer) -> Integer {
        if self.is_zero() {
            return Integer::zero();
        }
        let mut acc = Integer::zero();
        let mut den_pow = Integer::one();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * num + c * &den_pow;
            if k > 0 {
                den_pow *= den;
            }
        }
        acc
    }

    /// Remainder of `self * lc(b)^(deg self - deg b + 1)` by `b`.
    pub fn pseudo_rem(&self, b: &Self) -> Result<Self, AlgebraError> {
        let db = b.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        let lb = b.leading().cloned().unwrap_or_default();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().cloned().unwrap_or_default();
            r = r.scale(&lb) - b.scale(&lr).shift(dr - db);
        }
        Ok(r)
    }

    /// Exact quotient by a divisor known to divide `self` over the integers.
    pub fn div_exact(&self, b: &Self) -> Result<Self, AlgebraError> {
        let db = b.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        let lb = b.leading().cloned().unwrap_or_default();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(dr) = rem.degree() {
            if dr < db {
                return Err(AlgebraError::NotDivisible);
            }
            let (q, r) = rem.leading().cloned().unwrap_or_default().div_rem(&lb);
            if !r.is_zero() {
                return Err(AlgebraError::NotDivisible);
            }
            let term = Self::monomial(q, dr - db);
            rem = rem - &term * b;
            quot = quot + term;
        }
        Ok(quot)
    }

    /// Greatest common divisor over the integers, primitive with positive
    /// leading coefficient times the gcd of the contents.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&content)
    }

    /// True when `gcd(p, p')` is a constant.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }
}

impl BiPoly {
    /// Substitute an integer value for the parameter `n`.
    pub fn instantiate(&self, n: &Integer) -> IntPoly {
        self.map(|c| c.eval(n))
    }

    /// Lift an integer polynomial in `x` to constant-in-`n` coefficients.
    pub fn from_int_poly(p: &IntPoly) -> Self {
        p.map(|c| NPoly::constant(c.clone()))
    }

    /// Largest degree in `n` over all `x`-coefficients.
    pub fn degree_in_n(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    /// Coefficient of `n^k`, as a polynomial in `x`.
    pub fn n_coefficient(&self, k: usize) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| c.coeff(k)).collect())
    }
}

/// Canonical string for a polynomial in `n`: `c0 + c1*n + c2*n^2`.
pub fn npoly_to_string(p: &NPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| match k {
            0 => c.to_string(),
            1 => format!("{c}*n"),
            _ => format!("{c}*n^{k}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl<C: Coeff + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl Default for Poly<Integer> {
    fn default() -> Self {
        Poly { coeffs: Vec::new() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn np(c: &[i64]) -> NPoly {
        NPoly::from_i64(c)
    }

    #[test]
    fn add_cancels_to_canonical_form() {
        assert_eq!(ip(&[1, 1]) + ip(&[-1, 1]), ip(&[0, 2]));
        assert_eq!(ip(&[1, 1]) - ip(&[1, 1]), IntPoly::zero());
        assert_eq!(IntPoly::zero() + ip(&[3, 0, 1]), ip(&[3, 0, 1]));
        assert!(ip(&[0, 0, 0]).is_zero());
        assert_eq!(ip(&[0, 0, 0]).degree(), None);
    }

    #[test]
    fn bipoly_like_terms() {
        // n*x + x = (n+1)*x
        let a = BiPoly::monomial(np(&[0, 1]), 1);
        let b = BiPoly::monomial(np(&[1]), 1);
        assert_eq!(a + b, BiPoly::monomial(np(&[1, 1]), 1));
    }

    #[test]
    fn products() {
        assert_eq!(ip(&[-1, 1]) * ip(&[1, 1]), ip(&[-1, 0, 1]));
        assert!((ip(&[1, 2]) * IntPoly::zero()).is_zero());
        // ((n+1)x - 1)(1 + x) = (n+1)x^2 + n x - 1
        let p1 = BiPoly::from_coeffs(vec![np(&[-1]), np(&[1, 1])]);
        let one_plus_x = BiPoly::from_coeffs(vec![np(&[1]), np(&[1])]);
        assert_eq!(
            p1 * one_plus_x,
            BiPoly::from_coeffs(vec![np(&[-1]), np(&[0, 1]), np(&[1, 1])])
        );
    }

    #[test]
    fn rational_evaluation() {
        // p_{1,5} = 6x - 1 at 7/41
        let v = Rational::new(7.into(), 41.into());
        assert_eq!(ip(&[-1, 6]).eval_rational(&v), Rational::new(1.into(), 41.into()));
        assert_eq!(ip(&[5, 3, 2]).eval_rational(&Rational::zero()), Rational::from_integer(5.into()));
        assert_eq!(ip(&[-2, 0, 1]).eval_rational(&Rational::one()), Rational::from_integer((-1).into()));
    }

    #[test]
    fn homogeneous_matches_rational() {
        let p = ip(&[3, -4, 0, 7]);
        let (a, b) = (BigInt::from(-5), BigInt::from(9));
        let h = p.eval_homogeneous(&a, &b);
        let r = p.eval_rational(&Rational::new(a, b.clone()));
        assert_eq!(Rational::from_integer(h), r * Rational::from_integer(b.pow(3)));
    }

    #[test]
    fn derivatives() {
        assert_eq!(ip(&[0, 0, 0, 1]).derivative(), ip(&[0, 0, 3]));
        assert!(ip(&[7]).derivative().is_zero());
        // d/dx (n x^2 + n x - 1) = 2n x + n
        let p = BiPoly::from_coeffs(vec![np(&[-1]), np(&[0, 1]), np(&[0, 1])]);
        assert_eq!(
            p.derivative(),
            BiPoly::from_coeffs(vec![np(&[0, 1]), np(&[0, 2])])
        );
    }

    #[test]
    fn monic_division() {
        let (q, r) = ip(&[0, 0, 1]).div_rem_monic(&ip(&[-1, 1])).unwrap();
        assert_eq!((q, r), (ip(&[1, 1]), ip(&[1])));
        assert_eq!(
            ip(&[1, 2]).div_rem_monic(&ip(&[1, 2])),
            Err(AlgebraError::NotMonic)
        );
        assert_eq!(
            ip(&[1, 2]).div_rem_monic(&IntPoly::zero()),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn heights() {
        assert_eq!(ip(&[0, 0, 0, 1]).height().unwrap(), BigInt::from(1));
        assert_eq!(ip(&[3, -7]).height().unwrap(), BigInt::from(7));
        assert_eq!(IntPoly::zero().height(), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = ip(&[-1, 1]) * ip(&[2, 0, 1]);
        let b = ip(&[-1, 1]) * ip(&[3, 1]);
        assert_eq!(a.gcd(&b), ip(&[-1, 1]));
        assert!(a.is_squarefree());
        assert!(!(ip(&[-1, 1]) * ip(&[-1, 1])).is_squarefree());
        assert_eq!(ip(&[2, 4]).gcd(&ip(&[6, 12])), ip(&[2, 4]));
    }

    #[test]
    fn exact_division() {
        let a = ip(&[-1, 1]) * ip(&[2, 0, 3]);
        assert_eq!(a.div_exact(&ip(&[-1, 1])).unwrap(), ip(&[2, 0, 3]));
        assert_eq!(a.div_exact(&ip(&[1, 1])), Err(AlgebraError::NotDivisible));
    }

    #[test]
    fn npoly_rendering() {
        assert_eq!(npoly_to_string(&np(&[1, 1])), "1 + 1*n");
        assert_eq!(npoly_to_string(&np(&[-1])), "-1");
        assert_eq!(npoly_to_string(&np(&[0, -2, 3])), "0 + -2*n + 3*n^2");
        assert_eq!(npoly_to_string(&NPoly::zero()), "0");
    }
}
