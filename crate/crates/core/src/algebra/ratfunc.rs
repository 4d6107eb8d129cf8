use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};

use super::{npoly_to_string, AlgebraError, BiPoly, NPoly};

/// Rational function in `n`, kept reduced: `gcd(num, den) = 1` over the
/// integers and the leading coefficient of `den` positive.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: NPoly,
    den: NPoly,
}

impl RatFunc {
    pub fn new(num: NPoly, den: NPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g)?;
        let mut den = den.div_exact(&g)?;
        if den.leading().is_some_and(|c| c.is_negative()) {
            num = -num;
            den = -den;
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: NPoly) -> Self {
        RatFunc {
            num: p,
            den: NPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(NPoly::zero())
    }

    pub fn num(&self) -> &NPoly {
        &self.num
    }

    pub fn den(&self) -> &NPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Evaluate a polynomial in `x` with `n`-coefficients at `x = self`.
    ///
    /// Homogenised over the common denominator and reduced once at the end.
    pub fn eval_bipoly(&self, p: &BiPoly) -> Self {
        let Some(deg) = p.degree() else {
            return Self::zero();
        };
        let mut acc = NPoly::zero();
        let mut den_pow = NPoly::one();
        for c in p.coeffs().iter().rev() {
            acc = acc * &self.num + c * &den_pow;
            den_pow = den_pow * &self.den;
        }
        Self::new(acc, self.den.pow(deg as u32)).expect("denominator is nonzero")
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) / ({})",
            npoly_to_string(&self.num),
            npoly_to_string(&self.den)
        )
    }
}
