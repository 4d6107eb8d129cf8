//! Exact integer, rational and polynomial arithmetic.

mod poly;
mod ratfunc;
mod resultant;
mod series;

pub use poly::{npoly_to_string, BiPoly, Coeff, IntPoly, NPoly, Poly};
pub use ratfunc::RatFunc;
pub use resultant::{discriminant, discriminant_in_n, resultant};
pub use series::{series_inverse_n, InvSeries};

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("divisor is not monic")]
    NotMonic,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("degree {got} is below the required minimum {min}")]
    DegreeTooSmall { got: usize, min: usize },
    #[error("expected degree exactly 2 in n, found {0:?}")]
    DegreeInN(Option<usize>),
    #[error("expansion in 1/n has positive powers of n")]
    PositivePowers,
    #[error("division by zero")]
    DivisionByZero,
}
