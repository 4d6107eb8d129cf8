use num_traits::Zero;

use super::{AlgebraError, RatFunc, Rational};

/// Truncated expansion `constant + c_1/n + ... + c_K/n^K` as `n -> inf`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvSeries {
    pub constant: Rational,
    /// `coeffs[k - 1]` is the coefficient of `1/n^k`.
    pub coeffs: Vec<Rational>,
}

impl InvSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `1/n^k`, with `k = 0` the constant part.
    pub fn coeff(&self, k: usize) -> Rational {
        match k {
            0 => self.constant.clone(),
            _ => self.coeffs.get(k - 1).cloned().unwrap_or_else(Rational::zero),
        }
    }
}

/// Expand `f` in powers of `1/n` up to `1/n^order`.
pub fn series_inverse_n(f: &RatFunc, order: usize) -> Result<InvSeries, AlgebraError> {
    let zero = InvSeries {
        constant: Rational::zero(),
        coeffs: vec![Rational::zero(); order],
    };
    let Some(dn) = f.num().degree() else {
        return Ok(zero);
    };
    let dd = f.den().degree().expect("denominator is nonzero");
    if dn > dd {
        return Err(AlgebraError::PositivePowers);
    }
    // With t = 1/n: f = t^(dd - dn) * rev(num)(t) / rev(den)(t).
    let shift = dd - dn;
    let rev = |c: &[crate::algebra::Integer]| -> Vec<Rational> {
        c.iter().rev().map(|v| Rational::from_integer(v.clone())).collect()
    };
    let num = rev(f.num().coeffs());
    let den = rev(f.den().coeffs());
    let terms = (order + 1).saturating_sub(shift);
    let mut g: Vec<Rational> = Vec::with_capacity(terms);
    for j in 0..terms {
        let mut acc = num.get(j).cloned().unwrap_or_else(Rational::zero);
        for i in 1..=j.min(den.len() - 1) {
            acc -= &den[i] * &g[j - i];
        }
        g.push(acc / &den[0]);
    }
    let mut all = vec![Rational::zero(); order + 1];
    for (j, c) in g.into_iter().enumerate() {
        all[j + shift] = c;
    }
    let constant = all.remove(0);
    Ok(InvSeries {
        constant,
        coeffs: all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::NPoly;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(NPoly::from_i64(num), NPoly::from_i64(den)).unwrap()
    }

    fn ints(s: &InvSeries) -> Vec<i64> {
        s.coeffs
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn xn_expansion_leading_terms() {
        let s = series_inverse_n(&rf(&[2, 1], &[1, 3, 1]), 6).unwrap();
        assert!(s.constant.is_zero());
        assert_eq!(ints(&s), vec![1, -1, 2, -5, 13, -34]);
    }

    #[test]
    fn simple_cases() {
        let s = series_inverse_n(&rf(&[1], &[0, 1]), 3).unwrap();
        assert_eq!(ints(&s), vec![1, 0, 0]);
        let s = series_inverse_n(&rf(&[1, 1], &[0, 1]), 2).unwrap();
        assert_eq!(s.constant, Rational::from_integer(1.into()));
        assert_eq!(ints(&s), vec![1, 0]);
        assert_eq!(
            series_inverse_n(&rf(&[0, 0, 1], &[1, 1]), 2),
            Err(AlgebraError::PositivePowers)
        );
    }

    #[test]
    fn non_integer_coefficients_are_kept() {
        // 1/(2n + 1) = 1/(2n) - 1/(4n^2) + ...
        let s = series_inverse_n(&rf(&[1], &[1, 2]), 2).unwrap();
        assert_eq!(s.coeff(1), Rational::new(1.into(), 2.into()));
        assert_eq!(s.coeff(2), Rational::new((-1).into(), 4.into()));
    }
}
