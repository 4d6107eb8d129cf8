//! Sylvester resultants and discriminants.
//!
//! Sign convention: `Res(f, g) = lc(f)^deg(g) * prod g(a_i)` over the roots
//! `a_i` of `f`, which is the determinant of the Sylvester matrix with the
//! rows of `f` first and coefficients in descending order.

use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::{AlgebraError, BiPoly, IntPoly, Integer};

/// Determinant by fraction-free (Bareiss) elimination.
fn bareiss_det(mut m: Vec<Vec<Integer>>) -> Integer {
    let size = m.len();
    if size == 0 {
        return Integer::one();
    }
    let mut sign = false;
    let mut prev = Integer::one();
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Integer::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v.div_floor(&prev);
            }
            m[i][k] = Integer::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

fn sylvester(f: &IntPoly, g: &IntPoly) -> Vec<Vec<Integer>> {
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, copies, deg) in [(f, n, m), (g, m, n)] {
        for shift in 0..copies {
            let mut row = vec![Integer::zero(); size];
            for (k, c) in p.coeffs().iter().enumerate() {
                row[shift + deg - k] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<Integer, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    Ok(bareiss_det(sylvester(f, g)))
}

/// `(-1)^(d(d-1)/2) Res(a, a') / lc(a)`.
pub fn discriminant(a: &IntPoly) -> Result<Integer, AlgebraError> {
    let d = a.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if d < 2 {
        return Err(AlgebraError::DegreeTooSmall { got: d, min: 2 });
    }
    let res = resultant(a, &a.derivative())?;
    let lc = a.leading().expect("nonzero");
    let (q, r) = res.div_rem(lc);
    debug_assert!(r.is_zero());
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}

/// For `p = A(x) n^2 + B(x) n + C(x)`, the discriminant `B^2 - 4AC` in `x`.
pub fn discriminant_in_n(p: &BiPoly) -> Result<IntPoly, AlgebraError> {
    let deg = p.degree_in_n();
    if deg != Some(2) {
        return Err(AlgebraError::DegreeInN(deg));
    }
    let a = p.n_coefficient(2);
    let b = p.n_coefficient(1);
    let c = p.n_coefficient(0);
    Ok(&b * &b - (a * c).scale(&Integer::from(4)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::NPoly;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&ip(&[-2, 0, 1]), &ip(&[-1, 1])).unwrap(), Integer::from(-1));
        let f = ip(&[3, -1, 4, 1]);
        assert!(resultant(&f, &f).unwrap().is_zero());
        for (b, c) in [(3, 5), (-7, 2), (0, -11)] {
            let r = resultant(&ip(&[c, b, 1]), &ip(&[b, 2])).unwrap();
            assert_eq!(r, Integer::from(4 * c - b * b));
        }
        assert_eq!(
            resultant(&IntPoly::zero(), &ip(&[1, 1])),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn resultant_with_linear_factor() {
        // Res(a, bx - c) = (-1)^deg(a) * b^deg(a) * a(c/b)
        let a = ip(&[5, -3, 0, 2]);
        let (beta, gamma) = (7i64, 4i64);
        let lhs = resultant(&a, &ip(&[-gamma, beta])).unwrap();
        let hom = a.eval_homogeneous(&Integer::from(gamma), &Integer::from(beta));
        assert_eq!(lhs, -hom);
    }

    #[test]
    fn constant_inputs() {
        assert_eq!(resultant(&ip(&[3]), &ip(&[1, 0, 1])).unwrap(), Integer::from(9));
        assert_eq!(resultant(&ip(&[3]), &ip(&[5])).unwrap(), Integer::one());
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&ip(&[-2, 0, 1])).unwrap(), Integer::from(8));
        for (b, c) in [(1, 1), (5, -3), (0, 7)] {
            assert_eq!(
                discriminant(&ip(&[c, b, 1])).unwrap(),
                Integer::from(b * b - 4 * c)
            );
        }
        // disc(x^3 + p x + q) = -4p^3 - 27q^2
        assert_eq!(
            discriminant(&ip(&[2, -3, 0, 1])).unwrap(),
            Integer::from(-4 * (-27) - 27 * 4)
        );
        assert_eq!(
            discriminant(&ip(&[1, 1])),
            Err(AlgebraError::DegreeTooSmall { got: 1, min: 2 })
        );
    }

    #[test]
    fn discriminant_in_n_checks_degree() {
        let linear = BiPoly::from_coeffs(vec![NPoly::from_i64(&[-1]), NPoly::from_i64(&[1, 1])]);
        assert_eq!(discriminant_in_n(&linear), Err(AlgebraError::DegreeInN(Some(1))));
        // n^2 x + 2 n x + x = x (n + 1)^2 : B^2 - 4AC = 4x^2 - 4x^2 = 0
        let sq = BiPoly::from_coeffs(vec![NPoly::zero(), NPoly::from_i64(&[1, 2, 1])]);
        assert!(discriminant_in_n(&sq).unwrap().is_zero());
    }
}
