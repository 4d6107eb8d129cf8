//! Aberth–Ehrlich simultaneous iteration over fixed-point Gaussian integers.
//!
//! A value `(re + i*im) * 2^-prec` is stored as the pair of integers. The
//! iteration only produces approximations; soundness comes from the exact
//! certification step in the parent module.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::dyadic::{log2_bigint, Dyadic, Round};
use crate::algebra::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Fixed {
    pub re: BigInt,
    pub im: BigInt,
}

impl Fixed {
    fn zero() -> Self {
        Fixed {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn norm_sqr(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn sub(&self, o: &Fixed) -> Fixed {
        Fixed {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Fixed, prec: u64) -> Fixed {
        Fixed {
            re: (&self.re * &o.re - &self.im * &o.im) >> prec,
            im: (&self.re * &o.im + &self.im * &o.re) >> prec,
        }
    }

    fn div(&self, o: &Fixed, prec: u64) -> Option<Fixed> {
        let den = o.norm_sqr();
        if den.is_zero() {
            return None;
        }
        let re = (&self.re * &o.re + &self.im * &o.im) << prec;
        let im = (&self.im * &o.re - &self.re * &o.im) << prec;
        Some(Fixed {
            re: re / &den,
            im: im / &den,
        })
    }

    /// Re-express at a different scale.
    pub fn rescale(&self, from: u64, to: u64) -> Fixed {
        if to >= from {
            Fixed {
                re: &self.re << (to - from),
                im: &self.im << (to - from),
            }
        } else {
            Fixed {
                re: &self.re >> (from - to),
                im: &self.im >> (from - to),
            }
        }
    }

    fn nudge(&mut self, prec: u64, salt: usize) {
        let step = BigInt::one() << (prec / 2);
        self.re += &step * (1 + salt % 3);
        self.im -= &step * (1 + salt % 5);
    }

    fn from_f64_pair(re: f64, im: f64, prec: u64) -> Fixed {
        let conv = |v: f64| {
            let d = Dyadic::from_f64(v).mul_pow2(prec as i64);
            // floor to an integer
            let e = d.exponent();
            if e >= 0 {
                d.mantissa() << e as u64
            } else {
                d.mantissa() >> (-e) as u64
            }
        };
        Fixed {
            re: conv(re),
            im: conv(im),
        }
    }
}

/// Starting points on circles whose radii follow the upper convex hull of
/// `(k, log|a_k|)` (the Newton polygon of the coefficients).
pub(crate) fn initial_guesses(p: &IntPoly, prec: u64, rotation: f64) -> Vec<Fixed> {
    let deg = p.degree().unwrap_or(0);
    let pts: Vec<(usize, f64)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, log2_bigint(c)))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::with_capacity(deg);
    for w in hull.windows(2) {
        let ((i, li), (j, lj)) = (w[0], w[1]);
        let m = j - i;
        let radius = ((li - lj) / m as f64).exp2();
        for t in 0..m {
            let angle = TAU * t as f64 / m as f64 + TAU * i as f64 / deg as f64 + rotation;
            out.push(Fixed::from_f64_pair(
                radius * angle.cos(),
                radius * angle.sin(),
                prec,
            ));
        }
    }
    out
}

pub(crate) struct Outcome {
    pub centers: Vec<Fixed>,
    pub converged: bool,
}

/// Value and derivative at `z` by Horner's rule in fixed point.
fn eval_with_derivative(coeffs: &[BigInt], z: &Fixed, prec: u64) -> (Fixed, Fixed) {
    let mut val = Fixed::zero();
    let mut der = Fixed::zero();
    for c in coeffs.iter().rev() {
        der = der.mul(z, prec);
        der.re += &val.re;
        der.im += &val.im;
        val = val.mul(z, prec);
        val.re += c;
    }
    (val, der)
}

/// Gauss–Seidel Aberth iteration from `start` at `prec` fractional bits.
pub(crate) fn iterate(p: &IntPoly, prec: u64, mut z: Vec<Fixed>, max_iter: usize) -> Outcome {
    let deg = z.len();
    let coeffs: Vec<BigInt> = p.coeffs().iter().map(|c| c << prec).collect();
    let one = Fixed {
        re: BigInt::one() << prec,
        im: BigInt::zero(),
    };
    // |w| at or below 2^(16 - prec) is treated as rounding noise.
    let noise = BigInt::one() << 32u32;
    let mut frozen = vec![false; deg];
    let mut prev = vec![None::<BigInt>; deg];
    for iter in 0..max_iter {
        for i in 0..deg {
            if frozen[i] {
                continue;
            }
            let (val, der) = eval_with_derivative(&coeffs, &z[i], prec);
            if val.is_zero() {
                frozen[i] = true;
                continue;
            }
            let Some(newton) = val.div(&der, prec) else {
                z[i].nudge(prec, i + iter);
                continue;
            };
            let mut sum = Fixed::zero();
            let mut collided = false;
            for j in 0..deg {
                if j == i {
                    continue;
                }
                match one.div(&z[i].sub(&z[j]), prec) {
                    Some(t) => {
                        sum.re += t.re;
                        sum.im += t.im;
                    }
                    None => {
                        collided = true;
                        break;
                    }
                }
            }
            if collided {
                z[i].nudge(prec, i + iter);
                continue;
            }
            let denom = one.sub(&newton.mul(&sum, prec));
            let step = newton.div(&denom, prec).unwrap_or(newton);
            z[i] = z[i].sub(&step);
            let mag = step.norm_sqr();
            let zmag = z[i].norm_sqr().max(one.re.clone() * &one.re);
            let small = mag <= (zmag >> prec);
            let stalled = prev[i].as_ref().is_some_and(|p| &mag * 4u32 > *p);
            if mag <= noise || (small && stalled) {
                frozen[i] = true;
            }
            prev[i] = Some(mag);
        }
        if frozen.iter().all(|&f| f) {
            log::trace!("aberth converged after {} sweeps at {prec} bits", iter + 1);
            return Outcome {
                centers: z,
                converged: true,
            };
        }
    }
    Outcome {
        centers: z,
        converged: false,
    }
}

/// Round a fixed-point value to the dyadic grid with exponent `-prec`.
pub(crate) fn to_dyadic_pair(z: &Fixed, prec: u64) -> (Dyadic, Dyadic) {
    (
        Dyadic::new(z.re.clone(), -(prec as i64)),
        Dyadic::new(z.im.clone(), -(prec as i64)),
    )
}

/// Homogenised exact evaluation: returns `(A, B)` with
/// `p(z) = A / 2^(prec*d)` and `p'(z) = B / 2^(prec*(d-1))` for
/// `z = (re + i*im) / 2^prec`.
pub(crate) fn exact_eval(p: &IntPoly, z: &Fixed, prec: u64) -> (Fixed, Fixed) {
    fn horner(coeffs: &[BigInt], z: &Fixed, prec: u64) -> Fixed {
        let mut acc = Fixed::zero();
        let mut scale = BigInt::one();
        for (idx, c) in coeffs.iter().rev().enumerate() {
            if idx > 0 {
                scale <<= prec;
                acc = Fixed {
                    re: &acc.re * &z.re - &acc.im * &z.im,
                    im: &acc.re * &z.im + &acc.im * &z.re,
                };
            }
            acc.re += c * &scale;
        }
        acc
    }
    let der = p.derivative();
    (horner(p.coeffs(), z, prec), horner(der.coeffs(), z, prec))
}

/// Upper bound on `deg * |p(z) / p'(z)|`, or `None` when `p'(z) = 0`.
pub(crate) fn certified_radius(p: &IntPoly, z: &Fixed, prec: u64) -> Option<Dyadic> {
    let deg = p.degree().unwrap_or(0) as u64;
    let (a, b) = exact_eval(p, z, prec);
    if a.is_zero() {
        return Some(Dyadic::zero());
    }
    let bn = b.norm_sqr();
    if bn.is_zero() {
        return None;
    }
    let num = Dyadic::new(a.norm_sqr() * (deg * deg), 0);
    let ratio = num.div(&Dyadic::new(bn, 0), 64, Round::Up);
    Some(ratio.sqrt(64, Round::Up).round(64, Round::Up).mul_pow2(-(prec as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guesses_follow_newton_polygon() {
        // roots near 1e-3 and 1e3
        let p = IntPoly::from_i64(&[1000, -1_000_001, 1000]);
        let g = initial_guesses(&p, 64, 0.3);
        assert_eq!(g.len(), 2);
        let mags: Vec<f64> = g
            .iter()
            .map(|z| (z.norm_sqr().bits() as f64 / 2.0) - 64.0)
            .collect();
        assert!(mags.iter().any(|&m| m < -5.0) && mags.iter().any(|&m| m > 5.0), "{mags:?}");
    }

    #[test]
    fn iteration_converges_on_simple_quadratic() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let prec = 128;
        let out = iterate(&p, prec, initial_guesses(&p, prec, 0.7), 200);
        assert!(out.converged);
        for z in &out.centers {
            let r = certified_radius(&p, z, prec).unwrap();
            assert!(r < Dyadic::pow2(-100), "radius {r}");
        }
    }

    #[test]
    fn exact_evaluation_is_homogeneous() {
        // p = x^2 - 2 at z = 3/2 (prec 1): A = 3^2 - 2*4 = 1 over 2^2
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let z = Fixed {
            re: BigInt::from(3),
            im: BigInt::zero(),
        };
        let (a, b) = exact_eval(&p, &z, 1);
        assert_eq!(a.re, BigInt::from(1));
        assert_eq!(b.re, BigInt::from(6));
    }
}
