//! Dense polynomials over a prime field `F_p` with `p < 2^32`, and
//! distinct-degree factorization.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::algebra::IntPoly;

/// Ascending coefficients in `[0, p)`, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMod {
    c: Vec<u64>,
    p: u64,
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl PolyMod {
    fn new(mut c: Vec<u64>, p: u64) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyMod { c, p }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|a| {
                let r = ((a % &pb) + &pb) % &pb;
                r.to_u64().expect("reduced below p")
            })
            .collect();
        Self::new(c, p)
    }

    fn x(p: u64) -> Self {
        Self::new(vec![0, 1], p)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn monic(&self) -> Self {
        let l = inv(*self.c.last().expect("nonzero"), self.p);
        Self::new(self.c.iter().map(|a| a * l % self.p).collect(), self.p)
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::new(c, self.p)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(Vec::new(), self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        Self::new(c, self.p)
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let li = inv(d.c[dd], self.p);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::new(Vec::new(), self.p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = r[k + dd] * li % self.p;
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + self.p - coef * b % self.p) % self.p;
            }
        }
        r.truncate(dd);
        (Self::new(q, self.p), Self::new(r, self.p))
    }

    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| (k as u64 % self.p) * a % self.p)
            .collect();
        Self::new(c, self.p)
    }

    /// `self^e mod m`.
    fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::new(vec![1], self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Squarefree over `F_p`, assuming the degree is preserved mod `p`.
    pub fn is_squarefree(&self) -> bool {
        let g = self.gcd(&self.derivative());
        g.degree() == Some(0)
    }

    /// Degrees of the irreducible factors of a squarefree polynomial, sorted.
    pub fn distinct_degree_pattern(&self) -> Vec<usize> {
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = Self::x(self.p);
        let mut h = x.rem(&f);
        let mut i = 1;
        while let Some(df) = f.degree() {
            if df < 2 * i {
                if df > 0 {
                    out.push(df);
                }
                break;
            }
            h = h.pow_mod(self.p, &f);
            let g = f.gcd(&h.sub(&x));
            if let Some(dg) = g.degree().filter(|&d| d > 0) {
                out.extend(std::iter::repeat_n(i, dg / i));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }
}
