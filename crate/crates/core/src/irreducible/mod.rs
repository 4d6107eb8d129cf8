//! Irreducibility certificates over the integers.
//!
//! A polynomial is certified irreducible when, over several primes, the
//! degrees of its factors mod `p` leave no room for a proper factor over
//! the integers. Rational roots are found exactly and give reducibility
//! witnesses.

mod intfactor;
mod modp;

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{discriminant_in_n, IntPoly, Integer, Rational};
use crate::families::{fib, gen_r, FamilyError};

pub use intfactor::{divisors, factorize, is_probable_prime};
pub use modp::PolyMod;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IrredError {
    #[error("polynomial of degree {0:?} is too small to certify")]
    DegreeTooSmall(Option<usize>),
    #[error("polynomial content is {0}, expected a primitive polynomial")]
    NotPrimitive(Integer),
    #[error("prime {0} divides the leading coefficient or leaves a square factor")]
    BadPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// All rational roots of `p`, ascending. The zero polynomial has none.
pub fn rational_root_test(p: &IntPoly) -> Vec<Rational> {
    let Some(first) = p.coeffs().iter().position(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let mut roots = Vec::new();
    if first > 0 {
        roots.push(Rational::zero());
    }
    let q = IntPoly::from_coeffs(p.coeffs()[first..].to_vec());
    if q.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let c0 = q.coeff(0).magnitude().clone();
    let lc = q.leading().expect("nonzero").magnitude().clone();
    let dens = if lc.is_one() { vec![BigUint::one()] } else { divisors(&lc) };
    let nums = divisors(&c0);
    for den in &dens {
        let den_i = BigInt::from_biguint(Sign::Plus, den.clone());
        for num in nums.iter().filter(|a| a.gcd(den).is_one()) {
            let num_i = BigInt::from_biguint(Sign::Plus, num.clone());
            for cand in [num_i.clone(), -num_i] {
                if q.eval_homogeneous(&cand, &den_i).is_zero() {
                    roots.push(Rational::new(cand, den_i.clone()));
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Degrees of the irreducible factors of `p` mod `prime`.
pub fn degree_pattern_mod_p(p: &IntPoly, prime: u64) -> Result<Vec<usize>, IrredError> {
    if prime > u32::MAX as u64 || !is_probable_prime(&BigUint::from(prime)) {
        return Err(IrredError::NotPrime(prime));
    }
    let reduced = PolyMod::from_int(p, prime);
    if reduced.degree() != p.degree() || !reduced.is_squarefree() {
        return Err(IrredError::BadPrime(prime));
    }
    Ok(reduced.distinct_degree_pattern())
}

/// Proper factor degrees `1..d-1` compatible with a factor-degree pattern.
fn subset_sums(pattern: &[usize], d: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; d + 1];
    reach[0] = true;
    for &k in pattern {
        for s in (k..=d).rev() {
            if reach[s - k] {
                reach[s] = true;
            }
        }
    }
    (1..d).filter(|&s| reach[s]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePattern {
    pub prime: u64,
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    Irreducible,
    /// `witness` lists the ascending coefficients of an exact factor.
    Reducible { witness: Vec<String> },
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Irreducible => "Irreducible",
            Verdict::Reducible { .. } => "Reducible",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IrredCertificate {
    /// FNV-1a hash of the coefficient list, for matching certificates to inputs.
    pub poly_hash: String,
    pub degree: usize,
    pub rational_roots: Vec<String>,
    pub patterns: Vec<PrimePattern>,
    pub skipped_primes: Vec<u64>,
    /// Proper factor degrees not yet ruled out.
    pub feasible_degrees: Vec<usize>,
    pub verdict: Verdict,
}

/// Stable 64-bit FNV-1a digest of the decimal coefficients.
pub fn poly_hash(p: &IntPoly) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let text = p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

fn linear_factor(root: &Rational) -> IntPoly {
    IntPoly::from_coeffs(vec![-root.numer().clone(), root.denom().clone()])
}

/// Certify irreducibility using the rational-root sieve and degree patterns
/// mod the `prime_budget` smallest good primes.
///
/// `Irreducible` is only returned once at least one prime has been examined,
/// so a zero budget yields `Reducible` or `Inconclusive`.
pub fn certify_irreducible(p: &IntPoly, prime_budget: usize) -> Result<IrredCertificate, IrredError> {
    let d = match p.degree() {
        Some(d) if d >= 2 => d,
        other => return Err(IrredError::DegreeTooSmall(other)),
    };
    let content = p.content();
    if !content.is_one() {
        return Err(IrredError::NotPrimitive(content));
    }
    let roots = rational_root_test(p);
    let mut cert = IrredCertificate {
        poly_hash: poly_hash(p),
        degree: d,
        rational_roots: roots.iter().map(|r| r.to_string()).collect(),
        patterns: Vec::new(),
        skipped_primes: Vec::new(),
        feasible_degrees: (1..d).collect(),
        verdict: Verdict::Inconclusive,
    };
    if let Some(root) = roots.first() {
        let witness = linear_factor(root);
        p.div_exact(&witness).expect("a rational root gives an exact linear factor");
        cert.verdict = Verdict::Reducible {
            witness: witness.coeffs().iter().map(|c| c.to_string()).collect(),
        };
        cert.feasible_degrees = {
            let mut v = vec![1, d - 1];
            v.dedup();
            v
        };
        return Ok(cert);
    }
    // No linear factor, hence no cofactor of degree d - 1.
    let mut feasible: BTreeSet<usize> = (2..d - 1).collect();
    let mut prime = 1u64;
    while cert.patterns.len() < prime_budget {
        prime = next_prime(prime);
        match degree_pattern_mod_p(p, prime) {
            Ok(degrees) => {
                let sums = subset_sums(&degrees, d);
                feasible = feasible.intersection(&sums).copied().collect();
                cert.patterns.push(PrimePattern { prime, degrees });
                if feasible.is_empty() {
                    break;
                }
            }
            Err(IrredError::BadPrime(_)) => cert.skipped_primes.push(prime),
            Err(e) => return Err(e),
        }
    }
    cert.feasible_degrees = feasible.iter().copied().collect();
    if feasible.is_empty() && !cert.patterns.is_empty() {
        cert.verdict = Verdict::Irreducible;
    }
    Ok(cert)
}

fn next_prime(after: u64) -> u64 {
    (after + 1..)
        .find(|&n| is_probable_prime(&BigUint::from(n)))
        .expect("primes are unbounded")
}

/// Integer roots an `r_D` member could have: `-alpha^2` with `alpha`
/// dividing `F_{floor((D-1)/2)}`.
#[derive(Debug, Clone, Serialize)]
pub struct RootCandidate {
    pub alpha: String,
    /// Value of `B^2 - 4AC` at `x = -alpha^2`, where `r_D = A n^2 + B n + C`.
    pub n_discriminant: String,
    /// At least one of `A`, `B`, `C` is nonzero at `x = -alpha^2`.
    pub nondegenerate: bool,
    /// Rational `n` for which `-alpha^2` is a root.
    pub exceptional_n: Vec<String>,
}

pub fn r_integer_root_candidates(big_d: usize) -> Result<Vec<RootCandidate>, IrredError> {
    let r = gen_r(big_d)?;
    let f = fib(((big_d - 1) / 2) as i64)?;
    let disc = discriminant_in_n(&r).expect("r has degree 2 in n");
    let (a, b, c) = (r.n_coefficient(2), r.n_coefficient(1), r.n_coefficient(0));
    let mut out = Vec::new();
    for alpha in divisors(f.magnitude()) {
        let alpha = BigInt::from_biguint(Sign::Plus, alpha);
        let x = -(&alpha * &alpha);
        let (av, bv, cv) = (a.eval(&x), b.eval(&x), c.eval(&x));
        let dv = disc.eval(&x);
        let exceptional_n = solve_quadratic(&av, &bv, &cv)
            .iter()
            .map(|n| n.to_string())
            .collect();
        out.push(RootCandidate {
            alpha: alpha.to_string(),
            n_discriminant: dv.to_string(),
            nondegenerate: !(av.is_zero() && bv.is_zero() && cv.is_zero()),
            exceptional_n,
        });
    }
    Ok(out)
}

/// Rational solutions of `a n^2 + b n + c = 0` (not all coefficients zero).
fn solve_quadratic(a: &Integer, b: &Integer, c: &Integer) -> Vec<Rational> {
    if a.is_zero() {
        return if b.is_zero() {
            Vec::new()
        } else {
            vec![Rational::new(-c, b.clone())]
        };
    }
    let disc = b * b - Integer::from(4) * a * c;
    if disc.is_negative() {
        return Vec::new();
    }
    let s = disc.sqrt();
    if &s * &s != disc {
        return Vec::new();
    }
    let two_a: Integer = a * 2;
    let mut roots = vec![Rational::new(-b - &s, two_a.clone()), Rational::new(-b + &s, two_a)];
    roots.sort();
    roots.dedup();
    roots
}

/// `true` when the candidate cannot occur for integer `n >= n_min`.
pub fn excluded_from(candidate: &RootCandidate, n_min: i64) -> bool {
    candidate.exceptional_n.iter().all(|s| {
        let q: Rational = s.parse().expect("rendered rational");
        !q.is_integer() || q.to_integer().to_i64().is_none_or(|v| v < n_min)
    })
}
