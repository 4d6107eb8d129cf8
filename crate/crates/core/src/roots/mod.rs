//! Certified complex root isolation and separation measurements.
//!
//! Roots are approximated by Aberth–Ehrlich iteration at a fixed working
//! precision. Each approximation `z` is then certified exactly: since
//! `p'/p = sum 1/(z - a_i)`, some root lies within `deg * |p(z)/p'(z)|` of `z`.
//! The centers are dyadic, so that bound is computed from exact integer
//! evaluations and rounded upward. When all `deg` disks are pairwise
//! disjoint each one holds exactly one root; otherwise the precision is
//! doubled and the iteration resumes from the previous approximations.

mod aberth;
pub mod dyadic;
mod measure;

use std::fmt;

use num_traits::Zero;

pub use dyadic::{Dyadic, Interval, Round};
pub use measure::{
    cluster_offset, cluster_product, conjugate_pair_scaling, disc_crosscheck, e_value,
    exponent_interval, mahler_constant, mahler_sanity, measure, separation, xn_truncated, ClusterMeasurement,
    ConjugatePair, DiscCheck, MahlerCheck, SepReport,
};

use crate::algebra::IntPoly;
use aberth::Fixed;

/// Environment variable overriding the precision cap.
pub const PRECISION_CAP_ENV: &str = "SEPLAB_PRECISION_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrecisionBits(u32);

impl PrecisionBits {
    pub const MIN: u32 = 64;
    pub const DEFAULT_START: PrecisionBits = PrecisionBits(128);
    pub const DEFAULT_CAP: PrecisionBits = PrecisionBits(8192);

    pub fn new(bits: u32) -> Result<Self, RootError> {
        if bits < Self::MIN {
            Err(RootError::PrecisionTooLow(bits))
        } else {
            Ok(PrecisionBits(bits))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for PrecisionBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootOptions {
    pub start: PrecisionBits,
    pub cap: PrecisionBits,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            start: PrecisionBits::DEFAULT_START,
            cap: PrecisionBits::DEFAULT_CAP,
        }
    }
}

impl RootOptions {
    pub fn new(start: u32, cap: u32) -> Result<Self, RootError> {
        let (start, cap) = (PrecisionBits::new(start)?, PrecisionBits::new(cap)?);
        if start > cap {
            return Err(RootError::PrecisionRange { start: start.0, cap: cap.0 });
        }
        Ok(RootOptions { start, cap })
    }

    /// Defaults, with the cap taken from `SEPLAB_PRECISION_CAP` when set.
    pub fn from_env() -> Result<Self, RootError> {
        let mut opts = RootOptions::default();
        if let Ok(v) = std::env::var(PRECISION_CAP_ENV) {
            let bits: u32 = v
                .trim()
                .parse()
                .map_err(|_| RootError::BadPrecisionEnv(v.clone()))?;
            opts.cap = PrecisionBits::new(bits)?;
            if opts.start > opts.cap {
                opts.start = opts.cap;
            }
        }
        Ok(opts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial has degree < 1")]
    ConstantPolynomial,
    #[error("root disks still overlap at the precision cap of {0} bits")]
    PrecisionExhausted(u32),
    #[error("precision {0} is below the minimum of 64 bits")]
    PrecisionTooLow(u32),
    #[error("precision start {start} exceeds cap {cap}")]
    PrecisionRange { start: u32, cap: u32 },
    #[error("cannot parse {PRECISION_CAP_ENV}='{0}'")]
    BadPrecisionEnv(String),
    #[error("polynomial of degree {0} has fewer than two roots")]
    DegreeTooSmall(usize),
    #[error("height must be at least 2 for a separation exponent")]
    HeightTooSmall,
    #[error("cluster size {k} must satisfy 2 <= k <= {degree}")]
    ClusterSize { k: usize, degree: usize },
    #[error("the two roots nearest x_n are not a certified complex-conjugate pair")]
    NoComplexPairFound,
    #[error(transparent)]
    Family(#[from] crate::families::FamilyError),
}

impl RootError {
    /// Short tag used in report rows.
    pub fn kind(&self) -> &'static str {
        match self {
            RootError::NotSquarefree => "NotSquarefree",
            RootError::ConstantPolynomial => "ConstantPolynomial",
            RootError::PrecisionExhausted(_) => "PrecisionExhausted",
            RootError::PrecisionTooLow(_) | RootError::PrecisionRange { .. } => "BadPrecision",
            RootError::BadPrecisionEnv(_) => "BadPrecision",
            RootError::DegreeTooSmall(_) => "DegreeTooSmall",
            RootError::HeightTooSmall => "HeightTooSmall",
            RootError::ClusterSize { .. } => "ClusterSize",
            RootError::NoComplexPairFound => "NoComplexPairFound",
            RootError::Family(_) => "Family",
        }
    }
}

/// Closed disk `|z - center| <= radius` containing a root.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDisk {
    pub re: Dyadic,
    pub im: Dyadic,
    pub radius: Dyadic,
}

impl RootDisk {
    /// Exact squared distance between centers.
    pub fn center_dist_sqr(&self, other: &RootDisk) -> Dyadic {
        let dr = self.re.sub(&other.re);
        let di = self.im.sub(&other.im);
        dr.mul(&dr).add(&di.mul(&di))
    }

    pub fn disjoint_from(&self, other: &RootDisk) -> bool {
        let rsum = self.radius.add(&other.radius);
        self.center_dist_sqr(other) > rsum.mul(&rsum)
    }

    /// True when the disk does not meet the real axis.
    pub fn is_nonreal(&self) -> bool {
        self.im.abs() > self.radius
    }

    pub fn conjugate(&self) -> RootDisk {
        RootDisk {
            re: self.re.clone(),
            im: self.im.neg(),
            radius: self.radius.clone(),
        }
    }
}

/// Pairwise-disjoint certified disks, one per root.
#[derive(Clone, Debug)]
pub struct RootSet {
    disks: Vec<RootDisk>,
    precision: PrecisionBits,
}

impl RootSet {
    pub fn disks(&self) -> &[RootDisk] {
        &self.disks
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    /// Precision at which certification succeeded.
    pub fn precision(&self) -> PrecisionBits {
        self.precision
    }

    /// Always true for a constructed set; disjointness is checked on creation.
    pub fn is_disjoint(&self) -> bool {
        true
    }

    fn bits(&self) -> u64 {
        self.precision.0 as u64 + 32
    }

    /// Enclosure of `|a_i - a_j|`.
    pub fn distance(&self, i: usize, j: usize) -> Interval {
        let (a, b) = (&self.disks[i], &self.disks[j]);
        let d2 = a.center_dist_sqr(b);
        let bits = self.bits();
        let rsum = a.radius.add(&b.radius);
        let lo = d2.sqrt(bits, Round::Down).sub(&rsum).max(Dyadic::zero());
        let hi = d2.sqrt(bits, Round::Up).add(&rsum);
        Interval::new(lo, hi)
    }

    /// Enclosure of the minimal pairwise root distance, with the index pair
    /// of the closest centers.
    pub fn separation(&self) -> (Interval, (usize, usize)) {
        assert!(self.len() >= 2, "separation needs two roots");
        let mut closest: Option<(Dyadic, (usize, usize))> = None;
        let mut sep: Option<Interval> = None;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let c2 = self.disks[i].center_dist_sqr(&self.disks[j]);
                if closest.as_ref().is_none_or(|b| c2 < b.0) {
                    closest = Some((c2, (i, j)));
                }
                let d = self.distance(i, j);
                sep = Some(match sep {
                    Some(s) => Interval::new(s.lo.min(d.lo), s.hi.min(d.hi)),
                    None => d,
                });
            }
        }
        (sep.expect("at least one pair"), closest.expect("at least one pair").1)
    }
}

const ROTATION: f64 = 0.7;

/// Certify disks around `centers`; `None` if some radius is unbounded or two
/// disks meet.
fn certify(p: &IntPoly, centers: &[Fixed], prec: u64, zero_root: bool) -> Option<Vec<RootDisk>> {
    let mut disks = Vec::with_capacity(centers.len() + 1);
    for z in centers {
        let radius = aberth::certified_radius(p, z, prec)?;
        let (re, im) = aberth::to_dyadic_pair(z, prec);
        disks.push(RootDisk { re, im, radius });
    }
    if zero_root {
        disks.push(RootDisk {
            re: Dyadic::zero(),
            im: Dyadic::zero(),
            radius: Dyadic::zero(),
        });
    }
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            if !disks[i].disjoint_from(&disks[j]) {
                return None;
            }
        }
    }
    Some(disks)
}

/// Isolate every root of a squarefree integer polynomial in its own disk.
pub fn find_roots(p: &IntPoly, opts: &RootOptions) -> Result<RootSet, RootError> {
    let deg = p.degree().ok_or(RootError::ConstantPolynomial)?;
    if deg == 0 {
        return Err(RootError::ConstantPolynomial);
    }
    if !p.is_squarefree() {
        return Err(RootError::NotSquarefree);
    }
    // squarefree: at most a simple root at zero
    let zero_root = p.coeff(0).is_zero();
    let q = if zero_root {
        IntPoly::from_coeffs(p.coeffs()[1..].to_vec())
    } else {
        p.clone()
    };
    let qdeg = q.degree().unwrap_or(0);
    let max_iter = 200 + 10 * qdeg;

    let mut prec = opts.start.0 as u64;
    let cap = opts.cap.0 as u64;
    let mut centers: Option<(Vec<Fixed>, u64)> = None;
    let mut converged_failures = 0usize;
    loop {
        let start = match centers.take() {
            Some((c, from)) if qdeg > 0 => c.iter().map(|z| z.rescale(from, prec)).collect(),
            _ => aberth::initial_guesses(&q, prec, ROTATION + converged_failures as f64),
        };
        let out = if qdeg > 0 {
            aberth::iterate(&q, prec, start, max_iter)
        } else {
            aberth::Outcome {
                centers: Vec::new(),
                converged: true,
            }
        };
        if let Some(disks) = certify(&q, &out.centers, prec, zero_root) {
            debug_assert_eq!(disks.len(), deg);
            return Ok(RootSet {
                disks,
                precision: PrecisionBits(prec as u32),
            });
        }
        if prec >= cap {
            return Err(RootError::PrecisionExhausted(cap as u32));
        }
        log::debug!("root disks overlap at {prec} bits; escalating");
        if out.converged {
            converged_failures += 1;
        }
        // Two converged failures in a row suggest duplicated approximations.
        if converged_failures < 2 || converged_failures % 2 == 1 {
            centers = Some((out.centers, prec));
        }
        prec = (prec * 2).min(cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Integer;
    use crate::families::{gen_big_p, RangePolicy};

    fn opts() -> RootOptions {
        RootOptions::default()
    }

    #[test]
    fn sqrt_two() {
        let set = find_roots(&IntPoly::from_i64(&[-2, 0, 1]), &RootOptions::new(128, 8192).unwrap()).unwrap();
        assert_eq!(set.len(), 2);
        let mut reals: Vec<f64> = set.disks().iter().map(|d| d.re.to_f64(Round::Down)).collect();
        reals.sort_by(f64::total_cmp);
        assert!((reals[0] + 2f64.sqrt()).abs() < 1e-15);
        assert!((reals[1] - 2f64.sqrt()).abs() < 1e-15);
        for d in set.disks() {
            assert!(d.radius < Dyadic::pow2(-100));
        }
    }

    #[test]
    fn imaginary_unit() {
        let set = find_roots(&IntPoly::from_i64(&[1, 0, 1]), &opts()).unwrap();
        let mut ims: Vec<f64> = set.disks().iter().map(|d| d.im.to_f64(Round::Down)).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-15 && (ims[1] - 1.0).abs() < 1e-15);
        assert!(set.disks().iter().all(|d| d.is_nonreal()));
    }

    #[test]
    fn zero_root_and_linear() {
        let set = find_roots(&IntPoly::from_i64(&[0, -1, 1]), &opts()).unwrap();
        let (sep, _) = set.separation();
        assert!(sep.contains(&Dyadic::from_int(&Integer::from(1))));
        let lin = find_roots(&IntPoly::from_i64(&[-3, 2]), &opts()).unwrap();
        assert_eq!(lin.len(), 1);
        assert!((lin.disks()[0].re.to_f64(Round::Down) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        let sq = IntPoly::from_i64(&[1, -2, 1]);
        assert_eq!(find_roots(&sq, &opts()).unwrap_err(), RootError::NotSquarefree);
        assert_eq!(
            find_roots(&IntPoly::from_i64(&[5]), &opts()).unwrap_err(),
            RootError::ConstantPolynomial
        );
        assert!(RootOptions::new(32, 100).is_err());
        assert!(RootOptions::new(256, 128).is_err());
    }

    #[test]
    fn precision_cap_is_enforced() {
        // two roots 2^-200 apart cannot be separated at 64 bits
        let a = IntPoly::from_coeffs(vec![-(Integer::from(1) << 200u32), Integer::from(1) << 200u32]);
        let b = IntPoly::from_coeffs(vec![-(Integer::from(1) << 200u32) - 1, Integer::from(1) << 200u32]);
        let p = a * b;
        let tight = RootOptions::new(64, 64).unwrap();
        assert_eq!(find_roots(&p, &tight).unwrap_err(), RootError::PrecisionExhausted(64));
        let set = find_roots(&p, &opts()).unwrap();
        assert!(set.precision().get() > 200);
    }

    #[test]
    fn reducible_family_has_two_roots_near_xn() {
        let p = gen_big_p(4, RangePolicy::STRICT).unwrap().instantiate(&Integer::from(10));
        let set = find_roots(&p, &opts()).unwrap();
        assert_eq!(set.len(), 4);
        let xn = 12.0 / 131.0;
        let near = set
            .disks()
            .iter()
            .filter(|d| {
                let dr = d.re.to_f64(Round::Down) - xn;
                let di = d.im.to_f64(Round::Down);
                (dr * dr + di * di).sqrt() < 1e-4
            })
            .count();
        assert_eq!(near, 2);
    }
}
