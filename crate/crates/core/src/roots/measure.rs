use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{find_roots, Dyadic, Interval, PrecisionBits, Round, RootError, RootOptions, RootSet};
use crate::algebra::{discriminant, Integer, IntPoly, Rational};
use crate::families::{fib, gen_r};

/// Separation and exponent of one polynomial.
#[derive(Clone, Debug)]
pub struct SepReport {
    pub degree: usize,
    pub height: Integer,
    pub sep: Interval,
    pub e_lo: f64,
    pub e_hi: f64,
    pub precision: PrecisionBits,
    /// Indices of the two closest root centers.
    pub closest: (usize, usize),
}

fn require_two_roots(p: &IntPoly) -> Result<usize, RootError> {
    match p.degree() {
        None | Some(0) => Err(RootError::ConstantPolynomial),
        Some(1) => Err(RootError::DegreeTooSmall(1)),
        Some(d) => Ok(d),
    }
}

fn height_of(p: &IntPoly) -> Integer {
    p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default()
}

pub fn separation(p: &IntPoly, opts: &RootOptions) -> Result<Interval, RootError> {
    require_two_roots(p)?;
    Ok(tight_roots(p, opts)?.separation().0)
}

fn widen(e: f64, dir: Round) -> f64 {
    let slack = e.abs() * 1e-12 + 1e-15;
    match dir {
        Round::Down => e - slack,
        Round::Up => e + slack,
    }
}

/// Enclosure of `-ln(sep) / ln(H)`; the upper end is infinite when the
/// separation interval reaches zero.
pub fn exponent_interval(sep: &Interval, height: &Integer) -> Result<(f64, f64), RootError> {
    if height <= &Integer::one() {
        return Err(RootError::HeightTooSmall);
    }
    let log_h = super::dyadic::log2_bigint(height);
    let e_lo = widen(-sep.hi.log2_approx() / log_h, Round::Down);
    let e_hi = if sep.lo.is_positive() {
        widen(-sep.lo.log2_approx() / log_h, Round::Up)
    } else {
        f64::INFINITY
    };
    Ok((e_lo, e_hi))
}

pub fn e_value(p: &IntPoly, opts: &RootOptions) -> Result<(f64, f64), RootError> {
    let r = measure(p, opts)?;
    Ok((r.e_lo, r.e_hi))
}

pub fn measure(p: &IntPoly, opts: &RootOptions) -> Result<SepReport, RootError> {
    let degree = require_two_roots(p)?;
    let height = height_of(p);
    if height <= Integer::one() {
        return Err(RootError::HeightTooSmall);
    }
    let set = tight_roots(p, opts)?;
    report_from(&set, degree, height)
}

/// Certification only needs disjoint disks; keep doubling until the
/// separation is also known to a fixed relative width.
fn tight_roots(p: &IntPoly, opts: &RootOptions) -> Result<RootSet, RootError> {
    let mut set = find_roots(p, opts)?;
    while !tight(&set.separation().0) && set.precision() < opts.cap {
        let start = (set.precision().get() * 2).min(opts.cap.get());
        set = find_roots(p, &RootOptions::new(start, opts.cap.get())?)?;
    }
    Ok(set)
}

const RELATIVE_WIDTH_BITS: i64 = 40;

fn tight(sep: &Interval) -> bool {
    sep.width() <= sep.lo.mul_pow2(-RELATIVE_WIDTH_BITS)
}

fn report_from(set: &RootSet, degree: usize, height: Integer) -> Result<SepReport, RootError> {
    let (sep, closest) = set.separation();
    let (e_lo, e_hi) = exponent_interval(&sep, &height)?;
    Ok(SepReport {
        degree,
        height,
        sep,
        e_lo,
        e_hi,
        precision: set.precision(),
        closest,
    })
}

/// Pairwise-distance product over a selected set of roots.
#[derive(Clone, Debug)]
pub struct ClusterMeasurement {
    pub k: usize,
    pub indices: Vec<usize>,
    pub product: Interval,
    pub precision: PrecisionBits,
}

impl ClusterMeasurement {
    /// Enclosure of `log_H(1 / product)`.
    pub fn exponent(&self, height: &Integer) -> Result<(f64, f64), RootError> {
        exponent_interval(&self.product, height)
    }
}

const EXHAUSTIVE_LIMIT: u128 = 5_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// `log2` of center distances; good enough to rank candidate clusters.
#[allow(clippy::needless_range_loop)]
fn log_distances(set: &RootSet) -> Vec<Vec<f64>> {
    let d = set.len();
    let mut m = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in i + 1..d {
            let c2 = set.disks()[i].center_dist_sqr(&set.disks()[j]);
            let v = if c2.is_zero() { f64::NEG_INFINITY } else { c2.log2_approx() / 2.0 };
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

fn cluster_cost(m: &[Vec<f64>], idx: &[usize]) -> f64 {
    let mut s = 0.0;
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            s += m[i][j];
        }
    }
    s
}

fn exhaustive(m: &[Vec<f64>], k: usize) -> Vec<usize> {
    let d = m.len();
    let mut idx: Vec<usize> = (0..k).collect();
    let mut best = (cluster_cost(m, &idx), idx.clone());
    loop {
        // next combination in lexicographic order
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == d - k + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return best.1;
        }
        idx[pos - 1] += 1;
        for t in pos..k {
            idx[t] = idx[t - 1] + 1;
        }
        let c = cluster_cost(m, &idx);
        if c < best.0 {
            best = (c, idx.clone());
        }
    }
}

fn greedy(m: &[Vec<f64>], k: usize) -> Vec<usize> {
    let d = m.len();
    let (mut bi, mut bj) = (0, 1);
    for i in 0..d {
        for j in i + 1..d {
            if m[i][j] < m[bi][bj] {
                (bi, bj) = (i, j);
            }
        }
    }
    let mut chosen = vec![bi, bj];
    while chosen.len() < k {
        let next = (0..d)
            .filter(|c| !chosen.contains(c))
            .min_by(|&a, &b| {
                let ca: f64 = chosen.iter().map(|&i| m[i][a]).sum();
                let cb: f64 = chosen.iter().map(|&i| m[i][b]).sum();
                ca.total_cmp(&cb)
            })
            .expect("k <= degree");
        chosen.push(next);
    }
    // single-swap refinement
    let mut cost = cluster_cost(m, &chosen);
    loop {
        let mut improved = false;
        for slot in 0..k {
            for cand in 0..d {
                if chosen.contains(&cand) {
                    continue;
                }
                let old = chosen[slot];
                chosen[slot] = cand;
                let c = cluster_cost(m, &chosen);
                if c < cost {
                    cost = c;
                    improved = true;
                } else {
                    chosen[slot] = old;
                }
            }
        }
        if !improved {
            chosen.sort_unstable();
            return chosen;
        }
    }
}

/// Select the `k` roots with the smallest pairwise-distance product and
/// enclose that product.
pub fn cluster_product(p: &IntPoly, k: usize, opts: &RootOptions) -> Result<ClusterMeasurement, RootError> {
    let degree = p.degree().unwrap_or(0);
    if k < 2 || k > degree {
        return Err(RootError::ClusterSize { k, degree });
    }
    let set = tight_roots(p, opts)?;
    Ok(cluster_in(&set, k))
}

fn cluster_in(set: &RootSet, k: usize) -> ClusterMeasurement {
    let precision = set.precision();
    if k == 2 {
        let (sep, (i, j)) = set.separation();
        return ClusterMeasurement {
            k,
            indices: vec![i, j],
            product: sep,
            precision,
        };
    }
    let m = log_distances(set);
    let indices = if binomial(set.len(), k) <= EXHAUSTIVE_LIMIT {
        exhaustive(&m, k)
    } else {
        log::debug!("cluster search over C({}, {k}) subsets uses greedy growth", set.len());
        greedy(&m, k)
    };
    let bits = set.bits() + 64;
    let mut product = Interval::point(Dyadic::from_int(&BigInt::one()));
    for (a, &i) in indices.iter().enumerate() {
        for &j in &indices[a + 1..] {
            product = product.mul_nonneg(&set.distance(i, j), bits);
        }
    }
    ClusterMeasurement {
        k,
        indices,
        product,
        precision,
    }
}

/// Constant `c` in the predicted cluster exponent `k/(k+1) * deg - c` for
/// the clustered constructions with `k = h + 3`; `monic` selects the
/// variant built from the `Q` family.
pub fn cluster_offset(h: usize, monic: bool) -> f64 {
    let m = (h + 2) as f64;
    let scale = (m + 1.0) / (m + 2.0);
    let inner = if monic {
        (m - 2.0) * (m - 1.0) + 1.5 * m - 2.0 * m * (m - 1.0) / 3.0
    } else {
        (m - 2.0) * (m - 1.0) / 2.0 + m / 2.0 - m * (m - 1.0) / 3.0
    };
    scale * inner
}

/// Shape of the complex pair of roots of `r_D` nearest `x_n`.
#[derive(Clone, Debug)]
pub struct ConjugatePair {
    /// `|Im| * n^((2D-1)/2)`.
    pub gamma_hat: f64,
    pub gamma_lo: f64,
    pub gamma_hi: f64,
    /// `(Re - T) * n^D` with `T` the expansion of `x_n` through `n^-(D-1)`.
    pub beta_hat: f64,
    /// `(Re - x_n) * n^D`.
    pub beta_hat_exact: f64,
    pub precision: PrecisionBits,
}

/// `sum_{k=1}^{terms} -(-1)^k F_{2k-3} / n^k`.
pub fn xn_truncated(n: &Integer, terms: usize) -> Result<Rational, RootError> {
    let mut acc = Rational::zero();
    let mut npow = Integer::one();
    for k in 1..=terms {
        npow *= n;
        let f = fib(2 * k as i64 - 3)?;
        let term = Rational::new(f, npow.clone());
        if k % 2 == 0 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(acc)
}

fn xn_value(n: &Integer) -> Rational {
    Rational::new(n + 2, n * n + 3 * n + 1)
}

pub fn conjugate_pair_scaling(big_d: usize, n: &Integer, opts: &RootOptions) -> Result<ConjugatePair, RootError> {
    let p = gen_r(big_d)?.instantiate(n);
    let set = find_roots(&p, opts)?;
    let bits = set.bits() + 64;
    let xn = xn_value(n);
    let xd = Dyadic::from_rational(&xn, bits, Round::Down);
    let mut order: Vec<(Dyadic, usize)> = set
        .disks()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let dr = d.re.sub(&xd);
            (dr.mul(&dr).add(&d.im.mul(&d.im)), i)
        })
        .collect();
    order.sort();
    let (a, b) = (order[0].1, order[1].1);
    let (da, db) = (&set.disks()[a], &set.disks()[b]);
    if !da.is_nonreal() || !db.is_nonreal() {
        return Err(RootError::NoComplexPairFound);
    }
    let conj = da.conjugate();
    let meets: Vec<usize> = (0..set.len()).filter(|&j| !conj.disjoint_from(&set.disks()[j])).collect();
    if meets != [b] {
        return Err(RootError::NoComplexPairFound);
    }

    let n_d = Rational::from_integer(num_traits::pow(n.clone(), big_d));
    let nf = Dyadic::from_int(n).to_f64(Round::Down);
    let im = da.im.abs();
    let scaled = |v: &Dyadic, dir: Round| {
        (Dyadic::from_rational(&(v.to_rational() * &n_d), 64, dir).to_f64(dir)) / nf.sqrt()
    };
    let im_lo = im.sub(&da.radius).max(Dyadic::zero());
    let im_hi = im.add(&da.radius);
    let re = da.re.to_rational();
    let t = xn_truncated(n, big_d - 1)?;
    let to_f = |q: Rational| Dyadic::from_rational(&q, 64, Round::Down).to_f64(Round::Down);
    Ok(ConjugatePair {
        gamma_hat: scaled(&im, Round::Down),
        gamma_lo: widen(scaled(&im_lo, Round::Down), Round::Down),
        gamma_hi: widen(scaled(&im_hi, Round::Up), Round::Up),
        beta_hat: to_f((&re - t) * &n_d),
        beta_hat_exact: to_f((&re - xn) * &n_d),
        precision: set.precision(),
    })
}

/// Exact discriminant against the product of certified root distances.
#[derive(Clone, Debug)]
pub struct DiscCheck {
    pub exact: Integer,
    pub numeric: Interval,
    pub pass: bool,
}

pub fn disc_crosscheck(p: &IntPoly, opts: &RootOptions) -> Result<DiscCheck, RootError> {
    let d = require_two_roots(p)?;
    let exact = discriminant(p).map_err(|_| RootError::ConstantPolynomial)?;
    let set = find_roots(p, opts)?;
    let bits = set.bits() + 64;
    let lc = p.leading().expect("nonzero").abs();
    let mut acc = Interval::point(Dyadic::from_int(&num_traits::pow(lc, 2 * d - 2)));
    for i in 0..d {
        for j in i + 1..d {
            let dist = set.distance(i, j);
            acc = acc.mul_nonneg(&dist.mul_nonneg(&dist, bits), bits);
        }
    }
    let pass = acc.contains(&Dyadic::from_int(&exact.abs()));
    Ok(DiscCheck {
        exact,
        numeric: acc,
        pass,
    })
}

/// Additive slack `c` in `e <= (d-1) + c / ln H`, from Mahler's bound
/// `sep > sqrt(3) d^(-(d+2)/2) |disc|^(1/2) M^(-(d-1))` with `|disc| >= 1`
/// and `M <= sqrt(d+1) H`.
pub fn mahler_constant(d: usize) -> f64 {
    let d = d as f64;
    (d + 2.0) / 2.0 * d.ln() + (d - 1.0) / 2.0 * (d + 1.0).ln() - 0.5 * 3f64.ln()
}

#[derive(Clone, Debug)]
pub struct MahlerCheck {
    pub e_hi: f64,
    pub bound: f64,
    pub pass: bool,
}

pub fn mahler_sanity(p: &IntPoly, opts: &RootOptions) -> Result<MahlerCheck, RootError> {
    let r = measure(p, opts)?;
    let ln_h = super::dyadic::log2_bigint(&r.height) * std::f64::consts::LN_2;
    let bound = (r.degree as f64 - 1.0) + mahler_constant(r.degree) / ln_h;
    Ok(MahlerCheck {
        e_hi: r.e_hi,
        bound,
        pass: r.e_hi <= bound,
    })
}
