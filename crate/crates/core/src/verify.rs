//! Exact verification of the closed-form identities satisfied by the families.
//!
//! Every verifier reads its polynomials through a [`FamilySource`], so a
//! deliberately corrupted source can be fed in to confirm that a check is
//! able to fail.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    discriminant_in_n, npoly_to_string, series_inverse_n, BiPoly, IntPoly, Integer, NPoly, RatFunc,
    Rational,
};
use crate::families::{fib, gen_k, gen_l, gen_p, gen_q, gen_r, gen_s, FamilyError};

/// Provider of the family polynomials under test.
pub trait FamilySource: Sync {
    fn p(&self, d: usize) -> BiPoly {
        gen_p(d)
    }
    fn q(&self, d: usize) -> Result<BiPoly, FamilyError> {
        gen_q(d)
    }
    fn s(&self, d: usize) -> Result<BiPoly, FamilyError> {
        gen_s(d)
    }
    fn r(&self, big_d: usize) -> Result<BiPoly, FamilyError> {
        gen_r(big_d)
    }
    fn l(&self) -> BiPoly {
        gen_l()
    }
    fn k(&self) -> BiPoly {
        gen_k()
    }
}

/// The constructions as defined.
#[derive(Debug, Clone, Copy, Default)]
pub struct Canonical;

impl FamilySource for Canonical {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    P,
    Q,
    S,
    R,
    L,
    K,
}

/// Canonical families with `1` added to the coefficient of `x^power` in one
/// member (`index` selects the member; ignored for `L` and `K`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Perturbed {
    pub target: Target,
    pub index: usize,
    pub power: usize,
}

impl Perturbed {
    fn apply(&self, target: Target, index: usize, p: BiPoly) -> BiPoly {
        let hit = target == self.target && (matches!(target, Target::L | Target::K) || index == self.index);
        if hit {
            p + BiPoly::monomial(NPoly::one(), self.power)
        } else {
            p
        }
    }
}

impl FamilySource for Perturbed {
    fn p(&self, d: usize) -> BiPoly {
        self.apply(Target::P, d, gen_p(d))
    }
    fn q(&self, d: usize) -> Result<BiPoly, FamilyError> {
        Ok(self.apply(Target::Q, d, gen_q(d)?))
    }
    fn s(&self, d: usize) -> Result<BiPoly, FamilyError> {
        Ok(self.apply(Target::S, d, gen_s(d)?))
    }
    fn r(&self, big_d: usize) -> Result<BiPoly, FamilyError> {
        Ok(self.apply(Target::R, big_d, gen_r(big_d)?))
    }
    fn l(&self) -> BiPoly {
        self.apply(Target::L, 0, gen_l())
    }
    fn k(&self) -> BiPoly {
        self.apply(Target::K, 0, gen_k())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("perturbation must look like 'p:3:1' (family:index:power), got '{0}'")]
pub struct PerturbationParseError(String);

impl FromStr for Perturbed {
    type Err = PerturbationParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PerturbationParseError(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let [fam, index, power] = parts[..] else {
            return Err(err());
        };
        let target = match fam.to_ascii_lowercase().as_str() {
            "p" => Target::P,
            "q" => Target::Q,
            "s" => Target::S,
            "r" => Target::R,
            "l" => Target::L,
            "k" => Target::K,
            _ => return Err(err()),
        };
        Ok(Perturbed {
            target,
            index: index.parse().map_err(|_| err())?,
            power: power.parse().map_err(|_| err())?,
        })
    }
}

/// Outcome of one identity check over a parameter range.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub id: &'static str,
    pub range: String,
    pub pass: bool,
    /// Number of individual instances checked.
    pub checked: usize,
    /// First failing instance with its nonzero residual.
    pub witness: Option<String>,
    pub detail: Option<String>,
}

impl IdentityReport {
    fn new(id: &'static str, range: String) -> Self {
        IdentityReport {
            id,
            range,
            pass: true,
            checked: 0,
            witness: None,
            detail: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.pass {
            self.pass = false;
            self.witness = Some(witness());
        }
    }

    fn fail(&mut self, witness: String) {
        self.record(false, || witness);
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{:<10} {:<16} {status} ({} checks)", self.id, self.range, self.checked)?;
        if let Some(d) = &self.detail {
            write!(f, " {d}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {w}")?;
        }
        Ok(())
    }
}

fn npoly(c: &[i64]) -> NPoly {
    NPoly::from_i64(c)
}

fn norm() -> NPoly {
    npoly(&[1, 3, 1])
}

fn bipoly_to_string(p: &BiPoly) -> String {
    if p.coeffs().is_empty() {
        return "0".into();
    }
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("({})*x^{k}", npoly_to_string(c)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The root of the linear member as a rational function of `n`.
fn xn_of(src: &dyn FamilySource) -> Result<RatFunc, String> {
    let l = src.l();
    if l.degree() != Some(1) {
        return Err(format!("L is not linear: {}", bipoly_to_string(&l)));
    }
    RatFunc::new(-l.coeff(0), l.coeff(1)).map_err(|e| e.to_string())
}

fn alt_sign(k: usize) -> Integer {
    if k.is_multiple_of(2) {
        Integer::one()
    } else {
        -Integer::one()
    }
}

/// `p_d(x_n) = (-1)^(d-1) / (n^2+3n+1)^d` for `d = 0..=d_max`.
pub fn verify_eq2(src: &dyn FamilySource, d_max: usize) -> IdentityReport {
    let mut rep = IdentityReport::new("eq2", format!("d=0..{d_max}"));
    let xn = match xn_of(src) {
        Ok(x) => x,
        Err(w) => {
            rep.fail(w);
            return rep;
        }
    };
    for d in 0..=d_max {
        let value = xn.eval_bipoly(&src.p(d));
        let expected = RatFunc::new(NPoly::constant(-alt_sign(d)), norm().pow(d as u32)).expect("nonzero");
        let residual = &value - &expected;
        rep.record(residual.is_zero(), || format!("d={d}: residual {residual}"));
    }
    rep
}

/// `q_d - q_{d-2} q_2` and `q_d - q_2^(d/2)` vanish modulo `K_n`.
pub fn verify_q_congruence(src: &dyn FamilySource, d_max: usize) -> IdentityReport {
    let mut rep = IdentityReport::new("qcong", format!("d=2..{d_max} even"));
    let k = src.k();
    let (q0, q2) = match (src.q(0), src.q(2)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            rep.fail(e.to_string());
            return rep;
        }
    };
    let mut prev = q0;
    let mut q2_pow = BiPoly::one();
    for d in (2..=d_max).step_by(2) {
        let qd = match src.q(d) {
            Ok(q) => q,
            Err(e) => {
                rep.fail(format!("d={d}: {e}"));
                break;
            }
        };
        q2_pow = q2_pow * &q2;
        for (label, diff) in [("q_d - q_(d-2) q_2", &qd - &prev * &q2), ("q_d - q_2^(d/2)", &qd - &q2_pow)] {
            match diff.div_rem_monic(&k) {
                Ok((_, rem)) => rep.record(rem.is_zero(), || {
                    format!("d={d}: {label} mod K = {}", bipoly_to_string(&rem))
                }),
                Err(e) => rep.fail(format!("d={d}: {e}")),
            }
        }
        prev = qd;
    }
    rep
}

/// Leading coefficients of `p_d`, `s_d`, `r_D` and the Fibonacci identity
/// that makes `s_d` monic.
pub fn verify_leading_coeffs(src: &dyn FamilySource, d_max: usize) -> IdentityReport {
    let mut rep = IdentityReport::new("leading", format!("d=1..{d_max}"));
    let fibn = |k: i64| fib(k).expect("index >= -1");
    for d in 1..=d_max {
        let p = src.p(d);
        let expected = NPoly::from_coeffs(vec![fibn(d as i64 - 2), fibn(d as i64)]);
        let ok = p.degree() == Some(d) && p.leading() == Some(&expected);
        rep.record(ok, || format!("p_{d}: leading {}", p.leading().map(npoly_to_string).unwrap_or_default()));
    }
    for d in 2..=d_max {
        let (a, b, c, e) = (fibn(d as i64 - 1), fibn(d as i64 - 2), fibn(d as i64), fibn(d as i64 - 3));
        let value = -alt_sign(d) * (a * b - c * e);
        rep.record(value.is_one(), || format!("Fibonacci identity at d={d}: {value}"));
        match src.s(d) {
            Ok(s) => {
                let ok = s.degree() == Some(d) && s.leading().is_some_and(|c| c.is_one());
                rep.record(ok, || format!("s_{d}: {}", bipoly_to_string(&s)));
            }
            Err(e) => rep.fail(format!("s_{d}: {e}")),
        }
    }
    for big_d in 4..=d_max {
        match src.r(big_d) {
            Ok(r) => {
                let ok = r.degree() == Some(big_d) && r.leading().is_some_and(|c| c.is_one());
                rep.record(ok, || {
                    format!("r_{big_d}: leading {}", r.leading().map(npoly_to_string).unwrap_or_default())
                });
            }
            Err(e) => rep.fail(format!("r_{big_d}: {e}")),
        }
    }
    rep
}

/// The coefficients of `x^0`, `x^1`, `x^2` in `p_d` and `q_d`.
pub fn verify_low_order(src: &dyn FamilySource, d_max: usize) -> IdentityReport {
    let mut rep = IdentityReport::new("loworder", format!("d=1..{d_max}"));
    let int = |v: i64| Integer::from(v);
    for d in 1..=d_max {
        let di = d as i64;
        let p = src.p(d);
        let expected = [
            NPoly::constant(int(-1)),
            NPoly::from_coeffs(vec![int(2 - di), int(1)]),
            NPoly::from_coeffs(vec![int(-(di - 1) * (di - 2) / 2), int(di - 1)]),
        ];
        for (k, e) in expected.iter().enumerate() {
            let got = p.coeff(k);
            rep.record(&got == e, || format!("p_{d}, x^{k}: {} != {}", npoly_to_string(&got), npoly_to_string(e)));
        }
    }
    for d in (2..=d_max).step_by(2) {
        let di = d as i64;
        let q = match src.q(d) {
            Ok(q) => q,
            Err(e) => {
                rep.fail(format!("q_{d}: {e}"));
                continue;
            }
        };
        let expected = [
            NPoly::constant(int(1)),
            NPoly::from_coeffs(vec![int(di / 2 - 2), int(-1)]),
            NPoly::from_coeffs(vec![int((di * di - 2 * di + 8) / 8), int(1 - di / 2)]),
        ];
        for (k, e) in expected.iter().enumerate() {
            let got = q.coeff(k);
            rep.record(&got == e, || format!("q_{d}, x^{k}: {} != {}", npoly_to_string(&got), npoly_to_string(e)));
        }
    }
    rep
}

/// For `D = 4..=big_d_max`: the constant term of `r_D`, its discriminant in
/// `n`, and the leading term of `r_D(x_n)` as `n -> inf`.
pub fn verify_r_structure(src: &dyn FamilySource, big_d_max: usize) -> IdentityReport {
    let mut rep = IdentityReport::new("rstruct", format!("D=4..{big_d_max}"));
    let xn = match xn_of(src) {
        Ok(x) => x,
        Err(w) => {
            rep.fail(w);
            return rep;
        }
    };
    let results: Vec<Vec<(bool, String)>> = (4..=big_d_max)
        .into_par_iter()
        .map(|big_d| check_r(src, &xn, big_d))
        .collect();
    for (ok, w) in results.into_iter().flatten() {
        rep.record(ok, || w);
    }
    rep
}

fn check_r(src: &dyn FamilySource, xn: &RatFunc, big_d: usize) -> Vec<(bool, String)> {
    let r = match src.r(big_d) {
        Ok(r) => r,
        Err(e) => return vec![(false, format!("D={big_d}: {e}"))],
    };
    let f = fib(((big_d - 1) / 2) as i64).expect("non-negative");
    let f2 = &f * &f;
    let mut out = Vec::with_capacity(3);

    let c0 = r.coeff(0);
    out.push((
        c0 == NPoly::constant(f2.clone()),
        format!("D={big_d}: r(0) = {}, expected {f2}", npoly_to_string(&c0)),
    ));

    let expected = IntPoly::monomial(Integer::from(-4) * &f2 * &f2, 2 * big_d - 1);
    out.push(match discriminant_in_n(&r) {
        Ok(disc) => (disc == expected, format!("D={big_d}: B^2 - 4AC = {disc}")),
        Err(e) => (false, format!("D={big_d}: {e}")),
    });

    let lead = 2 * big_d - 3;
    out.push(match series_inverse_n(&xn.eval_bipoly(&r), lead) {
        Ok(series) => {
            let vanishing = (0..lead).all(|k| series.coeff(k).is_zero());
            let ok = vanishing && series.coeff(lead) == Rational::from_integer(f2.clone());
            let first = (0..=lead).find(|&k| !series.coeff(k).is_zero()).unwrap_or(lead);
            (ok, format!("D={big_d}: r(x_n) starts {}/n^{first}", series.coeff(first)))
        }
        Err(e) => (false, format!("D={big_d}: {e}")),
    });
    out
}

/// `x_n = sum_{k>=1} -(-1)^k F_{2k-3} / n^k` through `1/n^order`.
pub fn verify_xn_expansion(src: &dyn FamilySource, order: usize) -> IdentityReport {
    let mut rep = IdentityReport::new("xn", format!("k=1..{order}"));
    let series = match xn_of(src).and_then(|x| series_inverse_n(&x, order).map_err(|e| e.to_string())) {
        Ok(s) => s,
        Err(w) => {
            rep.fail(w);
            return rep;
        }
    };
    rep.record(series.constant.is_zero(), || format!("constant term {}", series.constant));
    for k in 1..=order {
        let expected = alt_sign(k + 1) * fib(2 * k as i64 - 3).expect("index >= -1");
        let got = series.coeff(k);
        rep.record(got == Rational::from_integer(expected.clone()), || {
            format!("k={k}: {got} != {expected}")
        });
    }
    rep
}

/// Tolerance constant in `|y_n - T_5(n)| <= C / n^6`.
pub const YN_CONSTANT: f64 = 64.0;

const YN_TERMS: [i64; 5] = [1, -1, 2, -4, 8];
const YN_BITS: u64 = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("n = {0} is below 2")]
    SmallN(Integer),
    #[error("empty n grid")]
    EmptyGrid,
    #[error("expansion has at most {max} terms, got {got}")]
    Terms { got: usize, max: usize },
}

/// Rigorous enclosure of the small root of `a x^2 + b x + c` with `b < 0 < a, c`.
fn small_root(a: &Integer, b: &Integer, c: &Integer) -> Option<(Rational, Rational)> {
    let disc = b * b - Integer::from(4) * a * c;
    if !disc.is_positive() || !b.is_negative() || !c.is_positive() {
        return None;
    }
    let scale = Integer::one() << YN_BITS;
    let scaled = &disc * &scale * &scale;
    let s_lo = scaled.sqrt();
    let s_hi = if &s_lo * &s_lo == scaled { s_lo.clone() } else { &s_lo + 1 };
    let num = Integer::from(2) * c * &scale;
    let nb = -b * &scale;
    Some((Rational::new(num.clone(), &nb + s_hi), Rational::new(num, nb + s_lo)))
}

/// Checks the small root `y_n` of `K_n` against the first `terms` terms of
/// `1/n - 1/n^2 + 2/n^3 - 4/n^4 + 8/n^5`, requiring the scaled residual
/// `|y_n - T| n^6` to stay below [`YN_CONSTANT`] over the grid.
pub fn verify_yn_expansion(
    src: &dyn FamilySource,
    grid: &[Integer],
    terms: usize,
) -> Result<IdentityReport, VerifyError> {
    if grid.is_empty() {
        return Err(VerifyError::EmptyGrid);
    }
    if terms > YN_TERMS.len() {
        return Err(VerifyError::Terms {
            got: terms,
            max: YN_TERMS.len(),
        });
    }
    if let Some(n) = grid.iter().find(|n| **n < Integer::from(2)) {
        return Err(VerifyError::SmallN(n.clone()));
    }
    let mut rep = IdentityReport::new("yn", format!("{} grid points", grid.len()));
    let k = src.k();
    let mut c_hat = 0f64;
    for n in grid {
        let kn = k.instantiate(n);
        let Some((lo, hi)) = kn.degree().filter(|&d| d == 2).and_then(|_| small_root(&kn.coeff(2), &kn.coeff(1), &kn.coeff(0)))
        else {
            rep.fail(format!("n={n}: K_n has no simple small positive root"));
            continue;
        };
        let mut approx = Rational::zero();
        let mut npow = Integer::one();
        for t in &YN_TERMS[..terms] {
            npow *= n;
            approx += Rational::new(Integer::from(*t), npow.clone());
        }
        let n6 = Rational::from_integer(num_traits::pow(n.clone(), 6));
        let resid = (lo - &approx).abs().max((hi - &approx).abs()) * n6;
        let scaled = crate::roots::Dyadic::from_rational(&resid, 64, crate::roots::Round::Up)
            .to_f64(crate::roots::Round::Up);
        c_hat = c_hat.max(scaled);
        rep.record(scaled <= YN_CONSTANT, || format!("n={n}: |y_n - T| n^6 <= {scaled:e}"));
    }
    rep.detail = Some(format!("C_hat={c_hat:.6} C={YN_CONSTANT}"));
    Ok(rep)
}

/// Signs of `(-1)^(d-1) p_{d,n}` at `x_n` and at
/// `z_{d,n} = x_n + (-1)^d / (n (n^2+3n+1)^d)`, by exact rational evaluation.
pub fn bracket_signs(src: &dyn FamilySource, d: usize, n: &Integer) -> (Rational, Rational) {
    let norm: Integer = n * n + Integer::from(3) * n + 1;
    let xn = Rational::new(n + 2, norm.clone());
    let z = &xn + Rational::new(alt_sign(d), n * num_traits::pow(norm, d));
    let p = src.p(d).instantiate(n);
    let sign = Rational::from_integer(-alt_sign(d));
    (p.eval_rational(&xn) * &sign, p.eval_rational(&z) * sign)
}

/// `p_{d,n}` changes sign between `x_n` and `z_{d,n}`, with the sign pattern
/// `(-1)^(d-1) p(x_n) > 0 > (-1)^(d-1) p(z_{d,n})`.
pub fn verify_bracket(src: &dyn FamilySource, ds: &[usize], ns: &[Integer]) -> IdentityReport {
    let mut rep = IdentityReport::new("bracket", format!("{} d x {} n", ds.len(), ns.len()));
    for &d in ds {
        for n in ns {
            let (at_x, at_z) = bracket_signs(src, d, n);
            rep.record(at_x.is_positive() && at_z.is_negative(), || {
                format!("d={d}, n={n}: signed values {} and {}", at_x.numer().signum(), at_z.numer().signum())
            });
        }
    }
    rep
}

/// Individually selectable checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Eq2,
    QCong,
    Leading,
    LowOrder,
    RStruct,
    Xn,
    Yn,
    Bracket,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Eq2,
        Check::QCong,
        Check::Leading,
        Check::LowOrder,
        Check::RStruct,
        Check::Xn,
        Check::Yn,
        Check::Bracket,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Eq2 => "eq2",
            Check::QCong => "qcong",
            Check::Leading => "leading",
            Check::LowOrder => "loworder",
            Check::RStruct => "rstruct",
            Check::Xn => "xn",
            Check::Yn => "yn",
            Check::Bracket => "bracket",
        }
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check '{s}'"))
    }
}

/// Ranges for a suite run.
#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub d_max: usize,
    pub big_d_max: usize,
    pub xn_order: usize,
    pub yn_grid: Vec<Integer>,
    pub bracket_ds: Vec<usize>,
    pub bracket_ns: Vec<Integer>,
}

impl SuiteParams {
    /// Symbolic ranges scaled from one degree bound.
    pub fn with_d_max(d_max: usize) -> Self {
        SuiteParams {
            d_max,
            big_d_max: 2 * d_max + 1,
            xn_order: d_max,
            ..Self::default()
        }
    }
}

impl Default for SuiteParams {
    fn default() -> Self {
        let ints = |v: &[i64]| v.iter().map(|&x| Integer::from(x)).collect();
        SuiteParams {
            d_max: 12,
            big_d_max: 25,
            xn_order: 12,
            yn_grid: ints(&[10, 100, 1000, 10000]),
            bracket_ds: vec![3, 4, 5, 6],
            bracket_ns: ints(&[32, 100, 1000]),
        }
    }
}

pub fn run_check(src: &dyn FamilySource, check: Check, params: &SuiteParams) -> IdentityReport {
    match check {
        Check::Eq2 => verify_eq2(src, params.d_max),
        Check::QCong => verify_q_congruence(src, params.d_max),
        Check::Leading => verify_leading_coeffs(src, params.d_max),
        Check::LowOrder => verify_low_order(src, params.d_max),
        Check::RStruct => verify_r_structure(src, params.big_d_max),
        Check::Xn => verify_xn_expansion(src, params.xn_order),
        Check::Yn => verify_yn_expansion(src, &params.yn_grid, YN_TERMS.len()).unwrap_or_else(|e| {
            let mut rep = IdentityReport::new("yn", "invalid grid".into());
            rep.fail(e.to_string());
            rep
        }),
        Check::Bracket => verify_bracket(src, &params.bracket_ds, &params.bracket_ns),
    }
}

/// Run the selected checks concurrently; reports come back in input order.
pub fn run_suite(src: &dyn FamilySource, checks: &[Check], params: &SuiteParams) -> Vec<IdentityReport> {
    checks.par_iter().map(|&c| run_check(src, c, params)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    struct MutatedRecursion;

    impl FamilySource for MutatedRecursion {
        fn p(&self, d: usize) -> BiPoly {
            // x^2 p_{d-2} replaced by x^3 p_{d-2}
            let mut seq = vec![gen_p(0), gen_p(1)];
            let one_plus_x = BiPoly::from_coeffs(vec![npoly(&[1]), npoly(&[1])]);
            for k in 2..=d {
                let next = &one_plus_x * &seq[k - 1] + seq[k - 2].shift(3);
                seq.push(next);
            }
            seq.swap_remove(d)
        }
    }

    #[test]
    fn eq2_small_cases_and_mutation() {
        assert!(verify_eq2(&Canonical, 1).pass);
        assert!(verify_eq2(&Canonical, 0).pass);
        let bad = verify_eq2(&MutatedRecursion, 3);
        assert!(!bad.pass);
        assert!(bad.witness.unwrap().starts_with("d=2"));
    }

    #[test]
    fn q_congruence_quotient_is_x() {
        let diff = gen_q(4).unwrap() - gen_q(2).unwrap() * gen_q(2).unwrap();
        let (quot, rem) = diff.div_rem_monic(&gen_k()).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quot, BiPoly::x());
        assert!(verify_q_congruence(&Canonical, 8).pass);
        assert!(verify_q_congruence(&Canonical, 2).pass);
    }

    #[test]
    fn low_order_and_leading() {
        assert!(verify_low_order(&Canonical, 6).pass);
        assert!(verify_leading_coeffs(&Canonical, 6).pass);
    }

    #[test]
    fn r_structure_small() {
        let rep = verify_r_structure(&Canonical, 9);
        assert!(rep.pass, "{rep}");
        assert_eq!(rep.checked, 18);
    }

    #[test]
    fn xn_expansion() {
        assert!(verify_xn_expansion(&Canonical, 8).pass);
        let bad = Perturbed {
            target: Target::L,
            index: 0,
            power: 0,
        };
        assert!(!verify_xn_expansion(&bad, 8).pass);
    }

    #[test]
    fn yn_expansion_and_truncation_control() {
        let grid = [Integer::from(10), Integer::from(100)];
        let rep = verify_yn_expansion(&Canonical, &grid, 5).unwrap();
        assert!(rep.pass, "{rep}");
        let rep = verify_yn_expansion(&Canonical, &[Integer::from(100)], 1).unwrap();
        assert!(!rep.pass);
        assert!(verify_yn_expansion(&Canonical, &[Integer::from(1)], 5).is_err());
    }

    #[test]
    fn bracket_signs_change() {
        let ns = [Integer::from(32), Integer::from(100)];
        assert!(verify_bracket(&Canonical, &[3, 4, 5, 6], &ns).pass);
    }

    #[test]
    fn each_verifier_rejects_a_perturbed_family() {
        let cases = [
            (Check::Eq2, Target::P, 3, 1),
            (Check::QCong, Target::Q, 4, 0),
            (Check::Leading, Target::S, 3, 3),
            (Check::LowOrder, Target::P, 2, 1),
            (Check::RStruct, Target::R, 5, 0),
            (Check::Xn, Target::L, 0, 1),
            (Check::Yn, Target::K, 0, 1),
            (Check::Bracket, Target::P, 4, 0),
        ];
        let params = SuiteParams::with_d_max(6);
        for (check, target, index, power) in cases {
            let src = Perturbed { target, index, power };
            assert!(!run_check(&src, check, &params).pass, "{check:?} accepted {src:?}");
            assert!(run_check(&Canonical, check, &params).pass, "{check:?}");
        }
    }

    #[test]
    fn perturbation_parsing() {
        let p: Perturbed = "q:4:0".parse().unwrap();
        assert_eq!(p, Perturbed { target: Target::Q, index: 4, power: 0 });
        assert!("x:1".parse::<Perturbed>().is_err());
    }
}
