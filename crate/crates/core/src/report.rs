//! Sweeps over `(d, n)` grids and their CSV / JSON renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::algebra::{Integer, Rational};
use crate::families::{Family, FamilyError, RangePolicy};
use crate::roots::{measure, Dyadic, Round, RootOptions, SepReport};

pub const CSV_HEADER: &str = "family,d,n,degree,height,sep_lo,sep_hi,e_lo,e_hi,target,bound_satisfied,precision_bits";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("empty degree list")]
    NoDegrees,
    #[error("empty n grid")]
    EmptyGrid,
    #[error("cannot parse n grid '{0}': expected a comma list or start:factor:count")]
    BadGrid(String),
    #[error("cannot parse degree list '{0}': expected a comma list or lo..hi")]
    BadDegrees(String),
    #[error("family '{0}' has no degree parameter to sweep")]
    NotSweepable(String),
    #[error("worker count must be positive")]
    Workers,
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Explicit list or geometric progression `start:factor:count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGrid(Vec<Integer>);

impl NGrid {
    pub fn values(&self) -> &[Integer] {
        &self.0
    }
}

impl FromStr for NGrid {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConfigError::BadGrid(s.to_string());
        let s = s.trim();
        if s.is_empty() {
            return Err(ConfigError::EmptyGrid);
        }
        let values = if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let [start, factor, count] = parts[..] else {
                return Err(bad());
            };
            let start: Integer = start.trim().parse().map_err(|_| bad())?;
            let factor: Integer = factor.trim().parse().map_err(|_| bad())?;
            let count: usize = count.trim().parse().map_err(|_| bad())?;
            let mut v = Vec::with_capacity(count);
            let mut cur = start;
            for _ in 0..count {
                v.push(cur.clone());
                cur *= &factor;
            }
            v
        } else {
            s.split(',')
                .map(|t| t.trim().parse::<Integer>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?
        };
        if values.is_empty() {
            return Err(ConfigError::EmptyGrid);
        }
        Ok(NGrid(values))
    }
}

/// Parses `4,5,6` or `4..6` (inclusive).
pub fn parse_degrees(s: &str) -> Result<Vec<usize>, ConfigError> {
    let bad = || ConfigError::BadDegrees(s.to_string());
    let s = s.trim();
    if s.is_empty() {
        return Err(ConfigError::NoDegrees);
    }
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        let v: Vec<usize> = (lo..=hi).collect();
        return if v.is_empty() { Err(ConfigError::NoDegrees) } else { Ok(v) };
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Family tag: `P`, `Q`, `r`, `p`, `q`, `s`, `clusterP` or `clusterQ`.
    pub family: String,
    pub degrees: Vec<usize>,
    /// Cluster length parameter; required for cluster families.
    pub h: Option<usize>,
    pub pad: usize,
    pub grid: NGrid,
    pub options: RootOptions,
    pub policy: RangePolicy,
    pub workers: Option<usize>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<Vec<Family>, ConfigError> {
        if self.degrees.is_empty() {
            return Err(ConfigError::NoDegrees);
        }
        if self.grid.values().is_empty() {
            return Err(ConfigError::EmptyGrid);
        }
        if self.workers == Some(0) {
            return Err(ConfigError::Workers);
        }
        if matches!(self.family.as_str(), "L" | "K") {
            return Err(ConfigError::NotSweepable(self.family.clone()));
        }
        let families = self
            .degrees
            .iter()
            .map(|&d| Family::from_tag(&self.family, Some(d), self.h, self.pad))
            .collect::<Result<Vec<_>, _>>()?;
        for f in &families {
            f.build(self.policy)?;
        }
        Ok(families)
    }
}

/// Whether the measured separation respects the family's upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundStatus {
    Satisfied,
    Violated,
    NotApplicable,
    Failed(&'static str),
}

impl BoundStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundStatus::Satisfied => "yes",
            BoundStatus::Violated => "no",
            BoundStatus::NotApplicable => "na",
            BoundStatus::Failed(kind) => kind,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReportRow {
    pub family: String,
    pub d: usize,
    pub n: Integer,
    pub degree: usize,
    pub height: Integer,
    pub measurement: Option<SepReport>,
    pub target: Option<f64>,
    pub bound: BoundStatus,
}

/// Exponent targets and separation upper bounds per family.
pub fn target_exponent(family: &Family) -> Option<f64> {
    match *family {
        Family::ReducibleP(d) => Some((2 * d) as f64 / 3.0 - 1.0 / 3.0),
        Family::MonicQ(d) if d % 2 == 0 => Some((2 * d) as f64 / 3.0 - 1.0),
        Family::MonicQ(d) => Some((2 * d) as f64 / 3.0 - 5.0 / 3.0),
        Family::MonicR(d) => Some(d as f64 / 2.0 - 0.25),
        _ => None,
    }
}

/// Squared constant in the `r` bound `sep <= 2.2 n^-(D - 1/2)`.
const R_BOUND_SQ: (i64, i64) = (121, 25);

/// Exact check of `sep_hi` against the family's bound at `n`.
pub fn check_bound(family: &Family, n: &Integer, sep_hi: &Dyadic) -> BoundStatus {
    if !n.is_positive() {
        return BoundStatus::NotApplicable;
    }
    let s = sep_hi.to_rational();
    let pow = |e: usize| Rational::from_integer(num_traits::pow(n.clone(), e));
    let ok = match *family {
        Family::ReducibleP(d) => {
            let norm: Integer = n * n + 3 * n + 1;
            s * pow(1) * Rational::from_integer(num_traits::pow(norm, d - 1)) <= Rational::one()
        }
        Family::MonicQ(d) => {
            let e = if d % 2 == 0 { 2 * d - 3 } else { 2 * d - 5 };
            s * pow(e) <= Rational::from_integer(2.into())
        }
        Family::MonicR(d) => {
            &s * &s * pow(2 * d - 1) * Rational::from_integer(R_BOUND_SQ.1.into())
                <= Rational::from_integer(R_BOUND_SQ.0.into())
        }
        _ => return BoundStatus::NotApplicable,
    };
    if ok {
        BoundStatus::Satisfied
    } else {
        BoundStatus::Violated
    }
}

fn measure_row(family: &Family, n: &Integer, cfg: &SweepConfig) -> ReportRow {
    let poly = family.build(cfg.policy).expect("validated").instantiate(n);
    let degree = poly.degree().unwrap_or(0);
    let height = poly.coeffs().iter().map(|c| c.abs()).max().unwrap_or_else(Integer::zero);
    let target = target_exponent(family);
    let mut row = ReportRow {
        family: family.tag().to_string(),
        d: family.d(),
        n: n.clone(),
        degree,
        height,
        measurement: None,
        target,
        bound: BoundStatus::NotApplicable,
    };
    match measure(&poly, &cfg.options) {
        Ok(m) => {
            row.bound = check_bound(family, n, &m.sep.hi);
            row.measurement = Some(m);
        }
        Err(e) => {
            log::warn!("{family} at n={n}: {e}");
            row.bound = BoundStatus::Failed(e.kind());
        }
    }
    row
}

/// Measure every `(d, n)` pair; rows come back with `d` outer and `n` inner
/// regardless of scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<ReportRow>, ConfigError> {
    let families = cfg.validate()?;
    let jobs: Vec<(&Family, &Integer)> = families
        .iter()
        .flat_map(|f| cfg.grid.values().iter().map(move |n| (f, n)))
        .collect();
    let compute = || jobs.par_iter().map(|(f, n)| measure_row(f, n, cfg)).collect::<Vec<_>>();
    Ok(match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("thread pool")
            .install(compute),
        None => compute(),
    })
}

fn fmt_real(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// Exact hexadecimal rendering of a finite `f64`, e.g. `0x1.8p+1`.
pub fn f64_to_hex(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x == 0.0 {
        return format!("{sign}0x0p+0");
    }
    let bits = x.abs().to_bits();
    let exp = (bits >> 52) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (lead, e) = if exp == 0 { (0, -1022) } else { (1, exp - 1023) };
    let mut digits = format!("{frac:013x}");
    while digits.ends_with('0') {
        digits.pop();
    }
    if digits.is_empty() {
        format!("{sign}0x{lead}p{e:+}")
    } else {
        format!("{sign}0x{lead}.{digits}p{e:+}")
    }
}

pub fn render_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let target = r.target.map(fmt_real).unwrap_or_default();
        let (sep_lo, sep_hi, e_lo, e_hi, prec) = match &r.measurement {
            Some(m) => (
                fmt_real(m.sep.lo.to_f64(Round::Down)),
                fmt_real(m.sep.hi.to_f64(Round::Up)),
                fmt_real(m.e_lo),
                fmt_real(m.e_hi),
                m.precision.to_string(),
            ),
            None => Default::default(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{sep_lo},{sep_hi},{e_lo},{e_hi},{target},{},{prec}",
            r.family,
            r.d,
            r.n,
            r.degree,
            r.height,
            r.bound.as_str()
        );
    }
    out
}

pub fn render_json(rows: &[ReportRow]) -> String {
    let items: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| {
            let m = r.measurement.as_ref();
            json!({
                "family": r.family,
                "d": r.d,
                "n": r.n.to_string(),
                "degree": r.degree,
                "height": r.height.to_string(),
                "sep_lo": m.map(|m| m.sep.lo.to_hex_string()),
                "sep_hi": m.map(|m| m.sep.hi.to_hex_string()),
                "e_lo": m.map(|m| f64_to_hex(m.e_lo)),
                "e_hi": m.map(|m| f64_to_hex(m.e_hi)),
                "sep_lo_decimal": m.map(|m| fmt_real(m.sep.lo.to_f64(Round::Down))),
                "sep_hi_decimal": m.map(|m| fmt_real(m.sep.hi.to_f64(Round::Up))),
                "e_lo_decimal": m.map(|m| fmt_real(m.e_lo)),
                "e_hi_decimal": m.map(|m| fmt_real(m.e_hi)),
                "target": r.target.map(fmt_real),
                "bound_satisfied": r.bound.as_str(),
                "precision_bits": m.map(|m| m.precision.get()),
            })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&items).expect("json");
    s.push('\n');
    s
}

/// Smallest grid `n` per degree from which the bound holds at every later
/// grid point.
pub fn first_bound_n(rows: &[ReportRow]) -> Vec<(usize, Option<String>)> {
    let mut out: Vec<(usize, Option<String>)> = Vec::new();
    let mut i = 0;
    while i < rows.len() {
        let d = rows[i].d;
        let group: Vec<&ReportRow> = rows[i..].iter().take_while(|r| r.d == d).collect();
        i += group.len();
        let mut first = None;
        for r in group.iter().rev() {
            if r.bound == BoundStatus::Satisfied {
                first = Some(r.n.to_string());
            } else {
                break;
            }
        }
        out.push((d, first));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct RunMetadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub started_unix: u64,
    pub elapsed_ms: u128,
    pub workers: usize,
    pub precision_start: u32,
    pub precision_cap: u32,
    pub rows: usize,
    pub failed_rows: usize,
    /// Degree -> first grid `n` from which the bound holds throughout.
    pub bound_holds_from: Vec<(usize, Option<String>)>,
}
