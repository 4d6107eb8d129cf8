//! Parametric polynomial families with abnormally close roots.
//!
//! Every constructor works symbolically over `Z[n]` and returns a [`BiPoly`];
//! concrete members are obtained with [`BiPoly::instantiate`].
//!
//! | tag        | polynomial                                            |
//! |------------|-------------------------------------------------------|
//! | `p`        | `p_d`: `p_0 = -1`, `p_1 = (n+1)x - 1`, `p_d = (1+x)p_{d-1} + x^2 p_{d-2}` |
//! | `L`        | `(n^2+3n+1)x - (n+2)`                                 |
//! | `P`        | `L * p_{d-1}`                                         |
//! | `K`        | `x^2 - (n^2+3n+1)x + (n+2)`                           |
//! | `q`        | `q_0 = 1`, `q_2 = x^2-(n+1)x+1`, `q_d = (2x^2+x+1)q_{d-2} - x^4 q_{d-4}` |
//! | `Q`        | `K * q_{d-2}` (even d), `x * K * q_{d-3}` (odd d)     |
//! | `s`        | `(-1)^(d-1) (F_{d-1} p_d - F_d x p_{d-1})`            |
//! | `r`        | `x s_d^2 + F_d^2 p_d^2` (degree 2d+1), `s_d^2 + F_{d-1}^2 x p_{d-1}^2` (degree 2d) |
//! | `clusterP` | `P_delta * p_delta * ... * p_{delta+h}`               |
//! | `clusterQ` | `Q_delta * q_delta * q_{delta+2} * ... * q_{delta+2h}` |

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::algebra::{BiPoly, Integer, NPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("Fibonacci index {0} is below -1")]
    FibIndex(i64),
    #[error("{family}: parameter {value} is outside the defined range (minimum {min})")]
    Undefined {
        family: &'static str,
        value: usize,
        min: usize,
    },
    #[error("{family}: degree must be even, got {value}")]
    OddDegree { family: &'static str, value: usize },
    #[error("{family}: parameter {value} is below the threshold {min} of the construction; pass the exploration override to allow it")]
    BelowThreshold {
        family: &'static str,
        value: usize,
        min: usize,
    },
    #[error("unknown family tag '{0}'")]
    UnknownTag(String),
    #[error("family '{0}' needs {1}")]
    MissingParameter(&'static str, &'static str),
}

/// Range policy for parameters that are well defined but below the
/// thresholds where the close-root behaviour is established.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RangePolicy {
    pub allow_below_threshold: bool,
}

impl RangePolicy {
    pub const STRICT: RangePolicy = RangePolicy {
        allow_below_threshold: false,
    };
    pub const EXPLORE: RangePolicy = RangePolicy {
        allow_below_threshold: true,
    };

    fn check(self, family: &'static str, value: usize, min: usize) -> Result<(), FamilyError> {
        if value >= min {
            return Ok(());
        }
        if self.allow_below_threshold {
            log::warn!("{family}: parameter {value} below threshold {min}");
            Ok(())
        } else {
            Err(FamilyError::BelowThreshold { family, value, min })
        }
    }
}

fn require(family: &'static str, value: usize, min: usize) -> Result<(), FamilyError> {
    if value < min {
        Err(FamilyError::Undefined { family, value, min })
    } else {
        Ok(())
    }
}

const FIB_TABLE_LEN: usize = 512;

/// `F_{-1}, F_0, ..., F_{FIB_TABLE_LEN - 2}`, built once.
fn fib_table() -> &'static [Integer] {
    static TABLE: OnceLock<Vec<Integer>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t: Vec<Integer> = vec![Integer::one(), Integer::zero()];
        while t.len() < FIB_TABLE_LEN {
            let next = &t[t.len() - 1] + &t[t.len() - 2];
            t.push(next);
        }
        t
    })
}

/// Fibonacci number `F_k` for `k >= -1`, with `F_{-1} = 1`.
pub fn fib(k: i64) -> Result<Integer, FamilyError> {
    if k < -1 {
        return Err(FamilyError::FibIndex(k));
    }
    let idx = (k + 1) as usize;
    let table = fib_table();
    if let Some(v) = table.get(idx) {
        return Ok(v.clone());
    }
    let (mut a, mut b) = (table[table.len() - 2].clone(), table[table.len() - 1].clone());
    for _ in table.len()..=idx {
        let c = &a + &b;
        a = b;
        b = c;
    }
    Ok(b)
}

fn fib_u(k: usize) -> Integer {
    fib(k as i64).expect("non-negative index")
}

fn np(c: &[i64]) -> NPoly {
    NPoly::from_i64(c)
}

fn npc(c: Integer) -> NPoly {
    NPoly::constant(c)
}

/// `p_0, ..., p_d`.
fn p_sequence(d: usize) -> Vec<BiPoly> {
    let mut seq = vec![BiPoly::constant(np(&[-1]))];
    if d >= 1 {
        seq.push(BiPoly::from_coeffs(vec![np(&[-1]), np(&[1, 1])]));
    }
    let one_plus_x = BiPoly::from_coeffs(vec![np(&[1]), np(&[1])]);
    for k in 2..=d {
        let next = &one_plus_x * &seq[k - 1] + seq[k - 2].shift(2);
        seq.push(next);
    }
    seq
}

pub fn gen_p(d: usize) -> BiPoly {
    p_sequence(d).pop().expect("non-empty")
}

/// `L_n(x) = (n^2+3n+1)x - (n+2)`
pub fn gen_l() -> BiPoly {
    BiPoly::from_coeffs(vec![np(&[-2, -1]), np(&[1, 3, 1])])
}

/// `K_n(x) = x^2 - (n^2+3n+1)x + (n+2)`
pub fn gen_k() -> BiPoly {
    BiPoly::from_coeffs(vec![np(&[2, 1]), np(&[-1, -3, -1]), np(&[1])])
}

pub fn gen_big_p(d: usize, policy: RangePolicy) -> Result<BiPoly, FamilyError> {
    require("P", d, 2)?;
    policy.check("P", d, 4)?;
    Ok(gen_l() * gen_p(d - 1))
}

/// `q_0, q_2, ..., q_d` (even indices only).
fn q_sequence(d: usize) -> Vec<BiPoly> {
    let mut seq = vec![BiPoly::one()];
    if d >= 2 {
        seq.push(BiPoly::from_coeffs(vec![np(&[1]), np(&[-1, -1]), np(&[1])]));
    }
    let mult = BiPoly::from_coeffs(vec![np(&[1]), np(&[1]), np(&[2])]);
    for k in 2..=d / 2 {
        let next = &mult * &seq[k - 1] - seq[k - 2].shift(4);
        seq.push(next);
    }
    seq
}

pub fn gen_q(d: usize) -> Result<BiPoly, FamilyError> {
    if d % 2 == 1 {
        return Err(FamilyError::OddDegree {
            family: "q",
            value: d,
        });
    }
    Ok(q_sequence(d).pop().expect("non-empty"))
}

pub fn gen_big_q(d: usize, policy: RangePolicy) -> Result<BiPoly, FamilyError> {
    if d.is_multiple_of(2) {
        require("Q", d, 2)?;
        policy.check("Q", d, 6)?;
        Ok(gen_k() * gen_q(d - 2)?)
    } else {
        require("Q", d, 3)?;
        policy.check("Q", d, 7)?;
        Ok((gen_k() * gen_q(d - 3)?).shift(1))
    }
}

fn sign(d: usize) -> NPoly {
    // (-1)^(d-1)
    if d % 2 == 1 {
        np(&[1])
    } else {
        np(&[-1])
    }
}

fn s_from(d: usize, p_d: &BiPoly, p_dm1: &BiPoly) -> BiPoly {
    let a = p_d.scale(&npc(fib_u(d - 1)));
    let b = p_dm1.shift(1).scale(&npc(fib_u(d)));
    (a - b).scale(&sign(d))
}

pub fn gen_s(d: usize) -> Result<BiPoly, FamilyError> {
    require("s", d, 2)?;
    let seq = p_sequence(d);
    Ok(s_from(d, &seq[d], &seq[d - 1]))
}

/// The monic degree-`big_d` member; the half index `d = big_d / 2` is internal.
pub fn gen_r(big_d: usize) -> Result<BiPoly, FamilyError> {
    require("r", big_d, 4)?;
    let d = big_d / 2;
    let seq = p_sequence(d);
    let s = s_from(d, &seq[d], &seq[d - 1]);
    let s2 = &s * &s;
    Ok(if big_d % 2 == 1 {
        let f = npc(fib_u(d).pow(2));
        s2.shift(1) + (&seq[d] * &seq[d]).scale(&f)
    } else {
        let f = npc(fib_u(d - 1).pow(2));
        s2 + (&seq[d - 1] * &seq[d - 1]).shift(1).scale(&f)
    })
}

pub fn gen_cluster_p(delta: usize, h: usize, pad: usize) -> Result<BiPoly, FamilyError> {
    require("clusterP", delta, 2)?;
    let seq = p_sequence(delta + h);
    let mut acc = gen_l() * &seq[delta - 1];
    for p in &seq[delta..=delta + h] {
        acc = acc * p;
    }
    Ok(acc.shift(pad))
}

pub fn gen_cluster_q(
    delta: usize,
    h: usize,
    pad: usize,
    policy: RangePolicy,
) -> Result<BiPoly, FamilyError> {
    if delta % 2 == 1 {
        return Err(FamilyError::OddDegree {
            family: "clusterQ",
            value: delta,
        });
    }
    require("clusterQ", delta, 2)?;
    policy.check("clusterQ", delta, 6)?;
    let seq = q_sequence(delta + 2 * h);
    let mut acc = gen_k() * &seq[delta / 2 - 1];
    for q in &seq[delta / 2..=delta / 2 + h] {
        acc = acc * q;
    }
    Ok(acc.shift(pad))
}

/// A named family member, parameterised by its degree data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `p_d`
    BaseP(usize),
    /// `L_n`
    Linear,
    /// `P_d = L * p_{d-1}`
    ReducibleP(usize),
    /// `K_n`
    Quadratic,
    /// `q_d`, even `d`
    BaseQ(usize),
    /// `Q_d`, monic reducible
    MonicQ(usize),
    /// `s_d`
    AuxS(usize),
    /// `r_D`, monic of degree `D`
    MonicR(usize),
    ClusterP { delta: usize, h: usize, pad: usize },
    ClusterQ { delta: usize, h: usize, pad: usize },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::BaseP(_) => "p",
            Family::Linear => "L",
            Family::ReducibleP(_) => "P",
            Family::Quadratic => "K",
            Family::BaseQ(_) => "q",
            Family::MonicQ(_) => "Q",
            Family::AuxS(_) => "s",
            Family::MonicR(_) => "r",
            Family::ClusterP { .. } => "clusterP",
            Family::ClusterQ { .. } => "clusterQ",
        }
    }

    /// Build from a tag and a degree parameter (`delta` for clusters).
    pub fn from_tag(tag: &str, d: Option<usize>, h: Option<usize>, pad: usize) -> Result<Self, FamilyError> {
        let need_d = |name: &'static str| d.ok_or(FamilyError::MissingParameter(name, "a degree"));
        Ok(match tag {
            "p" => Family::BaseP(need_d("p")?),
            "L" => Family::Linear,
            "P" => Family::ReducibleP(need_d("P")?),
            "K" => Family::Quadratic,
            "q" => Family::BaseQ(need_d("q")?),
            "Q" => Family::MonicQ(need_d("Q")?),
            "s" => Family::AuxS(need_d("s")?),
            "r" => Family::MonicR(need_d("r")?),
            "clusterP" => Family::ClusterP {
                delta: need_d("clusterP")?,
                h: h.ok_or(FamilyError::MissingParameter("clusterP", "h"))?,
                pad,
            },
            "clusterQ" => Family::ClusterQ {
                delta: need_d("clusterQ")?,
                h: h.ok_or(FamilyError::MissingParameter("clusterQ", "h"))?,
                pad,
            },
            other => return Err(FamilyError::UnknownTag(other.to_string())),
        })
    }

    /// Degree parameter as reported in tables.
    pub fn d(&self) -> usize {
        match *self {
            Family::BaseP(d)
            | Family::ReducibleP(d)
            | Family::BaseQ(d)
            | Family::MonicQ(d)
            | Family::AuxS(d)
            | Family::MonicR(d) => d,
            Family::Linear => 1,
            Family::Quadratic => 2,
            Family::ClusterP { delta, .. } | Family::ClusterQ { delta, .. } => delta,
        }
    }

    /// Degree in `x` of the constructed polynomial.
    pub fn degree(&self) -> usize {
        match *self {
            Family::ClusterP { delta, h, pad } => (h + 2) * delta + h * (h + 1) / 2 + pad,
            Family::ClusterQ { delta, h, pad } => (h + 2) * delta + h * (h + 1) + pad,
            other => other.d(),
        }
    }

    pub fn build(&self, policy: RangePolicy) -> Result<BiPoly, FamilyError> {
        match *self {
            Family::BaseP(d) => Ok(gen_p(d)),
            Family::Linear => Ok(gen_l()),
            Family::ReducibleP(d) => gen_big_p(d, policy),
            Family::Quadratic => Ok(gen_k()),
            Family::BaseQ(d) => gen_q(d),
            Family::MonicQ(d) => gen_big_q(d, policy),
            Family::AuxS(d) => gen_s(d),
            Family::MonicR(d) => gen_r(d),
            Family::ClusterP { delta, h, pad } => gen_cluster_p(delta, h, pad),
            Family::ClusterQ { delta, h, pad } => gen_cluster_q(delta, h, pad, policy),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Linear | Family::Quadratic => write!(f, "{}", self.tag()),
            Family::ClusterP { delta, h, pad } | Family::ClusterQ { delta, h, pad } => {
                write!(f, "{}({delta},{h},{pad})", self.tag())
            }
            other => write!(f, "{}{}", other.tag(), other.d()),
        }
    }
}

/// Parses the compact forms `P5`, `r12`, `L`, `clusterP(4,1,0)`.
impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::UnknownTag(s.to_string());
        if let Some(rest) = s.strip_prefix("clusterP").or_else(|| s.strip_prefix("clusterQ")) {
            let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            let v: Vec<usize> = inner
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            let (delta, h, pad) = match v.as_slice() {
                [a, b] => (*a, *b, 0),
                [a, b, c] => (*a, *b, *c),
                _ => return Err(bad()),
            };
            return Family::from_tag(&s[..8], Some(delta), Some(h), pad);
        }
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (tag, digits) = s.split_at(split);
        let d = if digits.is_empty() {
            None
        } else {
            Some(digits.parse().map_err(|_| bad())?)
        };
        Family::from_tag(tag, d, None, 0)
    }
}
