//! p-torsion of `π_* ΣC̄P∞₋₁`, indexed by the degree of the suspension.
//!
//! Odd degrees and low even degrees have exact answers. Higher even degrees
//! only have an order, given by the `a + b - c - d + e` exponent formula. The
//! printed `e` cases disagree with known values at `p = 3`, so two modes exist:
//! [`CpMode::Literal`] evaluates the printed cases verbatim, and
//! [`CpMode::Calibrated`] replaces them with tabulated values where such exist.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::abgroups::{self, GroupValue};
use crate::error::{Error, Result};
use crate::numtheory::primes::require_odd_prime;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CpMode {
    Literal,
    #[default]
    Calibrated,
}

impl FromStr for CpMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "literal" => Ok(CpMode::Literal),
            "calibrated" => Ok(CpMode::Calibrated),
            _ => Err(Error::Config(format!(
                "unknown cp mode {s:?} (expected literal or calibrated)"
            ))),
        }
    }
}

impl fmt::Display for CpMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CpMode::Literal => "literal",
            CpMode::Calibrated => "calibrated",
        })
    }
}

/// Validated degree ranges at one prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CpRange {
    pub p: u64,
    pub odd_exact_max: i64,
    pub even_exact_max: i64,
    pub even_order_max: i64,
}

pub fn cp_range(p: u64) -> Result<CpRange> {
    require_odd_prime(p)?;
    let q = p as i128;
    let beta2_minus_2 = 2 * (2 * q + 1) * (q - 1) - 4;
    let even_exact = 2 * q * (q - 1);
    let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::out_of_range(cp_name(p), 0, 0));
    Ok(CpRange {
        p,
        odd_exact_max: narrow(beta2_minus_2)?,
        even_exact_max: narrow(even_exact)?,
        even_order_max: narrow(beta2_minus_2)?,
    })
}

fn cp_name(p: u64) -> String {
    format!("suspended CP^inf_-1 bar at p = {p}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ESource {
    Literal,
    CalibratedTable,
}

/// The pieces of the exponent formula for `π_{2n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CpExponentParts {
    pub p: u64,
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub e_literal: i8,
    /// Both printed `e` cases matched; `+1` was used.
    pub e_overlap: bool,
    /// `a + b - c - d + e` was negative and has been replaced by 0.
    pub clamped: bool,
}

impl CpExponentParts {
    pub fn new(p: u64, n: u64) -> Self {
        assert!(n >= 1, "exponent formula needs n >= 1");
        let a = (n - 1) / (p - 1);
        let b = (n - 1) / (p * (p - 1));
        let c = n / p;
        let d = n / (p * p);
        let plus = (1..=p.saturating_sub(2)).any(|m| p * p - 2 + m * p == n);
        let minus = n >= p - 2 && (n - (p - 2)).is_multiple_of(p) && (n - (p - 2)) / p >= p - 2;
        let e_literal = if plus {
            1
        } else if minus {
            -1
        } else {
            0
        };
        let raw = a as i64 + b as i64 - c as i64 - d as i64 + e_literal as i64;
        CpExponentParts {
            p,
            n,
            a,
            b,
            c,
            d,
            e_literal,
            e_overlap: plus && minus,
            clamped: raw < 0,
        }
    }

    pub fn exponent(&self) -> u32 {
        let raw = self.a as i64 + self.b as i64 - self.c as i64 - self.d as i64
            + self.e_literal as i64;
        raw.max(0) as u32
    }
}

/// Torsion in odd degree `2n + 1`.
pub fn cp_odd_torsion(p: u64, degree: i64) -> Result<GroupValue> {
    let range = cp_range(p)?;
    assert!(degree.rem_euclid(2) == 1, "cp_odd_torsion needs an odd degree");
    if degree > range.odd_exact_max {
        return Err(Error::out_of_range(cp_name(p), degree, range.odd_exact_max));
    }
    if degree < 1 {
        return Ok(GroupValue::trivial());
    }
    let n = (degree as u64 - 1) / 2;
    let hit = (1..=p.saturating_sub(3))
        .any(|m| n == p * p - p - 1 + m || n == 2 * p * p - 2 * p - 2 + m);
    Ok(if hit {
        GroupValue::cyclic_prime_power(p, 1)
    } else {
        GroupValue::trivial()
    })
}

/// Torsion in even degree `2n <= 2p(p-1)`.
pub fn cp_even_exact(p: u64, degree: i64) -> Result<GroupValue> {
    let range = cp_range(p)?;
    assert!(degree % 2 == 0, "cp_even_exact needs an even degree");
    if degree > range.even_exact_max {
        return Err(Error::out_of_range(cp_name(p), degree, range.even_exact_max));
    }
    if degree < 2 {
        return Ok(GroupValue::trivial());
    }
    let n = degree as u64 / 2;
    if n == p * (p - 1) - 1 {
        return Ok(GroupValue::trivial());
    }
    let hit = (2..p).any(|m| m * (p - 1) < n && n < m * p);
    Ok(if hit {
        GroupValue::cyclic_prime_power(p, 1)
    } else {
        GroupValue::trivial()
    })
}

/// Torsion in even degree `<= 2(2p+1)(p-1) - 4`; only the order is known
/// above `2p(p-1)`.
pub fn cp_even_order(p: u64, degree: i64, mode: CpMode) -> Result<GroupValue> {
    let range = cp_range(p)?;
    assert!(degree % 2 == 0, "cp_even_order needs an even degree");
    if degree > range.even_order_max {
        return Err(Error::out_of_range(cp_name(p), degree, range.even_order_max));
    }
    if mode == CpMode::Calibrated {
        if let Some(v) = calibration().get(&(p, degree)) {
            return Ok(v.clone());
        }
    }
    if degree <= range.even_exact_max {
        return cp_even_exact(p, degree);
    }
    Ok(literal_order(p, degree))
}

fn literal_order(p: u64, degree: i64) -> GroupValue {
    let parts = CpExponentParts::new(p, degree as u64 / 2);
    GroupValue::order_only(
        BigUint::from(p).pow(parts.exponent()),
        "order from the exponent formula; structure not determined",
    )
}

/// `tor_p π_degree ΣC̄P∞₋₁`, dispatching on parity.
pub fn cp_torsion(p: u64, degree: i64, mode: CpMode) -> Result<GroupValue> {
    if degree.rem_euclid(2) == 1 {
        cp_odd_torsion(p, degree)
    } else {
        cp_even_order(p, degree, mode)
    }
}

/// Tabulated values, keyed by `(p, degree)`.
fn calibration() -> &'static BTreeMap<(u64, i64), GroupValue> {
    static DATA: OnceLock<BTreeMap<(u64, i64), GroupValue>> = OnceLock::new();
    DATA.get_or_init(|| {
        parse_calibration(include_str!("../data/cp_calibration.tsv"))
            .expect("embedded calibration table is well formed")
    })
}

fn parse_calibration(text: &str) -> Result<BTreeMap<(u64, i64), GroupValue>> {
    let mut out = BTreeMap::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: &str| Error::Parse {
            input: line.to_string(),
            reason: reason.to_string(),
        };
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() < 3 {
            return Err(bad("expected prime, degree, order"));
        }
        let p: u64 = cols[0].parse().map_err(|_| bad("bad prime"))?;
        let degree: i64 = cols[1].parse().map_err(|_| bad("bad degree"))?;
        let order: BigUint = cols[2].parse().map_err(|_| bad("bad order"))?;
        let value = match cols.get(3) {
            Some(s) => {
                let v = abgroups::parse(s)?;
                if v.order().as_ref() != Some(&order) {
                    return Err(bad("structure does not match order"));
                }
                v
            }
            None => GroupValue::order_only(order, "tabulated order"),
        };
        out.insert((p, degree), value);
    }
    Ok(out)
}

pub fn has_calibration(p: u64) -> bool {
    calibration().keys().any(|&(q, _)| q == p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CpDiscrepancy {
    pub degree: i64,
    pub literal: GroupValue,
    pub calibrated: GroupValue,
    pub parts: CpExponentParts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CpDiscrepancyReport {
    pub p: u64,
    /// False when no tabulated values exist for `p`; `entries` is then empty.
    pub calibrated: bool,
    pub entries: Vec<CpDiscrepancy>,
}

/// Even degrees where the two modes disagree.
pub fn cp_discrepancy_report(p: u64) -> Result<CpDiscrepancyReport> {
    let range = cp_range(p)?;
    if !has_calibration(p) {
        return Ok(CpDiscrepancyReport {
            p,
            calibrated: false,
            entries: Vec::new(),
        });
    }
    let mut entries = Vec::new();
    for degree in (2..=range.even_order_max).step_by(2) {
        let literal = cp_even_order(p, degree, CpMode::Literal)?;
        let calibrated = cp_even_order(p, degree, CpMode::Calibrated)?;
        if literal != calibrated {
            entries.push(CpDiscrepancy {
                degree,
                literal,
                calibrated,
                parts: CpExponentParts::new(p, degree as u64 / 2),
            });
        }
    }
    Ok(CpDiscrepancyReport {
        p,
        calibrated: true,
        entries,
    })
}
