//! p-primary homotopy of the sphere: image of J, the low cokernel-of-J
//! pattern, and the classical stems through degree 22.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::abgroups::{direct_sum, GroupValue, TorsionGroup};
use crate::error::{Error, Result};
use crate::numtheory::primes::{require_odd_prime, valuation_u64};

/// Last degree covered by the embedded stem table.
pub const STEM_TABLE_MAX: i64 = 22;

pub(crate) const STEM_TABLE_NAME: &str = "2-primary stem table";

/// Torsion of `π_k j` at an odd prime `p`.
pub fn image_of_j_torsion(p: u64, k: i64) -> Result<GroupValue> {
    require_odd_prime(p)?;
    if k <= 0 {
        return Ok(GroupValue::trivial());
    }
    let period = 2 * (p as u128 - 1);
    let k1 = k as u128 + 1;
    if !k1.is_multiple_of(period) {
        return Ok(GroupValue::trivial());
    }
    let s = valuation_u128(k1 / period, p);
    Ok(GroupValue::cyclic_prime_power(p, s + 1))
}

fn valuation_u128(mut n: u128, p: u64) -> u32 {
    if let Ok(small) = u64::try_from(n) {
        return valuation_u64(small, p);
    }
    let p = p as u128;
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Upper end of the range where the cokernel-of-J pattern below is complete.
pub fn coker_max_degree(p: u64) -> i64 {
    let p = p as i64;
    6 * p * (p - 1) - 6
}

/// The seven nonzero degrees of `π_* c` up to [`coker_max_degree`], each `Z/p`.
pub fn coker_degrees(p: u64) -> [(&'static str, i64); 7] {
    let p = p as i64;
    [
        ("beta_1", 2 * p * (p - 1) - 2),
        ("alpha_1 beta_1", 2 * (p + 1) * (p - 1) - 3),
        ("beta_1^2", 4 * p * (p - 1) - 4),
        ("alpha_1 beta_1^2", 2 * (2 * p + 1) * (p - 1) - 5),
        ("beta_2", 2 * (2 * p + 1) * (p - 1) - 2),
        ("alpha_1 beta_2", 4 * (p + 1) * (p - 1) - 3),
        ("beta_1^3", 6 * p * (p - 1) - 6),
    ]
}

/// Torsion of `π_k c` at `p`, for `k <= 6p(p-1) - 6`.
pub fn coker_j_torsion(p: u64, k: i64) -> Result<GroupValue> {
    require_odd_prime(p)?;
    let max = checked_max(p)?;
    if k > max {
        return Err(Error::out_of_range(format!("coker J at p = {p}"), k, max));
    }
    let hits = coker_degrees(p).iter().filter(|&&(_, d)| d == k).count() as u32;
    Ok(GroupValue::exact(TorsionGroup::from_factors(
        (0..hits).map(|_| (p, 1)),
    )))
}

fn checked_max(p: u64) -> Result<i64> {
    // 6p(p-1) must fit an i64 degree
    if p > 1_000_000_000 {
        return Err(Error::out_of_range(format!("coker J at p = {p}"), 0, 0));
    }
    Ok(coker_max_degree(p))
}

/// Torsion of `π_k S` at `p`: image of J plus cokernel of J.
pub fn sphere_torsion(p: u64, k: i64) -> Result<GroupValue> {
    let c = coker_j_torsion(p, k)?;
    let j = image_of_j_torsion(p, k)?;
    Ok(direct_sum([&j, &c]))
}

/// One row of the classical stems: all torsion of `π_n S`, plus the
/// 2-torsion of `π_n K(S)` not accounted for by the sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StemTableEntry {
    pub n: u32,
    pub torsion_of_s: GroupValue,
    pub extra_2_torsion: GroupValue,
}

impl StemTableEntry {
    pub fn torsion_group(&self) -> &TorsionGroup {
        self.torsion_of_s
            .as_exact()
            .expect("stem table torsion is exact")
    }
}

pub fn stem_table() -> &'static [StemTableEntry] {
    static TABLE: OnceLock<Vec<StemTableEntry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let rows: Vec<StemTableEntry> =
            serde_json::from_str(include_str!("../data/stem_table.json"))
                .expect("embedded stem table is valid JSON");
        assert!(
            rows.iter().enumerate().all(|(i, r)| r.n as usize == i)
                && rows.len() as i64 == STEM_TABLE_MAX + 1,
            "embedded stem table must list n = 0..=22 in order"
        );
        rows
    })
}

pub fn classical_stem_row(n: i64) -> Result<&'static StemTableEntry> {
    if !(0..=STEM_TABLE_MAX).contains(&n) {
        return Err(Error::out_of_range(STEM_TABLE_NAME, n, STEM_TABLE_MAX));
    }
    Ok(&stem_table()[n as usize])
}
