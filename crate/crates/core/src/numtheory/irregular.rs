use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::bernoulli::bernoulli_residues;
use super::primes::{odd_primes_up_to, require_odd_prime};
use super::rational::BigRat;
use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Published verification range for the Kummer-Vandiver condition.
pub const VERIFIED_KV_BOUND: u64 = 1 << 31;

/// Irregularity indices of an odd prime: the even `k` in `[2, p - 3]` with `p | B_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrregularReport {
    pub p: u64,
    pub indices: Vec<u64>,
    pub is_regular: bool,
}

impl IrregularReport {
    fn new(p: u64, indices: Vec<u64>) -> Self {
        IrregularReport {
            p,
            is_regular: indices.is_empty(),
            indices,
        }
    }
}

pub fn irregular_indices(p: u64) -> Result<IrregularReport> {
    let indices = bernoulli_residues(p)?
        .into_iter()
        .filter_map(|(k, r)| (r == 0).then_some(k))
        .collect();
    Ok(IrregularReport::new(p, indices))
}

pub fn is_regular(p: u64) -> Result<bool> {
    Ok(irregular_indices(p)?.is_regular)
}

/// Reports for every odd prime `<= max_p`, ascending in `p`.
pub fn scan_irregular(max_p: u64, exec: Execution) -> Vec<IrregularReport> {
    // largest primes first so the long jobs start early; order is restored below
    let mut primes = odd_primes_up_to(max_p);
    primes.reverse();
    let mut reports = par::map(primes, exec, |p| {
        irregular_indices(p).expect("sieved primes are odd primes")
    });
    reports.reverse();
    reports
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KvCondition {
    Holds,
    UnknownAboveVerifiedBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KvStatus {
    pub p: u64,
    pub status: KvCondition,
}

impl KvStatus {
    pub fn holds(&self) -> bool {
        self.status == KvCondition::Holds
    }
}

/// Kummer-Vandiver status of `p` relative to the verified bound.
pub fn kv_status(p: u64, verified_bound: u64) -> Result<KvStatus> {
    require_odd_prime(p)?;
    let status = if p <= verified_bound {
        KvCondition::Holds
    } else {
        KvCondition::UnknownAboveVerifiedBound
    };
    Ok(KvStatus { p, status })
}

/// p-adic valuation of a nonzero rational.
pub fn vp(x: &BigRat, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(int_valuation(x.numer(), p) as i64 - int_valuation(x.denom(), p) as i64)
}

fn int_valuation(n: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}
