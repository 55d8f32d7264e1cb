//! p-primary torsion of `K(Z)` through its splitting `j ∨ y_0 ∨ … ∨ y_{p-2}`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::abgroups::{direct_sum, GroupValue};
use crate::error::{Error, Result};
use crate::numtheory::{bernoulli_exact, bernoulli_mod, irregular_indices, kv_status, vp, BigRat};
use crate::params::Params;
use crate::stems::image_of_j_torsion;

/// Above this a full regularity test (quadratic in `p`) is not attempted.
const REGULARITY_TEST_LIMIT: u64 = 1 << 20;

pub const KV_GLOSS: &str =
    "finite; conjectured to be 0 (Kummer-Vandiver), otherwise of order a product of irregular primes";

const MAZUR_WILES_NOTE: &str =
    "order from the Mazur-Wiles theorem; cyclic if Kummer-Vandiver holds at p";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum YStatus {
    Trivial,
    /// `y_0 ≃ Σ^{2p-1} ℓ`.
    SuspendedEll,
    EvenFree,
    OddCyclicTorsion,
    OddOrderOnly,
    EvenUnknownFinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct YSummandStatus {
    pub p: u64,
    pub i: u64,
    pub status: YStatus,
}

pub fn y_status(p: u64, i: u64) -> Result<YSummandStatus> {
    y_status_with(p, i, &Params::default())
}

pub fn y_status_with(p: u64, i: u64, params: &Params) -> Result<YSummandStatus> {
    let kv = kv_status(p, params.kv_bound)?.holds();
    if i > p - 2 {
        return Err(Error::IndexOutOfRange { index: i, p });
    }
    let status = if i == 0 {
        YStatus::SuspendedEll
    } else if i == 1 || i == p - 2 {
        YStatus::Trivial
    } else if i % 2 == 1 {
        if bernoulli_mod(i + 1, p)? != 0 {
            YStatus::Trivial
        } else if kv {
            YStatus::OddCyclicTorsion
        } else {
            YStatus::OddOrderOnly
        }
    } else if kv {
        YStatus::EvenFree
    } else {
        YStatus::EvenUnknownFinite
    };
    Ok(YSummandStatus { p, i, status })
}

/// `v_p(B_m / m)` for even `m >= 2`, using the mod-`p` test to skip the
/// exact computation whenever `p` cannot divide the numerator.
fn bernoulli_quotient_valuation(p: u64, m: u64) -> Result<i64> {
    if m.is_multiple_of(p - 1) {
        // p divides the denominator of B_m (von Staudt-Clausen)
        return Ok(-1 - crate::numtheory::primes::valuation_u64(m, p) as i64);
    }
    let reduced = m % (p - 1);
    if bernoulli_mod(reduced, p)? != 0 {
        return Ok(0);
    }
    let b = bernoulli_exact(m as usize);
    vp(&(b / BigRat::from_integer(m)), p)
}

/// p-torsion of `π_n K̃(Z)` under the default parameters.
pub fn ktz_torsion(p: u64, n: i64) -> Result<GroupValue> {
    ktz_torsion_with(p, n, &Params::default())
}

pub fn ktz_torsion_with(p: u64, n: i64, params: &Params) -> Result<GroupValue> {
    let kv = kv_status(p, params.kv_bound)?.holds();
    if n <= 4 || n % 2 == 1 {
        return Ok(GroupValue::trivial());
    }
    if n % 4 == 2 {
        let m = (n as u64 + 2) / 2;
        let v = bernoulli_quotient_valuation(p, m)?;
        if v <= 0 {
            return Ok(GroupValue::trivial());
        }
        let v = v as u32;
        return Ok(if kv {
            GroupValue::cyclic_prime_power(p, v)
        } else {
            GroupValue::order_only(BigUint::from(p).pow(v), MAZUR_WILES_NOTE)
        });
    }
    if kv {
        return Ok(GroupValue::trivial());
    }
    if p <= REGULARITY_TEST_LIMIT && irregular_indices(p)?.is_regular {
        return Ok(GroupValue::trivial());
    }
    Ok(GroupValue::unknown(KV_GLOSS))
}

/// p-torsion of `π_n K(Z)`: image of J plus `K̃(Z)`.
pub fn kz_torsion(p: u64, n: i64) -> Result<GroupValue> {
    kz_torsion_with(p, n, &Params::default())
}

pub fn kz_torsion_with(p: u64, n: i64, params: &Params) -> Result<GroupValue> {
    let j = image_of_j_torsion(p, n)?;
    let t = ktz_torsion_with(p, n, params)?;
    Ok(direct_sum([&j, &t]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> GroupValue {
        GroupValue::cyclic(n)
    }

    #[test]
    fn y_statuses() {
        assert_eq!(y_status(691, 11).unwrap().status, YStatus::OddCyclicTorsion);
        for p in [5, 7, 11, 13] {
            assert_eq!(y_status(p, 3).unwrap().status, YStatus::Trivial, "p={p}");
        }
        assert_eq!(y_status(7, 5).unwrap().status, YStatus::Trivial);
        assert_eq!(y_status(7, 1).unwrap().status, YStatus::Trivial);
        assert_eq!(y_status(7, 2).unwrap().status, YStatus::EvenFree);
        for p in [3, 5, 37, 691] {
            assert_eq!(y_status(p, 0).unwrap().status, YStatus::SuspendedEll);
        }
        assert_eq!(y_status(37, 31).unwrap().status, YStatus::OddCyclicTorsion);
        let weak = Params {
            kv_bound: 100,
            ..Params::default()
        };
        assert_eq!(y_status_with(691, 11, &weak).unwrap().status, YStatus::OddOrderOnly);
        assert_eq!(y_status_with(691, 10, &weak).unwrap().status, YStatus::EvenUnknownFinite);
        assert!(matches!(y_status(5, 4), Err(Error::IndexOutOfRange { index: 4, p: 5 })));
        assert!(matches!(y_status(9, 1), Err(Error::NotPrime(9))));
    }

    #[test]
    fn ktz_examples() {
        assert_eq!(ktz_torsion(691, 22).unwrap(), z(691));
        assert_eq!(ktz_torsion(3, 14).unwrap(), GroupValue::trivial());
        for n in 0..60 {
            assert!(ktz_torsion(5, n).unwrap().is_trivial());
        }
        assert_eq!(ktz_torsion(37, 62).unwrap(), z(37));
        assert!(ktz_torsion(691, 23).unwrap().is_trivial());
        assert!(ktz_torsion(691, 8).unwrap().is_trivial());
    }

    #[test]
    fn ktz_without_kv() {
        let weak = Params {
            kv_bound: 100,
            ..Params::default()
        };
        assert_eq!(ktz_torsion_with(691, 22, &weak).unwrap(), z(691));
        match ktz_torsion_with(691, 8, &weak).unwrap() {
            GroupValue::UnknownFinite { note, .. } => assert!(note.contains("conjectured to be 0")),
            other => panic!("{other:?}"),
        }
        assert!(ktz_torsion_with(691, 4, &weak).unwrap().is_trivial());
        assert!(!ktz_torsion_with(101, 8, &weak).unwrap().is_trivial());
        assert!(ktz_torsion_with(97, 8, &weak).unwrap().is_trivial());
    }

    #[test]
    fn valuation_shortcut_matches_exact() {
        for p in [3u64, 5, 7, 37, 59, 67] {
            for m in (2..=120u64).step_by(2) {
                let exact = vp(
                    &(bernoulli_exact(m as usize) / BigRat::from_integer(m)),
                    p,
                )
                .unwrap();
                let fast = bernoulli_quotient_valuation(p, m).unwrap();
                assert_eq!(exact.max(0), fast.max(0), "p={p} m={m}");
                if m % (p - 1) == 0 {
                    assert_eq!(exact, fast, "p={p} m={m}");
                }
            }
        }
    }

    #[test]
    fn kz() {
        assert_eq!(kz_torsion(691, 22).unwrap(), z(691));
        assert_eq!(kz_torsion(3, 3).unwrap(), z(3));
        assert!(kz_torsion(3, 4).unwrap().is_trivial());
    }
}
