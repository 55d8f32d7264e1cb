//! Splittings of `TC(S)` and `TC(Z)` at an odd prime, the trace pairing
//! between the `K(Z)` and `TC(Z)` summands, and the eigensplitting squares.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::abgroups::{direct_sum, GroupValue, HomotopyGroup};
use crate::cpbar::{cp_torsion, CpMode};
use crate::error::{Error, Result};
use crate::numtheory::primes::require_odd_prime;
use crate::stems::{coker_j_torsion, image_of_j_torsion};

/// The linearization `ΣC̄P∞₋₁ → TC(Z)` is zero on p-torsion, so the
/// projective summand reaches `K(S)` unchanged.
pub const LINEARIZATION_ZERO_ON_CP_TORSION: bool = true;

/// `S → TC(Z)` factors through `j` and is split surjective on homotopy.
pub const LINEARIZATION_UNIT_SPLIT_SURJECTIVE: bool = true;

/// `ΣS → TC(Z)` factors through `Σj'`, an isomorphism on `π_1`.
pub const LINEARIZATION_SUSPENDED_UNIT_ISO_PI1: bool = true;

/// Names of the summands that occur in the splittings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SummandId {
    S,
    J,
    JPrime,
    C,
    SigmaJ,
    SigmaJPrime,
    SigmaC,
    SigmaCpBar,
    /// `ℓ_TC(q)`, `q ∈ {0, p, 2, …, p-2}`.
    EllTc(u64),
    /// `Σ^{-1} ℓ_TC(q)`.
    DesuspendedEllTc(u64),
    Y(u64),
    /// `Σ CP∞₋₁[i]`, `i` taken mod `p - 1`.
    SigmaCp(i64),
    /// `CP∞[i]`.
    CpInfinity(u64),
    K(u64),
}

impl fmt::Display for SummandId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandId::S => write!(f, "S"),
            SummandId::J => write!(f, "j"),
            SummandId::JPrime => write!(f, "j'"),
            SummandId::C => write!(f, "c"),
            SummandId::SigmaJ => write!(f, "Σj"),
            SummandId::SigmaJPrime => write!(f, "Σj'"),
            SummandId::SigmaC => write!(f, "Σc"),
            SummandId::SigmaCpBar => write!(f, "ΣC̄P∞₋₁"),
            SummandId::EllTc(q) => write!(f, "ℓTC({q})"),
            SummandId::DesuspendedEllTc(q) => write!(f, "Σ⁻¹ℓTC({q})"),
            SummandId::Y(i) => write!(f, "y{i}"),
            SummandId::SigmaCp(i) => write!(f, "ΣCP∞₋₁[{i}]"),
            SummandId::CpInfinity(i) => write!(f, "CP∞[{i}]"),
            SummandId::K(i) => write!(f, "K({i})"),
        }
    }
}

impl Serialize for SummandId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Index set of the `ℓ_TC` summands: `0, p, 2, 3, …, p-2`.
pub fn ell_tc_indices(p: u64) -> Vec<u64> {
    let mut v = vec![0, p];
    v.extend(2..=p.saturating_sub(2));
    v
}

/// Torsion of `π_n TC(S)` at `p`: `j ∨ c ∨ Σj ∨ Σc ∨ ΣC̄P∞₋₁`.
pub fn tc_s_torsion(p: u64, n: i64) -> Result<GroupValue> {
    tc_s_torsion_with(p, n, CpMode::default())
}

pub fn tc_s_torsion_with(p: u64, n: i64, mode: CpMode) -> Result<GroupValue> {
    let parts = [
        image_of_j_torsion(p, n)?,
        coker_j_torsion(p, n)?,
        image_of_j_torsion(p, n - 1)?,
        coker_j_torsion(p, n - 1)?,
        cp_torsion(p, n, mode)?,
    ];
    Ok(direct_sum(&parts))
}

/// Rank of `π_n TC(S)` modulo torsion.
pub fn tc_s_free_rank(n: i64) -> u32 {
    u32::from(n == 0 || (n % 2 != 0 && n >= -1))
}

/// Summands of `TC(Z)` carrying a free `Z_p` in degree `n`.
pub fn tc_z_free_summands(p: u64, n: i64) -> Result<Vec<SummandId>> {
    require_odd_prime(p)?;
    let period = 2 * (p as i64 - 1);
    let mut out = Vec::new();
    if n == 0 {
        out.push(SummandId::J);
    }
    if n == 1 {
        out.push(SummandId::SigmaJPrime);
    }
    for q in ell_tc_indices(p) {
        // ℓ_TC(q) ≃ Σ^{2q-1} ℓ, and π_k ℓ = Z_p for k ≡ 0 mod 2(p-1), k >= 0
        let k = n - (2 * q as i64 - 1);
        if k >= 0 && k % period == 0 {
            out.push(SummandId::EllTc(q));
        }
    }
    Ok(out)
}

/// `π_n TC(Z)` at `p`, `n >= -1`.
pub fn tc_z_homotopy(p: u64, n: i64) -> Result<HomotopyGroup> {
    if n < -1 {
        require_odd_prime(p)?;
        return Err(Error::out_of_range("TC(Z) homotopy (n >= -1)", n, i64::MAX));
    }
    let free = tc_z_free_summands(p, n)?.len() as u32;
    let torsion = direct_sum(&[image_of_j_torsion(p, n)?, image_of_j_torsion(p, n - 1)?]);
    Ok(HomotopyGroup::new(n, free, torsion))
}

/// How the trace maps `y_i` into the `TC(Z)` summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TracePairing {
    pub p: u64,
    /// `(i, q)`: `y_i → Σ^{-1} ℓ_TC(q)`.
    pub pairs: Vec<(u64, u64)>,
    /// Pairs known to be weak equivalences.
    pub weak_equivalences: Vec<(u64, u64)>,
}

impl TracePairing {
    pub fn target(&self, i: u64) -> Option<u64> {
        self.pairs.iter().find(|&&(a, _)| a == i).map(|&(_, q)| q)
    }
}

pub fn trace_pairing(p: u64) -> Result<TracePairing> {
    require_odd_prime(p)?;
    let pairs = (0..=p - 2)
        .map(|i| {
            let q = if i == 0 {
                p
            } else if i == p - 2 {
                0
            } else {
                i + 1
            };
            (i, q)
        })
        .collect();
    Ok(TracePairing {
        p,
        pairs,
        weak_equivalences: vec![(0, p)],
    })
}

/// One homotopy-cartesian square of the eigensplitting, corners as wedges:
///
/// ```text
/// K(i)      → k_z
///  ↓            ↓
/// tc_s      → tc_z
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenSquare {
    pub p: u64,
    pub i: u64,
    pub k_s: Vec<SummandId>,
    pub k_z: Vec<SummandId>,
    pub tc_s: Vec<SummandId>,
    pub tc_z: Vec<SummandId>,
    /// `k_z → tc_z` factors through a weak equivalence onto this summand.
    pub weak_equivalence: Option<SummandId>,
    /// A simpler wedge equivalent to `k_s`, when one is known.
    pub k_s_simplified: Option<Vec<SummandId>>,
}

pub fn eigensummand(p: u64, i: u64) -> Result<EigenSquare> {
    require_odd_prime(p)?;
    if i > p - 2 {
        return Err(Error::IndexOutOfRange { index: i, p });
    }
    let mut sq = EigenSquare {
        p,
        i,
        k_s: vec![SummandId::K(i)],
        k_z: vec![],
        tc_s: vec![],
        tc_z: vec![],
        weak_equivalence: None,
        k_s_simplified: None,
    };
    match i {
        0 => {
            sq.k_z = vec![SummandId::J];
            sq.tc_s = vec![SummandId::S, SummandId::SigmaCp(-1)];
            sq.tc_z = vec![SummandId::J, SummandId::DesuspendedEllTc(0)];
        }
        1 => {
            sq.k_z = vec![SummandId::Y(0)];
            sq.tc_s = vec![SummandId::SigmaCp(0)];
            sq.tc_z = vec![SummandId::SigmaJ, SummandId::DesuspendedEllTc(p)];
            sq.weak_equivalence = Some(SummandId::EllTc(p));
            sq.k_s_simplified = Some(vec![SummandId::SigmaC, SummandId::CpInfinity(p - 1)]);
        }
        i => {
            sq.k_z = vec![SummandId::Y(i)];
            sq.tc_s = vec![SummandId::SigmaCp(i as i64 - 1)];
            sq.tc_z = vec![SummandId::DesuspendedEllTc(i)];
        }
    }
    Ok(sq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> GroupValue {
        GroupValue::cyclic(n)
    }

    #[test]
    fn tc_s() {
        assert_eq!(tc_s_torsion(3, 14).unwrap(), direct_sum(&[z(3), z(9)]));
        assert_eq!(tc_s_torsion(3, 3).unwrap(), z(3));
        assert!(tc_s_torsion(5, 2).unwrap().is_trivial());
        assert!(tc_s_torsion(3, 30).is_err());
        assert_eq!(tc_s_free_rank(0), 1);
        assert_eq!(tc_s_free_rank(-1), 1);
        assert_eq!(tc_s_free_rank(2), 0);
        assert_eq!(tc_s_free_rank(-3), 0);
        assert_eq!(tc_s_free_rank(7), 1);
    }

    #[test]
    fn tc_z() {
        let g = tc_z_homotopy(3, -1).unwrap();
        assert_eq!((g.free_rank, g.torsion.is_trivial()), (crate::abgroups::FreeRank::Known(1), true));
        let g = tc_z_homotopy(3, 1).unwrap();
        assert_eq!(g.free_rank, crate::abgroups::FreeRank::Known(1));
        assert!(g.torsion.is_trivial());
        let g = tc_z_homotopy(3, 3).unwrap();
        assert_eq!(g.free_rank, crate::abgroups::FreeRank::Known(1));
        assert_eq!(g.torsion, z(3));
        assert_eq!(tc_z_free_summands(3, 3).unwrap(), vec![SummandId::EllTc(0)]);
        assert_eq!(tc_z_free_summands(7, 3).unwrap(), vec![SummandId::EllTc(2)]);
        assert!(tc_z_homotopy(3, -2).is_err());
    }

    #[test]
    fn tc_z_ranks_periodic() {
        for p in [3u64, 5, 7, 11] {
            let period = 2 * (p as i64 - 1);
            for n in 2..=1000 {
                let a = tc_z_free_summands(p, n).unwrap().len();
                let b = tc_z_free_summands(p, n + period).unwrap().len();
                assert_eq!(a, b, "p={p} n={n}");
                assert_eq!(a as u32, tc_s_free_rank(n), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn pairing() {
        let t = trace_pairing(5).unwrap();
        assert_eq!(t.pairs, vec![(0, 5), (1, 2), (2, 3), (3, 0)]);
        for p in [3u64, 5, 7, 11, 13, 691] {
            let t = trace_pairing(p).unwrap();
            assert_eq!(t.target(p - 2), Some(0));
            let mut image: Vec<u64> = t.pairs.iter().map(|x| x.1).collect();
            image.sort();
            let mut expected = ell_tc_indices(p);
            expected.sort();
            assert_eq!(image, expected);
            assert!(!image.contains(&1));
            assert_eq!(t.weak_equivalences, vec![(0, p)]);
        }
    }

    #[test]
    fn squares() {
        let s = eigensummand(5, 3).unwrap();
        assert_eq!(s.k_s, vec![SummandId::K(3)]);
        assert_eq!(s.k_z, vec![SummandId::Y(3)]);
        assert_eq!(s.tc_s, vec![SummandId::SigmaCp(2)]);
        assert_eq!(s.tc_z, vec![SummandId::DesuspendedEllTc(3)]);
        let s1 = eigensummand(7, 1).unwrap();
        assert_eq!(s1.k_z, vec![SummandId::Y(0)]);
        assert_eq!(s1.weak_equivalence, Some(SummandId::EllTc(7)));
        assert_eq!(
            s1.k_s_simplified,
            Some(vec![SummandId::SigmaC, SummandId::CpInfinity(6)])
        );
        assert!(eigensummand(7, 0).unwrap().k_z.contains(&SummandId::J));
        assert!(eigensummand(5, 4).is_err());
        let json = serde_json::to_value(eigensummand(5, 2).unwrap()).unwrap();
        assert_eq!(json["tc_z"][0], "Σ⁻¹ℓTC(2)");
    }

    #[test]
    fn linearization_facts() {
        const { assert!(LINEARIZATION_ZERO_ON_CP_TORSION) };
        const { assert!(LINEARIZATION_UNIT_SPLIT_SURJECTIVE) };
        const { assert!(LINEARIZATION_SUSPENDED_UNIT_ISO_PI1) };
    }
}
