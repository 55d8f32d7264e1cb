//! A small prover for vanishing of stable hom-sets between shifted copies of
//! the Adams summand `ℓ` and the image-of-J spectrum `j` at an odd prime.
//!
//! Five base rules cover pairs of cells; wedges distribute, and a cofiber
//! `A → B → C` is handled through its long exact sequence. The prover only
//! ever proves `Zero` or abstains.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::primes::require_odd_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Base {
    Ell,
    J,
}

/// `Σ^shift base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cell {
    pub base: Base,
    pub shift: i64,
}

impl Cell {
    pub fn ell(shift: i64) -> Self {
        Cell {
            base: Base::Ell,
            shift,
        }
    }

    pub fn j(shift: i64) -> Self {
        Cell { base: Base::J, shift }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.base {
            Base::Ell => "ℓ",
            Base::J => "j",
        };
        match self.shift {
            0 => write!(f, "{b}"),
            1 => write!(f, "Σ{b}"),
            s => write!(f, "Σ^{s}{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FormalSpectrum {
    Cell(Cell),
    /// The empty wedge is a point.
    Wedge(Vec<FormalSpectrum>),
    /// Cofiber of some map `source → target`.
    Cofiber {
        source: Box<FormalSpectrum>,
        target: Box<FormalSpectrum>,
    },
}

impl FormalSpectrum {
    pub fn point() -> Self {
        FormalSpectrum::Wedge(Vec::new())
    }

    pub fn ell(shift: i64) -> Self {
        FormalSpectrum::Cell(Cell::ell(shift))
    }

    pub fn j(shift: i64) -> Self {
        FormalSpectrum::Cell(Cell::j(shift))
    }

    pub fn cofiber(source: FormalSpectrum, target: FormalSpectrum) -> Self {
        FormalSpectrum::Cofiber {
            source: Box::new(source),
            target: Box::new(target),
        }
    }

    pub fn suspend(&self, k: i64) -> Self {
        match self {
            FormalSpectrum::Cell(c) => FormalSpectrum::Cell(Cell {
                shift: c.shift + k,
                ..*c
            }),
            FormalSpectrum::Wedge(xs) => {
                FormalSpectrum::Wedge(xs.iter().map(|x| x.suspend(k)).collect())
            }
            FormalSpectrum::Cofiber { source, target } => {
                FormalSpectrum::cofiber(source.suspend(k), target.suspend(k))
            }
        }
    }
}

impl fmt::Display for FormalSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormalSpectrum::Cell(c) => write!(f, "{c}"),
            FormalSpectrum::Wedge(xs) if xs.is_empty() => write!(f, "*"),
            FormalSpectrum::Wedge(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(" ∨ "))
            }
            FormalSpectrum::Cofiber { source, target } => write!(f, "C({source} → {target})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VanishingVerdict {
    Zero,
    NotDetermined,
}

/// The base rule that applied to a pair of cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CellRule {
    /// `[ℓ, Σ^q ℓ] = 0` for `q ≢ 0 (mod 2p-2)`, `q < 2(2p-2)`.
    EllEll,
    /// `[j, Σ^q ℓ] = 0` under the same condition.
    JEll,
    /// `[Σ^q ℓ, j] = 0` for `q ≢ -1 (mod 2p-2)`, `q >= -(2p-2)`.
    EllJ,
    /// `[Σ^{-1} ℓ, j] = 0`.
    EllJMinusOne,
    /// `[j, Σj] = 0` and `[Σj, j] = 0`.
    JJ,
}

/// Decides `[x, y]` for two cells.
pub fn hom_cell(p: u64, x: Cell, y: Cell) -> (VanishingVerdict, Option<CellRule>) {
    let period = 2 * p as i64 - 2;
    let r = y.shift - x.shift;
    let ell_target = |q: i64| q.rem_euclid(period) != 0 && q < 2 * period;
    let rule = match (x.base, y.base) {
        (Base::Ell, Base::Ell) => ell_target(r).then_some(CellRule::EllEll),
        (Base::J, Base::Ell) => ell_target(r).then_some(CellRule::JEll),
        (Base::Ell, Base::J) => {
            let q = -r;
            if q.rem_euclid(period) != period - 1 && q >= -period {
                Some(CellRule::EllJ)
            } else if q == -1 {
                Some(CellRule::EllJMinusOne)
            } else {
                None
            }
        }
        (Base::J, Base::J) => (r == 1 || r == -1).then_some(CellRule::JJ),
    };
    match rule {
        Some(rule) => (VanishingVerdict::Zero, Some(rule)),
        None => (VanishingVerdict::NotDetermined, None),
    }
}

/// A verdict with the steps that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub verdict: VanishingVerdict,
    pub trace: Vec<String>,
}

impl Certificate {
    pub fn is_zero(&self) -> bool {
        self.verdict == VanishingVerdict::Zero
    }
}

pub fn hom_formal(p: u64, x: &FormalSpectrum, y: &FormalSpectrum) -> Result<Certificate> {
    require_odd_prime(p)?;
    let mut trace = Vec::new();
    let verdict = if prove(p, x, y, 0, &mut trace) {
        VanishingVerdict::Zero
    } else {
        VanishingVerdict::NotDetermined
    };
    Ok(Certificate { verdict, trace })
}

fn prove(p: u64, x: &FormalSpectrum, y: &FormalSpectrum, depth: usize, trace: &mut Vec<String>) -> bool {
    let pad = "  ".repeat(depth);
    match (x, y) {
        (FormalSpectrum::Wedge(xs), _) => {
            trace.push(format!("{pad}[{x}, {y}]: wedge in source, {} summands", xs.len()));
            xs.iter().all(|a| prove(p, a, y, depth + 1, trace))
        }
        (_, FormalSpectrum::Wedge(ys)) => {
            trace.push(format!("{pad}[{x}, {y}]: wedge in target, {} summands", ys.len()));
            ys.iter().all(|b| prove(p, x, b, depth + 1, trace))
        }
        (FormalSpectrum::Cofiber { source, target }, _) => {
            let shifted = source.suspend(1);
            trace.push(format!(
                "{pad}[{x}, {y}]: exact [{shifted}, {y}] → [{x}, {y}] → [{target}, {y}]"
            ));
            prove(p, target, y, depth + 1, trace) && prove(p, &shifted, y, depth + 1, trace)
        }
        (_, FormalSpectrum::Cofiber { source, target }) => {
            let shifted = source.suspend(1);
            trace.push(format!(
                "{pad}[{x}, {y}]: exact [{x}, {target}] → [{x}, {y}] → [{x}, {shifted}]"
            ));
            prove(p, x, target, depth + 1, trace) && prove(p, x, &shifted, depth + 1, trace)
        }
        (FormalSpectrum::Cell(a), FormalSpectrum::Cell(b)) => {
            let (verdict, rule) = hom_cell(p, *a, *b);
            match rule {
                Some(rule) => trace.push(format!("{pad}[{a}, {b}] = 0 by {rule:?}")),
                None => trace.push(format!("{pad}[{a}, {b}]: no rule applies")),
            }
            verdict == VanishingVerdict::Zero
        }
    }
}

/// Model of the `i`-th summand of `TC(Z)`.
pub fn x_model(p: u64, i: u64) -> Result<FormalSpectrum> {
    check_index(p, i)?;
    let p = p as i64;
    Ok(match i {
        0 => FormalSpectrum::Wedge(vec![FormalSpectrum::j(0), FormalSpectrum::ell(-1)]),
        1 => FormalSpectrum::Wedge(vec![FormalSpectrum::j(1), FormalSpectrum::ell(2 * p - 1)]),
        i => FormalSpectrum::ell(2 * i as i64 - 1),
    })
}

/// Model of the `i`-th summand of `K̃(Z)`.
pub fn y_model(p: u64, i: u64) -> Result<FormalSpectrum> {
    check_index(p, i)?;
    Ok(if i == 0 {
        FormalSpectrum::ell(2 * p as i64 - 1)
    } else if i == 1 || i == p - 2 {
        FormalSpectrum::point()
    } else {
        let s = 2 * i as i64 - 1;
        FormalSpectrum::cofiber(FormalSpectrum::ell(s), FormalSpectrum::ell(s))
    })
}

fn check_index(p: u64, i: u64) -> Result<()> {
    require_odd_prime(p)?;
    if i > p - 2 {
        return Err(Error::IndexOutOfRange { index: i, p });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClaimFamily {
    /// `[x(i), x(i')] = 0` for `i ≠ i'`.
    TcSummands,
    /// `[x(i), Σ^k j] = 0` for `k ∈ {0, 1}`, `i ≠ k`.
    TcSplitJ,
    /// `[j, K̃(Z)] = 0` and `[K̃(Z), j] = 0`.
    JVersusReducedKz,
    /// `[y_i, y_i'] = 0` for `i ≠ i'`.
    KzSummands,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub family: ClaimFamily,
    pub label: String,
    pub source: FormalSpectrum,
    pub target: FormalSpectrum,
}

/// Every vanishing statement about the `TC(Z)` and `K(Z)` splittings at `p`.
pub fn vanishing_claims(p: u64) -> Result<Vec<Claim>> {
    require_odd_prime(p)?;
    let idx: Vec<u64> = (0..=p - 2).collect();
    let mut out = Vec::new();
    for &i in &idx {
        for &k in &idx {
            if i != k {
                out.push(Claim {
                    family: ClaimFamily::TcSummands,
                    label: format!("[x({i}), x({k})]"),
                    source: x_model(p, i)?,
                    target: x_model(p, k)?,
                });
            }
        }
    }
    for k in 0..=1u64 {
        for &i in idx.iter().filter(|&&i| i != k) {
            out.push(Claim {
                family: ClaimFamily::TcSplitJ,
                label: format!("[x({i}), Σ^{k}j]"),
                source: x_model(p, i)?,
                target: FormalSpectrum::j(k as i64),
            });
        }
    }
    let ktz = FormalSpectrum::Wedge(idx.iter().map(|&i| y_model(p, i)).collect::<Result<_>>()?);
    out.push(Claim {
        family: ClaimFamily::JVersusReducedKz,
        label: "[j, K̃(Z)]".into(),
        source: FormalSpectrum::j(0),
        target: ktz.clone(),
    });
    out.push(Claim {
        family: ClaimFamily::JVersusReducedKz,
        label: "[K̃(Z), j]".into(),
        source: ktz,
        target: FormalSpectrum::j(0),
    });
    for &i in &idx {
        for &k in &idx {
            if i != k {
                out.push(Claim {
                    family: ClaimFamily::KzSummands,
                    label: format!("[y_{i}, y_{k}]"),
                    source: y_model(p, i)?,
                    target: y_model(p, k)?,
                });
            }
        }
    }
    Ok(out)
}

/// Runs the prover on every claim.
pub fn certify_all(p: u64) -> Result<Vec<(Claim, Certificate)>> {
    vanishing_claims(p)?
        .into_iter()
        .map(|c| {
            let cert = hom_formal(p, &c.source, &c.target)?;
            Ok((c, cert))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_rules() {
        assert_eq!(hom_cell(5, Cell::ell(0), Cell::ell(3)).0, VanishingVerdict::Zero);
        assert_eq!(hom_cell(5, Cell::j(0), Cell::j(1)).1, Some(CellRule::JJ));
        assert_eq!(hom_cell(5, Cell::j(1), Cell::j(0)).1, Some(CellRule::JJ));
        assert_eq!(hom_cell(5, Cell::ell(0), Cell::ell(8)).0, VanishingVerdict::NotDetermined);
        // boundary of the ℓ-ℓ rule is not a vanishing statement
        assert_eq!(hom_cell(5, Cell::ell(0), Cell::ell(17)).0, VanishingVerdict::NotDetermined);
        assert_eq!(hom_cell(5, Cell::ell(-1), Cell::j(0)).1, Some(CellRule::EllJMinusOne));
        assert_eq!(hom_cell(5, Cell::ell(2), Cell::j(0)).1, Some(CellRule::EllJ));
        assert_eq!(hom_cell(5, Cell::ell(7), Cell::j(0)).0, VanishingVerdict::NotDetermined);
        assert_eq!(hom_cell(5, Cell::ell(-9), Cell::j(0)).0, VanishingVerdict::NotDetermined);
        assert_eq!(hom_cell(5, Cell::j(0), Cell::ell(3)).1, Some(CellRule::JEll));
    }

    #[test]
    fn identity_is_never_zero() {
        for p in [3, 5, 7] {
            for x in [FormalSpectrum::ell(0), FormalSpectrum::j(0), FormalSpectrum::ell(5)] {
                assert!(!hom_formal(p, &x, &x).unwrap().is_zero());
            }
            for i in 2..p.saturating_sub(2) {
                let y = y_model(p, i).unwrap();
                assert!(!hom_formal(p, &y, &y).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn models() {
        assert_eq!(y_model(5, 0).unwrap(), FormalSpectrum::ell(9));
        assert_eq!(y_model(5, 1).unwrap(), FormalSpectrum::point());
        assert_eq!(y_model(5, 3).unwrap(), FormalSpectrum::point());
        assert!(matches!(y_model(5, 2).unwrap(), FormalSpectrum::Cofiber { .. }));
        assert_eq!(x_model(7, 3).unwrap(), FormalSpectrum::ell(5));
        assert!(x_model(5, 4).is_err());
        assert_eq!(x_model(3, 0).unwrap().to_string(), "(j ∨ Σ^-1ℓ)");
    }

    #[test]
    fn all_claims_certified() {
        for p in [3, 5, 7, 11, 13] {
            for (claim, cert) in certify_all(p).unwrap() {
                assert!(cert.is_zero(), "p={p} {}: {}", claim.label, cert.trace.join("\n"));
            }
        }
    }

    #[test]
    fn trace_mentions_exact_sequences() {
        let cert = hom_formal(7, &y_model(7, 2).unwrap(), &y_model(7, 3).unwrap()).unwrap();
        assert!(cert.is_zero());
        assert!(cert.trace.iter().any(|l| l.contains("exact")));
        assert!(cert.trace.iter().any(|l| l.contains("EllEll")));
    }
}
