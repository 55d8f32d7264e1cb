//! Finite abelian groups as multisets of cyclic prime-power factors, and
//! certainty-tagged group values.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::primes::{factor_u64, is_prime, is_probable_prime_big};

/// A finite abelian group `⊕ Z/q^e`, stored sorted by `(q, e)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionGroup {
    factors: Vec<(u64, u32)>,
}

impl TorsionGroup {
    pub fn trivial() -> Self {
        TorsionGroup::default()
    }

    /// `Z/q^e`; `e = 0` gives the trivial group.
    ///
    /// # Panics
    /// If `q` is not prime.
    pub fn cyclic_prime_power(q: u64, e: u32) -> Self {
        assert!(is_prime(q), "{q} is not prime");
        if e == 0 {
            TorsionGroup::trivial()
        } else {
            TorsionGroup { factors: vec![(q, e)] }
        }
    }

    /// `Z/n`, split into its primary parts. `n = 1` is trivial.
    pub fn cyclic(n: u64) -> Self {
        assert!(n > 0, "Z/0 is not finite");
        TorsionGroup::from_factors(factor_u64(n))
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (u64, u32)>) -> Self {
        let mut factors: Vec<(u64, u32)> = factors.into_iter().filter(|&(_, e)| e > 0).collect();
        for &(q, _) in &factors {
            assert!(is_prime(q), "{q} is not prime");
        }
        factors.sort_unstable();
        TorsionGroup { factors }
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, &(q, e)| acc * BigUint::from(q).pow(e))
    }

    pub fn sum(&self, other: &TorsionGroup) -> TorsionGroup {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        factors.sort_unstable();
        TorsionGroup { factors }
    }

    /// The `q`-primary part.
    pub fn primary_part(&self, q: u64) -> TorsionGroup {
        TorsionGroup {
            factors: self.factors.iter().copied().filter(|&(r, _)| r == q).collect(),
        }
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factors.iter().map(|&(q, _)| q).collect();
        ps.dedup();
        ps
    }

    /// `(q, e, multiplicity)` triples in canonical order.
    pub fn counted(&self) -> Vec<(u64, u32, u32)> {
        let mut out: Vec<(u64, u32, u32)> = Vec::new();
        for &(q, e) in &self.factors {
            match out.last_mut() {
                Some(last) if last.0 == q && last.1 == e => last.2 += 1,
                _ => out.push((q, e, 1)),
            }
        }
        out
    }

    pub fn render(&self, style: Style) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        // within one prime, larger cyclic factors first
        let mut blocks = self.counted();
        blocks.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let parts: Vec<String> = blocks
            .into_iter()
            .map(|(q, e, c)| {
                let n = BigUint::from(q).pow(e);
                let z = match style {
                    Style::Ascii => format!("Z/{n}"),
                    Style::Latex => format!("\\mathbb{{Z}}/{n}"),
                };
                match (c, style) {
                    (1, _) => z,
                    (_, Style::Ascii) => format!("({z})^{c}"),
                    (_, Style::Latex) => format!("({z})^{{{c}}}"),
                }
            })
            .collect();
        parts.join(style.times())
    }
}

impl fmt::Display for TorsionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Ascii))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Ascii,
    Latex,
}

impl Style {
    fn times(self) -> &'static str {
        match self {
            Style::Ascii => "×",
            Style::Latex => "\\times",
        }
    }
}

pub const UNKNOWN_SYMBOL: &str = "[?]";

/// A group together with how much of it is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Repr", try_from = "Repr")]
pub enum GroupValue {
    /// Full structure known. `conditions` lists conjectures it was assembled under.
    Exact {
        group: TorsionGroup,
        conditions: Vec<String>,
    },
    /// Order known, isomorphism class not. The order is never 1 or prime.
    OrderOnly { order: BigUint, note: String },
    /// Finite, order unknown. `symbol` is what a table prints in its place.
    UnknownFinite { symbol: String, note: String },
    /// Zero provided `condition` holds.
    ConjecturallyZero { condition: String },
}

impl GroupValue {
    pub fn trivial() -> Self {
        GroupValue::exact(TorsionGroup::trivial())
    }

    pub fn exact(group: TorsionGroup) -> Self {
        GroupValue::Exact {
            group,
            conditions: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        GroupValue::exact(TorsionGroup::cyclic(n))
    }

    pub fn cyclic_prime_power(q: u64, e: u32) -> Self {
        GroupValue::exact(TorsionGroup::cyclic_prime_power(q, e))
    }

    /// A group known only by its order. Orders 1 and primes have a single
    /// isomorphism class and become `Exact`.
    pub fn order_only(order: BigUint, note: impl Into<String>) -> Self {
        assert!(order > BigUint::from(0u32), "order must be positive");
        if order.is_one() {
            return GroupValue::trivial();
        }
        if is_probable_prime_big(&order) {
            if let Some(q) = order.to_u64() {
                return GroupValue::cyclic_prime_power(q, 1);
            }
        }
        GroupValue::OrderOnly {
            order,
            note: note.into(),
        }
    }

    pub fn unknown(note: impl Into<String>) -> Self {
        GroupValue::unknown_with_symbol(UNKNOWN_SYMBOL, note)
    }

    pub fn unknown_with_symbol(symbol: impl Into<String>, note: impl Into<String>) -> Self {
        GroupValue::UnknownFinite {
            symbol: symbol.into(),
            note: note.into(),
        }
    }

    pub fn conjecturally_zero(condition: impl Into<String>) -> Self {
        GroupValue::ConjecturallyZero {
            condition: condition.into(),
        }
    }

    pub fn as_exact(&self) -> Option<&TorsionGroup> {
        match self {
            GroupValue::Exact { group, .. } => Some(group),
            _ => None,
        }
    }

    /// True for an unconditional trivial group.
    pub fn is_trivial(&self) -> bool {
        matches!(self, GroupValue::Exact { group, conditions } if group.is_trivial() && conditions.is_empty())
    }

    pub fn order(&self) -> Option<BigUint> {
        match self {
            GroupValue::Exact { group, .. } => Some(group.order()),
            GroupValue::OrderOnly { order, .. } => Some(order.clone()),
            GroupValue::ConjecturallyZero { .. } => Some(BigUint::one()),
            GroupValue::UnknownFinite { .. } => None,
        }
    }

    /// Provenance notes and conditions attached to the value.
    pub fn notes(&self) -> Vec<&str> {
        match self {
            GroupValue::Exact { conditions, .. } => conditions.iter().map(String::as_str).collect(),
            GroupValue::OrderOnly { note, .. } | GroupValue::UnknownFinite { note, .. } => {
                if note.is_empty() {
                    vec![]
                } else {
                    vec![note.as_str()]
                }
            }
            GroupValue::ConjecturallyZero { condition } => vec![condition.as_str()],
        }
    }

    /// The same value with provenance notes and conditions dropped.
    pub fn without_notes(&self) -> GroupValue {
        match self {
            GroupValue::Exact { group, .. } => GroupValue::exact(group.clone()),
            GroupValue::OrderOnly { order, .. } => GroupValue::OrderOnly {
                order: order.clone(),
                note: String::new(),
            },
            GroupValue::UnknownFinite { symbol, .. } => GroupValue::UnknownFinite {
                symbol: symbol.clone(),
                note: String::new(),
            },
            GroupValue::ConjecturallyZero { .. } => GroupValue::ConjecturallyZero {
                condition: String::new(),
            },
        }
    }

    pub fn render(&self, style: Style) -> String {
        match self {
            GroupValue::Exact { group, conditions } => {
                let body = group.render(style);
                if conditions.is_empty() {
                    body
                } else {
                    format!("{body}*")
                }
            }
            GroupValue::OrderOnly { order, .. } => format!("[{order}]"),
            GroupValue::UnknownFinite { symbol, .. } => match style {
                Style::Ascii => symbol.clone(),
                Style::Latex => latex_symbol(symbol),
            },
            GroupValue::ConjecturallyZero { .. } => "0*".to_string(),
        }
    }

    /// `render` followed by the attached notes in parentheses.
    pub fn render_with_notes(&self, style: Style) -> String {
        let body = self.render(style);
        let notes = self.notes();
        if notes.is_empty() {
            body
        } else {
            format!("{body} ({})", notes.join("; "))
        }
    }
}

impl Default for GroupValue {
    fn default() -> Self {
        GroupValue::trivial()
    }
}

impl fmt::Display for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Ascii))
    }
}

fn latex_symbol(symbol: &str) -> String {
    if let Some(rest) = symbol.strip_prefix("K_") {
        if let Some(n) = rest.strip_suffix("(Z)") {
            return format!("K_{{{n}}}(\\mathbb{{Z}})");
        }
    }
    if let Some(inner) = symbol.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        if let Some((base, exp)) = inner.split_once('^') {
            return format!("[{base}^{{{exp}}}]");
        }
    }
    symbol.to_string()
}

fn push_unique(into: &mut Vec<String>, note: &str) {
    if !note.is_empty() && !into.iter().any(|n| n == note) {
        into.push(note.to_string());
    }
}

/// `⊕` of certainty-tagged values.
///
/// Unknown summands dominate, then order-only ones; conjecturally-zero
/// summands contribute nothing but their condition.
pub fn direct_sum<'a>(values: impl IntoIterator<Item = &'a GroupValue>) -> GroupValue {
    let mut exact = TorsionGroup::trivial();
    let mut order_only: Option<BigUint> = None;
    let mut unknown: Vec<String> = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    let mut conditions: Vec<String> = Vec::new();

    for v in values {
        match v {
            GroupValue::Exact { group, conditions: c } => {
                exact = exact.sum(group);
                c.iter().for_each(|n| push_unique(&mut conditions, n));
            }
            GroupValue::OrderOnly { order, note } => {
                order_only = Some(order_only.unwrap_or_else(BigUint::one) * order);
                push_unique(&mut notes, note);
            }
            GroupValue::UnknownFinite { symbol, note } => {
                unknown.push(symbol.clone());
                push_unique(&mut notes, note);
            }
            GroupValue::ConjecturallyZero { condition } => push_unique(&mut conditions, condition),
        }
    }

    // order-independent result
    unknown.sort();
    notes.sort();
    conditions.sort();

    if !unknown.is_empty() {
        conditions.iter().for_each(|c| push_unique(&mut notes, c));
        let symbol = if unknown.len() == 1 {
            unknown.pop().unwrap_or_default()
        } else {
            unknown.join(" ⊕ ")
        };
        return GroupValue::UnknownFinite {
            symbol,
            note: notes.join("; "),
        };
    }
    if let Some(order) = order_only {
        conditions.iter().for_each(|c| push_unique(&mut notes, c));
        return GroupValue::OrderOnly {
            order: order * exact.order(),
            note: notes.join("; "),
        };
    }
    if exact.is_trivial() && !conditions.is_empty() {
        return GroupValue::ConjecturallyZero {
            condition: conditions.join("; "),
        };
    }
    GroupValue::Exact {
        group: exact,
        conditions,
    }
}

/// Parses the ascii notation produced by [`GroupValue::render`].
///
/// Accepted: `0`, `0*`, `Z/8×Z/3`, `(Z/2)^3`, `[64]`, `[2^?]`, `[?]`, `K_8(Z)`.
/// `x` is accepted in place of `×`. `Z/n` with composite `n` is split into
/// primary parts.
pub fn parse(input: &str) -> Result<GroupValue> {
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s = input.trim();
    match s {
        "" => return Err(err("empty input")),
        "0" => return Ok(GroupValue::trivial()),
        "0*" => return Ok(GroupValue::conjecturally_zero("")),
        _ => {}
    }
    if s.starts_with('[') && s.ends_with(']') {
        let inner = &s[1..s.len() - 1];
        if let Ok(order) = inner.parse::<BigUint>() {
            if order < BigUint::from(2u32) {
                return Err(err("order must be at least 2"));
            }
            return Ok(GroupValue::order_only(order, ""));
        }
        return Ok(GroupValue::unknown_with_symbol(s, ""));
    }
    if s.starts_with("K_") && s.ends_with("(Z)") && s[2..s.len() - 3].parse::<u64>().is_ok() {
        return Ok(GroupValue::unknown_with_symbol(s, ""));
    }

    let mut group = TorsionGroup::trivial();
    for term in s.split(['×', 'x']) {
        let term = term.trim();
        let (cyclic, count) = match term.strip_prefix('(') {
            Some(rest) => {
                let (inner, exp) = rest.split_once(")^").ok_or_else(|| err("expected (Z/n)^k"))?;
                let count: u32 = exp.parse().map_err(|_| err("bad multiplicity"))?;
                if count == 0 {
                    return Err(err("multiplicity must be positive"));
                }
                (inner, count)
            }
            None => (term, 1),
        };
        let n: u64 = cyclic
            .strip_prefix("Z/")
            .ok_or_else(|| err("expected Z/n"))?
            .parse()
            .map_err(|_| err("bad cyclic order"))?;
        if n < 2 {
            return Err(err("cyclic order must be at least 2"));
        }
        let z = TorsionGroup::cyclic(n);
        for _ in 0..count {
            group = group.sum(&z);
        }
    }
    Ok(GroupValue::exact(group))
}

/// Free rank of a homotopy group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FreeRank {
    Known(u32),
    NotComputed,
}

/// One degree of one spectrum: free rank plus torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyGroup {
    pub degree: i64,
    pub free_rank: FreeRank,
    pub torsion: GroupValue,
}

impl HomotopyGroup {
    pub fn new(degree: i64, free_rank: u32, torsion: GroupValue) -> Self {
        HomotopyGroup {
            degree,
            free_rank: FreeRank::Known(free_rank),
            torsion,
        }
    }

    /// Ascii rendering: `Z`, `Z^r`, or `Z^?` for the free part, then the torsion.
    pub fn render(&self, style: Style) -> String {
        let z = match style {
            Style::Ascii => "Z",
            Style::Latex => "\\mathbb{Z}",
        };
        let free = match self.free_rank {
            FreeRank::Known(0) => None,
            FreeRank::Known(1) => Some(z.to_string()),
            FreeRank::Known(r) => Some(format!("{z}^{r}")),
            FreeRank::NotComputed => Some(format!("{z}^?")),
        };
        let sep = match style {
            Style::Ascii => " ⊕ ",
            Style::Latex => " \\oplus ",
        };
        match (free, self.torsion.is_trivial()) {
            (None, _) => self.torsion.render(style),
            (Some(f), true) => f,
            (Some(f), false) => format!("{f}{sep}{}", self.torsion.render(style)),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Repr {
    Exact {
        factors: Vec<FactorRepr>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        conditions: Vec<String>,
    },
    OrderOnly {
        order: OrderRepr,
        #[serde(default, skip_serializing_if = "String::is_empty")]
        note: String,
    },
    Unknown {
        #[serde(default = "default_symbol")]
        symbol: String,
        #[serde(default)]
        note: String,
    },
    ConjecturallyZero {
        condition: String,
    },
}

fn default_symbol() -> String {
    UNKNOWN_SYMBOL.to_string()
}

#[derive(Serialize, Deserialize)]
struct FactorRepr {
    prime: u64,
    exp: u32,
    count: u32,
}

/// Orders that fit in a `u64` are plain JSON numbers, larger ones decimal strings.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OrderRepr {
    Small(u64),
    Big(String),
}

impl From<GroupValue> for Repr {
    fn from(v: GroupValue) -> Self {
        match v {
            GroupValue::Exact { group, conditions } => Repr::Exact {
                factors: group
                    .counted()
                    .into_iter()
                    .map(|(prime, exp, count)| FactorRepr { prime, exp, count })
                    .collect(),
                conditions,
            },
            GroupValue::OrderOnly { order, note } => Repr::OrderOnly {
                order: match order.to_u64() {
                    Some(n) => OrderRepr::Small(n),
                    None => OrderRepr::Big(order.to_string()),
                },
                note,
            },
            GroupValue::UnknownFinite { symbol, note } => Repr::Unknown { symbol, note },
            GroupValue::ConjecturallyZero { condition } => Repr::ConjecturallyZero { condition },
        }
    }
}

impl TryFrom<Repr> for GroupValue {
    type Error = String;

    fn try_from(r: Repr) -> std::result::Result<Self, String> {
        Ok(match r {
            Repr::Exact { factors, conditions } => {
                let mut all = BTreeMap::<(u64, u32), u32>::new();
                for f in factors {
                    if !is_prime(f.prime) || f.exp == 0 || f.count == 0 {
                        return Err(format!(
                            "invalid factor prime={} exp={} count={}",
                            f.prime, f.exp, f.count
                        ));
                    }
                    *all.entry((f.prime, f.exp)).or_default() += f.count;
                }
                let group = TorsionGroup::from_factors(
                    all.into_iter()
                        .flat_map(|(qe, c)| std::iter::repeat_n(qe, c as usize)),
                );
                GroupValue::Exact { group, conditions }
            }
            Repr::OrderOnly { order, note } => {
                let order = match order {
                    OrderRepr::Small(n) => BigUint::from(n),
                    OrderRepr::Big(s) => s.parse().map_err(|_| format!("bad order {s:?}"))?,
                };
                if order < BigUint::from(2u32) {
                    return Err("order_only requires order >= 2".to_string());
                }
                GroupValue::order_only(order, note)
            }
            Repr::Unknown { symbol, note } => GroupValue::UnknownFinite { symbol, note },
            Repr::ConjecturallyZero { condition } => GroupValue::ConjecturallyZero { condition },
        })
    }
}
