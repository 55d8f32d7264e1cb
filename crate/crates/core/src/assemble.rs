//! Assembly of `π_n K(S)`: per-prime torsion, the six-column breakdown of
//! the low-degree table, and its renderings.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::abgroups::{self, direct_sum, GroupValue, HomotopyGroup, Style};
use crate::cpbar::{cp_discrepancy_report, cp_torsion, CpMode};
use crate::error::{Error, Result};
use crate::kzeta::{ktz_torsion_with, kz_torsion_with, KV_GLOSS};
use crate::numtheory::primes::{factor_big, odd_primes_up_to, require_odd_prime};
use crate::numtheory::{bernoulli_exact, BigRat};
use crate::par::{self, Execution};
use crate::params::Params;
use crate::stems::{classical_stem_row, coker_j_torsion, sphere_torsion, STEM_TABLE_MAX};

/// Rank of `π_n K(S)` modulo torsion.
pub fn free_rank(n: i64) -> u32 {
    u32::from(n == 0 || (n % 4 == 1 && n > 1))
}

/// p-torsion of `π_n K(S)` from `S ∨ Σc ∨ ΣC̄P∞₋₁ ∨ K̃(Z)`.
pub fn ks_torsion_at_p(p: u64, n: i64) -> Result<GroupValue> {
    ks_torsion_at_p_with(p, n, &Params::default())
}

pub fn ks_torsion_at_p_with(p: u64, n: i64, params: &Params) -> Result<GroupValue> {
    require_odd_prime(p)?;
    let parts = [
        sphere_torsion(p, n)?,
        coker_j_torsion(p, n - 1)?,
        cp_torsion(p, n, params.cp_mode)?,
        ktz_torsion_with(p, n, params)?,
    ];
    Ok(direct_sum(&parts))
}

/// The same torsion from `c ∨ Σc ∨ ΣC̄P∞₋₁ ∨ K(Z)`.
pub fn ks_torsion_at_p_via_kz(p: u64, n: i64, params: &Params) -> Result<GroupValue> {
    require_odd_prime(p)?;
    let parts = [
        coker_j_torsion(p, n)?,
        coker_j_torsion(p, n - 1)?,
        cp_torsion(p, n, params.cp_mode)?,
        kz_torsion_with(p, n, params)?,
    ];
    Ok(direct_sum(&parts))
}

/// `π_n K(S)` at `p`: free rank and p-torsion.
pub fn ks_homotopy_at_p(p: u64, n: i64, params: &Params) -> Result<HomotopyGroup> {
    Ok(HomotopyGroup::new(n, free_rank(n), ks_torsion_at_p_with(p, n, params)?))
}

/// Odd primes that can contribute torsion to `π_n K(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContributingPrimes {
    pub primes: Vec<u64>,
    /// `n ≡ 0 mod 4`, `n >= 8`: irregular primes would contribute unless
    /// Kummer-Vandiver holds for them.
    pub kv_marker: bool,
    /// Cofactors of the Bernoulli numerator that could not be factored.
    #[serde(serialize_with = "decimal_strings")]
    pub unresolved: Vec<BigUint>,
}

pub fn contributing_primes(n: i64) -> ContributingPrimes {
    let mut primes = if n >= 3 {
        odd_primes_up_to(((n + 3) / 2) as u64)
    } else {
        Vec::new()
    };
    let mut unresolved = Vec::new();
    if n >= 2 && n % 4 == 2 {
        let m = (n + 2) / 2;
        let q = bernoulli_exact(m as usize) / BigRat::from_integer(m);
        let num = q.numer().magnitude().clone();
        let f = factor_big(&num);
        for (prime, _) in f.primes {
            match prime.to_u64() {
                Some(2) => {}
                Some(small) => primes.push(small),
                None => unresolved.push(prime),
            }
        }
        unresolved.extend(f.unresolved);
    }
    primes.sort_unstable();
    primes.dedup();
    ContributingPrimes {
        primes,
        kv_marker: n >= 8 && n % 4 == 0,
        unresolved,
    }
}

fn decimal_strings<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// The six columns of one row of the `π_n K(S)` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandBreakdown {
    pub n: i64,
    pub free_rank: u32,
    /// All torsion of `π_n S`.
    pub col2: GroupValue,
    /// Remaining 2-torsion.
    pub col3: GroupValue,
    /// `Σc`, odd primes.
    pub col4: GroupValue,
    /// `ΣC̄P∞₋₁`, odd primes.
    pub col5: GroupValue,
    /// `K̃(Z)`, odd primes.
    pub col6: GroupValue,
}

impl SummandBreakdown {
    pub fn torsion_columns(&self) -> [&GroupValue; 5] {
        [&self.col2, &self.col3, &self.col4, &self.col5, &self.col6]
    }

    pub fn total_torsion(&self) -> GroupValue {
        direct_sum(self.torsion_columns())
    }

    /// Nontrivial cells joined by `⊕`, free part first; `0` for the zero group.
    pub fn render_row(&self, style: Style) -> String {
        let (z, sep) = match style {
            Style::Ascii => ("Z", " ⊕ "),
            Style::Latex => ("\\mathbb{Z}", " \\oplus "),
        };
        let mut cells: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            cells.push(z.to_string());
        }
        cells.extend(
            self.torsion_columns()
                .iter()
                .filter(|c| !c.is_trivial())
                .map(|c| c.render(style)),
        );
        if cells.is_empty() {
            "0".to_string()
        } else {
            cells.join(sep)
        }
    }
}

/// Row `n <= 22` of the table.
pub fn ks_group(n: i64) -> Result<SummandBreakdown> {
    ks_group_with(n, &Params::default())
}

pub fn ks_group_with(n: i64, params: &Params) -> Result<SummandBreakdown> {
    let stem = classical_stem_row(n)?;
    let support = contributing_primes(n);
    let mut col4 = Vec::new();
    let mut col5 = Vec::new();
    let mut col6 = Vec::new();
    for &p in &support.primes {
        col4.push(coker_j_torsion(p, n - 1)?);
        col5.push(cp_torsion(p, n, params.cp_mode)?);
        col6.push(ktz_torsion_with(p, n, params)?);
    }
    let col6 = if support.kv_marker {
        GroupValue::unknown_with_symbol(format!("K_{n}(Z)"), KV_GLOSS)
    } else {
        direct_sum(&col6)
    };
    Ok(SummandBreakdown {
        n,
        free_rank: free_rank(n),
        col2: stem.torsion_of_s.clone(),
        col3: stem.extra_2_torsion.clone(),
        col4: direct_sum(&col4),
        col5: direct_sum(&col5),
        col6,
    })
}

/// Rows `0..=max_n`, computed independently; output order is by `n`.
pub fn table_rows(max_n: i64, params: &Params, exec: Execution) -> Result<Vec<SummandBreakdown>> {
    if max_n > STEM_TABLE_MAX {
        return Err(Error::out_of_range(crate::stems::STEM_TABLE_NAME, max_n, STEM_TABLE_MAX));
    }
    let ns: Vec<i64> = (0..=max_n).collect();
    par::map(ns, exec, |n| ks_group_with(n, params)).into_iter().collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    #[default]
    Ascii,
    Markdown,
    Latex,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" | "text" => Ok(TableFormat::Ascii),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            "latex" | "tex" => Ok(TableFormat::Latex),
            "json" => Ok(TableFormat::Json),
            _ => Err(Error::Config(format!("unknown format {s:?}"))),
        }
    }
}

const COLUMN_TITLES: [&str; 6] = [
    "free",
    "torsion of S",
    "other 2-torsion",
    "Σc (odd p)",
    "ΣC̄P∞₋₁ (odd p)",
    "K̃(Z) (odd p)",
];

fn cell(value: &GroupValue, style: Style) -> String {
    if value.is_trivial() {
        String::new()
    } else {
        value.render(style)
    }
}

pub fn render_table(rows: &[SummandBreakdown], format: TableFormat) -> Result<String> {
    let mut out = String::new();
    match format {
        TableFormat::Ascii => {
            for r in rows {
                writeln!(out, "{:>2}  {}", r.n, r.render_row(Style::Ascii)).unwrap();
            }
        }
        TableFormat::Markdown => {
            writeln!(out, "| n | {} |", COLUMN_TITLES.join(" | ")).unwrap();
            writeln!(out, "|---:|{}", "---|".repeat(COLUMN_TITLES.len())).unwrap();
            for r in rows {
                let mut cells = vec![if r.free_rank == 1 { "Z".to_string() } else { String::new() }];
                cells.extend(r.torsion_columns().iter().map(|c| cell(c, Style::Ascii)));
                writeln!(out, "| {} | {} |", r.n, cells.join(" | ")).unwrap();
            }
        }
        TableFormat::Latex => {
            writeln!(out, "\\begin{{tabular}}{{r|llllll}}").unwrap();
            writeln!(out, "$n$ & \\multicolumn{{6}}{{c}}{{$\\pi_n K(\\mathbb{{S}})$}} \\\\").unwrap();
            writeln!(out, "\\hline").unwrap();
            for r in rows {
                let mut cells = vec![if r.free_rank == 1 {
                    "$\\mathbb{Z}$".to_string()
                } else {
                    String::new()
                }];
                cells.extend(r.torsion_columns().iter().map(|c| {
                    let s = cell(c, Style::Latex);
                    if s.is_empty() {
                        s
                    } else {
                        format!("${s}$")
                    }
                }));
                writeln!(out, "{} & {} \\\\", r.n, cells.join(" & ")).unwrap();
            }
            writeln!(out, "\\end{{tabular}}").unwrap();
        }
        TableFormat::Json => {
            out = serde_json::to_string_pretty(rows)?;
            out.push('\n');
        }
    }
    Ok(out)
}

/// `render_table` over freshly computed rows. In literal cp mode a note on
/// the degrees where the calibrated values differ is appended to the
/// human-readable formats.
pub fn table_generate(max_n: i64, format: TableFormat, params: &Params, exec: Execution) -> Result<String> {
    let rows = table_rows(max_n, params, exec)?;
    let mut out = render_table(&rows, format)?;
    if params.cp_mode == CpMode::Literal && format != TableFormat::Json {
        let report = cp_discrepancy_report(3)?;
        let degrees: Vec<String> = report
            .entries
            .iter()
            .filter(|e| e.degree <= max_n)
            .map(|e| e.degree.to_string())
            .collect();
        if !degrees.is_empty() {
            let lead = match format {
                TableFormat::Latex => "% ",
                _ => "",
            };
            writeln!(
                out,
                "{lead}literal cp mode: p = 3 column differs from calibrated values in degrees {}",
                degrees.join(", ")
            )
            .unwrap();
        }
    }
    Ok(out)
}

/// One row of the reference table, cells in the ascii notation.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct ReferenceRow {
    pub n: i64,
    pub free_rank: u32,
    pub cells: [String; 5],
}

/// The published table for `n <= 22`, embedded as data.
pub fn reference_table() -> &'static [ReferenceRow] {
    static ROWS: OnceLock<Vec<ReferenceRow>> = OnceLock::new();
    ROWS.get_or_init(|| {
        serde_json::from_str(include_str!("../data/table1.json"))
            .expect("embedded reference table is valid JSON")
    })
}

/// Columns where `row` differs from the reference, as `(column, expected, actual)`.
/// Notes attached to values are not compared.
pub fn compare_with_reference(row: &SummandBreakdown) -> Result<Vec<(usize, String, String)>> {
    let reference = reference_table()
        .iter()
        .find(|r| r.n == row.n)
        .ok_or_else(|| Error::out_of_range("reference table", row.n, STEM_TABLE_MAX))?;
    let mut diffs = Vec::new();
    if reference.free_rank != row.free_rank {
        diffs.push((1, reference.free_rank.to_string(), row.free_rank.to_string()));
    }
    for (k, (expected, actual)) in reference.cells.iter().zip(row.torsion_columns()).enumerate() {
        let expected_value = if expected.is_empty() {
            GroupValue::trivial()
        } else {
            abgroups::parse(expected)?
        };
        if expected_value.without_notes() != actual.without_notes() {
            diffs.push((k + 2, expected.clone(), actual.to_string()));
        }
    }
    Ok(diffs)
}
