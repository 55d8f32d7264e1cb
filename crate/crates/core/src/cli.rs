//! The `khs` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::abgroups::{FreeRank, HomotopyGroup, Style};
use crate::assemble::{self, TableFormat};
use crate::config::{Config, Overrides};
use crate::cpbar::{cp_discrepancy_report, cp_torsion, CpMode};
use crate::error::{Error, Result};
use crate::kzeta::kz_torsion_with;
use crate::numtheory::primes::{odd_primes_up_to, require_odd_prime};
use crate::numtheory::{irregular_indices, BernoulliTable, IrregularReport};
use crate::par::{self, Execution};
use crate::stems::{coker_j_torsion, image_of_j_torsion, sphere_torsion};
use crate::tcsplit::{tc_s_free_rank, tc_s_torsion_with, tc_z_homotopy};

#[derive(Debug, Parser)]
#[command(name = "khs", version, about = "Torsion in the homotopy of K(S), K(Z), TC(S) and TC(Z)")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML configuration file
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Bernoulli cache file (overrides KHS_CACHE)
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Largest prime assumed to satisfy Kummer-Vandiver (overrides KHS_KV_BOUND)
    #[arg(long, global = true, value_name = "P")]
    pub kv_bound: Option<u64>,
    /// Source of the CP∞₋₁ orders above the exact range (overrides KHS_CP_MODE)
    #[arg(long, global = true)]
    pub cp_mode: Option<CpModeArg>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One homotopy group, p-primary with --prime, else the assembled π_n K(S)
    Group {
        spectrum: Spectrum,
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(long, short)]
        prime: Option<u64>,
        #[arg(long, short)]
        format: Option<GroupFormat>,
    },
    /// The table of π_n K(S) for 0 <= n <= max-n
    Table {
        #[arg(long, default_value_t = 22)]
        max_n: i64,
        #[arg(long, short)]
        format: Option<FormatArg>,
        #[arg(long, short)]
        jobs: Option<usize>,
    },
    /// Irregularity indices of every odd prime up to max-p
    ScanIrregular {
        #[arg(long)]
        max_p: u64,
        #[arg(long, short)]
        jobs: Option<usize>,
        #[arg(long, short, default_value = "text")]
        format: ScanFormat,
    },
    /// Degrees where the literal CP∞₋₁ orders differ from the tabulated ones
    ReportCp {
        #[arg(long, short)]
        prime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Fill the Bernoulli cache up to B_n
    Cache {
        #[arg(long)]
        fill: usize,
    },
    /// Print the resolved configuration as TOML
    ShowConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Spectrum {
    #[value(name = "KS", alias = "ks")]
    Ks,
    #[value(name = "KZ", alias = "kz")]
    Kz,
    #[value(name = "TCS", alias = "tcs")]
    Tcs,
    #[value(name = "TCZ", alias = "tcz")]
    Tcz,
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "j", alias = "J")]
    J,
    #[value(name = "c", alias = "C")]
    C,
    #[value(name = "CPbar", alias = "cpbar")]
    CpBar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CpModeArg {
    Literal,
    Calibrated,
}

impl From<CpModeArg> for CpMode {
    fn from(m: CpModeArg) -> Self {
        match m {
            CpModeArg::Literal => CpMode::Literal,
            CpModeArg::Calibrated => CpMode::Calibrated,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Ascii,
    Markdown,
    Latex,
    Json,
}

impl From<FormatArg> for TableFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Ascii => TableFormat::Ascii,
            FormatArg::Markdown => TableFormat::Markdown,
            FormatArg::Latex => TableFormat::Latex,
            FormatArg::Json => TableFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupFormat {
    Ascii,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanFormat {
    Text,
    Json,
}

fn exec(jobs: Option<usize>) -> Execution {
    Execution::from_jobs(jobs)
}

/// Parses `args` and runs the command, reading `KHS_*` through `var`.
pub fn run<I, T>(args: I, var: impl Fn(&str) -> Option<String>, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Usage(e.to_string()))?;
    execute(&cli, var, out)
}

pub fn execute(cli: &Cli, var: impl Fn(&str) -> Option<String>, out: &mut dyn Write) -> Result<()> {
    let overrides = Overrides {
        bernoulli_cache_path: cli.global.cache.clone(),
        verified_kv_bound: cli.global.kv_bound,
        default_cp_mode: cli.global.cp_mode.map(CpMode::from),
        output_format: None,
    };
    let config = Config::resolve(cli.global.config.as_deref(), var, &overrides)?;

    let table = BernoulliTable::global();
    if let Some(path) = &config.bernoulli_cache_path {
        table.load(path)?;
    }
    let before = table.len();

    dispatch(&cli.command, &config, out)?;

    if let Some(path) = &config.bernoulli_cache_path {
        if table.len() > before || !path.exists() {
            table.save(path)?;
        }
    }
    Ok(())
}

fn dispatch(command: &Command, config: &Config, out: &mut dyn Write) -> Result<()> {
    let params = config.params();
    match command {
        Command::Group {
            spectrum,
            n,
            prime,
            format,
        } => {
            let format = format.unwrap_or(match config.output_format {
                TableFormat::Json => GroupFormat::Json,
                TableFormat::Latex => GroupFormat::Latex,
                TableFormat::Ascii | TableFormat::Markdown => GroupFormat::Ascii,
            });
            match prime {
                Some(p) => {
                    let g = group_at_prime(*spectrum, *p, *n, config)?;
                    write_group(out, &g, format)
                }
                None if *spectrum == Spectrum::Ks => {
                    let row = assemble::ks_group_with(*n, &params)?;
                    match format {
                        GroupFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&row)?)?,
                        GroupFormat::Ascii => {
                            writeln!(out, "{}", row.render_row(Style::Ascii))?;
                            for note in row.total_torsion().notes() {
                                writeln!(out, "note: {note}")?;
                            }
                        }
                        GroupFormat::Latex => writeln!(out, "{}", row.render_row(Style::Latex))?,
                    }
                    Ok(())
                }
                None => Err(Error::Usage(format!(
                    "--prime is required for {} (only KS has an assembled answer)",
                    spectrum.to_possible_value().unwrap().get_name()
                ))),
            }
        }
        Command::Table { max_n, format, jobs } => {
            let format = format.map(TableFormat::from).unwrap_or(config.output_format);
            let doc = assemble::table_generate(*max_n, format, &params, exec(*jobs))?;
            out.write_all(doc.as_bytes())?;
            Ok(())
        }
        Command::ScanIrregular { max_p, jobs, format } => scan(*max_p, exec(*jobs), *format, out),
        Command::ReportCp { prime, json } => {
            let report = cp_discrepancy_report(*prime)?;
            if *json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            } else if !report.calibrated {
                writeln!(out, "no calibration data for p = {prime}")?;
            } else if report.entries.is_empty() {
                writeln!(out, "p = {prime}: literal and calibrated orders agree")?;
            } else {
                writeln!(out, "p = {prime}: degree  literal  calibrated  (a b c d e)")?;
                for e in &report.entries {
                    let q = &e.parts;
                    writeln!(
                        out,
                        "{:>6}  {:>8}  {:>10}  ({} {} {} {} {}{})",
                        e.degree,
                        e.literal.to_string(),
                        e.calibrated.to_string(),
                        q.a,
                        q.b,
                        q.c,
                        q.d,
                        q.e_literal,
                        if q.clamped { ", clamped" } else { "" }
                    )?;
                }
            }
            Ok(())
        }
        Command::Cache { fill } => {
            let path = config
                .bernoulli_cache_path
                .as_ref()
                .ok_or_else(|| Error::Usage("no cache path: set --cache or KHS_CACHE".into()))?;
            let table = BernoulliTable::global();
            table.extend_to(*fill);
            table.save(path)?;
            writeln!(out, "{}: B_0..B_{}", path.display(), table.len().saturating_sub(1))?;
            Ok(())
        }
        Command::ShowConfig => {
            let text = toml::to_string(config).map_err(|e| Error::Config(e.to_string()))?;
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn group_at_prime(spectrum: Spectrum, p: u64, n: i64, config: &Config) -> Result<HomotopyGroup> {
    require_odd_prime(p)?;
    let params = config.params();
    let point = u32::from(n == 0);
    Ok(match spectrum {
        Spectrum::Ks => assemble::ks_homotopy_at_p(p, n, &params)?,
        Spectrum::Kz => HomotopyGroup::new(n, assemble::free_rank(n), kz_torsion_with(p, n, &params)?),
        Spectrum::Tcs => HomotopyGroup::new(n, tc_s_free_rank(n), tc_s_torsion_with(p, n, params.cp_mode)?),
        Spectrum::Tcz => tc_z_homotopy(p, n)?,
        Spectrum::S => HomotopyGroup::new(n, point, sphere_torsion(p, n)?),
        Spectrum::J => HomotopyGroup::new(n, point, image_of_j_torsion(p, n)?),
        Spectrum::C => HomotopyGroup::new(n, 0, coker_j_torsion(p, n)?),
        Spectrum::CpBar => HomotopyGroup {
            degree: n,
            free_rank: FreeRank::NotComputed,
            torsion: cp_torsion(p, n, params.cp_mode)?,
        },
    })
}

fn write_group(out: &mut dyn Write, g: &HomotopyGroup, format: GroupFormat) -> Result<()> {
    match format {
        GroupFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(g)?)?,
        GroupFormat::Latex => writeln!(out, "{}", g.render(Style::Latex))?,
        GroupFormat::Ascii => {
            writeln!(out, "{}", g.render(Style::Ascii))?;
            for note in g.torsion.notes() {
                writeln!(out, "note: {note}")?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ScanLine<'a> {
    p: u64,
    regular: bool,
    indices: &'a [u64],
}

fn scan(max_p: u64, exec: Execution, format: ScanFormat, out: &mut dyn Write) -> Result<()> {
    if max_p < 3 {
        return Err(Error::Usage(format!("--max-p must be at least 3, got {max_p}")));
    }
    // blocks keep output flowing on long scans without reordering it
    const BLOCK: usize = 256;
    let primes = odd_primes_up_to(max_p);
    for block in primes.chunks(BLOCK) {
        let reports: Vec<IrregularReport> = par::map(block.to_vec(), exec, |p| {
            irregular_indices(p).expect("sieved primes are odd primes")
        });
        for r in &reports {
            match format {
                ScanFormat::Text if r.is_regular => writeln!(out, "{} regular", r.p)?,
                ScanFormat::Text => {
                    let idx: Vec<String> = r.indices.iter().map(u64::to_string).collect();
                    writeln!(out, "{} irregular {}", r.p, idx.join(","))?
                }
                ScanFormat::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&ScanLine {
                        p: r.p,
                        regular: r.is_regular,
                        indices: &r.indices,
                    })?
                )?,
            }
        }
        out.flush()?;
    }
    Ok(())
}
