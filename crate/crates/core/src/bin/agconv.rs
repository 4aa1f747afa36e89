use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use agconv::ag_code::CurveKind;
use agconv::convolutional::{split_construction, SplitSpec};
use agconv::dump::{write_matrix, write_poly_matrix};
use agconv::pipeline::{
    base_code, derived_report, family_report, table_report, to_csv, Budget, Combinator, Report,
    VerifyMode,
};

/// Unit-memory convolutional codes from one-point AG codes.
#[derive(Parser)]
#[command(name = "agconv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one family instance and verify it.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Apply a combinator to a family code and re-split the result.
    Derive {
        #[arg(long, value_enum)]
        combinator: CombinatorName,
        #[command(flatten)]
        family: FamilyArgs,
        /// Coordinate to delete (puncture).
        #[arg(long)]
        j: Option<usize>,
        /// Subfield order (expand).
        #[arg(long)]
        subfield: Option<u32>,
        /// Use only the first N affine places.
        #[arg(long)]
        places: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Recompute every row of table 1 or 2.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        /// Enumeration limit for exhaustive searches.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Write the block generator, its dual, or G(D) to a file.
    DumpMatrix {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = What::Conv)]
        what: What,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// rational, curveA or curveB
    #[arg(long)]
    family: CurveKind,
    #[arg(long)]
    q: u32,
    /// Degree bound for the rational family (same as --m).
    #[arg(long, conflicts_with = "m")]
    r: Option<u32>,
    /// Pole-order bound m of G = m·P∞.
    #[arg(long)]
    m: Option<u32>,
    /// Rows moved into G_1.
    #[arg(long, default_value_t = 1)]
    l: usize,
}

impl FamilyArgs {
    fn m(&self) -> anyhow::Result<u32> {
        match self.m.or(self.r) {
            Some(m) => Ok(m),
            None => bail!("one of --m or --r is required"),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// formula, auto or exact
    #[arg(long, default_value = "exact")]
    verify: VerifyMode,
    /// Enumeration limit for exhaustive searches.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl RunArgs {
    fn budget(&self) -> Budget {
        let b = Budget::for_mode(self.verify);
        match self.budget {
            Some(n) => b.with_enumeration_limit(n),
            None => b,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CombinatorName {
    Puncture,
    Extend,
    Expand,
    Product,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Classical,
    Dual,
    Conv,
}

fn emit(
    reports: &[&Report],
    json: impl FnOnce() -> serde_json::Result<String>,
    format: Format,
) -> anyhow::Result<()> {
    let text = match format {
        Format::Json => json()? + "\n",
        Format::Csv => to_csv(reports.iter().copied())?,
    };
    std::io::stdout().write_all(text.as_bytes())?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Construct { family, run } => {
            let report = family_report(
                family.family,
                family.q,
                family.m()?,
                family.l,
                run.verify,
                &run.budget(),
            )?;
            emit(
                &[&report],
                || serde_json::to_string_pretty(&report),
                run.format,
            )?;
            Ok(report.passed())
        }
        Command::Derive {
            combinator,
            family,
            j,
            subfield,
            places,
            run,
        } => {
            let combinator = match combinator {
                CombinatorName::Puncture => Combinator::Puncture(j),
                CombinatorName::Extend => Combinator::Extend,
                CombinatorName::Expand => {
                    Combinator::Expand(subfield.context("expand needs --subfield")?)
                }
                CombinatorName::Product => Combinator::Product,
            };
            let report = derived_report(
                combinator,
                family.family,
                family.q,
                family.m()?,
                family.l,
                places,
                run.verify,
                &run.budget(),
            )?;
            emit(
                &[&report],
                || serde_json::to_string_pretty(&report),
                run.format,
            )?;
            Ok(report.passed())
        }
        Command::Table {
            which,
            budget,
            format,
        } => {
            let b = match budget {
                Some(n) => Budget::table().with_enumeration_limit(n),
                None => Budget::table(),
            };
            let table = table_report(which, &b)?;
            let reports: Vec<&Report> = table.rows.iter().map(|r| &r.report).collect();
            emit(&reports, || serde_json::to_string_pretty(&table), format)?;
            Ok(table.passed())
        }
        Command::DumpMatrix { family, what, out } => {
            let (curve, code) = base_code(family.family, family.q, family.m()?, None)?;
            let mut w = BufWriter::new(
                File::create(&out).with_context(|| format!("creating {}", out.display()))?,
            );
            let q = curve.field().order();
            match what {
                What::Classical => write_matrix(&mut w, q, code.generator())?,
                What::Dual => write_matrix(&mut w, q, code.dual().generator())?,
                What::Conv => {
                    let spec =
                        SplitSpec::unit_memory(curve.field(), code.generator().clone(), family.l)?;
                    write_poly_matrix(&mut w, split_construction(&spec)?.generator())?;
                }
            }
            w.flush()?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
