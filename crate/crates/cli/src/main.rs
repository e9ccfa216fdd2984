use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use wkernel::algebras::build_minimal_w;
use wkernel::morphism::same_presentation;
use wkernel::roots::table1_rows;
use wkernel::suite::{
    minimal_w_document, minimal_w_from_document, presentation_to_def, run_suite, DefDocument, MinimalWDocument,
    OutputFormat, SuiteConfig, SUITES,
};
use wkernel::whittaker::{derive_walgebra, derived_presentation};

#[derive(Parser)]
#[command(name = "wkernel", version, about = "Exact verification of W-algebra, Weyl algebra and localization identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites (`all` selects every suite).
    Verify {
        #[arg(required = true, value_name = "SUITE")]
        suites: Vec<String>,
        /// Sets the consistency, centralizer, evaluation and fixed-subalgebra degrees.
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Extra algebra definitions for the consistency suite.
        #[arg(long = "def", value_name = "FILE")]
        defs: Vec<PathBuf>,
    },
    /// Print the minimal-nilpotent grading table with computed dimensions.
    Table1 {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Derive a minimal W-algebra presentation (A 2, A 3 or C 2) and print it
    /// as a JSON document.
    DeriveWalgebra {
        #[arg(value_name = "TYPE")]
        g_type: String,
        rank: usize,
        /// Kazhdan degree of the invariant computation.
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and check an algebra definition or W-algebra document.
    CheckDef {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(
    suites: Vec<String>,
    degree: Option<u32>,
    seed: u64,
    format: Format,
    out: Option<PathBuf>,
    defs: Vec<PathBuf>,
) -> Result<ExitCode> {
    let names: Vec<String> =
        if suites.iter().any(|s| s == "all") { SUITES.iter().map(|s| s.to_string()).collect() } else { suites };
    let mut config = SuiteConfig::new(names).with_seed(seed);
    if let Some(n) = degree {
        config = config.with_degree(n);
    }
    config.format = format.into();
    for path in defs {
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let doc = DefDocument::parse(&text).with_context(|| format!("in {}", path.display()))?;
        config.definitions.push((path.display().to_string(), doc));
    }
    let report = run_suite(&config)?;
    print!("{}", report.render(config.format));
    if let Some(p) = out {
        std::fs::write(&p, report.to_json()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn table1(format: Format) -> Result<ExitCode> {
    let rows = table1_rows()?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        Format::Text => {
            println!(
                "{:<4} {:<8} {:<16} {:>6} {:>7} {:>7} {:>4} {:>6}",
                "g", "g(0)", "g(1)", "dim g", "dim g0", "dim g1", "d", "check"
            );
            for r in &rows {
                println!(
                    "{:<4} {:<8} {:<16} {:>6} {:>7} {:>7} {:>4} {:>6}",
                    r.label(),
                    r.g0_label(),
                    r.g1_label,
                    r.dim_g,
                    r.dim_g0,
                    r.dim_g1,
                    r.d,
                    if r.passed() { "ok" } else { "FAIL" }
                );
            }
        }
    }
    Ok(if rows.iter().all(|r| r.passed()) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn derive(g_type: &str, rank: usize, degree: u32, out: Option<PathBuf>) -> Result<ExitCode> {
    let d = derive_walgebra(&format!("{}{rank}", g_type.to_uppercase()), degree)?;
    let mut ok = true;
    for c in &d.checks {
        eprintln!("{} {}{}", if c.passed { "PASS" } else { "FAIL" }, c.name, if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) });
        ok &= c.passed;
    }
    eprintln!("generators: {} (expected {}), bracket degree {}", d.generator_count, d.expected_generator_count, d.bracket_degree);
    let doc = minimal_w_document(&d.data);
    write_or_print(out.as_deref(), &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    derived_presentation(&d, 4)?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn check_def(path: &Path, degree: u32) -> Result<ExitCode> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(_) => {
            // reparse for the line/column diagnostics
            DefDocument::parse(&text)?;
            bail!("unreadable document");
        }
    };
    if value.get("g1").is_some() {
        let doc: MinimalWDocument = serde_json::from_value(value).context("W-algebra document")?;
        let data = minimal_w_from_document(&doc)?;
        let w = build_minimal_w(&data, degree)?;
        println!(
            "{}: {} generators {:?}, weights {:?}, consistent through degree {}",
            w.label,
            w.presentation.ngens(),
            w.presentation.names(),
            w.weights,
            degree.max(3)
        );
        return Ok(ExitCode::SUCCESS);
    }
    let p = DefDocument::from_value(value)?.build()?;
    let report = p.check_consistency(degree)?;
    let back = DefDocument::from_value(serde_json::to_value(presentation_to_def(&p))?)?.build()?;
    let round_trip = same_presentation(&p, &back);
    println!("{}: generators {:?}, {} relations", p.name(), p.names(), p.rules().count());
    println!(
        "consistency through degree {}: {} ({} overlaps, {} words)",
        report.degree,
        if report.passed() { "pass" } else { "FAIL" },
        report.overlaps_checked,
        report.words_checked
    );
    for f in &report.failures {
        println!("  {}: {} vs {} (defect {})", f.word.join("*"), f.left, f.right, f.defect);
    }
    println!("round trip: {}", if round_trip { "pass" } else { "FAIL" });
    Ok(if report.passed() && round_trip { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { suites, degree, seed, format, out, defs } => verify(suites, degree, seed, format, out, defs),
        Command::Table1 { format } => table1(format),
        Command::DeriveWalgebra { g_type, rank, degree, out } => derive(&g_type, rank, degree, out),
        Command::CheckDef { file, degree } => check_def(&file, degree),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
