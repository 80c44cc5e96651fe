use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dvrtrace::grid::quadratic_grid;
use dvrtrace::{analyze, generate_corpus, render_text, run_selftest, run_suite, AlgebraDocument, CorpusSpec, DvrDescriptor, Mix, Status};

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_CAPABILITY: u8 = 3;

#[derive(Parser)]
#[command(name = "dvrtrace", version, about = "Discriminant valuations of finite flat algebras over DVRs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one input document (`-` reads stdin).
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Exit with 3 when a stage hits a capability limit.
        #[arg(long)]
        strict: bool,
    },
    /// The quadratic family X^2 - 2aX - b over Z_(p).
    GridExample {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0,1,3")]
        a_list: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "2,4,6,12")]
        b_list: Vec<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Seeded corpus sweep.
    Suite {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Comma-separated `zp:P`, `kt:Q`, `kut:P`.
        #[arg(long, value_delimiter = ',', default_value = "zp:2,zp:3,zp:5,kt:2,kt:4")]
        backends: Vec<DvrDescriptor>,
        #[arg(long, default_value_t = 1)]
        degree_min: usize,
        #[arg(long, default_value_t = 5)]
        degree_max: usize,
        #[arg(long, default_value_t = 0)]
        valuation_min: u64,
        #[arg(long, default_value_t = 3)]
        valuation_max: u64,
        /// Explicit monogenic,product,table counts; overrides --count.
        #[arg(long, value_delimiter = ',')]
        mix: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        strict: bool,
    },
    /// Lemma-level property suites.
    Selftest {
        #[arg(long, default_value_t = 0x5e1f)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn cmd_analyze(file: &PathBuf, format: Format, strict: bool) -> Result<u8> {
    let doc = AlgebraDocument::from_json(&read_input(file)?)?;
    let report = analyze(&doc)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report.to_json())?),
        Format::Text => print!("{}", render_text(&report)),
    }
    Ok(match report.status {
        Status::Ok => EXIT_OK,
        Status::Invalid => EXIT_INVALID,
        Status::Violation => EXIT_VIOLATION,
        Status::Capability if strict => EXIT_CAPABILITY,
        Status::Capability => EXIT_OK,
    })
}

fn cmd_grid(p: u64, a_list: &[i64], b_list: &[i64], format: Format) -> Result<u8> {
    let rows = quadratic_grid(p, a_list, b_list)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        Format::Text => {
            println!("   a    b  (a',b')     f  slack  m_RQ=0 regular separable tame  match");
            for r in &rows {
                let c = &r.computed;
                let m = r.matches.map_or("-".to_string(), |m| m.to_string());
                println!(
                    "{:>4} {:>4}  {:>8} {:>5} {:>6}  {:<6} {:<7} {:<9} {:<5} {}",
                    r.a,
                    r.b,
                    format!("({},{})", r.normalized.0, r.normalized.1),
                    r.f.to_string(),
                    r.slack.to_string(),
                    c.cokernel_defined_over_residue,
                    c.regular,
                    c.separable,
                    c.tame,
                    m
                );
            }
        }
    }
    Ok(if rows.iter().any(|r| r.matches == Some(false)) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_suite(
    seed: u64,
    count: usize,
    backends: Vec<DvrDescriptor>,
    degree_range: (usize, usize),
    valuation_range: (u64, u64),
    mix: Option<Vec<usize>>,
    format: Format,
    strict: bool,
) -> Result<u8> {
    let mix = match mix.as_deref() {
        Some(&[monogenic, product, table]) => Mix { monogenic, product, table },
        Some(other) => anyhow::bail!(dvrtrace::Error::parse(format!("--mix takes three counts, got {}", other.len()))),
        None => CorpusSpec::default_mix(count),
    };
    let spec = CorpusSpec {
        seed,
        backends,
        degree_range,
        valuation_range,
        mix,
    };
    let corpus = generate_corpus(&spec)?;
    let summary = run_suite(&corpus);
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&summary)?),
        Format::Text => {
            println!("instances         {}", summary.instances);
            println!("equality          {}", summary.equality);
            println!("strict            {}", summary.strict);
            println!("infinite f        {}", summary.infinite_f);
            println!("capability skips  {}", summary.capability_skips);
            println!("invalid           {}", summary.invalid);
            println!("violations        {}", summary.violations.len());
            for v in &summary.violations {
                println!("  #{}: {}", v.index, v.message);
            }
        }
    }
    Ok(if !summary.violations.is_empty() {
        EXIT_VIOLATION
    } else if summary.invalid > 0 {
        EXIT_INVALID
    } else if strict && summary.capability_skips > 0 {
        EXIT_CAPABILITY
    } else {
        EXIT_OK
    })
}

fn cmd_selftest(seed: u64, format: Format) -> Result<u8> {
    let suites = run_selftest(seed)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&suites)?),
        Format::Text => {
            for s in &suites {
                println!(
                    "{} {:<32} {:>4} applicable, {} skipped",
                    if s.passed() { "PASS" } else { "FAIL" },
                    s.name,
                    s.applicable,
                    s.skipped
                );
                for f in s.failures.iter().take(5) {
                    println!("     {f}");
                }
            }
        }
    }
    Ok(if suites.iter().all(|s| s.passed()) { EXIT_OK } else { EXIT_VIOLATION })
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<dvrtrace::Error>() {
        Some(dvrtrace::Error::Internal(_)) => EXIT_VIOLATION,
        Some(dvrtrace::Error::Capability(_)) => EXIT_CAPABILITY,
        _ => EXIT_INVALID,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { file, format, strict } => cmd_analyze(&file, format, strict),
        Command::GridExample { p, a_list, b_list, format } => cmd_grid(p, &a_list, &b_list, format),
        Command::Suite {
            seed,
            count,
            backends,
            degree_min,
            degree_max,
            valuation_min,
            valuation_max,
            mix,
            format,
            strict,
        } => cmd_suite(
            seed,
            count,
            backends,
            (degree_min, degree_max),
            (valuation_min, valuation_max),
            mix,
            format,
            strict,
        ),
        Command::Selftest { seed, format } => cmd_selftest(seed, format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
