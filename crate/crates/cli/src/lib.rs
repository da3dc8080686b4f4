//! Argument parsing and report rendering for the `umbral` binary. Kept in a
//! library so tests can drive [`run`] without spawning processes.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use umbral_core::dsl::{self, GRAMMAR};
use umbral_core::umbral::{pairing, theta};
use umbral_core::verify::{self, VerifyConfig};
use umbral_core::virasoro::gen_umbral_shift_m;
use umbral_core::{EntryReport, FTable, Rational, TruncatedSeries, UnivarPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "umbral", version, about = "Exact formal series, umbral shifts and Virasoro ladders")]
pub struct Cli {
    /// Truncation order N
    #[arg(long, global = true, default_value_t = 10)]
    pub order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized identity instances
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// EGF coefficients of exp(e^t - 1), the Bell numbers, up to the order
    Bell,
    /// The attached polynomial B_n(x) of a delta series
    UmbralSeq {
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        n: usize,
    },
    /// The umbral operator x^n -> B_n(x) applied to p
    Theta {
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// The generalized umbral shift B_n -> f_m(n) B_(n-m) applied to p
    Shift {
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Table of ladder coefficients f_m(n)
    FmnTable {
        #[arg(long, default_value_t = 8, allow_negative_numbers = true)]
        max_m: i64,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
    },
    /// The pairing <A | p> = sum p_n A_n
    Pair {
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Check registered identities exactly
    Verify {
        /// A registry tag, or ALL
        #[arg(long, default_value = "ALL")]
        id: String,
    },
}

/// Exit status plus everything that would go to the two streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: String) -> Self {
        let mut stderr = message;
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        let _ = write!(
            stderr,
            "\nSeries arguments (--A, --B) use the grammar\n{GRAMMAR}\n\
             Polynomial arguments (--p) are comma-separated rationals, lowest degree first, e.g. 1,-1/2,3\n\n{}",
            Cli::command().render_help()
        );
        Self { code: 2, stdout: String::new(), stderr }
    }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: e.to_string(), stderr: String::new() }
                }
                _ => Outcome::usage(e.to_string()),
            };
        }
    };
    let (code, report) = match execute(&cli) {
        Ok(done) => done,
        Err(message) => return Outcome::usage(message),
    };
    match &cli.output {
        Some(path) => match std::fs::write(path, &report) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("cannot write {}: {e}\n", path.display()) },
        },
        None => Outcome { code, stdout: report, stderr: String::new() },
    }
}

fn series_arg(flag: &str, text: &str, order: usize) -> Result<TruncatedSeries, String> {
    dsl::eval_str(text, order).map_err(|e| format!("error: --{flag} `{text}`: {e}"))
}

fn poly_arg(text: &str) -> Result<UnivarPoly, String> {
    text.parse().map_err(|e| format!("error: --p `{text}`: {e}"))
}

fn core_err(e: umbral_core::Error) -> String {
    format!("error: {e}")
}

fn rat_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn render_poly(p: &UnivarPoly, format: Format) -> String {
    match format {
        Format::Text => format!("{p}\n"),
        Format::Json => format!("{}\n", json!({ "coefficients": rat_strings(p.coeffs()) })),
        Format::Csv => {
            let mut out = String::from("degree,coefficient\n");
            for (k, c) in p.coeffs().iter().enumerate() {
                let _ = writeln!(out, "{k},{c}");
            }
            out
        }
    }
}

fn render_json(v: Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize"))
}

fn execute(cli: &Cli) -> Result<(i32, String), String> {
    let order = cli.order;
    let out = match &cli.command {
        Command::Bell => {
            let e = TruncatedSeries::exp_t(order);
            let bell = e.compose(&(&e - &TruncatedSeries::one(order))).map_err(core_err)?.egf_coeffs();
            match cli.format {
                Format::Text => format!("{}\n", rat_strings(&bell).join(" ")),
                Format::Json => render_json(json!({ "order": order, "bell": rat_strings(&bell) })),
                Format::Csv => {
                    let mut out = String::from("n,bell\n");
                    for (n, b) in bell.iter().enumerate() {
                        let _ = writeln!(out, "{n},{b}");
                    }
                    out
                }
            }
        }
        Command::UmbralSeq { b, n } => {
            let b = series_arg("B", b, order.max(*n))?;
            let p = umbral_core::umbral::umbral_sequence(&b, *n).map_err(core_err)?;
            render_poly(&p, cli.format)
        }
        Command::Theta { b, p } => {
            let p = poly_arg(p)?;
            let b = series_arg("B", b, order.max(p.degree().unwrap_or(0)))?;
            render_poly(&theta(&b, &p).map_err(core_err)?, cli.format)
        }
        Command::Shift { b, m, p } => {
            let p = poly_arg(p)?;
            let b = series_arg("B", b, order.max(p.degree().unwrap_or(0) + 1))?;
            render_poly(&gen_umbral_shift_m(&b, *m, &p).map_err(core_err)?, cli.format)
        }
        Command::FmnTable { max_m, max_n } => {
            let table = FTable::new(*max_m, *max_n).map_err(core_err)?;
            match cli.format {
                Format::Csv => table.to_csv(),
                Format::Json => render_json(table.to_json()),
                Format::Text => {
                    let mut out = String::new();
                    for m in -1..=*max_m {
                        let _ = writeln!(out, "f_{m}: {}", rat_strings(table.row(m)).join(" "));
                    }
                    out
                }
            }
        }
        Command::Pair { a, p } => {
            let p = poly_arg(p)?;
            let a = series_arg("A", a, order.max(p.degree().unwrap_or(0)))?;
            let value = pairing(&a, &p).map_err(core_err)?;
            match cli.format {
                Format::Text => format!("{value}\n"),
                Format::Json => format!("{}\n", json!({ "pairing": value.to_string() })),
                Format::Csv => format!("pairing\n{value}\n"),
            }
        }
        Command::Verify { id } => return verify_report(cli, id),
    };
    Ok((0, out))
}

fn verify_report(cli: &Cli, id: &str) -> Result<(i32, String), String> {
    let entries = verify::select(id).map_err(|e| {
        let tags: Vec<&str> = verify::REGISTRY.iter().map(|e| e.tag).collect();
        format!("error: {e}; known tags: ALL, {}", tags.join(", "))
    })?;
    let cfg = VerifyConfig { order: cli.order, seed: cli.seed };
    Ok(render_verify(&verify::run_entries(&entries, &cfg), &cfg, cli.format))
}

/// Exit code (0 all pass, 1 otherwise) and the rendered report.
pub fn render_verify(reports: &[EntryReport], cfg: &VerifyConfig, format: Format) -> (i32, String) {
    let passed = reports.iter().filter(|r| r.passed).count();
    let code = if passed == reports.len() { 0 } else { 1 };
    let out = match format {
        Format::Text => {
            let mut out = format!("verify order={} seed={}\n", cfg.order, cfg.seed);
            for r in reports {
                let _ = writeln!(out, "{r}");
            }
            let _ = writeln!(out, "{passed}/{} entries passed", reports.len());
            out
        }
        Format::Json => render_json(json!({
            "order": cfg.order,
            "seed": cfg.seed,
            "passed": code == 0,
            "entries": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("tag,passed,checks,first_failure\n");
            for r in reports {
                let failure = r.first_failure.as_ref().map(|f| f.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{},{},{},\"{}\"", r.tag, r.passed, r.checks, failure.replace('"', "\"\""));
            }
            out
        }
    };
    (code, out)
}
