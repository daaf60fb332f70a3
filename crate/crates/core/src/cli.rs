//! Command-line front end used by the `commcalc` binary.
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 when a resource budget is
//! exceeded, 3 when a certificate or self-test reports FAIL.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bing::{bing_meridian, clifford_commutator, stage_alphabet, StageSpec};
use crate::checks;
use crate::lie::{lyndon_basis, lyndon_words, witt_rank};
use crate::magnus::{in_gamma, lcs_weight, magnus_expand, multilinear_coefficient, MagnusError, Weight};
use crate::parse::{has_sided_generators, parse, parse_generator};
use crate::series::{bare_var_name, sided_var_name, Budget, SeriesError, DEFAULT_MONOMIAL_CAP};
use crate::verifier::{stickiness_certificate, CertificateRequest, Conclusion, Mode, VerifyError};
use crate::word::{Side, Word};

const MIN_BUDGET: usize = 10_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_FAIL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Full,
    Multilinear,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::Multilinear => Mode::Multilinear,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "commcalc", version, about = "Free-group commutator calculus and stickiness certificates")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Maximum number of stored terms per series.
    #[arg(long, global = true, env = "CC_BUDGET", default_value_t = DEFAULT_MONOMIAL_CAP, value_parser = parse_budget)]
    budget: usize,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Magnus expansion of a word or bracket expression.
    Expand {
        expr: String,
        #[arg(long)]
        deg: usize,
    },
    /// Membership in the k-th lower central subgroup.
    Member {
        expr: String,
        #[arg(long)]
        k: usize,
    },
    /// Lower central series weight, searched below --k.
    Weight {
        expr: String,
        #[arg(long)]
        k: usize,
    },
    /// Multilinear Magnus coefficient at distinct generators, e.g. --target x1,x2.
    Coeff {
        expr: String,
        #[arg(long)]
        target: String,
    },
    /// Print stage-n Bing meridians and the Clifford commutator.
    Bing {
        #[arg(long)]
        stage: u32,
        #[arg(long, value_enum, ignore_case = true)]
        side: Option<SideArg>,
        #[arg(long, default_value_t = 4)]
        dim: u32,
    },
    /// Build a stickiness certificate.
    Verify {
        #[arg(long)]
        stage: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = 4)]
        dim: u32,
    },
    /// Witt rank of the k-th lower central quotient of F_N.
    Witt {
        #[arg(long)]
        n_gens: u32,
        #[arg(long)]
        k: u32,
    },
    /// Lyndon basis of degree k over N generators.
    Lyndon {
        #[arg(long)]
        n_gens: u32,
        #[arg(long)]
        k: usize,
    },
    /// Run the invariant suites at small sizes.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_budget(s: &str) -> Result<usize, String> {
    let v: usize = s.trim().parse().map_err(|_| format!("`{s}` is not a non-negative integer"))?;
    if v < MIN_BUDGET {
        Err(format!("budget must be at least {MIN_BUDGET}"))
    } else {
        Ok(v)
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Budget(String),
}

impl From<MagnusError> for CliError {
    fn from(e: MagnusError) -> Self {
        match e {
            MagnusError::Series(SeriesError::BudgetExceeded { .. }) => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

struct Report {
    text: String,
    json: Value,
    exit: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, exit: EXIT_OK }
    }
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit output and error streams; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let rendered = e.render().to_string();
                    let line = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("usage error");
                    let _ = writeln!(err, "{}", line.trim());
                    EXIT_USAGE
                }
            };
        }
    };
    let budget = Budget::new(cli.budget);
    let report = match execute(&cli.command, &budget) {
        Ok(r) => r,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(CliError::Budget(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_BUDGET;
        }
    };
    let body = match cli.format {
        Format::Text => report.text,
        Format::Json => serde_json::to_string_pretty(&report.json).expect("report serializes"),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, format!("{body}\n")),
        None => writeln!(out, "{body}"),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    report.exit
}

fn input_word(text: &str) -> Result<Word, CliError> {
    parse(text).map(|p| p.into_word()).map_err(|e| CliError::Usage(e.to_string()))
}

fn stage(n: u32, dim: u32) -> Result<StageSpec, CliError> {
    StageSpec::new(n, dim).map_err(|e| CliError::Usage(e.to_string()))
}

fn execute(command: &Command, budget: &Budget) -> Result<Report, CliError> {
    match command {
        Command::Expand { expr, deg } => {
            let w = input_word(expr)?;
            let s = magnus_expand(&w, *deg, budget)?;
            let text = if has_sided_generators(expr) {
                s.to_text_with(sided_var_name)
            } else {
                s.to_text_with(bare_var_name)
            };
            let json = json!({
                "expression": expr,
                "word": w.to_string(),
                "word_length": w.len(),
                "truncation": deg,
                "text": text,
                "terms": s.to_json_terms(),
            });
            Ok(Report::ok(text, json))
        }
        Command::Member { expr, k } => {
            if *k == 0 {
                return Err(CliError::Usage("--k must be at least 1".into()));
            }
            let w = input_word(expr)?;
            let member = in_gamma(&w, *k, budget)?;
            Ok(Report::ok(
                member.to_string(),
                json!({ "word": w.to_string(), "k": k, "in_gamma": member }),
            ))
        }
        Command::Weight { expr, k } => {
            if *k == 0 {
                return Err(CliError::Usage("--k must be at least 1".into()));
            }
            let w = input_word(expr)?;
            let weight = lcs_weight(&w, *k, budget)?;
            let json = match weight {
                Weight::Exact(d) => json!({ "word": w.to_string(), "k_max": k, "weight": d, "at_least": null }),
                Weight::AtLeast(d) => json!({ "word": w.to_string(), "k_max": k, "weight": null, "at_least": d }),
            };
            Ok(Report::ok(weight.to_string(), json))
        }
        Command::Coeff { expr, target } => {
            let w = input_word(expr)?;
            let gens = target
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| parse_generator(t.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let c = multilinear_coefficient(&w, &gens)?;
            let labels: Vec<String> = gens.iter().map(|g| g.label()).collect();
            Ok(Report::ok(
                c.to_string(),
                json!({ "word": w.to_string(), "target": labels, "coeff": c.to_string() }),
            ))
        }
        Command::Bing { stage: n, side, dim } => {
            let spec = stage(*n, *dim)?;
            let alphabet: Vec<String> = stage_alphabet(&spec).all().iter().map(|g| g.label()).collect();
            let mut json = json!({
                "stage_n": spec.n(),
                "l": spec.l(),
                "N": spec.total_generators(),
                "ambient_dimension": spec.ambient_dimension(),
                "alphabet": alphabet,
            });
            let mut lines = vec![format!(
                "stage {}: l = {}, N = {}, d = {}",
                spec.n(),
                spec.l(),
                spec.total_generators(),
                spec.ambient_dimension()
            )];
            let sides: Vec<Side> = match side {
                Some(SideArg::A) => vec![Side::A],
                Some(SideArg::B) => vec![Side::B],
                None => vec![Side::A, Side::B],
            };
            for s in sides {
                let e = bing_meridian(&spec, s);
                lines.push(format!("m_{s} = {e}"));
                json[format!("m_{s}")] = json!(e.to_string());
            }
            if side.is_none() {
                let c = clifford_commutator(&spec);
                let len = c.flatten().len();
                lines.push(format!("[m_A,m_B] = {c}"));
                lines.push(format!("flattened length = {len}"));
                json["clifford_commutator"] = json!(c.to_string());
                json["flattened_length"] = json!(len);
            }
            Ok(Report::ok(lines.join("\n"), json))
        }
        Command::Verify { stage: n, k, mode, dim } => {
            let spec = stage(*n, *dim)?;
            let mode = mode.map(Mode::from).unwrap_or_else(|| Mode::default_for_stage(*n));
            let req = CertificateRequest { spec, k: *k, mode, budget: *budget };
            let cert = stickiness_certificate(&req)?;
            let exit = if cert.conclusion == Conclusion::Fail { EXIT_FAIL } else { EXIT_OK };
            Ok(Report {
                text: cert.to_text().trim_end().to_string(),
                json: serde_json::to_value(&cert).expect("certificate serializes"),
                exit,
            })
        }
        Command::Witt { n_gens, k } => {
            if *n_gens == 0 || *k == 0 {
                return Err(CliError::Usage("--n-gens and --k must be at least 1".into()));
            }
            let r = witt_rank(*n_gens, *k);
            Ok(Report::ok(
                r.to_string(),
                json!({ "N": n_gens, "k": k, "witt_rank": r.to_string() }),
            ))
        }
        Command::Lyndon { n_gens, k } => {
            if *n_gens == 0 || *k == 0 {
                return Err(CliError::Usage("--n-gens and --k must be at least 1".into()));
            }
            let words: Vec<String> = lyndon_words(*n_gens, *k)
                .iter()
                .map(|w| w.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            let brackets: Vec<String> = lyndon_basis(*n_gens, *k).iter().map(|e| e.to_string()).collect();
            Ok(Report::ok(
                brackets.join("\n"),
                json!({ "N": n_gens, "k": k, "count": brackets.len(), "words": words, "brackets": brackets }),
            ))
        }
        Command::Selftest { seed } => {
            let reports = checks::run_all(*seed, budget);
            let all_pass = reports.iter().all(|r| r.passed());
            let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
            let json = json!({
                "seed": seed,
                "passed": all_pass,
                "suites": reports.iter().map(|r| json!({
                    "name": r.name,
                    "cases": r.cases,
                    "failures": r.failures,
                    "first_failure": r.first_failure,
                })).collect::<Vec<_>>(),
            });
            Ok(Report { text, json, exit: if all_pass { EXIT_OK } else { EXIT_FAIL } })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("commcalc").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn expand_text() {
        let (code, out, _) = run_capture(&["expand", "[x1,x2]", "--deg", "2", "--format", "text"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "1 + X1*X2 - X2*X1");
    }

    #[test]
    fn witt_text() {
        let (code, out, _) = run_capture(&["witt", "--n-gens", "2", "--k", "3"]);
        assert_eq!((code, out.trim()), (0, "2"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        let (code, _, err) = run_capture(&["expand", "[x1,", "--deg", "2"]);
        assert_eq!(code, EXIT_USAGE);
        assert_eq!(err.lines().count(), 1);
        assert_eq!(run_capture(&["verify", "--stage", "1", "--k", "5", "--dim", "3"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["verify", "--stage", "1", "--k", "5", "--budget", "10"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["coeff", "[x1,x2]", "--target", "x1,x1"]).0, EXIT_USAGE);
    }

    #[test]
    fn budget_exit_code() {
        let (code, _, err) = run_capture(&["verify", "--stage", "3", "--k", "17", "--mode", "full", "--budget", "10000"]);
        assert_eq!(code, EXIT_BUDGET, "{err}");
    }
}
