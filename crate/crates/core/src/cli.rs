//! Command-line front end. [`run_cli`] takes the argument list and output
//! streams explicitly so it can be driven from tests.
//!
//! Errors go to the error stream as `error[<kind>]: <message>` with exit code
//! 2 for parse and usage errors, 1 for capacity errors and 3 for failed checks.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::betti::{
    hilbert_consistency, multigraded_betti_koszul, multigraded_betti_taylor, DEFAULT_TAYLOR_CAP,
};
use crate::corpus::{random_corpus, CorpusParams};
use crate::error::Error;
use crate::monomial::MonomialIdeal;
use crate::parse::{parse_family, parse_ideal, parse_n_range};
use crate::stabilization::{
    family_sweep, format_linear, format_seq, stab_seq, ExactLinearFit, FamilySweepResult,
    StabReport, DEFAULT_LOOKAHEAD,
};
use crate::table::{resolution_skeleton, BettiTable, TableJson};

#[derive(Debug, Parser)]
#[command(name = "bettistab", version, about = "Graded Betti tables of monomial ideals and their powers")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Betti table of an ideal or one of its powers.
    Betti(BettiArgs),
    /// Stabilization sequence of the powers of an ideal.
    Stabseq(StabseqArgs),
    /// Stabilization sequences across a linear family.
    Sweep(SweepArgs),
    /// Random differential test of the two Betti backends and the Hilbert witness.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct IdealArgs {
    /// Comma-separated variable names.
    #[arg(long)]
    ring: String,
    /// Comma-separated generators, e.g. "x1*x2^2, x3^3".
    #[arg(long)]
    ideal: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    M2,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeqFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct BettiArgs {
    #[command(flatten)]
    input: IdealArgs,
    #[arg(long, default_value_t = 1)]
    power: u32,
    #[arg(long, value_enum, default_value_t = TableFormat::M2)]
    format: TableFormat,
    /// Also print the shape of the free resolution.
    #[arg(long)]
    skeleton: bool,
}

#[derive(Debug, Args)]
struct StabseqArgs {
    #[command(flatten)]
    input: IdealArgs,
    #[arg(long)]
    max_power: u32,
    #[arg(long, default_value_t = DEFAULT_LOOKAHEAD)]
    lookahead: u32,
    /// Print the table of every power in the sequence.
    #[arg(long)]
    include_bettis: bool,
    #[arg(long, value_enum, default_value_t = SeqFormat::Text)]
    format: SeqFormat,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    ring: String,
    /// Generators with exponents linear in n, e.g. "a^(6n-1)*b".
    #[arg(long)]
    family: String,
    /// Inclusive range `A..B`.
    #[arg(long = "n")]
    n_range: String,
    #[arg(long)]
    max_power: u32,
    #[arg(long, default_value_t = DEFAULT_LOOKAHEAD)]
    lookahead: u32,
    /// Report exact linear fits of the index and sequence length in n.
    #[arg(long)]
    fit: bool,
    #[arg(long, value_enum, default_value_t = SweepFormat::Text)]
    format: SweepFormat,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    count: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    max_vars: usize,
    #[arg(long, default_value_t = 8)]
    max_gens: usize,
    #[arg(long, default_value_t = 6)]
    max_exp: u32,
    /// Largest generator count handed to the Taylor oracle.
    #[arg(long, default_value_t = DEFAULT_TAYLOR_CAP)]
    taylor_cap: usize,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn report(&self) -> (i32, String) {
        match self {
            Failure::Usage(m) => (2, format!("error[usage]: {m}")),
            Failure::Check(m) => (3, format!("error[check]: {m}")),
            Failure::Lib(e) => {
                let kind = match e {
                    Error::Parse { .. } => "parse",
                    Error::Capacity { .. } => "capacity",
                    Error::Domain { .. } => "domain",
                    Error::Context { .. } | Error::Argument(_) | Error::InvalidIdeal(_) => "usage",
                };
                let code = if matches!(e, Error::Capacity { .. }) { 1 } else { 2 };
                (code, format!("error[{kind}]: {e}"))
            }
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Runs the command line `args` (including the program name) and returns the
/// process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or_default();
                    let first = first.strip_prefix("error: ").unwrap_or(first);
                    let _ = writeln!(err, "error[usage]: {first}");
                    2
                }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error[usage]: cannot start worker pool: {e}");
            return 2;
        }
    };
    let outcome = pool.install(|| match &cli.command {
        Command::Betti(a) => betti(a),
        Command::Stabseq(a) => stabseq(a),
        Command::Sweep(a) => sweep(a),
        Command::Check(a) => check(a),
    });
    match outcome {
        Ok(text) => {
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return 1;
            }
            0
        }
        Err(f) => {
            let (code, message) = f.report();
            let _ = writeln!(err, "{message}");
            code
        }
    }
}

fn tables_json(tables: &[(u32, &BettiTable)]) -> Value {
    let mut map = Map::new();
    for (d, t) in tables {
        map.insert(d.to_string(), serde_json::to_value(TableJson::from(*t)).expect("serializable"));
    }
    Value::Object(map)
}

fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows(out: &mut String, d: u32, table: &BettiTable) {
    for (i, j, m) in table.entries() {
        out.push_str(&format!("{d},{i},{j},{m}\n"));
    }
}

fn betti(a: &BettiArgs) -> Outcome {
    let ideal = parse_ideal(&a.input.ring, &a.input.ideal)?;
    if a.power == 0 {
        return Err(Failure::Usage("--power must be at least 1".into()));
    }
    let power = ideal.power(a.power)?;
    let table = multigraded_betti_koszul(&power).graded();
    let mut s = match a.format {
        TableFormat::M2 => table.render_m2(),
        TableFormat::Csv => {
            let mut s = String::from("d,i,j,multiplicity\n");
            csv_rows(&mut s, a.power, &table);
            s
        }
        TableFormat::Json => {
            let mut v = json!({
                "ideal": ideal.generator_strings(),
                "r": ideal.min_gen_degree(),
                "tables": tables_json(&[(a.power, &table)]),
            });
            if a.skeleton {
                v["skeleton"] = json!(resolution_skeleton(&table));
            }
            return Ok(to_pretty(&v));
        }
    };
    if a.skeleton && !matches!(a.format, TableFormat::Csv) {
        s.push('\n');
        s.push_str(&resolution_skeleton(&table));
        s.push('\n');
    }
    Ok(s)
}

fn report_json(report: &StabReport) -> Value {
    let tables: Vec<(u32, &BettiTable)> = report.tables.iter().map(|(d, t)| (*d, t)).collect();
    json!({
        "ideal": report.ideal.generator_strings(),
        "r": report.shift_r,
        "tables": tables_json(&tables),
        "stab_seq": report.stab_seq,
        "estimated_stab": report.estimated_stab,
        "stable_run_length": report.stable_run_length,
    })
}

fn estimate_line(label: &str, report: &StabReport) -> String {
    let estimate = report
        .estimated_stab
        .map_or_else(|| "undetermined".to_string(), |d| d.to_string());
    format!(
        "estimated {label} = {estimate} (unchanged for {} powers up to {}, lookahead {})\n",
        report.stable_run_length, report.max_power, report.lookahead_used
    )
}

fn stabseq(a: &StabseqArgs) -> Outcome {
    let ideal = parse_ideal(&a.input.ring, &a.input.ideal)?;
    let report = stab_seq(&ideal, a.max_power, a.lookahead, a.include_bettis)?;
    if let SeqFormat::Json = a.format {
        return Ok(to_pretty(&report_json(&report)));
    }
    let mut s = format!("StabSeq(I) = {}\n", format_seq(&report.stab_seq));
    s.push_str(&estimate_line("Stab(I)", &report));
    if report.equigenerated.is_none() {
        s.push_str(&format!(
            "note: not equigenerated; shapes compared with r = {}\n",
            report.shift_r
        ));
    }
    if !report.recurrences.is_empty() {
        s.push_str(&format!(
            "note: shapes recur at d = {}\n",
            format_seq(&report.recurrences)
        ));
    }
    for (d, table) in &report.tables {
        s.push_str(&format!("\nd = {d}\n"));
        s.push_str(&table.render_m2());
    }
    Ok(s)
}

fn fit_line(label: &str, fit: &Option<ExactLinearFit>) -> String {
    match fit {
        Some(f) => format!(
            "{label} = {} (exact on {})\n",
            format_linear(f.slope, f.intercept, "n"),
            f.range_label()
        ),
        None => format!("{label}: no exact linear fit\n"),
    }
}

fn fit_json(fit: &Option<ExactLinearFit>) -> Value {
    match fit {
        Some(f) => json!({"slope": f.slope, "intercept": f.intercept, "n": f.points}),
        None => Value::Null,
    }
}

fn sweep(a: &SweepArgs) -> Outcome {
    let family = parse_family(&a.ring, &a.family)?;
    let range = parse_n_range(&a.n_range)?;
    let result: FamilySweepResult = family_sweep(&family, range, a.max_power, a.lookahead)?;
    match a.format {
        SweepFormat::Text => {
            let mut s = String::new();
            for (n, r) in &result.reports {
                s.push_str(&format!("n = {n}: StabSeq(I_n) = {}\n", format_seq(&r.stab_seq)));
                s.push_str(&format!("  {}", estimate_line("Stab(I_n)", r)));
            }
            if a.fit {
                s.push_str(&fit_line("Stab(I_n)", &result.stab_fit));
                s.push_str(&fit_line("|StabSeq(I_n)|", &result.cardinality_fit));
            }
            Ok(s)
        }
        SweepFormat::Csv => {
            let mut s = String::from("n,stab_estimate,seq\n");
            for (n, r) in &result.reports {
                let est = r.estimated_stab.map(|d| d.to_string()).unwrap_or_default();
                let seq: Vec<String> = r.stab_seq.iter().map(u32::to_string).collect();
                s.push_str(&format!("{n},{est},{}\n", seq.join(";")));
            }
            Ok(s)
        }
        SweepFormat::Json => {
            let members: Map<String, Value> = result
                .reports
                .iter()
                .map(|(n, r)| (n.to_string(), report_json(r)))
                .collect();
            let mut v = json!({
                "family": family.generator_strings(),
                "members": members,
            });
            if a.fit {
                v["stab_fit"] = fit_json(&result.stab_fit);
                v["cardinality_fit"] = fit_json(&result.cardinality_fit);
            }
            Ok(to_pretty(&v))
        }
    }
}

fn describe(ideal: &MonomialIdeal) -> String {
    format!("{} over {}", ideal, ideal.ring().names().join(","))
}

fn check(a: &CheckArgs) -> Outcome {
    if a.max_vars == 0 || a.max_gens == 0 || a.max_exp == 0 {
        return Err(Failure::Usage("--max-vars, --max-gens and --max-exp must be positive".into()));
    }
    let params = CorpusParams {
        max_vars: a.max_vars,
        max_gens: a.max_gens,
        max_exp: a.max_exp,
    };
    let corpus = random_corpus(a.count, a.seed, params);
    for (k, ideal) in corpus.iter().enumerate() {
        let koszul = multigraded_betti_koszul(ideal);
        let taylor = multigraded_betti_taylor(ideal, a.taylor_cap)?;
        if koszul != taylor {
            return Err(Failure::Check(format!(
                "ideal #{k} {}: Koszul and Taylor Betti numbers differ",
                describe(ideal)
            )));
        }
        let table = koszul.graded();
        let j_max = table.max_shift().unwrap_or(0) + ideal.num_vars() as u64;
        if !hilbert_consistency(ideal, &table, j_max) {
            return Err(Failure::Check(format!(
                "ideal #{k} {}: Betti table contradicts the Hilbert function",
                describe(ideal)
            )));
        }
    }
    Ok(format!(
        "check: {} ideals (seed {}), Koszul = Taylor and Hilbert consistent for all\n",
        a.count, a.seed
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_cli(std::iter::once("bettistab").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn betti_formats() {
        let base = ["betti", "--ring", "x1,x2,x3", "--ideal", "x1*x2^2, x1*x3^2, x2^3, x1^3"];
        let (code, out, _) = run(&base);
        assert_eq!(code, 0);
        assert_eq!(out, "     - 0 1 2\ntotal: 4 4 1\n    3: 4 1 .\n    4: . 3 .\n    5: . . 1\n");

        let (_, out, _) = run(&[&base[..], &["--format", "csv"]].concat());
        assert_eq!(out, "d,i,j,multiplicity\n1,0,3,4\n1,1,4,1\n1,1,5,3\n1,2,7,1\n");

        let (_, out, _) = run(&[&base[..], &["--skeleton"]].concat());
        assert!(out.ends_with("\n0 -> R(-7) -> R(-4) ++ R^3(-5) -> R^4(-3) -> I -> 0\n"));

        let (_, out, _) = run(&[&base[..], &["--format", "json"]].concat());
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["r"], 3);
        assert_eq!(v["tables"]["1"]["entries"][0], json!([0, 3, 4]));
    }

    #[test]
    fn error_codes() {
        let (code, _, err) = run(&["betti", "--ring", "x,y", "--ideal", "x*z"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error[parse]:"), "{err}");
        let (code, _, err) = run(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error[usage]:"), "{err}");
        let (code, _, err) = run(&["betti", "--ring", "x,y", "--ideal", "1"]);
        assert_eq!(code, 2, "{err}");
        let (code, _, err) = run(&["check", "--count", "50", "--seed", "1", "--max-gens", "9", "--taylor-cap", "4"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error[capacity]:"), "{err}");
        let (code, _, err) = run(&["sweep", "--ring", "a", "--family", "a^(n-3)", "--n", "1..2", "--max-power", "2"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error[domain]:"), "{err}");
    }

    #[test]
    fn stabseq_text_and_json() {
        let args = ["stabseq", "--ring", "x,y", "--ideal", "x^2, y^2", "--max-power", "9", "--include-bettis"];
        let (code, out, _) = run(&args);
        assert_eq!(code, 0);
        assert!(out.starts_with("StabSeq(I) = {1}\nestimated Stab(I) = 1 (unchanged for 8 powers up to 9, lookahead 7)\n"));
        assert!(out.contains("\nd = 1\n"));
        let (_, out, _) = run(&[&args[..], &["--format", "json"]].concat());
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["stab_seq"], json!([1]));
        assert_eq!(v["estimated_stab"], 1);
        assert_eq!(v["stable_run_length"], 8);
    }

    #[test]
    fn small_check_passes() {
        let (code, out, err) = run(&["check", "--count", "10", "--seed", "7", "--threads", "2"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.starts_with("check: 10 ideals"));
    }
}
