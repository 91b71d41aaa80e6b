//! Command-line front end.
//!
//! Exit codes: 0 success or passing check, 1 failing check, 2 usage error.
//! With `--format json` every code path, errors included, writes one JSON
//! document to stdout.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::betti::MemoTable;
use crate::checks::{aggregate, Checker, StabilityReport};
use crate::error::Error;
use crate::int_poly::IntPoly;
use crate::kostka::KostkaOracle;
use crate::partition::{threshold, Partition};
use crate::poly::{big_json, RationalPoly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "springerstab",
    version,
    about = "Betti numbers, graded decompositions and stability polynomials of type A Springer fibers"
)]
struct Invocation {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Betti memo cache file, loaded if present and rewritten on exit.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursion,
    Kostka,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Poincaré coefficients of a Springer fiber, or one Betti number.
    Betti {
        #[arg(value_parser = parse_partition, allow_hyphen_values = true)]
        partition: Partition,
        /// Return only h^{2K}.
        #[arg(long, value_name = "K")]
        degree: Option<usize>,
    },
    /// Poincaré polynomial by the chosen computation path.
    Poincare {
        #[arg(value_parser = parse_partition, allow_hyphen_values = true)]
        partition: Partition,
        #[arg(long, value_enum, default_value_t = Method::Recursion)]
        method: Method,
    },
    /// Kostka–Foulkes polynomial K_{mu,lambda}(t).
    Kostka {
        #[arg(value_parser = parse_partition, allow_hyphen_values = true)]
        mu: Partition,
        #[arg(value_parser = parse_partition, allow_hyphen_values = true)]
        lambda: Partition,
    },
    /// Multiplicities of irreducibles in H^{2K}(lambda).
    Decompose {
        #[arg(value_parser = parse_partition, allow_hyphen_values = true)]
        partition: Partition,
        #[arg(long, value_name = "K")]
        degree: usize,
    },
    /// The stability polynomial f_{k,r}(x).
    Fpoly {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        latex: bool,
    },
    /// Grid of f_{k,r} for 0 <= k <= KMAX and 2 <= r <= RMAX.
    Table {
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        rmax: usize,
        #[arg(long)]
        latex: bool,
    },
    /// The threshold partition A_{k,r}.
    Threshold {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
    /// Run a stability check and print its report.
    Check {
        #[command(subcommand)]
        which: CheckCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Betti numbers equal f_{k,r}(n) on the stable range.
    Dim {
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        #[arg(long, default_value_t = 4)]
        rmax: usize,
        #[arg(long, default_value_t = 14)]
        nmax: usize,
    },
    /// Graded pieces agree as representations on the stable range.
    Rep {
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, default_value_t = 4)]
        rmax: usize,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
    /// Graded multiplicities are monotone along dominance.
    Mono {
        #[arg(long, default_value_t = 7)]
        nmax: usize,
    },
    /// Partitions with at least k+1 parts match the flag variety in degree 2k.
    Flag {
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
    /// f_{k,r} reproduces the published table.
    Table,
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<std::io::Error> for Usage {
    fn from(e: std::io::Error) -> Self {
        Usage(e.to_string())
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let wants_json = json_requested(&args);
    let inv = match Invocation::try_parse_from(&args) {
        Ok(inv) => inv,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            return usage_error(&e.to_string(), wants_json, out, err);
        }
    };
    let json_out = inv.format == Format::Json;
    match execute(&inv, out) {
        Ok(code) => code,
        Err(Usage(msg)) => usage_error(&msg, json_out, out, err),
    }
}

fn json_requested(args: &[OsString]) -> bool {
    args.windows(2).any(|w| w[0] == "--format" && w[1] == "json")
        || args.iter().any(|a| a == "--format=json")
}

fn usage_error(msg: &str, json_out: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let msg = msg.trim_end();
    if json_out {
        let _ = writeln!(out, "{}", json!({"error": msg}));
    } else {
        let _ = writeln!(err, "{msg}");
    }
    EXIT_USAGE
}

fn execute(inv: &Invocation, out: &mut dyn Write) -> Result<i32, Usage> {
    let memo = MemoTable::new();
    if let Some(path) = &inv.cache {
        if path.exists() {
            memo.load(path)?;
        }
    }
    let kostka = KostkaOracle::new();
    let code = dispatch(inv, &memo, &kostka, out)?;
    if let Some(path) = &inv.cache {
        memo.save(path)?;
    }
    Ok(code)
}

fn dispatch(
    inv: &Invocation,
    memo: &MemoTable,
    kostka: &KostkaOracle,
    out: &mut dyn Write,
) -> Result<i32, Usage> {
    let fmt = inv.format;
    match &inv.command {
        Command::Betti { partition, degree } => {
            let poly = memo.poincare(partition);
            match degree {
                Some(k) => {
                    let b = poly.coeff(*k);
                    match fmt {
                        Format::Text => writeln!(out, "{b}")?,
                        Format::Csv => writeln!(out, "k,betti\n{k},{b}")?,
                        Format::Json => writeln!(
                            out,
                            "{}",
                            json!({"partition": partition, "degree": k, "betti": big_json(&b)})
                        )?,
                    }
                }
                None => write_poincare(out, fmt, partition, &poly, None)?,
            }
        }
        Command::Poincare { partition, method } => {
            let (poly, name) = match method {
                Method::Recursion => (memo.poincare(partition), "recursion"),
                Method::Kostka => (kostka.poincare_kf(partition), "kostka"),
            };
            write_poincare(out, fmt, partition, &poly, Some(name))?;
        }
        Command::Kostka { mu, lambda } => {
            let poly = kostka.kostka_poly(mu, lambda)?;
            match fmt {
                Format::Text => writeln!(out, "{poly}")?,
                Format::Csv => {
                    writeln!(out, "power,coefficient")?;
                    for (i, c) in poly.coeffs().iter().enumerate() {
                        writeln!(out, "{i},{c}")?;
                    }
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"mu": mu, "lambda": lambda, "kostka": poly.to_json(), "display": poly.to_string()})
                )?,
            }
        }
        Command::Decompose { partition, degree } => {
            let dec = kostka.decompose(partition, *degree);
            match fmt {
                Format::Text => {
                    if dec.terms.is_empty() {
                        writeln!(out, "0")?;
                    }
                    for (mu, m) in &dec.terms {
                        writeln!(out, "{mu}: {m}")?;
                    }
                }
                Format::Csv => {
                    writeln!(out, "mu,mult")?;
                    for (mu, m) in &dec.terms {
                        writeln!(out, "\"{mu}\",{m}")?;
                    }
                }
                Format::Json => writeln!(out, "{}", dec.to_json())?,
            }
        }
        Command::Fpoly { k, r, latex } => {
            if *r == 0 {
                return Err(Usage("--r must be at least 1".into()));
            }
            reject_latex(*latex, fmt)?;
            let f = memo.f_poly(*k, *r)?;
            match fmt {
                Format::Text if *latex => writeln!(out, "{}", f.to_latex())?,
                Format::Text => writeln!(out, "{f}")?,
                Format::Csv => writeln!(out, "r,k,polynomial\n{r},{k},{f}")?,
                Format::Json => writeln!(out, "{}", fpoly_json(*k, *r, &f))?,
            }
        }
        Command::Table { kmax, rmax, latex } => {
            if *rmax < 2 {
                return Err(Usage("--rmax must be at least 2".into()));
            }
            reject_latex(*latex, fmt)?;
            let mut grid = Vec::new();
            for r in 2..=*rmax {
                let row = (0..=*kmax)
                    .map(|k| memo.f_poly(k, r))
                    .collect::<Result<Vec<_>, _>>()?;
                grid.push((r, row));
            }
            write_table(out, fmt, *latex, *kmax, &grid)?;
        }
        Command::Threshold { k, r } => {
            if *r == 0 {
                return Err(Usage("--r must be at least 1".into()));
            }
            let a = threshold(*k, *r)?;
            match fmt {
                Format::Text => writeln!(out, "{a}")?,
                Format::Csv => writeln!(out, "k,r,threshold,size\n{k},{r},\"{a}\",{}", a.size())?,
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"k": k, "r": r, "threshold": a, "size": a.size()})
                )?,
            }
        }
        Command::Check { which } => {
            let report = run_check(which, Checker::new(memo, kostka))?;
            write_report(out, fmt, &report)?;
            return Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            });
        }
    }
    Ok(EXIT_OK)
}

fn reject_latex(latex: bool, fmt: Format) -> Result<(), Usage> {
    if latex && fmt != Format::Text {
        return Err(Usage("--latex cannot be combined with --format json or csv".into()));
    }
    Ok(())
}

fn write_poincare(
    out: &mut dyn Write,
    fmt: Format,
    partition: &Partition,
    poly: &IntPoly,
    method: Option<&str>,
) -> std::io::Result<()> {
    match fmt {
        Format::Text => writeln!(out, "{}", poly.join(" ")),
        Format::Csv => {
            writeln!(out, "k,betti")?;
            for (k, c) in poly.coeffs().iter().enumerate() {
                writeln!(out, "{k},{c}")?;
            }
            Ok(())
        }
        Format::Json => {
            let mut doc = json!({"partition": partition, "poincare": poly.to_json()});
            if let Some(m) = method {
                doc["method"] = json!(m);
            }
            writeln!(out, "{doc}")
        }
    }
}

fn fpoly_json(k: usize, r: usize, f: &RationalPoly) -> Value {
    json!({
        "k": k,
        "r": r,
        "polynomial": f.to_string(),
        "coefficients": f.to_json(),
    })
}

fn write_table(
    out: &mut dyn Write,
    fmt: Format,
    latex: bool,
    kmax: usize,
    grid: &[(usize, Vec<RationalPoly>)],
) -> std::io::Result<()> {
    match fmt {
        Format::Json => {
            let cells: Vec<Value> = grid
                .iter()
                .flat_map(|(r, row)| row.iter().enumerate().map(move |(k, f)| fpoly_json(k, *r, f)))
                .collect();
            writeln!(out, "{}", Value::Array(cells))
        }
        Format::Csv => {
            writeln!(out, "r,k,polynomial")?;
            for (r, row) in grid {
                for (k, f) in row.iter().enumerate() {
                    writeln!(out, "{r},{k},{f}")?;
                }
            }
            Ok(())
        }
        Format::Text if latex => {
            writeln!(out, "\\begin{{array}}{{|c|{}}}", "c|".repeat(kmax + 1))?;
            writeln!(out, "\\hline")?;
            let header: Vec<String> = (0..=kmax).map(|k| k.to_string()).collect();
            writeln!(out, "r\\diagdown k&{}\\\\", header.join("&"))?;
            writeln!(out, "\\hline")?;
            for (r, row) in grid {
                let cells: Vec<String> = row.iter().map(RationalPoly::to_latex).collect();
                writeln!(out, "{r}&{}\\\\", cells.join("&"))?;
                writeln!(out, "\\hline")?;
            }
            writeln!(out, "\\end{{array}}")
        }
        Format::Text => {
            for (r, row) in grid {
                for (k, f) in row.iter().enumerate() {
                    writeln!(out, "r={r} k={k}: {f}")?;
                }
            }
            Ok(())
        }
    }
}

fn run_check(which: &CheckCommand, checker: Checker<'_>) -> Result<StabilityReport, Usage> {
    let report = match *which {
        CheckCommand::Dim { kmax, rmax, nmax } => {
            let mut reports = Vec::new();
            for r in 1..=rmax {
                for k in 0..=kmax {
                    reports.push(checker.dim_stability(k, r, nmax)?);
                }
            }
            aggregate("dim", json!({"kmax": kmax, "rmax": rmax, "nmax": nmax}), &reports)
        }
        CheckCommand::Rep { kmax, rmax, nmax } => {
            let mut reports = Vec::new();
            for r in 1..=rmax {
                for k in 0..=kmax {
                    for n in 0..=nmax {
                        reports.push(checker.rep_stability(k, r, n)?);
                    }
                }
            }
            aggregate("rep", json!({"kmax": kmax, "rmax": rmax, "nmax": nmax}), &reports)
        }
        CheckCommand::Mono { nmax } => {
            let reports: Vec<_> = (1..=nmax).map(|n| checker.monotonicity(n)).collect();
            aggregate("mono", json!({"nmax": nmax}), &reports)
        }
        CheckCommand::Flag { nmax, kmax } => {
            let reports: Vec<_> = (1..=nmax).map(|n| checker.flag_corollary(n, kmax)).collect();
            aggregate("flag", json!({"nmax": nmax, "kmax": kmax}), &reports)
        }
        CheckCommand::Table => checker.published_table(),
    };
    Ok(report)
}

fn write_report(out: &mut dyn Write, fmt: Format, report: &StabilityReport) -> std::io::Result<()> {
    let verdict = if report.passed() { "pass" } else { "fail" };
    match fmt {
        Format::Json => writeln!(out, "{}", report.to_json()),
        Format::Csv => writeln!(
            out,
            "check,verdict,vacuous,cases,elapsed_ms\n{},{verdict},{},{},{:.3}",
            report.check, report.vacuous, report.cases, report.elapsed_ms
        ),
        Format::Text => {
            writeln!(
                out,
                "{}: {verdict} ({} cases{}, {:.1} ms)",
                report.check,
                report.cases,
                if report.vacuous { ", vacuous" } else { "" },
                report.elapsed_ms
            )?;
            if let Some(cx) = &report.counterexample {
                writeln!(out, "counterexample: {cx}")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("springerstab").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn betti_outputs() {
        assert_eq!(call(&["betti", "2,1"]), (0, "1 2\n".into(), String::new()));
        let (code, out, _) = call(&["--format", "json", "betti", "2,1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v, json!({"partition": "2,1", "poincare": [1, 2]}));
        assert_eq!(call(&["betti", "2,2", "--degree", "2"]).1, "2\n");
        assert_eq!(call(&["betti", "", "--format", "csv"]).1, "k,betti\n0,1\n");
    }

    #[test]
    fn poincare_methods_agree() {
        for lam in ["3,2,1", "2,2,1,1", "4", "1,1,1,1,1"] {
            let a = call(&["poincare", lam, "--method", "recursion"]).1;
            let b = call(&["poincare", lam, "--method", "kostka"]).1;
            assert_eq!(a, b, "{lam}");
        }
    }

    #[test]
    fn fpoly_and_threshold() {
        assert_eq!(call(&["fpoly", "--k", "2", "--r", "3"]).1, "(x^2-x-2)/2\n");
        assert_eq!(
            call(&["fpoly", "--k", "2", "--r", "3", "--latex"]).1,
            "\\frac{1}{2}\\left(x^{2}-x-2\\right)\n"
        );
        let v: Value =
            serde_json::from_str(&call(&["fpoly", "--k", "1", "--r", "2", "--format", "json"]).1).unwrap();
        assert_eq!(v["coefficients"], json!([[-1, 1], [1, 1]]));
        assert_eq!(call(&["threshold", "--k", "3", "--r", "3"]).1, "2,2,1\n");
        assert_eq!(call(&["threshold", "--k", "3", "--r", "0"]).0, 2);
    }

    #[test]
    fn table_formats() {
        let (code, csv, _) = call(&["table", "--kmax", "2", "--rmax", "3", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(
            csv,
            "r,k,polynomial\n2,0,1\n2,1,x-1\n2,2,(x^2-3x)/2\n3,0,1\n3,1,x-1\n3,2,(x^2-x-2)/2\n"
        );
        let latex = call(&["table", "--kmax", "1", "--rmax", "2", "--latex"]).1;
        assert!(latex.starts_with("\\begin{array}{|c|c|c|}"));
        assert!(latex.contains("2&1&x-1\\\\"));
        assert_eq!(call(&["table", "--kmax", "1", "--rmax", "2", "--latex", "--format", "json"]).0, 2);
    }

    #[test]
    fn kostka_and_decompose() {
        assert_eq!(call(&["kostka", "2,1", "1,1,1"]).1, "t+t^2\n");
        assert_eq!(call(&["kostka", "2,1", "1,1"]).0, 2);
        let (code, out, _) = call(&["decompose", "1,1,1", "--degree", "1", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["decomposition"], json!([{"mu": "2,1", "mult": 1}]));
        assert_eq!(call(&["decompose", "2,1", "--degree", "1"]).1, "2,1: 1\n");
    }

    #[test]
    fn checks_exit_codes() {
        let (code, out, _) = call(&["check", "table", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], json!("pass"));
        let (code, out, _) = call(&["check", "dim", "--kmax", "2", "--rmax", "3", "--nmax", "8"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("dim: pass"));
        assert_eq!(call(&["check", "mono", "--nmax", "4"]).0, 0);
        assert_eq!(call(&["check", "flag", "--nmax", "5", "--kmax", "2"]).0, 0);
        assert_eq!(call(&["check", "rep", "--kmax", "1", "--rmax", "2", "--nmax", "6"]).0, 0);
    }

    #[test]
    fn usage_errors() {
        let (code, out, err) = call(&["betti", "2,x"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("malformed partition"), "{err}");
        let (code, out, _) = call(&["--format", "json", "betti", "2,x"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v["error"].is_string());
        assert_eq!(call(&["betti", "2,1", "--bogus"]).0, 2);
        assert_eq!(call(&[]).0, 2);
        let (code, out, _) = call(&["--format", "json", "frobnicate"]);
        assert_eq!(code, 2);
        assert!(serde_json::from_str::<Value>(&out).is_ok());
    }

    #[test]
    fn cache_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.txt");
        let p = path.to_str().unwrap();
        let uncached = call(&["betti", "3,2,1"]).1;
        assert_eq!(call(&["--cache", p, "betti", "3,2,1"]), (0, uncached.clone(), String::new()));
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("springerstab-cache v1\n"));
        let record = format!("3,2,1\t{}", uncached.trim_end().replace(' ', ","));
        assert!(text.lines().any(|l| l == record), "{text}");
        assert_eq!(call(&["--cache", p, "betti", "3,2,1"]).1, uncached);

        std::fs::write(&path, "springerstab-cache v1\n2,1\t1,7\n").unwrap();
        let (code, out, _) = call(&["--cache", p, "--format", "json", "betti", "2,1"]);
        assert_eq!(code, 2);
        assert!(serde_json::from_str::<Value>(&out).unwrap()["error"].is_string());
    }
}
