use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use reflmf::decompose::{check_theorems, decompose_group};
use reflmf::group::{admissible_pairs, check_admissible};
use reflmf::rep::{restrict, IrrepLabel};
use reflmf::report::Report;
use reflmf::specht::{isotypic_basis, word_and_index};
use reflmf::Error;

const MAX_M_VAR: &str = "REFLMF_MAX_M";
const DEFAULT_MAX_M: u32 = 24;

/// Matrix factorizations of the discriminant of G(m,p,2).
#[derive(Parser)]
#[command(name = "reflmf", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose S/(z) for one group and compare with the theorems.
    Decompose {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include per-stage milliseconds (makes output non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Check every admissible (m,p) with m ≤ m-max.
    Verify {
        #[arg(long = "m-max")]
        m_max: u32,
        /// Only pairs with this p.
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// List the higher Specht polynomials of one shape.
    Specht {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u32,
        /// e.g. 1@0,1@3 or 2@1 or 11@1, with #l to pick a split summand.
        #[arg(long)]
        shape: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Pipeline(String),
    Mismatch,
}

fn max_m() -> Result<u32, Failure> {
    match std::env::var(MAX_M_VAR) {
        Ok(v) => v.parse().map_err(|_| Failure::Usage(format!("{MAX_M_VAR} must be a positive integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_MAX_M),
    }
}

fn check_bound(m: u32) -> Result<(), Failure> {
    let bound = max_m()?;
    if m > bound {
        return Err(Failure::Usage(format!("m = {m} exceeds the bound {bound} (set {MAX_M_VAR} to raise it)")));
    }
    Ok(())
}

fn pipeline(e: Error) -> Failure {
    match e {
        Error::InadmissiblePair { .. } | Error::Shape(_) => Failure::Usage(e.to_string()),
        other => Failure::Pipeline(other.to_string()),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).and_then(|_| so.flush()).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn decompose(m: u32, p: u32, format: Format, out: &Option<PathBuf>, timing: bool) -> Result<(), Failure> {
    check_admissible(m, p).map_err(pipeline)?;
    check_bound(m)?;
    let t0 = Instant::now();
    let d = decompose_group(m, p).map_err(pipeline)?;
    let t1 = Instant::now();
    let mut report = Report::new(&d);
    if timing {
        let t2 = Instant::now();
        let mut tm = BTreeMap::new();
        tm.insert("pipeline".to_string(), (t1 - t0).as_millis() as u64);
        tm.insert("report".to_string(), (t2 - t1).as_millis() as u64);
        report.timing = Some(tm);
    }
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
    };
    emit(&text, out)
}

struct Row {
    m: u32,
    p: u32,
    line: String,
    ok: bool,
}

fn verify(m_max: u32, p_filter: Option<u32>, jobs: usize, out: &Option<PathBuf>, timing: bool) -> Result<(), Failure> {
    check_bound(m_max)?;
    let pairs: Vec<(u32, u32)> =
        admissible_pairs(m_max).into_iter().filter(|(_, p)| p_filter.is_none_or(|f| f == *p)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let rows: Vec<Row> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(m, p)| {
                let t0 = Instant::now();
                let mut line = format!("({m},{p})");
                let ok = match decompose_group(m, p) {
                    Ok(d) => {
                        let t = check_theorems(&d);
                        let size = |c: &reflmf::classify::ClassCount| c.values().sum::<usize>();
                        let _ = write!(
                            line,
                            "\t{}\tcomputed {}\tpredicted {}\tfree {}\tprinted {}\tmatch {}",
                            t.regime.name(),
                            size(&t.computed),
                            size(&t.reconciled),
                            t.free_rank,
                            if t.printed_match { "yes" } else { "no" },
                            if t.matches { "yes" } else { "no" },
                        );
                        t.matches
                    }
                    Err(e) => {
                        let _ = write!(line, "\terror: {e}");
                        false
                    }
                };
                if timing {
                    let _ = write!(line, "\t{}ms", t0.elapsed().as_millis());
                }
                Row { m, p, line, ok }
            })
            .collect()
    });
    let mut text = String::new();
    for r in &rows {
        debug_assert!(r.m <= m_max && r.p >= 1);
        text.push_str(&r.line);
        text.push('\n');
    }
    let good = rows.iter().filter(|r| r.ok).count();
    let _ = writeln!(text, "{good}/{} pairs match", rows.len());
    emit(&text, out)?;
    if good == rows.len() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn specht(m: u32, p: u32, shape: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    check_admissible(m, p).map_err(pipeline)?;
    check_bound(m)?;
    let labels: Vec<IrrepLabel> = if shape.contains('#') {
        vec![IrrepLabel::parse(shape, m, p).map_err(pipeline)?]
    } else {
        let probe = IrrepLabel::parse(&format!("{shape}#0"), m, p).or_else(|_| IrrepLabel::parse(shape, m, p));
        let first = probe.map_err(pipeline)?;
        restrict(&first.parent, p).map_err(pipeline)?
    };
    let mut text = String::new();
    for label in labels {
        let basis = isotypic_basis(&label);
        let _ = writeln!(text, "irrep {label} of G({m},{p},2), dim {}, {} basis polynomials", label.dim(), basis.len());
        for e in &basis.entries {
            let (word, idx) = word_and_index(&e.q);
            let w: Vec<String> = word.iter().map(|v| v.to_string()).collect();
            let i: Vec<String> = idx.iter().map(|(c, v)| format!("{}:{}", c.entry, v)).collect();
            let _ = writeln!(text, "  Q = {}  word {}  index {}", e.q, w.join(""), i.join(" "));
            let _ = writeln!(text, "  T = {}", e.t);
            let _ = writeln!(text, "    {}", e.poly);
        }
    }
    emit(&text, out)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Command::Decompose { m, p, format, out, timing } => decompose(m, p, format, &out, timing),
        Command::Verify { m_max, p, jobs, out, timing } => verify(m_max, p, jobs, &out, timing),
        Command::Specht { m, p, shape, out } => specht(m, p, &shape, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Pipeline(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch) => ExitCode::from(1),
    }
}
