use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use unising::classify::{cross_check_table, Report};
use unising::gtables::{CharTable, Family};
use unising::ingest::{self, FIXTURES};
use unising::mult::{eig_mult, spectrum};
use unising::oracle::{self, DEFAULT_BOUND};

/// Eigenvalue-one multiplicities and unisingularity of characters of rank 1 groups of Lie type.
#[derive(Parser, Debug)]
#[command(name = "unising", version)]
struct Cli {
    /// Output format (each verb has its own default).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// With `mult`: print the whole eigenvalue spectrum instead of one multiplicity.
    #[arg(long, global = true)]
    spectrum: bool,
    /// Also compare against brute-force enumeration where the group is small enough.
    #[arg(long, global = true)]
    oracle: bool,
    /// Largest group order the oracle will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    max_order: u128,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Tbl,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the character table of FAMILY at q (default: TableFile).
    Table { family: String, q: u64 },
    /// Classify every character (default: CSV).
    Classify { family: String, q: u64 },
    /// Multiplicity of E(m)^I (default I = 0) for CHAR at CLASS.
    Mult { family: String, q: u64, char: String, class: String, i: Option<i64> },
    /// Cross-check the classification over a range a..b of q; exits 1 on any disagreement.
    Verify { family: String, range: String },
    /// Classify a table read from a file in the UNISING-TBL format.
    Ingest { file: PathBuf },
    /// Classify the fixture tables and compare with the stated failures.
    Fixtures,
}

enum Fail {
    Usage(String),
    Check(String),
}

type Out<'a> = &'a mut dyn Write;

fn family(s: &str) -> Result<Family, Fail> {
    Family::from_tag(s)
        .filter(|f| *f != Family::Ingested)
        .ok_or_else(|| Fail::Usage(format!("unknown family {s:?}; expected one of PGL2 PSL2 PGU3 PSU3 SUZUKI REE2G2")))
}

fn build(f: Family, q: u64) -> Result<CharTable, Fail> {
    if !f.admissible(q) {
        return Err(Fail::Usage(format!("q = {q} is not admissible for {f}")));
    }
    let t = f.build(q).map_err(|e| Fail::Check(e.to_string()))?;
    t.validate().map_err(|e| Fail::Check(format!("{}: {e}", t.name)))?;
    Ok(t)
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, Fail> {
    let bad = || Fail::Usage(format!("bad range {s:?}; expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn emit_report(out: Out, r: &Report, fmt: Format) -> std::io::Result<()> {
    match fmt {
        Format::Csv => out.write_all(r.to_csv().as_bytes()),
        _ => out.write_all(r.to_text().as_bytes()),
    }
}

/// Structure and Frobenius cross-check against enumeration; Ok(None) when too large.
fn oracle_check(t: &CharTable, bound: u128) -> Result<Option<String>, String> {
    let g = match oracle::enumerate_bounded(t.family.tag, t.family.q, bound) {
        Ok(g) => g,
        Err(oracle::OracleError::Refused { .. }) | Err(oracle::OracleError::Unsupported(_)) => return Ok(None),
        Err(e) => return Err(e.to_string()),
    };
    let s = oracle::compare_structure(t, &g);
    if !s.ok() {
        return Err(format!("{}: structure mismatch: {}", t.name, s.problems.join("; ")));
    }
    let n = oracle::double_entry(t, &g, &s.matching).map_err(|e| format!("{}: {e}", t.name))?;
    Ok(Some(format!("{}: oracle agrees ({} classes, {} multiplicities)", t.name, g.classes.len(), n)))
}

fn run(cli: &Cli, out: Out) -> Result<(), Fail> {
    let io = |e: std::io::Error| Fail::Check(e.to_string());
    match &cli.cmd {
        Cmd::Table { family: f, q } => {
            let t = build(family(f)?, *q)?;
            match cli.format.unwrap_or(Format::Tbl) {
                Format::Tbl => write!(out, "{}", ingest::render(&t)).map_err(io)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let head: Vec<&str> =
                        std::iter::once("char_label").chain(t.classes.iter().map(|c| c.label.as_str())).collect();
                    w.write_record(&head).map_err(|e| Fail::Check(e.to_string()))?;
                    for r in &t.chars {
                        let mut rec = vec![r.label.clone()];
                        rec.extend(r.values.iter().map(|v| v.to_string()));
                        w.write_record(&rec).map_err(|e| Fail::Check(e.to_string()))?;
                    }
                    out.write_all(&w.into_inner().map_err(|e| Fail::Check(e.to_string()))?).map_err(io)?;
                }
                Format::Text => {
                    writeln!(out, "{}  |G| = {}  {} classes", t.name, t.order, t.classes.len()).map_err(io)?;
                    for c in &t.classes {
                        writeln!(out, "  {:<28} order {:>6}  size {}", c.label, c.order, c.size).map_err(io)?;
                    }
                    for r in &t.chars {
                        writeln!(out, "  {:<40} degree {}", r.label, r.degree()).map_err(io)?;
                    }
                }
            }
        }
        Cmd::Classify { family: f, q } => {
            let t = build(family(f)?, *q)?;
            let r = cross_check_table(&t).map_err(|e| Fail::Check(e.to_string()))?;
            emit_report(out, &r, cli.format.unwrap_or(Format::Csv)).map_err(io)?;
            if cli.oracle {
                match oracle_check(&t, cli.max_order) {
                    Ok(Some(m)) => eprintln!("{m}"),
                    Ok(None) => eprintln!("{}: too large for the oracle (bound {})", t.name, cli.max_order),
                    Err(m) => return Err(Fail::Check(m)),
                }
            }
            if !r.ok() {
                return Err(Fail::Check(format!("{}: classification disagrees with prediction", t.name)));
            }
        }
        Cmd::Mult { family: f, q, char, class, i } => {
            let t = build(family(f)?, *q)?;
            let chi = t.char_index(char).map_err(|e| Fail::Usage(e.to_string()))?;
            let c = t.class_index(class).map_err(|e| Fail::Usage(e.to_string()))?;
            if cli.spectrum {
                let s = spectrum(&t, chi, c).map_err(|e| Fail::Check(e.to_string()))?;
                let s: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                writeln!(out, "{}", s.join(" ")).map_err(io)?;
            } else {
                let m = eig_mult(&t, chi, c, i.unwrap_or(0)).map_err(|e| Fail::Check(e.to_string()))?;
                writeln!(out, "{m}").map_err(io)?;
            }
        }
        Cmd::Verify { family: f, range } => {
            let f = family(f)?;
            let range = parse_range(range)?;
            let (qs, skipped): (Vec<u64>, Vec<u64>) = range.partition(|&q| f.admissible(q));
            if !skipped.is_empty() {
                let s: Vec<String> = skipped.iter().map(|q| q.to_string()).collect();
                writeln!(out, "skipped (not admissible for {f}): {}", s.join(" ")).map_err(io)?;
            }
            let fmt = cli.format.unwrap_or(Format::Text);
            let results: Vec<Result<(Report, Option<String>), String>> = qs
                .par_iter()
                .map(|&q| {
                    let t = f.build(q).map_err(|e| e.to_string())?;
                    t.validate().map_err(|e| format!("{}: {e}", t.name))?;
                    let r = cross_check_table(&t).map_err(|e| e.to_string())?;
                    let o = if cli.oracle { oracle_check(&t, cli.max_order)? } else { None };
                    Ok((r, o))
                })
                .collect();
            let mut bad = Vec::new();
            for (q, res) in qs.iter().zip(results) {
                match res {
                    Ok((r, o)) => {
                        match fmt {
                            Format::Csv => emit_report(out, &r, fmt).map_err(io)?,
                            _ => {
                                let n = r.disagreements().count();
                                let status = if r.ok() { "ok" } else { "FAIL" };
                                writeln!(out, "{} {status}: {} rows, {n} disagreements", r.name, r.rows.len()).map_err(io)?;
                                if !r.ok() {
                                    emit_report(out, &r, Format::Text).map_err(io)?;
                                }
                            }
                        }
                        if let Some(o) = o {
                            writeln!(out, "{o}").map_err(io)?;
                        }
                        if !r.ok() {
                            bad.push(q.to_string());
                        }
                    }
                    Err(e) => {
                        writeln!(out, "{f}({q}) FAIL: {e}").map_err(io)?;
                        bad.push(q.to_string());
                    }
                }
            }
            if !bad.is_empty() {
                return Err(Fail::Check(format!("{f}: failures at q = {}", bad.join(" "))));
            }
        }
        Cmd::Ingest { file } => {
            let t = ingest::read_file(file).map_err(|e| match e {
                ingest::IngestError::Io { .. } => Fail::Usage(e.to_string()),
                e => Fail::Check(e.to_string()),
            })?;
            let r = cross_check_table(&t).map_err(|e| Fail::Check(e.to_string()))?;
            emit_report(out, &r, cli.format.unwrap_or(Format::Csv)).map_err(io)?;
            if !r.ok() {
                return Err(Fail::Check(format!("{}: classification disagrees with prediction", t.name)));
            }
        }
        Cmd::Fixtures => {
            let fmt = cli.format.unwrap_or(Format::Text);
            let mut bad = Vec::new();
            for name in FIXTURES {
                match ingest::fixture(name) {
                    Ok(t) => {
                        let r = cross_check_table(&t).map_err(|e| Fail::Check(e.to_string()))?;
                        emit_report(out, &r, fmt).map_err(io)?;
                        if !r.ok() {
                            bad.push(name);
                        }
                    }
                    Err(ingest::IngestError::NotShipped(_)) if fmt != Format::Csv => {
                        writeln!(out, "{name}: not present, skipped").map_err(io)?;
                    }
                    Err(ingest::IngestError::NotShipped(_)) => {}
                    Err(e) => {
                        writeln!(out, "{name}: {e}").map_err(io)?;
                        bad.push(name);
                    }
                }
            }
            if !bad.is_empty() {
                return Err(Fail::Check(format!("fixtures failing: {}", bad.join(" "))));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let res = run(&cli, &mut lock);
    let _ = lock.flush();
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
