//! Command line front end.
//!
//! Exit codes: 0 on success, 1 when a verification-style command found a
//! mismatch, 2 on usage or input errors.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::algebra::IntMat2;
use crate::conjugacy::{conjugate_mod_n, locally_conjugate, triple};
use crate::corpus::builtin_corpus;
use crate::lattice::{observed_orders, observed_periods};
use crate::periods::{classify, classify_circle};
use crate::report::{build_report, OracleReport, Verdict};

/// Matrix entries are bounded so every derived quantity in a report
/// (trace, determinant, discriminant, gcd invariant) stays within `i64`.
pub const ENTRY_BOUND: i64 = 700_000_000;

fn parse_matrix(s: &str) -> Result<IntMat2, String> {
    let m: IntMat2 = s.parse().map_err(|e| format!("{e}"))?;
    for entry in [&m.a, &m.b, &m.c, &m.d] {
        if entry.magnitude() > &num_bigint::BigUint::from(ENTRY_BOUND as u64) {
            return Err(format!("entry {entry} exceeds the bound {ENTRY_BOUND}"));
        }
    }
    Ok(m)
}

#[derive(Parser)]
#[command(
    name = "toral",
    version,
    about = "Period sets of torus maps induced by integer matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify matrices: class, period sets, invariants, fixed-point counts
    Classify(ClassifyArgs),
    /// Check classifications against the brute-force lattice oracle
    Verify(VerifyArgs),
    /// Print the classification table, rebuilt from the builtin corpus
    Table(TableArgs),
    /// Compare two matrices for conjugacy over residue rings
    Conj(ConjArgs),
    /// Classify degree-d circle maps x -> d·x
    Circle(CircleArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Matrices as "a b c d" (row major)
    #[arg(value_parser = parse_matrix, required_unless_present = "file")]
    matrices: Vec<IntMat2>,
    /// Read additional matrices from a file, one per line, '#' comments
    #[arg(long)]
    file: Option<PathBuf>,
    /// Emit one JSON object per matrix instead of text
    #[arg(long)]
    json: bool,
    /// Also scan lattices with denominators 2..=N and report what they show
    #[arg(long, value_name = "N")]
    oracle: Option<u64>,
    /// List period-set members up to this bound
    #[arg(long, default_value_t = 12)]
    window: u64,
    /// How many fixed-point counts to include
    #[arg(long, default_value_t = 8)]
    nielsen: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Matrices as "a b c d"; default is the full --range 2 sweep
    #[arg(value_parser = parse_matrix)]
    matrices: Vec<IntMat2>,
    /// Read matrices from a file, one per line, '#' comments
    #[arg(long)]
    file: Option<PathBuf>,
    /// Sweep every matrix with entries in [-R, R]
    #[arg(long, value_name = "R", conflicts_with_all = ["matrices", "file"])]
    range: Option<u64>,
    /// Periods up to this bound must all be seen for completeness
    #[arg(long, default_value_t = 8)]
    window: u64,
    /// Largest lattice denominator the oracle may scan
    #[arg(long, default_value_t = 500, value_name = "N")]
    max_lattice: u64,
    /// Emit one JSON object per matrix instead of text
    #[arg(long)]
    json: bool,
    /// Print failures only
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct TableArgs {
    /// Which table to print
    #[arg(value_parser = ["torus", "circle"], default_value = "torus")]
    which: String,
}

#[derive(Args)]
struct ConjArgs {
    #[arg(value_parser = parse_matrix)]
    a: IntMat2,
    #[arg(value_parser = parse_matrix)]
    b: IntMat2,
    /// Search witnesses for every modulus 2..=N
    #[arg(long, default_value_t = 8, value_name = "N")]
    max_modulus: u64,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CircleArgs {
    /// Degrees to classify
    #[arg(required_unless_present = "range", allow_negative_numbers = true)]
    degrees: Vec<i64>,
    /// Classify every degree in [-D, D]
    #[arg(long, value_name = "D", conflicts_with = "degrees")]
    range: Option<u64>,
    /// Also collect multiplicative orders over moduli 2..=N and compare
    #[arg(long, value_name = "N")]
    oracle: Option<u64>,
    /// List period-set members up to this bound
    #[arg(long, default_value_t = 12)]
    window: u64,
    /// Emit one JSON object per degree instead of text
    #[arg(long)]
    json: bool,
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Classify(args) => cmd_classify(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
        Command::Conj(args) => cmd_conj(args),
        Command::Circle(args) => cmd_circle(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_matrix_file(path: &Path) -> Result<Vec<IntMat2>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let m = parse_matrix(content)
            .map_err(|e| anyhow::anyhow!("{}:{}: {e}", path.display(), idx + 1))?;
        out.push(m);
    }
    Ok(out)
}

fn gather(matrices: Vec<IntMat2>, file: Option<&Path>) -> Result<Vec<IntMat2>> {
    let mut all = matrices;
    if let Some(path) = file {
        all.extend(read_matrix_file(path)?);
    }
    if all.is_empty() {
        bail!("no matrices given");
    }
    Ok(all)
}

fn range_sweep(r: u64) -> Result<Vec<IntMat2>> {
    if r > 6 {
        bail!("--range {r} would sweep {} matrices; stay at 6 or below", (2 * r + 1).pow(4));
    }
    let r = r as i64;
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    out.push(IntMat2::new(a, b, c, d));
                }
            }
        }
    }
    Ok(out)
}

fn format_set(name: &str, set: &crate::periods::PeriodSet, window: u64) -> String {
    let members: Vec<String> = set.truncate(window).iter().map(u64::to_string).collect();
    format!("{name:<14}{set}   within {window}: {{{}}}", members.join(", "))
}

fn cmd_classify(args: ClassifyArgs) -> Result<bool> {
    let matrices = gather(args.matrices, args.file.as_deref())?;
    let mut first = true;
    for m in &matrices {
        let mut report = build_report(m, args.window, args.nielsen);
        if let Some(n_max) = args.oracle {
            let observed = observed_periods(m, n_max);
            report.oracle = Some(OracleReport {
                n_max,
                observed: observed.iter().copied().collect(),
            });
        }
        if args.json {
            println!("{}", serde_json::to_string(&report)?);
            continue;
        }
        if !first {
            println!();
        }
        first = false;
        let c = classify(m);
        println!("matrix        {m}");
        println!("class         {}", report.table_row);
        println!(
            "invariants    trace {}, det {}, discriminant {}, mgcd {}",
            report.trace, report.det, report.discriminant, report.mgcd
        );
        let eigen = match report.eigen.values {
            Some([s, l]) => format!("{} ({s}, {l})", report.eigen.kind),
            None => report.eigen.kind.clone(),
        };
        println!("eigenvalues   {eigen}");
        println!("minimal poly  {}", report.minimal_poly);
        match report.finite_order {
            Some(k) => println!("finite order  {k}"),
            None => println!("finite order  none"),
        }
        println!("automorphism  {}", if report.automorphism { "yes" } else { "no" });
        println!("{}", format_set("per", &c.per, args.window));
        println!("{}", format_set("mper", &c.mper, args.window));
        println!("fixed points  {}", report.nielsen.join(", "));
        if let Some(oracle) = &report.oracle {
            let observed: BTreeSet<u64> = oracle.observed.iter().copied().collect();
            let stray: Vec<u64> = observed
                .iter()
                .copied()
                .filter(|&n| !c.per.contains(n))
                .collect();
            let missing: Vec<u64> = c
                .per
                .truncate(args.window)
                .into_iter()
                .filter(|n| !observed.contains(n))
                .collect();
            let shown: Vec<String> = observed.iter().map(u64::to_string).collect();
            println!(
                "oracle        lattices to {}: observed {{{}}}",
                oracle.n_max,
                shown.join(", ")
            );
            println!(
                "              sound {}   complete within {}: {}",
                if stray.is_empty() { "yes" } else { "NO" },
                args.window,
                if missing.is_empty() {
                    "yes".to_string()
                } else {
                    format!("missing {missing:?}")
                }
            );
        }
    }
    Ok(true)
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let matrices = if let Some(r) = args.range {
        range_sweep(r)?
    } else if args.matrices.is_empty() && args.file.is_none() {
        range_sweep(2)?
    } else {
        gather(args.matrices, args.file.as_deref())?
    };
    let window = args.window;
    let n_max = args.max_lattice;
    let verdicts: Vec<Verdict> = matrices
        .into_par_iter()
        .map(|m| Verdict::scan(m, window, n_max))
        .collect();

    let mut ok = 0u64;
    let mut unsound = 0u64;
    let mut incomplete = 0u64;
    for v in &verdicts {
        let good = v.sound() && v.complete();
        match (v.sound(), v.complete()) {
            (true, true) => ok += 1,
            (false, _) => unsound += 1,
            (true, false) => incomplete += 1,
        }
        if args.quiet && good {
            continue;
        }
        if args.json {
            println!("{}", serde_json::to_string(&v.to_json())?);
        } else {
            println!("{}", v.summary_line());
        }
    }
    if !args.json {
        println!(
            "checked {}: {ok} ok, {unsound} unsound, {incomplete} incomplete",
            verdicts.len()
        );
    }
    Ok(unsound == 0 && incomplete == 0)
}

fn cmd_table(args: TableArgs) -> Result<bool> {
    if args.which == "circle" {
        println!("| degree | per | mper | automorphism |");
        println!("|--------|-----|------|--------------|");
        for (label, degree) in [
            ("1", 1i64),
            ("0", 0),
            ("-1", -1),
            ("-2", -2),
            ("d not in {-2,-1,0,1}", 2),
        ] {
            let c = classify_circle(degree);
            println!(
                "| {label} | {} | {} | {} |",
                c.per,
                c.mper,
                if c.automorphism { "yes" } else { "no" }
            );
        }
        return Ok(true);
    }

    let corpus = builtin_corpus();
    println!("| class | example | trace | det | per | mper |");
    println!("|-------|---------|-------|-----|-----|------|");
    for row in 1..=20u8 {
        let entry = corpus
            .iter()
            .find(|e| e.row == row)
            .unwrap_or_else(|| panic!("corpus lacks an example for class {row}"));
        let c = classify(&entry.matrix);
        assert_eq!(c.row, row, "corpus annotation for {} is stale", entry.matrix);
        let inv = entry.matrix.invariants();
        println!(
            "| {row} | {} | {} | {} | {} | {} |",
            entry.matrix, inv.trace, inv.det, c.per, c.mper
        );
    }
    Ok(true)
}

fn cmd_conj(args: ConjArgs) -> Result<bool> {
    let ta = triple(&args.a);
    let tb = triple(&args.b);
    let equal = locally_conjugate(&args.a, &args.b);
    let mut witnesses: Vec<(u64, Option<[u64; 4]>)> = Vec::new();
    for n in 2..=args.max_modulus {
        witnesses.push((n, conjugate_mod_n(&args.a, &args.b, n)));
    }
    // equal invariants promise a witness for every modulus; a hole here
    // would be a bug worth failing loudly over
    let contradiction = equal && witnesses.iter().any(|(_, w)| w.is_none());

    if args.json {
        let wjson: serde_json::Map<String, serde_json::Value> = witnesses
            .iter()
            .map(|(n, w)| {
                (
                    n.to_string(),
                    w.map(|p| serde_json::json!(p)).unwrap_or(serde_json::Value::Null),
                )
            })
            .collect();
        let out = serde_json::json!({
            "a": args.a.to_string(),
            "b": args.b.to_string(),
            "triple_a": { "trace": ta.trace.to_string(), "det": ta.det.to_string(), "mgcd": ta.mgcd.to_string() },
            "triple_b": { "trace": tb.trace.to_string(), "det": tb.det.to_string(), "mgcd": tb.mgcd.to_string() },
            "locally_conjugate": equal,
            "witnesses": wjson,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("a = {}   trace {}, det {}, mgcd {}", args.a, ta.trace, ta.det, ta.mgcd);
        println!("b = {}   trace {}, det {}, mgcd {}", args.b, tb.trace, tb.det, tb.mgcd);
        println!(
            "locally conjugate: {}",
            if equal { "yes (all three invariants agree)" } else { "no" }
        );
        for (n, w) in &witnesses {
            match w {
                Some(p) => println!(
                    "mod {n}: P = [[{}, {}], [{}, {}]]",
                    p[0], p[1], p[2], p[3]
                ),
                None => println!("mod {n}: no conjugator"),
            }
        }
    }
    if contradiction {
        eprintln!("invariants agree but a witness is missing; this is a bug");
        return Ok(false);
    }
    Ok(true)
}

fn cmd_circle(args: CircleArgs) -> Result<bool> {
    let degrees: Vec<i64> = if let Some(d) = args.range {
        let d = d as i64;
        (-d..=d).collect()
    } else {
        args.degrees.clone()
    };
    let mut all_match = true;
    for &d in &degrees {
        let c = classify_circle(d);
        let oracle = args.oracle.map(|n_max| {
            let mut observed = BTreeSet::from([1u64]);
            observed.extend(observed_orders(d, n_max));
            observed
        });
        let mismatch = oracle.as_ref().map(|obs| {
            let within: BTreeSet<u64> =
                obs.iter().copied().filter(|&k| k <= args.window).collect();
            within != c.per.truncate(args.window)
        });
        if mismatch == Some(true) {
            all_match = false;
        }
        if args.json {
            let out = serde_json::json!({
                "degree": d,
                "per": c.per.to_string(),
                "mper": c.mper.to_string(),
                "automorphism": c.automorphism,
                "observed": oracle,
                "agrees_within_window": mismatch.map(|m| !m),
            });
            println!("{}", serde_json::to_string(&out)?);
        } else {
            let mut line = format!(
                "degree {d:>3}: per {} mper {} {}",
                c.per,
                c.mper,
                if c.automorphism { "(automorphism)" } else { "" }
            );
            if let Some(obs) = &oracle {
                let shown: Vec<String> = obs.iter().take(12).map(u64::to_string).collect();
                line.push_str(&format!(
                    "  oracle {{{}}} {}",
                    shown.join(", "),
                    match mismatch {
                        Some(false) => "agrees",
                        Some(true) => "DISAGREES within window",
                        None => "",
                    }
                ));
            }
            println!("{}", line.trim_end());
        }
    }
    Ok(all_match)
}
