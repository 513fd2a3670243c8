//! `wittlab`: builds the standard subalgebras of `W(n)`, runs the verification
//! suites, and prints graded dimensions, orbit checks and dimension tables.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error.

mod report;
mod suites;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use wittlab_core::borel::{build_bq_with, construction_name, Lambda2Cutoff};
use wittlab_core::{
    build_b1_example, build_br, dim_formula_br, dim_formula_br_corrected, gdim_filtered, gdim_formula_br,
    gdim_formula_br_corrected, gdim_formula_homogeneous_borel, gdim_graded, is_completely_solvable, is_torus,
    r_invariant_pr0, random_automorphism, random_unipotent, standard_torus, AutomorphismJson, LaurentPoly, Params,
    PolyAutomorphism, Subspace, WittError,
};

use report::{check, GridSpec, Status, VerificationReport};
use suites::Grid;

#[derive(Parser)]
#[command(name = "wittlab", version, about = "Completely solvable subalgebras of Jacobson-Witt algebras, verified exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Object {
    /// The standard torus t_r.
    T,
    /// The completely solvable subalgebra b_r.
    B,
    /// The solvable, not completely solvable example in W(2).
    #[value(name = "B1")]
    B1,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Algebra,
    Solvability,
    Maximality,
    Dimensions,
    Invariance,
    Consistency,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Write the JSON of t_r, b_r or B1 with a provenance block.
    Build {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        object: Object,
        #[arg(long, default_value_t = 0)]
        r: usize,
        /// Read the Λ2 cutoff index as printed (i−q−1) instead of i−(n−q)−1.
        #[arg(long)]
        lambda2_literal: bool,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, value_delimiter = ',')]
        p_list: Option<Vec<u32>>,
        /// Defaults to 1,2,3 (1,2 for the maximality suite).
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
        #[arg(long, env = "WITTLAB_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Compare the closed-form graded dimension with the enumerated one.
    Gdim {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, value_enum, default_value = "b")]
        object: Object,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
        /// Exit 1 when the formula and the enumeration differ.
        #[arg(long)]
        strict: bool,
    },
    /// Apply random automorphisms to b_r and check gdim and pr0 on each image.
    Orbit {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 20)]
        count: u64,
        #[arg(long, env = "WITTLAB_SEED", default_value_t = 0)]
        seed: u64,
        /// Use only unipotent samples (identity linear part).
        #[arg(long)]
        unipotent: bool,
        /// Apply this automorphism (JSON) instead of random samples.
        #[arg(long)]
        automorphism: Option<PathBuf>,
    },
    /// Tabulate the dimension formula against enumeration.
    Table {
        #[arg(long, value_delimiter = ',', default_value = "5,7")]
        p_list: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        n_list: Vec<usize>,
        #[arg(long, value_enum, default_value = "md")]
        format: TableFormat,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<WittError> for Failure {
    fn from(e: WittError) -> Self {
        match e {
            WittError::InvalidParams(_)
            | WittError::OutOfRange { .. }
            | WittError::Malformed(_)
            | WittError::InvalidAutomorphism(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<bool, Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { p, n, object, r, lambda2_literal, out } => cmd_build(p, n, object, r, lambda2_literal, out),
        Command::Verify { suite, p_list, n_list, seed } => cmd_verify(suite, p_list, n_list, seed),
        Command::Gdim { p, n, r, object, format, strict } => cmd_gdim(p, n, r, object, format, strict),
        Command::Orbit { p, n, r, count, seed, unipotent, automorphism } => {
            cmd_orbit(p, n, r, count, seed, unipotent, automorphism)
        }
        Command::Table { p_list, n_list, format } => cmd_table(&p_list, &n_list, format),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn params(p: u32, n: usize) -> Result<Params, Failure> {
    Ok(Params::new(p, n)?)
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<(), Failure> {
    emit(&(serde_json::to_string_pretty(v)? + "\n"));
    Ok(())
}

fn build_object(pr: Params, object: Object, r: usize, cutoff: Lambda2Cutoff) -> Result<(Subspace, Value), Failure> {
    Ok(match object {
        Object::T => (
            standard_torus(pr, r)?,
            json!({ "object": "t", "construction": "t_r = span{z_i d_i}, z_i = x_i (i <= n-r), 1 + x_i (i > n-r)", "r": r }),
        ),
        Object::B => {
            let b = if r >= 1 && r < pr.n() { build_bq_with(pr, r, cutoff)? } else { build_br(pr, r)? };
            let mut prov = json!({ "object": "b", "construction": construction_name(&pr, r), "r": r });
            if r >= 1 && r < pr.n() {
                let reading = if cutoff == Lambda2Cutoff::Literal { "literal i-q-1" } else { "i-(n-q)-1" };
                prov["lambda2_cutoff"] = json!(reading);
            }
            (b, prov)
        }
        Object::B1 => {
            if pr.n() != 2 {
                return Err(Failure::Usage("B1 lives in W(2); pass --n 2".into()));
            }
            (
                build_b1_example(pr.p())?,
                json!({ "object": "B1", "construction": "span{d1, x1 d1, x1^k d2, x1^k x2 d2 : 0 <= k < p} in W(2)" }),
            )
        }
    })
}

fn cmd_build(p: u32, n: usize, object: Object, r: usize, literal: bool, out: Option<PathBuf>) -> CmdResult {
    let pr = params(p, n)?;
    let cutoff = if literal { Lambda2Cutoff::Literal } else { Lambda2Cutoff::Shifted };
    let (s, mut provenance) = build_object(pr, object, r, cutoff)?;
    provenance["p"] = json!(p);
    provenance["n"] = json!(n);
    let checked = match object {
        Object::T => is_torus(&s),
        Object::B => s.is_subalgebra() && is_completely_solvable(&s).unwrap_or(false),
        Object::B1 => s.is_subalgebra(),
    };
    provenance["checks_passed"] = json!(checked);
    let doc = json!({ "provenance": provenance, "dim": s.dim(), "subspace": s.to_json() });
    let text = serde_json::to_string_pretty(&doc)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => emit(&(text + "\n")),
    }
    if !checked {
        log::error!("internal check failed for the built object");
    }
    Ok(checked)
}

fn resolve_grid(suite: &str, p_list: &Option<Vec<u32>>, n_list: &Option<Vec<usize>>, seed: u64) -> Result<Grid, Failure> {
    let p_list = p_list.clone().unwrap_or_else(|| vec![5, 7]);
    let n_list = n_list.clone().unwrap_or_else(|| {
        if suites::SMALL_N_SUITES.contains(&suite) {
            vec![1, 2]
        } else {
            vec![1, 2, 3]
        }
    });
    for &p in &p_list {
        for &n in &n_list {
            params(p, n)?;
        }
    }
    Ok(Grid { p_list, n_list, seed })
}

fn cmd_verify(suite: Suite, p_list: Option<Vec<u32>>, n_list: Option<Vec<usize>>, seed: u64) -> CmdResult {
    let names: Vec<&str> = match suite {
        Suite::Algebra => vec!["algebra"],
        Suite::Solvability => vec!["solvability"],
        Suite::Maximality => vec!["maximality"],
        Suite::Dimensions => vec!["dimensions"],
        Suite::Invariance => vec!["invariance"],
        Suite::Consistency => vec!["consistency"],
        Suite::All => suites::SUITES.to_vec(),
    };
    let mut reports = Vec::new();
    for name in names {
        let grid = resolve_grid(name, &p_list, &n_list, seed)?;
        log::info!("suite {name} over p {:?}, n {:?}", grid.p_list, grid.n_list);
        let checks = suites::run_suite(name, &grid);
        let spec = GridSpec { p_list: grid.p_list.clone(), n_list: grid.n_list.clone(), seed };
        reports.push(VerificationReport::new(name, spec, checks));
    }
    let ok = reports.iter().all(VerificationReport::ok);
    if reports.len() == 1 {
        print_json(&reports[0])?;
    } else {
        let failed: usize = reports.iter().map(|r| r.failed).sum();
        print_json(&json!({ "suite": "all", "failed": failed, "reports": reports }))?;
    }
    Ok(ok)
}

fn cmd_gdim(p: u32, n: usize, r: usize, object: Object, format: TextOrJson, strict: bool) -> CmdResult {
    let pr = params(p, n)?;
    let (s, _) = build_object(pr, object, r, Lambda2Cutoff::Shifted)?;
    let enumerated = match gdim_graded(&s) {
        Ok(g) => g,
        Err(WittError::NotGraded { .. }) => gdim_filtered(&s),
        Err(e) => return Err(e.into()),
    };
    let mut extra = serde_json::Map::new();
    let formula = match object {
        Object::B => {
            extra.insert("corrected_formula".into(), gdim_formula_br_corrected(p, n, r)?.to_json());
            Some(gdim_formula_br(p, n, r)?)
        }
        Object::B1 => {
            extra.insert("homogeneous_borel_q1".into(), gdim_formula_homogeneous_borel(p, 2, 1)?.to_json());
            Some(gdim_formula_homogeneous_borel(p, 2, 2)?)
        }
        Object::T => None,
    };
    let difference = formula.as_ref().map(|f| &enumerated - f);
    let matches = difference.as_ref().is_none_or(LaurentPoly::is_zero);
    match format {
        TextOrJson::Json => {
            let mut doc = json!({
                "p": p, "n": n, "r": r,
                "enumerated": enumerated.to_json(),
                "formula": formula.as_ref().map(LaurentPoly::to_json),
                "difference": difference.as_ref().map(LaurentPoly::to_json),
            });
            for (k, v) in extra {
                doc[k] = v;
            }
            print_json(&doc)?;
        }
        TextOrJson::Text => {
            let mut text = format!("p = {p}, n = {n}, r = {r}\n");
            let _ = writeln!(text, "enumerated: {enumerated}");
            if let (Some(f), Some(d)) = (&formula, &difference) {
                let _ = writeln!(text, "formula:    {f}");
                let _ = writeln!(text, "difference: {d}");
            }
            for (k, v) in extra {
                let lp = LaurentPoly::from_json(&v)?;
                let _ = writeln!(text, "{}: {lp}", k.replace('_', " "));
            }
            emit(&text);
        }
    }
    Ok(matches || !strict)
}

fn cmd_orbit(
    p: u32,
    n: usize,
    r: usize,
    count: u64,
    seed: u64,
    unipotent: bool,
    file: Option<PathBuf>,
) -> CmdResult {
    let pr = params(p, n)?;
    let b = build_br(pr, r)?;
    let base_gdim = gdim_graded(&b)?;
    let base_pr0 = r_invariant_pr0(&b);
    let samples: Vec<(String, PolyAutomorphism)> = match file {
        Some(path) => {
            let json: AutomorphismJson = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let g = PolyAutomorphism::from_json(&json)?;
            if g.params() != pr {
                return Err(Failure::Usage(format!("automorphism is over {}, expected {pr}", g.params())));
            }
            vec![("file".into(), g)]
        }
        None => (0..count)
            .map(|k| {
                let s = seed.wrapping_add(k);
                let g = if unipotent { random_unipotent(pr, s) } else { random_automorphism(pr, s) };
                (format!("seed {s}"), g)
            })
            .collect(),
    };
    let checks: Vec<_> = samples
        .par_iter()
        .map(|(label, g)| {
            check("orbit-image", json!({ "p": p, "n": n, "r": r, "sample": label }), || {
                let image = g.induced_subspace(&b)?;
                let gd = gdim_filtered(&image);
                let pr0 = r_invariant_pr0(&image);
                let w = json!({ "gdim": gd.to_string(), "pr0": pr0, "equals_base": image == b });
                Ok((gd == base_gdim && pr0 == base_pr0, Some(w)))
            })
        })
        .collect();
    let spec = GridSpec { p_list: vec![p], n_list: vec![n], seed };
    let report = VerificationReport::new("orbit", spec, checks);
    let ok = report.ok();
    print_json(&json!({
        "base": { "dim": b.dim(), "gdim": base_gdim.to_string(), "pr0": base_pr0 },
        "report": report,
    }))?;
    debug_assert!(report.checks.iter().all(|c| c.status == Status::Pass) == ok);
    Ok(ok)
}

fn cmd_table(p_list: &[u32], n_list: &[usize], format: TableFormat) -> CmdResult {
    let mut cells = Vec::new();
    for &p in p_list {
        for &n in n_list {
            params(p, n)?;
            cells.extend((0..=n).map(|r| (p, n, r)));
        }
    }
    let rows: Vec<(u32, usize, usize, i64, usize, i64)> = cells
        .par_iter()
        .map(|&(p, n, r)| {
            let pr = Params::new(p, n).expect("checked");
            let formula = dim_formula_br(p, n, r).expect("r in range");
            let corrected = dim_formula_br_corrected(p, n, r).expect("r in range");
            (p, n, r, formula, build_br(pr, r).expect("r in range").dim(), corrected)
        })
        .collect();
    let mut out = String::new();
    match format {
        TableFormat::Csv => out.push_str("p,n,r,formula,enumerated,match,corrected_formula\n"),
        TableFormat::Md => {
            out.push_str("| p | n | r | formula | enumerated | match | corrected formula |\n");
            out.push_str("|---|---|---|---|---|---|---|\n");
        }
    }
    let mut ok = true;
    for (p, n, r, f, e, c) in rows {
        let m = if f == e as i64 { "ok" } else { "MISMATCH" };
        ok &= f == e as i64;
        let _ = match format {
            TableFormat::Csv => writeln!(out, "{p},{n},{r},{f},{e},{m},{c}"),
            TableFormat::Md => writeln!(out, "| {p} | {n} | {r} | {f} | {e} | {m} | {c} |"),
        };
    }
    emit(&out);
    Ok(ok)
}
