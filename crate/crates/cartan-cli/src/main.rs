use std::fmt::Display;
use std::fs;
use std::process::ExitCode;

use cartan_core::cartan::{k1_chain, k2_chain, k3, zeta, RelatorCache};
use cartan_core::oracle::compare_all;
use cartan_core::resolution::{iota, WGen};
use cartan_core::simplicial::{CellSpec, Cochain, FiniteSet};
use cartan_core::steenrod::steenrod_rep;
use cartan_core::suites::{self, Report};
use cartan_core::FormalSum;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "cartan", version, about = "Chain-level Cartan formula for Steenrod operations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// ι(ρ^k e_n) in C(r).
    Iota(Gen),
    /// K1 ι(ρ^k e_n) in E(2r).
    K1(Gen),
    /// K2 ι(ρ^k e_n) in E(2r).
    K2(Gen),
    /// K3(ρ^k e_n) in C(r)⊗C(r).
    K3 {
        #[command(flatten)]
        gen: Gen,
        /// Print only the number of terms.
        #[arg(long)]
        count: bool,
    },
    /// ζ_i(a,b), whose coboundary is the Cartan lift mod p.
    Zeta {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: usize,
        /// Space as inline JSON or a path to a JSON file.
        #[arg(long)]
        space: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The representative of P_s (beta 0) or βP_s (beta 1) on a mod-p cocycle.
    Steenrod {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long, default_value_t = 0)]
        beta: u8,
        #[arg(long)]
        space: String,
        #[arg(long)]
        cocycle: String,
    },
    /// Independent constructions of K3.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Run a verification suite; exits 0 iff every check passes.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct Gen {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    n: usize,
    /// Power of ρ.
    #[arg(long, default_value_t = 0)]
    k: usize,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Compare the recursive, closed and explicit K3 on e_0, …, e_max_n.
    Compare {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    Table1,
    Table2,
    Contraction,
    Resolution,
    Homotopy,
    Oracle,
    Cartan,
    Steenrod,
    Structure,
    All,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteName,
    #[arg(long, default_value_t = 3)]
    p: u64,
    /// Largest simplex dimension (cartan) or total dimension (contraction).
    #[arg(long)]
    max_dim: Option<usize>,
    /// Largest index i for the cartan suite.
    #[arg(long, default_value_t = 2)]
    max_i: usize,
    /// Largest arity (resolution, oracle).
    #[arg(long)]
    max_r: Option<usize>,
    /// Largest degree (resolution, oracle).
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Samples per shape in the structure suite.
    #[arg(long, default_value_t = 3)]
    samples: usize,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Simplicial(#[from] cartan_core::simplicial::SimplicialError),
    #[error(transparent)]
    Cartan(#[from] cartan_core::cartan::CartanError),
    #[error(transparent)]
    Steenrod(#[from] cartan_core::steenrod::SteenrodError),
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum SpaceJson {
    Simplex(usize),
    Boundary(usize),
    Complex(Vec<Vec<usize>>),
    Cells(Vec<CellJson>),
}

#[derive(Deserialize)]
struct CellJson {
    name: String,
    dim: usize,
    /// Faces as `[name, degeneracy word]` or a bare name.
    #[serde(default)]
    faces: Vec<FaceJson>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FaceJson {
    Named(String),
    Degenerate(String, Vec<usize>),
}

#[derive(Deserialize)]
struct CochainJson {
    degree: usize,
    terms: Vec<TermJson>,
}

#[derive(Deserialize)]
struct TermJson {
    coeff: i64,
    key: KeyJson,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum KeyJson {
    Vertices(Vec<usize>),
    Name(String),
}

/// Inline JSON if it looks like JSON, otherwise a path.
fn read_json<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T, CliError> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|source| CliError::Io { path: arg.to_string(), source })?
    };
    Ok(serde_json::from_str(&text)?)
}

fn parse_space(arg: &str) -> Result<FiniteSet, CliError> {
    Ok(match read_json::<SpaceJson>(arg)? {
        SpaceJson::Simplex(n) => FiniteSet::standard_simplex(n),
        SpaceJson::Boundary(n) if n >= 1 => FiniteSet::boundary_of_simplex(n),
        SpaceJson::Boundary(_) => return Err(CliError::Input("the boundary of Δ^0 is empty".into())),
        SpaceJson::Complex(g) => FiniteSet::from_complex(&g)?,
        SpaceJson::Cells(cells) => {
            let specs: Vec<CellSpec> = cells
                .into_iter()
                .map(|c| CellSpec {
                    name: c.name,
                    dim: c.dim,
                    faces: c
                        .faces
                        .into_iter()
                        .map(|f| match f {
                            FaceJson::Named(n) => (n, Vec::new()),
                            FaceJson::Degenerate(n, w) => (n, w),
                        })
                        .collect(),
                })
                .collect();
            FiniteSet::from_cells(&specs)?
        }
    })
}

fn parse_cochain(arg: &str, x: &FiniteSet) -> Result<Cochain<i64>, CliError> {
    let c: CochainJson = read_json(arg)?;
    let mut values = FormalSum::zero();
    for t in c.terms {
        let cell = match &t.key {
            KeyJson::Vertices(v) => x.cell_of_vertices(v),
            KeyJson::Name(n) => x.cell_by_name(n),
        }
        .ok_or_else(|| CliError::Input(format!("no simplex {} in the space", key_text(&t.key))))?;
        if cell.dim as usize != c.degree {
            return Err(CliError::Input(format!("simplex {} does not have degree {}", key_text(&t.key), c.degree)));
        }
        values.add_term(cell, t.coeff);
    }
    Ok(Cochain::from_values(c.degree, values))
}

fn key_text(k: &KeyJson) -> String {
    match k {
        KeyJson::Vertices(v) => format!("{v:?}").replace(' ', ""),
        KeyJson::Name(n) => n.clone(),
    }
}

fn json_terms<K: Ord + Clone + Display>(s: &FormalSum<K, i64>) -> Value {
    Value::Array(s.iter().map(|(k, c)| json!({ "coeff": c, "key": k.to_string() })).collect())
}

fn emit_sum<K: Ord + Clone + Display>(format: Format, s: &FormalSum<K, i64>) {
    match format {
        Format::Text => println!("{s}"),
        Format::Json => println!("{}", json_terms(s)),
    }
}

fn emit_cochain(format: Format, c: &Cochain<i64>, x: &FiniteSet) {
    let labelled: FormalSum<String, i64> = c.values.iter().map(|(cell, v)| (x.label(*cell), *v)).collect();
    match format {
        Format::Text => println!("{}", c.display(x)),
        Format::Json => println!("{}", json!({ "degree": c.degree, "terms": json_terms(&labelled) })),
    }
}

fn report_json(r: &Report) -> Value {
    json!({
        "suite": r.suite,
        "passed": r.passed(),
        "checks": r.checks.iter().map(|c| json!({
            "id": c.id,
            "cases": c.cases,
            "failures": c.failures,
            "first_failure": c.first_failure,
            "note": c.note,
        })).collect::<Vec<_>>(),
    })
}

fn run_suites(a: &VerifyArgs) -> Vec<Report> {
    let one = |s: SuiteName| -> Report {
        match s {
            SuiteName::Table1 => suites::table1(),
            SuiteName::Table2 => suites::table2(),
            SuiteName::Contraction => suites::contraction(a.max_dim.unwrap_or(5)),
            SuiteName::Resolution => suites::resolution(a.max_r.unwrap_or(5), a.max_n.unwrap_or(6)),
            SuiteName::Homotopy => suites::homotopy(&[3, 5], a.max_n.unwrap_or(4), &[(3, 4), (5, 2)]),
            SuiteName::Oracle => suites::oracle(a.max_r.unwrap_or(5), a.max_n.unwrap_or(6), 5),
            SuiteName::Cartan => suites::cartan(a.p, a.max_dim.unwrap_or(2), a.max_i, a.seed),
            SuiteName::Steenrod => suites::steenrod(a.p),
            SuiteName::Structure => suites::structure(a.seed, a.samples),
            SuiteName::All => unreachable!(),
        }
    };
    match a.suite {
        SuiteName::All => [
            SuiteName::Table1,
            SuiteName::Table2,
            SuiteName::Contraction,
            SuiteName::Resolution,
            SuiteName::Homotopy,
            SuiteName::Oracle,
            SuiteName::Cartan,
            SuiteName::Steenrod,
            SuiteName::Structure,
        ]
        .into_iter()
        .map(one)
        .collect(),
        s => vec![one(s)],
    }
}

fn check_verify_args(a: &VerifyArgs) -> Result<(), CliError> {
    let needs_prime = matches!(a.suite, SuiteName::Cartan | SuiteName::Steenrod | SuiteName::All);
    if needs_prime {
        cartan_core::steenrod::check_odd_prime(a.p)?;
    }
    if a.max_r == Some(0) {
        return Err(CliError::Input("--max-r must be positive".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Iota(g) => {
            check_arity(g.r)?;
            emit_sum(format, &iota::<i64>(g.r, WGen::new(g.k % g.r, g.n)));
        }
        Command::K1(g) => {
            check_arity(g.r)?;
            emit_sum(format, &k1_chain(g.r, &iota::<i64>(g.r, WGen::new(g.k % g.r, g.n))));
        }
        Command::K2(g) => {
            check_arity(g.r)?;
            emit_sum(format, &k2_chain(g.r, &iota::<i64>(g.r, WGen::new(g.k % g.r, g.n))));
        }
        Command::K3 { gen: g, count } => {
            check_arity(g.r)?;
            let t = k3::<i64>(g.r, WGen::new(g.k % g.r, g.n));
            if count {
                match format {
                    Format::Text => println!("{}", t.len()),
                    Format::Json => println!("{}", json!({ "count": t.len() })),
                }
            } else {
                emit_sum(format, &t);
            }
        }
        Command::Zeta { p, i, space, a, b } => {
            let x = parse_space(&space)?;
            let (a, b) = (parse_cochain(&a, &x)?, parse_cochain(&b, &x)?);
            let z = zeta(&RelatorCache::new(), p, i, &a, &b, &x)?;
            emit_cochain(format, &z, &x);
        }
        Command::Steenrod { p, s, beta, space, cocycle } => {
            let x = parse_space(&space)?;
            let a = parse_cochain(&cocycle, &x)?;
            emit_cochain(format, &steenrod_rep(s, beta, p, &a, &x)?, &x);
        }
        Command::Oracle { command: OracleCommand::Compare { r, max_n } } => {
            check_arity(r)?;
            let rows = compare_all(r, max_n);
            let ok = rows.iter().all(|row| row.agrees());
            match format {
                Format::Text => {
                    for row in &rows {
                        print!("n={}: recursive {}, closed {}, k3 {}", row.n, row.recursive_terms, row.closed_terms, row.k3_terms);
                        match &row.divergence {
                            None => println!(", agree"),
                            Some((t, x, y, z)) => println!(", differ at {t}: {x} {y} {z}"),
                        }
                    }
                }
                Format::Json => {
                    let v: Vec<Value> = rows
                        .iter()
                        .map(|row| {
                            json!({
                                "n": row.n,
                                "recursive_terms": row.recursive_terms,
                                "closed_terms": row.closed_terms,
                                "k3_terms": row.k3_terms,
                                "agree": row.agrees(),
                                "divergence": row.divergence.as_ref().map(|(t, x, y, z)| json!({ "key": t, "recursive": x, "closed": y, "k3": z })),
                            })
                        })
                        .collect();
                    println!("{}", Value::Array(v));
                }
            }
            return Ok(ok);
        }
        Command::Verify(a) => {
            check_verify_args(&a)?;
            let reports = run_suites(&a);
            let ok = reports.iter().all(Report::passed);
            match format {
                Format::Text => {
                    for r in &reports {
                        println!("{r}");
                    }
                }
                Format::Json => {
                    let v: Vec<Value> = reports.iter().map(report_json).collect();
                    println!("{}", serde_json::to_string_pretty(&Value::Array(v))?);
                }
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn check_arity(r: usize) -> Result<(), CliError> {
    if r == 0 {
        return Err(CliError::Input("--r must be positive".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
