//! Command-line front end for the lieqf toolkit.
//!
//! Exit codes: 0 success, 1 mathematical failure (Jacobi defect, failed
//! completeness or bound check), 2 malformed input.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use lieqf::catalog::{self, FamilySpec};
use lieqf::cohomology;
use lieqf::derivations;
use lieqf::error::Error;
use lieqf::exactlin::scalar_to_string;
use lieqf::liecore::LieAlgebra;

const EXIT_MATH: i32 = 1;
const EXIT_INPUT: i32 = 2;

#[derive(Parser)]
#[command(
    name = "lieqf",
    about = "Exact-arithmetic toolkit for quasi-filiform Lie algebras",
    version
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and emit its structure table as JSON
    Build { input: String },
    /// Jacobi status, nilindex, type, rank and center dimension
    Invariants { input: String },
    /// Dimensions of the derivation algebra, inner and diagonal derivations
    Derivations { input: String },
    /// Adjoint Chevalley-Eilenberg cohomology report (H^0..H^2)
    Cohomology { input: String },
    /// Complete the algebra by its torus of diagonal derivations and verify
    /// H^0 = H^1 = 0
    Complete { input: String },
    /// Run the completability pipeline over every catalog instance up to --max-n
    Completable {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Verify the H^2 lower bound for the completed A-family, e.g. `h2bound n=10 k=2`
    H2bound {
        /// key=value arguments: n=N k=K
        args: Vec<String>,
    },
    /// One completability JSON line per spec read from a file (order-preserving)
    Batch {
        file: PathBuf,
        #[arg(long)]
        max_n: Option<usize>,
    },
}

/// A positional input: a JSON algebra file if the path exists, otherwise a
/// family spec string.
enum Input {
    Spec(FamilySpec),
    Algebra(LieAlgebra, String),
}

fn load_input(raw: &str) -> Result<Input, Error> {
    if Path::new(raw).is_file() {
        let text = std::fs::read_to_string(raw)
            .map_err(|e| Error::input(format!("cannot read {raw}: {e}")))?;
        Ok(Input::Algebra(LieAlgebra::from_json(&text)?, raw.to_string()))
    } else {
        Ok(Input::Spec(FamilySpec::parse(raw)?))
    }
}

impl Input {
    fn label(&self) -> String {
        match self {
            Input::Spec(s) => s.display(),
            Input::Algebra(_, path) => path.clone(),
        }
    }

    fn algebra(&self) -> Result<LieAlgebra, Error> {
        match self {
            Input::Spec(s) => catalog::build_family(s),
            Input::Algebra(g, _) => Ok(g.clone()),
        }
    }
}

struct Out {
    target: Option<PathBuf>,
    buf: String,
}

impl Out {
    fn line(&mut self, s: &str) {
        self.buf.push_str(s);
        self.buf.push('\n');
    }

    fn flush(self) -> Result<(), Error> {
        match self.target {
            None => {
                print!("{}", self.buf);
                std::io::stdout().flush().ok();
                Ok(())
            }
            Some(p) => std::fs::write(&p, self.buf)
                .map_err(|e| Error::input(format!("cannot write {}: {e}", p.display()))),
        }
    }
}

fn table(out: &mut Out, rows: &[(String, String)]) {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        out.line(&format!("{k:<width$}  {v}"));
    }
}

fn emit_map(out: &mut Out, format: Format, rows: Vec<(String, String)>) {
    match format {
        Format::Json => {
            let map: BTreeMap<_, _> = rows.into_iter().collect();
            out.line(&serde_json::to_string(&map).expect("string map serializes"));
        }
        Format::Table => table(out, &rows),
    }
}

fn jacobi_or_math_err(g: &LieAlgebra, out: &mut Out) -> Result<(), i32> {
    let defects = g.jacobi_defect();
    if defects.is_empty() {
        return Ok(());
    }
    for (i, j, k, d) in &defects {
        let terms: Vec<String> = d
            .iter()
            .enumerate()
            .filter(|(_, v)| !num::Zero::is_zero(*v))
            .map(|(t, v)| format!("{}*Y{t}", scalar_to_string(v)))
            .collect();
        out.line(&format!(
            "jacobi defect at (Y{i},Y{j},Y{k}): {}",
            terms.join(" + ")
        ));
    }
    out.line(&format!("jacobi identity fails on {} triple(s)", defects.len()));
    Err(EXIT_MATH)
}

fn run(cli: Cli) -> Result<(), (i32, String)> {
    let mut out = Out {
        target: cli.out.clone(),
        buf: String::new(),
    };
    let format = cli.format;
    let as_input_err = |e: Error| -> (i32, String) {
        let code = if e.is_input() { EXIT_INPUT } else { EXIT_MATH };
        (code, e.to_string())
    };

    let mut math_failure = false;
    match &cli.command {
        Command::Build { input } => {
            let inp = load_input(input).map_err(as_input_err)?;
            let g = inp.algebra().map_err(as_input_err)?;
            if let Err(code) = jacobi_or_math_err(&g, &mut out) {
                out.flush().map_err(as_input_err)?;
                return Err((code, String::new()));
            }
            out.line(&g.to_json());
        }
        Command::Invariants { input } => {
            let inp = load_input(input).map_err(as_input_err)?;
            let g = inp.algebra().map_err(as_input_err)?;
            if let Err(code) = jacobi_or_math_err(&g, &mut out) {
                out.flush().map_err(as_input_err)?;
                return Err((code, String::new()));
            }
            let nil = match g.nilindex().map_err(as_input_err)? {
                Some(m) => m.to_string(),
                None => "not nilpotent".to_string(),
            };
            let rows = vec![
                ("algebra".to_string(), inp.label()),
                ("dim".to_string(), g.dim().to_string()),
                ("jacobi".to_string(), "ok".to_string()),
                ("nilindex".to_string(), nil),
                (
                    "type".to_string(),
                    g.type_of().map_err(as_input_err)?.to_string(),
                ),
                (
                    "rank".to_string(),
                    derivations::diagonal_derivation_space(&g)
                        .map_err(as_input_err)?
                        .params()
                        .to_string(),
                ),
                (
                    "center".to_string(),
                    g.center().map_err(as_input_err)?.dim().to_string(),
                ),
            ];
            emit_map(&mut out, format, rows);
        }
        Command::Derivations { input } => {
            let inp = load_input(input).map_err(as_input_err)?;
            let g = inp.algebra().map_err(as_input_err)?;
            if let Err(code) = jacobi_or_math_err(&g, &mut out) {
                out.flush().map_err(as_input_err)?;
                return Err((code, String::new()));
            }
            let der = derivations::derivation_space(&g).map_err(as_input_err)?;
            let inner = derivations::inner_derivations(&g).map_err(as_input_err)?;
            let diag = derivations::diagonal_derivation_space(&g).map_err(as_input_err)?;
            let rows = vec![
                ("algebra".to_string(), inp.label()),
                ("der_dim".to_string(), der.dim().to_string()),
                ("inner_dim".to_string(), inner.dim().to_string()),
                ("diagonal_dim".to_string(), diag.params().to_string()),
            ];
            emit_map(&mut out, format, rows);
        }
        Command::Cohomology { input } => {
            let inp = load_input(input).map_err(as_input_err)?;
            let g = inp.algebra().map_err(as_input_err)?;
            if let Err(code) = jacobi_or_math_err(&g, &mut out) {
                out.flush().map_err(as_input_err)?;
                return Err((code, String::new()));
            }
            let report =
                cohomology::cohomology_report(&g, &inp.label()).map_err(as_input_err)?;
            match format {
                Format::Json => out.line(
                    &serde_json::to_string(&report).expect("cohomology report serializes"),
                ),
                Format::Table => {
                    let mut rows = vec![("algebra".to_string(), report.algebra.clone())];
                    for (k, v) in report.dims.iter().chain(&report.ranks).chain(&report.h) {
                        rows.push((k.clone(), v.to_string()));
                    }
                    table(&mut out, &rows);
                }
            }
        }
        Command::Complete { input } => {
            let inp = load_input(input).map_err(as_input_err)?;
            match inp {
                Input::Spec(spec) => {
                    let report = catalog::completability_report(&spec).map_err(as_input_err)?;
                    emit_completability(&mut out, format, &report);
                    if !report.complete {
                        math_failure = true;
                    }
                }
                Input::Algebra(g, label) => {
                    // direct completeness test on an explicit algebra
                    if let Err(code) = jacobi_or_math_err(&g, &mut out) {
                        out.flush().map_err(as_input_err)?;
                        return Err((code, String::new()));
                    }
                    let rep = derivations::is_complete(&g).map_err(as_input_err)?;
                    let rows = vec![
                        ("algebra".to_string(), label),
                        ("center".to_string(), rep.center_dim.to_string()),
                        ("der_dim".to_string(), rep.der_dim.to_string()),
                        ("inner_dim".to_string(), rep.inner_dim.to_string()),
                        ("complete".to_string(), rep.complete.to_string()),
                    ];
                    emit_map(&mut out, format, rows);
                    if !rep.complete {
                        math_failure = true;
                    }
                }
            }
        }
        Command::Completable { max_n } => {
            for spec in catalog::enumerate_specs(5, *max_n) {
                let report = catalog::completability_report(&spec).map_err(as_input_err)?;
                if !report.jacobi_ok || !report.complete {
                    math_failure = true;
                }
                out.line(
                    &serde_json::to_string(&report).expect("completability report serializes"),
                );
            }
        }
        Command::H2bound { args } => {
            let mut n = None;
            let mut k = None;
            for a in args {
                match a.split_once('=') {
                    Some(("n", v)) => {
                        n = Some(v.parse::<usize>().map_err(|_| {
                            (EXIT_INPUT, format!("input error: invalid value in {a:?}"))
                        })?)
                    }
                    Some(("k", v)) => {
                        k = Some(v.parse::<usize>().map_err(|_| {
                            (EXIT_INPUT, format!("input error: invalid value in {a:?}"))
                        })?)
                    }
                    _ => {
                        return Err((
                            EXIT_INPUT,
                            format!("input error: expected n=N or k=K, got {a:?}"),
                        ))
                    }
                }
            }
            let (n, k) = match (n, k) {
                (Some(n), Some(k)) => (n, k),
                _ => {
                    return Err((
                        EXIT_INPUT,
                        "input error: h2bound requires both n=N and k=K".to_string(),
                    ))
                }
            };
            let row = lieqf::deform::h2_bound_check(n, k).map_err(as_input_err)?;
            match format {
                Format::Json => {
                    out.line(&serde_json::to_string(&row).expect("h2 bound row serializes"))
                }
                Format::Table => table(
                    &mut out,
                    &[
                        ("n".to_string(), row.n.to_string()),
                        ("k".to_string(), row.k.to_string()),
                        ("t".to_string(), row.t.to_string()),
                        ("bound".to_string(), row.bound.to_string()),
                        ("closed".to_string(), row.closed.to_string()),
                        ("classes".to_string(), row.classes.to_string()),
                        ("H2".to_string(), row.h2.to_string()),
                    ],
                ),
            }
        }
        Command::Batch { file, max_n } => {
            let text = std::fs::read_to_string(file).map_err(|e| {
                (
                    EXIT_INPUT,
                    format!("input error: cannot read {}: {e}", file.display()),
                )
            })?;
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let spec = FamilySpec::parse(line).map_err(as_input_err)?;
                if let Some(max) = max_n {
                    if spec.n > *max {
                        continue;
                    }
                }
                let report = catalog::completability_report(&spec).map_err(as_input_err)?;
                if !report.jacobi_ok || !report.complete {
                    math_failure = true;
                }
                out.line(
                    &serde_json::to_string(&report).expect("completability report serializes"),
                );
            }
        }
    }
    out.flush().map_err(as_input_err)?;
    if math_failure {
        return Err((EXIT_MATH, String::new()));
    }
    Ok(())
}

fn emit_completability(out: &mut Out, format: Format, report: &catalog::CompletabilityReport) {
    match format {
        Format::Json => out.line(
            &serde_json::to_string(report).expect("completability report serializes"),
        ),
        Format::Table => {
            let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
            table(
                out,
                &[
                    ("spec".to_string(), report.spec.clone()),
                    ("jacobi".to_string(), if report.jacobi_ok { "ok" } else { "defect" }.to_string()),
                    ("nilindex".to_string(), opt(report.nilindex)),
                    ("type".to_string(), opt(report.type_of)),
                    ("rank".to_string(), report.rank.to_string()),
                    ("completed_dim".to_string(), report.completed_dim.to_string()),
                    ("H0".to_string(), opt(report.h0)),
                    ("H1".to_string(), opt(report.h1)),
                    ("complete".to_string(), report.complete.to_string()),
                ],
            );
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err((code, msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            std::process::exit(code);
        }
    }
}
