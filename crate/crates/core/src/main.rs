//! Command-line front-end: constructions, spectra, closed-form indices, and
//! exhaustive verification runs with machine-readable output.
//!
//! Exit codes: 0 success (and, for `verify`, every theorem check holds),
//! 1 verification failed, 2 usage or domain error, 3 I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use seidel::extremal::{self, ExtremalError};
use seidel::graph::{self, Graph, GraphError};
use seidel::oracle::{self, OracleError, VerificationReport};
use seidel::spectra::{self, SpectraError};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "seidel",
    version,
    about = "Maximal Seidel indices of signed complete graphs: constructions, spectra, exhaustive certification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form maximal index for (n, m), with the construction parameters.
    MaxIndex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write every extremal construction for (n, m) as edge-list files.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Output directory; files are named hnm_<n>_<m>_<k>.txt.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Full Seidel spectrum of the graph in an edge-list file.
    Spectrum {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exhaustively certify the maximal-index characterization.
    Verify {
        #[arg(long)]
        n: usize,
        /// Comma-separated sizes to check.
        #[arg(long, value_delimiter = ',', conflicts_with = "all_m")]
        m: Option<Vec<usize>>,
        /// Check every m up to floor(n^2/4).
        #[arg(long)]
        all_m: bool,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        /// Worker threads for the scan; 0 = available parallelism.
        /// Falls back to the SEIDEL_JOBS environment variable.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare the original conjectured maximizer against the proven one.
    CompareConjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("verify requires --m or --all-m")]
    MissingSizes,
}

fn exit_code_for(e: &CliError) -> u8 {
    match e {
        CliError::Io { .. } => EXIT_IO,
        CliError::Spectra(SpectraError::NotConverged { .. })
        | CliError::Extremal(ExtremalError::BracketFailure { .. }) => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

fn fmt12(x: f64) -> String {
    format!("{x:.12}")
}

/// Floats enter JSON rounded through the same 12-digit fixed formatting the
/// text output uses, keeping reports byte-identical across runs.
fn jnum(x: f64) -> Value {
    json!(fmt12(x).parse::<f64>().unwrap())
}

fn envelope(command: &str, parameters: Value, result: Value) -> Value {
    json!({
        "command": command,
        "parameters": parameters,
        "result": result,
        "version": env!("CARGO_PKG_VERSION"),
    })
}

fn graph_json(g: &Graph) -> Value {
    json!({
        "n": g.order(),
        "edges": g.edges().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
    })
}

fn run(cmd: Cmd) -> Result<ExitCode, CliError> {
    match cmd {
        Cmd::MaxIndex { n, m, format } => cmd_max_index(n, m, format),
        Cmd::Construct { n, m, out, format } => cmd_construct(n, m, &out, format),
        Cmd::Spectrum { path, format } => cmd_spectrum(&path, format),
        Cmd::Verify {
            n,
            m,
            all_m,
            tol,
            jobs,
            format,
        } => cmd_verify(n, m, all_m, tol, jobs, format),
        Cmd::CompareConjecture { n, m, format } => cmd_compare_conjecture(n, m, format),
    }
}

fn cmd_max_index(n: usize, m: usize, format: Format) -> Result<ExitCode, CliError> {
    let params = extremal::extremal_params(n, m)?;
    let sol = extremal::max_index(n, m)?;
    match format {
        Format::Text => {
            println!("rho = {}", fmt12(sol.rho));
            println!("xi  = {}  in [{}, {}]", fmt12(sol.xi), fmt12(sol.xi_lo), fmt12(sol.xi_hi));
            println!(
                "d = {}, t = {}, r = {}, a = {}, b = {}{}",
                params.d,
                params.t,
                params.r,
                params.a,
                params
                    .b
                    .map(|b| b.to_string())
                    .unwrap_or_else(|| "-".into()),
                if params.tie { " (tie)" } else { "" }
            );
        }
        Format::Json => {
            let result = json!({
                "rho": jnum(sol.rho),
                "xi": jnum(sol.xi),
                "xi_lo": jnum(sol.xi_lo),
                "xi_hi": jnum(sol.xi_hi),
                "d": params.d,
                "t": params.t,
                "r": params.r,
                "a": params.a,
                "b": params.b,
                "tie": params.tie,
            });
            println!(
                "{}",
                envelope("max-index", json!({"n": n, "m": m}), result)
            );
        }
        Format::Csv => {
            println!("n,m,rho,xi,xi_lo,xi_hi,d,t,r,a,b,tie");
            println!(
                "{n},{m},{},{},{},{},{},{},{},{},{},{}",
                fmt12(sol.rho),
                fmt12(sol.xi),
                fmt12(sol.xi_lo),
                fmt12(sol.xi_hi),
                params.d,
                params.t,
                params.r,
                params.a,
                params.b.map(|b| b.to_string()).unwrap_or_default(),
                params.tie
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_construct(n: usize, m: usize, out: &Path, format: Format) -> Result<ExitCode, CliError> {
    let variants = extremal::construct_hnm(n, m)?;
    std::fs::create_dir_all(out).map_err(|e| CliError::Io {
        path: out.display().to_string(),
        source: e,
    })?;
    let mut files = Vec::new();
    for (k, g) in variants.iter().enumerate() {
        let path = out.join(format!("hnm_{n}_{m}_{k}.txt"));
        std::fs::write(&path, graph::write_edge_list(g)).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        files.push(path.display().to_string());
    }
    match format {
        Format::Text => {
            println!("{} variant(s) written", variants.len());
            for f in &files {
                println!("{f}");
            }
        }
        Format::Json => {
            let result = json!({
                "variant_count": variants.len(),
                "files": files,
                "variants": variants.iter().map(graph_json).collect::<Vec<_>>(),
            });
            println!(
                "{}",
                envelope("construct", json!({"n": n, "m": m}), result)
            );
        }
        Format::Csv => {
            println!("variant,file,edges");
            for (k, f) in files.iter().enumerate() {
                println!("{k},{f},{}", variants[k].size());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_spectrum(path: &Path, format: Format) -> Result<ExitCode, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let g = graph::read_edge_list(&text)?;
    let spec = spectra::eigen_decompose(&spectra::seidel_matrix(&g))?;
    match format {
        Format::Text => {
            println!("n = {}, m = {}", g.order(), g.size());
            println!("index = {}", fmt12(spec.index()));
            for ev in &spec.eigenvalues {
                println!("{}", fmt12(*ev));
            }
        }
        Format::Json => {
            let result = json!({
                "n": g.order(),
                "m": g.size(),
                "index": jnum(spec.index()),
                "eigenvalues": spec.eigenvalues.iter().map(|&ev| jnum(ev)).collect::<Vec<_>>(),
            });
            println!(
                "{}",
                envelope("spectrum", json!({"path": path.display().to_string()}), result)
            );
        }
        Format::Csv => {
            println!("k,eigenvalue");
            for (k, ev) in spec.eigenvalues.iter().enumerate() {
                println!("{k},{}", fmt12(*ev));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn resolve_jobs(jobs: Option<usize>) -> usize {
    jobs.or_else(|| {
        std::env::var("SEIDEL_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

fn report_json(r: &VerificationReport) -> Value {
    let mut map = Map::new();
    map.insert("n".into(), json!(r.n));
    map.insert("m".into(), json!(r.m));
    map.insert("true_max".into(), jnum(r.true_max));
    map.insert(
        "theory_max".into(),
        r.theory_max.map(jnum).unwrap_or(Value::Null),
    );
    map.insert("theorem_holds".into(), json!(r.theorem_holds));
    map.insert("graphs_scanned".into(), json!(r.graphs_scanned));
    map.insert(
        "maximizer_classes".into(),
        json!(r.maximizer_classes.iter().map(graph_json).collect::<Vec<_>>()),
    );
    Value::Object(map)
}

fn cmd_verify(
    n: usize,
    m: Option<Vec<usize>>,
    all_m: bool,
    tol: f64,
    jobs: Option<usize>,
    format: Format,
) -> Result<ExitCode, CliError> {
    let sizes: Vec<usize> = if all_m {
        if n < 2 {
            return Err(OracleError::Extremal(ExtremalError::OrderTooSmall(n)).into());
        }
        if n > oracle::SCAN_CAP {
            return Err(OracleError::OrderCap(n).into());
        }
        (0..=extremal::size_cap(n)).collect()
    } else {
        m.ok_or(CliError::MissingSizes)?
    };
    let jobs = resolve_jobs(jobs);
    let mut all_hold = true;
    if format == Format::Csv {
        println!("n,m,true_max,theory_max,theorem_holds,classes,graphs_scanned");
    }
    for m in sizes {
        let report = oracle::verify_theorem(n, m, tol, jobs)?;
        let holds = report.theorem_holds == Some(true);
        all_hold &= holds;
        match format {
            Format::Text => {
                println!(
                    "n={} m={} true_max={} theory_max={} classes={} scanned={} {}",
                    report.n,
                    report.m,
                    fmt12(report.true_max),
                    fmt12(report.theory_max.unwrap_or(f64::NAN)),
                    report.maximizer_classes.len(),
                    report.graphs_scanned,
                    if holds { "HOLDS" } else { "FAILED" }
                );
            }
            Format::Json => {
                println!(
                    "{}",
                    envelope("verify", json!({"n": n, "m": m, "tol": tol}), report_json(&report))
                );
            }
            Format::Csv => {
                println!(
                    "{},{},{},{},{},{},{}",
                    report.n,
                    report.m,
                    fmt12(report.true_max),
                    fmt12(report.theory_max.unwrap_or(f64::NAN)),
                    holds,
                    report.maximizer_classes.len(),
                    report.graphs_scanned
                );
            }
        }
    }
    Ok(if all_hold {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    })
}

fn cmd_compare_conjecture(n: usize, m: usize, format: Format) -> Result<ExitCode, CliError> {
    let conjecture = oracle::conjecture_graph(n, m)?;
    let conjecture_index = spectra::seidel_index(&conjecture)?;
    let theory = extremal::max_index(n, m)?.rho;
    let verdict = if (conjecture_index - theory).abs() <= 1e-8 {
        "AGREE"
    } else {
        "CONJECTURE_LOWER"
    };
    match format {
        Format::Text => {
            println!("conjecture_index = {}", fmt12(conjecture_index));
            println!("theorem_index    = {}", fmt12(theory));
            println!("{verdict}");
        }
        Format::Json => {
            let result = json!({
                "conjecture_index": jnum(conjecture_index),
                "theorem_index": jnum(theory),
                "verdict": verdict,
                "conjecture_graph": graph_json(&conjecture),
            });
            println!(
                "{}",
                envelope("compare-conjecture", json!({"n": n, "m": m}), result)
            );
        }
        Format::Csv => {
            println!("n,m,conjecture_index,theorem_index,verdict");
            println!("{n},{m},{},{},{verdict}", fmt12(conjecture_index), fmt12(theory));
        }
    }
    Ok(ExitCode::SUCCESS)
}
