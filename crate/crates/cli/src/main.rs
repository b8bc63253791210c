//! `fr`: spectra, fractional revival search and certificates for Cayley
//! graphs of finite abelian groups.
//!
//! Exit codes: 0 found / pass, 1 not found / fail, 2 malformed input,
//! 3 validation failure, 4 family hypothesis or parameter-domain violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cayley_fr::formats::{
    boolean_report, plateau_report, search_report, spectrum_report, Certificate,
};
use cayley_fr::oracle::verify_fr;
use cayley_fr::{BooleanFunction, CayleyGraph, Error, FamilySpec, GraphSpec, GroupFunction};
use clap::{Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "fr",
    version,
    about = "Fractional revival on abelian Cayley graphs"
)]
struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact eigenvalues of a graph spec.
    Spectrum { spec: PathBuf },
    /// Classify every involution; exits 0 iff some involution gives FR.
    Search { spec: PathBuf },
    /// Classify a single involution, e.g. `--a 1,0`.
    Check {
        spec: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
    },
    /// Build a graph from a family spec together with its predicted certificate.
    Construct {
        family: PathBuf,
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Check a certificate numerically against exp(itA).
    Verify {
        spec: PathBuf,
        cert: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Walsh spectrum and class of a Boolean function.
    Boolfn {
        #[arg(long)]
        truth_table: String,
        #[arg(long)]
        vars: Option<u32>,
        /// Include the Walsh values, support and graph spectrum.
        #[arg(long)]
        report: bool,
    },
    /// Fourier transform and p-plateau of a function on a group.
    Plateaued {
        function: PathBuf,
        #[arg(long)]
        p: u64,
    },
}

enum Failure {
    Malformed(String),
    Invalid(String),
    Hypothesis(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Malformed(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Hypothesis(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Malformed(m) | Failure::Invalid(m) | Failure::Hypothesis(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Hypothesis(_) | Error::ParameterDomain(_) | Error::NotPrime(_) => {
                Failure::Hypothesis(msg)
            }
            Error::Cyclotomic(_) => Failure::Malformed(msg),
            _ => Failure::Invalid(msg),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<CayleyGraph, Failure> {
    let spec: GraphSpec = read_json(path)?;
    let graph = CayleyGraph::from_spec(&spec)?;
    if !graph.is_connected() {
        eprintln!("warning: graph is disconnected");
    }
    Ok(graph)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), Failure> {
    let text = to_json(value);
    match out {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let out = cli.output.as_deref();
    match &cli.command {
        Command::Spectrum { spec } => {
            let graph = load_graph(spec)?;
            emit(out, &spectrum_report(&graph)?)?;
            Ok(true)
        }
        Command::Search { spec } => {
            let graph = load_graph(spec)?;
            let report = search_report(&graph, None)?;
            emit(out, &report)?;
            Ok(report.has_fr())
        }
        Command::Check { spec, a } => {
            let graph = load_graph(spec)?;
            let grp = graph.group();
            let a = grp.element(a.clone())?;
            let order = grp.element_order(&a);
            if order != 2 {
                return Err(Error::NotAnInvolution { element: a, order }.into());
            }
            let report = search_report(&graph, Some(&a))?;
            emit(out, &report)?;
            Ok(report.has_fr())
        }
        Command::Construct {
            family,
            graph_out,
            cert_out,
        } => {
            let family: FamilySpec = read_json(family)?;
            let inst = family.build()?;
            let spec = inst.graph.to_spec();
            let cert = Certificate::from_witness(&inst.prediction);
            if let Some(path) = graph_out {
                write_file(path, &to_json(&spec))?;
            }
            if let Some(path) = cert_out {
                write_file(path, &to_json(&cert))?;
            }
            if graph_out.is_none() || cert_out.is_none() || out.is_some() {
                emit(
                    out,
                    &serde_json::json!({ "graph": spec, "prediction": cert }),
                )?;
            }
            Ok(true)
        }
        Command::Verify { spec, cert, tol } => {
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(Failure::Invalid(format!(
                    "tolerance must be positive, got {tol}"
                )));
            }
            let graph = load_graph(spec)?;
            let cert: Certificate = read_json(cert)?;
            let witness = cert.to_witness()?;
            let report = verify_fr(&graph, &witness, *tol)?;
            emit(out, &report)?;
            Ok(report.pass)
        }
        Command::Boolfn {
            truth_table,
            vars,
            report,
        } => {
            let f = BooleanFunction::from_hex(truth_table, *vars)?;
            let full = boolean_report(&f);
            if *report {
                emit(out, &full)?;
            } else {
                emit(
                    out,
                    &serde_json::json!({
                        "vars": full.vars,
                        "truth_table": full.truth_table,
                        "class": full.class,
                    }),
                )?;
            }
            Ok(true)
        }
        Command::Plateaued { function, p } => {
            let f: GroupFunction = read_json(function)?;
            let report = plateau_report(&f, *p)?;
            emit(out, &report)?;
            Ok(report.plateau.is_some())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
