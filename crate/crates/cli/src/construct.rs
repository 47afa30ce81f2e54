use std::path::PathBuf;

use clap::{Args, Subcommand};
use popdiff::constructions::{
    construct_ap, construct_block, construct_cyclic, construct_integer, construct_parabola_union, project_to_cyclic,
    Certificate,
};
use popdiff::numtheory::PrimeModulus;
use popdiff::rational::to_decimal;
use popdiff::repr::{Autocorrelation, Window};
use popdiff::sets::AnySet;
use serde_json::json;

use crate::args::{emit, rational_arg, read_file, to_pretty_json, ParamArgs};
use crate::error::{CliError, CliResult};

#[derive(Subcommand, Debug)]
pub enum Kind {
    /// Arithmetic progression in [N] with step floor(1/alpha).
    Ap {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Periodic block pattern in [N] for window D.
    Block {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Union of k parabolas in (Z/pZ)^2.
    Parabola {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Projection of a grid set into Z/(p^2 s)Z.
    Project {
        /// Grid set file; without it the parabola union for --p and --k is used.
        #[arg(long, conflicts_with_all = ["p", "k"])]
        input: Option<PathBuf>,
        #[arg(long, requires = "k")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        k: Option<u64>,
        #[arg(long)]
        s: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Projected parabola union in Z/(p^2 s)Z with density alpha.
    Cyclic {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The cyclic construction lifted into [N].
    Integer {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Set file to write; without it the set and certificate go to stdout as one JSON object.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Certificate file; defaults to `<out>.cert.json`.
    #[arg(long, requires = "out")]
    cert: Option<PathBuf>,
}

fn build(kind: &Kind) -> CliResult<(AnySet, Certificate)> {
    Ok(match kind {
        Kind::Ap { n, alpha, .. } => {
            let (set, c) = construct_ap(*n, &rational_arg("alpha", alpha)?)?;
            (set.into(), Certificate::Ap(c))
        }
        Kind::Block { params, .. } => {
            let resolved = params.resolve()?;
            let (set, c) = construct_block(&resolved.params)?;
            (set.into(), Certificate::Block(c))
        }
        Kind::Parabola { p, k, .. } => {
            let (set, c) = construct_parabola_union(PrimeModulus::new(*p)?, *k)?;
            (set.into(), Certificate::Parabola(c))
        }
        Kind::Project { input, p, k, s, .. } => {
            let grid = match (input, p, k) {
                (Some(path), _, _) => match AnySet::from_json(&read_file(path)?)? {
                    AnySet::Grid(g) => g,
                    _ => return Err(CliError::Usage(format!("{}: project needs a grid set", path.display()))),
                },
                (None, Some(p), Some(k)) => construct_parabola_union(PrimeModulus::new(*p)?, *k)?.0,
                _ => return Err(CliError::Usage("project needs --input or both --p and --k".into())),
            };
            let (set, c) = project_to_cyclic(&grid, *s)?;
            (set.into(), Certificate::Project(c))
        }
        Kind::Cyclic { p, s, alpha, .. } => {
            let (set, c) = construct_cyclic(PrimeModulus::new(*p)?, *s, &rational_arg("alpha", alpha)?)?;
            (set.into(), Certificate::Cyclic(c))
        }
        Kind::Integer { n, alpha, .. } => {
            let (set, c) = construct_integer(*n, &rational_arg("alpha", alpha)?)?;
            (set.into(), Certificate::Integer(c))
        }
    })
}

fn output_args(kind: &Kind) -> &OutputArgs {
    match kind {
        Kind::Ap { output, .. }
        | Kind::Block { output, .. }
        | Kind::Parabola { output, .. }
        | Kind::Project { output, .. }
        | Kind::Cyclic { output, .. }
        | Kind::Integer { output, .. } => output,
    }
}

/// Largest count over the certificate's window.
pub fn measure(set: &AnySet, window: Option<Window>) -> CliResult<usize> {
    let Some(window) = window else { return Ok(0) };
    let table = match set {
        AnySet::Interval(s) => s.repr_table(window)?,
        AnySet::Cyclic(s) => s.repr_table(window)?,
        AnySet::Grid(s) => s.repr_table(window)?,
    };
    Ok(table.m_max())
}

fn describe(window: Option<Window>) -> String {
    match window {
        None => "empty".into(),
        Some(Window::Below(d)) => format!("1<=d<{d}"),
        Some(Window::Full) => "full".into(),
    }
}

pub fn run(kind: &Kind) -> CliResult {
    let (set, cert) = build(kind)?;
    let window = cert.window();
    let measured = measure(&set, window)? as u64;
    let density = set.density();
    let mut summary = format!(
        "kind={} size={} density={} ({}) window={} M={} cap={}",
        cert.kind(),
        set.len(),
        density,
        to_decimal(&density, 6),
        describe(window),
        measured,
        cert.cap()
    );
    if cert.proven_cap() != cert.cap() {
        summary.push_str(&format!(" proven_cap={}", cert.proven_cap()));
    }

    let output = output_args(kind);
    match &output.out {
        Some(path) => {
            let cert_path = output.cert.clone().unwrap_or_else(|| {
                let mut name = path.clone().into_os_string();
                name.push(".cert.json");
                PathBuf::from(name)
            });
            emit(Some(path), &set.to_json())?;
            emit(Some(&cert_path), &to_pretty_json(&cert))?;
            println!("{summary}");
        }
        None => {
            let set_value: serde_json::Value = serde_json::from_str(&set.to_json()).expect("set files are JSON");
            emit(None, &to_pretty_json(&json!({ "set": set_value, "certificate": cert })))?;
            eprintln!("{summary}");
        }
    }

    if measured > cert.proven_cap() {
        return Err(popdiff::Error::Defect(format!(
            "measured M = {measured} exceeds proven_cap = {}",
            cert.proven_cap()
        ))
        .into());
    }
    if measured > cert.cap() {
        eprintln!(
            "warning: measured M = {measured} exceeds the stated cap {}; it stays within proven_cap = {}, \
             which counts the residues whose differences reach the grid origin",
            cert.cap(),
            cert.proven_cap()
        );
    }
    Ok(())
}
