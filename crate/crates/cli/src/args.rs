use std::io::Write;
use std::path::Path;

use clap::Args;
use popdiff::constructions::RegimeParams;
use popdiff::rational::{parse_rational, ratio, Rational};

use crate::error::{CliError, CliResult};

/// `N`, `alpha` and either `D` or `gamma`.
#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    #[arg(long)]
    pub n: u64,
    /// Window bound `D`; the window is `1 <= d < D`.
    #[arg(long, required_unless_present = "gamma", conflicts_with = "gamma")]
    pub d: Option<u64>,
    /// Sets `D = round((1 + gamma) / alpha)`, rounding half up.
    #[arg(long)]
    pub gamma: Option<String>,
    /// Density as an exact rational (`3/20`) or terminating decimal (`0.15`).
    #[arg(long)]
    pub alpha: String,
}

/// Resolved parameters plus the `gamma` the user asked for, if any.
pub struct Resolved {
    pub params: RegimeParams,
    pub requested_gamma: Option<Rational>,
}

impl ParamArgs {
    pub fn resolve(&self) -> CliResult<Resolved> {
        let alpha = rational_arg("alpha", &self.alpha)?;
        match (&self.d, &self.gamma) {
            (Some(d), _) => Ok(Resolved { params: RegimeParams::new(self.n, *d, alpha)?, requested_gamma: None }),
            (None, Some(g)) => {
                let gamma = rational_arg("gamma", g)?;
                let params = RegimeParams::from_gamma(self.n, &gamma, alpha)?;
                Ok(Resolved { params, requested_gamma: Some(gamma) })
            }
            (None, None) => Err(CliError::Usage("one of --d or --gamma is required".into())),
        }
    }
}

pub fn rational_arg(name: &str, text: &str) -> CliResult<Rational> {
    parse_rational(text).map_err(|_| CliError::Usage(format!("--{name}: `{text}` is not an exact rational")))
}

/// Parses `5`, `2:10` or `10:100:10` (inclusive), or a comma-separated mix of them.
pub fn int_range(name: &str, text: &str) -> CliResult<Vec<u64>> {
    let bad = || CliError::Usage(format!("--{name}: `{text}` is not a list or start:end[:step] range"));
    let mut out = Vec::new();
    for item in text.split(',') {
        let parts: Vec<u64> =
            item.split(':').map(|p| p.trim().parse::<u64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        match parts[..] {
            [x] => out.push(x),
            [start, end] => out.extend(start..=end),
            [start, end, step] if step > 0 => out.extend((start..=end).step_by(step as usize)),
            _ => return Err(bad()),
        }
    }
    Ok(out)
}

/// Rational counterpart of [`int_range`].
pub fn rational_range(name: &str, text: &str) -> CliResult<Vec<Rational>> {
    let bad = || CliError::Usage(format!("--{name}: `{text}` is not a list or start:end:step range"));
    let mut out = Vec::new();
    for item in text.split(',') {
        let parts: Vec<Rational> = item.split(':').map(parse_rational).collect::<Result<_, _>>().map_err(|_| bad())?;
        match &parts[..] {
            [x] => out.push(x.clone()),
            [start, end, step] if *step > ratio(0, 1) => {
                let mut x = start.clone();
                while &x <= end {
                    out.push(x.clone());
                    x += step;
                }
            }
            _ => return Err(bad()),
        }
    }
    Ok(out)
}

/// Writes to `path`, or to stdout when it is absent.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => std::fs::write(p, text).map_err(CliError::io(p)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(CliError::io("<stdout>"))
        }
    }
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(CliError::io(path))
}

pub fn to_pretty_json(value: &impl serde::Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports always serialize");
    text.push('\n');
    text
}
