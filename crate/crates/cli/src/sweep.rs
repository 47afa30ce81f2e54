use std::collections::HashMap;
use std::path::PathBuf;

use popdiff::bounds::BoundsReport;
use popdiff::constructions::{construct_ap, construct_block, construct_integer, RegimeParams};
use popdiff::oracle::{exact_f, OracleOptions};
use popdiff::rational::{to_decimal, Rational};
use popdiff::repr::m_d;
use popdiff::sets::IntegerSet;
use serde::Serialize;

use crate::args::{emit, int_range, rational_range};
use crate::error::{CliError, CliResult};

pub struct SweepArgs {
    pub n: String,
    pub alpha: String,
    pub d: Option<String>,
    pub gamma: Option<String>,
    pub oracle_cap: u64,
    pub jobs: usize,
    pub skip_integer: bool,
    pub out: Option<PathBuf>,
}

/// One grid point of a sweep.
pub struct SweepPoint {
    pub params: RegimeParams,
    pub requested_gamma: Option<Rational>,
}

#[derive(Serialize)]
struct Row {
    n: u64,
    alpha: String,
    requested_gamma: Option<String>,
    d: u64,
    gamma: String,
    regime: &'static str,
    lb_inclusion_exclusion: String,
    lb_fourier: String,
    lb_cyclic_counting: Option<String>,
    ub_block: Option<String>,
    cap_parabola_projection: Option<u64>,
    ap_m: Option<usize>,
    block_m: Option<usize>,
    integer_m: Option<usize>,
    f_exact: Option<u64>,
}

/// Expands the ranges into grid points, rejecting any with `D` outside `[2, N]` or `alpha`
/// outside `(0, 1)`.
pub fn grid(args: &SweepArgs) -> CliResult<Vec<SweepPoint>> {
    let ns = int_range("n", &args.n)?;
    let alphas = rational_range("alpha", &args.alpha)?;
    let mut points = Vec::new();
    for &n in &ns {
        for alpha in &alphas {
            match (&args.d, &args.gamma) {
                (Some(d), None) => {
                    for d in int_range("d", d)? {
                        points.push(SweepPoint {
                            params: RegimeParams::new(n, d, alpha.clone())?,
                            requested_gamma: None,
                        });
                    }
                }
                (None, Some(g)) => {
                    for gamma in rational_range("gamma", g)? {
                        let params = RegimeParams::from_gamma(n, &gamma, alpha.clone())?;
                        points.push(SweepPoint { params, requested_gamma: Some(gamma) });
                    }
                }
                _ => return Err(CliError::Usage("sweep needs exactly one of --d or --gamma".into())),
            }
        }
    }
    Ok(points)
}

fn decimal(x: &Rational) -> String {
    to_decimal(x, 6)
}

pub fn run(args: &SweepArgs) -> CliResult {
    let points = grid(args)?;
    let options = OracleOptions { cap: args.oracle_cap, jobs: args.jobs };
    let mut ap_sets: HashMap<(u64, Rational), Option<IntegerSet>> = HashMap::new();
    let mut integer_sets: HashMap<(u64, Rational), Option<IntegerSet>> = HashMap::new();
    let mut csv = csv::Writer::from_writer(Vec::new());

    for point in &points {
        let params = &point.params;
        let (n, d) = (params.n(), params.d());
        let key = (n, params.alpha().clone());
        let report = BoundsReport::new(params);

        let ap = ap_sets.entry(key.clone()).or_insert_with(|| construct_ap(n, params.alpha()).ok().map(|r| r.0));
        let ap_m = ap.as_ref().map(|s| m_d(s, d as usize)).transpose()?;
        let block_m = match construct_block(params) {
            Ok((set, _)) => Some(m_d(&set, d as usize)?),
            Err(_) => None,
        };
        let integer_m = if args.skip_integer {
            None
        } else {
            let set = integer_sets.entry(key).or_insert_with(|| construct_integer(n, params.alpha()).ok().map(|r| r.0));
            set.as_ref().map(|s| m_d(s, d as usize)).transpose()?
        };
        let f_exact = if n <= args.oracle_cap { Some(exact_f(params, &options)?.f_exact) } else { None };

        csv.serialize(Row {
            n,
            alpha: params.alpha().to_string(),
            requested_gamma: point.requested_gamma.as_ref().map(|g| g.to_string()),
            d,
            gamma: params.gamma().to_string(),
            regime: report.regime.tag(),
            lb_inclusion_exclusion: decimal(&report.lb_inclusion_exclusion),
            lb_fourier: decimal(&report.lb_fourier),
            lb_cyclic_counting: report.lb_cyclic_counting.as_ref().map(decimal),
            ub_block: report.ub_block.as_ref().map(decimal),
            cap_parabola_projection: report.cap_parabola_projection,
            ap_m,
            block_m,
            integer_m,
            f_exact,
        })?;
    }
    let text = String::from_utf8(csv.into_inner().expect("in-memory writer")).expect("csv output is utf-8");
    emit(args.out.as_deref(), &text)?;
    eprintln!("sweep: {} rows", points.len());
    Ok(())
}
