//! Batch checks binding the oracle, the bounds and the constructions.
//!
//! Every check becomes a [`CheckRecord`]; failures are data, not errors.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{lb_fourier, lb_inclusion_exclusion, ub_block};
use crate::constructions::{
    construct_ap, construct_block, construct_cyclic, construct_integer, construct_parabola_union, exceptional_residues,
    parabola_pair_count, project_to_cyclic, RegimeParams,
};
use crate::error::Result;
use crate::numtheory::{is_prime, legendre, weil_sum_profile, PrimeModulus};
use crate::oracle::{exact_f, OracleOptions, DEFAULT_ORACLE_CAP};
use crate::rational::{int, parse_rational};
use crate::repr::{popular_window, repr_integer, Autocorrelation, Window};
use crate::sets::{GridSet, IntegerSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub n: u64,
    pub d: u64,
    /// Exact rational such as `"3/20"`.
    pub alpha: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolaPoint {
    pub p: u64,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionPoint {
    pub p: u64,
    pub s: u64,
    /// Random grid subsets drawn for this point.
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicPoint {
    pub p: u64,
    pub s: u64,
    pub alpha: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerPoint {
    pub n: u64,
    pub alpha: String,
}

/// What to check. The empty configuration checks nothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Oracle sandwich points: lower bounds, `f_D`, and the constructions' `M_D`.
    pub sandwich: Vec<Point>,
    /// Block construction points checked against their certificate.
    pub block: Vec<Point>,
    pub parabola: Vec<ParabolaPoint>,
    pub projection: Vec<ProjectionPoint>,
    pub cyclic: Vec<CyclicPoint>,
    pub integer: Vec<IntegerPoint>,
    /// Primes for the parabola pair-count identities.
    pub pair_count_primes: Vec<u64>,
    /// `(p, k)` pairs for the Legendre window-sum bound.
    pub weil: Vec<ParabolaPoint>,
    pub seed: u64,
    pub oracle_cap: u64,
    pub jobs: usize,
    /// Measure constructions over `1 <= d <= D` instead of `1 <= d < D`. Negative control only.
    pub inclusive_window: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            sandwich: Vec::new(),
            block: Vec::new(),
            parabola: Vec::new(),
            projection: Vec::new(),
            cyclic: Vec::new(),
            integer: Vec::new(),
            pair_count_primes: Vec::new(),
            weil: Vec::new(),
            seed: 0,
            oracle_cap: DEFAULT_ORACLE_CAP,
            jobs: 1,
            inclusive_window: false,
        }
    }
}

fn odd_primes(upto: u64) -> impl Iterator<Item = u64> {
    (3..=upto).filter(|&p| is_prime(p))
}

impl SuiteConfig {
    /// The standard desk-scale suite.
    pub fn standard() -> Self {
        let mut sandwich = Vec::new();
        for n in [6u64, 9, 12, 14] {
            for d in 2..=n {
                for m in 1..n {
                    sandwich.push(Point { n, d, alpha: format!("{m}/{n}") });
                }
            }
        }
        let mut block = Vec::new();
        for n in [200u64, 1000, 5000] {
            for d in 2..=6u64 {
                for alpha in ["1/5", "1/4", "1/3", "2/5", "1/2", "3/5"] {
                    let params = RegimeParams::new(n, d, parse_rational(alpha).expect("literal"));
                    if params.is_ok_and(|p| crate::constructions::block_hypotheses(&p).is_ok()) {
                        block.push(Point { n, d, alpha: alpha.into() });
                    }
                }
            }
        }
        let parabola = odd_primes(31).flat_map(|p| (1..=p / 2).map(move |k| ParabolaPoint { p, k })).collect();
        let projection = [3u64, 5, 7, 11, 13]
            .into_iter()
            .flat_map(|p| (1..=6).map(move |s| ProjectionPoint { p, s, samples: 4 }))
            .collect();
        let cyclic = [11u64, 23, 47, 97]
            .into_iter()
            .flat_map(|p| [2u64, 4, 8].map(|s| CyclicPoint { p, s, alpha: "1/5".into() }))
            .collect();
        let integer =
            vec![IntegerPoint { n: 2000, alpha: "3/20".into() }, IntegerPoint { n: 20000, alpha: "1/5".into() }];
        let weil = odd_primes(101).flat_map(|p| (1..=10.min(p / 2)).map(move |k| ParabolaPoint { p, k })).collect();
        SuiteConfig {
            sandwich,
            block,
            parabola,
            projection,
            cyclic,
            integer,
            pair_count_primes: odd_primes(13).collect(),
            weil,
            ..SuiteConfig::default()
        }
    }
}

/// One check at one parameter point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub point: String,
    pub check: String,
    pub passed: bool,
    pub measured: String,
    pub bound: String,
}

struct Recorder {
    records: Vec<CheckRecord>,
}

impl Recorder {
    fn record(&mut self, point: &str, check: &str, passed: bool, measured: impl ToString, bound: impl ToString) {
        self.records.push(CheckRecord {
            point: point.to_string(),
            check: check.to_string(),
            passed,
            measured: measured.to_string(),
            bound: bound.to_string(),
        });
    }

    fn le<T: PartialOrd + ToString>(&mut self, point: &str, check: &str, measured: T, bound: T) {
        let passed = measured <= bound;
        self.record(point, check, passed, measured, bound);
    }

    fn error(&mut self, point: &str, check: &str, e: impl ToString) {
        self.record(point, check, false, e.to_string(), "");
    }
}

/// Runs every configured check in a fixed order.
pub fn verify_theorem_suite(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut rec = Recorder { records: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let shift = usize::from(config.inclusive_window);
    let oracle = OracleOptions { cap: config.oracle_cap, jobs: config.jobs };

    for pt in &config.sandwich {
        let label = format!("N={} D={} alpha={}", pt.n, pt.d, pt.alpha);
        if let Err(e) = sandwich(&mut rec, &label, pt, &oracle, shift) {
            rec.error(&label, "sandwich", e);
        }
    }
    for pt in &config.block {
        let label = format!("N={} D={} alpha={}", pt.n, pt.d, pt.alpha);
        if let Err(e) = block(&mut rec, &label, pt, shift) {
            rec.error(&label, "block", e);
        }
    }
    for pt in &config.parabola {
        let label = format!("p={} k={}", pt.p, pt.k);
        if let Err(e) = parabola(&mut rec, &label, pt) {
            rec.error(&label, "parabola", e);
        }
    }
    for pt in &config.projection {
        let label = format!("p={} s={}", pt.p, pt.s);
        if let Err(e) = projection(&mut rec, &label, pt, &mut rng) {
            rec.error(&label, "projection", e);
        }
    }
    for pt in &config.cyclic {
        let label = format!("p={} s={} alpha={}", pt.p, pt.s, pt.alpha);
        if let Err(e) = cyclic(&mut rec, &label, pt) {
            rec.error(&label, "cyclic", e);
        }
    }
    for pt in &config.integer {
        let label = format!("N={} alpha={}", pt.n, pt.alpha);
        if let Err(e) = integer(&mut rec, &label, pt) {
            rec.error(&label, "integer", e);
        }
    }
    for &p in &config.pair_count_primes {
        let label = format!("p={p}");
        match PrimeModulus::new(p) {
            Ok(pm) => pair_counts(&mut rec, &label, pm),
            Err(e) => rec.error(&label, "pair_counts", e),
        }
    }
    for pt in &config.weil {
        let label = format!("p={} k={}", pt.p, pt.k);
        match PrimeModulus::new(pt.p).and_then(|pm| weil_sum_profile(pm, pt.k)) {
            Ok(profile) => {
                let bound = "sqrt(2p^2k^2(2k-1) + 8p^{3/2}k^4)";
                rec.record(&label, "window_sum_total<=bound", profile.within_weil_bound(), profile.total, bound);
            }
            Err(e) => rec.error(&label, "window_sums", e),
        }
    }
    rec.records
}

fn params_of(pt: &Point) -> Result<RegimeParams> {
    RegimeParams::new(pt.n, pt.d, parse_rational(&pt.alpha)?)
}

fn measured_window(set: &IntegerSet, d: u64, shift: usize) -> Result<usize> {
    Ok(set.repr_table(popular_window(d as usize + shift)?)?.m_max())
}

fn sandwich(rec: &mut Recorder, label: &str, pt: &Point, oracle: &OracleOptions, shift: usize) -> Result<()> {
    let params = params_of(pt)?;
    let f = exact_f(&params, oracle)?.f_exact;
    let f_rat = int(f);
    let lb_ie = lb_inclusion_exclusion(&params);
    let lb_f = lb_fourier(&params);
    rec.record(label, "lb_inclusion_exclusion<=f", lb_ie <= f_rat, &lb_ie, f);
    rec.record(label, "lb_fourier<=f", lb_f <= f_rat, &lb_f, f);

    let (ap, cert) = construct_ap(params.n(), params.alpha())?;
    let ap_m = measured_window(&ap, params.d(), shift)?;
    rec.le(label, "f<=M_D(ap)", f, ap_m as u64);
    if params.d() <= cert.a {
        rec.record(label, "f=0", f == 0, f, 0);
        rec.record(label, "M_D(ap)=0", ap_m == 0, ap_m, 0);
    }
    if let Ok((set, _)) = construct_block(&params) {
        let m = measured_window(&set, params.d(), shift)?;
        rec.le(label, "f<=M_D(block)", f, m as u64);
    }
    Ok(())
}

fn block(rec: &mut Recorder, label: &str, pt: &Point, shift: usize) -> Result<()> {
    let params = params_of(pt)?;
    let ub = ub_block(&params)?;
    let (set, cert) = construct_block(&params)?;
    let size = int(set.len() as u64);
    let target = params.alpha() * int(params.n());
    rec.record(label, "size>=alpha*N", size >= target, set.len(), &target);
    let m = measured_window(&set, params.d(), shift)?;
    rec.le(label, "M_D<=2k", m as u64, cert.cap);
    rec.record(label, "2k<=ub_block", int(cert.cap) <= ub, cert.cap, &ub);
    if cert.k >= 1 {
        let r1 = repr_integer(&set, 1) as u64;
        rec.record(label, "r(1)=2k-1", r1 + 1 == 2 * cert.k, r1, 2 * cert.k - 1);
    }
    Ok(())
}

fn parabola(rec: &mut Recorder, label: &str, pt: &ParabolaPoint) -> Result<()> {
    let p = PrimeModulus::new(pt.p)?;
    let (set, cert) = construct_parabola_union(p, pt.k)?;
    let expected = pt.k * pt.p - pt.k + 1;
    rec.record(label, "size=kp-k+1", set.len() as u64 == expected, set.len(), expected);
    let m = set.repr_table(Window::Full)?.m_max();
    rec.le(label, "max_nonzero<=capacity", m as u64, cert.cap);
    Ok(())
}

fn random_grid(rng: &mut ChaCha8Rng, p: PrimeModulus) -> Result<GridSet> {
    let side = p.get() as usize;
    let target = rng.gen_range(1..=side * side / 2);
    let mut pts = BTreeSet::new();
    while pts.len() < target {
        pts.insert((rng.gen_range(0..side), rng.gen_range(0..side)));
    }
    GridSet::new(p, pts)
}

fn projection(rec: &mut Recorder, label: &str, pt: &ProjectionPoint, rng: &mut ChaCha8Rng) -> Result<()> {
    let p = PrimeModulus::new(pt.p)?;
    let exceptional: BTreeSet<usize> = exceptional_residues(pt.p, pt.s).into_iter().collect();
    for i in 0..pt.samples {
        let grid = random_grid(rng, p)?;
        let (set, cert) = project_to_cyclic(&grid, pt.s)?;
        let label = format!("{label} sample={i} m={}", grid.len());
        let expected = grid.len() as u64 * pt.s;
        rec.record(&label, "size=ms", set.len() as u64 == expected, set.len(), expected);
        let table = set.repr_table(Window::Full)?;
        rec.le(&label, "max_nonzero<=proven_cap", table.m_max() as u64, cert.proven_cap);
        let off = (1..set.modulus()).filter(|x| !exceptional.contains(x)).map(|x| table.get(x)).max().unwrap_or(0);
        rec.le(&label, "max_off_exceptional<=h(s+1)", off as u64, cert.cap);
    }
    Ok(())
}

fn cyclic(rec: &mut Recorder, label: &str, pt: &CyclicPoint) -> Result<()> {
    let alpha = parse_rational(&pt.alpha)?;
    let (set, cert) = construct_cyclic(PrimeModulus::new(pt.p)?, pt.s, &alpha)?;
    let density = set.density();
    rec.record(label, "density>=alpha", density >= alpha, &density, &alpha);
    let m = set.repr_table(Window::Full)?.m_max() as u64;
    rec.le(label, "max_nonzero<=capacity*(s+1)", m, cert.cap);
    rec.le(label, "max_nonzero<=proven_cap", m, cert.proven_cap);
    Ok(())
}

fn integer(rec: &mut Recorder, label: &str, pt: &IntegerPoint) -> Result<()> {
    let alpha = parse_rational(&pt.alpha)?;
    let (set, cert) = construct_integer(pt.n, &alpha)?;
    let target = &alpha * int(cert.p * cert.p * cert.s);
    let size = int(set.len() as u64);
    rec.record(label, "size>=alpha*p^2*s", size >= target, set.len(), &target);
    let m = set.repr_table(Window::Full)?.m_max() as u64;
    rec.le(label, "M_N<=capacity*(s+1)", m, cert.cap);
    rec.le(label, "M_N<=proven_cap", m, cert.proven_cap);
    Ok(())
}

/// Single parabola: at most one pair per nonzero difference. Quadruples with `u - v = u' - v'`
/// and `uvu'v'` a nonresidue: the two counts sum to exactly 2.
fn pair_counts(rec: &mut Recorder, label: &str, p: PrimeModulus) {
    let m = p.get() as i64;
    let nonzero = || (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).filter(|&ab| ab != (0, 0));
    let mut single = 0usize;
    for u in 1..m {
        for (a, b) in nonzero() {
            if parabola_pair_count(p, u, u, a, b).is_ok_and(|c| c > 1) {
                single += 1;
            }
        }
    }
    rec.record(label, "same_parabola_count<=1", single == 0, format!("{single} violations"), 0);

    let mut paired = 0usize;
    for u in 1..m {
        for v in 1..m {
            for u2 in 1..m {
                let v2 = (u2 - (u - v)).rem_euclid(m);
                if v2 == 0 || legendre(u * v % m * u2 % m * v2 % m, p) != -1 {
                    continue;
                }
                for (a, b) in nonzero() {
                    let total = parabola_pair_count(p, u, v, a, b)
                        .unwrap_or(u64::MAX)
                        .saturating_add(parabola_pair_count(p, u2, v2, a, b).unwrap_or(u64::MAX));
                    if total != 2 {
                        paired += 1;
                    }
                }
            }
        }
    }
    rec.record(label, "paired_counts_sum=2", paired == 0, format!("{paired} violations"), 0);
}
