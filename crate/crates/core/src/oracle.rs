//! Exhaustive ground truth at small sizes.
//!
//! `exact_f` enumerates subsets of `[N]` of size exactly `ceil(alpha N)` in lexicographic order
//! with branch and bound. The search is split by first element; each part is searched on its
//! own, so the result and the number of subsets examined do not depend on the thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::RegimeParams;
use crate::error::{Error, Result};
use crate::numtheory::{mod_inverse, mul_mod, PrimeModulus};
use crate::rational::serialize_ratio_str;
use crate::rational::Rational;
use crate::repr::{m_d, Autocorrelation, Window};
use crate::sets::{GridSet, IntegerSet};

/// Largest `N` for [`exact_f`] unless configured otherwise.
pub const DEFAULT_ORACLE_CAP: u64 = 20;
/// Largest grid side for [`exact_max_rep_grid`].
pub const GRID_ORACLE_CAP: u64 = 61;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub cap: u64,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { cap: DEFAULT_ORACLE_CAP, jobs: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub n: u64,
    pub d: u64,
    #[serde(serialize_with = "serialize_ratio_str")]
    pub alpha: Rational,
    /// `ceil(alpha N)`.
    pub m: u64,
    pub f_exact: u64,
    /// Lexicographically least subset attaining `f_exact`.
    pub witness: Vec<usize>,
    pub subsets_examined: u64,
}

struct Search {
    n: usize,
    m: usize,
    d: usize,
    chosen: Vec<usize>,
    counts: Vec<usize>,
    best: usize,
    witness: Vec<usize>,
    examined: u64,
}

impl Search {
    fn new(n: usize, m: usize, d: usize) -> Self {
        // Counts never exceed m - 1, so m acts as infinity.
        Search { n, m, d, chosen: Vec::with_capacity(m), counts: vec![0; d], best: m, witness: Vec::new(), examined: 0 }
    }

    /// Adds `x` and returns the largest count it raised.
    fn push(&mut self, x: usize) -> usize {
        let mut worst = 0;
        for &y in self.chosen.iter().rev() {
            let diff = x - y;
            if diff >= self.d {
                break;
            }
            self.counts[diff] += 1;
            worst = worst.max(self.counts[diff]);
        }
        self.chosen.push(x);
        worst
    }

    fn pop(&mut self) {
        let x = self.chosen.pop().expect("nonempty");
        for &y in self.chosen.iter().rev() {
            let diff = x - y;
            if diff >= self.d {
                break;
            }
            self.counts[diff] -= 1;
        }
    }

    fn descend(&mut self, current: usize) {
        if self.chosen.len() == self.m {
            self.examined += 1;
            if current < self.best {
                self.best = current;
                self.witness = self.chosen.clone();
            }
            return;
        }
        let start = self.chosen.last().map_or(1, |&x| x + 1);
        let last = self.n + 1 - (self.m - self.chosen.len());
        for x in start..=last {
            if self.best == 0 {
                return;
            }
            let worst = self.push(x);
            let partial = current.max(worst);
            if partial < self.best {
                self.descend(partial);
            }
            self.pop();
        }
    }

    fn run_from(mut self, first: usize) -> (usize, Vec<usize>, u64) {
        self.push(first);
        self.descend(0);
        (self.best, self.witness, self.examined)
    }
}

/// `f_D(N, alpha)`: the least `M_D(A)` over `A` in `[N]` with `|A| = ceil(alpha N)`.
pub fn exact_f(params: &RegimeParams, options: &OracleOptions) -> Result<OracleResult> {
    let (n, d) = (params.n(), params.d());
    if n > options.cap {
        return Err(Error::CapExceeded { what: "oracle N", value: n, cap: options.cap });
    }
    let m = params.min_size();
    let (nu, mu, du) = (n as usize, m as usize, d as usize);
    let firsts: Vec<usize> = (1..=nu + 1 - mu).collect();
    let search = |&first: &usize| Search::new(nu, mu, du).run_from(first);
    let parts: Vec<(usize, Vec<usize>, u64)> = if options.jobs == 1 {
        firsts.iter().map(search).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot start {} workers: {e}", options.jobs)))?;
        pool.install(|| firsts.par_iter().map(search).collect())
    };
    let subsets_examined = parts.iter().map(|p| p.2).sum();
    let (f, witness, _) = parts
        .into_iter()
        .filter(|p| !p.1.is_empty())
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .ok_or_else(|| Error::Defect("search found no subset".into()))?;

    let set = IntegerSet::new(nu, witness.iter().copied())?;
    if m_d(&set, du)? != f {
        return Err(Error::Defect("witness does not attain the reported minimum".into()));
    }
    Ok(OracleResult { n, d, alpha: params.alpha().clone(), m, f_exact: f as u64, witness, subsets_examined })
}

/// Largest count over nonzero differences of a grid set, by enumerating all pairs of points.
pub fn exact_max_rep_grid(set: &GridSet) -> Result<usize> {
    let p = set.p().get();
    if p > GRID_ORACLE_CAP {
        return Err(Error::CapExceeded { what: "grid side p", value: p, cap: GRID_ORACLE_CAP });
    }
    Ok(set.repr_table_naive(Window::Full)?.m_max())
}

/// Pairs `(P, Q)` in `A_u x A_v` with `P - Q = (a, b)`, by trying every first coordinate.
pub fn parabola_pair_count_brute(p: PrimeModulus, u: u64, v: u64, a: u64, b: u64) -> Result<u64> {
    let m = p.get();
    let (iu, iv) = (mod_inverse(u as i64, p)?, mod_inverse(v as i64, p)?);
    let (a, b) = (a % m, b % m);
    Ok((0..m)
        .filter(|&x| {
            let y = (x + m - a) % m;
            let lhs = (mul_mod(mul_mod(x, x, m), iu, m) + m - mul_mod(mul_mod(y, y, m), iv, m)) % m;
            lhs == b
        })
        .count() as u64)
}
