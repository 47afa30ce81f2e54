//! Representation functions `r_{A-A}` and their maxima.
//!
//! Every table is produced by a bit-parallel shift/AND/popcount kernel. The quadratic
//! pair-counting path in [`naive`] is kept as the reference it is certified against.

mod bits;
pub mod naive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use crate::sets::{AnySet, CyclicSet, GridSet, IntegerSet};
use bits::BitVec;

/// Smallest popular-difference bound `D` with a nonempty window.
pub const MIN_WINDOW: usize = 2;

/// Which differences a table covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Window {
    /// `1 <= d < D`.
    Below(usize),
    /// Every nonzero difference of the ambient structure.
    Full,
}

/// The popular-difference window `1 <= d < D` behind `M_D`. All theorem checks go
/// through this constructor.
pub fn popular_window(d: usize) -> Result<Window> {
    if d < MIN_WINDOW {
        return Err(Error::InvalidWindow(format!("D = {d} leaves 1 <= d < D empty")));
    }
    Ok(Window::Below(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// Positive integer differences `1 <= d < below`.
    Interval { ambient: usize, below: usize },
    /// Residues `1 <= d < below <= modulus`.
    Cyclic { modulus: usize, below: usize },
    /// All of `Z/pZ x Z/pZ`.
    Grid { p: usize },
}

/// A labelled difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Difference {
    Scalar(usize),
    Pair(usize, usize),
}

/// Counts `d -> r(d)` for a window, plus the maximum over its nonzero differences.
///
/// Index 0 always holds the diagonal count `|A|`. Interval and cyclic tables are indexed by
/// `d`; grid tables by `a * p + b`. Interval differences at or beyond `N` are not stored
/// and read as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReprTable {
    domain: Domain,
    counts: Vec<usize>,
    m_max: usize,
}

impl ReprTable {
    fn new(domain: Domain, counts: Vec<usize>) -> Self {
        let m_max = counts.iter().skip(1).copied().max().unwrap_or(0);
        ReprTable { domain, counts, m_max }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    /// Raw storage, diagonal included.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn get(&self, d: usize) -> usize {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn get_pair(&self, a: usize, b: usize) -> usize {
        match self.domain {
            Domain::Grid { p } => self.counts[a * p + b],
            _ => panic!("pair lookup on a scalar table"),
        }
    }

    /// Every nonzero difference of the window in increasing order, zeros included.
    pub fn rows(&self) -> Box<dyn Iterator<Item = (Difference, usize)> + '_> {
        match self.domain {
            Domain::Interval { below, .. } | Domain::Cyclic { below, .. } => {
                Box::new((1..below).map(|d| (Difference::Scalar(d), self.get(d))))
            }
            Domain::Grid { p } => Box::new((1..p * p).map(move |i| (Difference::Pair(i / p, i % p), self.counts[i]))),
        }
    }

    /// Sum of `r` over every difference of the window including 0.
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Autocorrelation `r_{A-A}` of a set over a window.
pub trait Autocorrelation {
    /// Bit-parallel path.
    fn repr_table(&self, window: Window) -> Result<ReprTable>;

    /// Quadratic pair-counting reference path.
    fn repr_table_naive(&self, window: Window) -> Result<ReprTable>;

    /// Fast path, checked against the reference path.
    fn repr_table_certified(&self, window: Window) -> Result<ReprTable> {
        let fast = self.repr_table(window)?;
        let slow = self.repr_table_naive(window)?;
        if fast != slow {
            return Err(Error::Defect("bit-parallel and naive tables disagree".into()));
        }
        Ok(fast)
    }
}

const PARALLEL_WORK: usize = 1 << 18;

fn collect_counts(len: usize, work_per_entry: usize, f: impl Fn(usize) -> usize + Sync + Send) -> Vec<usize> {
    if len.saturating_mul(work_per_entry) >= PARALLEL_WORK {
        (0..len).into_par_iter().map(f).collect()
    } else {
        (0..len).map(f).collect()
    }
}

pub(crate) fn interval_domain(set: &IntegerSet, window: Window) -> Result<Domain> {
    let below = match window {
        Window::Below(d) => popular_window(d).map(|_| d)?,
        Window::Full => set.ambient(),
    };
    Ok(Domain::Interval { ambient: set.ambient(), below })
}

pub(crate) fn cyclic_domain(set: &CyclicSet, window: Window) -> Result<Domain> {
    let m = set.modulus();
    let below = match window {
        Window::Below(d) => {
            popular_window(d)?;
            if d > m {
                return Err(Error::InvalidWindow(format!("D = {d} exceeds the modulus {m}")));
            }
            d
        }
        Window::Full => m,
    };
    Ok(Domain::Cyclic { modulus: m, below })
}

pub(crate) fn grid_domain(set: &GridSet, window: Window) -> Result<Domain> {
    match window {
        Window::Full => Ok(Domain::Grid { p: set.side() }),
        Window::Below(_) => Err(Error::InvalidWindow("grid tables cover the full group only".into())),
    }
}

impl Autocorrelation for IntegerSet {
    fn repr_table(&self, window: Window) -> Result<ReprTable> {
        let domain = interval_domain(self, window)?;
        let Domain::Interval { ambient, below } = domain else { unreachable!() };
        let len = below.min(ambient);
        let bits = BitVec::from_indices(ambient, self.elements().iter().map(|&e| e - 1));
        let counts = collect_counts(len, ambient / 64 + 1, |d| bits.overlap_shifted(&bits, d));
        Ok(ReprTable::new(domain, counts))
    }

    fn repr_table_naive(&self, window: Window) -> Result<ReprTable> {
        let domain = interval_domain(self, window)?;
        Ok(ReprTable::new(domain, naive::interval_counts(self, domain)))
    }
}

impl Autocorrelation for CyclicSet {
    fn repr_table(&self, window: Window) -> Result<ReprTable> {
        let domain = cyclic_domain(self, window)?;
        let Domain::Cyclic { modulus, below } = domain else { unreachable!() };
        let bits = BitVec::from_indices(modulus, self.elements().iter().copied());
        let doubled = bits.doubled();
        let counts = collect_counts(below, modulus / 64 + 1, |d| bits.overlap_shifted(&doubled, d));
        Ok(ReprTable::new(domain, counts))
    }

    fn repr_table_naive(&self, window: Window) -> Result<ReprTable> {
        let domain = cyclic_domain(self, window)?;
        Ok(ReprTable::new(domain, naive::cyclic_counts(self, domain)))
    }
}

impl Autocorrelation for GridSet {
    fn repr_table(&self, window: Window) -> Result<ReprTable> {
        let domain = grid_domain(self, window)?;
        let p = self.side();
        let mut rows = vec![BitVec::zeros(p); p];
        for &(x, y) in self.elements() {
            rows[x].set(y);
        }
        let doubled: Vec<BitVec> = rows.iter().map(BitVec::doubled).collect();
        let occupied: Vec<usize> = (0..p).filter(|&x| self.elements().iter().any(|e| e.0 == x)).collect();
        let counts = collect_counts(p * p, occupied.len() * (p / 64 + 1), |i| {
            let (a, b) = (i / p, i % p);
            occupied.iter().map(|&x| rows[x].overlap_shifted(&doubled[(x + a) % p], b)).sum()
        });
        Ok(ReprTable::new(domain, counts))
    }

    fn repr_table_naive(&self, window: Window) -> Result<ReprTable> {
        let domain = grid_domain(self, window)?;
        Ok(ReprTable::new(domain, naive::grid_counts(self)))
    }
}

impl Autocorrelation for AnySet {
    fn repr_table(&self, window: Window) -> Result<ReprTable> {
        match self {
            AnySet::Interval(s) => s.repr_table(window),
            AnySet::Cyclic(s) => s.repr_table(window),
            AnySet::Grid(s) => s.repr_table(window),
        }
    }

    fn repr_table_naive(&self, window: Window) -> Result<ReprTable> {
        match self {
            AnySet::Interval(s) => s.repr_table_naive(window),
            AnySet::Cyclic(s) => s.repr_table_naive(window),
            AnySet::Grid(s) => s.repr_table_naive(window),
        }
    }
}

/// `r_{A-A}(d)` for any integer `d`.
pub fn repr_integer(set: &IntegerSet, d: i64) -> usize {
    let d = d.unsigned_abs() as usize;
    set.elements().iter().filter(|&&a| a > d && set.contains(a - d)).count()
}

/// `M_D(A) = max_{1 <= d < D} r_{A-A}(d)`.
pub fn m_d(set: &IntegerSet, d: usize) -> Result<usize> {
    Ok(set.repr_table(popular_window(d)?)?.m_max())
}

/// Number of ordered pairs with `a - a' = d (mod M)`.
pub fn repr_cyclic(set: &CyclicSet, d: i64) -> usize {
    let m = set.modulus() as i128;
    let d = (d as i128).rem_euclid(m) as usize;
    set.elements().iter().filter(|&&a| set.contains(a + set.modulus() - d)).count()
}

/// Number of ordered pairs of points with coordinatewise difference `(a, b) mod p`.
pub fn repr_grid(set: &GridSet, a: i64, b: i64) -> usize {
    let p = set.p();
    let (a, b) = (p.reduce(a) as usize, p.reduce(b) as usize);
    let side = set.side();
    set.elements().iter().filter(|&&(x, y)| set.contains(((x + side - a) % side, (y + side - b) % side))).count()
}

/// Largest `r_{A-A}(x)` over nonzero residues.
pub fn max_nonzero_cyclic(set: &CyclicSet) -> usize {
    set.repr_table(Window::Full).expect("full window is always valid").m_max()
}

/// Largest `r_{A-A}(a, b)` over `(a, b) != (0, 0)`.
pub fn max_nonzero_grid(set: &GridSet) -> usize {
    set.repr_table(Window::Full).expect("full window is always valid").m_max()
}

/// `E = sum_x r_{A-A}(x) r_{I-I}(x)` over `Z/MZ` with `I = {1, ..., D}`, `M = N + D`.
pub fn fourier_energy(set: &CyclicSet, d: usize) -> Result<u64> {
    let m = set.modulus();
    if d == 0 || d >= m {
        return Err(Error::InvalidParameter(format!("interval length D = {d} must satisfy 1 <= D < modulus {m}")));
    }
    let interval = CyclicSet::new(m, 1..=d)?;
    let ra = set.repr_table(Window::Full)?;
    let ri = interval.repr_table(Window::Full)?;
    Ok(ra.counts().iter().zip(ri.counts()).map(|(&x, &y)| (x * y) as u64).sum())
}

/// `|A|^2 D^2 / M`, the zero-frequency term of the energy.
pub fn plancherel_floor(set: &CyclicSet, d: usize) -> Rational {
    let a = set.len() as u64;
    ratio(a * a * (d as u64) * (d as u64), set.modulus() as u64)
}
