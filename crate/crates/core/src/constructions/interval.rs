use num_traits::{One, Signed};
use serde::Serialize;

use super::regime::RegimeParams;
use crate::error::{BlockHypothesis, Error, Result};
use crate::rational::{ceil_u64, floor_u64, int, is_proper_fraction, Rational};
use crate::repr::repr_integer;
use crate::sets::IntegerSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApCertificate {
    /// Common difference `floor(1/alpha)`.
    pub a: u64,
    /// Largest `l` with `l a <= N - 1`.
    pub l: u64,
    pub size: usize,
}

/// `{1, a+1, 2a+1, ..., la+1}` with `a = floor(1/alpha)`.
pub fn construct_ap(n: u64, alpha: &Rational) -> Result<(IntegerSet, ApCertificate)> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    if !is_proper_fraction(alpha) {
        return Err(Error::InvalidParameter(format!("need 0 < alpha < 1, got {alpha}")));
    }
    let a = floor_u64(&alpha.recip()).expect("1/alpha is positive");
    let l = (n - 1) / a;
    let set = IntegerSet::new(n as usize, (0..=l).map(|i| (i * a + 1) as usize))?;
    if int(set.len() as u64) < alpha * int(n) {
        return Err(Error::Defect(format!("progression of size {} is below alpha N", set.len())));
    }
    let size = set.len();
    Ok((set, ApCertificate { a, l, size }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCertificate {
    pub d: u64,
    /// The base pattern inside `[1, D^2]`.
    pub pattern: Vec<usize>,
    pub k: u64,
    /// `floor(N / D)`.
    pub m: u64,
    pub part_one: Vec<usize>,
    pub part_two: Vec<usize>,
    pub size: usize,
    /// `2k`, bounding `M_D`.
    pub cap: u64,
}

/// `{D, 2D, ..., D^2} u {1, D+2, 2D+3, ..., (D-2)(D+1)+1}`: `2D - 1` points in `[1, D^2]`.
pub fn block_pattern(d: u64) -> Vec<usize> {
    let d = d as usize;
    let mut b: Vec<usize> = (1..=d).map(|j| j * d).chain((0..d - 1).map(|i| i * (d + 1) + 1)).collect();
    b.sort_unstable();
    b
}

/// `D(2 - D alpha)`.
fn margin(params: &RegimeParams) -> Rational {
    let d = int(params.d());
    &d * (int(2) - &d * params.alpha())
}

/// Checks the hypotheses of the block construction in the order margin, size, density.
pub fn block_hypotheses(params: &RegimeParams) -> Result<(), BlockHypothesis> {
    let value = margin(params);
    if value <= Rational::one() {
        return Err(BlockHypothesis::Margin { value });
    }
    let d = int(params.d());
    let required = &d * (&d - Rational::one()) * (int(2) * &d + Rational::one()) / (value - Rational::one());
    if int(params.n()) < required {
        return Err(BlockHypothesis::Size { required });
    }
    if params.gamma().is_negative() {
        return Err(BlockHypothesis::Density { gamma: params.gamma().clone() });
    }
    Ok(())
}

/// Repeats the base pattern `k` times at stride `D^2` and fills the rest with multiples of `D`.
pub fn construct_block(params: &RegimeParams) -> Result<(IntegerSet, BlockCertificate)> {
    block_hypotheses(params).map_err(Error::BlockHypothesis)?;
    let (n, d) = (params.n(), params.d());
    let m = n / d;
    let excess = params.alpha() * int(n) - int(m);
    let k = if excess.is_positive() { ceil_u64(&(excess / int(d - 1))).expect("positive") } else { 0 };
    if k * d > m {
        return Err(Error::Defect(format!("k D = {} exceeds floor(N/D) = {m}", k * d)));
    }
    let pattern = block_pattern(d);
    let stride = (d * d) as usize;
    let part_one: Vec<usize> = (0..k as usize).flat_map(|i| pattern.iter().map(move |&x| x + i * stride)).collect();
    let part_two: Vec<usize> = (k * d + 1..=m).map(|j| (j * d) as usize).collect();
    let set = IntegerSet::new(n as usize, part_one.iter().chain(&part_two).copied())?;

    let expected = k * d + m - k;
    if set.len() as u64 != expected {
        return Err(Error::Defect(format!("block set has {} elements, expected {expected}", set.len())));
    }
    if int(set.len() as u64) < params.alpha() * int(n) {
        return Err(Error::Defect(format!("block set of size {} is below alpha N", set.len())));
    }
    if k >= 1 && repr_integer(&set, 1) as u64 != 2 * k - 1 {
        return Err(Error::Defect("r(1) differs from 2k - 1".into()));
    }
    let size = set.len();
    Ok((set, BlockCertificate { d, pattern, k, m, part_one, part_two, size, cap: 2 * k }))
}
