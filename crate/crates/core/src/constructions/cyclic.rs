use num_traits::{One, Signed};
use serde::Serialize;

use super::parabola::{construct_parabola_union, ParabolaCertificate};
use super::projection::{project_to_cyclic, ProjectionCertificate};
use crate::error::{Error, Result};
use crate::numtheory::{ceil_two_fifths_power, is_prime, next_prime_at_least, prop1_capacity, PrimeModulus};
use crate::rational::{ceil_u64, int, ratio, serialize_ratio_str, Rational};
use crate::sets::{CyclicSet, IntegerSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicCertificate {
    pub p: u64,
    pub s: u64,
    #[serde(serialize_with = "serialize_ratio_str")]
    pub alpha: Rational,
    /// `ceil(p alpha) + 1`.
    pub k: u64,
    pub modulus: u64,
    pub size: usize,
    /// `floor(k^2 + 7 k^{7/4}) (s + 1)`.
    pub cap: u64,
    /// The projection bound with the grid maximum measured and the exceptional residues included.
    pub proven_cap: u64,
    pub parabola: ParabolaCertificate,
    pub projection: ProjectionCertificate,
}

fn check_alpha(alpha: &Rational) -> Result<()> {
    if !alpha.is_positive() || *alpha >= ratio(1, 2) {
        return Err(Error::InvalidParameter(format!("need 0 < alpha < 1/2, got {alpha}")));
    }
    Ok(())
}

fn window_size(p: u64, alpha: &Rational) -> u64 {
    ceil_u64(&(int(p) * alpha)).expect("p alpha is positive") + 1
}

/// Projects the union of `ceil(p alpha) + 1` parabolas into `Z/p^2 s Z`.
pub fn construct_cyclic(p: PrimeModulus, s: u64, alpha: &Rational) -> Result<(CyclicSet, CyclicCertificate)> {
    check_alpha(alpha)?;
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let k = window_size(p.get(), alpha);
    if 2 * k > p.get() {
        return Err(Error::PrimeTooSmall { p: p.get(), alpha: alpha.clone(), k });
    }
    if ratio(k - 1, p.get()) < *alpha {
        return Err(Error::Defect(format!("(k - 1)/p = {}/{} is below alpha", k - 1, p.get())));
    }
    let (grid, parabola) = construct_parabola_union(p, k)?;
    let (set, projection) = project_to_cyclic(&grid, s)?;
    if set.density() < *alpha {
        return Err(Error::Defect("projected set is below density alpha".into()));
    }
    let cert = CyclicCertificate {
        p: p.get(),
        s,
        alpha: alpha.clone(),
        k,
        modulus: projection.modulus,
        size: set.len(),
        cap: prop1_capacity(k) * (s + 1),
        proven_cap: projection.proven_cap,
        parabola,
        projection,
    };
    Ok((set, cert))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerCertificate {
    pub n: u64,
    #[serde(serialize_with = "serialize_ratio_str")]
    pub alpha: Rational,
    /// `P = ceil(N^{2/5})`; the prime is the first admissible one in `[P, 2P]`.
    pub search_low: u64,
    pub search_high: u64,
    pub p: u64,
    /// `floor(N / p^2)`.
    pub s: u64,
    pub k: u64,
    pub size: usize,
    /// The cyclic cap, which also bounds `M_N` because integer differences stay distinct mod `p^2 s`.
    pub cap: u64,
    pub proven_cap: u64,
    pub cyclic: CyclicCertificate,
}

/// Parameters chosen for the construction on `[N]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerPlan {
    /// `P = ceil(N^{2/5})`.
    pub low: u64,
    pub high: u64,
    pub p: u64,
    pub s: u64,
    pub k: u64,
    /// `floor(k^2 + 7 k^{7/4}) (s + 1)`.
    pub cap: u64,
}

/// The first prime `p` in `[P, 2P]` with `floor(N/p^2) >= 1` and `2(ceil(p alpha) + 1) <= p`.
pub fn plan_integer(n: u64, alpha: &Rational) -> Result<IntegerPlan> {
    check_alpha(alpha)?;
    if alpha * int(n) < Rational::one() {
        return Err(Error::InvalidParameter(format!("need alpha N >= 1, got alpha = {alpha}, N = {n}")));
    }
    let low = ceil_two_fifths_power(n);
    let high = 2 * low;
    let p = (next_prime_at_least(low.max(3))..=high)
        .filter(|&q| is_prime(q))
        .find(|&q| n / (q * q) >= 1 && 2 * window_size(q, alpha) <= q)
        .ok_or_else(|| Error::NoAdmissiblePrime { n, alpha: alpha.clone(), low, high })?;
    let s = n / (p * p);
    let k = window_size(p, alpha);
    Ok(IntegerPlan { low, high, p, s, k, cap: prop1_capacity(k) * (s + 1) })
}

/// Builds the cyclic set for the planned `(p, s)` and lifts it to `[1, p^2 s]`.
pub fn construct_integer(n: u64, alpha: &Rational) -> Result<(IntegerSet, IntegerCertificate)> {
    let IntegerPlan { low, high, p, s, .. } = plan_integer(n, alpha)?;
    let (cyclic_set, cyclic) = construct_cyclic(PrimeModulus::new(p)?, s, alpha)?;
    let set = IntegerSet::new(n as usize, cyclic_set.elements().iter().map(|&r| r + 1))?;
    if int(set.len() as u64) < alpha * int(p * p * s) {
        return Err(Error::Defect("lifted set is below alpha p^2 s".into()));
    }
    let cert = IntegerCertificate {
        n,
        alpha: alpha.clone(),
        search_low: low,
        search_high: high,
        p,
        s,
        k: cyclic.k,
        size: set.len(),
        cap: cyclic.cap,
        proven_cap: cyclic.proven_cap,
        cyclic,
    };
    Ok((set, cert))
}
