use serde::Serialize;

use crate::error::{Error, Result};
use crate::repr::{Autocorrelation, Window};
use crate::sets::{CyclicSet, GridSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionCertificate {
    pub p: u64,
    pub s: u64,
    /// `p^2 s`.
    pub modulus: u64,
    /// `m = |A|`.
    pub source_size: usize,
    /// `h`, the largest grid count over nonzero differences.
    pub source_max: usize,
    pub size: usize,
    /// `h (s + 1)`.
    pub cap: u64,
    /// Largest count over the residues listed by [`exceptional_residues`], computed exactly.
    pub exceptional_max: u64,
    /// `max(cap, exceptional_max)`, which bounds every nonzero residue.
    pub proven_cap: u64,
}

/// The residues `cp` (`1 <= c < s`) and `cp + (p-1)sp` (`0 <= c < s`). Their differences
/// reach the grid origin, so `h (s + 1)` does not bound them.
pub fn exceptional_residues(p: u64, s: u64) -> Vec<usize> {
    let mut out: Vec<usize> = (1..s).map(|c| (c * p) as usize).collect();
    out.extend((0..s).map(|c| (c * p + (p - 1) * s * p) as usize));
    out
}

/// `A' = {a + cp + bsp : (a, b) in A, 0 <= c < s}` in `Z/p^2 s Z`.
pub fn project_to_cyclic(source: &GridSet, s: u64) -> Result<(CyclicSet, ProjectionCertificate)> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let p = source.p().get();
    let modulus = p * p * s;
    let elements = source
        .elements()
        .iter()
        .flat_map(|&(a, b)| (0..s).map(move |c| a as u64 + c * p + b as u64 * s * p))
        .map(|x| x as usize);
    let set = CyclicSet::new(modulus as usize, elements)?;

    let m = source.len();
    if set.len() as u64 != m as u64 * s {
        return Err(Error::Defect(format!("projection has {} elements, expected {}", set.len(), m as u64 * s)));
    }
    let table = source.repr_table(Window::Full)?;
    let h = table.m_max();
    let (up, down) = (table.get_pair(0, 1) as u64, table.get_pair(0, p as usize - 1) as u64);
    let m64 = m as u64;
    // Exact counts: (s - c) m + c r(0, 1) at cp, and (s - c) r(0, -1) + c m at cp + (p-1)sp.
    // Both are linear in c, so the extremes sit at the ends of the ranges.
    let mut exceptional_max = (s * down).max(down + (s - 1) * m64);
    if s >= 2 {
        exceptional_max = exceptional_max.max((s - 1) * m64 + up).max(m64 + (s - 1) * up);
    }
    let cap = h as u64 * (s + 1);
    let cert = ProjectionCertificate {
        p,
        s,
        modulus,
        source_size: m,
        source_max: h,
        size: set.len(),
        cap,
        exceptional_max,
        proven_cap: cap.max(exceptional_max),
    };
    Ok((set, cert))
}
