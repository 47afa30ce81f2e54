use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{
    mod_inverse, mul_mod, prop1_capacity, quadratic_solution_count, weil_sum_profile, PrimeModulus,
};
use crate::sets::GridSet;

/// `A_u = {(x, x^2 u^{-1}) : x in Z/pZ}`.
pub fn parabola(p: PrimeModulus, u: u64) -> Result<GridSet> {
    let m = p.get();
    let inv = mod_inverse(u as i64, p)?;
    GridSet::new(p, (0..m).map(|x| (x as usize, mul_mod(mul_mod(x, x, m), inv, m) as usize)))
}

/// Ordered pairs `(P, Q) in A_u x A_v` with `P - Q = (a, b)`, counted via the discriminant
/// `4uv(a^2 - (u - v) b)` when `u != v` and the linear equation `2ax = a^2 + bu` when `u = v`.
pub fn parabola_pair_count(p: PrimeModulus, u: i64, v: i64, a: i64, b: i64) -> Result<u64> {
    let m = p.get() as i64;
    let (u, v, a, b) = (p.reduce(u) as i64, p.reduce(v) as i64, p.reduce(a) as i64, p.reduce(b) as i64);
    if u == 0 || v == 0 {
        return Err(Error::NoInverse { a: if u == 0 { u } else { v }, p: p.get() });
    }
    if u == v {
        return Ok(match (a, b) {
            (0, 0) => p.get(),
            (0, _) => 0,
            _ => 1,
        });
    }
    // With Q = P - (a, b): (v - u) x^2 + 2au x - (u a^2 + b u v) = 0.
    let a2 = v - u;
    let a1 = (2 * a * u) % m;
    let a0 = -(((u * a) % m * a) % m + ((b * u) % m * v) % m);
    Ok(quadratic_solution_count(a2, a1, a0, p)? as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolaCertificate {
    pub p: PrimeModulus,
    pub k: u64,
    /// Least minimiser of `S_n` over `0 ..= p-k-1`.
    pub n_star: u64,
    /// `n* + 1, ..., n* + k`.
    pub indices: Vec<u64>,
    pub s_n_star: u64,
    /// `S_{n*} < 7 k^{7/4}`.
    pub refinement_holds: bool,
    pub size: usize,
    /// `floor(k^2 + 7 k^{7/4})`.
    pub cap: u64,
}

/// Union of the `k` parabolas `A_{n*+1}, ..., A_{n*+k}`.
pub fn construct_parabola_union(p: PrimeModulus, k: u64) -> Result<(GridSet, ParabolaCertificate)> {
    let profile = weil_sum_profile(p, k)?;
    let n_star = profile.n_star;
    let indices: Vec<u64> = (n_star + 1..=n_star + k).collect();
    let mut points = Vec::with_capacity((k * p.get()) as usize);
    for &u in &indices {
        points.extend_from_slice(parabola(p, u)?.elements());
    }
    let set = GridSet::from_union(p, points)?;
    let expected = k * p.get() - k + 1;
    if set.len() as u64 != expected {
        return Err(Error::Defect(format!("parabola union has {} points, expected {expected}", set.len())));
    }
    let cert = ParabolaCertificate {
        p,
        k,
        n_star,
        indices,
        s_n_star: profile.s_n_star(),
        refinement_holds: profile.refinement_holds(),
        size: set.len(),
        cap: prop1_capacity(k),
    };
    Ok((set, cert))
}
