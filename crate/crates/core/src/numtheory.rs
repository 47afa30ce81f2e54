//! Word-sized modular arithmetic: primality, Legendre symbols, inverses, quadratic
//! solution counts and the Legendre-symbol window sums used to place parabolas.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

/// Miller-Rabin witnesses that are a complete test for every `n < 3.3 * 10^24`.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// Deterministic for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &WITNESSES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= x`. Bertrand's postulate keeps it below `2x`.
pub fn next_prime_at_least(x: u64) -> u64 {
    let mut n = x.max(2);
    while !is_prime(n) {
        n += 1;
    }
    n
}

/// An odd prime, certified by [`is_prime`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 3 && p % 2 == 1 && is_prime(p) {
            Ok(PrimeModulus(p))
        } else {
            Err(Error::NotOddPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Canonical residue in `[0, p)`.
    #[inline]
    pub fn reduce(self, a: i64) -> u64 {
        (a as i128).rem_euclid(self.0 as i128) as u64
    }
}

impl std::fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Legendre symbol by Euler's criterion.
pub fn legendre(a: i64, p: PrimeModulus) -> i8 {
    let r = p.reduce(a);
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p.get() - 1) / 2, p.get()) == 1 {
        1
    } else {
        -1
    }
}

/// `a^{-1} mod p` in `[1, p-1]`.
pub fn mod_inverse(a: i64, p: PrimeModulus) -> Result<u64> {
    let r = p.reduce(a);
    if r == 0 {
        return Err(Error::NoInverse { a, p: p.get() });
    }
    Ok(pow_mod(r, p.get() - 2, p.get()))
}

/// Number of roots of `a2 x^2 + a1 x + a0` in `Z/pZ`, i.e. `1 + (disc / p)`.
pub fn quadratic_solution_count(a2: i64, a1: i64, a0: i64, p: PrimeModulus) -> Result<u8> {
    let m = p.get();
    let (a2, a1, a0) = (p.reduce(a2), p.reduce(a1), p.reduce(a0));
    if a2 == 0 {
        return Err(Error::DegenerateQuadratic { p: m });
    }
    let four_ac = mul_mod(4 % m, mul_mod(a2, a0, m), m);
    let disc = (mul_mod(a1, a1, m) + m - four_ac) % m;
    Ok((1 + legendre(disc as i64, p)) as u8)
}

/// `k^2 + floor(7 k^{7/4})`, computed as `k^2 + floor((7^4 k^7)^{1/4})`.
pub fn prop1_capacity(k: u64) -> u64 {
    k * k + seven_k_seven_quarters_floor(k)
}

/// `floor(7 k^{7/4})`: the largest `t` with `t^4 <= 7^4 k^7`.
pub fn seven_k_seven_quarters_floor(k: u64) -> u64 {
    let radicand = BigUint::from(2401u32) * BigUint::from(k).pow(7);
    radicand.nth_root(4).to_u64().expect("fourth root of a 64-bit k fits in u64")
}

/// Exact test of `s < 7 k^{7/4}`, i.e. `s^4 < 7^4 k^7`.
pub fn below_seven_k_seven_quarters(s: u64, k: u64) -> bool {
    BigUint::from(s).pow(4) < BigUint::from(2401u32) * BigUint::from(k).pow(7)
}

/// `ceil(n^{2/5})`: the smallest `t` with `t^5 >= n^2`.
pub fn ceil_two_fifths_power(n: u64) -> u64 {
    let target = BigUint::from(n).pow(2);
    let mut t = target.nth_root(5);
    if t.pow(5) < target {
        t += BigUint::one();
    }
    t.to_u64().expect("n^{2/5} fits in u64")
}

/// Whether `total <= sqrt(2 p^2 k^2 (2k-1) + 8 p^{3/2} k^4)`, decided by squaring twice in
/// exact integer arithmetic.
pub fn within_weil_bound(total: u64, p: u64, k: u64) -> bool {
    // total^2 - 2p^2k^2(2k-1) <= 8 k^4 p sqrt(p)
    let lhs = (total as i128) * (total as i128) - 2 * (p as i128).pow(2) * (k as i128).pow(2) * (2 * k as i128 - 1);
    if lhs <= 0 {
        return true;
    }
    let lhs = BigUint::from(lhs as u128).pow(2);
    let rhs = BigUint::from(64u32) * BigUint::from(k).pow(8) * BigUint::from(p).pow(3);
    lhs <= rhs
}

/// Legendre-symbol window sums `S_n` for a window of `k` consecutive parabola indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilSumProfile {
    pub p: PrimeModulus,
    pub k: u64,
    /// `S_0, ..., S_{p-1}`.
    pub values: Vec<u64>,
    /// Least index minimising `S_n` over `0 ..= p-k-1`.
    pub n_star: u64,
    pub total: u64,
}

impl WeilSumProfile {
    pub fn s_n_star(&self) -> u64 {
        self.values[self.n_star as usize]
    }

    /// Sum of `S_n` over the admissible range `0 ..= p-k-1`.
    pub fn admissible_total(&self) -> u64 {
        self.values[..(self.p.get() - self.k) as usize].iter().sum()
    }

    pub fn within_weil_bound(&self) -> bool {
        within_weil_bound(self.total, self.p.get(), self.k)
    }

    /// `S_{n*} <= (sum over admissible n of S_n) / (p - k)`.
    pub fn minimum_below_average(&self) -> bool {
        self.s_n_star() * (self.p.get() - self.k) <= self.admissible_total()
    }

    /// `S_{n*} < 7 k^{7/4}`.
    pub fn refinement_holds(&self) -> bool {
        below_seven_k_seven_quarters(self.s_n_star(), self.k)
    }
}

/// `S_n = sum_{1 <= |l| <= k-1} | sum_{i - j = l} ((n+i)(n+j) / p) |` with `1 <= i, j <= k`.
pub fn weil_sum_profile(p: PrimeModulus, k: u64) -> Result<WeilSumProfile> {
    let m = p.get();
    if k == 0 {
        return Err(Error::InvalidParameter("window size k must be at least 1".into()));
    }
    if 2 * k > m {
        return Err(Error::WindowTooLarge { p: m, k });
    }
    let chi: Vec<i64> = (0..m).map(|r| legendre(r as i64, p) as i64).collect();
    let k = k as i64;
    let values: Vec<u64> = (0..m)
        .map(|n| {
            let mut s = 0u64;
            for l in -(k - 1)..=(k - 1) {
                if l == 0 {
                    continue;
                }
                let inner: i64 = (1..=k)
                    .filter_map(|i| {
                        let j = i - l;
                        (1..=k).contains(&j).then(|| {
                            let x = (n + i as u64) % m;
                            let y = (n + j as u64) % m;
                            chi[mul_mod(x, y, m) as usize]
                        })
                    })
                    .sum();
                s += inner.unsigned_abs();
            }
            s
        })
        .collect();
    let admissible = &values[..(m - k as u64) as usize];
    let min = *admissible.iter().min().expect("2k <= p leaves a nonempty range");
    let n_star = admissible.iter().position(|&v| v == min).unwrap() as u64;
    let total = values.iter().sum();
    Ok(WeilSumProfile { p, k: k as u64, values, n_star, total })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    fn squares(p: u64) -> Vec<bool> {
        let mut sq = vec![false; p as usize];
        for x in 1..p {
            sq[(x * x % p) as usize] = true;
        }
        sq
    }

    fn odd_primes_up_to(n: u64) -> impl Iterator<Item = PrimeModulus> {
        (3..=n).filter(|&q| trial_division(q)).map(|q| PrimeModulus::new(q).unwrap())
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(561));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(u64::MAX));
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn prime_modulus_rejects_even_and_composite() {
        assert!(PrimeModulus::new(2).is_err());
        assert!(PrimeModulus::new(9).is_err());
        assert!(PrimeModulus::new(1).is_err());
        assert_eq!(PrimeModulus::new(7).unwrap().get(), 7);
    }

    #[test]
    fn legendre_examples() {
        let p = PrimeModulus::new(7).unwrap();
        assert_eq!(legendre(0, p), 0);
        assert_eq!(legendre(2, p), 1);
        assert_eq!(legendre(3, p), -1);
        assert_eq!(legendre(-3, p), 1);
        assert_eq!(legendre(14, p), 0);
    }

    #[test]
    fn legendre_matches_residue_enumeration() {
        for p in odd_primes_up_to(101) {
            let sq = squares(p.get());
            for a in -(p.get() as i64)..(2 * p.get() as i64) {
                let r = p.reduce(a) as usize;
                let expected = if r == 0 {
                    0
                } else if sq[r] {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(a, p), expected, "a = {a}, p = {p}");
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let p = PrimeModulus::new(7).unwrap();
        assert_eq!(mod_inverse(1, p).unwrap(), 1);
        assert_eq!(mod_inverse(3, p).unwrap(), 5);
        assert_eq!(mod_inverse(-4, p).unwrap(), 5);
        assert!(matches!(mod_inverse(0, p), Err(Error::NoInverse { .. })));
        assert!(mod_inverse(21, p).is_err());
    }

    #[test]
    fn quadratic_examples() {
        let p = PrimeModulus::new(5).unwrap();
        assert_eq!(quadratic_solution_count(1, 0, -1, p).unwrap(), 2);
        assert_eq!(quadratic_solution_count(1, 0, -2, p).unwrap(), 0);
        assert_eq!(quadratic_solution_count(1, 0, 0, p).unwrap(), 1);
        assert!(matches!(quadratic_solution_count(5, 1, 1, p), Err(Error::DegenerateQuadratic { p: 5 })));
    }

    #[test]
    fn quadratic_count_matches_enumeration() {
        for p in odd_primes_up_to(13) {
            let m = p.get();
            for a2 in 1..m {
                for a1 in 0..m {
                    for a0 in 0..m {
                        let brute = (0..m).filter(|&x| (a2 * x * x + a1 * x + a0) % m == 0).count();
                        let got = quadratic_solution_count(a2 as i64, a1 as i64, a0 as i64, p).unwrap();
                        assert_eq!(got as usize, brute, "p={m} ({a2},{a1},{a0})");
                    }
                }
            }
        }
    }

    #[test]
    fn capacity_examples() {
        assert_eq!(prop1_capacity(1), 8);
        assert_eq!(prop1_capacity(2), 27);
        assert_eq!(prop1_capacity(4), 95);
        assert_eq!(prop1_capacity(5), 142);
    }

    #[test]
    fn capacity_is_exact_floor() {
        for k in 1..=2000u64 {
            let v = prop1_capacity(k) - k * k;
            let bound = BigUint::from(2401u32) * BigUint::from(k).pow(7);
            assert!(BigUint::from(v).pow(4) <= bound);
            assert!(BigUint::from(v + 1).pow(4) > bound);
        }
    }

    #[test]
    fn next_prime_examples() {
        assert_eq!(next_prime_at_least(2), 2);
        assert_eq!(next_prime_at_least(20), 23);
        assert_eq!(next_prime_at_least(90), 97);
        assert_eq!(next_prime_at_least(0), 2);
        for x in 2..5000 {
            let q = next_prime_at_least(x);
            assert!(q >= x && q < 2 * x && trial_division(q));
            assert!((x..q).all(|y| !trial_division(y)));
        }
    }

    #[test]
    fn two_fifths_power() {
        assert_eq!(ceil_two_fifths_power(2000), 21);
        assert_eq!(ceil_two_fifths_power(32), 4);
        assert_eq!(ceil_two_fifths_power(33), 5);
        assert_eq!(ceil_two_fifths_power(1), 1);
    }

    #[test]
    fn weil_profile_seven_two() {
        // S_n = 2 |((n+1)(n+2) / 7)|, which vanishes for n = 5, 6.
        let p = PrimeModulus::new(7).unwrap();
        let prof = weil_sum_profile(p, 2).unwrap();
        assert_eq!(prof.values, vec![2, 2, 2, 2, 2, 0, 0]);
        assert_eq!(prof.n_star, 0);
        assert_eq!(prof.total, 10);
        assert!(prof.within_weil_bound());
    }

    #[test]
    fn weil_profile_range_and_errors() {
        let p = PrimeModulus::new(5).unwrap();
        let prof = weil_sum_profile(p, 2).unwrap();
        assert!(prof.n_star <= 2);
        assert!(matches!(weil_sum_profile(p, 3), Err(Error::WindowTooLarge { .. })));
        assert!(weil_sum_profile(p, 0).is_err());
        let single = weil_sum_profile(p, 1).unwrap();
        assert!(single.values.iter().all(|&v| v == 0));
        assert_eq!(single.n_star, 0);
    }

    #[test]
    fn weil_bound_boundary_arithmetic() {
        // p = 7, k = 2: the bound is sqrt(1176 + 896 sqrt 7) ~ 59.6.
        assert!(within_weil_bound(59, 7, 2));
        assert!(!within_weil_bound(60, 7, 2));
    }

    #[test]
    fn weil_profile_invariants() {
        for p in odd_primes_up_to(101) {
            for k in 1..=10.min(p.get() / 2) {
                let prof = weil_sum_profile(p, k).unwrap();
                assert!(prof.within_weil_bound(), "p={p} k={k}");
                assert!(prof.minimum_below_average(), "p={p} k={k}");
                assert!(prof.refinement_holds(), "p={p} k={k}");
                let min = prof.values[..(p.get() - k) as usize].iter().min().unwrap();
                assert_eq!(prof.s_n_star(), *min);
                assert!(prof.values[..prof.n_star as usize].iter().all(|v| v > min));
            }
        }
    }
}
