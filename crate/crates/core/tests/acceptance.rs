//! Acceptance gate: eleven criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are never captured. Exits nonzero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use popdiff::bounds::{lb_cyclic_counting, lb_fourier, lb_inclusion_exclusion, ub_block};
use popdiff::constructions::{
    block_hypotheses, construct_ap, construct_block, construct_cyclic, construct_parabola_union, exceptional_residues,
    parabola_pair_count, project_to_cyclic, RegimeParams,
};
use popdiff::numtheory::{prop1_capacity, weil_sum_profile, PrimeModulus};
use popdiff::oracle::{exact_f, OracleOptions};
use popdiff::rational::{int, ratio, Rational};
use popdiff::repr::{fourier_energy, plancherel_floor, Autocorrelation, Window};
use popdiff::sets::{CyclicSet, GridSet, IntegerSet};

const SEED: u64 = 0x5eed_2026;
const MAX_DETAILS: usize = 16;

struct Outcome {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, summary: impl Into<String>) -> Self {
        Outcome { passed, summary: summary.into(), details: Vec::new() }
    }
}

fn odd_primes(upto: u64) -> Vec<u64> {
    (3..=upto).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

fn prime(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

/// `M_D` by direct pair counting over a membership vector.
fn window_max(elements: &[usize], n: usize, d: usize) -> usize {
    let mut member = vec![false; n + d + 1];
    for &x in elements {
        member[x] = true;
    }
    (1..d).map(|t| elements.iter().filter(|&&x| member[x + t]).count()).max().unwrap_or(0)
}

/// All `r(a, b)` of a grid set, by looping over ordered pairs of points.
fn grid_counts(points: &[(usize, usize)], p: usize) -> Vec<usize> {
    let mut counts = vec![0; p * p];
    for &(x1, y1) in points {
        for &(x2, y2) in points {
            counts[((x1 + p - x2) % p) * p + (y1 + p - y2) % p] += 1;
        }
    }
    counts
}

fn cyclic_counts(elements: &[usize], m: usize) -> Vec<usize> {
    let mut counts = vec![0; m];
    for &a in elements {
        for &b in elements {
            counts[(a + m - b) % m] += 1;
        }
    }
    counts
}

fn inverse(x: u64, p: u64) -> u64 {
    (1..p).find(|&y| x * y % p == 1).unwrap()
}

/// `r(a, b)` over `A_u - A_v` for every `(a, b)`, by enumerating both parabolas.
fn parabola_pair_table(p: u64, u: u64, v: u64) -> Vec<usize> {
    let (iu, iv) = (inverse(u, p), inverse(v, p));
    let mut counts = vec![0; (p * p) as usize];
    for x in 0..p {
        for y in 0..p {
            let a = (x + p - y) % p;
            let b = (x * x % p * iu % p + p - y * y % p * iv % p) % p;
            counts[(a * p + b) as usize] += 1;
        }
    }
    counts
}

fn criterion_1() -> Outcome {
    let mut points = 0;
    let mut failures = Vec::new();
    for n in 2..=16u64 {
        for j in 1..=n / 2 {
            let alpha = ratio(j, n);
            let a = n / j;
            for d in 2..=a.min(n) {
                points += 1;
                let params = RegimeParams::new(n, d, alpha.clone()).unwrap();
                let f = exact_f(&params, &OracleOptions::default()).unwrap().f_exact;
                let (set, _) = construct_ap(n, &alpha).unwrap();
                let dense = int(set.len() as u64) >= &alpha * int(n);
                let m = window_max(set.elements(), n as usize, d as usize);
                if f != 0 || !dense || m != 0 {
                    failures.push(format!("N={n} D={d} alpha={alpha}: f={f} M_D(ap)={m} dense={dense}"));
                }
            }
        }
    }
    let mut o = Outcome::new(
        failures.is_empty() && points > 0,
        format!("{points} points with D <= floor(1/alpha), N <= 16: f = 0 and the progression witnesses it"),
    );
    o.details = failures;
    o
}

fn criterion_2() -> Outcome {
    let mut points = 0;
    let mut block_points = 0;
    let mut failures = Vec::new();
    for n in 2..=14u64 {
        for d in 2..=n {
            for m in 1..=n {
                let mut alphas = vec![ratio(2 * m - 1, 2 * n)];
                if m < n {
                    alphas.push(ratio(m, n));
                }
                for alpha in alphas {
                    let params = RegimeParams::new(n, d, alpha.clone()).unwrap();
                    assert_eq!(params.min_size(), m);
                    points += 1;
                    let f = int(exact_f(&params, &OracleOptions::default()).unwrap().f_exact);
                    let (ie, fo) = (lb_inclusion_exclusion(&params), lb_fourier(&params));
                    if ie > f || fo > f {
                        failures.push(format!("N={n} D={d} alpha={alpha}: f={f} lb_ie={ie} lb_fourier={fo}"));
                    }
                    if block_hypotheses(&params).is_ok() {
                        block_points += 1;
                        let (set, _) = construct_block(&params).unwrap();
                        let md = int(window_max(set.elements(), n as usize, d as usize) as u64);
                        if f > md {
                            failures.push(format!("N={n} D={d} alpha={alpha}: f={f} > M_D(block)={md}"));
                        }
                    }
                }
            }
        }
    }
    let mut o = Outcome::new(
        failures.is_empty(),
        format!("{points} points N <= 14: lb_ie <= f and lb_fourier <= f; f <= M_D(block) at {block_points} points"),
    );
    o.details = failures;
    o
}

fn criterion_3() -> Outcome {
    let mut points = 0;
    let mut failures = Vec::new();
    for n in (250..=5000u64).step_by(250) {
        for d in 2..=7u64 {
            for num in 1..60u64 {
                let alpha = ratio(num, 60);
                let Ok(params) = RegimeParams::new(n, d, alpha.clone()) else { continue };
                if int(d) * &alpha <= int(1) || block_hypotheses(&params).is_err() {
                    continue;
                }
                points += 1;
                let (set, cert) = construct_block(&params).unwrap();
                let ub = ub_block(&params).unwrap();
                let dense = int(set.len() as u64) >= &alpha * int(n);
                let measured = set.repr_table(Window::Below(d as usize)).unwrap().m_max() as u64;
                let member: BTreeSet<usize> = set.elements().iter().copied().collect();
                let r1 = set.elements().iter().filter(|&&x| member.contains(&(x + 1))).count() as u64;
                let ok = dense && measured <= 2 * cert.k && int(2 * cert.k) <= ub && r1 == 2 * cert.k - 1;
                if !ok {
                    failures.push(format!(
                        "N={n} D={d} alpha={alpha}: |A|={} M_D={measured} k={} ub={ub} r(1)={r1}",
                        set.len(),
                        cert.k
                    ));
                }
            }
        }
    }
    let mut o = Outcome::new(
        failures.is_empty() && points >= 200,
        format!("{points} points N <= 5000: |A| >= alpha N, M_D <= 2k <= ub_block, r(1) = 2k - 1"),
    );
    o.details = failures;
    o
}

fn legendre_table(p: u64) -> Vec<i64> {
    let mut chi = vec![-1i64; p as usize];
    chi[0] = 0;
    for x in 1..p {
        chi[(x * x % p) as usize] = 1;
    }
    chi
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut single_checked = 0u64;
    for p in odd_primes(31) {
        for u in 1..p {
            let table = parabola_pair_table(p, u, u);
            for (i, &c) in table.iter().enumerate().skip(1) {
                single_checked += 1;
                let formula =
                    parabola_pair_count(prime(p), u as i64, u as i64, (i as u64 / p) as i64, (i as u64 % p) as i64);
                if c > 1 || formula.ok() != Some(c as u64) {
                    failures.push(format!("p={p} u={u} (a,b)=({},{}): count {c}", i as u64 / p, i as u64 % p));
                }
            }
        }
    }
    let mut quadruples = 0u64;
    for p in odd_primes(13) {
        let chi = legendre_table(p);
        let tables: Vec<Vec<Vec<usize>>> = (0..p)
            .map(|u| (0..p).map(|v| if u == 0 || v == 0 { Vec::new() } else { parabola_pair_table(p, u, v) }).collect())
            .collect();
        for u in 1..p {
            for v in 1..p {
                for u2 in 1..p {
                    let v2 = (u2 + p + v - u) % p;
                    if v2 == 0 || chi[(u * v % p * u2 % p * v2 % p) as usize] != -1 {
                        continue;
                    }
                    quadruples += 1;
                    let (t1, t2) = (&tables[u as usize][v as usize], &tables[u2 as usize][v2 as usize]);
                    for i in 1..(p * p) as usize {
                        if t1[i] + t2[i] != 2 {
                            failures.push(format!(
                                "p={p} (u,v,u',v')=({u},{v},{u2},{v2}) index {i}: {} + {}",
                                t1[i], t2[i]
                            ));
                        }
                    }
                }
            }
        }
    }
    let mut o = Outcome::new(
        failures.is_empty() && quadruples > 0,
        format!("{single_checked} single-parabola counts <= 1 (p <= 31); {quadruples} nonresidue quadruples sum to 2 (p <= 13)"),
    );
    o.details = failures;
    o
}

/// `total <= sqrt(2 p^2 k^2 (2k-1) + 8 p^{3/2} k^4)` by squaring twice.
fn within_bound(total: u64, p: u64, k: u64) -> bool {
    let lhs = BigUint::from(total).pow(2);
    let base = BigUint::from(2u32) * BigUint::from(p * p * k * k) * BigUint::from(2 * k - 1);
    if lhs <= base {
        return true;
    }
    let excess = lhs - base;
    excess.pow(2) <= BigUint::from(64u32) * BigUint::from(k).pow(8) * BigUint::from(p).pow(3)
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0;
    let mut tightest = (0.0, 0, 0);
    for p in odd_primes(101) {
        let chi = legendre_table(p);
        for k in 1..=10.min(p / 2) {
            pairs += 1;
            let mut total = 0u64;
            for n in 0..p {
                for l in 1..k as i64 {
                    for sign in [-1i64, 1] {
                        let l = sign * l;
                        let inner: i64 = (1..=k as i64)
                            .filter(|&i| (1..=k as i64).contains(&(i - l)))
                            .map(|i| chi[(((n as i64 + i) * (n as i64 + i - l)).rem_euclid(p as i64)) as usize])
                            .sum();
                        total += inner.unsigned_abs();
                    }
                }
            }
            let profile = weil_sum_profile(prime(p), k).unwrap();
            let ok = within_bound(total, p, k) && profile.total == total && profile.within_weil_bound();
            let bound = (2.0 * (p * p * k * k) as f64 * (2 * k - 1) as f64
                + 8.0 * (p as f64).powf(1.5) * (k as f64).powi(4))
            .sqrt();
            let ratio = total as f64 / bound;
            if ratio > tightest.0 {
                tightest = (ratio, p, k);
            }
            if !ok {
                failures.push(format!("p={p} k={k}: total {total} library {}", profile.total));
            }
        }
    }
    let mut o = Outcome::new(
        failures.is_empty(),
        format!(
            "{pairs} (p, k) pairs, p <= 101: window-sum total within bound (tightest {:.3} at p={}, k={})",
            tightest.0, tightest.1, tightest.2
        ),
    );
    o.details = failures;
    o
}

/// `floor(k^2 + 7 k^{7/4})` via the largest `t` with `t^4 <= 2401 k^7`.
fn capacity(k: u64) -> u64 {
    let target = 2401u128 * (k as u128).pow(7);
    let (mut lo, mut hi) = (0u128, 1u128 << 24);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if mid.pow(4) <= target {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    k * k + lo as u64
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0;
    let mut slack = f64::INFINITY;
    for p in odd_primes(61) {
        for k in 1..=p / 2 {
            pairs += 1;
            let (set, cert) = construct_parabola_union(prime(p), k).unwrap();
            let counts = grid_counts(set.elements(), p as usize);
            let max = counts.iter().skip(1).copied().max().unwrap() as u64;
            let cap = capacity(k);
            slack = slack.min(cap as f64 / max as f64);
            if set.len() as u64 != k * p - k + 1 || max > cap || cap != prop1_capacity(k) || cert.cap != cap {
                failures.push(format!("p={p} k={k}: size {} max {max} cap {cap}", set.len()));
            }
        }
    }
    let mut o = Outcome::new(
        failures.is_empty(),
        format!("{pairs} (p, k) pairs, p <= 61: size kp - k + 1, max nonzero <= capacity (least cap/max {slack:.2})"),
    );
    o.details = failures;
    o
}

fn random_grid(rng: &mut ChaCha8Rng, p: usize) -> Vec<(usize, usize)> {
    let density: f64 = rng.gen_range(0.02..0.9);
    let mut pts: Vec<(usize, usize)> =
        (0..p).flat_map(|x| (0..p).map(move |y| (x, y))).filter(|_| rng.gen_bool(density)).collect();
    if pts.is_empty() {
        pts.push((rng.gen_range(0..p), rng.gen_range(0..p)));
    }
    pts
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let primes = [3u64, 5, 7, 11, 13];
    let cases = 150;
    let mut failures = Vec::new();
    let mut size_failures = 0;
    let mut off_exceptional_failures = 0;
    let mut literal_h_failures = 0;
    for case in 0..cases {
        let p = primes[rng.gen_range(0..primes.len())];
        let s = rng.gen_range(1..=6u64);
        let pts = random_grid(&mut rng, p as usize);
        let grid = GridSet::new(prime(p), pts.iter().copied()).unwrap();
        let (proj, _) = project_to_cyclic(&grid, s).unwrap();
        let m = pts.len() as u64;
        let h = grid_counts(&pts, p as usize).iter().skip(1).copied().max().unwrap_or(0) as u64;
        if proj.len() as u64 != m * s {
            size_failures += 1;
        }
        let counts = cyclic_counts(proj.elements(), proj.modulus());
        let (arg, max) = counts
            .iter()
            .enumerate()
            .skip(1)
            .map(|(x, &c)| (x, c as u64))
            .max_by_key(|&(x, c)| (c, std::cmp::Reverse(x)))
            .unwrap();
        let cap = h * (s + 1);
        if max > cap {
            if failures.len() < 5 {
                failures.push(format!("case {case}: p={p} s={s} m={m} h={h}: r({arg}) = {max} > h(s+1) = {cap}"));
            }
            literal_h_failures += 1;
        }
        let exceptional: BTreeSet<usize> = exceptional_residues(p, s).into_iter().collect();
        let off = counts
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(x, _)| !exceptional.contains(x))
            .map(|(_, &c)| c as u64)
            .max()
            .unwrap_or(0);
        if off > cap {
            off_exceptional_failures += 1;
        }
    }
    let passed = literal_h_failures == 0 && size_failures == 0;
    let mut o = Outcome::new(
        passed,
        format!(
            "{cases} seeded grid subsets, p <= 13, s <= 6: size = ms in all but {size_failures}; \
             max nonzero <= h(s+1) fails in {literal_h_failures}"
        ),
    );
    o.details = failures;
    o.details.push(format!(
        "residues other than cp and cp + (p-1)sp stay within h(s+1) in all but {off_exceptional_failures} cases; \
         at cp the count is exactly m(s-c) + c r(0,1)"
    ));
    o
}

fn criterion_8() -> Outcome {
    let alpha = ratio(1, 5);
    let mut failures = Vec::new();
    let mut log = Vec::new();
    let mut ok = true;
    for s in [2u64, 4, 8] {
        let mut previous: Option<Rational> = None;
        for p in [11u64, 23, 47, 97] {
            let (set, cert) = construct_cyclic(prime(p), s, &alpha).unwrap();
            let measured = set.repr_table(Window::Full).unwrap().m_max() as u64;
            let scale = &alpha * &alpha * int(p * p * s);
            let measured_ratio = int(measured) / &scale;
            let cert_ratio = int(cert.cap) / &scale;
            log.push(format!(
                "p={p} s={s} k={} |A|={} measured={measured} cap={} measured/(a^2 p^2 s)={:.4} cap/(a^2 p^2 s)={:.4}",
                cert.k,
                set.len(),
                cert.cap,
                popdiff::rational::to_f64(&measured_ratio),
                popdiff::rational::to_f64(&cert_ratio)
            ));
            if measured > cert.cap {
                ok = false;
                failures.push(format!("p={p} s={s}: measured {measured} > cap {}", cert.cap));
            }
            if let Some(prev) = &previous {
                if cert_ratio > *prev {
                    ok = false;
                    failures.push(format!("p={p} s={s}: certificate ratio increased"));
                }
            }
            previous = Some(cert_ratio);
        }
    }
    let mut o = Outcome::new(
        ok,
        "p in {11, 23, 47, 97}, s in {2, 4, 8}, alpha = 1/5: measured <= cap, cap ratio non-increasing in p",
    );
    o.details = failures;
    o.details.extend(log);
    o
}

fn random_cyclic(rng: &mut ChaCha8Rng, modulus: usize, nonempty: bool) -> Vec<usize> {
    let density: f64 = rng.gen_range(0.0..0.6);
    let mut elems: Vec<usize> = (0..modulus).filter(|_| rng.gen_bool(density)).collect();
    if nonempty && elems.is_empty() {
        elems.push(rng.gen_range(0..modulus));
    }
    elems
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let cases = 1200;
    let mut failures = Vec::new();
    let mut cross_checked = 0;
    for case in 0..cases {
        let d = rng.gen_range(1..=200usize);
        let n = rng.gen_range(1..=(2048 - d));
        let modulus = n + d;
        let set = CyclicSet::new(modulus, random_cyclic(&mut rng, modulus, false)).unwrap();
        let energy = fourier_energy(&set, d).unwrap();
        let floor = plancherel_floor(&set, d);
        let a = set.len() as u64;
        let exact_floor = ratio(a * a * (d * d) as u64, modulus as u64);
        if floor != exact_floor || int(energy) < exact_floor {
            failures.push(format!("case {case}: M={modulus} D={d} |A|={a} E={energy} floor={exact_floor}"));
        }
        if modulus <= 400 {
            cross_checked += 1;
            let ra = cyclic_counts(set.elements(), modulus);
            let ri = cyclic_counts(&(1..=d).collect::<Vec<_>>(), modulus);
            let direct: u64 = ra.iter().zip(&ri).map(|(&x, &y)| (x * y) as u64).sum();
            if direct != energy {
                failures.push(format!("case {case}: energy {energy} differs from direct sum {direct}"));
            }
        }
    }
    let mut o = Outcome::new(
        failures.is_empty(),
        format!("{cases} seeded cyclic sets, modulus <= 2048: energy >= |A|^2 D^2 / (N + D); {cross_checked} energies recomputed directly"),
    );
    o.details = failures;
    o
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    let per_ambient = 400;
    let mut failures = Vec::new();
    let cap_size = |rng: &mut ChaCha8Rng, size: usize| (size as f64 * rng.gen_range(0.0..0.5)).min(1024.0);
    for case in 0..per_ambient {
        let n = rng.gen_range(1..=4096usize);
        let density = cap_size(&mut rng, n) / n as f64;
        let elems: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(density)).collect();
        let set = IntegerSet::new(n, elems).unwrap();
        let window = if rng.gen_bool(0.5) { Window::Full } else { Window::Below(rng.gen_range(2..=n + 10)) };
        if set.repr_table(window).unwrap() != set.repr_table_naive(window).unwrap() {
            failures.push(format!("interval case {case}: N={n} {window:?}"));
        }
    }
    for case in 0..per_ambient {
        let m = rng.gen_range(2..=4096usize);
        let density = cap_size(&mut rng, m) / m as f64;
        let elems: Vec<usize> = (0..m).filter(|_| rng.gen_bool(density)).collect();
        let set = CyclicSet::new(m, elems).unwrap();
        let window = if rng.gen_bool(0.5) { Window::Full } else { Window::Below(rng.gen_range(2..=m)) };
        if set.repr_table(window).unwrap() != set.repr_table_naive(window).unwrap() {
            failures.push(format!("cyclic case {case}: M={m} {window:?}"));
        }
    }
    let primes = odd_primes(61);
    for case in 0..per_ambient {
        let p = primes[rng.gen_range(0..primes.len())] as usize;
        let density = cap_size(&mut rng, p * p) / (p * p) as f64;
        let pts: Vec<(usize, usize)> =
            (0..p).flat_map(|x| (0..p).map(move |y| (x, y))).filter(|_| rng.gen_bool(density)).collect();
        let set = GridSet::new(prime(p as u64), pts).unwrap();
        if set.repr_table(Window::Full).unwrap() != set.repr_table_naive(Window::Full).unwrap() {
            failures.push(format!("grid case {case}: p={p}"));
        }
    }
    let mut o = Outcome::new(
        failures.is_empty(),
        format!(
            "{} seeded sets ({per_ambient} per ambient, size <= 4096): bit-parallel tables equal pair counting",
            3 * per_ambient
        ),
    );
    o.details = failures;
    o
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    let cases = 600;
    let mut failures = Vec::new();
    for case in 0..cases {
        let n = rng.gen_range(2..=2048usize);
        let set = CyclicSet::new(n, random_cyclic(&mut rng, n, true)).unwrap();
        let a = set.len() as u64;
        let counts = cyclic_counts(set.elements(), n);
        let max = counts.iter().skip(1).copied().max().unwrap_or(0) as u64;
        let alpha = ratio(a, n as u64);
        let bound = lb_cyclic_counting(n as u64, &alpha).unwrap();
        let direct = ratio(a * a, n as u64) - int(1);
        if bound != direct || int(max) < direct {
            failures.push(format!("case {case}: N={n} |A|={a} max={max} bound={direct}"));
        }
    }
    let mut o = Outcome::new(
        failures.is_empty(),
        format!("{cases} seeded cyclic sets, N <= 2048: max nonzero count >= alpha^2 N - 1"),
    );
    o.details = failures;
    o
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("progression optimality", criterion_1),
        ("oracle sandwich", criterion_2),
        ("block certificate", criterion_3),
        ("parabola pair counts", criterion_4),
        ("window-sum bound", criterion_5),
        ("parabola union certificate", criterion_6),
        ("projection cap", criterion_7),
        ("cyclic construction trend", criterion_8),
        ("Plancherel floor", criterion_9),
        ("engine equivalence", criterion_10),
        ("cyclic counting bound", criterion_11),
    ];
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{verdict} [{:>2}] {name}: {} ({:.1}s)", i + 1, outcome.summary, start.elapsed().as_secs_f64());
        for line in outcome.details.iter().take(MAX_DETAILS) {
            println!("         {line}");
        }
        if outcome.details.len() > MAX_DETAILS {
            println!("         ... {} more", outcome.details.len() - MAX_DETAILS);
        }
        passed += usize::from(outcome.passed);
    }
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}
