//! Reference pair-counting, `O(|A|^2)`.

use super::Domain;
use crate::sets::{CyclicSet, GridSet, IntegerSet};

pub(crate) fn interval_counts(set: &IntegerSet, domain: Domain) -> Vec<usize> {
    let Domain::Interval { ambient, below } = domain else { unreachable!() };
    let len = below.min(ambient);
    let mut counts = vec![0; len];
    if len == 0 {
        return counts;
    }
    counts[0] = set.len();
    let e = set.elements();
    for i in 0..e.len() {
        for j in (0..i).rev() {
            let d = e[i] - e[j];
            if d >= len {
                break;
            }
            counts[d] += 1;
        }
    }
    counts
}

pub(crate) fn cyclic_counts(set: &CyclicSet, domain: Domain) -> Vec<usize> {
    let Domain::Cyclic { modulus, below } = domain else { unreachable!() };
    let mut counts = vec![0; below];
    for &a in set.elements() {
        for &b in set.elements() {
            let d = (a + modulus - b) % modulus;
            if d < below {
                counts[d] += 1;
            }
        }
    }
    counts
}

pub(crate) fn grid_counts(set: &GridSet) -> Vec<usize> {
    let p = set.side();
    let mut counts = vec![0; p * p];
    for &(x1, y1) in set.elements() {
        for &(x2, y2) in set.elements() {
            counts[((x1 + p - x2) % p) * p + (y1 + p - y2) % p] += 1;
        }
    }
    counts
}
