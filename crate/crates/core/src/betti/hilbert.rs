//! Hilbert-function witness for Betti tables.
//!
//! The number of degree-`j` monomials in `I` equals
//! `sum_{i,l} (-1)^i beta_{i,l} C(j - l + n - 1, n - 1)`.

use crate::monomial::MonomialIdeal;
use crate::table::BettiTable;

/// Largest dense grid the enumeration path will allocate.
const ENUMERATION_GRID_LIMIT: usize = 1 << 25;
const INCLUSION_EXCLUSION_LIMIT: usize = 20;

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    acc
}

/// Number of monomials of degree `j` in `n` variables divisible by a monomial
/// of degree `l`.
fn shifted_count(j: u64, l: u64, n: usize) -> u128 {
    if j < l {
        return 0;
    }
    binomial(j - l + n as u64 - 1, n as u64 - 1)
}

/// Counts degree-`j` monomials of `I` for `j = 0..=j_max` by deciding every
/// monomial: over a dense grid of the first `n - 1` exponents, the least
/// admissible last exponent is a prefix minimum of generator exponents.
///
/// Returns `None` if the grid would exceed the allocation limit.
pub fn count_by_enumeration(ideal: &MonomialIdeal, j_max: u64) -> Option<Vec<u128>> {
    let n = ideal.num_vars();
    let side = j_max as usize + 1;
    let size = side.checked_pow(n as u32 - 1)?;
    if size > ENUMERATION_GRID_LIMIT {
        return None;
    }
    let mut least = vec![u64::MAX; size];
    for g in ideal.generators() {
        let e = g.exponents();
        if e[..n - 1].iter().any(|&x| x as u64 > j_max) {
            continue;
        }
        let cell = e[..n - 1].iter().fold(0usize, |acc, &x| acc * side + x as usize);
        least[cell] = least[cell].min(e[n - 1] as u64);
    }
    let mut stride = 1;
    for _ in 0..n - 1 {
        for cell in 0..size {
            if (cell / stride) % side > 0 && least[cell - stride] < least[cell] {
                least[cell] = least[cell - stride];
            }
        }
        stride *= side;
    }
    let mut first_degree = vec![0u128; side];
    for (cell, &need) in least.iter().enumerate() {
        if need == u64::MAX {
            continue;
        }
        let mut rest = cell;
        let mut sum = 0u64;
        for _ in 0..n - 1 {
            sum += (rest % side) as u64;
            rest /= side;
        }
        let j0 = sum + need;
        if j0 <= j_max {
            first_degree[j0 as usize] += 1;
        }
    }
    let mut counts = Vec::with_capacity(side);
    let mut running = 0u128;
    for c in first_degree {
        running += c;
        counts.push(running);
    }
    Some(counts)
}

/// Counts degree-`j` monomials of `I` by inclusion-exclusion over generator
/// subsets. Returns `None` beyond 20 generators.
pub fn count_by_inclusion_exclusion(ideal: &MonomialIdeal, j_max: u64) -> Option<Vec<u128>> {
    let gens = ideal.generators();
    if gens.len() > INCLUSION_EXCLUSION_LIMIT {
        return None;
    }
    let n = ideal.num_vars();
    let m = gens.len();
    let mut lcms: Vec<Vec<u32>> = vec![vec![0; n]; 1 << m];
    let mut signed = vec![0i128; j_max as usize + 1];
    for s in 1usize..(1 << m) {
        let low = s.trailing_zeros() as usize;
        lcms[s] = lcms[s & (s - 1)]
            .iter()
            .zip(gens[low].exponents())
            .map(|(&a, &b)| a.max(b))
            .collect();
        let deg: u64 = lcms[s].iter().map(|&e| e as u64).sum();
        let sign = if s.count_ones() % 2 == 1 { 1 } else { -1 };
        for j in deg..=j_max {
            signed[j as usize] += sign * shifted_count(j, deg, n) as i128;
        }
    }
    Some(signed.into_iter().map(|c| c as u128).collect())
}

/// Degree-wise monomial counts of `I` up to `j_max`, by enumeration when
/// `n <= 4` and by inclusion-exclusion otherwise. Whichever path is
/// unavailable falls back to the other; if neither applies, the enumeration
/// limit is lifted.
pub fn ideal_monomial_counts(ideal: &MonomialIdeal, j_max: u64) -> Vec<u128> {
    let counts = if ideal.num_vars() <= 4 {
        count_by_enumeration(ideal, j_max).or_else(|| count_by_inclusion_exclusion(ideal, j_max))
    } else {
        count_by_inclusion_exclusion(ideal, j_max).or_else(|| count_by_enumeration(ideal, j_max))
    };
    counts.unwrap_or_else(|| brute_force_counts(ideal, j_max))
}

fn brute_force_counts(ideal: &MonomialIdeal, j_max: u64) -> Vec<u128> {
    let n = ideal.num_vars();
    let mut counts = vec![0u128; j_max as usize + 1];
    let mut exps = vec![0u32; n];
    fn visit(k: usize, left: u64, exps: &mut Vec<u32>, ideal: &MonomialIdeal, j_max: u64, counts: &mut [u128]) {
        if k == exps.len() {
            let m = crate::monomial::Monomial::new(exps.clone());
            if ideal.contains(&m) {
                counts[(j_max - left) as usize] += 1;
            }
            return;
        }
        for e in 0..=left {
            exps[k] = e as u32;
            visit(k + 1, left - e, exps, ideal, j_max, counts);
        }
        exps[k] = 0;
    }
    visit(0, j_max, &mut exps, ideal, j_max, &mut counts);
    counts
}

/// Right-hand side of the Hilbert identity for every `j = 0..=j_max`.
pub fn table_hilbert_counts(table: &BettiTable, num_vars: usize, j_max: u64) -> Vec<i128> {
    (0..=j_max)
        .map(|j| {
            table
                .entries()
                .map(|(i, l, m)| {
                    let term = m as i128 * shifted_count(j, l, num_vars) as i128;
                    if i % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect()
}

/// True iff the Hilbert function predicted by `table` matches the ideal's
/// monomial counts in every degree up to `j_max`.
pub fn hilbert_consistency(ideal: &MonomialIdeal, table: &BettiTable, j_max: u64) -> bool {
    let counts = ideal_monomial_counts(ideal, j_max);
    let predicted = table_hilbert_counts(table, ideal.num_vars(), j_max);
    counts
        .iter()
        .zip(&predicted)
        .all(|(&c, &p)| p >= 0 && c == p as u128)
}
