use std::collections::HashMap;

use super::MultigradedBetti;
use crate::error::{Error, Result};
use crate::linalg::{rank_exact, IntegerMatrix};
use crate::monomial::MonomialIdeal;
use crate::table::BettiTable;

/// Largest generator count the Taylor oracle accepts by default.
pub const DEFAULT_TAYLOR_CAP: usize = 14;

/// Multigraded Betti numbers from the Taylor complex reduced modulo the
/// maximal ideal.
///
/// Basis elements are nonempty generator subsets `S` in homological position
/// `|S| - 1` with multidegree `lcm(S)`. After reduction only the differential
/// entries between `S` and `S \ {g}` with equal lcm survive, so the complex
/// splits into one block per multidegree.
pub fn multigraded_betti_taylor(ideal: &MonomialIdeal, cap: usize) -> Result<MultigradedBetti> {
    let gens = ideal.generators();
    let m = gens.len();
    if m > cap || m > 24 {
        return Err(Error::Capacity {
            what: "generator count for the Taylor oracle",
            limit: cap.min(24),
            actual: m,
        });
    }
    let n = ideal.num_vars();
    let full = 1usize << m;
    let mut lcms: Vec<Vec<u32>> = vec![vec![0; n]; full];
    for s in 1..full {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let g = gens[low].exponents();
        lcms[s] = lcms[rest].iter().zip(g).map(|(&a, &b)| a.max(b)).collect();
    }

    let mut blocks: HashMap<&[u32], Vec<usize>> = HashMap::new();
    for (s, b) in lcms.iter().enumerate().skip(1) {
        blocks.entry(b.as_slice()).or_default().push(s);
    }

    let mut result = MultigradedBetti::default();
    for (b, subsets) in blocks {
        // by_size[k] = subsets of size k, ascending bitmask order.
        let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); m + 2];
        for &s in &subsets {
            by_size[s.count_ones() as usize].push(s);
        }
        // rank_into[k] = rank of the block differential from size k to size k-1.
        let mut rank_into = vec![0usize; m + 2];
        for k in 2..=m {
            let (src, dst) = (&by_size[k], &by_size[k - 1]);
            if src.is_empty() || dst.is_empty() {
                continue;
            }
            let row_of: HashMap<usize, usize> = dst.iter().enumerate().map(|(r, &s)| (s, r)).collect();
            let mut mat = IntegerMatrix::zeros(dst.len(), src.len());
            for (c, &s) in src.iter().enumerate() {
                let mut pos = 0;
                for g in 0..m {
                    if s >> g & 1 == 0 {
                        continue;
                    }
                    if let Some(&r) = row_of.get(&(s & !(1 << g))) {
                        mat.set(r, c, if pos % 2 == 0 { 1 } else { -1 });
                    }
                    pos += 1;
                }
            }
            rank_into[k] = rank_exact(&mat);
        }
        for k in 1..=m {
            let dim = by_size[k].len();
            let beta = dim - rank_into[k] - rank_into[k + 1];
            result.insert(k - 1, b.to_vec(), beta as u64);
        }
    }
    Ok(result)
}

pub fn betti_taylor_with_cap(ideal: &MonomialIdeal, cap: usize) -> Result<BettiTable> {
    Ok(multigraded_betti_taylor(ideal, cap)?.graded())
}

/// Graded Betti table from the Taylor oracle with the default generator cap.
pub fn betti_taylor(ideal: &MonomialIdeal) -> Result<BettiTable> {
    betti_taylor_with_cap(ideal, DEFAULT_TAYLOR_CAP)
}
