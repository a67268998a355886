use std::collections::HashMap;

use rayon::prelude::*;

use super::MultigradedBetti;
use crate::monomial::MonomialIdeal;
use crate::simplicial::{reduced_homology_dims, SimplicialComplex};
use crate::table::BettiTable;

const NONE: u32 = u32::MAX;

/// Ideal membership table for a monomial ideal.
///
/// One coordinate (`last`) is kept implicit: for every point of the grid formed
/// by the distinct generator exponents of the remaining coordinates, the table
/// stores the least exponent of `last` that puts the monomial in the ideal.
#[derive(Debug, Clone)]
pub struct Staircase {
    n: usize,
    last: usize,
    axes: Vec<usize>,
    values: Vec<Vec<u32>>,
    strides: Vec<usize>,
    min_last: Vec<u32>,
}

impl Staircase {
    pub fn new(ideal: &MonomialIdeal) -> Self {
        let n = ideal.num_vars();
        let gens = ideal.generators();
        let distinct: Vec<Vec<u32>> = (0..n)
            .map(|k| {
                let mut v: Vec<u32> = gens.iter().map(|g| g.exponents()[k]).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        // The widest coordinate goes implicit to keep the grid small.
        let last = (0..n)
            .max_by_key(|&k| (distinct[k].len(), std::cmp::Reverse(k)))
            .expect("ring has a variable");
        let axes: Vec<usize> = (0..n).filter(|&k| k != last).collect();
        let values: Vec<Vec<u32>> = axes.iter().map(|&k| distinct[k].clone()).collect();
        let mut strides = vec![1usize; axes.len()];
        for a in (0..axes.len().saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * values[a + 1].len();
        }
        let size = values.iter().map(Vec::len).product::<usize>();

        let mut min_last = vec![NONE; size];
        for g in gens {
            let e = g.exponents();
            let cell: usize = axes
                .iter()
                .enumerate()
                .map(|(a, &k)| strides[a] * values[a].binary_search(&e[k]).expect("value present"))
                .sum();
            min_last[cell] = min_last[cell].min(e[last]);
        }
        // Prefix minimum along each axis: cell (i_1..) sees every generator
        // whose grid coordinates are all <= its own.
        for (a, vals) in values.iter().enumerate() {
            let stride = strides[a];
            let span = stride * vals.len();
            for cell in 0..size {
                if cell % span >= stride {
                    let prev = min_last[cell - stride];
                    if prev < min_last[cell] {
                        min_last[cell] = prev;
                    }
                }
            }
        }
        Self {
            n,
            last,
            axes,
            values,
            strides,
            min_last,
        }
    }

    pub fn grid_size(&self) -> usize {
        self.min_last.len()
    }

    /// Membership of an arbitrary monomial.
    pub fn contains(&self, exps: &[u32]) -> bool {
        let mut cell = 0;
        for (a, &k) in self.axes.iter().enumerate() {
            let vals = &self.values[a];
            let idx = vals.partition_point(|&v| v <= exps[k]);
            if idx == 0 {
                return false;
            }
            cell += self.strides[a] * (idx - 1);
        }
        let need = self.min_last[cell];
        need != NONE && exps[self.last] >= need
    }

    fn grid_index(&self, mut cell: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&s| {
                let i = cell / s;
                cell %= s;
                i
            })
            .collect()
    }
}

type HomologyCache = HashMap<Vec<u64>, Vec<usize>>;

fn homology_of_mask(n: usize, mask: &[u64], cache: &mut HomologyCache) -> Vec<usize> {
    if let Some(h) = cache.get(mask) {
        return h.clone();
    }
    let complex = SimplicialComplex::from_face_mask(n, mask);
    let h = reduced_homology_dims(&complex, n as isize - 1);
    cache.insert(mask.to_vec(), h.clone());
    h
}

/// Multigraded Betti numbers via upper Koszul complexes.
///
/// Candidate multidegrees are restricted without loss: if `b_k` is not a
/// generator exponent in coordinate `k` then `K_b` is a cone with apex `k`, and
/// likewise for the implicit coordinate unless `b_last` equals one of the
/// thresholds `min_last(b' - tau')`. Cones are acyclic.
pub fn multigraded_betti_koszul(ideal: &MonomialIdeal) -> MultigradedBetti {
    let st = Staircase::new(ideal);
    let n = st.n;
    let axis_count = st.axes.len();
    let subsets = 1usize << axis_count;
    let words = (1usize << n).div_ceil(64);

    // Original-coordinate bitmask of each axis subset.
    let orig_bits: Vec<usize> = (0..subsets)
        .map(|t| {
            (0..axis_count)
                .filter(|a| t >> a & 1 == 1)
                .map(|a| 1usize << st.axes[a])
                .sum()
        })
        .collect();
    let last_bit = 1usize << st.last;

    let found: Vec<(usize, Vec<u32>, u64)> = (0..st.grid_size())
        .into_par_iter()
        .with_min_len(256)
        .fold(
            || (HomologyCache::new(), Vec::new()),
            |(mut cache, mut out), cell| {
                let idx = st.grid_index(cell);
                let thresholds: Vec<u32> = (0..subsets)
                    .map(|t| {
                        let mut c = cell;
                        for (a, &pos) in idx.iter().enumerate().take(axis_count) {
                            if t >> a & 1 == 1 {
                                if pos == 0 {
                                    return NONE;
                                }
                                c -= st.strides[a];
                            }
                        }
                        st.min_last[c]
                    })
                    .collect();
                let base = thresholds[0];
                if base == NONE {
                    return (cache, out);
                }
                let mut zs: Vec<u32> = thresholds.iter().copied().filter(|&z| z != NONE && z >= base).collect();
                zs.sort_unstable();
                zs.dedup();
                for z in zs {
                    let mut mask = vec![0u64; words];
                    for (t, &need) in thresholds.iter().enumerate() {
                        if need == NONE {
                            continue;
                        }
                        if z >= need {
                            let tau = orig_bits[t];
                            mask[tau / 64] |= 1 << (tau % 64);
                        }
                        if z > need {
                            let tau = orig_bits[t] | last_bit;
                            mask[tau / 64] |= 1 << (tau % 64);
                        }
                    }
                    let h = homology_of_mask(n, &mask, &mut cache);
                    if h.iter().all(|&d| d == 0) {
                        continue;
                    }
                    let mut b = vec![0u32; n];
                    for (a, &k) in st.axes.iter().enumerate() {
                        b[k] = st.values[a][idx[a]];
                    }
                    b[st.last] = z;
                    for (i, &d) in h.iter().enumerate() {
                        if d > 0 {
                            out.push((i, b.clone(), d as u64));
                        }
                    }
                }
                (cache, out)
            },
        )
        .map(|(_, out)| out)
        .reduce(Vec::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });

    let mut result = MultigradedBetti::default();
    for (i, b, m) in found {
        result.insert(i, b, m);
    }
    result
}

/// Graded Betti table of `ideal`, summed from the multigraded numbers.
pub fn betti_koszul(ideal: &MonomialIdeal) -> BettiTable {
    multigraded_betti_koszul(ideal).graded()
}
