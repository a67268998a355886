//! Graded Betti numbers of monomial ideals.
//!
//! Two independent backends compute the same numbers:
//!
//! - [`betti_koszul`]: for each candidate multidegree `b`, the reduced homology
//!   of the upper Koszul complex `K_b = { tau : x^(b - tau) in I }` gives
//!   `beta_{i,b} = dim H~_{i-1}(K_b)`.
//! - [`betti_taylor`]: homology of the Taylor complex tensored down to the
//!   residue field. Exponential in the number of generators, so it only serves
//!   as an oracle.
//!
//! [`hilbert_consistency`] checks a table against the Hilbert function of the
//! ideal, which is a third witness independent of both.

mod hilbert;
mod koszul;
mod lattice;
mod taylor;

use std::collections::BTreeMap;

pub use hilbert::{
    count_by_enumeration, count_by_inclusion_exclusion, hilbert_consistency, ideal_monomial_counts,
    table_hilbert_counts,
};
pub use koszul::{betti_koszul, multigraded_betti_koszul, Staircase};
pub use lattice::{lcm_closure, lcm_closure_brute_force, LcmLattice};
pub use taylor::{betti_taylor, betti_taylor_with_cap, multigraded_betti_taylor, DEFAULT_TAYLOR_CAP};

use crate::table::BettiTable;

/// Multigraded Betti numbers `beta_{i,b}` keyed by homological degree and
/// multidegree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultigradedBetti {
    entries: BTreeMap<(usize, Vec<u32>), u64>,
}

impl MultigradedBetti {
    pub(crate) fn insert(&mut self, i: usize, b: Vec<u32>, mult: u64) {
        if mult > 0 {
            *self.entries.entry((i, b)).or_insert(0) += mult;
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &[u32], u64)> + '_ {
        self.entries.iter().map(|((i, b), &m)| (*i, b.as_slice(), m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Collapses multidegrees to total degree.
    pub fn graded(&self) -> BettiTable {
        let mut table = BettiTable::new();
        for (i, b, m) in self.entries() {
            table.add(i, b.iter().map(|&e| e as u64).sum(), m);
        }
        table
    }
}

#[cfg(test)]
mod tests;
