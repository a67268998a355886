use std::collections::{BTreeSet, HashSet};

use crate::monomial::MonomialIdeal;

/// Join-closure of the generator multidegrees under coordinatewise max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcmLattice {
    elements: BTreeSet<Vec<u32>>,
}

impl LcmLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, b: &[u32]) -> bool {
        self.elements.contains(b)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.elements.iter()
    }
}

fn join(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

/// Worklist fixpoint: every new element is joined with every generator until
/// nothing new appears. Joining with generators suffices since any subset lcm
/// is a chain of such joins.
pub fn lcm_closure(ideal: &MonomialIdeal) -> LcmLattice {
    let gens: Vec<&[u32]> = ideal.generators().iter().map(|g| g.exponents()).collect();
    let mut seen: HashSet<Vec<u32>> = gens.iter().map(|g| g.to_vec()).collect();
    let mut frontier: Vec<Vec<u32>> = seen.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = join(&x, g);
            if !seen.contains(&y) {
                seen.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    LcmLattice {
        elements: seen.into_iter().collect(),
    }
}

/// Lcm of every nonempty generator subset. Exponential; for cross-checks only.
pub fn lcm_closure_brute_force(ideal: &MonomialIdeal) -> LcmLattice {
    let gens = ideal.generators();
    assert!(gens.len() <= 20, "brute-force lattice limited to 20 generators");
    let mut elements = BTreeSet::new();
    for mask in 1u32..(1 << gens.len()) {
        let mut acc = vec![0u32; ideal.num_vars()];
        for (k, g) in gens.iter().enumerate() {
            if mask >> k & 1 == 1 {
                acc = join(&acc, g.exponents());
            }
        }
        elements.insert(acc);
    }
    LcmLattice { elements }
}
