use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::corpus::{random_ideal, CorpusParams};
use crate::monomial::{Monomial, MonomialIdeal, RingContext};
use crate::table::BettiTable;

fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(Arc::new(RingContext::numbered(n).unwrap()), rows).unwrap()
}

fn cubic_ideal() -> MonomialIdeal {
    ideal(3, &[&[1, 2, 0], &[1, 0, 2], &[0, 3, 0], &[3, 0, 0]])
}

fn cubic_table() -> BettiTable {
    BettiTable::from_entries([(0, 3, 4), (1, 4, 1), (1, 5, 3), (2, 7, 1)])
}

#[test]
fn lattice_examples() {
    let xyz = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
    let lattice = lcm_closure(&xyz);
    assert_eq!(lattice.len(), 4);
    assert!(lattice.contains(&[1, 1, 1]));

    let single = ideal(2, &[&[2, 1]]);
    assert_eq!(lcm_closure(&single).iter().collect::<Vec<_>>(), vec![&vec![2, 1]]);

    let ex = cubic_ideal();
    assert_eq!(lcm_closure(&ex), lcm_closure_brute_force(&ex));
}

#[test]
fn koszul_cubic_ideal() {
    let t = betti_koszul(&cubic_ideal());
    assert_eq!(t, cubic_table());
    assert_eq!(betti_taylor(&cubic_ideal()).unwrap(), cubic_table());
}

#[test]
fn principal_ideal_is_free() {
    for a in 1..5 {
        let t = betti_koszul(&ideal(3, &[&[a, 0, 1]]));
        assert_eq!(t, BettiTable::from_entries([(0, a as u64 + 1, 1)]));
    }
    let t = betti_koszul(&ideal(1, &[&[4]]));
    assert_eq!(t, BettiTable::from_entries([(0, 4, 1)]));
}

#[test]
fn regular_sequence_squares() {
    let xy = ideal(2, &[&[2, 0], &[0, 2]]);
    let want = BettiTable::from_entries([(0, 2, 2), (1, 4, 1)]);
    assert_eq!(betti_taylor(&xy).unwrap(), want);
    assert_eq!(betti_koszul(&xy), want);

    let ci = ideal(4, &[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]]);
    let squared = ci.power(2).unwrap();
    let t = betti_koszul(&squared);
    let totals: Vec<u64> = (0..4).map(|i| t.total_betti(i)).collect();
    assert_eq!(totals, vec![10, 20, 15, 4]);
    let rows: Vec<i64> = t.entries().map(|(i, j, _)| j as i64 - i as i64).collect();
    assert_eq!(rows, vec![4, 5, 6, 7]);
}

#[test]
fn taylor_capacity() {
    let gens: Vec<Vec<u32>> = (0..5).map(|k| vec![k, 5 - k]).collect();
    let rows: Vec<&[u32]> = gens.iter().map(Vec::as_slice).collect();
    let i = ideal(2, &rows);
    assert!(matches!(
        betti_taylor_with_cap(&i, 4),
        Err(crate::Error::Capacity { limit: 4, actual: 5, .. })
    ));
    assert!(betti_taylor_with_cap(&i, 5).is_ok());
}

#[test]
fn hilbert_examples() {
    let ex = cubic_ideal();
    assert!(hilbert_consistency(&ex, &cubic_table(), 10));
    let mut perturbed = cubic_table();
    perturbed.add(1, 5, 1);
    assert!(!hilbert_consistency(&ex, &perturbed, 10));

    // Direct count of degree-j monomials of (x1^3 x2): C(j - 4 + 2, 2).
    let principal = ideal(3, &[&[3, 1, 0]]);
    let counts = ideal_monomial_counts(&principal, 9);
    for (j, &c) in counts.iter().enumerate() {
        let want = if j < 4 { 0 } else { ((j - 4 + 2) * (j - 4 + 1) / 2) as u128 };
        assert_eq!(c, want, "degree {j}");
    }
}

#[test]
fn hilbert_direct_count_cubic() {
    // Independent naive count over all monomials of degree <= 10 in 3 variables.
    let ex = cubic_ideal();
    let mut naive = vec![0u128; 11];
    for a in 0..=10u32 {
        for b in 0..=10 - a {
            for c in 0..=10 - a - b {
                if ex.contains(&Monomial::new(vec![a, b, c])) {
                    naive[(a + b + c) as usize] += 1;
                }
            }
        }
    }
    assert_eq!(count_by_enumeration(&ex, 10).unwrap(), naive);
    assert_eq!(count_by_inclusion_exclusion(&ex, 10).unwrap(), naive);
    let predicted = table_hilbert_counts(&cubic_table(), 3, 10);
    assert_eq!(predicted, naive.iter().map(|&c| c as i128).collect::<Vec<_>>());
}

#[test]
fn staircase_membership_matches_divisibility() {
    let ex = ideal(4, &[&[1, 1, 1, 1], &[0, 4, 0, 0], &[1, 0, 0, 3]])
        .power(2)
        .unwrap();
    let st = Staircase::new(&ex);
    for a in 0..4u32 {
        for b in 0..9 {
            for c in 0..4 {
                for d in 0..8 {
                    let m = Monomial::new(vec![a, b, c, d]);
                    assert_eq!(st.contains(m.exponents()), ex.contains(&m));
                }
            }
        }
    }
}

fn arb_ideal() -> impl Strategy<Value = MonomialIdeal> {
    any::<u64>().prop_map(|seed| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        random_ideal(&mut rng, CorpusParams::default())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn backends_agree(i in arb_ideal()) {
        let koszul = multigraded_betti_koszul(&i);
        let taylor = multigraded_betti_taylor(&i, DEFAULT_TAYLOR_CAP).unwrap();
        prop_assert_eq!(&koszul, &taylor);

        let table = koszul.graded();
        let n = i.num_vars();
        let lattice = lcm_closure(&i);
        for (hom, b, _) in koszul.entries() {
            prop_assert!(hom < n);
            prop_assert!(lattice.contains(b));
        }
        for g in i.generators() {
            let j = g.degree();
            let count = i.generators().iter().filter(|h| h.degree() == j).count() as u64;
            prop_assert_eq!(table.get(0, j), count);
        }
        let j_max = table.max_shift().unwrap() + n as u64;
        prop_assert!(hilbert_consistency(&i, &table, j_max));
    }

    #[test]
    fn lattice_closure_matches_subset_enumeration(i in arb_ideal()) {
        prop_assert_eq!(lcm_closure(&i), lcm_closure_brute_force(&i));
    }

    #[test]
    fn hilbert_count_paths_agree(i in arb_ideal(), extra in 0u64..6) {
        let j_max = i.generators().iter().map(|g| g.degree()).max().unwrap() + extra;
        prop_assert_eq!(
            count_by_enumeration(&i, j_max).unwrap(),
            count_by_inclusion_exclusion(&i, j_max).unwrap()
        );
    }
}
