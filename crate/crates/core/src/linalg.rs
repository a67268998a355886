//! Dense integer matrices and exact rank over the rationals.

use num_bigint::BigInt;
use num_traits::Zero;

/// Row-major dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Self {
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
}

trait ExactEntry: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// `(a*d - b*c) / p`, exact by the Bareiss invariant. `None` on overflow.
    fn bareiss_step(a: &Self, d: &Self, b: &Self, c: &Self, p: &Self) -> Option<Self>;
}

impl ExactEntry for i128 {
    fn zero() -> Self {
        0
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn bareiss_step(a: &Self, d: &Self, b: &Self, c: &Self, p: &Self) -> Option<Self> {
        let num = a.checked_mul(*d)?.checked_sub(b.checked_mul(*c)?)?;
        debug_assert_eq!(num % p, 0);
        Some(num / p)
    }
}

impl ExactEntry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn bareiss_step(a: &Self, d: &Self, b: &Self, c: &Self, p: &Self) -> Option<Self> {
        Some((a * d - b * c) / p)
    }
}

/// Fraction-free elimination. Returns `None` if an intermediate overflowed.
fn bareiss_rank<T: ExactEntry>(mut a: Vec<Vec<T>>, one: T) -> Option<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = one;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below.iter_mut() {
            for c in col + 1..cols {
                row[c] = T::bareiss_step(&pivot_row[col], &row[c], &row[col], &pivot_row[c], &prev)?;
            }
            row[col] = T::zero();
        }
        prev = pivot_row[col].clone();
        rank += 1;
    }
    Some(rank)
}

/// Rank over the rationals, computed exactly.
///
/// Uses fraction-free elimination in `i128` and restarts with big integers if
/// an intermediate value overflows.
pub fn rank_exact(m: &IntegerMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let small: Vec<Vec<i128>> = (0..m.rows)
        .map(|r| (0..m.cols).map(|c| m.get(r, c) as i128).collect())
        .collect();
    if let Some(rank) = bareiss_rank(small, 1i128) {
        return rank;
    }
    let big: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| (0..m.cols).map(|c| BigInt::from(m.get(r, c))).collect())
        .collect();
    bareiss_rank(big, BigInt::from(1)).expect("big integer elimination cannot overflow")
}

/// Rank over `Z/p` for a prime `p < 2^31`. Only used to cross-check [`rank_exact`].
pub fn rank_mod_p(m: &IntegerMatrix, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| {
            (0..m.cols)
                .map(|c| m.get(r, c).rem_euclid(p as i64) as u64)
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(pivot) = (rank..m.rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = mod_pow(a[rank][col], p - 2, p);
        for r in rank + 1..m.rows {
            let factor = a[r][col] * inv % p;
            if factor == 0 {
                continue;
            }
            let (top, rest) = a.split_at_mut(r);
            for (x, &y) in rest[0][col..].iter_mut().zip(&top[rank][col..]) {
                *x = (*x + p - factor * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const PRIMES: [u64; 3] = [2_147_483_629, 1_000_000_007, 998_244_353];

    #[test]
    fn small_ranks() {
        assert_eq!(rank_exact(&IntegerMatrix::from_rows(&[vec![1, 0], vec![0, 1]])), 2);
        assert_eq!(rank_exact(&IntegerMatrix::from_rows(&[vec![1, 1], vec![1, 1]])), 1);
        assert_eq!(rank_exact(&IntegerMatrix::zeros(0, 0)), 0);
        assert_eq!(rank_exact(&IntegerMatrix::zeros(3, 4)), 0);
        // Boundary of the hollow triangle: edges 01, 02, 12 over vertices 0, 1, 2.
        let tri = IntegerMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        assert_eq!(rank_exact(&tri), 2);
    }

    #[test]
    fn characteristic_two_differs() {
        // det = 2: full rank over Q, rank 1 mod 2.
        let m = IntegerMatrix::from_rows(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(rank_exact(&m), 2);
        assert_eq!(rank_mod_p(&m, 2), 1);
    }

    #[test]
    fn big_integer_fallback() {
        // Large entries force the i128 path to overflow.
        let big = 1i64 << 61;
        let m = IntegerMatrix::from_rows(&[
            vec![big, big - 1, 3],
            vec![big - 3, big, 5],
            vec![2 * (big - 3), 2 * big, 10],
        ]);
        assert_eq!(rank_exact(&m), 2);
    }

    fn matrix_strategy() -> impl Strategy<Value = IntegerMatrix> {
        (1usize..=12, 1usize..=12).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-1i64..=1, r * c)
                .prop_map(move |v| IntegerMatrix::from_rows(&v.chunks(c).map(<[i64]>::to_vec).collect::<Vec<_>>()))
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant_and_matches_modular(m in matrix_strategy()) {
            let r = rank_exact(&m);
            prop_assert_eq!(r, rank_exact(&m.transpose()));
            for p in PRIMES {
                prop_assert_eq!(r, rank_mod_p(&m, p));
            }
        }
    }
}
