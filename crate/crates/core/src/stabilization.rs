//! Stabilization sequences of `I^d` and sweeps over linearly parametrized
//! families of ideals.
//!
//! A power `d >= 2` belongs to the stabilization sequence when the Betti table
//! of `I^d` does not share the shape of the table of `I^(d-1)`; `1` is always
//! a member. No finite computation certifies that the shape has stabilized, so
//! the index reported here is an estimate gated by a lookahead window: the
//! last change must be followed by at least `lookahead` powers of unchanged
//! shape.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use rayon::prelude::*;

use crate::betti::betti_koszul;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, RingContext};
use crate::table::{shape_key, BettiTable, ShapeKey};

/// Default lookahead window for declaring an estimated stabilization index.
pub const DEFAULT_LOOKAHEAD: u32 = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabReport {
    pub ideal: MonomialIdeal,
    /// Row shift used for shape comparison: the least generator degree.
    pub shift_r: u64,
    /// Generator degree when the ideal is equigenerated. Shape comparison for
    /// other ideals uses the fixed shift above and is only a heuristic.
    pub equigenerated: Option<u64>,
    pub max_power: u32,
    /// Retained tables `(d, B(I^d))`, one per element of `stab_seq`, when
    /// requested.
    pub tables: Vec<(u32, BettiTable)>,
    pub stab_seq: Vec<u32>,
    /// An estimate only; see the module documentation.
    pub estimated_stab: Option<u32>,
    pub lookahead_used: u32,
    /// Number of powers after the last shape change: `max_power - max(stab_seq)`.
    pub stable_run_length: u32,
    /// Sequence members whose shape equals that of some power before `d - 1`.
    pub recurrences: Vec<u32>,
}

/// Shapes of `I^1, ..., I^max_power` and the powers where the shape changes.
pub fn stab_seq(
    ideal: &MonomialIdeal,
    max_power: u32,
    lookahead: u32,
    keep_tables: bool,
) -> Result<StabReport> {
    if max_power == 0 {
        return Err(Error::Argument("max_power must be at least 1".into()));
    }
    let r = ideal.min_gen_degree();
    let mut seq = Vec::new();
    let mut tables = Vec::new();
    let mut recurrences = Vec::new();
    let mut history: Vec<ShapeKey> = Vec::with_capacity(max_power as usize);

    let mut power = ideal.clone();
    for d in 1..=max_power {
        if d > 1 {
            power = power.product(ideal)?;
        }
        let table = betti_koszul(&power);
        let key = shape_key(&table, r, d);
        let changed = history.last() != Some(&key);
        if changed {
            seq.push(d);
            if history.len() >= 2 && history[..history.len() - 1].contains(&key) {
                recurrences.push(d);
            }
            if keep_tables {
                tables.push((d, table));
            }
        }
        history.push(key);
    }

    let last_change = *seq.last().expect("power 1 is always recorded");
    let stable_run_length = max_power - last_change;
    Ok(StabReport {
        ideal: ideal.clone(),
        shift_r: r,
        equigenerated: ideal.is_equigenerated(),
        max_power,
        tables,
        stab_seq: seq,
        estimated_stab: (stable_run_length >= lookahead).then_some(last_change),
        lookahead_used: lookahead,
        stable_run_length,
        recurrences,
    })
}

/// Formats a sequence as `{1, 2, 6}`.
pub fn format_seq(seq: &[u32]) -> String {
    let items: Vec<String> = seq.iter().map(u32::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

/// An exponent `slope * n + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearExponent {
    pub slope: i64,
    pub offset: i64,
}

impl LinearExponent {
    pub const fn constant(offset: i64) -> Self {
        Self { slope: 0, offset }
    }

    pub fn eval(&self, n: i64) -> i64 {
        self.slope * n + self.offset
    }
}

impl fmt::Display for LinearExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_linear(self.slope, self.offset, "n"))
    }
}

/// `12n - 13`, `n`, `-n + 3`, `7`.
pub fn format_linear(slope: i64, intercept: i64, var: &str) -> String {
    let head = match slope {
        0 => return intercept.to_string(),
        1 => var.to_string(),
        -1 => format!("-{var}"),
        s => format!("{s}{var}"),
    };
    match intercept {
        0 => head,
        c if c > 0 => format!("{head} + {c}"),
        c => format!("{head} - {}", -c),
    }
}

/// Monomial ideals `I_n` whose generator exponents are linear in `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearExponentFamily {
    ring: Arc<RingContext>,
    generators: Vec<Vec<LinearExponent>>,
    n_min: i64,
}

impl LinearExponentFamily {
    pub fn new(ring: Arc<RingContext>, generators: Vec<Vec<LinearExponent>>) -> Result<Self> {
        Self::with_min(ring, generators, 1)
    }

    pub fn with_min(
        ring: Arc<RingContext>,
        generators: Vec<Vec<LinearExponent>>,
        n_min: i64,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidIdeal("a family needs at least one generator".into()));
        }
        for g in &generators {
            if g.len() != ring.num_vars() {
                return Err(Error::Context {
                    expected: ring.num_vars(),
                    found: g.len(),
                });
            }
            if g.iter().any(|e| e.slope < 0) {
                return Err(Error::Argument("exponent slopes must be nonnegative".into()));
            }
        }
        Ok(Self {
            ring,
            generators,
            n_min,
        })
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn generators(&self) -> &[Vec<LinearExponent>] {
        &self.generators
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    /// Generator strings such as `a^(6n - 1)*b`.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| {
                let parts: Vec<String> = self
                    .ring
                    .names()
                    .iter()
                    .zip(g)
                    .filter(|(_, e)| **e != LinearExponent::constant(0))
                    .map(|(name, e)| match (e.slope, e.offset) {
                        (0, 1) => name.clone(),
                        (0, c) => format!("{name}^{c}"),
                        _ => format!("{name}^({e})"),
                    })
                    .collect();
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join("*")
                }
            })
            .collect()
    }

    /// Evaluates every exponent at `n` and returns the minimalized ideal.
    pub fn instantiate(&self, n: i64) -> Result<MonomialIdeal> {
        if n < self.n_min {
            return Err(Error::Argument(format!(
                "n = {n} is below the family's minimum {}",
                self.n_min
            )));
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for (gi, g) in self.generators.iter().enumerate() {
            let mut exps = Vec::with_capacity(g.len());
            for (k, e) in g.iter().enumerate() {
                let value = e.eval(n);
                if value < 0 {
                    return Err(Error::Domain {
                        generator: gi + 1,
                        variable: self.ring.names()[k].clone(),
                        value,
                        n,
                    });
                }
                let value = u32::try_from(value)
                    .map_err(|_| Error::Argument(format!("exponent {value} exceeds 2^32")))?;
                exps.push(value);
            }
            gens.push(Monomial::new(exps));
        }
        MonomialIdeal::new(self.ring.clone(), gens)
    }
}

/// Free-function form of [`LinearExponentFamily::instantiate`].
pub fn instantiate(family: &LinearExponentFamily, n: i64) -> Result<MonomialIdeal> {
    family.instantiate(n)
}

/// `y = slope * n + intercept`, holding exactly at every listed `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactLinearFit {
    pub slope: i64,
    pub intercept: i64,
    pub points: Vec<i64>,
}

impl ExactLinearFit {
    /// `n=2..4` for contiguous points, else `n=2,4,7`.
    pub fn range_label(&self) -> String {
        let contiguous = self.points.windows(2).all(|w| w[1] == w[0] + 1);
        match (self.points.first(), self.points.last()) {
            (Some(a), Some(b)) if contiguous => format!("n={a}..{b}"),
            _ => {
                let items: Vec<String> = self.points.iter().map(i64::to_string).collect();
                format!("n={}", items.join(","))
            }
        }
    }
}

/// Exact integer line through the data, or `None` if fewer than two points,
/// the slope is fractional, or any point is off the line.
pub fn exact_linear_fit(points: &[(i64, i64)]) -> Option<ExactLinearFit> {
    let (&(x0, y0), &(x1, y1)) = (points.first()?, points.get(1)?);
    if x1 == x0 || (y1 - y0) % (x1 - x0) != 0 {
        return None;
    }
    let slope = (y1 - y0) / (x1 - x0);
    let intercept = y0 - slope * x0;
    points
        .iter()
        .all(|&(x, y)| slope * x + intercept == y)
        .then(|| ExactLinearFit {
            slope,
            intercept,
            points: points.iter().map(|p| p.0).collect(),
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySweepResult {
    pub reports: BTreeMap<i64, StabReport>,
    /// Fit of the estimated index against `n`.
    pub stab_fit: Option<ExactLinearFit>,
    /// Fit of `|stab_seq|` against `n`, over the same members as `stab_fit`'s
    /// candidate range.
    pub cardinality_fit: Option<ExactLinearFit>,
}

/// Runs [`stab_seq`] for every `n` in range and fits both the estimated index
/// and the sequence length over the members with an estimate.
pub fn family_sweep(
    family: &LinearExponentFamily,
    n_range: RangeInclusive<i64>,
    max_power: u32,
    lookahead: u32,
) -> Result<FamilySweepResult> {
    if n_range.is_empty() {
        return Err(Error::Argument("empty n range".into()));
    }
    let ideals = n_range
        .clone()
        .map(|n| Ok((n, family.instantiate(n)?)))
        .collect::<Result<Vec<_>>>()?;
    let reports = ideals
        .into_par_iter()
        .map(|(n, ideal)| Ok((n, stab_seq(&ideal, max_power, lookahead, false)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;

    let estimated: Vec<(i64, &StabReport)> = reports
        .iter()
        .filter(|(_, r)| r.estimated_stab.is_some())
        .map(|(&n, r)| (n, r))
        .collect();
    let stab_points: Vec<(i64, i64)> = estimated
        .iter()
        .map(|(n, r)| (*n, r.estimated_stab.expect("filtered") as i64))
        .collect();
    let card_points: Vec<(i64, i64)> = estimated
        .iter()
        .map(|(n, r)| (*n, r.stab_seq.len() as i64))
        .collect();
    Ok(FamilySweepResult {
        stab_fit: exact_linear_fit(&stab_points),
        cardinality_fit: exact_linear_fit(&card_points),
        reports,
    })
}

/// True iff `observed` equals `{1, 2, 3, 5, 6} ∪ {11 + 6m : 0 <= m <= 2n - 4}`,
/// so the largest element is `12n - 13` and the size is `2n + 2`. This is the
/// stabilization sequence pattern of the family
/// `(a^2n b^2n c^2n, b^4n c^2n, a^3n c^3n, a^(6n-1) b)` for `n >= 3`.
/// Always false for `n < 3`, where the pattern does not apply.
pub fn stab_seq_closed_form_check(n: u32, observed: &[u32]) -> bool {
    if n < 3 {
        return false;
    }
    let mut expected: Vec<u32> = vec![1, 2, 3, 5, 6];
    expected.extend((0..=2 * n - 4).map(|m| 11 + 6 * m));
    let mut got = observed.to_vec();
    got.sort_unstable();
    got.dedup();
    got == expected
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[&str]) -> Arc<RingContext> {
        Arc::new(RingContext::new(names).unwrap())
    }

    fn lin(slope: i64, offset: i64) -> LinearExponent {
        LinearExponent { slope, offset }
    }

    fn family_in() -> LinearExponentFamily {
        LinearExponentFamily::new(
            ring(&["a", "b", "c"]),
            vec![
                vec![lin(2, 0), lin(2, 0), lin(2, 0)],
                vec![lin(0, 0), lin(4, 0), lin(2, 0)],
                vec![lin(3, 0), lin(0, 0), lin(3, 0)],
                vec![lin(6, -1), lin(0, 1), lin(0, 0)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn instantiates_family() {
        let f = family_in();
        let i1 = f.instantiate(1).unwrap();
        assert_eq!(
            i1.generator_strings(),
            vec!["b^4*c^2", "a^2*b^2*c^2", "a^3*c^3", "a^5*b"]
        );
        let i2 = f.instantiate(2).unwrap();
        let mut got = i2.generator_strings();
        got.sort();
        let mut want = vec!["a^4*b^4*c^4", "b^8*c^4", "a^6*c^6", "a^11*b"];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(
            f.generator_strings(),
            vec!["a^(2n)*b^(2n)*c^(2n)", "b^(4n)*c^(2n)", "a^(3n)*c^(3n)", "a^(6n - 1)*b"]
        );
    }

    #[test]
    fn constant_family_is_fixed() {
        let f = LinearExponentFamily::new(
            ring(&["x", "y"]),
            vec![vec![lin(0, 2), lin(0, 0)], vec![lin(0, 1), lin(0, 1)]],
        )
        .unwrap();
        assert_eq!(f.instantiate(1).unwrap(), f.instantiate(9).unwrap());
    }

    #[test]
    fn negative_exponent_is_a_domain_error() {
        let f = LinearExponentFamily::with_min(
            ring(&["x", "y"]),
            vec![vec![lin(1, -3), lin(0, 1)]],
            0,
        )
        .unwrap();
        match f.instantiate(1) {
            Err(Error::Domain {
                generator,
                variable,
                value,
                ..
            }) => {
                assert_eq!((generator, variable.as_str(), value), (1, "x", -2));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(family_in().instantiate(0), Err(Error::Argument(_))));
    }

    #[test]
    fn linear_fits() {
        let fit = exact_linear_fit(&[(2, 11), (3, 23), (4, 35)]).unwrap();
        assert_eq!((fit.slope, fit.intercept), (12, -13));
        assert_eq!(fit.range_label(), "n=2..4");
        assert!(exact_linear_fit(&[(2, 11)]).is_none());
        assert!(exact_linear_fit(&[(1, 1), (2, 2), (3, 4)]).is_none());
        assert!(exact_linear_fit(&[(1, 1), (3, 2)]).is_none());
        assert_eq!(format_linear(12, -13, "n"), "12n - 13");
        assert_eq!(format_linear(2, 2, "n"), "2n + 2");
        assert_eq!(format_linear(1, 0, "n"), "n");
        assert_eq!(format_linear(0, 5, "n"), "5");
    }

    #[test]
    fn closed_form() {
        assert!(stab_seq_closed_form_check(3, &[1, 2, 3, 5, 6, 11, 17, 23]));
        assert!(stab_seq_closed_form_check(4, &[1, 2, 3, 5, 6, 11, 17, 23, 29, 35]));
        assert!(!stab_seq_closed_form_check(3, &[1, 2, 3, 5, 6, 11, 17]));
        assert!(!stab_seq_closed_form_check(2, &[1, 2, 3, 5, 6, 11]));
    }

    #[test]
    fn complete_intersection_is_stable_from_the_start() {
        let ci = MonomialIdeal::from_exponents(
            Arc::new(RingContext::numbered(4).unwrap()),
            &[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]],
        )
        .unwrap();
        let report = stab_seq(&ci, 6, 5, true).unwrap();
        assert_eq!(report.stab_seq, vec![1]);
        assert_eq!(report.estimated_stab, Some(1));
        assert_eq!(report.stable_run_length, 5);
        assert_eq!(report.tables.len(), 1);

        let short = stab_seq(&ci, 6, 7, false).unwrap();
        assert_eq!(short.estimated_stab, None);
        assert!(short.tables.is_empty());
        assert!(stab_seq(&ci, 0, 7, false).is_err());
    }

    #[test]
    fn single_member_sweep_has_no_fit() {
        let f = family_in();
        let sweep = family_sweep(&f, 1..=1, 3, 0).unwrap();
        assert_eq!(sweep.reports.len(), 1);
        assert!(sweep.stab_fit.is_none());
        assert!(sweep.cardinality_fit.is_none());
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 3..=2;
        assert!(family_sweep(&f, empty, 3, 0).is_err());
    }
}
