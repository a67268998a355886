//! Monomials and monomial ideals over a fixed polynomial ring.
//!
//! The coefficient field is fixed to characteristic zero and has no runtime
//! representation. Everything here is exact integer arithmetic on exponent
//! vectors.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// The ambient polynomial ring `k[x_1, ..., x_n]`, identified by its ordered
/// variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    names: Vec<String>,
}

impl RingContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Argument("a ring needs at least one variable".into()));
        }
        let mut seen = HashSet::new();
        let mut owned = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref().trim();
            if !is_identifier(name) {
                return Err(Error::Argument(format!("invalid variable name {name:?}")));
            }
            if !seen.insert(name.to_string()) {
                return Err(Error::Argument(format!("duplicate variable name {name:?}")));
            }
            owned.push(name.to_string());
        }
        Ok(Self { names: owned })
    }

    /// Ring with variables `x1, ..., xn`.
    pub fn numbered(n: usize) -> Result<Self> {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        Self::new(&names)
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Renders a monomial as `x1*x2^2`, variables in ring order.
    pub fn format(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (name, &e) in self.names.iter().zip(m.exponents()) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A monomial `x^a`, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::new(vec![0; num_vars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    fn check_context(&self, other: &Monomial) -> Result<()> {
        if self.exponents.len() != other.exponents.len() {
            return Err(Error::Context {
                expected: self.exponents.len(),
                found: other.exponents.len(),
            });
        }
        Ok(())
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_context(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_context(other)?;
        Ok(Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        ))
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_context(other)?;
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| {
                a.checked_add(b)
                    .ok_or_else(|| Error::Argument("exponent overflow in product".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::new(exponents))
    }

    /// Canonical sort key: total degree, then exponent vector lexicographically.
    pub(crate) fn canonical_key(&self) -> (u64, &[u32]) {
        (self.degree(), &self.exponents)
    }
}

/// Returns true iff every exponent of `a` is at most the matching one of `b`.
pub fn divides(a: &Monomial, b: &Monomial) -> Result<bool> {
    a.divides(b)
}

/// Coordinatewise maximum of two exponent vectors.
pub fn lcm_pair(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    a.lcm(b)
}

/// The unique minimal generating set of the ideal spanned by `gens`, sorted
/// canonically.
pub fn minimalize(gens: &[Monomial]) -> Result<Vec<Monomial>> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Argument("cannot minimalize an empty generator list".into()))?;
    for g in gens {
        first.check_context(g)?;
    }
    let mut sorted: Vec<&Monomial> = gens.iter().collect();
    sorted.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
    sorted.dedup();

    let mut kept: Vec<Monomial> = Vec::new();
    for candidate in sorted {
        let deg = candidate.degree();
        // Kept elements come in ascending degree; only strictly lower degrees
        // can properly divide the candidate.
        let redundant = kept
            .iter()
            .take_while(|k| k.degree() < deg)
            .any(|k| k.divides_unchecked(candidate));
        if !redundant {
            kept.push(candidate.clone());
        }
    }
    Ok(kept)
}

/// A proper nonzero monomial ideal, held by its canonical minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: Arc<RingContext>,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(ring: Arc<RingContext>, gens: Vec<Monomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidIdeal("the zero ideal is not supported".into()));
        }
        for g in &gens {
            if g.num_vars() != ring.num_vars() {
                return Err(Error::Context {
                    expected: ring.num_vars(),
                    found: g.num_vars(),
                });
            }
            if g.is_one() {
                return Err(Error::InvalidIdeal("the unit ideal is not supported".into()));
            }
        }
        let generators = minimalize(&gens)?;
        Ok(Self { ring, generators })
    }

    /// Convenience constructor from raw exponent rows.
    pub fn from_exponents(ring: Arc<RingContext>, rows: &[&[u32]]) -> Result<Self> {
        let gens = rows.iter().map(|r| Monomial::new(r.to_vec())).collect();
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn num_vars(&self) -> usize {
        self.ring.num_vars()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Ideal membership of a monomial.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides_unchecked(m))
    }

    /// The ideal generated by all pairwise products of generators.
    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.ring != other.ring {
            return Err(Error::Context {
                expected: self.num_vars(),
                found: other.num_vars(),
            });
        }
        let mut seen = HashSet::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                seen.insert(a.mul(b)?);
            }
        }
        let products: Vec<Monomial> = seen.into_iter().collect();
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            generators: minimalize(&products)?,
        })
    }

    /// `I^d`, built as `I^(d-1) * I`.
    pub fn power(&self, d: u32) -> Result<MonomialIdeal> {
        if d == 0 {
            return Err(Error::Argument(
                "power 0 is the unit ideal, which is not supported".into(),
            ));
        }
        let mut acc = self.clone();
        for _ in 1..d {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `Some(r)` when every minimal generator has total degree `r`.
    pub fn is_equigenerated(&self) -> Option<u64> {
        let r = self.generators[0].degree();
        self.generators
            .iter()
            .all(|g| g.degree() == r)
            .then_some(r)
    }

    pub fn min_gen_degree(&self) -> u64 {
        // Canonical order puts the lowest degree first.
        self.generators[0].degree()
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| self.ring.format(g)).collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator_strings().join(", "))
    }
}

/// Free function form of [`MonomialIdeal::power`].
pub fn power(ideal: &MonomialIdeal, d: u32) -> Result<MonomialIdeal> {
    ideal.power(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ring(n: usize) -> Arc<RingContext> {
        Arc::new(RingContext::numbered(n).unwrap())
    }

    #[test]
    fn divisibility() {
        assert!(divides(&m(&[1, 2]), &m(&[2, 2])).unwrap());
        assert!(divides(&m(&[1, 2]), &m(&[1, 2])).unwrap());
        assert!(!divides(&m(&[0, 3]), &m(&[1, 2])).unwrap());
        assert!(matches!(
            divides(&m(&[1, 2]), &m(&[1, 2, 0])),
            Err(Error::Context { .. })
        ));
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_pair(&m(&[1, 2]), &m(&[0, 3])).unwrap(), m(&[1, 3]));
        assert_eq!(lcm_pair(&m(&[4, 1]), &m(&[4, 1])).unwrap(), m(&[4, 1]));
        assert_eq!(
            lcm_pair(&m(&[2, 0, 0]), &m(&[0, 0, 2])).unwrap(),
            m(&[2, 0, 2])
        );
        assert!(lcm_pair(&m(&[1]), &m(&[1, 1])).is_err());
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(
            minimalize(&[m(&[2, 0]), m(&[3, 0]), m(&[1, 1])]).unwrap(),
            vec![m(&[1, 1]), m(&[2, 0])]
        );
        assert_eq!(minimalize(&[m(&[2, 0]), m(&[2, 0])]).unwrap(), vec![m(&[2, 0])]);
        assert!(matches!(minimalize(&[]), Err(Error::Argument(_))));
    }

    #[test]
    fn minimalize_cube_products_of_small_equigenerated_ideal() {
        let gens = [m(&[1, 1, 1, 1]), m(&[0, 4, 0, 0]), m(&[1, 0, 0, 3])];
        let products: Vec<Monomial> = (0..3)
            .map(|_| gens.iter())
            .multi_cartesian_product()
            .map(|t| t[0].mul(t[1]).unwrap().mul(t[2]).unwrap())
            .collect();
        assert_eq!(products.len(), 27);
        let min = minimalize(&products).unwrap();
        assert_eq!(min.len(), 10);
        assert!(min.iter().all(|g| g.degree() == 12));
    }

    #[test]
    fn rejects_unit_and_zero_ideals() {
        assert!(MonomialIdeal::new(ring(2), vec![]).is_err());
        assert!(MonomialIdeal::new(ring(2), vec![m(&[0, 0]), m(&[1, 0])]).is_err());
        assert!(MonomialIdeal::new(ring(2), vec![m(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn powers() {
        let i = MonomialIdeal::from_exponents(
            ring(4),
            &[&[1, 1, 1, 1], &[0, 4, 0, 0], &[1, 0, 0, 3]],
        )
        .unwrap();
        let i2 = i.power(2).unwrap();
        assert_eq!(i2.num_generators(), 6);
        assert!(i2.generators().iter().all(|g| g.degree() == 8));
        assert_eq!(i.power(1).unwrap(), i);
        assert!(i.power(0).is_err());

        let ci = MonomialIdeal::from_exponents(
            ring(4),
            &[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]],
        )
        .unwrap();
        let ci2 = power(&ci, 2).unwrap();
        assert_eq!(ci2.num_generators(), 10);
        assert_eq!(ci2.is_equigenerated(), Some(4));
    }

    #[test]
    fn degrees() {
        let abc = Arc::new(RingContext::new(&["a", "b", "c"]).unwrap());
        let i1 = MonomialIdeal::from_exponents(
            abc,
            &[&[2, 2, 2], &[0, 4, 2], &[3, 0, 3], &[5, 1, 0]],
        )
        .unwrap();
        assert_eq!(i1.is_equigenerated(), Some(6));

        let ex = MonomialIdeal::from_exponents(
            ring(3),
            &[&[1, 2, 0], &[1, 0, 2], &[0, 3, 0], &[3, 0, 0]],
        )
        .unwrap();
        assert_eq!(ex.min_gen_degree(), 3);

        let mixed = MonomialIdeal::from_exponents(ring(2), &[&[1, 0], &[0, 2]]).unwrap();
        assert_eq!(mixed.is_equigenerated(), None);
        assert_eq!(mixed.min_gen_degree(), 1);
        assert_eq!(mixed.power(3).unwrap().min_gen_degree(), 3);
    }

    #[test]
    fn canonical_order_and_format() {
        let r = Arc::new(RingContext::new(&["x", "y"]).unwrap());
        let i = MonomialIdeal::from_exponents(r, &[&[0, 2], &[1, 0]]).unwrap();
        assert_eq!(i.generator_strings(), vec!["x", "y^2"]);
        assert_eq!(i.to_string(), "(x, y^2)");
    }

    #[test]
    fn ring_validation() {
        assert!(RingContext::new::<&str>(&[]).is_err());
        assert!(RingContext::new(&["a", "a"]).is_err());
        assert!(RingContext::new(&["1a"]).is_err());
        assert_eq!(RingContext::new(&["a", "b"]).unwrap().num_vars(), 2);
    }
}
