//! Multivariate polynomials over the rationals.

mod groebner;
mod text;

pub use groebner::{
    buchberger, initial_ideal_equal, is_groebner, is_reduced, normal_form, reduce_basis,
    s_polynomial, GroebnerBasis,
};
pub use text::{ParseError, VariableSet};

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("monomials live in rings with {0} and {1} variables")]
    VariableMismatch(usize, usize),
    #[error("order has {weights} weights but the ring has {vars} variables")]
    WeightMismatch { weights: usize, vars: usize },
}

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| u64::from(e) * u64::from(w))
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }
}

/// Monomial orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Larger weighted degree wins; at equal degree `k > l` iff the first
    /// nonzero entry of `k - l` is negative.
    Weighted { weights: Vec<u32> },
    /// Lexicographic, first variable most significant.
    Lex,
    /// Degree reverse lexicographic.
    DegRevLex,
}

impl MonomialOrder {
    pub fn weighted(weights: Vec<u32>) -> Self {
        MonomialOrder::Weighted { weights }
    }

    /// Unit weights for `n` variables.
    pub fn unit_weighted(n: usize) -> Self {
        MonomialOrder::Weighted {
            weights: vec![1; n],
        }
    }

    /// Checked comparison.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        if a.nvars() != b.nvars() {
            return Err(PolyError::VariableMismatch(a.nvars(), b.nvars()));
        }
        if let MonomialOrder::Weighted { weights } = self {
            if weights.len() != a.nvars() {
                return Err(PolyError::WeightMismatch {
                    weights: weights.len(),
                    vars: a.nvars(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }

    /// Comparison for monomials already known to be compatible.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Weighted { weights } => a
                .weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| {
                    for (x, y) in a.0.iter().zip(&b.0) {
                        if x != y {
                            // smaller exponent at the first difference is larger
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                }),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    /// Degree used by the normal selection strategy.
    pub fn sugar(&self, m: &Monomial) -> u64 {
        match self {
            MonomialOrder::Weighted { weights } => m.weighted_degree(weights),
            _ => m.degree(),
        }
    }
}

/// Polynomial with rational coefficients; no zero coefficient is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Q::one(), Monomial::var(nvars, i))
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Q, Monomial)>) -> Self {
        let mut p = Self::zero(nvars);
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, c: Q, m: Monomial) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Adds `c * m * other` in place.
    pub fn add_scaled(&mut self, c: &Q, m: &Monomial, other: &Polynomial) {
        for (om, oc) in &other.terms {
            self.add_term(c * oc, m.mul(om));
        }
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Largest term under `ord`.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self, ord: &MonomialOrder) -> Option<&Q> {
        self.leading_term(ord).map(|(_, c)| c)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_coefficient(ord) {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Terms sorted from largest to smallest under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(&Monomial, &Q)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| ord.cmp(b.0, a.0));
        t
    }

    /// Weighted degree if every term has the same one.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u64> {
        let mut it = self.terms.keys().map(|m| m.weighted_degree(weights));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Replaces variable `i` by `images[i]`; all images share one ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(p.nvars), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Smallest exponent of variable `i` over all terms.
    pub fn min_exponent(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).min()
    }

    /// Keeps the terms in which every variable of `vars` has exponent zero.
    pub fn restrict_to_zero(&self, vars: &[usize]) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.0[v] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Term with the smallest exponent vector, comparing the variables in the
    /// order `priority` (most significant first).
    pub fn min_term_by_priority(&self, priority: &[usize]) -> Option<(&Monomial, &Q)> {
        self.terms.iter().min_by(|a, b| {
            priority
                .iter()
                .map(|&v| a.0 .0[v].cmp(&b.0 .0[v]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }

    /// Maps the polynomial into a ring with more variables; variable `i`
    /// becomes variable `map[i]`.
    pub fn rename_variables(&self, nvars: usize, map: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(c.clone(), Monomial(e));
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c.clone(), m.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_scaled(c, m, rhs);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Q::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn weighted_order_examples() {
        let ord = MonomialOrder::unit_weighted(3);
        assert_eq!(ord.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Less);
        assert_eq!(ord.cmp(&m(&[1, 1, 0]), &m(&[1, 1, 0])), Ordering::Equal);
        assert_eq!(ord.cmp(&m(&[0, 0, 3]), &m(&[2, 0, 0])), Ordering::Greater);
        // single variables: later ones are larger
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 0, 1])), Ordering::Less);
    }

    #[test]
    fn compare_rejects_mismatch() {
        let ord = MonomialOrder::Lex;
        assert!(ord.compare(&m(&[1]), &m(&[1, 0])).is_err());
        let w = MonomialOrder::weighted(vec![1, 2]);
        assert!(w.compare(&m(&[1, 0, 0]), &m(&[1, 0, 0])).is_err());
    }

    #[test]
    fn substitution() {
        // x -> t^2, y -> t + 1
        let t = Polynomial::var(1, 0);
        let images = vec![t.pow(2), &t + &Polynomial::one(1)];
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let f = &(&x * &y) - &y.pow(2);
        let g = f.substitute(&images);
        let expect = &(&t.pow(2) * &images[1]) - &images[1].pow(2);
        assert_eq!(g, expect);
        assert_eq!(g.coefficient(&m(&[0])), q(-1));
    }
}
