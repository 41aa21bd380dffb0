//! The fan algebra `K[Gamma]`, straightening and the presentation ideal.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use crate::fan::{chained, FanElement, FanError, FanOfMonoids};
use crate::poly::{buchberger, GroebnerBasis, Monomial, MonomialOrder, Polynomial, VariableSet};
use crate::Q;

/// Product of indecomposables with chained supports, as indices into the
/// generator list of the fan.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StandardMonomial(pub Vec<usize>);

impl StandardMonomial {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn to_monomial(&self, nvars: usize) -> Monomial {
        let mut e = vec![0u32; nvars];
        for &i in &self.0 {
            e[i] += 1;
        }
        Monomial::from_exponents(e)
    }

    /// The element of `Gamma` the monomial corresponds to.
    pub fn value(&self, fan: &FanOfMonoids) -> FanElement {
        self.0
            .iter()
            .fold(fan.zero(), |acc, &i| &acc + &fan.generators()[i])
    }
}

/// An element of `K[Gamma]` coming from a single monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Straightened {
    Zero,
    Standard(StandardMonomial),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanProduct {
    Zero,
    Element(FanElement),
}

/// `x_a x_b` in `K[Gamma]`.
pub fn fan_product(fan: &FanOfMonoids, a: &FanElement, b: &FanElement) -> FanProduct {
    let mut supp = a.support();
    supp.extend(b.support());
    match fan.common_chain(&supp) {
        Some(_) => FanProduct::Element(a + b),
        None => FanProduct::Zero,
    }
}

/// Generator indices of a monomial, repeated by exponent, in index order.
pub fn monomial_word(m: &Monomial) -> Vec<usize> {
    m.exponents()
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| core::iter::repeat_n(i, e as usize))
        .collect()
}

fn is_standard_pair(fan: &FanOfMonoids, i: usize, j: usize) -> bool {
    let g = fan.generators();
    chained(&g[i], &g[j], fan.poset())
}

pub fn is_standard(fan: &FanOfMonoids, word: &[usize]) -> bool {
    word.windows(2).all(|w| is_standard_pair(fan, w[0], w[1]))
}

/// The standard monomial equal to the product of `word`, or zero.
pub fn straighten(fan: &FanOfMonoids, word: &[usize]) -> Result<Straightened, FanError> {
    let mut acc = fan.zero();
    for &i in word {
        match fan_product(fan, &acc, &fan.generators()[i]) {
            FanProduct::Zero => return Ok(Straightened::Zero),
            FanProduct::Element(e) => acc = e,
        }
    }
    Ok(Straightened::Standard(StandardMonomial(
        fan.decompose(&acc)?,
    )))
}

/// One rewrite of an adjacent pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub position: usize,
    pub pair: (usize, usize),
    /// `None` when the pair has no common chain.
    pub replacement: Option<Vec<usize>>,
    /// For a pair standard in neither order whose larger entry is `u`,
    /// whether the new head is larger than `u`. `None` for other pairs.
    pub head_increased: Option<bool>,
}

/// Straightens by repeated pair rewrites. `choose` receives the number of
/// non-standard adjacent pairs and returns which one to rewrite.
pub fn straighten_by_rewriting(
    fan: &FanOfMonoids,
    word: &[usize],
    mut choose: impl FnMut(usize) -> usize,
) -> Result<(Straightened, Vec<RewriteStep>), FanError> {
    let g = fan.generators();
    let mut w = word.to_vec();
    let mut steps = Vec::new();
    loop {
        let bad: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&k| !is_standard_pair(fan, w[k], w[k + 1]))
            .collect();
        if bad.is_empty() {
            return Ok((Straightened::Standard(StandardMonomial(w)), steps));
        }
        let k = bad[choose(bad.len()) % bad.len()];
        let (i, j) = (w[k], w[k + 1]);
        match fan_product(fan, &g[i], &g[j]) {
            FanProduct::Zero => {
                steps.push(RewriteStep {
                    position: k,
                    pair: (i, j),
                    replacement: None,
                    head_increased: None,
                });
                return Ok((Straightened::Zero, steps));
            }
            FanProduct::Element(sum) => {
                let parts = fan.decompose(&sum)?;
                let larger = if fan.compare(&g[i], &g[j]) == Ordering::Less {
                    j
                } else {
                    i
                };
                let head_increased = (!is_standard_pair(fan, j, i))
                    .then(|| fan.compare(&g[parts[0]], &g[larger]) == Ordering::Greater);
                steps.push(RewriteStep {
                    position: k,
                    pair: (i, j),
                    replacement: Some(parts.clone()),
                    head_increased,
                });
                w.splice(k..k + 2, parts);
            }
        }
    }
}

/// Standard monomials whose value has degree exactly `d`, in decreasing
/// order of value.
pub fn standard_monomials(fan: &FanOfMonoids, d: u32) -> Result<Vec<StandardMonomial>, FanError> {
    let dq = Q::from_integer(d.into());
    fan.gamma_elements(d)
        .into_iter()
        .filter(|e| fan.degree(e) == dq)
        .map(|e| fan.decompose(&e).map(StandardMonomial))
        .collect()
}

/// All monomials of weighted degree exactly `d`.
pub fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur.clone()));
            }
            return;
        }
        let mut e = 0;
        while e * weights[i] <= left {
            cur.push(e);
            rec(weights, i + 1, left - e * weights[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, d, &mut Vec::new(), &mut out);
    out
}

/// How a quadratic relation `J(u_i, u_j)` arises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JCase {
    /// No chain contains both supports; `J = y_i y_j`.
    NoCommonChain,
    /// `J = y_i y_j - y_l1 y_l2 ...`.
    Straightened(Vec<usize>),
    /// Already standard; `J = 0`.
    Standard,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JRelation {
    pub i: usize,
    pub j: usize,
    pub case: JCase,
    pub poly: Polynomial,
}

#[derive(Clone, Debug)]
pub struct FanAlgebraPresentation {
    pub variables: VariableSet,
    pub order: MonomialOrder,
    pub weights: Vec<u32>,
    /// Generators of the kernel of `S -> K[Gamma]` up to the degree bound,
    /// sorted by degree, then by leading monomial.
    pub generators: Vec<Polynomial>,
    pub quadratic: Vec<JRelation>,
    pub degree_bound: u32,
}

impl FanAlgebraPresentation {
    /// Reduced Gröbner basis of the generators.
    pub fn groebner_basis(&self) -> GroebnerBasis {
        buchberger(&self.generators, &self.order)
    }
}

/// Generators of `I_V` in degrees up to `degree_bound`. Monomials with the
/// same standard form contribute their difference with the smallest one of
/// the class; monomials straightening to zero are generators themselves.
pub fn presentation_ideal(
    fan: &FanOfMonoids,
    degree_bound: u32,
) -> Result<FanAlgebraPresentation, FanError> {
    let m = fan.generators().len();
    let weights = fan.weights().to_vec();
    let order = fan.order();
    let mut generators = Vec::new();
    for d in 1..=degree_bound {
        let mut classes: BTreeMap<StandardMonomial, Vec<Monomial>> = BTreeMap::new();
        for mono in monomials_of_degree(&weights, d) {
            match straighten(fan, &monomial_word(&mono))? {
                Straightened::Zero => generators.push(Polynomial::term(Q::one(), mono)),
                Straightened::Standard(s) => classes.entry(s).or_default().push(mono),
            }
        }
        for (_, mut class) in classes {
            class.sort_by(|a, b| order.cmp(a, b));
            let min = &class[0];
            for other in &class[1..] {
                generators.push(Polynomial::from_terms(
                    m,
                    [(Q::one(), other.clone()), (-Q::one(), min.clone())],
                ));
            }
        }
    }
    generators.sort_by(|a, b| {
        let la = a.leading_monomial(&order).expect("nonzero");
        let lb = b.leading_monomial(&order).expect("nonzero");
        order.cmp(la, lb)
    });

    let mut quadratic = Vec::new();
    for i in 0..m {
        for j in i..m {
            let (case, poly) = j_relation(fan, i, j)?;
            quadratic.push(JRelation { i, j, case, poly });
        }
    }
    Ok(FanAlgebraPresentation {
        variables: fan.variable_set(),
        order,
        weights,
        generators,
        quadratic,
        degree_bound,
    })
}

fn j_relation(fan: &FanOfMonoids, i: usize, j: usize) -> Result<(JCase, Polynomial), FanError> {
    let m = fan.generators().len();
    let word = StandardMonomial(vec![i, j]);
    let yy = Polynomial::term(Q::one(), word.to_monomial(m));
    let g = fan.generators();
    Ok(match fan_product(fan, &g[i], &g[j]) {
        FanProduct::Zero => (JCase::NoCommonChain, yy),
        FanProduct::Element(sum) => {
            let parts = fan.decompose(&sum)?;
            let rhs = StandardMonomial(parts.clone()).to_monomial(m);
            if rhs == word.to_monomial(m) {
                (JCase::Standard, Polynomial::zero(m))
            } else {
                (
                    JCase::Straightened(parts),
                    &yy - &Polynomial::term(Q::one(), rhs),
                )
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KoszulVerdict {
    /// The reduced Gröbner basis consists of quadrics.
    Quadratic,
    /// A basis element of higher degree.
    NotQuadratic(Polynomial),
}

/// Degree of an element measured by plain exponent sums.
fn plain_degree(p: &Polynomial) -> u64 {
    p.terms().map(|(m, _)| m.degree()).max().unwrap_or(0)
}

/// Looks at the reduced Gröbner basis of the presentation. A quadratic basis
/// implies Koszulness; the converse is not claimed.
pub fn koszul_check(pres: &FanAlgebraPresentation) -> (KoszulVerdict, GroebnerBasis) {
    let gb = pres.groebner_basis();
    let verdict = match gb.polys.iter().find(|p| plain_degree(p) > 2) {
        Some(p) => KoszulVerdict::NotQuadratic(p.clone()),
        None => KoszulVerdict::Quadratic,
    };
    (verdict, gb)
}

/// Image of a polynomial in `S` under `y_u -> x_u` in `K[Gamma]`, as
/// coefficients of standard monomials.
pub fn phi(fan: &FanOfMonoids, p: &Polynomial) -> Result<BTreeMap<StandardMonomial, Q>, FanError> {
    let mut out: BTreeMap<StandardMonomial, Q> = BTreeMap::new();
    for (m, c) in p.terms() {
        if let Straightened::Standard(s) = straighten(fan, &monomial_word(m))? {
            *out.entry(s).or_insert_with(Q::zero) += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}
