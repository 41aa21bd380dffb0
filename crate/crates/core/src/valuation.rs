//! Chain valuations, the quasi-valuation, subduction and lifting of
//! Gröbner bases.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use crate::fan::{FanElement, FanError, FanOfMonoids};
use crate::fan_algebra::{monomials_of_degree, phi, StandardMonomial};
use crate::linalg::{self, Matrix};
use crate::poly::{
    initial_ideal_equal, is_groebner, is_reduced, GroebnerBasis, Monomial, Polynomial,
};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValuationError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("chain index {0} out of range")]
    NoSuchChain(usize),
    #[error("the zero element has no valuation")]
    Zero,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("backend only evaluates monomials")]
    NotMonomial,
    #[error("backend does not support {0}")]
    Unsupported(&'static str),
    #[error("chain {chain}: extremal function of step {step} vanishes on its stratum")]
    VanishesOnStratum { chain: usize, step: usize },
    #[error("chain {chain}: step {step} has vanishing order {found}, bond is {expected}")]
    BondMismatch {
        chain: usize,
        step: usize,
        expected: u32,
        found: u32,
    },
    #[error("degree {0} exceeds the precomputed range")]
    DegreeOutOfRange(u64),
    #[error("element is not in the span of standard monomials")]
    NotInSpan,
    #[error("no chain attains the leading value of both elements")]
    NoLeadingRatio,
    #[error("subduction made no progress at step {0}")]
    NoProgress(usize),
    #[error("subduction did not finish in {0} steps")]
    IterationCap(usize),
    #[error("relation {0} does not vanish in the fan algebra")]
    NotInIdeal(String),
    #[error("lifting changed the leading term of relation {0}")]
    LeadingTermChanged(usize),
    #[error("lifted relation {0} does not vanish in the ring")]
    LiftNotZero(usize),
    #[error("S-polynomial of lifted relations {0} and {1} does not reduce to zero")]
    NotGroebner(usize, usize),
    #[error("initial ideals of the two bases differ")]
    InitialIdealMismatch,
    #[error("lifted basis is not reduced")]
    NotReduced,
}

/// A homogeneous element of the ring, written as a polynomial in its
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    poly: Polynomial,
    degree: u64,
}

impl RingElement {
    pub fn new(poly: Polynomial, weights: &[u32]) -> Result<Self, ValuationError> {
        let degree = if poly.is_zero() {
            0
        } else {
            poly.homogeneous_degree(weights)
                .ok_or(ValuationError::NotHomogeneous)?
        };
        Ok(RingElement { poly, degree })
    }

    /// The product of the generators in a standard monomial.
    pub fn standard(fan: &FanOfMonoids, s: &StandardMonomial) -> Self {
        let m = s.to_monomial(fan.generators().len());
        RingElement {
            degree: m.weighted_degree(fan.weights()),
            poly: Polynomial::term(Q::one(), m),
        }
    }

    pub fn generator(fan: &FanOfMonoids, i: usize) -> Self {
        Self::standard(fan, &StandardMonomial(vec![i]))
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_formally_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        RingElement {
            poly: &self.poly * &other.poly,
            degree: self.degree + other.degree,
        }
    }

    /// `self - c * other`; both must have the same degree unless one is zero.
    pub fn sub_scaled(&self, c: &Q, other: &RingElement) -> RingElement {
        RingElement {
            poly: &self.poly - &other.poly.scale(c),
            degree: if self.poly.is_zero() {
                other.degree
            } else {
                self.degree
            },
        }
    }
}

/// Source of the values `V_C(g)`.
pub trait QuasiValuationBackend {
    fn fan(&self) -> &FanOfMonoids;

    fn chain_valuation(&self, g: &RingElement, chain: usize) -> Result<FanElement, ValuationError>;

    /// Whether `g` is zero in the ring.
    fn is_zero(&self, g: &RingElement) -> Result<bool, ValuationError>;

    /// `lambda` with `V(f - lambda m) > V(f)`, for `V(f) = V(m)`.
    fn leading_ratio(&self, f: &RingElement, m: &RingElement) -> Result<Q, ValuationError>;

    /// Minimum over all maximal chains.
    fn quasi_valuation(&self, g: &RingElement) -> Result<FanElement, ValuationError> {
        if self.is_zero(g)? {
            return Err(ValuationError::Zero);
        }
        let fan = self.fan();
        let mut best: Option<FanElement> = None;
        for c in 0..fan.monoids().len() {
            let v = self.chain_valuation(g, c)?;
            if best
                .as_ref()
                .is_none_or(|b| fan.compare(&v, b) == Ordering::Less)
            {
                best = Some(v);
            }
        }
        best.ok_or(ValuationError::NoSuchChain(0))
    }
}

/// Values of the generators on every chain, extended additively to monomials.
#[derive(Clone, Debug)]
pub struct TableBackend {
    fan: FanOfMonoids,
    /// `table[i][c]` is `V_C(g_i)`.
    table: Vec<Vec<FanElement>>,
}

impl TableBackend {
    pub fn new(fan: FanOfMonoids, table: Vec<Vec<FanElement>>) -> Self {
        TableBackend { fan, table }
    }

    pub fn table(&self) -> &[Vec<FanElement>] {
        &self.table
    }

    fn single_term<'a>(&self, g: &'a RingElement) -> Result<&'a Monomial, ValuationError> {
        let mut it = g.poly.terms();
        match (it.next(), it.next()) {
            (Some((m, _)), None) => Ok(m),
            (None, _) => Err(ValuationError::Zero),
            _ => Err(ValuationError::NotMonomial),
        }
    }
}

impl QuasiValuationBackend for TableBackend {
    fn fan(&self) -> &FanOfMonoids {
        &self.fan
    }

    fn chain_valuation(&self, g: &RingElement, chain: usize) -> Result<FanElement, ValuationError> {
        if chain >= self.fan.monoids().len() {
            return Err(ValuationError::NoSuchChain(chain));
        }
        let m = self.single_term(g)?;
        let mut v = self.fan.zero();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                v = &v + &self.table[i][chain].scale(&Q::from_integer(e.into()));
            }
        }
        Ok(v)
    }

    fn is_zero(&self, g: &RingElement) -> Result<bool, ValuationError> {
        if g.poly.is_zero() {
            return Ok(true);
        }
        self.single_term(g).map(|_| false)
    }

    fn leading_ratio(&self, _: &RingElement, _: &RingElement) -> Result<Q, ValuationError> {
        Err(ValuationError::Unsupported("leading coefficients"))
    }
}

/// Nested chart of one maximal chain `p_r > ... > p_0`. Parameter `k - 1`
/// is `z_k`; setting `z_{k+1}, ..., z_r` to zero gives a chart of the
/// stratum of `p_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainChart {
    /// Images of the ring generators.
    pub generators: Vec<Polynomial>,
    /// Images of the extremal functions `f_{p_0}, ..., f_{p_r}`.
    pub extremal: Vec<Polynomial>,
}

/// Chain valuations computed from nested charts.
#[derive(Clone, Debug)]
pub struct ChartBackend {
    fan: FanOfMonoids,
    charts: Vec<ChainChart>,
    n: u64,
}

impl ChartBackend {
    pub fn new(fan: FanOfMonoids, charts: Vec<ChainChart>) -> Self {
        let n = fan.poset().extended().bond_lcm();
        ChartBackend { fan, charts, n }
    }

    pub fn charts(&self) -> &[ChainChart] {
        &self.charts
    }

    /// The element evaluated on the nested chart of `chain`.
    pub fn image(&self, g: &RingElement, chain: usize) -> Polynomial {
        g.poly.substitute(&self.charts[chain].generators)
    }

    fn priority(r: usize) -> Vec<usize> {
        (0..r).rev().collect()
    }

    /// Exponent vector of the term of `p` that is lexicographically smallest
    /// with `z_r` most significant.
    fn lexmin(p: &Polynomial, r: usize) -> Option<(&Monomial, &Q)> {
        p.min_term_by_priority(&Self::priority(r))
    }

    /// `V_C` of an element given by its chart image and degree.
    pub fn image_valuation(
        &self,
        chain: usize,
        image: &Polynomial,
        degree: u64,
    ) -> Result<FanElement, ValuationError> {
        let c = self
            .fan
            .monoids()
            .get(chain)
            .ok_or(ValuationError::NoSuchChain(chain))?
            .chain
            .clone();
        let r = c.rank();
        let poset = self.fan.poset();
        let nq = Q::from_integer(self.n.into());
        let lead = Self::lexmin(image, r).ok_or(ValuationError::Zero)?.0;
        let to_q = |m: &Monomial| -> Vec<Q> {
            m.exponents()
                .iter()
                .map(|&e| Q::from_integer(e.into()))
                .collect()
        };
        // (exponent vector, multiplicity) of a formal product
        let mut factors: Vec<(Vec<Q>, Q)> = vec![(to_q(lead), Q::one())];
        let mut d = Q::from_integer(degree.into());
        let mut coords = vec![Q::zero(); r + 1];
        let mut scale = Q::one();
        for k in (1..=r).rev() {
            let a: Q = factors.iter().map(|(v, e)| &v[k - 1] * e).sum();
            let b = c.bond(k);
            let bq = Q::from_integer(b.into());
            coords[r - k] = &a / (&bq * &scale);
            let above: Vec<usize> = (k..r).collect();
            let fk = self.charts[chain].extremal[k].restrict_to_zero(&above);
            if fk.is_zero() {
                return Err(ValuationError::VanishesOnStratum { chain, step: k });
            }
            let ord = fk.min_exponent(k - 1).unwrap_or(0);
            if ord != b {
                return Err(ValuationError::BondMismatch {
                    chain,
                    step: k,
                    expected: b,
                    found: ord,
                });
            }
            let m = &nq * &a / &bq;
            for f in factors.iter_mut() {
                f.1 *= &nq;
            }
            let lf = Self::lexmin(&fk, r).expect("nonzero").0;
            factors.push((to_q(lf), -m.clone()));
            d = &nq * &d - &m * Q::from_integer(poset.degree(c.element(k)).into());
            scale *= &nq;
        }
        coords[r] = d / (Q::from_integer(poset.degree(c.element(0)).into()) * &scale);
        Ok(FanElement::from_chain_coords(poset.len(), &c, &coords))
    }

    /// Coefficient of the leading chart term on `chain`.
    pub fn leading_coefficient(&self, g: &RingElement, chain: usize) -> Option<Q> {
        let img = self.image(g, chain);
        Self::lexmin(&img, self.fan.monoids()[chain].chain.rank()).map(|(_, c)| c.clone())
    }
}

impl QuasiValuationBackend for ChartBackend {
    fn fan(&self) -> &FanOfMonoids {
        &self.fan
    }

    fn chain_valuation(&self, g: &RingElement, chain: usize) -> Result<FanElement, ValuationError> {
        if chain >= self.charts.len() {
            return Err(ValuationError::NoSuchChain(chain));
        }
        self.image_valuation(chain, &self.image(g, chain), g.degree)
    }

    fn is_zero(&self, g: &RingElement) -> Result<bool, ValuationError> {
        Ok(g.poly.is_zero() || self.image(g, 0).is_zero())
    }

    fn leading_ratio(&self, f: &RingElement, m: &RingElement) -> Result<Q, ValuationError> {
        let vf = self.quasi_valuation(f)?;
        for c in 0..self.charts.len() {
            if self.chain_valuation(f, c)? == vf && self.chain_valuation(m, c)? == vf {
                let a = self.leading_coefficient(f, c).ok_or(ValuationError::Zero)?;
                let b = self.leading_coefficient(m, c).ok_or(ValuationError::Zero)?;
                return Ok(a / b);
            }
        }
        Err(ValuationError::NoLeadingRatio)
    }
}

struct GradedPiece {
    monomials: Vec<StandardMonomial>,
    values: Vec<FanElement>,
    /// Chart monomials selected as pivots.
    pivots: Vec<Monomial>,
    /// Inverse of the pivot block.
    inverse: Matrix,
    /// Images of the standard monomials, for full verification.
    images: Vec<Polynomial>,
}

/// Expands elements in the standard monomial basis through an evaluation
/// oracle; the value of an element is the least value among its terms.
pub struct BasisExpansionBackend {
    fan: FanOfMonoids,
    images: Vec<Polynomial>,
    pieces: BTreeMap<u64, GradedPiece>,
}

impl BasisExpansionBackend {
    /// `images[i]` is the oracle image of the `i`-th generator. Standard
    /// monomials of every degree up to `max_degree` must map to linearly
    /// independent polynomials.
    pub fn new(
        fan: FanOfMonoids,
        images: Vec<Polynomial>,
        max_degree: u32,
    ) -> Result<Self, ValuationError> {
        let mut pieces = BTreeMap::new();
        for d in 1..=max_degree {
            let monomials = crate::fan_algebra::standard_monomials(&fan, d)?;
            let m = fan.generators().len();
            let imgs: Vec<Polynomial> = monomials
                .iter()
                .map(|s| Polynomial::term(Q::one(), s.to_monomial(m)).substitute(&images))
                .collect();
            let mut support: Vec<Monomial> = imgs
                .iter()
                .flat_map(|p| p.terms().map(|(mm, _)| mm.clone()))
                .collect();
            support.sort();
            support.dedup();
            // rows = chart monomials, columns = standard monomials
            let mat: Matrix = support
                .iter()
                .map(|mm| imgs.iter().map(|p| p.coefficient(mm)).collect())
                .collect();
            let mut t: Matrix = (0..monomials.len())
                .map(|j| mat.iter().map(|row| row[j].clone()).collect())
                .collect();
            let piv_rows = linalg::rref(&mut t);
            if piv_rows.len() < monomials.len() {
                return Err(ValuationError::NotInSpan);
            }
            let pivots: Vec<Monomial> = piv_rows.iter().map(|&i| support[i].clone()).collect();
            let block: Matrix = piv_rows.iter().map(|&i| mat[i].clone()).collect();
            let inverse = linalg::inverse(&block).ok_or(ValuationError::NotInSpan)?;
            let values = monomials.iter().map(|s| s.value(&fan)).collect();
            pieces.insert(
                u64::from(d),
                GradedPiece {
                    monomials,
                    values,
                    pivots,
                    inverse,
                    images: imgs,
                },
            );
        }
        Ok(BasisExpansionBackend {
            fan,
            images,
            pieces,
        })
    }

    pub fn image(&self, g: &RingElement) -> Polynomial {
        g.poly.substitute(&self.images)
    }

    pub fn standard_monomials(&self, degree: u64) -> Option<&[StandardMonomial]> {
        self.pieces.get(&degree).map(|p| p.monomials.as_slice())
    }

    /// Coefficients of `g` in the standard monomial basis of its degree.
    pub fn expand(&self, g: &RingElement) -> Result<Vec<(StandardMonomial, Q)>, ValuationError> {
        if g.poly.is_zero() {
            return Ok(Vec::new());
        }
        let piece = self
            .pieces
            .get(&g.degree)
            .ok_or(ValuationError::DegreeOutOfRange(g.degree))?;
        let img = self.image(g);
        let b: Vec<Q> = piece.pivots.iter().map(|m| img.coefficient(m)).collect();
        let x = linalg::mat_vec(&piece.inverse, &b);
        let mut check = img.clone();
        for (c, p) in x.iter().zip(&piece.images) {
            check = &check - &p.scale(c);
        }
        if !check.is_zero() {
            return Err(ValuationError::NotInSpan);
        }
        Ok(piece
            .monomials
            .iter()
            .cloned()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .collect())
    }

    fn leading(&self, g: &RingElement) -> Result<Option<(FanElement, Q)>, ValuationError> {
        let piece = match self.pieces.get(&g.degree) {
            Some(p) => p,
            None if g.poly.is_zero() => return Ok(None),
            None => return Err(ValuationError::DegreeOutOfRange(g.degree)),
        };
        let mut best: Option<(FanElement, Q)> = None;
        for (s, c) in self.expand(g)? {
            let i = piece
                .monomials
                .iter()
                .position(|t| *t == s)
                .expect("same basis");
            let v = &piece.values[i];
            if best
                .as_ref()
                .is_none_or(|(b, _)| self.fan.compare(v, b) == Ordering::Less)
            {
                best = Some((v.clone(), c));
            }
        }
        Ok(best)
    }
}

impl QuasiValuationBackend for BasisExpansionBackend {
    fn fan(&self) -> &FanOfMonoids {
        &self.fan
    }

    fn chain_valuation(&self, _: &RingElement, _: usize) -> Result<FanElement, ValuationError> {
        Err(ValuationError::Unsupported("chain valuations"))
    }

    fn quasi_valuation(&self, g: &RingElement) -> Result<FanElement, ValuationError> {
        self.leading(g)?.map(|(v, _)| v).ok_or(ValuationError::Zero)
    }

    fn is_zero(&self, g: &RingElement) -> Result<bool, ValuationError> {
        Ok(g.poly.is_zero() || self.image(g).is_zero())
    }

    fn leading_ratio(&self, f: &RingElement, m: &RingElement) -> Result<Q, ValuationError> {
        let (vf, cf) = self.leading(f)?.ok_or(ValuationError::Zero)?;
        let (vm, cm) = self.leading(m)?.ok_or(ValuationError::Zero)?;
        if vf != vm {
            return Err(ValuationError::NoLeadingRatio);
        }
        Ok(cf / cm)
    }
}

/// One printed term of the subduction algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubductionTerm {
    pub coefficient: Q,
    pub monomial: StandardMonomial,
    pub value: FanElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubductionResult {
    pub terms: Vec<SubductionTerm>,
    /// True when the remainder became zero.
    pub residual_zero: bool,
}

impl SubductionResult {
    /// The sum of the printed terms as a polynomial in the generators.
    pub fn as_polynomial(&self, nvars: usize) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        for t in &self.terms {
            p.add_term(t.coefficient.clone(), t.monomial.to_monomial(nvars));
        }
        p
    }
}

const SUBDUCTION_CAP: usize = 10_000;

/// Writes `f` as a combination of standard monomials with strictly
/// increasing values.
pub fn subduct<B: QuasiValuationBackend + ?Sized>(
    f: &RingElement,
    backend: &B,
) -> Result<SubductionResult, ValuationError> {
    let fan = backend.fan();
    let mut rest = f.clone();
    let mut terms: Vec<SubductionTerm> = Vec::new();
    for step in 0..SUBDUCTION_CAP {
        if backend.is_zero(&rest)? {
            return Ok(SubductionResult {
                terms,
                residual_zero: true,
            });
        }
        let a = backend.quasi_valuation(&rest)?;
        if let Some(prev) = terms.last() {
            if fan.compare(&a, &prev.value) != Ordering::Greater {
                return Err(ValuationError::NoProgress(step));
            }
        }
        let parts = fan.decompose(&a)?;
        let mono = StandardMonomial(parts);
        let m = RingElement::standard(fan, &mono);
        let lambda = backend.leading_ratio(&rest, &m)?;
        rest = rest.sub_scaled(&lambda, &m);
        terms.push(SubductionTerm {
            coefficient: lambda,
            monomial: mono,
            value: a,
        });
    }
    Err(ValuationError::IterationCap(SUBDUCTION_CAP))
}

/// A relation of the degenerate ideal and its lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedRelation {
    pub input: Polynomial,
    pub trace: SubductionResult,
    pub lifted: Polynomial,
}

/// `r - h` where `h` is the subduction of `r` evaluated in the ring.
pub fn lift_relation<B: QuasiValuationBackend + ?Sized>(
    r: &Polynomial,
    backend: &B,
) -> Result<LiftedRelation, ValuationError> {
    lift_one(r, backend, 0)
}

fn lift_one<B: QuasiValuationBackend + ?Sized>(
    r: &Polynomial,
    backend: &B,
    index: usize,
) -> Result<LiftedRelation, ValuationError> {
    let fan = backend.fan();
    let order = fan.order();
    let vars = fan.variable_set();
    if !phi(fan, r)?.is_empty() {
        return Err(ValuationError::NotInIdeal(vars.format(r, &order)));
    }
    let g = RingElement::new(r.clone(), fan.weights())?;
    let trace = subduct(&g, backend)?;
    let h = trace.as_polynomial(fan.generators().len());
    let lifted = r - &h;
    let lead = r.leading_monomial(&order).ok_or(ValuationError::Zero)?;
    if h.terms().any(|(m, _)| order.cmp(m, lead) != Ordering::Less) {
        return Err(ValuationError::LeadingTermChanged(index));
    }
    if !backend.is_zero(&RingElement::new(lifted.clone(), fan.weights())?)? {
        return Err(ValuationError::LiftNotZero(index));
    }
    Ok(LiftedRelation {
        input: r.clone(),
        trace,
        lifted,
    })
}

#[derive(Clone, Debug)]
pub struct LiftReport {
    pub relations: Vec<LiftedRelation>,
    pub basis: GroebnerBasis,
}

/// Lifts every element of a reduced Gröbner basis of `I_V` and verifies that
/// the result is a reduced Gröbner basis with the same initial ideal.
pub fn lift_groebner_basis<B: QuasiValuationBackend + ?Sized>(
    g: &GroebnerBasis,
    backend: &B,
) -> Result<LiftReport, ValuationError> {
    let relations = g
        .polys
        .iter()
        .enumerate()
        .map(|(i, r)| lift_one(r, backend, i))
        .collect::<Result<Vec<_>, _>>()?;
    let basis = GroebnerBasis {
        polys: relations.iter().map(|l| l.lifted.clone()).collect(),
        order: g.order.clone(),
        reduced: true,
    };
    is_groebner(&basis.polys, &basis.order).map_err(|(i, j)| ValuationError::NotGroebner(i, j))?;
    if !initial_ideal_equal(g, &basis) {
        return Err(ValuationError::InitialIdealMismatch);
    }
    if !is_reduced(&basis.polys, &basis.order) {
        return Err(ValuationError::NotReduced);
    }
    Ok(LiftReport { relations, basis })
}

/// Monomials of `S` of a given weighted degree, as ring elements.
pub fn ring_monomials(fan: &FanOfMonoids, d: u32) -> Vec<RingElement> {
    monomials_of_degree(fan.weights(), d)
        .into_iter()
        .map(|m| RingElement {
            poly: Polynomial::term(Q::one(), m),
            degree: u64::from(d),
        })
        .collect()
}
