//! Vectors in `Q^A`, LS-lattices and the fan of monoids.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{MonomialOrder, VariableSet};
use crate::poset::{Chain, ElemId, Linearization, StratPoset};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("support of {0} is not contained in the chain")]
    SupportNotInChain(String),
    #[error("{0} does not lie in the fan of monoids")]
    NotInGamma(String),
    #[error("{0} is not one of the indecomposable elements")]
    NotIndecomposable(String),
    #[error("poset is not valid: {0}")]
    InvalidPoset(String),
    #[error("an LS-type fan needs every extremal degree equal to 1")]
    NotLsType,
    #[error("generator {0} must be nonnegative, of positive degree and supported on its chain")]
    BadGenerator(String),
    #[error("indecomposable {0} has a degree that is not a positive integer")]
    NonIntegralDegree(String),
    #[error("expected generators for {expected} chains, got {got}")]
    ChainCount { expected: usize, got: usize },
}

/// A finitely supported vector in `Q^A`, indexed by poset elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FanElement {
    coords: Vec<Q>,
}

impl FanElement {
    pub fn zero(n: usize) -> Self {
        FanElement {
            coords: vec![Q::zero(); n],
        }
    }

    pub fn unit(n: usize, p: ElemId) -> Self {
        let mut e = Self::zero(n);
        e.coords[p.0] = Q::one();
        e
    }

    pub fn from_coords(coords: Vec<Q>) -> Self {
        FanElement { coords }
    }

    /// Places chain coordinates `(u_r, ..., u_0)` into `Q^A`.
    pub fn from_chain_coords(n: usize, chain: &Chain, top_down: &[Q]) -> Self {
        let mut e = Self::zero(n);
        for (p, c) in chain.elements_top_down().iter().zip(top_down) {
            e.coords[p.0] = c.clone();
        }
        e
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn coord(&self, p: ElemId) -> &Q {
        &self.coords[p.0]
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn support(&self) -> Vec<ElemId> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| ElemId(i))
            .collect()
    }

    pub fn support_in_chain(&self, chain: &Chain) -> bool {
        self.support().into_iter().all(|p| chain.contains(p))
    }

    /// `(u_r, ..., u_0)` along `chain`.
    pub fn chain_coords(&self, chain: &Chain) -> Vec<Q> {
        chain
            .elements_top_down()
            .iter()
            .map(|p| self.coords[p.0].clone())
            .collect()
    }

    /// Largest element of the support, if the support has one.
    pub fn top(&self, poset: &StratPoset) -> Option<ElemId> {
        let s = self.support();
        s.iter()
            .copied()
            .find(|&p| s.iter().all(|&q| poset.le(q, p)))
    }

    /// Smallest element of the support, if the support has one.
    pub fn bottom(&self, poset: &StratPoset) -> Option<ElemId> {
        let s = self.support();
        s.iter()
            .copied()
            .find(|&p| s.iter().all(|&q| poset.le(p, q)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        FanElement {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Compact `(a, b, ...)` rendering in linearization order.
    pub fn display(&self, lin: &Linearization) -> String {
        let parts: Vec<String> = lin
            .order()
            .iter()
            .map(|p| self.coords[p.0].to_string())
            .collect();
        format!("({})", parts.join(", "))
    }

    /// Coordinates in decreasing linearization order.
    pub fn ordered_coords(&self, lin: &Linearization) -> Vec<Q> {
        lin.order()
            .iter()
            .map(|p| self.coords[p.0].clone())
            .collect()
    }
}

impl Add for &FanElement {
    type Output = FanElement;
    fn add(self, rhs: &FanElement) -> FanElement {
        FanElement {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &FanElement {
    type Output = FanElement;
    fn sub(self, rhs: &FanElement) -> FanElement {
        FanElement {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// `a > b` iff the first nonzero coordinate of `a - b`, read in decreasing
/// linearization order, is positive.
pub fn lex_compare(a: &FanElement, b: &FanElement, lin: &Linearization) -> Ordering {
    for p in lin.order() {
        let o = a.coords[p.0].cmp(&b.coords[p.0]);
        if o.is_ne() {
            return o;
        }
    }
    Ordering::Equal
}

/// `sum_p deg(f_p) a_p`.
pub fn degree(a: &FanElement, poset: &StratPoset) -> Q {
    poset
        .elements()
        .map(|p| &a.coords[p.0] * Q::from_integer(poset.degree(p).into()))
        .sum()
}

/// `min supp a >= max supp b`; vacuous when either is zero.
pub fn chained(a: &FanElement, b: &FanElement, poset: &StratPoset) -> bool {
    if a.is_zero() || b.is_zero() {
        return true;
    }
    match (a.bottom(poset), b.top(poset)) {
        (Some(lo), Some(hi)) => poset.le(hi, lo),
        _ => false,
    }
}

fn is_integer(q: &Q) -> bool {
    q.is_integer()
}

/// Membership in the nonnegative part of the LS-lattice of `chain`.
pub fn ls_member(u: &FanElement, chain: &Chain) -> Result<bool, FanError> {
    if !u.support_in_chain(chain) {
        return Err(FanError::SupportNotInChain(format!("{:?}", u.coords)));
    }
    if !u.is_nonnegative() {
        return Ok(false);
    }
    let c = u.chain_coords(chain);
    let r = chain.rank();
    let mut s = Q::zero();
    for k in (1..=r).rev() {
        s += &c[r - k];
        if !is_integer(&(&s * Q::from_integer(chain.bond(k).into()))) {
            return Ok(false);
        }
    }
    s += &c[r];
    Ok(is_integer(&s))
}

/// How the monoid `Gamma_C` of a chain is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidKind {
    /// The full LS-monoid, implied by the bonds.
    LsType,
    /// Generated by the listed elements.
    Explicit(Vec<FanElement>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidDescription {
    pub chain: Chain,
    pub kind: MonoidKind,
}

impl MonoidDescription {
    pub fn contains(&self, a: &FanElement) -> bool {
        if !a.support_in_chain(&self.chain) || !a.is_nonnegative() {
            return false;
        }
        match &self.kind {
            MonoidKind::LsType => ls_member(a, &self.chain).unwrap_or(false),
            MonoidKind::Explicit(gens) => generated_by(a, gens, &mut BTreeMap::new()),
        }
    }

    /// Nonzero elements of degree at most `bound`.
    pub fn elements_up_to(&self, poset: &StratPoset, bound: u32) -> Vec<FanElement> {
        let n = poset.len();
        let mut out = match &self.kind {
            MonoidKind::LsType => ls_elements(poset, &self.chain, bound),
            MonoidKind::Explicit(gens) => {
                let b = Q::from_integer(bound.into());
                let mut seen: BTreeSet<Vec<Q>> = BTreeSet::new();
                let mut frontier = vec![FanElement::zero(n)];
                while let Some(x) = frontier.pop() {
                    for g in gens {
                        let y = &x + g;
                        if degree(&y, poset) <= b && seen.insert(y.coords.clone()) {
                            frontier.push(y);
                        }
                    }
                }
                seen.into_iter().map(FanElement::from_coords).collect()
            }
        };
        out.retain(|e| !e.is_zero());
        out
    }
}

fn generated_by(a: &FanElement, gens: &[FanElement], memo: &mut BTreeMap<Vec<Q>, bool>) -> bool {
    if a.is_zero() {
        return true;
    }
    if !a.is_nonnegative() {
        return false;
    }
    if let Some(&v) = memo.get(&a.coords) {
        return v;
    }
    let res = gens.iter().any(|g| {
        !g.is_zero() && {
            let rest = a - g;
            rest.is_nonnegative() && generated_by(&rest, gens, memo)
        }
    });
    memo.insert(a.coords.clone(), res);
    res
}

fn ls_elements(poset: &StratPoset, chain: &Chain, bound: u32) -> Vec<FanElement> {
    // walk the partial sums S_r <= S_{r-1} <= ... <= S_0 with S_k in (1/b_k)Z
    #[allow(clippy::too_many_arguments)]
    fn rec(
        poset: &StratPoset,
        chain: &Chain,
        k: usize,
        prev: &Q,
        deg_so_far: &Q,
        bound: &Q,
        sums: &mut Vec<Q>,
        out: &mut Vec<FanElement>,
    ) {
        let b = if k == 0 { 1 } else { chain.bond(k) };
        let bq = Q::from_integer(b.into());
        let delta = Q::from_integer(poset.degree(chain.element(k)).into());
        let mut s = (prev * &bq).ceil() / &bq;
        loop {
            let u = &s - prev;
            let d = deg_so_far + &u * &delta;
            if &d > bound {
                break;
            }
            sums.push(s.clone());
            if k == 0 {
                let r = chain.rank();
                let mut coords = Vec::with_capacity(r + 1);
                let mut last = Q::zero();
                for x in sums.iter() {
                    coords.push(x - &last);
                    last = x.clone();
                }
                out.push(FanElement::from_chain_coords(poset.len(), chain, &coords));
            } else {
                rec(poset, chain, k - 1, &s, &d, bound, sums, out);
            }
            sums.pop();
            s += Q::new(BigInt::one(), b.into());
        }
    }
    let mut out = Vec::new();
    let bound = Q::from_integer(bound.into());
    rec(
        poset,
        chain,
        chain.rank(),
        &Q::zero(),
        &Q::zero(),
        &bound,
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Bounded certificate for `L ∩ Q_{>=0} = Gamma_C` where `L` is the group
/// generated by the monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationCertificate {
    pub holds: bool,
    pub witness: Option<FanElement>,
    pub bound: u32,
    /// LS-monoids are saturated by definition; nothing was enumerated.
    pub by_construction: bool,
}

/// Checks that every nonnegative element of the generated group of degree at
/// most `bound` lies in the monoid. This is a bounded check, not a proof.
pub fn saturation_check(
    m: &MonoidDescription,
    poset: &StratPoset,
    bound: u32,
) -> SaturationCertificate {
    let gens = match &m.kind {
        MonoidKind::LsType => {
            return SaturationCertificate {
                holds: true,
                witness: None,
                bound,
                by_construction: true,
            }
        }
        MonoidKind::Explicit(g) => g,
    };
    let chain = &m.chain;
    let r1 = chain.rank() + 1;
    let denom = gens
        .iter()
        .flat_map(|g| g.chain_coords(chain))
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let dq = Q::from_integer(denom.clone());
    let to_int = |g: &FanElement| -> Vec<BigInt> {
        g.chain_coords(chain)
            .iter()
            .map(|c| (c * &dq).to_integer())
            .collect()
    };
    let lattice = IntLattice::new(gens.iter().map(to_int).collect(), r1);
    let degs: Vec<BigInt> = (0..r1)
        .map(|i| BigInt::from(poset.degree(chain.elements_top_down()[i])))
        .collect();
    let max_total = &denom * BigInt::from(bound);
    // points sorted by scaled degree, then lexicographically
    let mut points: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    enumerate_points(&degs, &max_total, &mut Vec::new(), &mut points);
    points.sort();
    let mut memo = BTreeMap::new();
    for (_, x) in points {
        if !lattice.contains(&x) {
            continue;
        }
        let coords: Vec<Q> = x.iter().map(|v| Q::new(v.clone(), denom.clone())).collect();
        let a = FanElement::from_chain_coords(poset.len(), chain, &coords);
        if !generated_by(&a, gens, &mut memo) {
            return SaturationCertificate {
                holds: false,
                witness: Some(a),
                bound,
                by_construction: false,
            };
        }
    }
    SaturationCertificate {
        holds: true,
        witness: None,
        bound,
        by_construction: false,
    }
}

fn enumerate_points(
    degs: &[BigInt],
    remaining: &BigInt,
    prefix: &mut Vec<BigInt>,
    out: &mut Vec<(BigInt, Vec<BigInt>)>,
) {
    let i = prefix.len();
    if i == degs.len() {
        let d = prefix.iter().zip(degs).map(|(x, w)| x * w).sum();
        out.push((d, prefix.clone()));
        return;
    }
    let mut x = BigInt::zero();
    loop {
        let used = &x * &degs[i];
        if &used > remaining {
            break;
        }
        prefix.push(x.clone());
        enumerate_points(degs, &(remaining - &used), prefix, out);
        prefix.pop();
        x += 1;
    }
}

/// Integer lattice in echelon form, for membership tests.
struct IntLattice {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntLattice {
    fn new(mut gens: Vec<Vec<BigInt>>, dim: usize) -> Self {
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..dim {
            // gcd elimination on column `col`
            loop {
                gens.retain(|g| g.iter().any(|x| !x.is_zero()));
                let mut nz: Vec<usize> = (0..gens.len())
                    .filter(|&i| !gens[i][col].is_zero())
                    .collect();
                if nz.len() <= 1 {
                    if let Some(&i) = nz.first() {
                        let mut row = gens.swap_remove(i);
                        if row[col].is_negative() {
                            row.iter_mut().for_each(|x| *x = -x.clone());
                        }
                        rows.push(row);
                        pivots.push(col);
                    }
                    break;
                }
                nz.sort_by(|&a, &b| gens[a][col].abs().cmp(&gens[b][col].abs()));
                let p = nz[0];
                let pivot = gens[p].clone();
                for &i in &nz[1..] {
                    let f = gens[i][col].div_floor(&pivot[col]);
                    for (x, y) in gens[i].iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
        }
        IntLattice { rows, pivots }
    }

    fn contains(&self, x: &[BigInt]) -> bool {
        let mut v = x.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let (q, r) = v[c].div_rem(&row[c]);
            if !r.is_zero() {
                return false;
            }
            for (a, b) in v.iter_mut().zip(row) {
                *a -= &q * b;
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

/// The fan of monoids with its indecomposable elements.
#[derive(Clone, Debug)]
pub struct FanOfMonoids {
    poset: StratPoset,
    lin: Linearization,
    monoids: Vec<MonoidDescription>,
    gens: Vec<FanElement>,
    names: Vec<String>,
    weights: Vec<u32>,
}

impl FanOfMonoids {
    /// Every chain carries its full LS-monoid; generators have degree one.
    pub fn ls_type(poset: StratPoset, lin: Linearization) -> Result<Self, FanError> {
        let report = poset.validate();
        if let Some(v) = report.failures.first() {
            return Err(FanError::InvalidPoset(v.to_string()));
        }
        if poset.elements().any(|p| poset.degree(p) != 1) {
            return Err(FanError::NotLsType);
        }
        let monoids = poset
            .maximal_chains()
            .into_iter()
            .map(|chain| MonoidDescription {
                chain,
                kind: MonoidKind::LsType,
            })
            .collect();
        Self::assemble(poset, lin, monoids, 1)
    }

    /// Monoids given by generators, one list per maximal chain in the order of
    /// [`StratPoset::maximal_chains`]. Indecomposables are searched up to `bound`.
    pub fn explicit(
        poset: StratPoset,
        lin: Linearization,
        generators: Vec<Vec<FanElement>>,
        bound: u32,
    ) -> Result<Self, FanError> {
        let report = poset.validate();
        if let Some(v) = report.failures.first() {
            return Err(FanError::InvalidPoset(v.to_string()));
        }
        let chains = poset.maximal_chains();
        if chains.len() != generators.len() {
            return Err(FanError::ChainCount {
                expected: chains.len(),
                got: generators.len(),
            });
        }
        for (chain, gens) in chains.iter().zip(&generators) {
            for g in gens {
                if !g.is_nonnegative()
                    || !g.support_in_chain(chain)
                    || !degree(g, &poset).is_positive()
                {
                    return Err(FanError::BadGenerator(g.display(&lin)));
                }
            }
        }
        let monoids = chains
            .into_iter()
            .zip(generators)
            .map(|(chain, g)| MonoidDescription {
                chain,
                kind: MonoidKind::Explicit(g),
            })
            .collect();
        Self::assemble(poset, lin, monoids, bound)
    }

    fn assemble(
        poset: StratPoset,
        lin: Linearization,
        monoids: Vec<MonoidDescription>,
        bound: u32,
    ) -> Result<Self, FanError> {
        let mut fan = FanOfMonoids {
            poset,
            lin,
            monoids,
            gens: Vec::new(),
            names: Vec::new(),
            weights: Vec::new(),
        };
        fan.gens = fan.indecomposables(bound);
        let mut weights = Vec::new();
        for g in &fan.gens {
            let d = degree(g, &fan.poset);
            match (d.is_integer(), d.to_integer().to_u32()) {
                (true, Some(w)) if w > 0 => weights.push(w),
                _ => return Err(FanError::NonIntegralDegree(g.display(&fan.lin))),
            }
        }
        fan.weights = weights;
        fan.names = fan
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| match g.support().as_slice() {
                [p] if g.coord(*p).is_one() => fan.poset.label(*p).to_string(),
                _ => format!("g{}", i + 1),
            })
            .collect();
        Ok(fan)
    }

    /// Replaces the generator names.
    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.gens.len(), "one name per generator");
        self.names = names;
        self
    }

    pub fn poset(&self) -> &StratPoset {
        &self.poset
    }

    pub fn linearization(&self) -> &Linearization {
        &self.lin
    }

    pub fn monoids(&self) -> &[MonoidDescription] {
        &self.monoids
    }

    pub fn chains(&self) -> impl Iterator<Item = &Chain> {
        self.monoids.iter().map(|m| &m.chain)
    }

    pub fn is_ls_type(&self) -> bool {
        self.monoids.iter().all(|m| m.kind == MonoidKind::LsType)
    }

    /// The indecomposable elements `u_1 >^t ... >^t u_m`.
    pub fn generators(&self) -> &[FanElement] {
        &self.gens
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Weighted degrees of the generators.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, a: &FanElement) -> Option<usize> {
        self.gens.iter().position(|g| g == a)
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|g| g == name)
    }

    /// Variables `y_<name>` of the presentation ring.
    pub fn variable_set(&self) -> VariableSet {
        VariableSet::new(self.names.iter().map(|n| format!("y_{n}")))
    }

    /// The order used on the presentation ring.
    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::weighted(self.weights.clone())
    }

    pub fn zero(&self) -> FanElement {
        FanElement::zero(self.poset.len())
    }

    pub fn unit(&self, label: &str) -> Option<FanElement> {
        self.poset
            .find(label)
            .map(|p| FanElement::unit(self.poset.len(), p))
    }

    pub fn degree(&self, a: &FanElement) -> Q {
        degree(a, &self.poset)
    }

    pub fn compare(&self, a: &FanElement, b: &FanElement) -> Ordering {
        lex_compare(a, b, &self.lin)
    }

    pub fn in_chain_monoid(&self, a: &FanElement, chain: usize) -> bool {
        self.monoids[chain].contains(a)
    }

    pub fn in_gamma(&self, a: &FanElement) -> bool {
        (0..self.monoids.len()).any(|c| self.in_chain_monoid(a, c))
    }

    /// Some maximal chain containing every given element.
    pub fn common_chain(&self, supports: &[ElemId]) -> Option<usize> {
        self.monoids
            .iter()
            .position(|m| supports.iter().all(|&p| m.chain.contains(p)))
    }

    /// Elements of `Gamma` of degree at most `bound`, nonzero, in decreasing order.
    pub fn gamma_elements(&self, bound: u32) -> Vec<FanElement> {
        let mut set: BTreeSet<Vec<Q>> = BTreeSet::new();
        for m in &self.monoids {
            for e in m.elements_up_to(&self.poset, bound) {
                set.insert(e.coords);
            }
        }
        let mut v: Vec<FanElement> = set.into_iter().map(FanElement::from_coords).collect();
        v.sort_by(|a, b| self.compare(b, a));
        v
    }

    /// Indecomposable elements of degree at most `bound`, in decreasing order.
    pub fn indecomposables(&self, bound: u32) -> Vec<FanElement> {
        let mut found: BTreeSet<Vec<Q>> = BTreeSet::new();
        for m in &self.monoids {
            let elems = m.elements_up_to(&self.poset, bound);
            let set: BTreeSet<&[Q]> = elems.iter().map(|e| e.coords()).collect();
            for e in &elems {
                let de = degree(e, &self.poset);
                let decomposable = elems.iter().any(|a1| {
                    if degree(a1, &self.poset) >= de {
                        return false;
                    }
                    let a2 = e - a1;
                    a2.is_nonnegative()
                        && set.contains(a2.coords())
                        && chained(a1, &a2, &self.poset)
                });
                if !decomposable {
                    found.insert(e.coords.clone());
                }
            }
        }
        let mut v: Vec<FanElement> = found.into_iter().map(FanElement::from_coords).collect();
        v.sort_by(|a, b| self.compare(b, a));
        v
    }

    /// Generator indices in increasing order for single variables.
    fn ascending_generators(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.gens.len()).collect();
        idx.sort_by_key(|&i| (self.weights[i], i));
        idx
    }

    /// The ordered decomposition of `a` into indecomposables, as generator indices.
    pub fn decompose(&self, a: &FanElement) -> Result<Vec<usize>, FanError> {
        if a.is_zero() {
            return Ok(Vec::new());
        }
        let chain = (0..self.monoids.len())
            .find(|&c| self.in_chain_monoid(a, c))
            .ok_or_else(|| FanError::NotInGamma(a.display(&self.lin)))?;
        match self.monoids[chain].kind {
            MonoidKind::LsType => self.peel_ls(a, &self.monoids[chain].chain),
            MonoidKind::Explicit(_) => self
                .search_decomposition(a, chain)
                .ok_or_else(|| FanError::NotInGamma(a.display(&self.lin))),
        }
    }

    /// Parts of the decomposition as elements.
    pub fn decompose_elements(&self, a: &FanElement) -> Result<Vec<FanElement>, FanError> {
        Ok(self
            .decompose(a)?
            .into_iter()
            .map(|i| self.gens[i].clone())
            .collect())
    }

    fn peel_ls(&self, a: &FanElement, chain: &Chain) -> Result<Vec<usize>, FanError> {
        let n = self.poset.len();
        let r = chain.rank();
        let mut rest = a.chain_coords(chain);
        let mut parts = Vec::new();
        let one = Q::one();
        while rest.iter().any(|c| !c.is_zero()) {
            // maximal j with u_r + ... + u_j >= 1
            let mut s = Q::zero();
            let mut j = None;
            for k in (0..=r).rev() {
                let before = s.clone();
                s += &rest[r - k];
                if s >= one {
                    j = Some((k, before));
                    break;
                }
            }
            let Some((j, before)) = j else {
                return Err(FanError::NotInGamma(a.display(&self.lin)));
            };
            let mut head = vec![Q::zero(); r + 1];
            for k in (j + 1)..=r {
                head[r - k] = rest[r - k].clone();
            }
            head[r - j] = &one - &before;
            for (x, h) in rest.iter_mut().zip(&head) {
                *x -= h;
            }
            let u = FanElement::from_chain_coords(n, chain, &head);
            let i = self
                .index_of(&u)
                .ok_or_else(|| FanError::NotIndecomposable(u.display(&self.lin)))?;
            parts.push(i);
        }
        Ok(parts)
    }

    /// Backtracking search for an ordered decomposition inside one chain monoid,
    /// trying indecomposables from the smallest variable up.
    pub fn search_decomposition(&self, a: &FanElement, chain: usize) -> Option<Vec<usize>> {
        if a.is_zero() {
            return Some(Vec::new());
        }
        let top = a.top(&self.poset)?;
        for i in self.ascending_generators() {
            let u = &self.gens[i];
            if u.top(&self.poset) != Some(top) || !u.support_in_chain(&self.monoids[chain].chain) {
                continue;
            }
            let rest = a - u;
            if !rest.is_nonnegative()
                || !chained(u, &rest, &self.poset)
                || !(rest.is_zero() || self.in_chain_monoid(&rest, chain))
            {
                continue;
            }
            if let Some(mut tail) = self.search_decomposition(&rest, chain) {
                tail.insert(0, i);
                return Some(tail);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::PosetBuilder;
    use crate::{q, qr};

    fn boolean2() -> StratPoset {
        PosetBuilder::new()
            .element("t", 1)
            .element("a", 1)
            .element("b", 1)
            .element("z", 1)
            .cover("t", "a", 1)
            .cover("t", "b", 1)
            .cover("a", "z", 1)
            .cover("b", "z", 1)
            .build()
            .unwrap()
    }

    #[test]
    fn hodge_fan_has_unit_generators_only() {
        let p = boolean2();
        let lin = p.canonical_linearization(&[]);
        let fan = FanOfMonoids::ls_type(p, lin).unwrap();
        assert_eq!(fan.generators().len(), 4);
        assert_eq!(fan.names(), &["t", "a", "b", "z"]);
    }

    #[test]
    fn point_with_semigroup() {
        let p = PosetBuilder::new().element("p", 1).build().unwrap();
        let lin = p.canonical_linearization(&[]);
        let g = |x| FanElement::from_coords(vec![q(x)]);
        let fan = FanOfMonoids::explicit(p.clone(), lin, vec![vec![g(2), g(3)]], 6).unwrap();
        assert_eq!(fan.generators(), &[g(3), g(2)]);
        assert_eq!(fan.weights(), &[3, 2]);
        let cert = saturation_check(&fan.monoids()[0], &p, 5);
        assert!(!cert.holds);
        assert_eq!(cert.witness, Some(g(1)));
        assert!(fan.decompose(&g(1)).is_err());
    }

    #[test]
    fn ls_membership_on_bonds_212() {
        let p = PosetBuilder::new()
            .element("p3", 1)
            .element("p2", 1)
            .element("p1", 1)
            .element("p0", 1)
            .cover("p3", "p2", 2)
            .cover("p2", "p1", 1)
            .cover("p1", "p0", 2)
            .build()
            .unwrap();
        let chain = p.maximal_chains().remove(0);
        let e = |c: [Q; 4]| FanElement::from_chain_coords(4, &chain, &c);
        assert!(!ls_member(&e([qr(1, 2), q(0), q(0), q(0)]), &chain).unwrap());
        assert!(ls_member(&e([qr(1, 2), qr(1, 2), q(0), q(0)]), &chain).unwrap());
        assert!(ls_member(&e([q(0), q(0), qr(1, 2), qr(1, 2)]), &chain).unwrap());
        assert!(ls_member(&e([q(2), q(0), q(1), q(5)]), &chain).unwrap());
        assert!(!ls_member(&e([q(0), q(0), qr(1, 2), q(0)]), &chain).unwrap());
    }

    #[test]
    fn lattice_membership() {
        let l = IntLattice::new(
            vec![
                vec![BigInt::from(2), BigInt::from(0)],
                vec![BigInt::from(1), BigInt::from(1)],
            ],
            2,
        );
        assert!(l.contains(&[BigInt::from(3), BigInt::from(1)]));
        assert!(!l.contains(&[BigInt::from(1), BigInt::from(0)]));
    }
}
