//! Finite graded posets with bonds, chains and linearizations.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

/// Index of an element inside a [`StratPoset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element `{0}`")]
    UnknownLabel(String),
    #[error("cover `{0}>{1}` listed twice")]
    DuplicateCover(String, String),
    #[error("cover `{0}>{1}` has no bond")]
    MissingBond(String, String),
    #[error("bond given for `{0}>{1}` which is not a listed cover")]
    StrayBond(String, String),
    #[error("element `{0}` has no extremal degree")]
    MissingDegree(String),
    #[error("poset has no elements")]
    Empty,
}

/// The combinatorial data of a stratification: elements, covers, bonds and
/// the degrees of the extremal functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratPoset {
    labels: Vec<String>,
    covers: Vec<(ElemId, ElemId)>,
    bonds: BTreeMap<(ElemId, ElemId), u32>,
    degrees: Vec<u32>,
    below: Vec<Vec<ElemId>>,
    above: Vec<Vec<ElemId>>,
    // reach[p][q]: q <= p
    reach: Vec<Vec<bool>>,
    acyclic: bool,
}

/// Builder keyed by labels.
#[derive(Clone, Debug, Default)]
pub struct PosetBuilder {
    elements: Vec<(String, Option<u32>)>,
    covers: Vec<(String, String, Option<u32>)>,
    stray_bonds: Vec<(String, String)>,
}

impl PosetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an element with the degree of its extremal function.
    pub fn element(mut self, label: &str, degree: u32) -> Self {
        self.elements.push((label.to_string(), Some(degree)));
        self
    }

    /// Adds an element whose degree is supplied later (or never, which is an error).
    pub fn element_without_degree(mut self, label: &str) -> Self {
        self.elements.push((label.to_string(), None));
        self
    }

    /// Adds the cover `lower < upper` with its bond.
    pub fn cover(mut self, upper: &str, lower: &str, bond: u32) -> Self {
        self.covers
            .push((upper.to_string(), lower.to_string(), Some(bond)));
        self
    }

    pub fn cover_without_bond(mut self, upper: &str, lower: &str) -> Self {
        self.covers
            .push((upper.to_string(), lower.to_string(), None));
        self
    }

    pub fn stray_bond(mut self, upper: &str, lower: &str) -> Self {
        self.stray_bonds
            .push((upper.to_string(), lower.to_string()));
        self
    }

    pub fn build(self) -> Result<StratPoset, PosetError> {
        if self.elements.is_empty() {
            return Err(PosetError::Empty);
        }
        let mut index = BTreeMap::new();
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        for (label, deg) in &self.elements {
            if index.insert(label.clone(), ElemId(labels.len())).is_some() {
                return Err(PosetError::DuplicateLabel(label.clone()));
            }
            labels.push(label.clone());
            degrees.push(deg.ok_or_else(|| PosetError::MissingDegree(label.clone()))?);
        }
        let lookup = |l: &String| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| PosetError::UnknownLabel(l.clone()))
        };
        if let Some((p, q)) = self.stray_bonds.first() {
            return Err(PosetError::StrayBond(p.clone(), q.clone()));
        }
        let mut covers = Vec::new();
        let mut bonds = BTreeMap::new();
        for (p, q, b) in &self.covers {
            let (pi, qi) = (lookup(p)?, lookup(q)?);
            let b = b.ok_or_else(|| PosetError::MissingBond(p.clone(), q.clone()))?;
            if bonds.insert((pi, qi), b).is_some() {
                return Err(PosetError::DuplicateCover(p.clone(), q.clone()));
            }
            covers.push((pi, qi));
        }
        Ok(StratPoset::assemble(labels, covers, bonds, degrees))
    }
}

impl StratPoset {
    fn assemble(
        labels: Vec<String>,
        covers: Vec<(ElemId, ElemId)>,
        bonds: BTreeMap<(ElemId, ElemId), u32>,
        degrees: Vec<u32>,
    ) -> Self {
        let n = labels.len();
        let mut below = vec![Vec::new(); n];
        let mut above = vec![Vec::new(); n];
        for &(p, q) in &covers {
            below[p.0].push(q);
            above[q.0].push(p);
        }
        for list in below.iter_mut().chain(above.iter_mut()) {
            list.sort_by(|a, b| labels[a.0].cmp(&labels[b.0]));
        }
        let mut reach = vec![vec![false; n]; n];
        for (p, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![ElemId(p)];
            while let Some(x) = stack.pop() {
                if row[x.0] {
                    continue;
                }
                row[x.0] = true;
                stack.extend(below[x.0].iter().copied());
            }
        }
        let acyclic = covers.iter().all(|&(p, q)| p != q && !reach[q.0][p.0]);
        StratPoset {
            labels,
            covers,
            bonds,
            degrees,
            below,
            above,
            reach,
            acyclic,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> + '_ {
        (0..self.labels.len()).map(ElemId)
    }

    pub fn label(&self, p: ElemId) -> &str {
        &self.labels[p.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<ElemId> {
        self.labels.iter().position(|l| l == label).map(ElemId)
    }

    pub fn covers(&self) -> &[(ElemId, ElemId)] {
        &self.covers
    }

    /// Bond of the cover `q < p`, if `(p, q)` is a listed cover.
    pub fn bond(&self, p: ElemId, q: ElemId) -> Option<u32> {
        self.bonds.get(&(p, q)).copied()
    }

    /// Degree of the extremal function `f_p`.
    pub fn degree(&self, p: ElemId) -> u32 {
        self.degrees[p.0]
    }

    pub fn lower_covers(&self, p: ElemId) -> &[ElemId] {
        &self.below[p.0]
    }

    pub fn upper_covers(&self, p: ElemId) -> &[ElemId] {
        &self.above[p.0]
    }

    /// `q <= p` in the order generated by the covers.
    pub fn le(&self, q: ElemId, p: ElemId) -> bool {
        self.reach[p.0][q.0]
    }

    pub fn comparable(&self, p: ElemId, q: ElemId) -> bool {
        self.le(p, q) || self.le(q, p)
    }

    pub fn maximal_elements(&self) -> Vec<ElemId> {
        self.elements()
            .filter(|p| self.above[p.0].is_empty())
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<ElemId> {
        self.elements()
            .filter(|p| self.below[p.0].is_empty())
            .collect()
    }

    /// The unique maximal element of a valid poset.
    pub fn top(&self) -> Option<ElemId> {
        match self.maximal_elements().as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    /// Length of the longest chain from a minimal element up to `p`.
    pub fn length(&self, p: ElemId) -> usize {
        if !self.acyclic {
            return 0;
        }
        let mut memo = vec![None; self.len()];
        self.length_memo(p, &mut memo)
    }

    fn length_memo(&self, p: ElemId, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(l) = memo[p.0] {
            return l;
        }
        let l = self.below[p.0]
            .iter()
            .map(|&q| self.length_memo(q, memo) + 1)
            .max()
            .unwrap_or(0);
        memo[p.0] = Some(l);
        l
    }

    /// Checks the combinatorial invariants. Geometric axioms are reported as assumed.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let maxima = self.maximal_elements();
        if maxima.len() != 1 {
            failures.push(Violation::NoUniqueMaximum(
                maxima.iter().map(|&p| self.label(p).to_string()).collect(),
            ));
        }
        if !self.acyclic {
            failures.push(Violation::CoverCycle);
        } else {
            for &(p, q) in &self.covers {
                let shortcut = self.below[p.0].iter().any(|&r| r != q && self.le(q, r));
                if shortcut {
                    failures.push(Violation::NotACover(
                        self.label(p).to_string(),
                        self.label(q).to_string(),
                    ));
                }
            }
            let mut lengths = BTreeSet::new();
            for top in &maxima {
                self.collect_chain_lengths(*top, 0, &mut lengths);
            }
            if lengths.len() > 1 {
                failures.push(Violation::UnequalChainLengths(
                    lengths.into_iter().collect(),
                ));
            }
        }
        for (&(p, q), &b) in &self.bonds {
            if b == 0 {
                failures.push(Violation::ZeroBond(
                    self.label(p).to_string(),
                    self.label(q).to_string(),
                ));
            }
        }
        for p in self.elements() {
            if self.degree(p) == 0 {
                failures.push(Violation::ZeroDegree(self.label(p).to_string()));
            }
        }
        ValidationReport { failures }
    }

    fn collect_chain_lengths(&self, p: ElemId, depth: usize, out: &mut BTreeSet<usize>) {
        if self.below[p.0].is_empty() {
            out.insert(depth);
        }
        for &q in &self.below[p.0] {
            self.collect_chain_lengths(q, depth + 1, out);
        }
    }

    /// All maximal chains from the top element down to a minimal element, in
    /// lexicographic order of their label sequences.
    pub fn maximal_chains(&self) -> Vec<Chain> {
        let mut out = Vec::new();
        for top in self.maximal_elements() {
            let mut path = vec![top];
            self.chains_from(&mut path, &mut out);
        }
        let mut chains: Vec<Chain> = out
            .into_iter()
            .map(|elems| Chain::from_elements(self, elems))
            .collect();
        chains.sort_by(|a, b| {
            let la = a.elements_top_down().iter().map(|&p| self.label(p));
            let lb = b.elements_top_down().iter().map(|&p| self.label(p));
            la.cmp(lb)
        });
        chains
    }

    fn chains_from(&self, path: &mut Vec<ElemId>, out: &mut Vec<Vec<ElemId>>) {
        let last = *path.last().expect("path is never empty");
        if self.below[last.0].is_empty() {
            out.push(path.clone());
            return;
        }
        for &q in &self.below[last.0] {
            path.push(q);
            self.chains_from(path, out);
            path.pop();
        }
    }

    /// Elements grouped by length, longest first; each group sorted by label.
    fn levels(&self) -> Vec<Vec<ElemId>> {
        let mut by_len: BTreeMap<usize, Vec<ElemId>> = BTreeMap::new();
        for p in self.elements() {
            by_len.entry(self.length(p)).or_default().push(p);
        }
        by_len
            .into_values()
            .rev()
            .map(|mut v| {
                v.sort_by(|a, b| self.label(*a).cmp(self.label(*b)));
                v
            })
            .collect()
    }

    /// Iterates over all length preserving linearizations.
    pub fn length_preserving_linearizations(&self) -> Linearizations<'_> {
        let levels = self.levels();
        let perms = levels.iter().map(|l| (0..l.len()).collect()).collect();
        Linearizations {
            poset: self,
            levels,
            perms,
            done: false,
        }
    }

    /// The linearization ordering each level by `priority`, then by label.
    pub fn canonical_linearization(&self, priority: &[&str]) -> Linearization {
        let rank_of = |p: ElemId| {
            priority
                .iter()
                .position(|l| *l == self.label(p))
                .unwrap_or(usize::MAX)
        };
        let mut order = Vec::with_capacity(self.len());
        for mut level in self.levels() {
            level.sort_by(|a, b| {
                rank_of(*a)
                    .cmp(&rank_of(*b))
                    .then_with(|| self.label(*a).cmp(self.label(*b)))
            });
            order.extend(level);
        }
        Linearization::from_order(order)
    }

    /// Adds the artificial bottom element below all minimal elements.
    pub fn extended(&self) -> ExtendedPoset<'_> {
        let bottom_bonds = self
            .minimal_elements()
            .into_iter()
            .map(|p| (p, self.degree(p)))
            .collect();
        ExtendedPoset {
            base: self,
            bottom_bonds,
        }
    }

    /// Least common multiple of every bond, including the bottom bonds.
    pub fn bond_lcm(&self) -> u64 {
        self.extended().bond_lcm()
    }
}

/// A failed combinatorial invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoUniqueMaximum(Vec<String>),
    CoverCycle,
    NotACover(String, String),
    UnequalChainLengths(Vec<usize>),
    ZeroBond(String, String),
    ZeroDegree(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoUniqueMaximum(m) => {
                write!(f, "no unique maximal element (maximal: {})", m.join(", "))
            }
            Violation::CoverCycle => write!(f, "cover relation contains a cycle"),
            Violation::NotACover(p, q) => {
                write!(
                    f,
                    "`{p}>{q}` is implied by other covers and is not a covering relation"
                )
            }
            Violation::UnequalChainLengths(l) => {
                write!(f, "unequal maximal chain lengths {l:?}")
            }
            Violation::ZeroBond(p, q) => write!(f, "bond of `{p}>{q}` must be at least 1"),
            Violation::ZeroDegree(p) => write!(f, "extremal degree of `{p}` must be at least 1"),
        }
    }
}

/// Outcome of [`StratPoset::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<Violation>,
}

impl ValidationReport {
    /// Geometric axioms that cannot be checked from the combinatorial data.
    pub const ASSUMED: &'static str =
        "geometric axioms on the strata and extremal functions are assumed, not checked";

    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Poset with the artificial bottom element `p_-1`.
#[derive(Clone, Debug)]
pub struct ExtendedPoset<'a> {
    pub base: &'a StratPoset,
    /// `b_{p, p_-1} = deg f_p` for every minimal `p`.
    pub bottom_bonds: BTreeMap<ElemId, u32>,
}

impl ExtendedPoset<'_> {
    pub fn bond_lcm(&self) -> u64 {
        self.base
            .bonds
            .values()
            .chain(self.bottom_bonds.values())
            .fold(
                1u64,
                |acc, &b| if b == 0 { acc } else { acc.lcm(&u64::from(b)) },
            )
    }
}

/// A maximal chain `p_r > ... > p_0` with its bonds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    elems: Vec<ElemId>,
    // bonds[i] is the bond between elems[i] and elems[i + 1]
    bonds: Vec<u32>,
    bottom: u32,
}

impl Chain {
    fn from_elements(poset: &StratPoset, elems: Vec<ElemId>) -> Self {
        let bonds = elems
            .windows(2)
            .map(|w| poset.bond(w[0], w[1]).unwrap_or(0))
            .collect();
        let bottom = poset.degree(*elems.last().expect("chains are nonempty"));
        Chain {
            elems,
            bonds,
            bottom,
        }
    }

    /// Builds a chain from labels, top first. Fails if a step is not a cover.
    pub fn from_labels(poset: &StratPoset, labels: &[&str]) -> Option<Self> {
        let elems: Vec<ElemId> = labels
            .iter()
            .map(|l| poset.find(l))
            .collect::<Option<_>>()?;
        if elems.is_empty() || elems.windows(2).any(|w| poset.bond(w[0], w[1]).is_none()) {
            return None;
        }
        Some(Self::from_elements(poset, elems))
    }

    /// The rank `r`.
    pub fn rank(&self) -> usize {
        self.elems.len() - 1
    }

    pub fn elements_top_down(&self) -> &[ElemId] {
        &self.elems
    }

    /// `p_k` for `k = 0..=r`.
    pub fn element(&self, k: usize) -> ElemId {
        self.elems[self.rank() - k]
    }

    /// `b_k = b_{p_k, p_{k-1}}` for `k = 1..=r`; `b_0` is the bottom bond.
    pub fn bond(&self, k: usize) -> u32 {
        if k == 0 {
            self.bottom
        } else {
            self.bonds[self.rank() - k]
        }
    }

    pub fn contains(&self, p: ElemId) -> bool {
        self.elems.contains(&p)
    }

    /// Position `k` of `p` in the chain.
    pub fn position(&self, p: ElemId) -> Option<usize> {
        self.elems
            .iter()
            .position(|&x| x == p)
            .map(|i| self.rank() - i)
    }

    /// Labels joined by `>`, used as chain identifier in files.
    pub fn id(&self, poset: &StratPoset) -> String {
        let labels: Vec<&str> = self.elems.iter().map(|&p| poset.label(p)).collect();
        labels.join(">")
    }
}

/// A total order on the elements, stored largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linearization {
    order: Vec<ElemId>,
    rank: Vec<usize>,
}

impl Linearization {
    pub fn from_order(order: Vec<ElemId>) -> Self {
        let mut rank = vec![0; order.len()];
        for (i, p) in order.iter().enumerate() {
            rank[p.0] = i;
        }
        Linearization { order, rank }
    }

    /// Elements in decreasing order.
    pub fn order(&self) -> &[ElemId] {
        &self.order
    }

    /// Position in decreasing order; 0 is the largest element.
    pub fn position(&self, p: ElemId) -> usize {
        self.rank[p.0]
    }

    /// `p >^t q`.
    pub fn greater(&self, p: ElemId, q: ElemId) -> bool {
        self.rank[p.0] < self.rank[q.0]
    }

    /// Refines the partial order and puts longer elements first.
    pub fn is_length_preserving(&self, poset: &StratPoset) -> bool {
        poset.elements().all(|p| {
            poset.elements().all(|q| {
                let refines = p == q || !poset.le(q, p) || self.greater(p, q);
                let by_len = poset.length(p) <= poset.length(q) || self.greater(p, q);
                refines && by_len
            })
        })
    }
}

/// Iterator over length preserving linearizations, see
/// [`StratPoset::length_preserving_linearizations`].
pub struct Linearizations<'a> {
    poset: &'a StratPoset,
    levels: Vec<Vec<ElemId>>,
    perms: Vec<Vec<usize>>,
    done: bool,
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl Iterator for Linearizations<'_> {
    type Item = Linearization;

    fn next(&mut self) -> Option<Linearization> {
        if self.done || self.poset.is_empty() {
            return None;
        }
        let order = self
            .levels
            .iter()
            .zip(&self.perms)
            .flat_map(|(level, perm)| perm.iter().map(move |&i| level[i]))
            .collect();
        // advance like an odometer, last level fastest
        self.done = true;
        for perm in self.perms.iter_mut().rev() {
            if next_permutation(perm) {
                self.done = false;
                break;
            }
        }
        Some(Linearization::from_order(order))
    }
}
