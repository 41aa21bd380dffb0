//! Charts `z -> exp(z_1 X_1) ... exp(z_k X_k) v` with polynomial entries.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use super::lie::{weyl_element, AdjointRep, Perm, LONGEST_WORDS};
use super::Sl3Error;
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::poset::{Chain, StratPoset};
use crate::Q;

/// Product of one-parameter unipotent factors applied to a base vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartSpec {
    pub base: Vec<Q>,
    /// `(nilpotent operator, parameter index)`, leftmost factor first.
    pub factors: Vec<(Matrix, usize)>,
    pub params: Vec<String>,
}

fn apply(m: &Matrix, v: &[Polynomial]) -> Vec<Polynomial> {
    let n = v.first().map_or(0, Polynomial::nvars);
    m.iter()
        .map(|row| {
            let mut acc = Polynomial::zero(n);
            for (c, x) in row.iter().zip(v) {
                if !c.is_zero() {
                    acc = &acc + &x.scale(c);
                }
            }
            acc
        })
        .collect()
}

/// `exp(z X) v` for nilpotent `X`.
fn exp_apply(x: &Matrix, param: usize, v: Vec<Polynomial>) -> Vec<Polynomial> {
    let n = v.first().map_or(0, Polynomial::nvars);
    let z = Polynomial::var(n, param);
    let mut out = v.clone();
    let mut term = v;
    let mut k = 0i64;
    loop {
        k += 1;
        let next = apply(x, &term);
        if next.iter().all(Polynomial::is_zero) {
            return out;
        }
        let scale = Q::from_integer(k.into()).recip();
        term = next.iter().map(|p| (p * &z).scale(&scale)).collect();
        for (o, t) in out.iter_mut().zip(&term) {
            *o = &*o + t;
        }
    }
}

impl ChartSpec {
    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    /// The orbit vector with polynomial coordinates.
    pub fn vector(&self) -> Vec<Polynomial> {
        let n = self.nparams();
        let mut v: Vec<Polynomial> = self
            .base
            .iter()
            .map(|c| Polynomial::constant(n, c.clone()))
            .collect();
        for (x, p) in self.factors.iter().rev() {
            v = exp_apply(x, *p, v);
        }
        v
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }
}

/// A linear functional evaluated along the chart.
pub fn chart_evaluate(functional: &[Q], chart: &ChartSpec) -> Polynomial {
    evaluate_on(functional, &chart.vector(), chart.nparams())
}

pub(crate) fn evaluate_on(functional: &[Q], v: &[Polynomial], nparams: usize) -> Polynomial {
    let mut acc = Polynomial::zero(nparams);
    for (c, x) in functional.iter().zip(v) {
        if !c.is_zero() {
            acc = &acc + &x.scale(c);
        }
    }
    acc
}

/// Lowest exponent of `param` among the terms of `p`.
pub fn vanishing_order(p: &Polynomial, param: usize) -> Result<u32, Sl3Error> {
    p.min_exponent(param).ok_or(Sl3Error::ZeroPolynomial)
}

/// `exp(t1 X_beta) exp(t2 X_{alpha_2}) exp(y X_{-alpha_1}) v_{s2s1}`.
pub fn big_cell_chart(rep: &AdjointRep) -> ChartSpec {
    ChartSpec {
        base: rep.extremal_vector(&[2, 1]),
        factors: alloc::vec![
            (rep.x_beta().clone(), 0),
            (rep.x_pos(2).clone(), 1),
            (rep.x_neg(1).clone(), 2),
        ],
        params: ["t1", "t2", "y"].map(String::from).to_vec(),
    }
}

/// `exp(t1 X_{alpha_1}) exp(y X_{-alpha_2}) v_{s1}`, a chart of the stratum of `s2s1`.
pub fn s2s1_cell_chart(rep: &AdjointRep) -> ChartSpec {
    ChartSpec {
        base: rep.extremal_vector(&[1]),
        factors: alloc::vec![(rep.x_pos(1).clone(), 0), (rep.x_neg(2).clone(), 1)],
        params: ["t1", "y"].map(String::from).to_vec(),
    }
}

/// A reduced word of the longest element with every letter labelled by a
/// parameter `z_1..z_r`, such that the letters labelled `<= k` spell a
/// reduced word of `p_k`.
pub fn nested_chart(
    rep: &AdjointRep,
    poset: &StratPoset,
    chain: &Chain,
) -> Result<ChartSpec, Sl3Error> {
    let r = chain.rank();
    let targets: Vec<Perm> = (0..=r)
        .map(|k| {
            let label = poset.label(chain.element(k));
            weyl_element(label).ok_or_else(|| Sl3Error::UnknownWeylElement(label.to_string()))
        })
        .collect::<Result<_, _>>()?;
    for word in LONGEST_WORDS {
        if word.len() != r {
            continue;
        }
        for labels in permutations(r) {
            let ok = (0..=r).all(|k| {
                let sub: Vec<u8> = word
                    .iter()
                    .zip(&labels)
                    .filter(|(_, &l)| l < k)
                    .map(|(&i, _)| i)
                    .collect();
                let p = Perm::from_word(&sub);
                p == targets[k] && p.length() == k
            });
            if ok {
                return Ok(ChartSpec {
                    base: rep.highest_weight_vector(),
                    factors: word
                        .iter()
                        .zip(&labels)
                        .map(|(&i, &l)| (rep.x_neg(i).clone(), l))
                        .collect(),
                    params: (1..=r).map(|k| alloc::format!("z{k}")).collect(),
                });
            }
        }
    }
    Err(Sl3Error::NoNestedChart(chain.id(poset)))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}
