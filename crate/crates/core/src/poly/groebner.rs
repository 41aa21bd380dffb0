use alloc::vec::Vec;

use super::{MonomialOrder, Polynomial};
use crate::Q;

/// A list of polynomials together with the order it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub polys: Vec<Polynomial>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.polys, &self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Full reduction of `f` by `g`, trying divisors in list order.
pub fn normal_form(f: &Polynomial, g: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
    let leads: Vec<_> = g
        .iter()
        .filter_map(|p| p.leading_term(ord).map(|(m, c)| (m.clone(), c.clone(), p)))
        .collect();
    let mut p = f.clone();
    let mut r = Polynomial::zero(f.nvars());
    while let Some((m, c)) = p.leading_term(ord).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().find(|(lm, _, _)| lm.divides(&m)) {
            Some((lm, lc, gi)) => {
                let q = lm.quotient_of(&m).expect("divisibility checked");
                let factor: Q = -(c / lc);
                p.add_scaled(&factor, &q, gi);
            }
            None => {
                p.add_term(-c.clone(), m.clone());
                r.add_term(c, m);
            }
        }
    }
    r
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Polynomial {
    let (Some((fm, fc)), Some((gm, gc))) = (f.leading_term(ord), g.leading_term(ord)) else {
        return Polynomial::zero(f.nvars());
    };
    let l = fm.lcm(gm);
    let a = fm.quotient_of(&l).expect("lcm is a multiple");
    let b = gm.quotient_of(&l).expect("lcm is a multiple");
    let mut s = Polynomial::zero(f.nvars());
    s.add_scaled(&fc.recip(), &a, f);
    s.add_scaled(&-gc.recip(), &b, g);
    s
}

/// Buchberger's algorithm with the normal selection strategy; returns the
/// reduced basis.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder) -> GroebnerBasis {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        let r = normal_form(g, &basis, ord);
        if !r.is_zero() {
            basis.push(r.monic(ord));
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    loop {
        // normal strategy: smallest lcm degree, then pair index
        let pick = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| {
                let l = basis[i]
                    .leading_monomial(ord)
                    .expect("basis elements are nonzero")
                    .lcm(basis[j].leading_monomial(ord).expect("nonzero"));
                (ord.sugar(&l), j, i)
            })
            .map(|(k, _)| k);
        let Some(k) = pick else { break };
        let (i, j) = pairs.swap_remove(k);
        let (li, lj) = (
            basis[i].leading_monomial(ord).expect("nonzero"),
            basis[j].leading_monomial(ord).expect("nonzero"),
        );
        if li.coprime(lj) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], ord);
        let r = normal_form(&s, &basis, ord);
        if !r.is_zero() {
            let n = basis.len();
            basis.push(r.monic(ord));
            for i in 0..n {
                pairs.push((i, n));
            }
        }
    }
    GroebnerBasis {
        polys: reduce_basis(&basis, ord),
        order: ord.clone(),
        reduced: true,
    }
}

/// Minimal, interreduced, monic basis sorted by increasing leading monomial.
pub fn reduce_basis(basis: &[Polynomial], ord: &MonomialOrder) -> Vec<Polynomial> {
    let mut polys: Vec<Polynomial> = basis.iter().filter(|p| !p.is_zero()).cloned().collect();
    polys.sort_by(|a, b| {
        ord.cmp(
            a.leading_monomial(ord).expect("nonzero"),
            b.leading_monomial(ord).expect("nonzero"),
        )
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in polys {
        let lm = p.leading_monomial(ord).expect("nonzero").clone();
        if !minimal
            .iter()
            .any(|q| q.leading_monomial(ord).expect("nonzero").divides(&lm))
        {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let p = &minimal[i];
        let (lm, lc) = p.leading_term(ord).expect("nonzero");
        let head = Polynomial::term(lc.clone(), lm.clone());
        let tail = normal_form(&(p - &head), &others, ord);
        out.push((&head + &tail).monic(ord));
    }
    out
}

/// Checks that every S-polynomial reduces to zero; returns the first failing pair.
pub fn is_groebner(polys: &[Polynomial], ord: &MonomialOrder) -> Result<(), (usize, usize)> {
    for j in 0..polys.len() {
        for i in 0..j {
            let s = s_polynomial(&polys[i], &polys[j], ord);
            if !normal_form(&s, polys, ord).is_zero() {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

/// Leading coefficients are one and no term is divisible by another leading monomial.
pub fn is_reduced(polys: &[Polynomial], ord: &MonomialOrder) -> bool {
    polys.iter().enumerate().all(|(i, p)| {
        let Some((_, lc)) = p.leading_term(ord) else {
            return false;
        };
        if *lc != num_traits::One::one() {
            return false;
        }
        polys.iter().enumerate().all(|(j, q)| {
            if i == j {
                return true;
            }
            let lq = q.leading_monomial(ord).expect("nonzero");
            p.terms().all(|(m, _)| !lq.divides(m))
        })
    })
}

/// Whether the leading monomials of both bases generate the same monomial ideal.
pub fn initial_ideal_equal(g1: &GroebnerBasis, g2: &GroebnerBasis) -> bool {
    let l1: Vec<_> = g1
        .polys
        .iter()
        .filter_map(|p| p.leading_monomial(&g1.order))
        .collect();
    let l2: Vec<_> = g2
        .polys
        .iter()
        .filter_map(|p| p.leading_monomial(&g2.order))
        .collect();
    let covered = |a: &[&super::Monomial], b: &[&super::Monomial]| {
        a.iter().all(|m| b.iter().any(|d| d.divides(m)))
    };
    covered(&l1, &l2) && covered(&l2, &l1)
}
