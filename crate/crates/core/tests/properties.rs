use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_integer::Integer;
use proptest::prelude::*;
use seshadri_core::fan::{chained, lex_compare, FanElement};
use seshadri_core::fan_algebra::{
    monomial_word, phi, presentation_ideal, straighten, straighten_by_rewriting,
};
use seshadri_core::gorenstein::{gorenstein_check, iota_embedding, LinearBondData};
use seshadri_core::poly::{
    normal_form, GroebnerBasis, Monomial, MonomialOrder, Polynomial, VariableSet,
};
use seshadri_core::sl3::Sl3Instance;
use seshadri_core::toric::{bond_data, toric_example_valuation, ToricInstance};
use seshadri_core::valuation::{
    subduct, BasisExpansionBackend, ChartBackend, QuasiValuationBackend, RingElement,
};
use seshadri_core::{q, Q};

struct Sl3Fixture {
    inst: Sl3Instance,
    chart: ChartBackend,
    basis: BasisExpansionBackend,
    gb: GroebnerBasis,
}

fn sl3() -> &'static Sl3Fixture {
    static CELL: OnceLock<Sl3Fixture> = OnceLock::new();
    CELL.get_or_init(|| {
        let inst = Sl3Instance::build().unwrap();
        let chart = inst.chart_backend();
        let basis = inst.basis_backend(3).unwrap();
        let gb = presentation_ideal(&inst.fan, 2).unwrap().groebner_basis();
        Sl3Fixture {
            inst,
            chart,
            basis,
            gb,
        }
    })
}

fn monomial(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..4, n).prop_map(Monomial::from_exponents)
}

fn polynomial(n: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-5i64..=5, 1i64..=3, monomial(n)), 0..5).prop_map(move |ts| {
        Polynomial::from_terms(
            n,
            ts.into_iter()
                .map(|(a, b, m)| (Q::new(a.into(), b.into()), m)),
        )
    })
}

/// Homogeneous element of degree `d` in the SL3 generators, possibly zero.
fn sl3_element(d: u32) -> impl Strategy<Value = Polynomial> {
    let monos = seshadri_core::fan_algebra::monomials_of_degree(&[1; 8], d);
    let k = monos.len();
    prop::collection::vec((0..k, -3i64..=3), 1..4).prop_map(move |ts| {
        Polynomial::from_terms(8, ts.into_iter().map(|(i, c)| (q(c), monos[i].clone())))
    })
}

fn ring(p: Polynomial) -> RingElement {
    RingElement::new(p, &[1; 8]).unwrap()
}

fn fan_element(n: usize) -> impl Strategy<Value = FanElement> {
    prop::collection::vec((0i64..6, 1i64..=2), n).prop_map(|v| {
        FanElement::from_coords(
            v.into_iter()
                .map(|(a, b)| Q::new(a.into(), b.into()))
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn polynomial_text_round_trip(p in polynomial(3)) {
        let vars = VariableSet::new(["y_a", "y_b", "y_c"]);
        for ord in [MonomialOrder::unit_weighted(3), MonomialOrder::Lex, MonomialOrder::DegRevLex] {
            let s = vars.format(&p, &ord);
            prop_assert_eq!(vars.parse(&s).unwrap(), p.clone());
        }
    }

    #[test]
    fn order_axioms(a in monomial(4), b in monomial(4), c in monomial(4), w in prop::collection::vec(1u32..4, 4)) {
        for ord in [MonomialOrder::weighted(w.clone()), MonomialOrder::Lex, MonomialOrder::DegRevLex] {
            let ab = ord.cmp(&a, &b);
            prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Greater && ord.cmp(&b, &c) == Ordering::Greater {
                prop_assert_eq!(ord.cmp(&a, &c), Ordering::Greater);
            }
            prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert_ne!(ord.cmp(&a.mul(&c), &a), Ordering::Less);
        }
    }

    /// With unit weights the order is degree reverse lexicographic on the
    /// reversed variables.
    #[test]
    fn weighted_order_is_reversed_revlex(a in monomial(5), b in monomial(5)) {
        let rev = |m: &Monomial| {
            let mut e = m.exponents().to_vec();
            e.reverse();
            Monomial::from_exponents(e)
        };
        prop_assert_eq!(
            MonomialOrder::unit_weighted(5).cmp(&a, &b),
            MonomialOrder::DegRevLex.cmp(&rev(&a), &rev(&b))
        );
    }

    #[test]
    fn normal_form_is_fixed(p in polynomial(8)) {
        let f = sl3();
        let nf = normal_form(&p, &f.gb.polys, &f.gb.order);
        prop_assert_eq!(normal_form(&nf, &f.gb.polys, &f.gb.order), nf.clone());
        // difference lies in the ideal
        prop_assert!(f.gb.contains(&(&p - &nf)));
    }

    #[test]
    fn lex_compare_is_translation_invariant(a in fan_element(6), b in fan_element(6), c in fan_element(6)) {
        let f = sl3();
        let lin = f.inst.fan.linearization();
        prop_assert_eq!(lex_compare(&(&a + &c), &(&b + &c), lin), lex_compare(&a, &b, lin));
        let poset = f.inst.fan.poset();
        let d = seshadri_core::fan::degree;
        prop_assert_eq!(d(&(&a + &b), poset), d(&a, poset) + d(&b, poset));
    }

    #[test]
    fn straightening_is_confluent(word in prop::collection::vec(0usize..8, 0..=4), schedule in prop::collection::vec(0usize..16, 8)) {
        let fan = &sl3().inst.fan;
        let direct = straighten(fan, &word).unwrap();
        let mut k = 0;
        let (res, steps) = straighten_by_rewriting(fan, &word, |n| {
            k += 1;
            schedule[k % schedule.len()] % n
        }).unwrap();
        prop_assert_eq!(res, direct);
        prop_assert!(steps.iter().all(|s| s.head_increased != Some(false)));
    }

    #[test]
    fn gorenstein_reversal_regression(bonds in prop::collection::vec(1u32..6, 0..5)) {
        let direct = |b: &[u32]| -> bool {
            let r = b.len();
            let bb = |k: usize| if k == 0 || k > r { 1u64 } else { u64::from(b[k - 1]) };
            let m: Vec<u64> = (0..=r).map(|k| bb(k).lcm(&bb(k + 1))).collect();
            let l = m.iter().fold(1u64, |acc, x| acc.lcm(x));
            (0..=r).all(|k| (bb(k) * (k..=r).map(|j| l / m[j]).sum::<u64>()) % l == 0)
        };
        let mut rev = bonds.clone();
        rev.reverse();
        for b in [bonds, rev] {
            prop_assert_eq!(gorenstein_check(&LinearBondData::new(b.clone()).unwrap()), direct(&b));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn quasi_valuation_laws(f in (1u32..=3).prop_flat_map(sl3_element), g in (1u32..=3).prop_flat_map(sl3_element), d in 1u32..=3) {
        let fx = sl3();
        let b = &fx.chart;
        let fan = &fx.inst.fan;
        let (fr, gr) = (ring(f), ring(g));
        prop_assume!(!b.is_zero(&fr).unwrap() && !b.is_zero(&gr).unwrap());
        let vf = b.quasi_valuation(&fr).unwrap();
        let vg = b.quasi_valuation(&gr).unwrap();
        prop_assert!(vf.is_nonnegative());
        prop_assert_eq!(fan.degree(&vf), q(fr.degree() as i64));
        let vfg = b.quasi_valuation(&fr.mul(&gr)).unwrap();
        let sum = &vf + &vg;
        prop_assert_ne!(fan.compare(&vfg, &sum), Ordering::Less);
        let common = (0..fan.monoids().len()).any(|c| {
            b.chain_valuation(&fr, c).unwrap() == vf && b.chain_valuation(&gr, c).unwrap() == vg
        });
        if common {
            prop_assert_eq!(vfg, sum);
        }
        // sums of equal degree
        let top = fr.degree().max(gr.degree()) as u32 + d;
        let pad = |x: &RingElement, var: usize| {
            x.mul(&ring(Polynomial::var(8, var).pow(top - x.degree() as u32)))
        };
        let (h, k) = (pad(&fr, 7), pad(&gr, 0));
        let (vh, vk) = (b.quasi_valuation(&h).unwrap(), b.quasi_valuation(&k).unwrap());
        let s = h.sub_scaled(&q(-1), &k);
        if !b.is_zero(&s).unwrap() {
            let vs = b.quasi_valuation(&s).unwrap();
            let min = if fan.compare(&vh, &vk) == Ordering::Less { vh.clone() } else { vk.clone() };
            prop_assert_ne!(fan.compare(&vs, &min), Ordering::Less);
            if vh != vk {
                prop_assert_eq!(vs, min);
            }
        }
    }
}

#[test]
fn straightening_all_short_words() {
    let fan = &sl3().inst.fan;
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..4 {
        let next: Vec<Vec<usize>> = words
            .iter()
            .filter(|w| w.len() == words.last().unwrap().len())
            .flat_map(|w| {
                (0..8).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
        words.extend(next);
    }
    for w in &words {
        let direct = straighten(fan, w).unwrap();
        for first in [true, false] {
            let (res, steps) =
                straighten_by_rewriting(fan, w, |n| if first { 0 } else { n - 1 }).unwrap();
            assert_eq!(res, direct, "{w:?}");
            assert!(steps.iter().all(|s| s.head_increased != Some(false)));
        }
    }
}

#[test]
fn decompose_round_trip() {
    let fans = [sl3().inst.fan.clone(), ToricInstance::build().unwrap().fan];
    for fan in &fans {
        let gens: BTreeSet<&[Q]> = fan.generators().iter().map(|g| g.coords()).collect();
        for a in fan.gamma_elements(4) {
            let parts = fan.decompose_elements(&a).unwrap();
            let sum = parts.iter().fold(fan.zero(), |acc, p| &acc + p);
            assert_eq!(sum, a);
            assert!(parts.iter().all(|p| gens.contains(p.coords())));
            for w in parts.windows(2) {
                assert!(chained(&w[0], &w[1], fan.poset()));
            }
        }
    }
}

#[test]
fn order_reversal() {
    let fan = &sl3().inst.fan;
    let m = fan.generators().len();
    let ord = fan.order();
    let elems = fan.gamma_elements(3);
    let exps: Vec<Monomial> = elems
        .iter()
        .map(|a| {
            let mut e = vec![0u32; m];
            for i in fan.decompose(a).unwrap() {
                e[i] += 1;
            }
            Monomial::from_exponents(e)
        })
        .collect();
    let mut pairs = 0;
    for (a, ea) in elems.iter().zip(&exps) {
        for (b, eb) in elems.iter().zip(&exps) {
            if fan.degree(a) == fan.degree(b) && fan.compare(a, b) == Ordering::Greater {
                assert_eq!(ord.cmp(ea, eb), Ordering::Less);
                pairs += 1;
            }
        }
    }
    assert!(pairs > 0);
}

#[test]
fn phi_kills_presentation() {
    for fan in [sl3().inst.fan.clone(), ToricInstance::build().unwrap().fan] {
        let pres = presentation_ideal(&fan, 3).unwrap();
        for g in &pres.generators {
            assert!(phi(&fan, g).unwrap().is_empty());
            let _ = monomial_word(g.leading_monomial(&pres.order).unwrap());
        }
    }
}

/// Full expansion and step-by-step peeling agree on degree two products.
#[test]
fn one_shot_matches_iterative() {
    let f = sl3();
    let m = f.inst.fan.generators().len();
    for i in 0..m {
        for j in i..m {
            let g =
                RingElement::generator(&f.inst.fan, i).mul(&RingElement::generator(&f.inst.fan, j));
            let steps = subduct(&g, &f.chart).unwrap();
            let iterative: BTreeMap<_, _> = steps
                .terms
                .iter()
                .map(|t| (t.monomial.clone(), t.coefficient.clone()))
                .collect();
            let one_shot: BTreeMap<_, _> = f.basis.expand(&g).unwrap().into_iter().collect();
            assert_eq!(iterative, one_shot, "{i} {j}");
            assert_eq!(subduct(&g, &f.basis).unwrap(), steps);
        }
    }
}

fn toric_ls_elements(bound: u32) -> Vec<FanElement> {
    let t = ToricInstance::build().unwrap();
    t.fan.gamma_elements(bound)
}

#[test]
fn iota_is_injective_homomorphism() {
    let t = ToricInstance::build().unwrap();
    let data = bond_data();
    let elems = toric_ls_elements(4);
    let iota = |a: &FanElement| iota_embedding(&a.chain_coords(&t.chain), &data).unwrap();
    let images: BTreeSet<Vec<u64>> = elems.iter().map(iota).collect();
    assert_eq!(images.len(), elems.len());
    let small = toric_ls_elements(2);
    for a in &small {
        for b in &small {
            let s: Vec<u64> = iota(a).iter().zip(iota(b)).map(|(x, y)| x + y).collect();
            assert_eq!(iota(&(a + b)), s);
        }
    }
}

#[test]
fn toric_valuation_injective_on_normal_monomials() {
    let mut seen = BTreeMap::new();
    for a1 in 0..=4u32 {
        for a3 in 0..=4u32 {
            for a4 in 0..=4u32 {
                for a6 in 0..=4u32 {
                    for a2 in 0..=1u32 {
                        for a5 in 0..=1u32 {
                            let a = [a1, a2, a3, a4, a5, a6];
                            if a.iter().sum::<u32>() > 4 {
                                continue;
                            }
                            let v = toric_example_valuation(a);
                            assert!(seen.insert(v.to_vec(), a).is_none(), "{a:?}");
                            let b = [a6, a5, a4, a3, a2, a1];
                            let w = toric_example_valuation(b);
                            let vb: Vec<Q> = v.iter().zip(&w).map(|(x, y)| x + y).collect();
                            let ab: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                            assert_eq!(
                                toric_example_valuation(ab.try_into().unwrap()).to_vec(),
                                vb
                            );
                        }
                    }
                }
            }
        }
    }
}
