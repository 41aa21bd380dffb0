use seshadri_core::linalg::{mat_mul, mat_sub, Matrix};
use seshadri_core::poly::{Polynomial, VariableSet};
use seshadri_core::sl3::chart::{big_cell_chart, chart_evaluate, s2s1_cell_chart, vanishing_order};
use seshadri_core::sl3::lie::{AdjointRep, Perm, LONGEST_WORDS, WEYL_GROUP};
use seshadri_core::sl3::Sl3Instance;
use seshadri_core::valuation::{BasisExpansionBackend, QuasiValuationBackend};
use seshadri_core::{q, qr, Q};

fn bracket(a: &Matrix, b: &Matrix) -> Matrix {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

fn scaled(a: &Matrix, c: i64) -> Matrix {
    a.iter()
        .map(|r| r.iter().map(|x| x * q(c)).collect())
        .collect()
}

fn is_zero(a: &Matrix) -> bool {
    a.iter().flatten().all(|x| *x == q(0))
}

fn chain_value(inst: &Sl3Instance, text: &str, chain: &str) -> Vec<Q> {
    let b = inst.chart_backend();
    let c = inst.chain_index(chain).unwrap();
    let v = b.chain_valuation(&inst.element(text).unwrap(), c).unwrap();
    v.chain_coords(&inst.fan.monoids()[c].chain)
}

fn functional(inst: &Sl3Instance, name: &str) -> Vec<Q> {
    inst.functionals[inst.fan.index_of_name(name).unwrap()].clone()
}

#[test]
fn brackets() {
    let rep = AdjointRep::new();
    let cartan = [[2, -1], [-1, 2]];
    for i in 1..=2u8 {
        assert_eq!(bracket(rep.x_pos(i), rep.x_neg(i)), *rep.h(i));
        for j in 1..=2u8 {
            let a = cartan[usize::from(i - 1)][usize::from(j - 1)];
            assert_eq!(bracket(rep.h(i), rep.x_pos(j)), scaled(rep.x_pos(j), a));
            assert_eq!(bracket(rep.h(i), rep.x_neg(j)), scaled(rep.x_neg(j), -a));
            if i != j {
                assert!(is_zero(&bracket(rep.x_pos(i), rep.x_neg(j))));
                // Serre
                let e = rep.x_pos(i);
                assert!(is_zero(&bracket(e, &bracket(e, rep.x_pos(j)))));
                let f = rep.x_neg(i);
                assert!(is_zero(&bracket(f, &bracket(f, rep.x_neg(j)))));
            }
        }
    }
    assert_eq!(bracket(rep.x_pos(1), rep.x_pos(2)), *rep.x_beta());
    assert_eq!(bracket(rep.x_neg(2), rep.x_neg(1)), *rep.x_neg_beta());
}

#[test]
fn weyl_group() {
    assert_eq!(WEYL_GROUP.len(), 6);
    let w0 = Perm::from_word(LONGEST_WORDS[0]);
    assert_eq!(w0, Perm::from_word(LONGEST_WORDS[1]));
    assert_eq!(w0.length(), 3);
    for (_, word) in WEYL_GROUP {
        assert_eq!(Perm::from_word(word).length(), word.len());
    }
}

#[test]
fn extremal_vectors() {
    let rep = AdjointRep::new();
    let a = rep.extremal_vector(LONGEST_WORDS[0]);
    let b = rep.extremal_vector(LONGEST_WORDS[1]);
    assert_eq!(a, b);
    // lowest weight -rho
    assert_eq!(rep.weight(&a), Some([q(-1), q(-1)]));
    assert_eq!(rep.weight(&rep.highest_weight_vector()), Some([q(1), q(1)]));
    for (_, w) in WEYL_GROUP {
        let v = rep.extremal_vector(w);
        assert!(rep.weight(&v).is_some());
        assert_eq!(v.iter().filter(|x| **x != q(0)).count(), 1);
    }
}

#[test]
#[allow(clippy::needless_range_loop)]
fn path_vectors_have_weight_zero() {
    let inst = Sl3Instance::build().unwrap();
    for p in [&inst.path_vectors.pi1, &inst.path_vectors.pi2] {
        for i in 1..=2u8 {
            let h = inst.rep.h(i);
            for col in 0..8 {
                let s: Q = (0..8).map(|row| &p[row] * &h[row][col]).sum();
                assert_eq!(s, q(0));
            }
        }
        assert_eq!(p.iter().filter(|x| **x != q(0)).count(), 1);
    }
    // p_pi1 = -H2*, p_pi2 = H1*
    assert_eq!(inst.path_vectors.pi1[7], q(-1));
    assert_eq!(inst.path_vectors.pi2[6], q(1));
}

#[test]
fn big_cell_chart_values() {
    let inst = Sl3Instance::build().unwrap();
    let chart = big_cell_chart(&inst.rep);
    let vars = VariableSet::new(chart.params.clone());
    let p = chart_evaluate(&functional(&inst, "pi2"), &chart);
    assert_eq!(p, vars.parse("t1 y").unwrap());
    let w0 = chart_evaluate(&functional(&inst, "w0"), &chart);
    assert!(!w0.is_zero());
}

#[test]
fn s2s1_chart_values() {
    let inst = Sl3Instance::build().unwrap();
    let chart = s2s1_cell_chart(&inst.rep);
    let vars = VariableSet::new(chart.params.clone());
    let y = chart.param_index("y").unwrap();
    let s2 = chart_evaluate(&functional(&inst, "s2"), &chart);
    let s2s1 = chart_evaluate(&functional(&inst, "s2s1"), &chart);
    assert_eq!(s2, vars.parse("t1 y").unwrap());
    assert_eq!(s2s1, vars.parse("y^2").unwrap());
    assert_eq!(s2.pow(2), vars.parse("t1^2 y^2").unwrap());
    assert_eq!(s2s1.pow(2), vars.parse("y^4").unwrap());
    assert_eq!(vanishing_order(&s2s1, y).unwrap(), 2);
    assert_eq!(vanishing_order(&s2, y).unwrap(), 1);
    assert!(vanishing_order(&Polynomial::zero(2), y).is_err());
}

#[test]
fn chart_images_are_multiplicative() {
    let inst = Sl3Instance::build().unwrap();
    let b = inst.chart_backend();
    let names = ["w0", "pi1", "pi2", "s1", "s2s1", "id"];
    for c in 0..4 {
        for x in names {
            for y in names {
                let gx = inst.generator(x).unwrap();
                let gy = inst.generator(y).unwrap();
                assert_eq!(
                    b.image(&gx.mul(&gy), c),
                    &b.image(&gx, c) * &b.image(&gy, c)
                );
            }
        }
    }
}

#[test]
fn generator_values() {
    let inst = Sl3Instance::build().unwrap();
    assert_eq!(
        chain_value(&inst, "y_pi2", "c1"),
        [q(1), qr(-1, 2), qr(-1, 2), q(1)]
    );
    assert_eq!(chain_value(&inst, "y_s2s1", "c1"), [q(0), q(1), q(0), q(0)]);
    assert_eq!(
        chain_value(&inst, "y_s1s2", "c1"),
        [q(1), qr(-1, 2), qr(1, 2), q(0)]
    );
    // every generator takes its own value on some chain
    let b = inst.chart_backend();
    for (i, g) in inst.fan.generators().iter().enumerate() {
        let e = seshadri_core::valuation::RingElement::generator(&inst.fan, i);
        assert_eq!(&b.quasi_valuation(&e).unwrap(), g);
    }
}

#[test]
fn product_values() {
    let inst = Sl3Instance::build().unwrap();
    let prod = "y_s2s1 y_s1s2";
    assert_eq!(
        chain_value(&inst, prod, "c1"),
        [q(1), qr(1, 2), qr(1, 2), q(0)]
    );
    assert_eq!(
        chain_value(&inst, prod, "c2"),
        [q(1), qr(1, 2), qr(1, 2), q(0)]
    );
    // additive: (0,1,0,0) + (1,0,-1,1)
    assert_eq!(chain_value(&inst, prod, "c3"), [q(1), q(1), q(-1), q(1)]);
    assert_eq!(chain_value(&inst, prod, "c4"), [q(1), q(1), q(-1), q(1)]);
    let b = inst.chart_backend();
    let lin = inst.fan.linearization();
    let v = b.quasi_valuation(&inst.element(prod).unwrap()).unwrap();
    assert_eq!(
        v.ordered_coords(lin),
        [q(1), q(0), qr(1, 2), qr(1, 2), q(0), q(0)]
    );
    let diff = inst.element("y_s2s1 y_s1s2 - y_w0 y_pi1").unwrap();
    let v = b.quasi_valuation(&diff).unwrap();
    assert_eq!(
        v.ordered_coords(lin),
        [q(1), qr(1, 2), q(0), q(0), qr(1, 2), q(0)]
    );
    assert_eq!(
        chain_value(&inst, "y_s2s1 y_s1s2 - y_w0 y_pi1", "c1")[0],
        q(2)
    );
    assert_eq!(
        chain_value(&inst, "y_s2s1 y_s1s2 - y_w0 y_pi1", "c4")[0],
        q(2)
    );
}

#[test]
fn big_chart_is_injective_up_to_degree_three() {
    let inst = Sl3Instance::build().unwrap();
    let chart = big_cell_chart(&inst.rep);
    let images = inst
        .functionals
        .iter()
        .map(|f| chart_evaluate(f, &chart))
        .collect();
    let b = BasisExpansionBackend::new(inst.fan.clone(), images, 3).unwrap();
    assert_eq!(b.standard_monomials(3).unwrap().len(), 64);
}
