use std::cmp::Ordering;

use seshadri_core::linalg::kernel;
use seshadri_core::poly::{
    buchberger, is_groebner, is_reduced, normal_form, Monomial, MonomialOrder, Polynomial,
    VariableSet,
};
use seshadri_core::sl3::Sl3Instance;
use seshadri_core::{q, Q};

fn m(e: &[u32]) -> Monomial {
    Monomial::from_exponents(e.to_vec())
}

#[test]
fn order_examples() {
    let ord = MonomialOrder::unit_weighted(3);
    // same degree: first differing exponent smaller wins
    assert_eq!(ord.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    assert_eq!(ord.cmp(&m(&[0, 0, 1]), &m(&[2, 0, 0])), Ordering::Less);
    assert_eq!(ord.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    let w = MonomialOrder::weighted(vec![1, 2, 1]);
    assert_eq!(w.cmp(&m(&[0, 1, 0]), &m(&[1, 0, 0])), Ordering::Greater);
    assert!(w.compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
}

#[test]
fn parse_and_format() {
    let vars = VariableSet::new(["y_a", "y_b", "y_c"]);
    let ord = MonomialOrder::unit_weighted(3);
    let p = vars.parse("y_a y_b - 2 y_c^2 + 1/2 y_a^2").unwrap();
    assert_eq!(vars.parse(&vars.format(&p, &ord)).unwrap(), p);
    assert!(vars.parse("y_d").is_err());
    assert!(vars.parse("y_a +").is_err());
    assert_eq!(vars.parse("2 y_a").unwrap(), vars.parse("2 * y_a").unwrap());
    assert_eq!(vars.format(&Polynomial::zero(3), &ord), "0");
}

#[test]
fn sl3_normal_forms() {
    let inst = Sl3Instance::build().unwrap();
    let fan = &inst.fan;
    let vars = fan.variable_set();
    let ord = fan.order();
    let pres = seshadri_core::fan_algebra::presentation_ideal(fan, 2).unwrap();
    let gb = pres.groebner_basis();
    assert_eq!(gb.len(), 9);
    let f = vars.parse("y_s2s1 y_s1s2").unwrap();
    assert!(normal_form(&f, &gb.polys, &ord).is_zero());
    let f = vars.parse("y_id^3").unwrap();
    assert_eq!(normal_form(&f, &gb.polys, &ord), f);
}

/// Quadrics vanishing on `(s^3, s^2 t, s t^2, t^3)`, found by linear algebra.
fn twisted_cubic_kernel_dim() -> usize {
    let quads: Vec<(usize, usize)> = (0..4).flat_map(|i| (i..4).map(move |j| (i, j))).collect();
    // y_i -> s^{3-i} t^i; degree 6 images are indexed by the power of t
    let mut mat = vec![vec![q(0); quads.len()]; 7];
    for (col, (i, j)) in quads.iter().enumerate() {
        mat[i + j][col] = q(1);
    }
    kernel(&mat, quads.len()).len()
}

#[test]
fn twisted_cubic() {
    let vars = VariableSet::new(["y0", "y1", "y2", "y3"]);
    let gens: Vec<Polynomial> = ["y0 y2 - y1^2", "y1 y3 - y2^2", "y0 y3 - y1 y2"]
        .iter()
        .map(|s| vars.parse(s).unwrap())
        .collect();
    for ord in [MonomialOrder::DegRevLex, MonomialOrder::unit_weighted(4)] {
        let gb = buchberger(&gens, &ord);
        assert_eq!(gb.len(), twisted_cubic_kernel_dim());
        assert!(is_groebner(&gb.polys, &ord).is_ok());
        assert!(is_reduced(&gb.polys, &ord));
    }
    let gb = buchberger(&gens, &MonomialOrder::Lex);
    assert!(is_groebner(&gb.polys, &MonomialOrder::Lex).is_ok());
}

#[test]
fn zero_ideal() {
    let gb = buchberger(&[], &MonomialOrder::DegRevLex);
    assert!(gb.is_empty());
    let gb = buchberger(&[Polynomial::zero(2)], &MonomialOrder::DegRevLex);
    assert!(gb.is_empty());
}

#[test]
fn unit_ideal() {
    let vars = VariableSet::new(["x", "y"]);
    let gens = [vars.parse("x - 1").unwrap(), vars.parse("x").unwrap()];
    let gb = buchberger(&gens, &MonomialOrder::DegRevLex);
    assert_eq!(
        gb.polys,
        vec![Polynomial::constant(2, Q::from_integer(1.into()))]
    );
}

#[test]
fn substitution() {
    let vars = VariableSet::new(["x", "y"]);
    let p = vars.parse("x^2 - y").unwrap();
    let images = [vars.parse("y").unwrap(), vars.parse("y^2").unwrap()];
    assert!(p.substitute(&images).is_zero());
    let p = vars.parse("x y + y^2").unwrap();
    assert_eq!(p.restrict_to_zero(&[0]), vars.parse("y^2").unwrap());
    assert_eq!(p.min_exponent(1), Some(1));
}
