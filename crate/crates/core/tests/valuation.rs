use seshadri_core::fan_algebra::presentation_ideal;
use seshadri_core::poly::GroebnerBasis;
use seshadri_core::sl3::Sl3Instance;
use seshadri_core::toric::ToricInstance;
use seshadri_core::valuation::{
    lift_groebner_basis, lift_relation, subduct, QuasiValuationBackend, RingElement, TableBackend,
    ValuationError,
};
use seshadri_core::{q, qr};

const LIFTED: [&str; 9] = [
    "y_s1s2 y_s2s1 - y_w0 y_pi1 - y_w0 y_pi2",
    "y_s1s2 y_pi1 - y_w0 y_s1",
    "y_pi2^2 - y_s1s2 y_s2 + y_w0 y_id",
    "y_pi2 y_s2s1 - y_w0 y_s2",
    "y_pi2 y_pi1 - y_w0 y_id",
    "y_pi2 y_s1 - y_s1s2 y_id",
    "y_pi1^2 - y_s2s1 y_s1 + y_w0 y_id",
    "y_pi1 y_s2 - y_s2s1 y_id",
    "y_s1 y_s2 - y_pi1 y_id - y_pi2 y_id",
];

fn shown(inst: &Sl3Instance, gb: &GroebnerBasis) -> Vec<String> {
    let vars = inst.fan.variable_set();
    let mut p = gb.polys.clone();
    p.sort_by(|a, b| {
        gb.order.cmp(
            a.leading_monomial(&gb.order).unwrap(),
            b.leading_monomial(&gb.order).unwrap(),
        )
    });
    p.iter().map(|x| vars.format(x, &gb.order)).collect()
}

#[test]
fn subduct_s1_s2() {
    let inst = Sl3Instance::build().unwrap();
    let b = inst.chart_backend();
    let f = inst.element("y_s1 y_s2").unwrap();
    let res = subduct(&f, &b).unwrap();
    assert!(res.residual_zero);
    let vars = inst.fan.variable_set();
    let p = res.as_polynomial(inst.fan.generators().len());
    assert_eq!(p, vars.parse("y_pi1 y_id + y_pi2 y_id").unwrap());
    // values strictly increase
    for w in res.terms.windows(2) {
        assert_eq!(
            inst.fan.compare(&w[0].value, &w[1].value),
            std::cmp::Ordering::Less
        );
    }
}

#[test]
fn subduct_product() {
    let inst = Sl3Instance::build().unwrap();
    let b = inst.chart_backend();
    let f = inst.element("y_s2s1 y_s1s2").unwrap();
    let res = subduct(&f, &b).unwrap();
    let vars = inst.fan.variable_set();
    assert_eq!(
        res.as_polynomial(inst.fan.generators().len()),
        vars.parse("y_w0 y_pi1 + y_w0 y_pi2").unwrap()
    );
    let lin = inst.fan.linearization();
    assert_eq!(
        res.terms[0].value.ordered_coords(lin),
        [q(1), q(0), qr(1, 2), qr(1, 2), q(0), q(0)]
    );
}

#[test]
fn standard_monomials_subduct_to_themselves() {
    let inst = Sl3Instance::build().unwrap();
    let b = inst.chart_backend();
    let f = inst.element("y_w0 y_pi1").unwrap();
    let res = subduct(&f, &b).unwrap();
    assert_eq!(res.terms.len(), 1);
    assert_eq!(res.terms[0].coefficient, q(1));
}

#[test]
fn sl3_lift_with_both_backends() {
    let inst = Sl3Instance::build().unwrap();
    let pres = presentation_ideal(&inst.fan, 2).unwrap();
    let gb = pres.groebner_basis();
    let chart = lift_groebner_basis(&gb, &inst.chart_backend()).unwrap();
    assert_eq!(shown(&inst, &chart.basis), LIFTED);
    let basis = lift_groebner_basis(&gb, &inst.basis_backend(3).unwrap()).unwrap();
    assert_eq!(shown(&inst, &basis.basis), LIFTED);
    for r in &chart.relations {
        assert!(r.trace.residual_zero);
    }
}

#[test]
fn lift_rejects_non_relation() {
    let inst = Sl3Instance::build().unwrap();
    let p = inst.fan.variable_set().parse("y_w0 y_id").unwrap();
    assert!(matches!(
        lift_relation(&p, &inst.chart_backend()),
        Err(ValuationError::NotInIdeal(_))
    ));
}

#[test]
fn lift_of_empty_basis_is_empty() {
    let inst = Sl3Instance::build().unwrap();
    let gb = GroebnerBasis {
        polys: Vec::new(),
        order: inst.fan.order(),
        reduced: true,
    };
    let r = lift_groebner_basis(&gb, &inst.chart_backend()).unwrap();
    assert!(r.basis.is_empty());
}

#[test]
fn toric_lift_is_identity() {
    let t = ToricInstance::build().unwrap();
    let pres = presentation_ideal(&t.fan, 2).unwrap();
    let gb = pres.groebner_basis();
    let b = t.basis_backend(3).unwrap();
    let r = lift_groebner_basis(&gb, &b).unwrap();
    assert_eq!(r.basis.polys, gb.polys);
}

#[test]
fn toric_valuation_matches_formula() {
    let t = ToricInstance::build().unwrap();
    let b = t.basis_backend(3).unwrap();
    let vars = t.fan.variable_set();
    for (text, a) in [
        ("y_x1 y_x2", [1, 1, 0, 0, 0, 0]),
        ("y_x2 y_x5", [0, 1, 0, 0, 1, 0]),
        ("y_x6^3", [0, 0, 0, 0, 0, 3]),
    ] {
        let g = RingElement::new(vars.parse(text).unwrap(), t.fan.weights()).unwrap();
        assert_eq!(b.quasi_valuation(&g).unwrap(), t.valuation(a));
    }
}

#[test]
fn table_backend() {
    let t = ToricInstance::build().unwrap();
    let table = t.fan.generators().iter().map(|g| vec![g.clone()]).collect();
    let b = TableBackend::new(t.fan.clone(), table);
    let vars = t.fan.variable_set();
    let g = RingElement::new(vars.parse("y_x2^2").unwrap(), t.fan.weights()).unwrap();
    assert_eq!(
        b.quasi_valuation(&g).unwrap(),
        t.valuation([0, 2, 0, 0, 0, 0])
    );
    let g = RingElement::new(vars.parse("y_x2^2 - y_x1 y_x3").unwrap(), t.fan.weights()).unwrap();
    assert_eq!(b.quasi_valuation(&g), Err(ValuationError::NotMonomial));
    assert!(matches!(
        b.chain_valuation(&g, 3),
        Err(ValuationError::NoSuchChain(3))
    ));
}

#[test]
fn inhomogeneous_elements_are_rejected() {
    let inst = Sl3Instance::build().unwrap();
    assert!(inst.element("y_w0 + y_w0 y_id").is_err());
}
