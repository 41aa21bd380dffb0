//! The flag variety of `SL_3` in the projectivized adjoint representation.

pub mod chart;
pub mod lie;

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

pub use chart::{
    big_cell_chart, chart_evaluate, nested_chart, s2s1_cell_chart, vanishing_order, ChartSpec,
};
pub use lie::{reduced_word, weyl_element, weyl_label, A2RootData, AdjointRep, Perm};

use crate::fan::{FanElement, FanError, FanOfMonoids};
use crate::linalg;
use crate::poly::Polynomial;
use crate::poset::{PosetBuilder, PosetError, StratPoset};
use crate::valuation::{
    subduct, BasisExpansionBackend, ChainChart, ChartBackend, RingElement, ValuationError,
};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Sl3Error {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error("`{0}` is not an element of the Weyl group")]
    UnknownWeylElement(String),
    #[error("no nested chart for chain {0}")]
    NoNestedChart(String),
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("no functional in the zero weight pencil has value {0}")]
    NoPathVector(String),
    #[error("vanishing conditions for {0} leave {1} free directions")]
    AmbiguousPathVector(String, usize),
    #[error("normalization failed: {0}")]
    Normalization(String),
}

/// Bruhat order with bonds.
pub const COVERS: [(&str, &str, u32); 8] = [
    ("w0", "s2s1", 1),
    ("w0", "s1s2", 1),
    ("s2s1", "s1", 2),
    ("s2s1", "s2", 1),
    ("s1s2", "s2", 2),
    ("s1s2", "s1", 1),
    ("s1", "id", 1),
    ("s2", "id", 1),
];

/// The four maximal chains, named `c1..c4`.
pub const NAMED_CHAINS: [(&str, [&str; 4]); 4] = [
    ("c1", ["w0", "s2s1", "s1", "id"]),
    ("c2", ["w0", "s1s2", "s2", "id"]),
    ("c3", ["w0", "s1s2", "s1", "id"]),
    ("c4", ["w0", "s2s1", "s2", "id"]),
];

pub fn sl3_poset() -> Result<StratPoset, PosetError> {
    let mut b = PosetBuilder::new();
    for (l, _) in lie::WEYL_GROUP {
        b = b.element(l, 1);
    }
    for (p, q, bond) in COVERS {
        b = b.cover(p, q, bond);
    }
    b.build()
}

/// Values of every member `c1 H1* + c2 H2*` of the zero weight pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilAnalysis {
    /// Special directions and their values.
    pub special: Vec<([Q; 2], FanElement)>,
    /// Value away from the special directions, and the direction used.
    pub generic: ([Q; 2], FanElement),
}

#[derive(Clone, Debug)]
pub struct PathVectors {
    pub pi1: Vec<Q>,
    pub pi2: Vec<Q>,
    pub pencil: PencilAnalysis,
    /// Scalars applied during normalization.
    pub scales: [Q; 2],
}

/// The assembled example: poset, fan, functionals and charts.
#[derive(Clone, Debug)]
pub struct Sl3Instance {
    pub roots: A2RootData,
    pub rep: AdjointRep,
    pub fan: FanOfMonoids,
    /// Linear functional of each generator, indexed like the fan generators.
    pub functionals: Vec<Vec<Q>>,
    /// Nested chart of each maximal chain, in fan chain order.
    pub charts: Vec<ChartSpec>,
    pub path_vectors: PathVectors,
}

fn dual(k: usize) -> Vec<Q> {
    AdjointRep::basis_vector(k)
}

fn combine(c: &[Q; 2], a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter()
        .zip(b)
        .map(|(x, y)| &c[0] * x + &c[1] * y)
        .collect()
}

fn normalize_direction(c: [Q; 2]) -> [Q; 2] {
    let lead = if c[0].is_zero() {
        c[1].clone()
    } else {
        c[0].clone()
    };
    [&c[0] / &lead, &c[1] / &lead]
}

fn chain_charts(
    charts: &[ChartSpec],
    functionals: &[Vec<Q>],
    extremal: &[Vec<Vec<Q>>],
) -> Vec<ChainChart> {
    charts
        .iter()
        .zip(extremal)
        .map(|(spec, ext)| {
            let v = spec.vector();
            let n = spec.nparams();
            ChainChart {
                generators: functionals
                    .iter()
                    .map(|f| chart::evaluate_on(f, &v, n))
                    .collect(),
                extremal: ext.iter().map(|f| chart::evaluate_on(f, &v, n)).collect(),
            }
        })
        .collect()
}

impl Sl3Instance {
    pub fn build() -> Result<Self, Sl3Error> {
        let roots = A2RootData::default();
        let rep = AdjointRep::new();
        let poset = sl3_poset()?;
        let lin = poset.canonical_linearization(&["s1s2", "s2s1", "s1", "s2"]);
        let fan = FanOfMonoids::ls_type(poset, lin)?;
        let names: Vec<String> = fan
            .generators()
            .iter()
            .zip(fan.names())
            .map(
                |(g, n)| match g.top(fan.poset()).map(|p| fan.poset().label(p)) {
                    Some(top) if g.support().len() > 1 => {
                        if top == "s2s1" {
                            "pi1".into()
                        } else {
                            "pi2".into()
                        }
                    }
                    _ => n.clone(),
                },
            )
            .collect();
        let fan = fan.with_names(names);
        let poset = fan.poset().clone();

        let charts: Vec<ChartSpec> = fan
            .chains()
            .map(|c| nested_chart(&rep, &poset, c))
            .collect::<Result<_, _>>()?;
        let functional_of = |label: &str| -> Result<Vec<Q>, Sl3Error> {
            let w =
                reduced_word(label).ok_or_else(|| Sl3Error::UnknownWeylElement(label.into()))?;
            Ok(rep.extremal_functional(w))
        };
        let extremal: Vec<Vec<Vec<Q>>> = fan
            .chains()
            .map(|c| {
                (0..=c.rank())
                    .map(|k| functional_of(poset.label(c.element(k))))
                    .collect::<Result<_, _>>()
            })
            .collect::<Result<_, _>>()?;

        let i1 = fan.index_of_name("pi1").expect("named above");
        let i2 = fan.index_of_name("pi2").expect("named above");
        let mut functionals: Vec<Vec<Q>> = Vec::new();
        for (i, name) in fan.names().iter().enumerate() {
            functionals.push(if i == i1 || i == i2 {
                vec![Q::zero(); 8]
            } else {
                functional_of(name)?
            });
        }

        // a backend whose generators are only the extremal functions
        let probe = ChartBackend::new(fan.clone(), chain_charts(&charts, &functionals, &extremal));
        let (mut pi1, mut pi2, pencil) = find_path_vectors(&fan, &charts, &probe)?;

        functionals[i1] = pi1.clone();
        functionals[i2] = pi2.clone();
        let backend =
            ChartBackend::new(fan.clone(), chain_charts(&charts, &functionals, &extremal));
        let scales = normalization(&fan, &backend)?;
        pi1.iter_mut().for_each(|x| *x *= &scales[0]);
        pi2.iter_mut().for_each(|x| *x *= &scales[1]);
        functionals[i1] = pi1.clone();
        functionals[i2] = pi2.clone();

        Ok(Sl3Instance {
            roots,
            rep,
            fan,
            functionals,
            charts,
            path_vectors: PathVectors {
                pi1,
                pi2,
                pencil,
                scales,
            },
        })
    }

    fn extremal_functionals(&self) -> Vec<Vec<Vec<Q>>> {
        let poset = self.fan.poset();
        self.fan
            .chains()
            .map(|c| {
                (0..=c.rank())
                    .map(|k| {
                        let w = reduced_word(poset.label(c.element(k))).expect("Weyl labels");
                        self.rep.extremal_functional(w)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn chart_backend(&self) -> ChartBackend {
        ChartBackend::new(
            self.fan.clone(),
            chain_charts(
                &self.charts,
                &self.functionals,
                &self.extremal_functionals(),
            ),
        )
    }

    /// Expansion backend fed by the generic chart of the first chain.
    pub fn basis_backend(&self, max_degree: u32) -> Result<BasisExpansionBackend, ValuationError> {
        let spec = &self.charts[0];
        let v = spec.vector();
        let images = self
            .functionals
            .iter()
            .map(|f| chart::evaluate_on(f, &v, spec.nparams()))
            .collect();
        BasisExpansionBackend::new(self.fan.clone(), images, max_degree)
    }

    /// Fan chain index of a named chain `c1..c4`.
    pub fn chain_index(&self, name: &str) -> Option<usize> {
        let labels = NAMED_CHAINS.iter().find(|(n, _)| *n == name)?.1;
        let id = labels.join(">");
        let poset = self.fan.poset();
        self.fan.chains().position(|c| c.id(poset) == id)
    }

    pub fn generator(&self, name: &str) -> Option<RingElement> {
        self.fan
            .index_of_name(name)
            .map(|i| RingElement::generator(&self.fan, i))
    }

    /// Ring element from text in the variables `y_<name>`.
    pub fn element(&self, text: &str) -> Result<RingElement, String> {
        let p = self
            .fan
            .variable_set()
            .parse(text)
            .map_err(|e| e.to_string())?;
        RingElement::new(p, self.fan.weights()).map_err(|e| e.to_string())
    }
}

/// Searches the zero weight pencil for functionals with values `pi1` and
/// `pi2`, then picks the members that vanish on every stratum not above the
/// top of their target.
fn find_path_vectors(
    fan: &FanOfMonoids,
    charts: &[ChartSpec],
    probe: &ChartBackend,
) -> Result<(Vec<Q>, Vec<Q>, PencilAnalysis), Sl3Error> {
    let h1 = dual(lie::H1_SLOT);
    let h2 = dual(lie::H2_SLOT);
    let vectors: Vec<Vec<Polynomial>> = charts.iter().map(ChartSpec::vector).collect();
    let images = |c: &[Q; 2]| -> Vec<Polynomial> {
        let f = combine(c, &h1, &h2);
        vectors
            .iter()
            .zip(charts)
            .map(|(v, s)| chart::evaluate_on(&f, v, s.nparams()))
            .collect()
    };
    let value = |c: &[Q; 2]| -> Result<FanElement, Sl3Error> {
        let imgs = images(c);
        let mut best: Option<FanElement> = None;
        for (k, img) in imgs.iter().enumerate() {
            let v = probe.image_valuation(k, img, 1)?;
            if best
                .as_ref()
                .is_none_or(|b| fan.compare(&v, b) == Ordering::Less)
            {
                best = Some(v);
            }
        }
        best.ok_or(Sl3Error::ZeroPolynomial)
    };

    // directions where some chart coefficient cancels
    let a_imgs = images(&[Q::one(), Q::zero()]);
    let b_imgs = images(&[Q::zero(), Q::one()]);
    let mut special: Vec<[Q; 2]> = Vec::new();
    for (a, b) in a_imgs.iter().zip(&b_imgs) {
        let mut monos: Vec<_> = a.terms().map(|(m, _)| m.clone()).collect();
        monos.extend(b.terms().map(|(m, _)| m.clone()));
        for m in monos {
            let d = normalize_direction([b.coefficient(&m), -a.coefficient(&m)]);
            if !special.contains(&d) {
                special.push(d);
            }
        }
    }
    special.sort();
    let mut t = 1i64;
    let generic_dir = loop {
        let d = normalize_direction([Q::one(), Q::from_integer(t.into())]);
        if !special.contains(&d) {
            break d;
        }
        t += 1;
    };
    let pencil = PencilAnalysis {
        special: special
            .iter()
            .map(|d| Ok((d.clone(), value(d)?)))
            .collect::<Result<_, Sl3Error>>()?,
        generic: (generic_dir.clone(), value(&generic_dir)?),
    };

    let poset = fan.poset();
    let pick = |name: &str| -> Result<Vec<Q>, Sl3Error> {
        let i = fan.index_of_name(name).expect("named generator");
        let target = &fan.generators()[i];
        let top = target.top(poset).expect("chain supported");
        // kernel of the restrictions to strata not above `top`
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for tau in poset.elements().filter(|&t| !poset.le(top, t)) {
            let (c, chain) = fan
                .chains()
                .enumerate()
                .find(|(_, ch)| ch.contains(tau))
                .expect("every element lies on a maximal chain");
            let k = (0..=chain.rank())
                .find(|&k| chain.element(k) == tau)
                .expect("contained");
            let above: Vec<usize> = (k..chain.rank()).collect();
            let a = a_imgs[c].restrict_to_zero(&above);
            let b = b_imgs[c].restrict_to_zero(&above);
            let mut monos: Vec<_> = a.terms().map(|(m, _)| m.clone()).collect();
            monos.extend(b.terms().map(|(m, _)| m.clone()));
            for m in monos {
                rows.push(vec![a.coefficient(&m), b.coefficient(&m)]);
            }
        }
        let kernel = if rows.is_empty() {
            vec![vec![Q::one(), Q::zero()], vec![Q::zero(), Q::one()]]
        } else {
            linalg::kernel(&rows, 2)
        };
        if kernel.len() != 1 {
            return Err(Sl3Error::AmbiguousPathVector(name.into(), kernel.len()));
        }
        let d = normalize_direction([kernel[0][0].clone(), kernel[0][1].clone()]);
        if value(&d)? != *target {
            return Err(Sl3Error::NoPathVector(target.display(fan.linearization())));
        }
        Ok(combine(&d, &h1, &h2))
    };
    let pi1 = pick("pi1")?;
    let pi2 = pick("pi2")?;
    Ok((pi1, pi2, pencil))
}

/// Scalars making `p_s1 p_s2 = p_id p_pi1 + p_id p_pi2`.
fn normalization(fan: &FanOfMonoids, backend: &ChartBackend) -> Result<[Q; 2], Sl3Error> {
    let idx = |n: &str| fan.index_of_name(n).expect("generator");
    let f = RingElement::generator(fan, idx("s1")).mul(&RingElement::generator(fan, idx("s2")));
    let res = subduct(&f, backend)?;
    let mut scales = [Q::zero(), Q::zero()];
    for t in &res.terms {
        let mut parts = t.monomial.parts().to_vec();
        parts.sort();
        let with = |p: usize| {
            let mut w = vec![idx("id"), p];
            w.sort();
            w == parts
        };
        if with(idx("pi1")) {
            scales[0] = t.coefficient.clone();
        } else if with(idx("pi2")) {
            scales[1] = t.coefficient.clone();
        } else {
            return Err(Sl3Error::Normalization(
                "unexpected standard monomial".into(),
            ));
        }
    }
    if scales.iter().any(Zero::is_zero) {
        return Err(Sl3Error::Normalization(
            "a path vector does not appear".into(),
        ));
    }
    Ok(scales)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds() {
        let inst = Sl3Instance::build().unwrap();
        assert_eq!(
            inst.fan.names(),
            &["w0", "s1s2", "pi2", "s2s1", "pi1", "s1", "s2", "id"]
        );
        assert_eq!(inst.path_vectors.pi1, {
            let mut v = vec![Q::zero(); 8];
            v[lie::H2_SLOT] = -Q::one();
            v
        });
        assert_eq!(inst.path_vectors.pi2, dual(lie::H1_SLOT));
    }
}
