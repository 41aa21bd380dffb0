//! Command results, as JSON-serializable records with a text rendering.

use std::fmt::{self, Display, Formatter};

use serde::{Deserialize, Serialize};

use seshadri_core::fan::{saturation_check, FanElement, FanOfMonoids};
use seshadri_core::fan_algebra::{koszul_check, presentation_ideal, KoszulVerdict};
use seshadri_core::gorenstein::{
    gorenstein_check, gorenstein_fano_wps, wps_singular_locus, LinearBondData, WPS_REMARK,
};
use seshadri_core::poly::{initial_ideal_equal, is_groebner, GroebnerBasis, Polynomial};
use seshadri_core::poset::{StratPoset, ValidationReport};
use seshadri_core::sl3::{Sl3Instance, COVERS, NAMED_CHAINS};
use seshadri_core::toric::ToricInstance;
use seshadri_core::valuation::{
    lift_groebner_basis, QuasiValuationBackend, RingElement, SubductionResult, ValuationError,
};

use crate::error::CliError;
use crate::io::{FanElementJson, Loaded};

/// Relations sorted by leading monomial, smallest first.
pub fn sorted_relations(fan: &FanOfMonoids, gb: &GroebnerBasis) -> Vec<String> {
    let vars = fan.variable_set();
    let mut polys: Vec<&Polynomial> = gb.polys.iter().collect();
    polys.sort_by(|a, b| {
        let la = a.leading_monomial(&gb.order).expect("nonzero");
        let lb = b.leading_monomial(&gb.order).expect("nonzero");
        gb.order.cmp(la, lb)
    });
    polys.iter().map(|p| vars.format(p, &gb.order)).collect()
}

fn lines(f: &mut Formatter<'_>, title: &str, items: &[String]) -> fmt::Result {
    writeln!(f, "{title}:")?;
    for i in items {
        writeln!(f, "  {i}")?;
    }
    Ok(())
}

fn coords_text(e: &FanElementJson) -> String {
    let parts: Vec<String> = e.coords.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub valid: bool,
    pub violations: Vec<String>,
    pub assumed: String,
}

impl ValidateReport {
    pub fn new(poset: &StratPoset) -> Self {
        let r = poset.validate();
        ValidateReport {
            valid: r.is_valid(),
            violations: r.failures.iter().map(ToString::to_string).collect(),
            assumed: ValidationReport::ASSUMED.into(),
        }
    }
}

impl Display for ValidateReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "valid: {}", self.valid)?;
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        writeln!(f, "note: {}", self.assumed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: u32,
    pub value: FanElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationEntry {
    pub chain: String,
    pub holds: bool,
    /// Degree up to which the check was run; absent when nothing was enumerated.
    pub checked_to_degree: Option<u32>,
    pub witness: Option<FanElementJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaReport {
    pub linearization: Vec<String>,
    pub generators: Vec<GeneratorEntry>,
    pub saturation: Vec<SaturationEntry>,
}

fn generators(fan: &FanOfMonoids) -> Vec<GeneratorEntry> {
    fan.generators()
        .iter()
        .zip(fan.names())
        .zip(fan.weights())
        .map(|((g, n), &w)| GeneratorEntry {
            name: n.clone(),
            degree: w,
            value: FanElementJson::from_element(g, fan.poset()),
        })
        .collect()
}

impl GammaReport {
    pub fn new(fan: &FanOfMonoids, bound: u32) -> Self {
        let poset = fan.poset();
        let saturation = fan
            .monoids()
            .iter()
            .map(|m| {
                let c = saturation_check(m, poset, bound);
                SaturationEntry {
                    chain: m.chain.id(poset),
                    holds: c.holds,
                    checked_to_degree: (!c.by_construction).then_some(c.bound),
                    witness: c
                        .witness
                        .as_ref()
                        .map(|w| FanElementJson::from_element(w, poset)),
                }
            })
            .collect();
        GammaReport {
            linearization: fan
                .linearization()
                .order()
                .iter()
                .map(|&p| poset.label(p).to_string())
                .collect(),
            generators: generators(fan),
            saturation,
        }
    }
}

impl Display for GammaReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "linearization: {}", self.linearization.join(" > "))?;
        writeln!(f, "indecomposables:")?;
        for g in &self.generators {
            writeln!(
                f,
                "  {} (degree {}): {}",
                g.name,
                g.degree,
                coords_text(&g.value)
            )?;
        }
        writeln!(f, "saturation:")?;
        for s in &self.saturation {
            let how = match s.checked_to_degree {
                Some(d) => format!("bounded check to degree {d}"),
                None => "LS-monoid".into(),
            };
            write!(f, "  {}: {} ({how})", s.chain, s.holds)?;
            if let Some(w) = &s.witness {
                write!(f, ", missing {}", coords_text(w))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbReport {
    pub variables: Vec<String>,
    pub degree_bound: u32,
    pub relations: Vec<String>,
}

impl GbReport {
    pub fn new(fan: &FanOfMonoids, degree: u32) -> Result<(Self, GroebnerBasis), CliError> {
        let pres = presentation_ideal(fan, degree)?;
        let gb = pres.groebner_basis();
        Ok((
            GbReport {
                variables: fan.variable_set().names().to_vec(),
                degree_bound: degree,
                relations: sorted_relations(fan, &gb),
            },
            gb,
        ))
    }
}

impl Display for GbReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "variables: {}", self.variables.join(" > "))?;
        lines(
            f,
            &format!(
                "reduced Groebner basis (generators up to degree {})",
                self.degree_bound
            ),
            &self.relations,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceTerm {
    pub coefficient: String,
    pub monomial: String,
    pub value: FanElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftEntry {
    pub input: String,
    pub trace: Vec<TraceTerm>,
    pub lifted: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    pub relations: Vec<LiftEntry>,
    pub basis: Vec<String>,
    pub initial_ideals_equal: bool,
    pub s_polynomials_reduce: bool,
}

fn trace(fan: &FanOfMonoids, t: &SubductionResult) -> Vec<TraceTerm> {
    let vars = fan.variable_set();
    let m = fan.generators().len();
    t.terms
        .iter()
        .map(|s| TraceTerm {
            coefficient: s.coefficient.to_string(),
            monomial: vars.format_monomial(&s.monomial.to_monomial(m)),
            value: FanElementJson::from_element(&s.value, fan.poset()),
        })
        .collect()
}

impl LiftReport {
    pub fn new<B: QuasiValuationBackend + ?Sized>(
        gb: &GroebnerBasis,
        backend: &B,
    ) -> Result<Self, CliError> {
        let fan = backend.fan();
        let r = lift_groebner_basis(gb, backend)?;
        let vars = fan.variable_set();
        let relations = r
            .relations
            .iter()
            .map(|l| LiftEntry {
                input: vars.format(&l.input, &gb.order),
                trace: trace(fan, &l.trace),
                lifted: vars.format(&l.lifted, &gb.order),
            })
            .collect();
        Ok(LiftReport {
            relations,
            basis: sorted_relations(fan, &r.basis),
            initial_ideals_equal: initial_ideal_equal(gb, &r.basis),
            s_polynomials_reduce: is_groebner(&r.basis.polys, &r.basis.order).is_ok(),
        })
    }

    pub fn text(&self, verbose: bool) -> String {
        let mut out = String::new();
        if verbose {
            out.push_str("lift trace:\n");
            for r in &self.relations {
                let terms: Vec<String> = r
                    .trace
                    .iter()
                    .map(|t| {
                        format!(
                            "({}) {} at {}",
                            t.coefficient,
                            t.monomial,
                            coords_text(&t.value)
                        )
                    })
                    .collect();
                out.push_str(&format!(
                    "  {}\n    subduction: {}\n    lifted: {}\n",
                    r.input,
                    terms.join(" + "),
                    r.lifted
                ));
            }
        }
        out.push_str("lifted basis:\n");
        for b in &self.basis {
            out.push_str(&format!("  {b}\n"));
        }
        out.push_str(&format!(
            "initial ideals equal: {}\nS-polynomials reduce to zero: {}\n",
            self.initial_ideals_equal, self.s_polynomials_reduce
        ));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulReport {
    pub quadratic: bool,
    pub witness: Option<String>,
    pub basis: Vec<String>,
}

impl KoszulReport {
    pub fn new(fan: &FanOfMonoids, degree: u32) -> Result<Self, CliError> {
        let pres = presentation_ideal(fan, degree)?;
        let (verdict, gb) = koszul_check(&pres);
        let witness = match &verdict {
            KoszulVerdict::Quadratic => None,
            KoszulVerdict::NotQuadratic(p) => Some(pres.variables.format(p, &gb.order)),
        };
        Ok(KoszulReport {
            quadratic: witness.is_none(),
            witness,
            basis: sorted_relations(fan, &gb),
        })
    }
}

impl Display for KoszulReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => writeln!(
                f,
                "quadratic Groebner basis: true (the fan algebra is Koszul)"
            )?,
            Some(w) => writeln!(f, "quadratic Groebner basis: false, witness {w}")?,
        }
        lines(f, "basis", &self.basis)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinReport {
    pub bonds: Vec<u32>,
    pub m: Vec<u32>,
    pub sums: Vec<String>,
    pub gorenstein: bool,
}

impl GorensteinReport {
    pub fn new(data: &LinearBondData) -> Self {
        GorensteinReport {
            bonds: (1..=data.rank()).map(|k| data.bond(k)).collect(),
            m: (0..=data.rank()).map(|k| data.m(k)).collect(),
            sums: data
                .criterion_sums()
                .iter()
                .map(ToString::to_string)
                .collect(),
            gorenstein: gorenstein_check(data),
        }
    }
}

impl Display for GorensteinReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        writeln!(f, "bonds b_1..b_r: {}", join(&self.bonds))?;
        writeln!(f, "M_0..M_r: {}", join(&self.m))?;
        writeln!(f, "sums k=0..r: {}", self.sums.join(", "))?;
        writeln!(f, "Gorenstein: {}", self.gorenstein)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpsEntry {
    pub weights: [u64; 4],
    /// Index sets of the maximal singular strata.
    pub singular_components: Vec<Vec<usize>>,
    pub two_disjoint_lines: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpsReport {
    pub spaces: Vec<WpsEntry>,
    pub two_disjoint_lines: Vec<[u64; 4]>,
    pub remark: String,
}

impl WpsReport {
    pub fn new() -> Self {
        let spaces: Vec<WpsEntry> = gorenstein_fano_wps()
            .iter()
            .map(|w| {
                let l = wps_singular_locus(w);
                WpsEntry {
                    weights: w.0,
                    singular_components: l.components.iter().map(|c| c.indices.clone()).collect(),
                    two_disjoint_lines: l.is_two_disjoint_lines(),
                }
            })
            .collect();
        WpsReport {
            two_disjoint_lines: spaces
                .iter()
                .filter(|s| s.two_disjoint_lines)
                .map(|s| s.weights)
                .collect(),
            spaces,
            remark: WPS_REMARK.into(),
        }
    }
}

impl Default for WpsReport {
    fn default() -> Self {
        Self::new()
    }
}

impl Display for WpsReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let w = |a: &[u64; 4]| format!("({},{},{},{})", a[0], a[1], a[2], a[3]);
        writeln!(
            f,
            "Gorenstein Fano weighted projective 3-spaces: {}",
            self.spaces.len()
        )?;
        for s in &self.spaces {
            let comps: Vec<String> = s
                .singular_components
                .iter()
                .map(|c| format!("{c:?}"))
                .collect();
            let comps = if comps.is_empty() {
                "smooth".into()
            } else {
                comps.join(" ")
            };
            writeln!(f, "  P{}  singular strata: {comps}", w(&s.weights))?;
        }
        let hits: Vec<String> = self.two_disjoint_lines.iter().map(w).collect();
        writeln!(f, "two disjoint singular lines: {}", hits.join(", "))?;
        writeln!(f, "note: {}", self.remark)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainValue {
    pub chain: String,
    /// Top-down along the chain.
    pub value: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorValuations {
    pub name: String,
    pub value: FanElementJson,
    pub chains: Vec<ChainValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl3Report {
    pub bonds: Vec<(String, String, u32)>,
    pub chains: Vec<(String, String)>,
    pub linearization: Vec<String>,
    pub generators: Vec<GeneratorValuations>,
    /// Path vectors as functionals on the adjoint representation.
    pub path_vectors: Vec<(String, Vec<String>)>,
    pub semitoric: Vec<String>,
    pub lift: LiftReport,
}

fn chain_values<B: QuasiValuationBackend>(
    inst: &Sl3Instance,
    backend: &B,
    g: &RingElement,
) -> Result<Vec<ChainValue>, CliError> {
    NAMED_CHAINS
        .iter()
        .map(|(name, _)| {
            let c = inst.chain_index(name).expect("named chains exist");
            let v = backend.chain_valuation(g, c)?;
            Ok(ChainValue {
                chain: (*name).to_string(),
                value: v
                    .chain_coords(&inst.fan.monoids()[c].chain)
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
            })
        })
        .collect()
}

impl Sl3Report {
    pub fn new() -> Result<Self, CliError> {
        let inst = Sl3Instance::build()?;
        let fan = &inst.fan;
        let backend = inst.chart_backend();
        let poset = fan.poset();
        let generators = (0..fan.generators().len())
            .map(|i| {
                let g = RingElement::generator(fan, i);
                Ok(GeneratorValuations {
                    name: fan.names()[i].clone(),
                    value: FanElementJson::from_element(&backend.quasi_valuation(&g)?, poset),
                    chains: chain_values(&inst, &backend, &g)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let (gb_report, gb) = GbReport::new(fan, 2)?;
        let lift = LiftReport::new(&gb, &backend)?;
        let functional = |v: &[seshadri_core::Q]| v.iter().map(ToString::to_string).collect();
        Ok(Sl3Report {
            bonds: COVERS
                .iter()
                .map(|(p, q, b)| (p.to_string(), q.to_string(), *b))
                .collect(),
            chains: NAMED_CHAINS
                .iter()
                .map(|(n, c)| (n.to_string(), c.join(">")))
                .collect(),
            linearization: fan
                .linearization()
                .order()
                .iter()
                .map(|&p| poset.label(p).to_string())
                .collect(),
            generators,
            path_vectors: vec![
                ("pi1".into(), functional(&inst.path_vectors.pi1)),
                ("pi2".into(), functional(&inst.path_vectors.pi2)),
            ],
            semitoric: gb_report.relations,
            lift,
        })
    }

    pub fn text(&self, verbose: bool) -> String {
        let mut out = String::from("bonds:\n");
        for (p, q, b) in &self.bonds {
            out.push_str(&format!("  {p} --{b}-- {q}\n"));
        }
        out.push_str("maximal chains:\n");
        for (n, c) in &self.chains {
            out.push_str(&format!("  {n}: {c}\n"));
        }
        out.push_str(&format!(
            "linearization: {}\n",
            self.linearization.join(" > ")
        ));
        out.push_str("generator valuations (chains top-down):\n");
        for g in &self.generators {
            let per: Vec<String> = g
                .chains
                .iter()
                .map(|c| format!("{} ({})", c.chain, c.value.join(",")))
                .collect();
            out.push_str(&format!(
                "  p_{}: {}\n    {}\n",
                g.name,
                coords_text(&g.value),
                per.join("  ")
            ));
        }
        out.push_str("path vectors (coordinates on E12 E23 E13 E21 E32 E31 H1 H2):\n");
        for (n, v) in &self.path_vectors {
            out.push_str(&format!("  p_{n} = ({})\n", v.join(", ")));
        }
        out.push_str("semi-toric reduced Groebner basis:\n");
        for r in &self.semitoric {
            out.push_str(&format!("  {r}\n"));
        }
        out.push_str(&self.lift.text(verbose));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricReport {
    pub generators: Vec<GeneratorEntry>,
    pub semitoric: Vec<String>,
    pub koszul: KoszulReport,
    pub lift: LiftReport,
    pub gorenstein: GorensteinReport,
}

impl ToricReport {
    pub fn new() -> Result<Self, CliError> {
        let t = ToricInstance::build()?;
        let (gb_report, gb) = GbReport::new(&t.fan, 2)?;
        let backend = t.basis_backend(2)?;
        Ok(ToricReport {
            generators: generators(&t.fan),
            semitoric: gb_report.relations,
            koszul: KoszulReport::new(&t.fan, 3)?,
            lift: LiftReport::new(&gb, &backend)?,
            gorenstein: GorensteinReport::new(&seshadri_core::toric::bond_data()),
        })
    }

    pub fn text(&self, verbose: bool) -> String {
        let mut out = String::from("indecomposables:\n");
        for g in &self.generators {
            out.push_str(&format!("  {}: {}\n", g.name, coords_text(&g.value)));
        }
        out.push_str("semi-toric reduced Groebner basis:\n");
        for r in &self.semitoric {
            out.push_str(&format!("  {r}\n"));
        }
        out.push_str(&self.koszul.to_string());
        out.push_str(&self.lift.text(verbose));
        out.push_str(&self.gorenstein.to_string());
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuateReport {
    pub element: String,
    /// Empty when the backend only computes the minimum.
    pub chains: Vec<(String, FanElementJson)>,
    pub value: FanElementJson,
}

impl ValuateReport {
    pub fn new<B: QuasiValuationBackend>(
        backend: &B,
        g: &RingElement,
        text: &str,
    ) -> Result<Self, CliError> {
        let fan = backend.fan();
        let poset = fan.poset();
        let mut chains = Vec::new();
        for (c, m) in fan.monoids().iter().enumerate() {
            match backend.chain_valuation(g, c) {
                Ok(v) => chains.push((m.chain.id(poset), FanElementJson::from_element(&v, poset))),
                Err(ValuationError::Unsupported(_)) => {
                    chains.clear();
                    break;
                }
                Err(e) => return Err(e.into()),
            }
        }
        Ok(ValuateReport {
            element: text.into(),
            chains,
            value: FanElementJson::from_element(&backend.quasi_valuation(g)?, poset),
        })
    }
}

impl Display for ValuateReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for (c, v) in &self.chains {
            writeln!(f, "V_{c}: {}", coords_text(v))?;
        }
        writeln!(f, "V({}) = {}", self.element, coords_text(&self.value))
    }
}

/// Loads a fan and checks that a stratification is usable for `gamma`.
pub fn gamma(loaded: &Loaded, bound: u32) -> Result<GammaReport, CliError> {
    Ok(GammaReport::new(&loaded.fan(bound)?, bound))
}

/// Value of a fan element in text form, used by tests.
pub fn element_text(e: &FanElement, poset: &StratPoset) -> String {
    coords_text(&FanElementJson::from_element(e, poset))
}
