//! JSON input formats.
//!
//! A stratification file:
//!
//! ```json
//! {
//!   "elements": ["top", "a", "b"],
//!   "covers": [["top", "a"], ["a", "b"]],
//!   "bonds": {"top>a": 2, "a>b": 1},
//!   "extremal_degrees": {"top": 1, "a": 1, "b": 1},
//!   "linearization": ["a"],
//!   "names": ["u1", "u2"],
//!   "monoid": "ls-type"
//! }
//! ```
//!
//! `linearization` lists elements to place first among those of equal
//! length. `monoid` is `"ls-type"` (the default) or
//! `{"generators": {"<chain id>": [<fan element>, ...]}, "bound": 4}` where a
//! chain id joins its labels with `>` from the top. A fan element is
//! `{"coords": {"<element>": "num/den"}}`; omitted elements are zero.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use seshadri_core::fan::{FanElement, FanOfMonoids};
use seshadri_core::poly::{Polynomial, VariableSet};
use seshadri_core::poset::{Linearization, PosetBuilder, StratPoset};
use seshadri_core::Q;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratificationFile {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    pub bonds: BTreeMap<String, u32>,
    pub extremal_degrees: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub linearization: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoid: Option<MonoidSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidSpec {
    Named(MonoidName),
    Generators {
        generators: BTreeMap<String, Vec<FanElementJson>>,
        #[serde(default)]
        bound: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonoidName {
    #[serde(rename = "ls-type")]
    LsType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanElementJson {
    pub coords: BTreeMap<String, String>,
}

impl FanElementJson {
    /// Nonzero coordinates only.
    pub fn from_element(e: &FanElement, poset: &StratPoset) -> Self {
        let coords = poset
            .elements()
            .filter(|&p| *e.coord(p) != Q::from_integer(0.into()))
            .map(|p| (poset.label(p).to_string(), e.coord(p).to_string()))
            .collect();
        FanElementJson { coords }
    }

    pub fn to_element(&self, poset: &StratPoset) -> Result<FanElement, CliError> {
        let mut c = vec![Q::from_integer(0.into()); poset.len()];
        for (label, value) in &self.coords {
            let p = poset
                .find(label)
                .ok_or_else(|| CliError::Input(format!("unknown element `{label}` in coords")))?;
            c[p.0] = parse_rational(value)?;
        }
        Ok(FanElement::from_coords(c))
    }
}

pub fn parse_rational(s: &str) -> Result<Q, CliError> {
    Q::from_str(s.trim()).map_err(|_| CliError::Input(format!("`{s}` is not a rational number")))
}

/// `{"generator": {"chain id": {"coords": ...}}}`.
pub type ValuationTableFile = BTreeMap<String, BTreeMap<String, FanElementJson>>;

/// Images of the generators under an evaluation map into a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleFile {
    pub parameters: Vec<String>,
    pub images: BTreeMap<String, String>,
}

impl OracleFile {
    /// Images ordered like the generators of `fan`.
    pub fn images_for(&self, fan: &FanOfMonoids) -> Result<Vec<Polynomial>, CliError> {
        let vars = VariableSet::new(&self.parameters);
        if let Some(extra) = self.images.keys().find(|k| fan.index_of_name(k).is_none()) {
            return Err(CliError::Input(format!(
                "oracle names unknown generator `{extra}`"
            )));
        }
        fan.names()
            .iter()
            .map(|n| {
                let text = self
                    .images
                    .get(n)
                    .ok_or_else(|| CliError::Input(format!("oracle has no image for `{n}`")))?;
                vars.parse(text)
                    .map_err(|e| CliError::Input(format!("image of `{n}`: {e}")))
            })
            .collect()
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Errors carry the JSON path and the line and column.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Input(format!(
            "line {} column {}: at `{path}`: {inner}",
            inner.line(),
            inner.column()
        ))
    })
}

/// The poset, linearization and fan described by a stratification file.
pub struct Loaded {
    pub poset: StratPoset,
    pub linearization: Linearization,
    pub file: StratificationFile,
}

impl StratificationFile {
    pub fn poset(&self) -> Result<StratPoset, CliError> {
        let mut b = PosetBuilder::new();
        for e in &self.elements {
            b = match self.extremal_degrees.get(e) {
                Some(&d) => b.element(e, d),
                None => b.element_without_degree(e),
            };
        }
        for (p, q) in &self.covers {
            b = match self.bonds.get(&format!("{p}>{q}")) {
                Some(&bond) => b.cover(p, q, bond),
                None => b.cover_without_bond(p, q),
            };
        }
        for key in self.bonds.keys() {
            let (p, q) = key.split_once('>').ok_or_else(|| {
                CliError::Input(format!("bond key `{key}` is not of the form `p>q`"))
            })?;
            if !self.covers.iter().any(|(a, c)| a == p && c == q) {
                b = b.stray_bond(p, q);
            }
        }
        for key in self.extremal_degrees.keys() {
            if !self.elements.contains(key) {
                return Err(CliError::Input(format!(
                    "extremal degree for unknown element `{key}`"
                )));
            }
        }
        b.build().map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn load(self) -> Result<Loaded, CliError> {
        let poset = self.poset()?;
        for l in &self.linearization {
            if poset.find(l).is_none() {
                return Err(CliError::Input(format!(
                    "linearization names unknown element `{l}`"
                )));
            }
        }
        let prio: Vec<&str> = self.linearization.iter().map(String::as_str).collect();
        let linearization = poset.canonical_linearization(&prio);
        Ok(Loaded {
            poset,
            linearization,
            file: self,
        })
    }
}

impl Loaded {
    /// Builds the fan; an invalid poset is a domain error.
    pub fn fan(&self, default_bound: u32) -> Result<FanOfMonoids, CliError> {
        let report = self.poset.validate();
        if let Some(v) = report.failures.first() {
            return Err(CliError::Domain(format!("invalid stratification: {v}")));
        }
        let fan = match &self.file.monoid {
            None | Some(MonoidSpec::Named(MonoidName::LsType)) => {
                FanOfMonoids::ls_type(self.poset.clone(), self.linearization.clone())?
            }
            Some(MonoidSpec::Generators { generators, bound }) => {
                let chains = self.poset.maximal_chains();
                for id in generators.keys() {
                    if !chains.iter().any(|c| c.id(&self.poset) == *id) {
                        return Err(CliError::Input(format!("`{id}` is not a maximal chain")));
                    }
                }
                let mut lists = Vec::new();
                for c in &chains {
                    let id = c.id(&self.poset);
                    let gens = generators.get(&id).ok_or_else(|| {
                        CliError::Input(format!("no generators for chain `{id}`"))
                    })?;
                    lists.push(
                        gens.iter()
                            .map(|g| g.to_element(&self.poset))
                            .collect::<Result<Vec<_>, _>>()?,
                    );
                }
                FanOfMonoids::explicit(
                    self.poset.clone(),
                    self.linearization.clone(),
                    lists,
                    bound.unwrap_or(default_bound),
                )?
            }
        };
        match &self.file.names {
            Some(names) if names.len() != fan.generators().len() => Err(CliError::Input(format!(
                "{} names given for {} generators",
                names.len(),
                fan.generators().len()
            ))),
            Some(names) => Ok(fan.with_names(names.clone())),
            None => Ok(fan),
        }
    }
}

pub fn load_stratification(path: &Path) -> Result<Loaded, CliError> {
    read_json::<StratificationFile>(path)?.load()
}
