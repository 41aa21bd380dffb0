//! The quadric toric threefold `x2^2 = x1 x3, x5^2 = x4 x6` with its linear
//! stratification of bonds `2, 1, 2`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::fan::{ls_member, FanElement, FanError, FanOfMonoids};
use crate::gorenstein::LinearBondData;
use crate::poly::{Monomial, Polynomial};
use crate::poset::{Chain, PosetError, StratPoset};
use crate::valuation::{BasisExpansionBackend, ValuationError};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToricError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error("{0} is not in the LS-monoid")]
    NotLs(String),
}

pub const BONDS: [u32; 3] = [2, 1, 2];

pub fn bond_data() -> LinearBondData {
    LinearBondData::new(BONDS.to_vec()).expect("positive bonds")
}

pub fn toric_poset() -> StratPoset {
    bond_data().poset().expect("linear poset")
}

/// `(a1, a3, a4, a6) + (a2, a2, a5, a5) / 2`, top-down.
pub fn toric_example_valuation(a: [u32; 6]) -> [Q; 4] {
    let z = |x: u32| Q::from_integer(x.into());
    let h = |x: u32| Q::new(x.into(), 2.into());
    [
        z(a[0]) + h(a[1]),
        z(a[2]) + h(a[1]),
        z(a[3]) + h(a[4]),
        z(a[5]) + h(a[4]),
    ]
}

/// An exponent vector whose monomial has value `u = (u3, u2, u1, u0)`.
pub fn ls_witness_exponent(u: &[Q; 4]) -> Result<[u32; 6], ToricError> {
    let poset = toric_poset();
    let chain = poset.maximal_chains().remove(0);
    let e = FanElement::from_chain_coords(poset.len(), &chain, u);
    if !ls_member(&e, &chain)? {
        return Err(ToricError::NotLs(format!("{u:?}")));
    }
    let int = |x: &Q| x.to_integer().to_u32().expect("nonnegative");
    let f3 = &u[0] - u[0].floor();
    let f1 = &u[2] - u[2].floor();
    let two = Q::from_integer(2.into());
    Ok([
        int(&u[0].floor()),
        int(&(&two * &f3)),
        int(&(&u[1] - &f3)),
        int(&u[2].floor()),
        int(&(&two * &f1)),
        int(&(&u[3] - &f1)),
    ])
}

#[derive(Clone, Debug)]
pub struct ToricInstance {
    pub fan: FanOfMonoids,
    pub chain: Chain,
}

impl ToricInstance {
    pub fn build() -> Result<Self, ToricError> {
        let poset = toric_poset();
        let lin = poset.canonical_linearization(&[]);
        let fan = FanOfMonoids::ls_type(poset, lin)?;
        let names = (1..=fan.generators().len())
            .map(|i| format!("x{i}"))
            .collect();
        let fan = fan.with_names(names);
        let chain = fan.monoids()[0].chain.clone();
        Ok(ToricInstance { fan, chain })
    }

    /// `x_i -> t^{iota(V(x_i))}` in four parameters `t_0..t_3`.
    pub fn oracle_images(&self) -> Vec<Polynomial> {
        let data = bond_data();
        self.fan
            .generators()
            .iter()
            .map(|g| {
                let u = g.chain_coords(&self.chain);
                let exps = crate::gorenstein::iota_embedding(&u, &data).expect("generators are LS");
                let e: Vec<u32> = exps.iter().map(|&x| x as u32).collect();
                Polynomial::term(Q::from_integer(1.into()), Monomial::from_exponents(e))
            })
            .collect()
    }

    pub fn basis_backend(&self, max_degree: u32) -> Result<BasisExpansionBackend, ToricError> {
        Ok(BasisExpansionBackend::new(
            self.fan.clone(),
            self.oracle_images(),
            max_degree,
        )?)
    }

    /// The defining quadrics in the variables `y_x1..y_x6`.
    pub fn defining_relations(&self) -> Vec<Polynomial> {
        let vars = self.fan.variable_set();
        ["y_x2^2 - y_x1 y_x3", "y_x5^2 - y_x4 y_x6"]
            .iter()
            .map(|s| vars.parse(s).expect("fixed text"))
            .collect()
    }

    /// Value of a monomial in `x1..x6`, as an element of `Q^A`.
    pub fn valuation(&self, a: [u32; 6]) -> FanElement {
        FanElement::from_chain_coords(
            self.fan.poset().len(),
            &self.chain,
            &toric_example_valuation(a),
        )
    }
}
