//! Gorenstein criterion for linear posets and Gorenstein Fano weighted
//! projective 3-spaces.

use alloc::format;
use alloc::string::String;
#[cfg(test)]
use alloc::string::ToString;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::fan::{ls_member, FanElement, FanError};
use crate::poset::{Chain, PosetBuilder, PosetError, StratPoset};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GorensteinError {
    #[error("bonds must be positive")]
    ZeroBond,
    #[error("expected {expected} coordinates, got {got}")]
    Length { expected: usize, got: usize },
    #[error("{0} is not in the LS-monoid")]
    NotLs(String),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Bonds `b_1, ..., b_r` of `p_r > ... > p_0`, where `b_k` sits between
/// `p_k` and `p_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearBondData {
    bonds: Vec<u32>,
}

impl LinearBondData {
    pub fn new(bonds: Vec<u32>) -> Result<Self, GorensteinError> {
        if bonds.contains(&0) {
            return Err(GorensteinError::ZeroBond);
        }
        Ok(LinearBondData { bonds })
    }

    pub fn rank(&self) -> usize {
        self.bonds.len()
    }

    /// `b_k` for `0 <= k <= r + 1`, with `b_0 = b_{r+1} = 1`.
    pub fn bond(&self, k: usize) -> u32 {
        if k == 0 || k > self.rank() {
            1
        } else {
            self.bonds[k - 1]
        }
    }

    /// `M_k = lcm(b_k, b_{k+1})`.
    pub fn m(&self, k: usize) -> u32 {
        self.bond(k).lcm(&self.bond(k + 1))
    }

    /// `b_k (1/M_r + ... + 1/M_k)` for `k = 0..=r`.
    pub fn criterion_sums(&self) -> Vec<Q> {
        let r = self.rank();
        (0..=r)
            .map(|k| {
                let tail: Q = (k..=r).map(|j| Q::new(1.into(), self.m(j).into())).sum();
                tail * Q::from_integer(self.bond(k).into())
            })
            .collect()
    }

    /// The linear poset `p_r > ... > p_0` with these bonds and degree one.
    pub fn poset(&self) -> Result<StratPoset, PosetError> {
        let r = self.rank();
        let labels: Vec<String> = (0..=r).rev().map(|k| format!("p{k}")).collect();
        let mut b = PosetBuilder::new();
        for l in &labels {
            b = b.element(l, 1);
        }
        for k in (1..=r).rev() {
            b = b.cover(&format!("p{k}"), &format!("p{}", k - 1), self.bond(k));
        }
        b.build()
    }

    pub fn chain(&self, poset: &StratPoset) -> Chain {
        poset.maximal_chains().remove(0)
    }
}

pub fn gorenstein_check(data: &LinearBondData) -> bool {
    data.criterion_sums().iter().all(|s| s.is_integer())
}

/// Exponents of `x_0, ..., x_r` in `x_0^{M_0 u_0} ... x_r^{M_r u_r}`, for
/// `u` given top-down as `(u_r, ..., u_0)`.
pub fn iota_embedding(u: &[Q], data: &LinearBondData) -> Result<Vec<u64>, GorensteinError> {
    let r = data.rank();
    if u.len() != r + 1 {
        return Err(GorensteinError::Length {
            expected: r + 1,
            got: u.len(),
        });
    }
    let poset = data.poset()?;
    let chain = data.chain(&poset);
    let e = FanElement::from_chain_coords(poset.len(), &chain, u);
    if !ls_member(&e, &chain)? {
        return Err(GorensteinError::NotLs(format!("{u:?}")));
    }
    Ok((0..=r)
        .map(|k| {
            let x = &u[r - k] * Q::from_integer(data.m(k).into());
            x.to_integer().to_u64().expect("nonnegative integer")
        })
        .collect())
}

/// Weights `a_0 <= a_1 <= a_2 <= a_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WpsWeights(pub [u64; 4]);

impl WpsWeights {
    /// Every three of the weights are coprime.
    pub fn is_normalized(&self) -> bool {
        (0..4).all(|skip| {
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .fold(0u64, |g, (_, &a)| g.gcd(&a))
                == 1
        })
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Every weight divides the sum.
    pub fn is_fano_gorenstein(&self) -> bool {
        let s = self.sum();
        self.0.iter().all(|&a| s.is_multiple_of(a))
    }
}

impl core::fmt::Display for WpsWeights {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// Unit fractions `1/k_0 + ... + 1/k_{n-1} = 1` with `k` nonincreasing.
fn egyptian(n: usize) -> Vec<Vec<u64>> {
    fn rec(left: Q, n: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            if left.is_zero() {
                out.push(cur.clone());
            }
            return;
        }
        if left <= Q::zero() {
            return;
        }
        // smallest k with 1/k <= left, largest with n/k >= left
        let lo = (left.recip())
            .ceil()
            .to_integer()
            .to_u64()
            .unwrap_or(u64::MAX)
            .max(1);
        let hi = (Q::from_integer((n as u64).into()) / &left)
            .floor()
            .to_integer()
            .to_u64()
            .unwrap_or(u64::MAX);
        let lo = match cur.last() {
            Some(&prev) => lo.max(prev),
            None => lo,
        };
        for k in lo..=hi {
            cur.push(k);
            rec(&left - Q::new(1.into(), k.into()), n - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(Q::from_integer(1.into()), n, &mut Vec::new(), &mut out);
    out
}

/// Normalized weights of Gorenstein Fano weighted projective 3-spaces,
/// ascending.
pub fn gorenstein_fano_wps() -> Vec<WpsWeights> {
    let mut out: Vec<WpsWeights> = egyptian(4)
        .into_iter()
        .map(|ks| {
            let l = ks.iter().fold(1u64, |acc, &k| acc.lcm(&k));
            let mut a: Vec<u64> = ks.iter().map(|&k| l / k).collect();
            let g = a.iter().fold(0u64, |acc, &x| acc.gcd(&x));
            a.iter_mut().for_each(|x| *x /= g);
            a.sort_unstable();
            WpsWeights([a[0], a[1], a[2], a[3]])
        })
        .filter(WpsWeights::is_normalized)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Points whose nonzero coordinates all have weight divisible by `prime`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularStratum {
    pub prime: u64,
    pub indices: Vec<usize>,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocus {
    pub strata: Vec<SingularStratum>,
    /// Maximal strata.
    pub components: Vec<SingularStratum>,
    pub disjoint: bool,
}

impl SingularLocus {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Two disjoint lines.
    pub fn is_two_disjoint_lines(&self) -> bool {
        self.disjoint
            && self.components.len() == 2
            && self.components.iter().all(|c| c.dimension == 1)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn wps_singular_locus(w: &WpsWeights) -> SingularLocus {
    let mut primes: Vec<u64> = w.0.iter().flat_map(|&a| prime_factors(a)).collect();
    primes.sort_unstable();
    primes.dedup();
    let strata: Vec<SingularStratum> = primes
        .into_iter()
        .map(|p| {
            let indices: Vec<usize> = (0..4).filter(|&i| w.0[i].is_multiple_of(p)).collect();
            SingularStratum {
                prime: p,
                dimension: indices.len() - 1,
                indices,
            }
        })
        .collect();
    let components: Vec<SingularStratum> = strata
        .iter()
        .filter(|s| {
            !strata.iter().any(|t| {
                t.indices.len() > s.indices.len() && s.indices.iter().all(|i| t.indices.contains(i))
            })
        })
        .cloned()
        .collect();
    let disjoint = components.iter().enumerate().all(|(i, a)| {
        components[i + 1..]
            .iter()
            .all(|b| a.indices.iter().all(|x| !b.indices.contains(x)))
    });
    SingularLocus {
        strata,
        components,
        disjoint,
    }
}

/// Text for the part of the classification argument that is not computed.
pub const WPS_REMARK: &str = "singular loci are compared combinatorially; \
isomorphism of the varieties themselves is not decided here";
