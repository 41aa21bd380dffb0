//! Exact computations attached to Seshadri stratifications.
//!
//! The crate is `no_std` and only needs `alloc`. Everything works over the
//! rationals with arbitrary precision.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod fan;
pub mod fan_algebra;
pub mod gorenstein;
pub mod linalg;
pub mod poly;
pub mod poset;
pub mod sl3;
pub mod toric;
pub mod valuation;

pub use num_rational::BigRational as Q;

/// Integer rational shorthand.
pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}
