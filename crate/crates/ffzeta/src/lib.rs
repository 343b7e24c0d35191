//! Exact arithmetic for zeta values over function fields in characteristic p.
//!
//! The crate computes, with no floating point anywhere:
//!
//! - power sums `S_e(j) = Σ f^j` over the monic (positive) elements of degree
//!   `e` of a base ring `A`, for `A = F_q[T]` and for the coordinate ring of
//!   an elliptic curve over `F_2` ([`rings`], [`zeta`]);
//! - the special polynomials `z(x, -j)` packaging zeta values at negative
//!   integers, their trivial-zero orders, Carlitz's non-vanishing criterion
//!   and the digit-sum degree formula ([`zeta`]);
//! - zeroes of the special polynomials inside `F_q((1/T))` via Newton polygons
//!   and Newton iteration, together with the digit-permutation action and the
//!   gauge transport of zeroes between uniformizers ([`zeros`], [`laurent`]);
//! - the digit-permutation groups acting on q-adic integers: `ρ_*`, the
//!   conjugate action, q-adic collapse and orbit machinery ([`digits`]);
//! - Carlitz factorials, the Carlitz exponential/logarithm, Bernoulli-Carlitz
//!   numbers and their von Staudt-Clausen denominators ([`carlitz`]);
//! - the classical Bernoulli side: von Staudt-Clausen, Adams and Kummer
//!   congruences, digit-stability windows and Euler's ratio identity as an
//!   exact rational identity ([`classical`]);
//! - divided power series algebras and their digit-permutation automorphisms
//!   ([`measures`]).
//!
//! All values are immutable and all operations are pure functions, so
//! everything here can be shared freely across threads.
//!
//! The [`checks`] module bundles the verification suites that the `ffzeta`
//! command-line tool exposes as `ffzeta verify all`.

pub mod algebra;
pub mod carlitz;
pub mod checks;
pub mod classical;
pub mod digits;
mod error;
pub mod laurent;
pub mod measures;
pub mod rings;
pub mod wire;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};

/// Crate version, recorded in experiment manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
