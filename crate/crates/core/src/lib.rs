//! Exact Poincaré polynomials for the two smooth components of the moduli
//! space of rank-2 stable torsion-free sheaves with fixed determinant on a
//! nodal curve with two smooth components, and the intersection Poincaré
//! polynomial of the whole space.
//!
//! The crate has two independent routes to the same polynomials. The closed
//! form in [`moduli`] assembles them from the blocks in [`blocks`]. The count
//! route in [`pointcount`] encodes the stratified point counts over a finite
//! field as expression trees, which [`weil`] normalizes and maps to Poincaré
//! polynomials; the two routes are compared as exact rational functions.

pub mod blocks;
pub mod error;
pub mod exactpoly;
pub mod moduli;
pub mod pointcount;
pub mod report;
pub mod weil;

pub use blocks::{GenusPair, StandardBlocks};
pub use error::{AlgebraError, Result};
pub use exactpoly::{IntPoly, RatFunc};
pub use moduli::{BettiTable, Component};
pub use report::{Check, CheckReport};
