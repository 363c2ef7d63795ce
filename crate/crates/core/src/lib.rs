//! Exact divisor-class arithmetic on the del Pezzo surfaces `S_r`
//! (`3 ≤ r ≤ 8`) and the face lattices of the Gosset polytopes `(r-4)_21`
//! that the lines, rulings and exceptional systems of `S_r` realise.
//!
//! - [`picard`]: the lattice `Pic S_r`, its intersection form and canonical class.
//! - [`enumerate`]: every class with given `D²` and `D·K`, skew-line decomposition.
//! - [`weyl`]: root reflections, orbits, Weyl group orders.
//! - [`gosset`]: the skew graph on lines, its simplexes and crosspolytopes.
//! - [`transforms`]: blow-down degrees, `N_k` neighbourhoods, Gieser/Bertini.
//! - [`verify`] and [`export`]: the checks and file formats behind the CLI.

pub mod enumerate;
pub mod error;
pub mod export;
pub mod fixture;
pub mod gosset;
pub mod picard;
pub mod transforms;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use picard::{intersect, DivisorClass, Rational, Surface};
