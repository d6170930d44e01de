//! Similarity isometries of planar crystallographic point packings, in exact
//! arithmetic over the Gaussian and Eisenstein integers.
//!
//! - [`ring`]: `Z[i]`, `Z[ω]` and their fraction fields.
//! - [`lattice`]: rational-basis planar lattices.
//! - [`similarity`]: similarities, denominators, scaling-factor sets.
//! - [`packing`]: point packings and the subpacking decision procedure.
//! - [`oracle`]: independent brute-force verification.

pub mod error;
pub mod lattice;
pub mod oracle;
pub mod packing;
pub mod ring;
pub mod similarity;

pub use error::{Error, Result};
pub use lattice::{Lattice, Mat2};
pub use packing::{check_similarity, PointPacking, SimilarityReport};
pub use ring::{FieldElem, Ring, RingElem};
pub use similarity::{Direction, ScalSet, Similarity};
