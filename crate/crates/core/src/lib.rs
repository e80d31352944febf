//! Binary divisible codes: forms and radicals, doubling constructions,
//! code equivalence, and the classification of maximal triply even codes
//! of length 48.

pub mod constructions;
pub mod divisible;
pub mod error;
pub mod gf2;
pub mod pipeline;
pub mod symmetry;

pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, Gf2Vector, LinearCode, LinearMap, WeightEnumerator};
