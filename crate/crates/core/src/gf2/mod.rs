//! Linear algebra over the two-element field and binary linear codes.

mod code;
mod enumerator;
pub mod hexio;
mod linmap;
mod matrix;
mod vector;

pub use code::{LinearCode, Words, DEFAULT_ENUMERATION_CAP_LOG2};
pub use enumerator::{macwilliams, macwilliams_rational, WeightEnumerator};
pub use hexio::CodeRecord;
pub use linmap::{rank_u32, LinearMap, SpanU32, MAX_MAP_DIM};
pub use matrix::Gf2Matrix;
pub use vector::Gf2Vector;
