//! Effective bounds and complete scans for multiplicative relations
//! `u_n^a = p_1^{g_1} ... p_k^{g_k} u_m^b` in dominant-root linear
//! recurrence sequences.
//!
//! The crate combines four ingredients:
//!
//! * exact evaluation of integer recurrences and certified extraction of
//!   their spectral expansion (characteristic roots and coefficients),
//! * absolute logarithmic heights over the field generated by the dominant
//!   root, feeding an explicit lower bound for linear forms in logarithms,
//! * exact integer lattice basis reduction that converts those linear-form
//!   bounds into small index bounds,
//! * a solver pipeline that orchestrates the bound cascade, the reduction
//!   passes, and the exhaustive scans, and emits a self-contained
//!   certificate that an independent checker can replay.
//!
//! The built-in van der Laan-Padovan preset (order 3, `u_{n+3} = u_{n+1} + u_n`,
//! initial terms 1, 0, 0) exercises the full pipeline; any sequence with a
//! strictly dominant simple real root can be configured.

pub mod error;
pub mod interval;
pub mod lattice;
pub mod matveev;
pub mod baker;
pub mod cinterval;
pub mod pipeline;
pub mod poly;
pub mod roots;
pub mod field;
pub mod heights;
pub mod sequence;
pub mod smooth;
pub mod spectrum;

pub use error::{Error, Result};

/// Default starting precision (bits) for certified arithmetic.
pub const DEFAULT_PRECISION: u32 = 128;
/// Hard cap for the precision retry ladder.
pub const MAX_PRECISION: u32 = 1 << 20;
