//! Spectrum of the PT-symmetric infinite square well whose two halves are
//! joined at the shifted point `iω` instead of the origin.
//!
//! The left half carries `(κ*)² = −E + iZ`, the right half `κ² = −E − iZ`,
//! with `κ = s − it`, so that `E = t² − s²` and `Z = 2st`. Real levels are
//! the zeros of `s·sinh σ + t·sin τ` on the hyperbola `2st = Z`, where
//! `σ = 2(s − tω)` and `τ = 2(t + sω)`. Complex levels are zeros of the
//! entire function [`matching::quantization_function`].

// `!(x > 0.0)` style guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constraint;
pub mod error;
pub mod matching;
pub mod model;
pub mod roots;
pub mod spectrum;

pub use error::{Error, Result};
pub use model::{BoundState, LatticeIndex, LevelKind, ModelParams, RotatedPoint, Sign, WaveVector};
