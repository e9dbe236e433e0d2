//! Square-tiled half-translation surfaces.
//!
//! An [`Origami`] is `n` unit squares glued by two permutations: `h` sends a
//! square to its right neighbour and `v` to its top neighbour. All square
//! corners are cone points of angle `2πk`; corners of angle `> 2π` are the
//! singular set, except on genus-one surfaces where every corner is marked so
//! that saddle connections still exist.

pub(crate) mod chart;
mod curves;
mod cylinder;
mod holonomy;
mod origami;
pub(crate) mod perm;
mod saddle;
mod systole;
pub(crate) mod trace;

pub use chart::{
    apply_matrix, length_at, length_sq_exact, mobius_exact, ChartLength, DiscPoint, RealMatrix,
};
pub use curves::{intersection_number, CoreCurve};
pub use cylinder::{cylinder_decomposition, Cylinder, DirectionData};
pub use holonomy::Holonomy;
pub use origami::{Corner, Origami, OrigamiSpec, VertexData};
pub use saddle::{enumerate_saddle_connections, SaddleConnection, DEFAULT_SADDLE_CAP};
pub use systole::{systole, Systole};
pub use trace::{replay, word_holonomy, word_string, LocalPoint, Step};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlatError {
    #[error("not a permutation of 1..={n}: {detail}")]
    NonPermutation { n: usize, detail: String },
    #[error("surface is disconnected: square 1 reaches {reached} of {n} squares")]
    Disconnected { reached: usize, n: usize },
    #[error("zero holonomy vector")]
    ZeroVector,
    #[error("direction ({0}, {1}) is not primitive")]
    NonPrimitive(i64, i64),
    #[error("matrix is not unimodular (det = {0})")]
    NonUnimodular(f64),
    #[error("saddle connection bound {bound} exceeds cap {cap}")]
    BoundTooLarge { bound: f64, cap: f64 },
    #[error("curve does not close up: {0}")]
    NotClosed(String),
    #[error("parse error: {0}")]
    Parse(String),
}
