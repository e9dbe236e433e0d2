//! Veech groups of origamis and finitely generated Fuchsian groups.
//!
//! `SL(2, Z)` acts on origamis through the generators `S` (quarter turn) and
//! `T` (horizontal shear). The Veech group is the stabilizer of the
//! half-translation isomorphism class, computed by walking the orbit and
//! collecting Schreier generators. All matrices are compared in `PSL(2, Z)`.

mod ball;
mod cusps;
mod matrix;
mod orbit;
mod subgroup;

pub use ball::{group_ball, BallElement, DEFAULT_BALL_CAP};
pub use cusps::{cusp_classes, parabolic_constants, CuspCertificate, ParabolicClass, ParabolicConstants};
pub(crate) use cusps::{ser_rational, ser_rational_vec, to_f64};
pub use matrix::{ElementKind, IntMatrix, StLetter};
pub use orbit::{sl2z_move, veech_group, Generator, VeechGroup, DEFAULT_ORBIT_CAP};
pub use subgroup::FuchsianSubgroup;

use thiserror::Error;

use crate::flat::FlatError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VeechError {
    #[error("matrix is not unimodular (det = {0})")]
    NonUnimodular(i64),
    #[error("orbit exceeds cap of {0} origamis")]
    OrbitCapExceeded(usize),
    #[error("word ball exceeds cap of {0} elements")]
    BallCapExceeded(usize),
    #[error("generator {0} does not stabilize the origami")]
    NotASubgroup(String),
    #[error("no parabolic classes")]
    EmptyClassList,
    #[error("subgroup file: {0}")]
    Parse(String),
    #[error(transparent)]
    Flat(#[from] FlatError),
}
