//! Hyperbolic geometry of the Teichmüller disc in the upper half-plane chart.
//!
//! A point `z` stands for the surface `A_z·s`; its chart length of a holonomy
//! `(a, b)` is `|a − b z| / √(n Im z)`. Horodiscs are sublevel sets of these
//! lengths for cusp holonomies.

mod electric;
mod family;
mod horodisc;
pub(crate) mod hyperbolic;
mod nielsen;
mod overlap;
mod path;
mod truncated;

use thiserror::Error;

use crate::flat::FlatError;
use crate::veech::VeechError;

pub use electric::{electrified_distance, ElectricGraph, ELECTRIC_WINDOW};
pub use family::{farey_in, FamilyCertificate, HoroFamily, DEFAULT_TRANSLATE_RADIUS};
pub use horodisc::{cusp_winding, horoball_gap, horodisc_of, Horodisc};
pub use hyperbolic::{hyp_distance, mobius_apply, point_along, sample_segment, segment_max_height, Geodesic};
pub use nielsen::{nielsen_core, NielsenCore};
pub use overlap::{lens_corners, lens_diameter, overlap_bound, OverlapBound, OverlapPair};
pub use path::{CorePath, PathPiece};
pub use truncated::truncated_distance;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiscError {
    #[error("horodiscs share a cusp")]
    SameCusp,
    #[error("point lies strictly inside a horodisc of the family")]
    PointInsideHoroball,
    #[error("group is elementary: fewer than two limit points")]
    ElementaryGroup,
    #[error("no cusp classes given")]
    EmptyFamily,
    #[error(transparent)]
    Veech(#[from] VeechError),
    #[error(transparent)]
    Flat(#[from] FlatError),
}
