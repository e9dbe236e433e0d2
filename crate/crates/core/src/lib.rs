//! Computable geometry of Teichmüller discs generated by square-tiled surfaces.
//!
//! The crate is split into four layers:
//!
//! - [`flat`]: origamis, their vertices, straight-line flow, saddle connections,
//!   cylinder decompositions, systoles and intersection numbers of core curves.
//! - [`veech`]: the `SL(2,Z)` action on origamis, Veech groups as orbit
//!   stabilizers, cusp classes and word-metric balls.
//! - [`disc`]: upper half-plane geometry of the disc, horodisc families, cusp
//!   winding, and the truncated / electrified distances.
//! - [`coarse`]: cutoff sums, curve-graph estimates, spectra of wedge products,
//!   thick-part constants and the quasi-isometry experiments.
//!
//! Combinatorial data (holonomies, areas, wedges, moduli) is kept in exact
//! integer or rational arithmetic. Hyperbolic quantities are `f64`, compared
//! with the tolerance [`EPS`].

pub mod coarse;
pub mod disc;
pub mod flat;
pub mod veech;

/// Comparison tolerance for floating point hyperbolic geometry.
pub const EPS: f64 = 1e-9;

/// Library version string, echoed into report provenance blocks.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exact rational number used for combinatorial quantities.
pub type Rational = num_rational::Ratio<i64>;

pub mod prelude {
    pub use crate::coarse::{QIReport, SpectrumReport};
    pub use crate::disc::{CorePath, HoroFamily, Horodisc};
    pub use crate::flat::{
        CoreCurve, Cylinder, DiscPoint, Holonomy, Origami, SaddleConnection,
    };
    pub use crate::veech::{FuchsianSubgroup, IntMatrix, ParabolicClass};
    pub use crate::Rational;
}
