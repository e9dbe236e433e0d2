use serde::Serialize;

use super::CoarseError;
use crate::disc::{cusp_winding, HoroFamily, Horodisc};
use crate::flat::{cylinder_decomposition, DiscPoint, Origami};
use crate::veech::IntMatrix;

/// Certified interval for the twisting about the cores of one cusp.
#[derive(Clone, Debug, Serialize)]
pub struct TwistInterval {
    pub lo: f64,
    pub hi: f64,
    /// Cusp winding at level `ε_Γ`.
    pub s: f64,
    pub m_min: f64,
    pub m_max: f64,
    /// Whole turns of a sheared transversal, per cylinder of the cusp direction.
    pub counts: Vec<u64>,
}

impl TwistInterval {
    pub fn contains(&self, t: f64) -> bool {
        self.lo - crate::EPS <= t && t <= self.hi + crate::EPS
    }
}

/// `[m_H·s − 2, m'_H·s + 2]` for the horodisc `u` of the family, together
/// with the turn counts read off the cylinder decomposition directly.
pub fn twisting_interval(
    s: &Origami,
    fam: &HoroFamily,
    u: &Horodisc,
    x: DiscPoint,
    y: DiscPoint,
) -> Result<TwistInterval, CoarseError> {
    let class = fam.classes.get(u.class_index).ok_or(CoarseError::NoParabolics)?;
    let (m_min, m_max) = class.moduli_range(u.level);
    let sw = cusp_winding(u, x, y);
    // Shear in the chart where the cusp direction is horizontal.
    let a = IntMatrix::sending_to_horizontal(u.direction());
    let dx = (a.act_disc(x).x - a.act_disc(y).x).abs();
    let counts = cylinder_decomposition(s, u.direction())?
        .iter()
        .map(|c| (dx * c.height() as f64 / c.circumference as f64 + 1e-12).floor() as u64)
        .collect();
    Ok(TwistInterval { lo: m_min * sw - 2.0, hi: m_max * sw + 2.0, s: sw, m_min, m_max, counts })
}
