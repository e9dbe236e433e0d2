use serde::Serialize;

use super::{DiscError, HoroFamily, Horodisc};
use crate::flat::{DiscPoint, Holonomy};

/// Largest diameter of `U'(H) ∩ U'(K)` over enumerated pairs of distinct cusps.
#[derive(Clone, Debug, Serialize)]
pub struct OverlapBound {
    pub r_gamma: f64,
    /// `t = log(ε_0 / ε_Γ)`.
    pub t: f64,
    /// Overlapping pairs found (class representative, other cusp, diameter).
    pub pairs: Vec<OverlapPair>,
    pub pairs_checked: usize,
    pub radius: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapPair {
    pub h: Holonomy,
    pub k: Holonomy,
    pub wedge: i64,
    pub diameter: f64,
}

/// Hyperbolic diameter of the lens `U ∩ V`; 0 if they do not overlap.
///
/// In the chart normalizing `U` to `{Im ≥ 1}`, `V` has Euclidean diameter `D`
/// and the lens corners sit at height 1, `2√(D − 1)` apart.
pub fn lens_diameter(u: &Horodisc, v: &Horodisc) -> Result<f64, DiscError> {
    let w = u.holonomy.wedge(&v.holonomy).abs();
    if w == 0 {
        return Err(DiscError::SameCusp);
    }
    let unit = w as f64 / u.n as f64;
    let d = u.level * v.level / (unit * unit);
    Ok(if d <= 1.0 { 0.0 } else { 2.0 * (d - 1.0).sqrt().asinh() })
}

/// Corners of a nonempty lens, in the original chart.
pub fn lens_corners(u: &Horodisc, v: &Horodisc) -> Option<(DiscPoint, DiscPoint)> {
    let w = u.holonomy.wedge(&v.holonomy).abs();
    let unit = w as f64 / u.n as f64;
    let d = u.level * v.level / (unit * unit);
    if w == 0 || d <= 1.0 {
        return None;
    }
    let m = u.normalizer();
    let dir = v.direction();
    let (a, b) = (dir.a as f64, dir.b as f64);
    let c = (m.a * a + m.b * b) / (m.c * a + m.d * b);
    let s = (d - 1.0).sqrt();
    Some((u.denormalize(DiscPoint::new(c - s, 1.0)), u.denormalize(DiscPoint::new(c + s, 1.0))))
}

/// Enumerates each class horodisc at level `ε_0` against the family members
/// from [`HoroFamily::cusp_holonomies`].
pub fn overlap_bound(fam: &HoroFamily, radius: i64) -> Result<OverlapBound, DiscError> {
    if fam.classes.is_empty() {
        return Err(DiscError::EmptyFamily);
    }
    let cusps = fam.cusp_holonomies(radius);
    let mut pairs = Vec::new();
    let mut checked = 0;
    let mut r = 0.0f64;
    for (ci, class) in fam.classes.iter().enumerate() {
        let u = Horodisc::new(class.v_short, fam.eps_zero, fam.n, ci);
        for &(cj, k) in &cusps {
            let v = Horodisc::new(k, fam.eps_zero, fam.n, cj);
            if v.direction() == u.direction() {
                continue;
            }
            checked += 1;
            let diam = lens_diameter(&u, &v)?;
            if diam > 0.0 {
                r = r.max(diam);
                pairs.push(OverlapPair { h: u.holonomy, k: v.holonomy, wedge: u.holonomy.wedge(&v.holonomy).abs(), diameter: diam });
            }
        }
    }
    Ok(OverlapBound { r_gamma: r, t: (fam.eps_zero / fam.eps_gamma).ln(), pairs, pairs_checked: checked, radius })
}
