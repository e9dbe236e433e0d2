use serde::Serialize;

use super::DiscError;
use crate::flat::DiscPoint;
use crate::veech::{group_ball, ElementKind, FuchsianSubgroup, DEFAULT_BALL_CAP};

/// Inner approximation of the convex hull of the limit set.
#[derive(Clone, Debug, Serialize)]
pub struct NielsenCore {
    /// Finite-index subgroups of `PSL(2, Z)`: the core is the whole disc.
    pub lattice: bool,
    /// Sorted finite limit points found; `∞` is recorded separately.
    pub limit_points: Vec<f64>,
    pub has_infinity: bool,
    pub radius: usize,
}

/// Limit points are the axis endpoints of hyperbolic elements of word length
/// at most `radius`; membership is in their ideal polygon.
pub fn nielsen_core(g: &FuchsianSubgroup, radius: usize) -> Result<NielsenCore, DiscError> {
    if g.full_veech {
        return Ok(NielsenCore { lattice: true, limit_points: Vec::new(), has_infinity: true, radius });
    }
    let ball = group_ball(g, radius, DEFAULT_BALL_CAP)?;
    let mut pts = Vec::new();
    let mut has_infinity = false;
    let mut hyperbolic = false;
    for e in &ball {
        if e.matrix.classify() != ElementKind::Hyperbolic {
            continue;
        }
        hyperbolic = true;
        for p in e.matrix.fixed_points() {
            if p.is_infinite() {
                has_infinity = true;
            } else {
                pts.push(p);
            }
        }
    }
    if !hyperbolic {
        return Err(DiscError::ElementaryGroup);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
    if pts.len() + has_infinity as usize <= 2 {
        return Err(DiscError::ElementaryGroup);
    }
    Ok(NielsenCore { lattice: false, limit_points: pts, has_infinity, radius })
}

impl NielsenCore {
    pub fn member(&self, z: DiscPoint) -> bool {
        if self.lattice {
            return true;
        }
        let p = &self.limit_points;
        let (first, last) = (p[0], p[p.len() - 1]);
        let tol = crate::EPS;
        let outer = if self.has_infinity {
            z.x >= first - tol && z.x <= last + tol
        } else {
            dist_sq_to_mid(z, first, last) <= ((last - first) / 2.0).powi(2) * (1.0 + tol)
        };
        // Outside each semicircle spanning consecutive limit points.
        outer
            && p.windows(2).all(|w| {
                let r2 = ((w[1] - w[0]) / 2.0).powi(2);
                dist_sq_to_mid(z, w[0], w[1]) >= r2 * (1.0 - tol)
            })
    }
}

fn dist_sq_to_mid(z: DiscPoint, a: f64, b: f64) -> f64 {
    let c = (a + b) / 2.0;
    (z.x - c).powi(2) + z.y * z.y
}
