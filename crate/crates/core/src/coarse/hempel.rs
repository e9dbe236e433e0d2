use serde::Serialize;

use super::CoarseError;
use crate::disc::{hyp_distance, sample_segment};
use crate::flat::{intersection_number, systole, Cylinder, DiscPoint, Origami};

/// Upper estimate of the curve-graph distance between systole sets.
#[derive(Clone, Debug, Serialize)]
pub struct HempelEstimate {
    pub value: f64,
    /// Term between the systoles at the two endpoints.
    pub direct: f64,
    /// Cheapest sum of terms along a chain of sample points of `[x, y]`.
    pub chained: f64,
    pub chain_points: usize,
    /// Always true: this bounds the distance from above.
    pub upper_bound: bool,
}

/// `min(direct, chained)` with terms `0` for a shared curve, `1` for disjoint
/// curves and `2 log ι + 2` otherwise. Symmetric in `x` and `y`.
pub fn hempel_estimate(s: &Origami, x: DiscPoint, y: DiscPoint) -> Result<HempelEstimate, CoarseError> {
    let (x, y) = if (y.x, y.y) < (x.x, x.y) { (y, x) } else { (x, y) };
    let sx = systole(s, x).cylinders;
    let sy = systole(s, y).cylinders;
    let direct = hempel_term(s, &sx, &sy)?;
    // Two chain points per unit of hyperbolic length; the chain may jump
    // between any two of them, so the cheapest chain is a shortest path.
    let k = ((2.0 * hyp_distance(x, y)).ceil() as usize).clamp(1, 64);
    let pts = sample_segment(x, y, k);
    let sys: Vec<Vec<Cylinder>> = pts
        .iter()
        .enumerate()
        .map(|(i, &p)| match i {
            0 => sx.clone(),
            _ if i == pts.len() - 1 => sy.clone(),
            _ => systole(s, p).cylinders,
        })
        .collect();
    let mut best = vec![f64::INFINITY; sys.len()];
    best[0] = 0.0;
    for j in 1..sys.len() {
        for i in 0..j {
            if best[i].is_finite() {
                best[j] = best[j].min(best[i] + hempel_term(s, &sys[i], &sys[j])?);
            }
        }
    }
    let chained = best[sys.len() - 1];
    Ok(HempelEstimate { value: direct.min(chained), direct, chained, chain_points: pts.len(), upper_bound: true })
}

fn same_curve(a: &Cylinder, b: &Cylinder) -> bool {
    a.direction.up_to_sign() == b.direction.up_to_sign() && a.squares == b.squares
}

/// Smallest pairwise term between two sets of cylinder cores.
pub fn hempel_term(s: &Origami, a: &[Cylinder], b: &[Cylinder]) -> Result<f64, CoarseError> {
    let mut best = f64::INFINITY;
    for p in a {
        for q in b {
            let t = if same_curve(p, q) {
                0.0
            } else {
                match intersection_number(s, &p.core, &q.core)? {
                    0 => 1.0,
                    i => 2.0 * (i as f64).ln() + 2.0,
                }
            };
            best = best.min(t);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat::Holonomy;

    #[test]
    fn same_point_is_zero() {
        let t = Origami::torus();
        let z = DiscPoint::new(0.2, 1.3);
        assert_eq!(hempel_estimate(&t, z, z).unwrap().value, 0.0);
    }

    #[test]
    fn torus_determinant_terms() {
        let t = Origami::torus();
        // Systole (1,0) high up, (0,1) near 0, (2,5) near 2/5.
        let x = DiscPoint::new(0.0, 5.0);
        let y = DiscPoint::new(0.0, 0.2);
        let e = hempel_estimate(&t, x, y).unwrap();
        assert_eq!(e.direct, 2.0);
        let w = DiscPoint::new(0.4, 0.01);
        assert_eq!(systole(&t, w).directions(), vec![Holonomy::new(2, 5)]);
        let e = hempel_estimate(&t, x, w).unwrap();
        assert!((e.direct - (2.0 * 5f64.ln() + 2.0)).abs() < 1e-12);
        assert!(e.value <= e.direct);
    }

    #[test]
    fn symmetric() {
        let l = Origami::l_shape();
        let (x, y) = (DiscPoint::new(0.3, 0.4), DiscPoint::new(-1.2, 2.0));
        assert_eq!(hempel_estimate(&l, x, y).unwrap().value, hempel_estimate(&l, y, x).unwrap().value);
    }
}
