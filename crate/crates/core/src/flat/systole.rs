use serde::Serialize;

use super::chart::chart_len;
use super::cylinder::{cylinder_decomposition, Cylinder};
use super::{DiscPoint, Holonomy, Origami};

/// Shortest closed flat geodesics at a disc point.
#[derive(Clone, Debug, Serialize)]
pub struct Systole {
    pub length: f64,
    /// Cylinders whose cores realize the minimum, ordered by direction then square.
    pub cylinders: Vec<Cylinder>,
    /// Chart-length radius the search was certified up to.
    pub search_radius: f64,
}

impl Systole {
    pub fn directions(&self) -> Vec<Holonomy> {
        let mut d: Vec<Holonomy> = self.cylinders.iter().map(|c| c.direction).collect();
        d.dedup();
        d
    }
}

/// Systole of the surface at `z`, taken over cylinder core curves.
///
/// Every core in direction `w` has length at least `l_z(w)`, so the search
/// over primitive `w` stops at the best core length found among a few
/// starting directions.
pub fn systole(s: &Origami, z: DiscPoint) -> Systole {
    let n = s.n();
    let core_len = |c: &Cylinder| c.circumference as f64 * chart_len(n, z, c.direction.a as f64, c.direction.b as f64);
    let mut radius = f64::INFINITY;
    let mut found: Vec<(f64, Cylinder)> = Vec::new();
    for (a, b) in [(1, 0), (0, 1), (1, 1), (-1, 1)] {
        for c in cylinder_decomposition(s, Holonomy::new(a, b)).expect("primitive") {
            let l = core_len(&c);
            radius = radius.min(l);
            found.push((l, c));
        }
    }
    let tol = crate::EPS * radius.max(1.0);
    // Slightly enlarged box so rounding cannot drop a boundary direction.
    let reach = radius * (1.0 + 1e-9);
    let bmax = (reach * (n as f64 / z.y).sqrt()).floor() as i64;
    let half_width = reach * (n as f64 * z.y).sqrt();
    let mut best = radius;
    for b in 0..=bmax {
        let center = b as f64 * z.x;
        let alo = (center - half_width).ceil() as i64;
        let ahi = (center + half_width).floor() as i64;
        for a in alo..=ahi {
            let w = Holonomy::new(a, b);
            if (b == 0 && a <= 0) || !w.is_primitive() {
                continue;
            }
            if chart_len(n, z, a as f64, b as f64) > best + tol {
                continue;
            }
            for c in cylinder_decomposition(s, w).expect("primitive") {
                let l = core_len(&c);
                if l <= best + tol {
                    best = best.min(l);
                    found.push((l, c));
                }
            }
        }
    }
    let mut cylinders: Vec<Cylinder> =
        found.into_iter().filter(|(l, _)| *l <= best + tol).map(|(_, c)| c).collect();
    cylinders.sort_by(|x, y| (x.direction, &x.squares).cmp(&(y.direction, &y.squares)));
    cylinders.dedup_by(|x, y| x.direction == y.direction && x.squares == y.squares);
    Systole { length: best, cylinders, search_radius: radius }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_torus() {
        let sys = systole(&Origami::torus(), DiscPoint::I);
        assert!((sys.length - 1.0).abs() < 1e-12);
        assert_eq!(sys.directions(), vec![Holonomy::new(0, 1), Holonomy::new(1, 0)]);
    }

    #[test]
    fn stretched_torus() {
        let z = DiscPoint::new(0.0, 2f64.exp());
        let sys = systole(&Origami::torus(), z);
        assert!((sys.length - (-1f64).exp()).abs() < 1e-12);
        assert_eq!(sys.directions(), vec![Holonomy::new(1, 0)]);
    }

    #[test]
    fn l_shape_at_base() {
        let sys = systole(&Origami::l_shape(), DiscPoint::I);
        assert!((sys.length - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!(sys.cylinders.iter().all(|c| c.circumference == 1));
        assert_eq!(sys.cylinders.len(), 2);
    }

    #[test]
    fn sheared_torus_finds_far_direction() {
        let z = DiscPoint::new(7.3, 0.05);
        let sys = systole(&Origami::torus(), z);
        let w = sys.directions()[0];
        let l = chart_len(1, z, w.a as f64, w.b as f64);
        assert!((l - sys.length).abs() < 1e-12);
        let mut brute = f64::INFINITY;
        for a in -300i64..=300 {
            for b in 1i64..=40 {
                brute = brute.min(chart_len(1, z, a as f64, b as f64));
            }
        }
        brute = brute.min(chart_len(1, z, 1.0, 0.0));
        assert!((brute - sys.length).abs() < 1e-12);
    }
}
