use serde::Serialize;

use super::DiscError;
use crate::flat::{chart::chart_len, DiscPoint, Holonomy, RealMatrix};
use crate::veech::{IntMatrix, ParabolicClass};

/// The region `{z : l_z(γ)² ≤ ε}` for the defining holonomy `γ` of a cusp.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Horodisc {
    /// Defining holonomy: the shortest saddle connection in the cusp direction.
    pub holonomy: Holonomy,
    pub level: f64,
    /// Square count of the surface.
    pub n: usize,
    /// Index of the cusp class in the family's class list.
    pub class_index: usize,
}

impl Horodisc {
    pub fn new(holonomy: Holonomy, level: f64, n: usize, class_index: usize) -> Self {
        let holonomy = holonomy.up_to_sign();
        Self { holonomy, level, n, class_index }
    }

    /// Primitive direction `(a, b)` of the cusp `a/b`.
    pub fn direction(&self) -> Holonomy {
        self.holonomy.primitive().expect("nonzero holonomy").0
    }

    /// Cusp point on `∂H²`; `None` for `∞`.
    pub fn cusp(&self) -> Option<f64> {
        let d = self.direction();
        (d.b != 0).then(|| d.a as f64 / d.b as f64)
    }

    pub fn multiplier(&self) -> i64 {
        self.holonomy.gcd()
    }

    /// Euclidean diameter, or the height of the bounding line for `∞`.
    pub fn size(&self) -> f64 {
        let m = self.multiplier() as f64;
        let b = self.direction().b as f64;
        if self.direction().b == 0 {
            m * m / (self.n as f64 * self.level)
        } else {
            self.level * self.n as f64 / (m * m * b * b)
        }
    }

    pub fn contains(&self, z: DiscPoint) -> bool {
        self.length_sq(z) <= self.level * (1.0 + crate::EPS)
    }

    /// Strict interior, with the comparison tolerance.
    pub fn contains_strictly(&self, z: DiscPoint) -> bool {
        self.length_sq(z) < self.level * (1.0 - crate::EPS)
    }

    pub fn length_sq(&self, z: DiscPoint) -> f64 {
        let l = chart_len(self.n, z, self.holonomy.a as f64, self.holonomy.b as f64);
        l * l
    }

    /// Matrix sending the cusp to `∞` and the boundary horocycle to `{Im = 1}`.
    pub fn normalizer(&self) -> RealMatrix {
        let a = IntMatrix::sending_to_horizontal(self.direction()).to_real();
        let m = self.multiplier() as f64;
        let height = m * m / (self.n as f64 * self.level);
        let k = 1.0 / height.sqrt();
        RealMatrix::new(a.a * k, a.b * k, a.c / k, a.d / k)
    }

    pub fn normalize(&self, z: DiscPoint) -> DiscPoint {
        crate::flat::chart::mobius(self.normalizer(), z)
    }

    pub fn denormalize(&self, z: DiscPoint) -> DiscPoint {
        let m = self.normalizer();
        crate::flat::chart::mobius(RealMatrix::new(m.d, -m.b, -m.c, m.a), z)
    }

    /// Hyperbolic distance from a point to the horodisc (0 inside).
    pub fn distance_to(&self, z: DiscPoint) -> f64 {
        (-self.normalize(z).y.ln()).max(0.0)
    }

    /// Nearest point of the horodisc to `z` (itself if inside).
    pub fn projection(&self, z: DiscPoint) -> DiscPoint {
        let w = self.normalize(z);
        if w.y >= 1.0 {
            z
        } else {
            self.denormalize(DiscPoint::new(w.x, 1.0))
        }
    }
}

/// The horodisc of a class at level `ε`, at the class's own direction.
pub fn horodisc_of(class: &ParabolicClass, class_index: usize, level: f64) -> Horodisc {
    Horodisc::new(class.v_short, level, class.n, class_index)
}

/// Distance between horodisc boundaries from the wedge of their holonomies:
/// `max(0, 2 log(|γ_U ∧ γ_V| / (n √(ε_U ε_V))))`.
pub fn horoball_gap(u: &Horodisc, v: &Horodisc) -> Result<f64, DiscError> {
    let wedge = u.holonomy.wedge(&v.holonomy).abs();
    if wedge == 0 {
        return Err(DiscError::SameCusp);
    }
    let unit = wedge as f64 / u.n as f64;
    Ok((2.0 * (unit / (u.level * v.level).sqrt()).ln()).max(0.0))
}

/// Signed version of [`horoball_gap`]; negative values measure overlap.
pub(crate) fn signed_gap(u: &Horodisc, v: &Horodisc) -> f64 {
    let unit = u.holonomy.wedge(&v.holonomy).abs() as f64 / u.n as f64;
    2.0 * (unit / (u.level * v.level).sqrt()).ln()
}

/// Distance along `∂U` between the nearest-point projections of `x` and `y`.
pub fn cusp_winding(u: &Horodisc, x: DiscPoint, y: DiscPoint) -> f64 {
    (u.normalize(x).x - u.normalize(y).x).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_horizontal_is_half_plane() {
        let u = Horodisc::new(Holonomy::new(1, 0), 0.1, 1, 0);
        assert!((u.size() - 10.0).abs() < 1e-12);
        assert!(u.contains(DiscPoint::new(3.0, 10.0)));
        assert!(!u.contains(DiscPoint::new(3.0, 9.99)));
        let one = Horodisc::new(Holonomy::new(1, 0), 1.0, 1, 0);
        assert!(one.contains(DiscPoint::I));
    }

    #[test]
    fn torus_vertical_is_disc_at_zero() {
        let u = Horodisc::new(Holonomy::new(0, 1), 0.1, 1, 0);
        assert_eq!(u.cusp(), Some(0.0));
        assert!((u.size() - 0.1).abs() < 1e-12);
        assert!(u.contains(DiscPoint::new(0.0, 0.1)));
        assert!(!u.contains(DiscPoint::new(0.0, 0.1001)));
        assert!(u.contains(DiscPoint::new(0.05, 0.05)));
        let top = u.normalize(DiscPoint::new(0.0, 0.1));
        assert!((top.y - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gap_examples() {
        let u = Horodisc::new(Holonomy::new(1, 0), 0.1, 1, 0);
        let v = Horodisc::new(Holonomy::new(0, 1), 0.1, 1, 0);
        assert!((horoball_gap(&u, &v).unwrap() - 2.0 * 10f64.ln()).abs() < 1e-12);
        assert_eq!(horoball_gap(&u, &u), Err(DiscError::SameCusp));
        let u1 = Horodisc::new(Holonomy::new(1, 0), 1.0, 1, 0);
        let v1 = Horodisc::new(Holonomy::new(0, 1), 1.0, 1, 0);
        assert_eq!(horoball_gap(&u1, &v1).unwrap(), 0.0);
    }

    #[test]
    fn winding_in_normalized_chart() {
        let u = Horodisc::new(Holonomy::new(1, 0), 1.0, 1, 0);
        assert!((cusp_winding(&u, DiscPoint::I, DiscPoint::new(3.0, 1.0)) - 3.0).abs() < 1e-12);
        assert!(cusp_winding(&u, DiscPoint::I, DiscPoint::new(0.0, 5.0)).abs() < 1e-12);
    }
}
