use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{FlatError, Holonomy};
use crate::Rational;

/// A point `x + iy` of the upper half-plane chart of the Teichmüller disc.
///
/// The point `i` is the base origami itself; `z` corresponds to the surface
/// whose chart sends a holonomy `(a, b)` to `(a − b·z)/√(n·Im z)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscPoint {
    pub x: f64,
    pub y: f64,
}

impl DiscPoint {
    pub const I: DiscPoint = DiscPoint { x: 0.0, y: 1.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self { x: z.re, y: z.im }
    }
}

/// A real `2×2` matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl RealMatrix {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Teichmüller geodesic flow `diag(e^{t/2}, e^{−t/2})`.
    pub fn geodesic_flow(t: f64) -> Self {
        Self::new((t / 2.0).exp(), 0.0, 0.0, (-t / 2.0).exp())
    }

    /// Unipotent flow `[[1, s], [0, 1]]`.
    pub fn unipotent(s: f64) -> Self {
        Self::new(1.0, s, 0.0, 1.0)
    }
}

/// Chart image of a holonomy at a disc point, in unit-area normalization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChartLength {
    pub length: f64,
    pub horizontal: f64,
    pub vertical: f64,
}

/// Flat length of `w` on the surface at `z`; `n` is the square count.
pub fn length_at(n: usize, z: DiscPoint, w: Holonomy) -> Result<ChartLength, FlatError> {
    if w.is_zero() {
        return Err(FlatError::ZeroVector);
    }
    let scale = (n as f64 * z.y).sqrt();
    let (a, b) = (w.a as f64, w.b as f64);
    let horizontal = (a - b * z.x) / scale;
    let vertical = b * z.y / scale;
    Ok(ChartLength { length: horizontal.hypot(vertical), horizontal, vertical })
}

/// `l_z(w)` without error handling; `w` must be nonzero.
pub(crate) fn chart_len(n: usize, z: DiscPoint, a: f64, b: f64) -> f64 {
    let dx = a - b * z.x;
    let dy = b * z.y;
    dx.hypot(dy) / (n as f64 * z.y).sqrt()
}

/// Möbius action of a determinant-one matrix on the chart.
pub fn apply_matrix(z: DiscPoint, m: RealMatrix) -> Result<DiscPoint, FlatError> {
    let det = m.det();
    if (det - 1.0).abs() > crate::EPS {
        return Err(FlatError::NonUnimodular(det));
    }
    Ok(mobius(m, z))
}

pub(crate) fn mobius(m: RealMatrix, z: DiscPoint) -> DiscPoint {
    let zc = z.to_complex();
    let w = (zc * m.a + m.b) / (zc * m.c + m.d);
    // Keep the imaginary part exact-signed: Im = y/|cz+d|².
    let den = (m.c * z.x + m.d).powi(2) + (m.c * z.y).powi(2);
    DiscPoint { x: w.re, y: z.y / den }
}

/// Exact squared chart length `|a − b z|²/(n·Im z)` at a rational point.
pub fn length_sq_exact(n: usize, x: Rational, y: Rational, w: Holonomy) -> Rational {
    let a = Rational::from_integer(w.a);
    let b = Rational::from_integer(w.b);
    let dx = a - b * x;
    let dy = b * y;
    (dx * dx + dy * dy) / (Rational::from_integer(n as i64) * y)
}

/// Exact Möbius action of an integer matrix `[[p, q], [r, s]]` at a rational point.
pub fn mobius_exact(p: i64, q: i64, r: i64, s: i64, x: Rational, y: Rational) -> (Rational, Rational) {
    let (p, q, r, s) = (
        Rational::from_integer(p),
        Rational::from_integer(q),
        Rational::from_integer(r),
        Rational::from_integer(s),
    );
    let den = (r * x + s) * (r * x + s) + r * r * y * y;
    let re = ((p * x + q) * (r * x + s) + p * r * y * y) / den;
    let im = (p * s - q * r) * y / den;
    (re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn base_chart_is_identity() {
        let l = length_at(1, DiscPoint::I, Holonomy::new(1, 0)).unwrap();
        assert!(close(l.length, 1.0));
        let l = length_at(1, DiscPoint::I, Holonomy::new(3, 4)).unwrap();
        assert!(close(l.length, 5.0));
        assert!(close(l.horizontal, 3.0) && close(l.vertical, 4.0));
        assert_eq!(length_at(1, DiscPoint::I, Holonomy::new(0, 0)), Err(FlatError::ZeroVector));
    }

    #[test]
    fn horizontal_length_ignores_shear() {
        for s in [-3.0, 0.25, 7.5] {
            let l = length_at(3, DiscPoint::new(s, 1.0), Holonomy::new(1, 0)).unwrap();
            assert!(close(l.length, 1.0 / 3f64.sqrt()));
        }
    }

    #[test]
    fn flows() {
        let z = apply_matrix(DiscPoint::I, RealMatrix::geodesic_flow(1.3)).unwrap();
        assert!(close(z.x, 0.0) && close(z.y, 1.3f64.exp()));
        let z = apply_matrix(DiscPoint::new(0.5, 2.0), RealMatrix::unipotent(1.5)).unwrap();
        assert!(close(z.x, 2.0) && close(z.y, 2.0));
        let z = apply_matrix(DiscPoint::I, RealMatrix::new(0.0, -1.0, 1.0, 0.0)).unwrap();
        assert!(close(z.x, 0.0) && close(z.y, 1.0));
        assert!(apply_matrix(DiscPoint::I, RealMatrix::new(2.0, 0.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn geodesic_flow_length_has_single_minimum() {
        // l(t)² = e^{-t} + e^{t} for w = (1, 1) on the torus.
        let w = Holonomy::new(1, 1);
        let mut prev = f64::INFINITY;
        let mut decreasing = true;
        for k in -40..=40 {
            let t = k as f64 * 0.1;
            let z = DiscPoint::new(0.0, t.exp());
            let l = length_at(1, z, w).unwrap().length;
            assert!(close(l * l, (-t).exp() + t.exp()));
            if l > prev {
                decreasing = false;
            } else {
                assert!(decreasing, "length rose and fell again");
            }
            prev = l;
        }
    }

    #[test]
    fn exact_mobius_matches_float() {
        let (x, y) = (Rational::new(1, 3), Rational::new(5, 4));
        let (re, im) = mobius_exact(2, 1, 1, 1, x, y);
        let z = mobius(RealMatrix::new(2.0, 1.0, 1.0, 1.0), DiscPoint::new(1.0 / 3.0, 1.25));
        assert!(close(*re.numer() as f64 / *re.denom() as f64, z.x));
        assert!(close(*im.numer() as f64 / *im.denom() as f64, z.y));
    }
}
