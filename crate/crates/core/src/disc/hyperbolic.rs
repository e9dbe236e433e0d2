use crate::flat::{apply_matrix, DiscPoint, FlatError, RealMatrix};

/// Möbius action of a determinant-one real matrix.
pub fn mobius_apply(m: RealMatrix, z: DiscPoint) -> Result<DiscPoint, FlatError> {
    apply_matrix(z, m)
}

/// Hyperbolic distance in the upper half-plane (curvature −1).
pub fn hyp_distance(z: DiscPoint, w: DiscPoint) -> f64 {
    let d = (z.x - w.x).hypot(z.y - w.y);
    2.0 * (d / (2.0 * (z.y * w.y).sqrt())).asinh()
}

/// The geodesic through two distinct points: a vertical line or a semicircle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geodesic {
    Vertical { x: f64 },
    Circle { center: f64, radius: f64 },
}

impl Geodesic {
    pub fn through(z: DiscPoint, w: DiscPoint) -> Self {
        let scale = 1.0 + z.x.abs().max(w.x.abs());
        if (z.x - w.x).abs() <= 1e-14 * scale {
            return Geodesic::Vertical { x: z.x };
        }
        let center = (z.x * z.x + z.y * z.y - w.x * w.x - w.y * w.y) / (2.0 * (z.x - w.x));
        let radius = (z.x - center).hypot(z.y);
        Geodesic::Circle { center, radius }
    }
}

/// Largest imaginary part along the segment `[z, w]`.
pub fn segment_max_height(z: DiscPoint, w: DiscPoint) -> f64 {
    match Geodesic::through(z, w) {
        Geodesic::Vertical { .. } => z.y.max(w.y),
        Geodesic::Circle { center, radius } => {
            let (lo, hi) = (z.x.min(w.x), z.x.max(w.x));
            if lo <= center && center <= hi {
                radius
            } else {
                z.y.max(w.y)
            }
        }
    }
}

/// Point at hyperbolic distance `t` from `z` towards `w` along the geodesic.
pub fn point_along(z: DiscPoint, w: DiscPoint, t: f64) -> DiscPoint {
    let total = hyp_distance(z, w);
    if total <= 0.0 {
        return z;
    }
    match Geodesic::through(z, w) {
        Geodesic::Vertical { x } => {
            let sign = if w.y >= z.y { 1.0 } else { -1.0 };
            DiscPoint::new(x, z.y * (sign * t).exp())
        }
        Geodesic::Circle { center, radius } => {
            // Arclength parameter: u = atanh(cos θ) on the semicircle, θ from the positive axis.
            let u = |p: DiscPoint| ((p.x - center) / radius).clamp(-1.0, 1.0).atanh();
            let (uz, uw) = (u(z), u(w));
            let sign = if uw >= uz { 1.0 } else { -1.0 };
            let v = uz + sign * t;
            let cos = v.tanh();
            let sin = 1.0 / v.cosh();
            DiscPoint::new(center + radius * cos, radius * sin)
        }
    }
}

/// `n + 1` equally spaced points on `[z, w]`, endpoints included.
pub fn sample_segment(z: DiscPoint, w: DiscPoint, n: usize) -> Vec<DiscPoint> {
    let total = hyp_distance(z, w);
    let mut out: Vec<DiscPoint> = (0..n).map(|k| point_along(z, w, total * k as f64 / n as f64)).collect();
    out.push(w);
    out
}
