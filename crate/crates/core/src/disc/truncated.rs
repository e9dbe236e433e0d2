use super::hyperbolic::{hyp_distance, segment_max_height, Geodesic};
use super::path::{CorePath, PathPiece};
use super::{DiscError, HoroFamily, Horodisc};
use crate::flat::DiscPoint;

/// A maximal subsegment of `[x, y]` inside one horodisc.
#[derive(Clone, Debug)]
pub(crate) struct Penetration {
    pub disc: Horodisc,
    pub entry: DiscPoint,
    pub exit: DiscPoint,
    /// Half-width `s` of the chord in the normalized chart.
    pub half_width: f64,
    /// Distance from `x` to the entry point.
    pub offset: f64,
}

impl Penetration {
    /// Hyperbolic length of the chord, `2 asinh(s)`.
    pub fn chord(&self) -> f64 {
        2.0 * self.half_width.asinh()
    }

    /// Length of the horocyclic arc between entry and exit, `2s`.
    pub fn arc(&self) -> f64 {
        2.0 * self.half_width
    }
}

/// Horodiscs of the family at level `ε_Γ` crossed by the segment `[x, y]`.
pub(crate) fn penetrations(x: DiscPoint, y: DiscPoint, fam: &HoroFamily) -> Result<Vec<Penetration>, DiscError> {
    let level = fam.eps_gamma;
    let lo = x.x.min(y.x);
    let hi = x.x.max(y.x);
    let y_min = x.y.min(y.y);
    let y_max = segment_max_height(x, y);
    let mut out = Vec::new();
    for disc in fam.candidates(lo, hi, y_min, y_max, level) {
        if disc.contains_strictly(x) || disc.contains_strictly(y) {
            return Err(DiscError::PointInsideHoroball);
        }
        let (xn, yn) = (disc.normalize(x), disc.normalize(y));
        let Geodesic::Circle { center, radius } = Geodesic::through(xn, yn) else {
            continue;
        };
        if radius <= 1.0 {
            continue;
        }
        let s = (radius * radius - 1.0).sqrt();
        let tol = 1e-12 * (1.0 + center.abs() + radius);
        let (l, r) = (xn.x.min(yn.x), xn.x.max(yn.x));
        if l > center - s + tol || r < center + s - tol {
            continue;
        }
        let (mut a, mut b) = (DiscPoint::new(center - s, 1.0), DiscPoint::new(center + s, 1.0));
        if xn.x > yn.x {
            std::mem::swap(&mut a, &mut b);
        }
        let entry = disc.denormalize(a);
        let exit = disc.denormalize(b);
        out.push(Penetration { offset: hyp_distance(x, entry), disc, entry, exit, half_width: s });
    }
    out.sort_by(|p, q| p.offset.total_cmp(&q.offset));
    Ok(out)
}

/// Length of the detour path: the geodesic `[x, y]` with each subsegment
/// inside a level-`ε_Γ` horodisc replaced by the horocyclic arc between its
/// endpoints.
///
/// This is an upper construction, not the infimum over avoiding paths.
pub fn truncated_distance(x: DiscPoint, y: DiscPoint, fam: &HoroFamily) -> Result<(f64, CorePath), DiscError> {
    if x == y {
        return Ok((0.0, CorePath::default()));
    }
    let pens = penetrations(x, y, fam)?;
    let mut pieces = Vec::new();
    let mut cur = x;
    for p in &pens {
        pieces.push(PathPiece::Geodesic { from: cur, to: p.entry, length: hyp_distance(cur, p.entry) });
        pieces.push(PathPiece::Horocyclic {
            from: p.entry,
            to: p.exit,
            length: p.arc(),
            cusp: p.disc.holonomy,
            level: p.disc.level,
            n: p.disc.n,
        });
        cur = p.exit;
    }
    pieces.push(PathPiece::Geodesic { from: cur, to: y, length: hyp_distance(cur, y) });
    // Computed from the chord lengths so that d ≥ hyp_distance holds exactly.
    let d = hyp_distance(x, y) + pens.iter().map(|p| p.arc() - p.chord()).sum::<f64>();
    let mut path = CorePath::new(pieces);
    path.length = d;
    Ok((d, path))
}
