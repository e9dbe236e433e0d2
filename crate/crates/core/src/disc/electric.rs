use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::horodisc::signed_gap;
use super::hyperbolic::{hyp_distance, segment_max_height};
use super::path::{CorePath, PathPiece};
use super::{HoroFamily, Horodisc};
use crate::flat::{DiscPoint, RealMatrix};

/// Horodiscs farther than this from the segment `[x, y]` are not used as shortcuts.
pub const ELECTRIC_WINDOW: f64 = 2.0;

/// Distance in the electrified metric, where each horodisc of the family at
/// level `ε_Γ` is coned off to diameter one.
///
/// Shortest path over the graph on `x`, `y` and the horodiscs within
/// [`ELECTRIC_WINDOW`] of the segment. Entering a horodisc from a point costs
/// the distance to it plus ½, and hopping between two costs the gap plus 1.
pub fn electrified_distance(x: DiscPoint, y: DiscPoint, fam: &HoroFamily) -> (f64, CorePath) {
    if x == y {
        return (0.0, CorePath::default());
    }
    let pts = [x, y];
    let discs = window_candidates(&pts, fam);
    let g = Graph::new(&pts, &discs);
    let (dist, prev) = g.dijkstra(0);
    (dist[1], g.path(&prev, 0, 1))
}

/// Electrified distances among a fixed point set, all computed over one
/// shared horodisc set so that they satisfy the triangle inequality.
#[derive(Clone, Debug)]
pub struct ElectricGraph {
    pub points: Vec<DiscPoint>,
    pub horodiscs: Vec<Horodisc>,
    dist: Vec<Vec<f64>>,
}

impl ElectricGraph {
    pub fn new(points: &[DiscPoint], fam: &HoroFamily) -> Self {
        let discs = window_candidates(points, fam);
        let g = Graph::new(points, &discs);
        let dist = (0..points.len())
            .map(|i| {
                let (d, _) = g.dijkstra(i);
                d[..points.len()].to_vec()
            })
            .collect();
        Self { points: points.to_vec(), horodiscs: discs, dist }
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }
}

/// Horodiscs within the window of some segment between the given points.
fn window_candidates(points: &[DiscPoint], fam: &HoroFamily) -> Vec<Horodisc> {
    let rho = ELECTRIC_WINDOW;
    let mut segs = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            segs.push((points[i], points[j]));
        }
    }
    if segs.is_empty() {
        return Vec::new();
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = 0.0f64;
    for &(a, b) in &segs {
        lo = lo.min(a.x.min(b.x));
        hi = hi.max(a.x.max(b.x));
        y_min = y_min.min(a.y.min(b.y));
        y_max = y_max.max(segment_max_height(a, b));
    }
    let spread = y_max * rho.sinh();
    let mut out: Vec<Horodisc> = fam
        .candidates(lo - spread, hi + spread, y_min * (-rho).exp(), y_max * rho.exp(), fam.eps_gamma)
        .into_iter()
        .filter(|h| {
            segs.iter().any(|&(a, b)| {
                let top = segment_max_height(h.normalize(a), h.normalize(b));
                -top.ln() <= rho
            })
        })
        .collect();
    out.sort_by(|a, b| a.holonomy.cmp(&b.holonomy));
    out.dedup_by(|a, b| a.holonomy == b.holonomy);
    out
}

struct Graph<'a> {
    points: &'a [DiscPoint],
    discs: &'a [Horodisc],
}

#[derive(PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Graph<'a> {
    fn new(points: &'a [DiscPoint], discs: &'a [Horodisc]) -> Self {
        Self { points, discs }
    }

    fn len(&self) -> usize {
        self.points.len() + self.discs.len()
    }

    fn weight(&self, i: usize, j: usize) -> f64 {
        let p = self.points.len();
        match (i < p, j < p) {
            (true, true) => hyp_distance(self.points[i], self.points[j]),
            (true, false) => self.discs[j - p].distance_to(self.points[i]) + 0.5,
            (false, true) => self.discs[i - p].distance_to(self.points[j]) + 0.5,
            (false, false) => signed_gap(&self.discs[i - p], &self.discs[j - p]).max(0.0) + 1.0,
        }
    }

    fn dijkstra(&self, src: usize) -> (Vec<f64>, Vec<usize>) {
        let n = self.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut prev = vec![usize::MAX; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[src] = 0.0;
        heap.push(Item(0.0, src));
        while let Some(Item(d, u)) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for v in 0..n {
                if v == u || done[v] {
                    continue;
                }
                let nd = d + self.weight(u, v);
                if nd < dist[v] {
                    dist[v] = nd;
                    prev[v] = u;
                    heap.push(Item(nd, v));
                }
            }
        }
        (dist, prev)
    }

    fn path(&self, prev: &[usize], src: usize, dst: usize) -> CorePath {
        let mut nodes = vec![dst];
        while *nodes.last().expect("nonempty") != src {
            nodes.push(prev[*nodes.last().expect("nonempty")]);
        }
        nodes.reverse();
        let p = self.points.len();
        let mut pieces = Vec::new();
        // Current position and the horodisc we are inside, if any.
        let mut cur = self.points[src];
        let mut inside: Option<&Horodisc> = None;
        for &v in &nodes[1..] {
            if v < p {
                let target = self.points[v];
                if let Some(u) = inside.take() {
                    let exit = u.projection(target);
                    pieces.push(electric(u, cur, exit));
                    cur = exit;
                }
                push_geodesic(&mut pieces, cur, target);
                cur = target;
            } else {
                let d = &self.discs[v - p];
                match inside.take() {
                    None => {
                        let entry = d.projection(cur);
                        push_geodesic(&mut pieces, cur, entry);
                        cur = entry;
                    }
                    Some(u) => {
                        let (exit, entry) = closest_pair(u, d);
                        pieces.push(electric(u, cur, exit));
                        push_geodesic(&mut pieces, exit, entry);
                        cur = entry;
                    }
                }
                inside = Some(d);
            }
        }
        // Half-costs at both ends of a disc add up to one electric piece.
        let mut path = CorePath::new(pieces);
        path.length = nodes.windows(2).map(|w| self.weight(w[0], w[1])).sum();
        path
    }
}

fn electric(u: &Horodisc, from: DiscPoint, to: DiscPoint) -> PathPiece {
    PathPiece::Electric { from, to, length: 1.0, cusp: u.holonomy }
}

fn push_geodesic(pieces: &mut Vec<PathPiece>, from: DiscPoint, to: DiscPoint) {
    if from != to {
        pieces.push(PathPiece::Geodesic { from, to, length: hyp_distance(from, to) });
    }
}

/// Nearest points of two horodiscs: exit from `u`, entry to `v`.
fn closest_pair(u: &Horodisc, v: &Horodisc) -> (DiscPoint, DiscPoint) {
    if u.cusp().is_some() && v.cusp().is_none() {
        let (b, a) = closest_pair(v, u);
        return (a, b);
    }
    // In u's normalized chart v's cusp sits at a real point c on the line to ∞.
    let c = boundary_image(u.normalizer(), v);
    let top = (-signed_gap(u, v)).exp().min(1.0);
    (u.denormalize(DiscPoint::new(c, 1.0)), u.denormalize(DiscPoint::new(c, top)))
}

fn boundary_image(m: RealMatrix, v: &Horodisc) -> f64 {
    let d = v.direction();
    let (a, b) = (d.a as f64, d.b as f64);
    // Cusp a/b as the projective point (a : b).
    (m.a * a + m.b * b) / (m.c * a + m.d * b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat::Origami;

    fn torus() -> HoroFamily {
        HoroFamily::lattice(&Origami::torus(), 0.1, 0.5).unwrap()
    }

    #[test]
    fn high_points_use_the_horodisc_at_infinity() {
        let fam = torus();
        let (x, y) = (DiscPoint::new(0.0, 5.0), DiscPoint::new(40.0, 5.0));
        let (d, path) = electrified_distance(x, y, &fam);
        // Both points are ln 2 below the horocycle at height 10.
        assert!((d - (2.0 * 2f64.ln() + 1.0)).abs() < 1e-9, "{d}");
        assert!((path.length - d).abs() < 1e-9);
        assert!(path.max_joint_error() < 1e-9);
        assert!(d <= hyp_distance(x, y));
    }

    #[test]
    fn electric_is_at_most_hyperbolic() {
        let fam = torus();
        let pts = [DiscPoint::new(0.3, 0.8), DiscPoint::new(2.1, 1.4), DiscPoint::new(-1.0, 0.2)];
        for &a in &pts {
            for &b in &pts {
                assert!(electrified_distance(a, b, &fam).0 <= hyp_distance(a, b) + 1e-12);
            }
        }
    }

    #[test]
    fn graph_satisfies_triangle_inequality() {
        let fam = torus();
        let pts = [DiscPoint::new(0.3, 0.8), DiscPoint::new(2.1, 1.4), DiscPoint::new(-1.0, 0.2), DiscPoint::new(5.0, 3.0)];
        let g = ElectricGraph::new(&pts, &fam);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert!(g.distance(i, k) <= g.distance(i, j) + g.distance(j, k) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn path_between_finite_cusps_is_continuous() {
        let fam = torus();
        let (x, y) = (DiscPoint::new(0.0, 0.01), DiscPoint::new(1.0, 0.01));
        let (d, path) = electrified_distance(x, y, &fam);
        assert!(d < hyp_distance(x, y));
        assert!(path.max_joint_error() < 1e-6, "{:?}", path);
        assert!((path.length - d).abs() < 1e-9);
    }
}
