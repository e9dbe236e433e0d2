use serde::Serialize;

use super::curves::CoreCurve;
use super::perm;
use super::saddle::{saddles_in_frame, SaddleConnection};
use super::trace::{Frame, Step};
use super::{FlatError, Holonomy, Origami};

/// A maximal cylinder in a periodic direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cylinder {
    /// Primitive direction, normalized up to sign.
    pub direction: Holonomy,
    /// Squares meeting the cylinder's interior, 0-based and sorted; the area
    /// `A_i` is their count.
    pub squares: Vec<usize>,
    pub area: usize,
    /// Circumference in multiples of the primitive direction: `n_i`.
    pub circumference: usize,
    pub core: CoreCurve,
}

impl Cylinder {
    /// Height in the transverse unit `1/|direction|` of the base surface.
    pub fn height(&self) -> usize {
        self.area / self.circumference
    }

    /// Holonomy of a core curve: `n_i` times the direction.
    pub fn core_holonomy(&self) -> Holonomy {
        self.direction.scale(self.circumference as i64)
    }
}

/// Cylinders and saddle connections of one periodic direction.
#[derive(Clone, Debug, Serialize)]
pub struct DirectionData {
    pub direction: Holonomy,
    pub cylinders: Vec<Cylinder>,
    pub saddle_connections: Vec<SaddleConnection>,
}

impl DirectionData {
    pub fn compute(s: &Origami, direction: Holonomy) -> Result<Self, FlatError> {
        let frame = Frame::new(s, direction)?;
        let cylinders = decompose(&frame);
        let saddle_connections = saddles_in_frame(s, &frame);
        Ok(Self { direction: frame.direction, cylinders, saddle_connections })
    }

    /// Shortest and longest saddle connection multipliers.
    pub fn saddle_multiplier_range(&self) -> Option<(i64, i64)> {
        let ms = self.saddle_connections.iter().map(|sc| sc.multiplier());
        let min = ms.clone().min()?;
        Some((min, ms.max()?))
    }
}

/// Maximal cylinders in a primitive direction, ordered by smallest square.
pub fn cylinder_decomposition(s: &Origami, direction: Holonomy) -> Result<Vec<Cylinder>, FlatError> {
    Ok(decompose(&Frame::new(s, direction)?))
}

pub(crate) fn decompose(frame: &Frame) -> Vec<Cylinder> {
    let o = &frame.origami;
    let n = o.n();
    let mut mu = vec![0; n];
    let mut words: Vec<Vec<Step>> = Vec::with_capacity(n);
    for sq in 0..n {
        let (end, word) = frame.mu(sq);
        mu[sq] = end;
        words.push(word);
    }
    let tau: Vec<usize> = (0..n).map(|sq| frame.tau(sq)).collect();
    let tau_inv = perm::inverse(&tau);

    let rows = perm::cycles(&mu);
    let mut row_of = vec![0; n];
    for (r, cyc) in rows.iter().enumerate() {
        for &sq in cyc {
            row_of[sq] = r;
        }
    }
    // A row whose lower boundary leaf avoids the singular set continues into
    // the row on the other side of that leaf.
    let mut parent: Vec<usize> = (0..rows.len()).collect();
    for (r, cyc) in rows.iter().enumerate() {
        if cyc.iter().all(|&sq| !o.ll_singular(sq)) {
            let other = row_of[tau_inv[cyc[0]]];
            union(&mut parent, r, other);
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); rows.len()];
    for r in 0..rows.len() {
        let root = find(&mut parent, r);
        groups[root].push(r);
    }
    let mut cylinders = Vec::new();
    for group in groups.into_iter().filter(|g| !g.is_empty()) {
        let mut squares: Vec<usize> = group.iter().flat_map(|&r| rows[r].iter().copied()).collect();
        squares.sort_unstable();
        let row = &rows[group[0]];
        let circumference = row.len();
        debug_assert!(group.iter().all(|&r| rows[r].len() == circumference));
        let start = row[0];
        let word: Vec<Step> = row.iter().flat_map(|&sq| words[sq].iter().copied()).collect();
        let (start_square, start_point) = frame.point_to_original(start, frame.q);
        let core = CoreCurve {
            start_square,
            start_point,
            direction: frame.direction,
            period: circumference,
            word: frame.word_to_original(&word),
        };
        cylinders.push(Cylinder {
            direction: frame.direction,
            area: squares.len(),
            squares,
            circumference,
            core,
        });
    }
    cylinders.sort_by_key(|c| c.squares[0]);
    cylinders
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}
