//! Exact straight-line flow across square edges.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{FlatError, Holonomy, Origami};
use crate::Rational;

/// One crossing of a square edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    #[serde(rename = "R")]
    Right,
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "U")]
    Up,
    #[serde(rename = "D")]
    Down,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::Right => 'R',
            Step::Left => 'L',
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }

    pub fn apply(self, s: &Origami, sq: usize) -> usize {
        match self {
            Step::Right => s.right(sq),
            Step::Left => s.left(sq),
            Step::Up => s.up(sq),
            Step::Down => s.down(sq),
        }
    }
}

/// Renders a crossing word as a string of `R`, `L`, `U`, `D`.
pub fn word_string(word: &[Step]) -> String {
    word.iter().map(|s| s.letter()).collect()
}

/// Holonomy `(#R − #L, #U − #D)` of a crossing word.
pub fn word_holonomy(word: &[Step]) -> Holonomy {
    let mut h = Holonomy::new(0, 0);
    for s in word {
        match s {
            Step::Right => h.a += 1,
            Step::Left => h.a -= 1,
            Step::Up => h.b += 1,
            Step::Down => h.b -= 1,
        }
    }
    h
}

/// Local point in a square; coordinates in `[0, 1)`.
pub type LocalPoint = (Rational, Rational);

fn floor(r: Rational) -> i64 {
    r.numer().div_floor(r.denom())
}

/// Flows from `p` in square `sq` by the integer vector `d`.
///
/// Returns the end square, the end point and the edge crossings in order.
/// A point on an edge belongs to the square above/right of it.
pub fn flow(s: &Origami, sq: usize, p: LocalPoint, d: Holonomy) -> (usize, LocalPoint, Vec<Step>) {
    flow_by(s, sq, p, (Rational::from_integer(d.a), Rational::from_integer(d.b)))
}

/// [`flow`] by a rational displacement.
pub fn flow_by(s: &Origami, sq: usize, p: LocalPoint, d: LocalPoint) -> (usize, LocalPoint, Vec<Step>) {
    let (px, py) = p;
    let ex = px + d.0;
    let ey = py + d.1;
    let mut events: Vec<(Rational, u8, Step)> = Vec::new();
    push_events(&mut events, px, ex, d.0, 0, Step::Right, Step::Left);
    push_events(&mut events, py, ey, d.1, 1, Step::Up, Step::Down);
    events.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    let mut cur = sq;
    let word: Vec<Step> = events.into_iter().map(|e| e.2).collect();
    for &st in &word {
        cur = st.apply(s, cur);
    }
    let fx = ex - Rational::from_integer(floor(ex));
    let fy = ey - Rational::from_integer(floor(ey));
    (cur, (fx, fy), word)
}

fn push_events(
    events: &mut Vec<(Rational, u8, Step)>,
    start: Rational,
    end: Rational,
    d: Rational,
    axis: u8,
    pos: Step,
    neg: Step,
) {
    if d > Rational::zero() {
        for m in (floor(start) + 1)..=floor(end) {
            events.push(((Rational::from_integer(m) - start) / d, axis, pos));
        }
    } else if d < Rational::zero() {
        for m in ((floor(end) + 1)..=floor(start)).rev() {
            events.push(((Rational::from_integer(m) - start) / d, axis, neg));
        }
    }
}

/// Replays a crossing word from a square.
pub fn replay(s: &Origami, sq: usize, word: &[Step]) -> usize {
    word.iter().fold(sq, |cur, st| st.apply(s, cur))
}

/// A direction normalized to the first quadrant by an optional clockwise
/// quarter turn of the surface.
///
/// In the frame the direction `w` has `a ≥ 1, b ≥ 0`, and the outgoing ray in
/// direction `w` at the lower-left corner of a square enters that square.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    pub origami: Origami,
    /// Direction in frame coordinates.
    pub w: Holonomy,
    /// Transversal with `w ∧ u = 1`.
    pub u: Holonomy,
    pub rotated: bool,
    /// Generic base point near the lower-left corner.
    pub q: LocalPoint,
    /// The input direction normalized up to sign, in original coordinates.
    pub direction: Holonomy,
}

impl Frame {
    pub fn new(s: &Origami, w: Holonomy) -> Result<Self, FlatError> {
        w.require_primitive()?;
        let direction = w.up_to_sign();
        let (origami, fw, rotated) = if direction.a <= 0 {
            (s.act_s_inv(), Holonomy::new(direction.b, -direction.a), true)
        } else {
            (s.clone(), direction, false)
        };
        let (g, x, y) = extended_gcd(fw.a, fw.b);
        debug_assert_eq!(g, 1);
        // a·x + b·y = 1, so u = (−y, x) has a·u_y − b·u_x = 1.
        let u = Holonomy::new(-y, x);
        let eta1 = Rational::new(1, 4 * (fw.a + fw.b + u.a.abs() + u.b.abs() + 1));
        let eta2 = eta1 / Rational::from_integer(4 * (u.a.abs() + u.b.abs() + 1));
        let q = (
            eta1 * Rational::from_integer(fw.a) + eta2 * Rational::from_integer(u.a),
            eta1 * Rational::from_integer(fw.b) + eta2 * Rational::from_integer(u.b),
        );
        Ok(Self { origami, w: fw, u, rotated, q, direction })
    }

    /// Square reached by flowing the base point of `sq` once along `w`.
    pub fn mu(&self, sq: usize) -> (usize, Vec<Step>) {
        let (end, p, word) = flow(&self.origami, sq, self.q, self.w);
        debug_assert_eq!(p, self.q);
        (end, word)
    }

    /// Square reached by flowing the base point of `sq` once along `u`.
    pub fn tau(&self, sq: usize) -> usize {
        flow(&self.origami, sq, self.q, self.u).0
    }

    pub fn step_to_original(&self, st: Step) -> Step {
        if !self.rotated {
            return st;
        }
        match st {
            Step::Right => Step::Up,
            Step::Up => Step::Left,
            Step::Left => Step::Down,
            Step::Down => Step::Right,
        }
    }

    pub fn word_to_original(&self, word: &[Step]) -> Vec<Step> {
        word.iter().map(|&s| self.step_to_original(s)).collect()
    }

    /// Converts a frame point of square `sq` to original coordinates.
    pub fn point_to_original(&self, sq: usize, p: LocalPoint) -> (usize, LocalPoint) {
        if !self.rotated {
            return (sq, p);
        }
        let x = Rational::one() - p.1;
        let y = p.0;
        if x == Rational::one() {
            (self.origami_original_right(sq), (Rational::zero(), y))
        } else {
            (sq, (x, y))
        }
    }

    // The frame origami's `down` is the original `right`.
    fn origami_original_right(&self, sq: usize) -> usize {
        self.origami.down(sq)
    }
}

/// Returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b) ≥ 0`.
pub(crate) fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}
