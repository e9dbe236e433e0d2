use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::trace::{flow_by, replay, word_holonomy, word_string, LocalPoint, Step};
use super::{FlatError, Holonomy, Origami};
use crate::Rational;

/// A closed straight-line curve: the core of a cylinder.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoreCurve {
    /// Square containing the start point (0-based).
    pub start_square: usize,
    #[serde(serialize_with = "ser_point")]
    pub start_point: LocalPoint,
    /// Primitive direction, normalized up to sign.
    pub direction: Holonomy,
    /// Number of direction periods before the curve closes (`n_i`).
    pub period: usize,
    #[serde(serialize_with = "ser_word")]
    pub word: Vec<Step>,
}

fn ser_point<S: Serializer>(p: &LocalPoint, s: S) -> Result<S::Ok, S::Error> {
    [p.0.to_string(), p.1.to_string()].serialize(s)
}

fn ser_word<S: Serializer>(w: &[Step], s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&word_string(w))
}

impl CoreCurve {
    pub fn holonomy(&self) -> Holonomy {
        self.direction.scale(self.period as i64)
    }

    /// Checks that the crossing word closes up with the stated holonomy.
    pub fn check_closed(&self, s: &Origami) -> Result<(), FlatError> {
        if self.start_square >= s.n() {
            return Err(FlatError::NotClosed(format!("square {} out of range", self.start_square + 1)));
        }
        let end = replay(s, self.start_square, &self.word);
        if end != self.start_square {
            return Err(FlatError::NotClosed(format!(
                "word {} from square {} ends in square {}",
                word_string(&self.word),
                self.start_square + 1,
                end + 1
            )));
        }
        if word_holonomy(&self.word) != self.holonomy() {
            return Err(FlatError::NotClosed(format!(
                "word {} does not have holonomy {}",
                word_string(&self.word),
                self.holonomy()
            )));
        }
        Ok(())
    }

    /// Surface position at parameter `t ∈ [0, 1)` along the closed curve.
    fn point_at(&self, s: &Origami, t: Rational) -> (usize, LocalPoint) {
        let h = self.holonomy();
        let d = (t * Rational::from_integer(h.a), t * Rational::from_integer(h.b));
        let (sq, p, _) = flow_by(s, self.start_square, self.start_point, d);
        (sq, p)
    }
}

/// Geometric intersection number of two cylinder cores.
///
/// Straight cores in distinct directions are in minimal position, so this
/// counts their transverse intersection points.
pub fn intersection_number(s: &Origami, c1: &CoreCurve, c2: &CoreCurve) -> Result<u64, FlatError> {
    c1.check_closed(s)?;
    c2.check_closed(s)?;
    let w1 = c1.holonomy();
    let w2 = c2.holonomy();
    let cross = w1.wedge(&w2);
    if cross == 0 {
        return Ok(0);
    }
    // Solve P1 + s·W1 ≡ P2 + t·W2 (mod Z²) with s, t ∈ [0, 1).
    let dx = c2.start_point.0 - c1.start_point.0;
    let dy = c2.start_point.1 - c1.start_point.1;
    let delta = Rational::from_integer(-cross);
    let span = |p: i64, q: i64| -> (i64, i64) {
        let lo = p.min(0) + (-q).min(0);
        let hi = p.max(0) + (-q).max(0);
        (lo - 2, hi + 2)
    };
    let (ilo, ihi) = span(w1.a, w2.a);
    let (jlo, jhi) = span(w1.b, w2.b);
    let unit = |r: Rational| r >= Rational::zero() && r < Rational::from_integer(1);
    let mut count = 0;
    for i in ilo..=ihi {
        for j in jlo..=jhi {
            // s·W1 − t·W2 = (i, j) − (P1 − P2) is the same as (i, j) + D with D = P2 − P1.
            let rx = Rational::from_integer(i) + dx;
            let ry = Rational::from_integer(j) + dy;
            let sp = (rx * Rational::from_integer(-w2.b) + Rational::from_integer(w2.a) * ry) / delta;
            let tp = (Rational::from_integer(w1.a) * ry - Rational::from_integer(w1.b) * rx) / delta;
            if !unit(sp) || !unit(tp) {
                continue;
            }
            let (sq1, p1) = c1.point_at(s, sp);
            let (sq2, p2) = c2.point_at(s, tp);
            debug_assert_eq!(p1, p2);
            if sq1 == sq2 {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat::cylinder_decomposition;

    fn core(s: &Origami, a: i64, b: i64, containing: usize) -> CoreCurve {
        cylinder_decomposition(s, Holonomy::new(a, b))
            .unwrap()
            .into_iter()
            .find(|c| c.squares.contains(&containing))
            .unwrap()
            .core
    }

    #[test]
    fn torus_intersections_are_determinants() {
        let t = Origami::torus();
        let h = core(&t, 1, 0, 0);
        let v = core(&t, 0, 1, 0);
        assert_eq!(intersection_number(&t, &h, &v).unwrap(), 1);
        assert_eq!(intersection_number(&t, &h, &h).unwrap(), 0);
        let c = core(&t, 2, 5, 0);
        let d = core(&t, -3, 4, 0);
        assert_eq!(intersection_number(&t, &c, &d).unwrap(), 23);
        assert_eq!(intersection_number(&t, &d, &c).unwrap(), 23);
    }

    #[test]
    fn l_shape_disjoint_cores() {
        let l = Origami::l_shape();
        let h3 = core(&l, 1, 0, 2);
        let v2 = core(&l, 0, 1, 1);
        assert_eq!(intersection_number(&l, &h3, &v2).unwrap(), 0);
        let h12 = core(&l, 1, 0, 0);
        let v13 = core(&l, 0, 1, 0);
        assert_eq!(intersection_number(&l, &h12, &v13).unwrap(), 1);
        assert_eq!(intersection_number(&l, &h12, &v2).unwrap(), 1);
    }

    #[test]
    fn open_word_is_rejected() {
        let l = Origami::l_shape();
        let mut c = core(&l, 1, 0, 2);
        c.start_square = 0;
        assert!(matches!(intersection_number(&l, &c, &c), Err(FlatError::NotClosed(_))));
    }
}
