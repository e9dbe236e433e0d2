use serde::Serialize;

use super::origami::Corner;
use super::trace::{word_string, Frame, Step};
use super::{FlatError, Holonomy, Origami};

/// Default cap on `L·√n`, the enumeration radius in square units.
pub const DEFAULT_SADDLE_CAP: f64 = 400.0;

/// A saddle connection, oriented from its start corner along its holonomy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaddleConnection {
    pub holonomy: Holonomy,
    /// Square whose corner the segment leaves from (0-based).
    pub start_square: usize,
    pub start_corner: Corner,
    pub start_vertex: usize,
    pub end_vertex: usize,
    /// Edge crossings of a parallel push-off starting just inside `start_square`.
    #[serde(serialize_with = "ser_word")]
    pub crossing_word: Vec<Step>,
}

fn ser_word<S: serde::Serializer>(w: &[Step], s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&word_string(w))
}

impl SaddleConnection {
    /// Multiple of the primitive direction.
    pub fn multiplier(&self) -> i64 {
        self.holonomy.gcd()
    }

    /// Length at the base point `z = i` in unit-area normalization.
    pub fn base_length(&self, n: usize) -> f64 {
        self.holonomy.norm() / (n as f64).sqrt()
    }
}

/// Saddle connections in the frame's direction, one per outgoing singular ray.
pub(crate) fn saddles_in_frame(s: &Origami, frame: &Frame) -> Vec<SaddleConnection> {
    let o = &frame.origami;
    let start_corner = if frame.rotated { Corner::LowerRight } else { Corner::LowerLeft };
    let mut out = Vec::new();
    for k in 0..o.n() {
        if !o.ll_singular(k) {
            continue;
        }
        let mut word = Vec::new();
        let mut cur = k;
        let mut m = 0;
        loop {
            let (next, w) = frame.mu(cur);
            word.extend(w);
            m += 1;
            cur = next;
            if o.ll_singular(cur) {
                break;
            }
        }
        out.push(SaddleConnection {
            holonomy: frame.direction.scale(m),
            start_square: k,
            start_corner,
            // Frame vertex ids may differ from the input's numbering.
            start_vertex: s.vertex_of(k, start_corner),
            end_vertex: s.vertex_of(cur, start_corner),
            crossing_word: frame.word_to_original(&word),
        });
    }
    out
}

/// All saddle connections of base length at most `bound`, up to sign.
///
/// Ordered by length, then holonomy, then start square.
pub fn enumerate_saddle_connections(
    s: &Origami,
    bound: f64,
    cap: f64,
) -> Result<Vec<SaddleConnection>, FlatError> {
    let radius = bound * (s.n() as f64).sqrt();
    if radius > cap {
        return Err(FlatError::BoundTooLarge { bound, cap: cap / (s.n() as f64).sqrt() });
    }
    let mut out = Vec::new();
    if radius <= 0.0 {
        return Ok(out);
    }
    let r = radius.floor() as i64;
    let r2 = radius * radius * (1.0 + 1e-12);
    for b in 0..=r {
        for a in -r..=r {
            let w = Holonomy::new(a, b);
            if (b == 0 && a <= 0) || !w.is_primitive() || (w.norm_sq() as f64) > r2 {
                continue;
            }
            let frame = Frame::new(s, w)?;
            out.extend(
                saddles_in_frame(s, &frame)
                    .into_iter()
                    .filter(|sc| (sc.holonomy.norm_sq() as f64) <= r2),
            );
        }
    }
    out.sort_by(|x, y| {
        (x.holonomy.norm_sq(), x.holonomy, x.start_square, &x.crossing_word)
            .cmp(&(y.holonomy.norm_sq(), y.holonomy, y.start_square, &y.crossing_word))
    });
    Ok(out)
}
