use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::VeechError;
use crate::flat::{DiscPoint, Holonomy, Origami, RealMatrix};

/// Integer matrix `[[p, q], [r, s]]` with determinant one.
///
/// Equality and hashing are projective once [`IntMatrix::normalized`] is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

/// Conjugacy type of a Veech group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// A letter of an `S`/`T` word: `S` or `T^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StLetter {
    S,
    T(i64),
}

impl IntMatrix {
    pub const IDENTITY: IntMatrix = IntMatrix { p: 1, q: 0, r: 0, s: 1 };
    pub const S: IntMatrix = IntMatrix { p: 0, q: -1, r: 1, s: 0 };
    pub const T: IntMatrix = IntMatrix { p: 1, q: 1, r: 0, s: 1 };

    pub fn new(p: i64, q: i64, r: i64, s: i64) -> Result<Self, VeechError> {
        let m = IntMatrix { p, q, r, s };
        if m.det() != 1 {
            return Err(VeechError::NonUnimodular(m.det()));
        }
        Ok(m)
    }

    pub fn from_rows(rows: [[i64; 2]; 2]) -> Result<Self, VeechError> {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.p, self.q], [self.r, self.s]]
    }

    pub fn t_pow(k: i64) -> Self {
        IntMatrix { p: 1, q: k, r: 0, s: 1 }
    }

    pub fn det(&self) -> i64 {
        self.p * self.s - self.q * self.r
    }

    pub fn trace(&self) -> i64 {
        self.p + self.s
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        IntMatrix {
            p: self.p * o.p + self.q * o.r,
            q: self.p * o.q + self.q * o.s,
            r: self.r * o.p + self.s * o.r,
            s: self.r * o.q + self.s * o.s,
        }
    }

    pub fn inverse(&self) -> IntMatrix {
        IntMatrix { p: self.s, q: -self.q, r: -self.r, s: self.p }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { p: -self.p, q: -self.q, r: -self.r, s: -self.s }
    }

    /// Representative of `±M` whose first nonzero entry of the bottom row is positive.
    pub fn normalized(&self) -> IntMatrix {
        if self.r < 0 || (self.r == 0 && self.s < 0) {
            self.neg()
        } else {
            *self
        }
    }

    /// Equality in `PSL(2, Z)`.
    pub fn proj_eq(&self, o: &IntMatrix) -> bool {
        self.normalized() == o.normalized()
    }

    pub fn is_proj_identity(&self) -> bool {
        self.proj_eq(&Self::IDENTITY)
    }

    pub fn classify(&self) -> ElementKind {
        let t = self.trace().abs();
        if self.is_proj_identity() {
            ElementKind::Identity
        } else if t < 2 {
            ElementKind::Elliptic
        } else if t == 2 {
            ElementKind::Parabolic
        } else {
            ElementKind::Hyperbolic
        }
    }

    /// Column action on holonomy vectors.
    pub fn apply(&self, w: Holonomy) -> Holonomy {
        Holonomy::new(self.p * w.a + self.q * w.b, self.r * w.a + self.s * w.b)
    }

    pub fn to_real(&self) -> RealMatrix {
        RealMatrix::new(self.p as f64, self.q as f64, self.r as f64, self.s as f64)
    }

    /// Möbius action on the disc chart.
    pub fn act_disc(&self, z: DiscPoint) -> DiscPoint {
        crate::flat::chart::mobius(self.to_real(), z)
    }

    /// Writes `±M` as `T^{k_0} S T^{k_1} S ⋯ S T^{k_m}`.
    pub fn st_word(&self) -> Vec<StLetter> {
        let mut m = *self;
        let mut out = Vec::new();
        while m.r != 0 {
            let k = Integer::div_floor(&m.p, &m.r);
            if k != 0 {
                out.push(StLetter::T(k));
            }
            out.push(StLetter::S);
            // m ← S⁻¹ T^{−k} m
            let a = IntMatrix::t_pow(-k).mul(&m);
            m = IntMatrix::S.inverse().mul(&a);
        }
        // m = ±T^{q/p} with p = ±1.
        let k = m.q * m.p;
        if k != 0 {
            out.push(StLetter::T(k));
        }
        out
    }

    /// Product of a letter word.
    pub fn from_st_word(word: &[StLetter]) -> IntMatrix {
        word.iter().fold(IntMatrix::IDENTITY, |acc, l| match l {
            StLetter::S => acc.mul(&IntMatrix::S),
            StLetter::T(k) => acc.mul(&IntMatrix::t_pow(*k)),
        })
    }

    /// Acts on an origami: the surface whose charts are post-composed with `M`.
    pub fn act_origami(&self, o: &Origami) -> Origami {
        let mut cur = o.clone();
        for l in self.st_word().iter().rev() {
            cur = match *l {
                StLetter::S => cur.act_s(),
                StLetter::T(k) if k > 0 => (0..k).fold(cur, |c, _| c.act_t()),
                StLetter::T(k) => (0..-k).fold(cur, |c, _| c.act_t_inv()),
            };
        }
        cur
    }

    /// A matrix `A` with `A·w = (1, 0)` for primitive `w`.
    pub fn sending_to_horizontal(w: Holonomy) -> IntMatrix {
        let (_, x, y) = crate::flat::trace::extended_gcd(w.a, w.b);
        // Rows (x, y) and (−b, a): det = x·a + y·b = 1.
        IntMatrix { p: x, q: y, r: -w.b, s: w.a }
    }

    /// Fixed points on `∂H²` of a hyperbolic or parabolic element.
    pub fn fixed_points(&self) -> Vec<f64> {
        let (p, q, r, s) = (self.p as f64, self.q as f64, self.r as f64, self.s as f64);
        if self.r == 0 {
            // z = (p z + q)/s, one finite fixed point unless parabolic at ∞.
            if self.p == self.s {
                return vec![f64::INFINITY];
            }
            return vec![q / (s - p), f64::INFINITY];
        }
        let disc = (p + s) * (p + s) - 4.0;
        if disc < 0.0 {
            return Vec::new();
        }
        let root = disc.sqrt();
        let mut v = vec![(p - s - root) / (2.0 * r), (p - s + root) / (2.0 * r)];
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        v
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.p, self.q, self.r, self.s)
    }
}
