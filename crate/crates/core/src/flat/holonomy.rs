use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::FlatError;

/// Integer displacement `(a, b)` in square units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Holonomy {
    pub a: i64,
    pub b: i64,
}

impl Holonomy {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn gcd(&self) -> i64 {
        self.a.gcd(&self.b)
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd() == 1
    }

    /// The primitive vector in the same direction, and the multiplier.
    pub fn primitive(&self) -> Result<(Holonomy, i64), FlatError> {
        if self.is_zero() {
            return Err(FlatError::ZeroVector);
        }
        let g = self.gcd();
        Ok((Holonomy::new(self.a / g, self.b / g), g))
    }

    /// Fails unless the vector is primitive.
    pub fn require_primitive(&self) -> Result<(), FlatError> {
        if self.is_zero() {
            Err(FlatError::ZeroVector)
        } else if !self.is_primitive() {
            Err(FlatError::NonPrimitive(self.a, self.b))
        } else {
            Ok(())
        }
    }

    /// Determinant `a·b' − b·a'`.
    pub fn wedge(&self, other: &Holonomy) -> i64 {
        self.a * other.b - self.b * other.a
    }

    pub fn neg(&self) -> Holonomy {
        Holonomy::new(-self.a, -self.b)
    }

    pub fn scale(&self, k: i64) -> Holonomy {
        Holonomy::new(self.a * k, self.b * k)
    }

    /// Representative of `±(a, b)` with `b > 0`, or `b = 0` and `a > 0`.
    pub fn up_to_sign(&self) -> Holonomy {
        if self.b < 0 || (self.b == 0 && self.a < 0) {
            self.neg()
        } else {
            *self
        }
    }

    pub fn norm_sq(&self) -> i64 {
        self.a * self.a + self.b * self.b
    }

    /// Euclidean length in square units.
    pub fn norm(&self) -> f64 {
        (self.norm_sq() as f64).sqrt()
    }
}

impl std::fmt::Display for Holonomy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}
