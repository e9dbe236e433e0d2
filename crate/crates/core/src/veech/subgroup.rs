use serde::{Deserialize, Serialize};

use super::{IntMatrix, VeechError};
use crate::flat::Origami;

/// A finitely generated subgroup of `PSL(2, Z)` given by labelled generators.
#[derive(Clone, Debug, Serialize)]
pub struct FuchsianSubgroup {
    pub label: String,
    pub generators: Vec<(String, IntMatrix)>,
    /// Set when the generators come from [`super::veech_group`], so the group
    /// is the full (finite-index) Veech group.
    pub full_veech: bool,
    /// Index in `PSL(2, Z)` when known.
    pub index: Option<usize>,
}

#[derive(Deserialize)]
struct GeneratorSpec {
    label: String,
    matrix: [[i64; 2]; 2],
}

impl FuchsianSubgroup {
    pub fn new(label: &str, generators: Vec<(String, IntMatrix)>) -> Result<Self, VeechError> {
        for (name, g) in &generators {
            if g.det() != 1 {
                return Err(VeechError::Parse(format!("generator {name} has determinant {}", g.det())));
            }
        }
        Ok(Self { label: label.to_string(), generators, full_veech: false, index: None })
    }

    pub(crate) fn full_veech(label: &str, generators: Vec<(String, IntMatrix)>, index: usize) -> Self {
        Self { label: label.to_string(), generators, full_veech: true, index: Some(index) }
    }

    /// `PSL(2, Z)` generated by `S` and `T`.
    pub fn modular() -> Self {
        Self::full_veech("SL2Z", vec![("S".into(), IntMatrix::S), ("T".into(), IntMatrix::T)], 1)
    }

    /// Parses a JSON list `[{"label": "A", "matrix": [[p, q], [r, s]]}, ...]`.
    pub fn from_json(label: &str, text: &str) -> Result<Self, VeechError> {
        let specs: Vec<GeneratorSpec> =
            serde_json::from_str(text).map_err(|e| VeechError::Parse(e.to_string()))?;
        let mut gens = Vec::with_capacity(specs.len());
        for g in specs {
            let m = IntMatrix::from_rows(g.matrix)
                .map_err(|e| VeechError::Parse(format!("generator {}: {e}", g.label)))?;
            gens.push((g.label, m));
        }
        Self::new(label, gens)
    }

    /// Checks that every generator stabilizes `s` up to half-translation isomorphism.
    pub fn check_stabilizes(&self, s: &Origami) -> Result<(), VeechError> {
        let key = s.projective_key();
        for (name, g) in &self.generators {
            if g.act_origami(s).projective_key() != key {
                return Err(VeechError::NotASubgroup(name.clone()));
            }
        }
        Ok(())
    }

    /// Conjugate subgroup `c·G·c⁻¹`.
    pub fn conjugated(&self, c: &IntMatrix) -> Self {
        let gens = self
            .generators
            .iter()
            .map(|(n, g)| (n.clone(), c.mul(g).mul(&c.inverse()).normalized()))
            .collect();
        Self { label: self.label.clone(), generators: gens, full_veech: self.full_veech, index: self.index }
    }
}
