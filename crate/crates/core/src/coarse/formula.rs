use serde::Serialize;

use super::hempel::{hempel_estimate, HempelEstimate};
use super::{cutoff, CoarseError};
use crate::disc::{cusp_winding, segment_max_height, HoroFamily};
use crate::flat::{DiscPoint, Holonomy, Origami};

#[derive(Clone, Debug, Serialize)]
pub struct WindingTerm {
    pub cusp: Holonomy,
    pub class_index: usize,
    pub core_count: usize,
    pub winding: f64,
    /// `core_count · [winding]_c`.
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaRhs {
    pub value: f64,
    pub hempel: HempelEstimate,
    /// Nonzero winding terms, ordered by cusp holonomy.
    pub terms: Vec<WindingTerm>,
    pub c: f64,
}

/// `hempel(x, y) + Σ_H core_count(H)·[winding_H(x, y)]_c` over the family
/// horodiscs at level `ε_Γ`.
///
/// A winding of at least 2 needs the segment `[x, y]` to meet the horodisc,
/// so only horodiscs meeting its bounding box are examined.
pub fn distance_formula_rhs(
    s: &Origami,
    fam: &HoroFamily,
    x: DiscPoint,
    y: DiscPoint,
    c: f64,
) -> Result<FormulaRhs, CoarseError> {
    if !(c >= 2.0) {
        return Err(CoarseError::InvalidParameter(format!("cutoff must be at least 2, got {c}")));
    }
    let hempel = hempel_estimate(s, x, y)?;
    let (lo, hi) = (x.x.min(y.x), x.x.max(y.x));
    let (y_min, y_max) = (x.y.min(y.y), segment_max_height(x, y));
    let mut terms = Vec::new();
    for u in fam.candidates(lo, hi, y_min, y_max, fam.eps_gamma) {
        let w = cusp_winding(&u, x, y);
        let cut = cutoff(w, c);
        if cut > 0.0 {
            let core_count = fam.classes[u.class_index].core_count;
            terms.push(WindingTerm {
                cusp: u.holonomy,
                class_index: u.class_index,
                core_count,
                winding: w,
                value: core_count as f64 * cut,
            });
        }
    }
    terms.sort_by(|a, b| a.cusp.cmp(&b.cusp));
    let value = hempel.value + terms.iter().map(|t| t.value).sum::<f64>();
    Ok(FormulaRhs { value, hempel, terms, c })
}
