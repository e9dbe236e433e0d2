use serde::Serialize;

use super::CoarseError;
use crate::disc::HoroFamily;
use crate::flat::Holonomy;
use crate::veech::{ser_rational_vec, IntMatrix};
use crate::Rational;

/// Unit-area wedge magnitudes `|u ∧ v| / n` of parabolic holonomy pairs.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub bound: f64,
    #[serde(serialize_with = "ser_rational_vec")]
    pub values: Vec<Rational>,
    /// `None` when fewer than two values were found.
    pub min_positive_gap: Option<f64>,
    /// Values are unchanged after applying `chart` to every holonomy.
    pub invariant: bool,
    pub chart: IntMatrix,
    pub holonomies: usize,
    pub radius: i64,
}

impl SpectrumReport {
    pub fn values_f64(&self) -> Vec<f64> {
        self.values.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect()
    }

    /// One exact value per line, with its float approximation.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,approx\n");
        for (r, f) in self.values.iter().zip(self.values_f64()) {
            out.push_str(&format!("{r},{f}\n"));
        }
        out
    }
}

/// Spectrum on `[0, bound]` over the cusp holonomies of [`HoroFamily::cusp_holonomies`].
pub fn pvt_spectrum(fam: &HoroFamily, bound: f64, radius: i64, chart: &IntMatrix) -> Result<SpectrumReport, CoarseError> {
    if bound.is_nan() || bound <= 0.0 {
        return Err(CoarseError::InvalidParameter(format!("bound must be positive, got {bound}")));
    }
    let hols: Vec<Holonomy> = fam.cusp_holonomies(radius).into_iter().map(|(_, h)| h).collect();
    if hols.is_empty() {
        return Err(CoarseError::EmptyParabolics);
    }
    let n = fam.n as i64;
    let values = spectrum(&hols, n, bound);
    let moved: Vec<Holonomy> = hols.iter().map(|h| chart.apply(*h)).collect();
    let invariant = spectrum(&moved, n, bound) == values;
    let min_positive_gap = values
        .windows(2)
        .map(|w| w[1] - w[0])
        .min()
        .map(|r| *r.numer() as f64 / *r.denom() as f64);
    Ok(SpectrumReport { bound, values, min_positive_gap, invariant, chart: *chart, holonomies: hols.len(), radius })
}

fn spectrum(hols: &[Holonomy], n: i64, bound: f64) -> Vec<Rational> {
    let mut out = Vec::new();
    for (i, u) in hols.iter().enumerate() {
        for v in &hols[i..] {
            let w = Rational::new(u.wedge(v).abs(), n);
            if (*w.numer() as f64) <= bound * (*w.denom() as f64) {
                out.push(w);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
