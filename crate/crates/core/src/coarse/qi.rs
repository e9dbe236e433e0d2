use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct QISample {
    pub input: f64,
    pub output: f64,
    /// Group word or point pair producing the sample.
    pub witness: String,
    /// Grouping key for the per-radius table (word length, or 0).
    pub radius: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RadiusRow {
    pub radius: usize,
    pub count: usize,
    pub min_output: f64,
    pub max_output: f64,
}

/// Samples with the smallest `K` certifying them.
#[derive(Clone, Debug, Serialize)]
pub struct QIReport {
    pub samples: Vec<QISample>,
    /// Smallest `K ≥ 1` with `output ≤ K·input + K`, and when `two_sided`
    /// also `input/K − K ≤ output`.
    pub k: f64,
    pub two_sided: bool,
    pub per_radius: Vec<RadiusRow>,
    /// Spearman rank correlation of input against output.
    pub spearman: Option<f64>,
    /// Extra per-experiment checks, all of which passed when `true`.
    pub checks: BTreeMap<String, bool>,
}

impl QIReport {
    pub fn new(samples: Vec<QISample>, two_sided: bool) -> Self {
        let k = if two_sided { fit_k(&samples) } else { fit_k_upper(&samples) };
        let mut rows: BTreeMap<usize, RadiusRow> = BTreeMap::new();
        for s in &samples {
            let r = rows.entry(s.radius).or_insert(RadiusRow {
                radius: s.radius,
                count: 0,
                min_output: f64::INFINITY,
                max_output: f64::NEG_INFINITY,
            });
            r.count += 1;
            r.min_output = r.min_output.min(s.output);
            r.max_output = r.max_output.max(s.output);
        }
        let xs: Vec<f64> = samples.iter().map(|s| s.input).collect();
        let ys: Vec<f64> = samples.iter().map(|s| s.output).collect();
        Self { k, two_sided, per_radius: rows.into_values().collect(), spearman: spearman(&xs, &ys), samples, checks: BTreeMap::new() }
    }

    /// Re-checks the fitted inequalities on every sample.
    pub fn certifies(&self, k: f64) -> bool {
        let tol = 1e-9;
        self.samples.iter().all(|s| {
            let upper = s.output <= k * s.input + k + tol;
            let lower = !self.two_sided || s.input / k - k <= s.output + tol;
            upper && lower
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("radius,input,output,witness\n");
        for s in &self.samples {
            out.push_str(&format!("{},{},{},{}\n", s.radius, s.input, s.output, s.witness));
        }
        out
    }

    /// Scatter plot of the samples with the fitted bounding lines.
    pub fn to_svg(&self) -> String {
        let (w, h, pad) = (480.0, 360.0, 40.0);
        let xmax = self.samples.iter().map(|s| s.input).fold(1.0, f64::max);
        let ymax = self.samples.iter().map(|s| s.output).fold(1.0, f64::max);
        let px = |x: f64| pad + x / xmax * (w - 2.0 * pad);
        let py = |y: f64| h - pad - y.min(ymax) / ymax * (h - 2.0 * pad);
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
        );
        out.push_str(&format!(
            "<path d=\"M{:.2} {:.2} L{:.2} {:.2} L{:.2} {:.2}\" fill=\"none\" stroke=\"black\"/>\n",
            px(0.0),
            py(ymax),
            px(0.0),
            py(0.0),
            px(xmax),
            py(0.0)
        ));
        let k = self.k;
        let upper = |x: f64| k * x + k;
        out.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"red\"/>\n",
            px(0.0),
            py(upper(0.0)),
            px(xmax),
            py(upper(xmax))
        ));
        if self.two_sided {
            let lower = |x: f64| (x / k - k).max(0.0);
            out.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"blue\"/>\n",
                px(0.0),
                py(lower(0.0)),
                px(xmax),
                py(lower(xmax))
            ));
        }
        for s in &self.samples {
            out.push_str(&format!("<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2\"/>\n", px(s.input), py(s.output)));
        }
        out.push_str(&format!("<text x=\"{pad}\" y=\"20\">K = {k:.4}</text>\n</svg>\n"));
        out
    }
}

/// Smallest `K ≥ 1` with `a/K − K ≤ b ≤ K·a + K` for all samples `(a, b)`.
pub fn fit_k(samples: &[QISample]) -> f64 {
    samples.iter().fold(fit_k_upper(samples), |k, s| {
        let (a, b) = (s.input.max(0.0), s.output);
        // a/K − K ≤ b  ⟺  K² + bK − a ≥ 0.
        k.max((-b + (b * b + 4.0 * a).sqrt()) / 2.0)
    })
}

/// Smallest `K ≥ 1` with `b ≤ K·a + K` for all samples.
pub fn fit_k_upper(samples: &[QISample]) -> f64 {
    samples.iter().fold(1.0, |k, s| k.max(s.output / (s.input + 1.0)))
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let (rx, ry) = (ranks(xs), ranks(ys));
    let n = xs.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
    let mut out = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = r;
        }
        i = j + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample(a: f64, b: f64) -> QISample {
        QISample { input: a, output: b, witness: String::new(), radius: 0 }
    }

    #[test]
    fn identity_sample_fits_one() {
        let r = QIReport::new(vec![sample(0.0, 0.0)], true);
        assert_eq!(r.k, 1.0);
        assert!(r.certifies(r.k));
        assert!(r.to_svg().starts_with("<svg"));
    }

    #[test]
    fn spearman_of_monotone_data() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert!((spearman(&xs, &[10.0, 20.0, 25.0, 100.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((spearman(&xs, &[4.0, 3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(spearman(&xs, &[1.0, 1.0, 1.0, 1.0]), None);
    }

    proptest! {
        #[test]
        fn fitted_k_certifies_and_is_minimal(pts in prop::collection::vec((0.0f64..50.0, 0.0f64..50.0), 1..30)) {
            let samples: Vec<QISample> = pts.iter().map(|&(a, b)| sample(a, b)).collect();
            let r = QIReport::new(samples.clone(), true);
            prop_assert!(r.certifies(r.k));
            if r.k > 1.0 + 1e-6 {
                prop_assert!(!r.certifies(r.k * (1.0 - 1e-6)));
            }
            // Removing samples never increases K.
            let fewer = QIReport::new(samples[..samples.len() / 2].to_vec(), true);
            prop_assert!(fewer.k <= r.k);
        }
    }
}
