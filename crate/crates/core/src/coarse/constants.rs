use serde::Serialize;

use super::CoarseError;
use crate::disc::{horoball_gap, HoroFamily, Horodisc};
use crate::flat::{chart::chart_len, DiscPoint, Holonomy};
use crate::veech::{ser_rational, to_f64};
use crate::Rational;

/// Sample points for [`compute_w`].
#[derive(Clone, Debug)]
pub enum Grid {
    /// Standard fundamental domain of `PSL(2, Z)` from the arc `|z| = 1` up to
    /// `y_max`, pushed through the coset transversal of a lattice family.
    Fundamental { step: f64, y_max: f64 },
    Points(Vec<DiscPoint>),
}

#[derive(Clone, Debug, Serialize)]
pub struct WReport {
    /// `min` over the grid of `max` over cusps of the smallest cylinder width.
    pub w: f64,
    pub argmin: DiscPoint,
    pub samples: usize,
    pub step: Option<f64>,
    /// A grid minimum can only overestimate the infimum.
    pub upper_biased: bool,
}

/// `W(z) = max_H min_i (A_i / n) / (n_i·l_z(v_H))` minimized over the grid.
pub fn compute_w(fam: &HoroFamily, grid: &Grid) -> Result<WReport, CoarseError> {
    if fam.classes.is_empty() {
        return Err(CoarseError::NoParabolics);
    }
    let (points, step) = match grid {
        Grid::Points(p) => (p.clone(), None),
        Grid::Fundamental { step, y_max } => {
            let veech = fam.veech().ok_or_else(|| {
                CoarseError::InvalidParameter("fundamental grids need a lattice family".into())
            })?;
            if !(*step > 0.0) {
                return Err(CoarseError::InvalidParameter(format!("grid step must be positive, got {step}")));
            }
            let base = fundamental_grid(*step, *y_max);
            let mut pts = Vec::with_capacity(base.len() * veech.index);
            for a in &veech.transversal {
                let inv = a.inverse();
                pts.extend(base.iter().map(|&z| inv.act_disc(z)));
            }
            (pts, Some(*step))
        }
    };
    if points.is_empty() {
        return Err(CoarseError::EmptyGrid);
    }
    let widths: Vec<f64> = fam.classes.iter().map(|c| to_f64(min_width(&c.areas(), &c.multipliers(), fam.n))).collect();
    let fmax = widths.iter().copied().fold(0.0, f64::max);
    let mut best = (f64::INFINITY, points[0]);
    for &z in &points {
        let w = w_at(fam, &widths, fmax, z);
        if w < best.0 {
            best = (w, z);
        }
    }
    Ok(WReport { w: best.0, argmin: best.1, samples: points.len(), step, upper_biased: true })
}

/// Smallest `A_i / (n·n_i)` over the cylinders of a class.
fn min_width(areas: &[usize], mults: &[usize], n: usize) -> Rational {
    areas
        .iter()
        .zip(mults)
        .map(|(&a, &m)| Rational::new(a as i64, (n * m) as i64))
        .min()
        .unwrap_or_else(|| Rational::from_integer(0))
}

fn fundamental_grid(step: f64, y_max: f64) -> Vec<DiscPoint> {
    let mut out = Vec::new();
    let nx = (1.0 / step).round() as i64;
    for i in 0..=nx {
        let x = (-0.5 + i as f64 * step).min(0.5);
        let y0 = (1.0 - x * x).sqrt();
        let mut j = 0;
        loop {
            let y = y0 + j as f64 * step;
            if y > y_max.max(y0) {
                break;
            }
            out.push(DiscPoint::new(x, y));
            j += 1;
        }
    }
    out
}

fn w_at(fam: &HoroFamily, widths: &[f64], fmax: f64, z: DiscPoint) -> f64 {
    let n = fam.n;
    let value = |d: Holonomy| -> Option<f64> {
        let (c, _) = fam.classify_direction(d)?;
        Some(widths[c] / chart_len(n, z, d.a as f64, d.b as f64))
    };
    if !fam.is_lattice() {
        return fam
            .cusp_holonomies(0)
            .iter()
            .filter_map(|(_, h)| value(h.primitive().expect("nonzero").0))
            .fold(0.0, f64::max);
    }
    let mut best = [(1, 0), (0, 1), (1, 1), (1, -1)]
        .iter()
        .filter_map(|&(a, b)| value(Holonomy::new(a, b)))
        .fold(0.0, f64::max);
    // Only directions with l_z(d) ≤ fmax / best can do better.
    let radius = fmax / best;
    let bmax = (radius * (n as f64 / z.y).sqrt()).floor() as i64;
    let half = radius * (n as f64 * z.y).sqrt();
    for b in 0..=bmax {
        let c = b as f64 * z.x;
        for a in (c - half).ceil() as i64..=(c + half).floor() as i64 {
            let d = Holonomy::new(a, b);
            if (b == 0 && a <= 0) || !d.is_primitive() {
                continue;
            }
            if let Some(v) = value(d) {
                best = best.max(v);
            }
        }
    }
    best
}

/// The separated level and its certificate.
#[derive(Clone, Debug, Serialize)]
pub struct EpsilonChoice {
    pub eps_gamma: f64,
    pub eps_zero: f64,
    /// Smallest positive `|v_H ∧ v_K| / n` among enumerated pairs.
    #[serde(serialize_with = "ser_rational")]
    pub min_wedge: Rational,
    pub pairs: usize,
    /// Smallest horoball gap at `ε_Γ` among enumerated pairs.
    pub min_gap: f64,
    /// Every enumerated pair has gap at least 1.
    pub certified: bool,
    /// True for lattice families, where the enumeration reaches the minimum.
    pub lattice: bool,
    pub radius: i64,
}

/// `ε_Γ = min(ε_0, e^{−1/2}·w_min)` for the smallest positive unit-area wedge
/// `w_min` of shortest cusp holonomies.
pub fn choose_epsilon(fam: &HoroFamily, eps_zero: f64, radius: i64) -> Result<EpsilonChoice, CoarseError> {
    if !(eps_zero > 0.0) {
        return Err(CoarseError::InvalidParameter(format!("eps_zero must be positive, got {eps_zero}")));
    }
    let hols = fam.cusp_holonomies(radius);
    if fam.classes.is_empty() || hols.is_empty() {
        return Err(CoarseError::NoParabolics);
    }
    let mut min_wedge: Option<i64> = None;
    for (i, (_, u)) in hols.iter().enumerate() {
        for (_, v) in &hols[i + 1..] {
            let w = u.wedge(v).abs();
            if w > 0 && min_wedge.map_or(true, |m| w < m) {
                min_wedge = Some(w);
            }
        }
    }
    let min_wedge = Rational::new(min_wedge.ok_or(CoarseError::NoParabolics)?, fam.n as i64);
    let eps = eps_zero.min((-0.5f64).exp() * to_f64(min_wedge));
    let mut pairs = 0;
    let mut min_gap = f64::INFINITY;
    for (i, &(ci, u)) in hols.iter().enumerate() {
        let hu = Horodisc::new(u, eps, fam.n, ci);
        for &(cj, v) in &hols[i + 1..] {
            if u.wedge(&v) == 0 {
                continue;
            }
            let g = horoball_gap(&hu, &Horodisc::new(v, eps, fam.n, cj))?;
            min_gap = min_gap.min(g);
            pairs += 1;
        }
    }
    Ok(EpsilonChoice {
        eps_gamma: eps,
        eps_zero,
        min_wedge,
        pairs,
        min_gap,
        certified: min_gap >= 1.0 - 1e-9,
        lattice: fam.is_lattice(),
        radius,
    })
}
