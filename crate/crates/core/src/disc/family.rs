use std::collections::BTreeMap;

use serde::Serialize;

use super::{DiscError, Horodisc};
use crate::flat::{DiscPoint, Holonomy, Origami};
use crate::veech::{
    cusp_classes, group_ball, veech_group, FuchsianSubgroup, IntMatrix, ParabolicClass, VeechGroup,
    DEFAULT_BALL_CAP, DEFAULT_ORBIT_CAP,
};

/// Default word-length bound for subgroup translates.
pub const DEFAULT_TRANSLATE_RADIUS: usize = 12;

/// The equivariant family of cusp horodiscs of a group acting on the disc.
#[derive(Clone, Debug, Serialize)]
pub struct HoroFamily {
    pub n: usize,
    pub classes: Vec<ParabolicClass>,
    /// Level of the separated horodiscs `U(H)`.
    pub eps_gamma: f64,
    /// Level of the enlarged horodiscs `U'(H)`.
    pub eps_zero: f64,
    pub certificate: FamilyCertificate,
    #[serde(skip)]
    source: Source,
}

/// Enumeration parameters echoed into every report.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyCertificate {
    /// True for the full Veech group: every rational cusp is enumerated.
    pub lattice: bool,
    pub method: String,
    /// Word-length bound for translates of class cusps (subgroups only).
    pub translate_radius: Option<usize>,
    /// Smallest horodisc size kept for subgroups, at level `ε_0`.
    pub min_size: Option<f64>,
}

#[derive(Clone, Debug)]
enum Source {
    Lattice { veech: Box<VeechGroup> },
    Subgroup { holonomies: Vec<(Holonomy, usize)> },
    Empty,
}

impl HoroFamily {
    /// Family of the full Veech group of `s`.
    pub fn lattice(s: &Origami, eps_gamma: f64, eps_zero: f64) -> Result<Self, DiscError> {
        let veech = veech_group(s, DEFAULT_ORBIT_CAP)?;
        let (classes, _) = cusp_classes(s, &veech.as_subgroup(s.label()), 0)?;
        Ok(Self {
            n: s.n(),
            classes,
            eps_gamma,
            eps_zero,
            certificate: FamilyCertificate {
                lattice: true,
                method: "Stern-Brocot enumeration of all rational cusps".into(),
                translate_radius: None,
                min_size: None,
            },
            source: Source::Lattice { veech: Box::new(veech) },
        })
    }

    /// Family of a subgroup: translates of its class cusps by words of
    /// length at most `radius`, keeping horodiscs of size at least `min_size`
    /// at level `ε_0`.
    pub fn subgroup(
        s: &Origami,
        g: &FuchsianSubgroup,
        classes: Vec<ParabolicClass>,
        eps_gamma: f64,
        eps_zero: f64,
        radius: usize,
        min_size: f64,
    ) -> Result<Self, DiscError> {
        let ball = group_ball(g, radius, DEFAULT_BALL_CAP)?;
        let mut seen: BTreeMap<Holonomy, (Holonomy, usize)> = BTreeMap::new();
        for (ci, c) in classes.iter().enumerate() {
            for e in &ball {
                let h = e.matrix.apply(c.v_short).up_to_sign();
                let d = h.primitive().expect("nonzero").0;
                let disc = Horodisc::new(h, eps_zero, s.n(), ci);
                if disc.size() >= min_size || d.b == 0 {
                    seen.entry(d).or_insert((h, ci));
                }
            }
        }
        Ok(Self {
            n: s.n(),
            classes,
            eps_gamma,
            eps_zero,
            certificate: FamilyCertificate {
                lattice: false,
                method: "word-ball translates of class cusps".into(),
                translate_radius: Some(radius),
                min_size: Some(min_size),
            },
            source: Source::Subgroup { holonomies: seen.into_values().collect() },
        })
    }

    /// A family with no horodiscs.
    pub fn empty(n: usize, eps_gamma: f64, eps_zero: f64) -> Self {
        Self {
            n,
            classes: Vec::new(),
            eps_gamma,
            eps_zero,
            certificate: FamilyCertificate {
                lattice: false,
                method: "empty".into(),
                translate_radius: None,
                min_size: None,
            },
            source: Source::Empty,
        }
    }

    pub fn is_lattice(&self) -> bool {
        matches!(self.source, Source::Lattice { .. })
    }

    pub fn veech(&self) -> Option<&VeechGroup> {
        match &self.source {
            Source::Lattice { veech } => Some(veech),
            _ => None,
        }
    }

    /// Class index and defining holonomy of the cusp in primitive direction `w`.
    pub fn classify_direction(&self, w: Holonomy) -> Option<(usize, Holonomy)> {
        let w = w.up_to_sign();
        match &self.source {
            Source::Lattice { veech } => {
                let a = IntMatrix::sending_to_horizontal(w);
                let class = veech.t_cycle_of(veech.act_on_coset(&a, 0));
                let m = self.classes[class].short_multiplier();
                Some((class, w.scale(m)))
            }
            Source::Subgroup { holonomies } => holonomies
                .iter()
                .find(|(h, _)| h.primitive().expect("nonzero").0 == w)
                .map(|(h, c)| (*c, *h)),
            Source::Empty => None,
        }
    }

    /// The family member at cusp direction `w` and the given level.
    pub fn horodisc_at(&self, w: Holonomy, level: f64) -> Option<Horodisc> {
        self.classify_direction(w).map(|(c, h)| Horodisc::new(h, level, self.n, c))
    }

    /// Horodiscs at `level` that can meet the region
    /// `{lo ≤ Re z ≤ hi, y_min ≤ Im z ≤ y_max}`.
    pub fn candidates(&self, lo: f64, hi: f64, y_min: f64, y_max: f64, level: f64) -> Vec<Horodisc> {
        let mut out = Vec::new();
        match &self.source {
            Source::Empty => {}
            Source::Lattice { .. } => {
                if let Some(h) = self.horodisc_at(Holonomy::new(1, 0), level) {
                    if h.size() <= y_max {
                        out.push(h);
                    }
                }
                let dmax = level * self.n as f64;
                if dmax < y_min {
                    return out;
                }
                let bmax = (dmax / y_min).sqrt().floor() as i64;
                for (a, b) in farey_in(lo - dmax / 2.0, hi + dmax / 2.0, bmax) {
                    let h = self.horodisc_at(Holonomy::new(a, b), level).expect("lattice");
                    let d = h.size();
                    let c = a as f64 / b as f64;
                    if d >= y_min && c + d / 2.0 >= lo && c - d / 2.0 <= hi {
                        out.push(h);
                    }
                }
            }
            Source::Subgroup { holonomies } => {
                for (hol, ci) in holonomies {
                    let h = Horodisc::new(*hol, level, self.n, *ci);
                    match h.cusp() {
                        None => {
                            if h.size() <= y_max {
                                out.push(h);
                            }
                        }
                        Some(c) => {
                            let d = h.size();
                            if d >= y_min && c + d / 2.0 >= lo && c - d / 2.0 <= hi {
                                out.push(h);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// `(class, defining holonomy)` of the cusps in directions `(a, b)` with
    /// `max(|a|, b) ≤ radius`; every stored cusp for subgroup families.
    pub fn cusp_holonomies(&self, radius: i64) -> Vec<(usize, Holonomy)> {
        match &self.source {
            Source::Empty => Vec::new(),
            Source::Subgroup { holonomies } => holonomies.iter().map(|(h, c)| (*c, *h)).collect(),
            Source::Lattice { .. } => {
                let mut out = vec![self.classify_direction(Holonomy::new(1, 0)).expect("lattice")];
                for b in 1..=radius {
                    for a in -radius..=radius {
                        let d = Holonomy::new(a, b);
                        if d.is_primitive() {
                            out.push(self.classify_direction(d).expect("lattice"));
                        }
                    }
                }
                out
            }
        }
    }

    /// A family horodisc at `level` containing `z` in its strict interior.
    pub fn strictly_inside(&self, z: DiscPoint, level: f64) -> Option<Horodisc> {
        self.candidates(z.x, z.x, z.y, z.y, level).into_iter().find(|h| h.contains_strictly(z))
    }

    /// The same family with a different separated level.
    pub fn with_eps_gamma(mut self, eps_gamma: f64) -> Self {
        self.eps_gamma = eps_gamma;
        self
    }

    /// Every family horodisc at `level` with cusp denominator at most `max_denominator`
    /// and cusp in `[lo, hi]`, plus `∞`.
    pub fn members(&self, lo: f64, hi: f64, max_denominator: i64, level: f64) -> Vec<Horodisc> {
        match &self.source {
            Source::Empty => Vec::new(),
            Source::Lattice { .. } => {
                let mut out: Vec<Horodisc> =
                    self.horodisc_at(Holonomy::new(1, 0), level).into_iter().collect();
                for (a, b) in farey_in(lo, hi, max_denominator) {
                    out.push(self.horodisc_at(Holonomy::new(a, b), level).expect("lattice"));
                }
                out
            }
            Source::Subgroup { holonomies } => holonomies
                .iter()
                .map(|(h, c)| Horodisc::new(*h, level, self.n, *c))
                .filter(|h| {
                    let d = h.direction();
                    d.b == 0 || (d.b <= max_denominator && h.cusp().is_some_and(|c| c >= lo && c <= hi))
                })
                .collect(),
        }
    }
}

/// Reduced fractions `a/b` in `[lo, hi]` with `1 ≤ b ≤ bmax`, by Stern–Brocot descent.
pub fn farey_in(lo: f64, hi: f64, bmax: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    if bmax < 1 || hi < lo {
        return out;
    }
    let start = lo.floor() as i64;
    let end = hi.ceil() as i64;
    for k in start..=end {
        if (k as f64) >= lo && (k as f64) <= hi {
            out.push((k, 1));
        }
        if k < end {
            descend(&mut out, (k, 1), (k + 1, 1), lo, hi, bmax);
        }
    }
    out.sort_by(|x, y| (x.0 as i128 * y.1 as i128).cmp(&(y.0 as i128 * x.1 as i128)));
    out
}

fn descend(out: &mut Vec<(i64, i64)>, left: (i64, i64), right: (i64, i64), lo: f64, hi: f64, bmax: i64) {
    let mut stack = vec![(left, right)];
    while let Some((l, r)) = stack.pop() {
        let m = (l.0 + r.0, l.1 + r.1);
        if m.1 > bmax {
            continue;
        }
        // Prune intervals disjoint from [lo, hi].
        let (lv, rv) = (l.0 as f64 / l.1 as f64, r.0 as f64 / r.1 as f64);
        if rv < lo || lv > hi {
            continue;
        }
        let mv = m.0 as f64 / m.1 as f64;
        if mv >= lo && mv <= hi {
            out.push(m);
        }
        stack.push((l, m));
        stack.push((m, r));
    }
}
