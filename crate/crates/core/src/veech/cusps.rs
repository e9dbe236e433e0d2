use std::collections::{BTreeMap, HashMap};

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::ball::group_ball;
use super::{veech_group, ElementKind, FuchsianSubgroup, IntMatrix, VeechError, DEFAULT_BALL_CAP, DEFAULT_ORBIT_CAP};
use crate::flat::{chart::chart_len, Cylinder, DirectionData, DiscPoint, Holonomy, Origami};
use crate::Rational;

/// A conjugacy class of maximal parabolic subgroups, with the flat data of its direction.
#[derive(Clone, Debug, Serialize)]
pub struct ParabolicClass {
    /// Primitive periodic direction, normalized up to sign; the cusp is `a/b`.
    pub direction: Holonomy,
    /// Shortest and longest saddle connections in the direction.
    pub v_short: Holonomy,
    pub v_long: Holonomy,
    pub cylinders: Vec<Cylinder>,
    /// `|v_long| / |v_short|`.
    #[serde(serialize_with = "ser_rational")]
    pub rho: Rational,
    /// Sends `direction` to `(1, 0)`.
    pub conjugator: IntMatrix,
    /// Number of cylinders, i.e. of core curves `ParC(H)`.
    pub core_count: usize,
    /// Translation length of the primitive parabolic in the conjugated chart.
    pub width: Option<i64>,
    /// Primitive parabolic element fixing the direction.
    pub parabolic: Option<IntMatrix>,
    /// Square count of the surface.
    pub n: usize,
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub(crate) fn ser_rational_vec<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

impl ParabolicClass {
    fn build(s: &Origami, direction: Holonomy, width: Option<i64>) -> Result<Self, VeechError> {
        let data = DirectionData::compute(s, direction)?;
        let direction = data.direction;
        let (m_min, m_max) = data.saddle_multiplier_range().unwrap_or((1, 1));
        let mut conjugator = IntMatrix::sending_to_horizontal(direction);
        if conjugator.apply(direction) != Holonomy::new(1, 0) {
            conjugator = conjugator.neg();
        }
        let parabolic = width.map(|k| conjugator.inverse().mul(&IntMatrix::t_pow(k)).mul(&conjugator).normalized());
        Ok(Self {
            direction,
            v_short: direction.scale(m_min),
            v_long: direction.scale(m_max),
            core_count: data.cylinders.len(),
            cylinders: data.cylinders,
            rho: Rational::new(m_max, m_min),
            conjugator,
            width,
            parabolic,
            n: s.n(),
        })
    }

    pub fn areas(&self) -> Vec<usize> {
        self.cylinders.iter().map(|c| c.area).collect()
    }

    pub fn multipliers(&self) -> Vec<usize> {
        self.cylinders.iter().map(|c| c.circumference).collect()
    }

    /// Multiple of the direction realized by the shortest saddle connection.
    pub fn short_multiplier(&self) -> i64 {
        self.v_short.gcd()
    }

    /// `A_i·m²/(n·n_i²)` per cylinder, `m` the short multiplier: the modulus
    /// times `ε` on the level-`ε` horocycle.
    pub fn modulus_coefficients(&self) -> Vec<Rational> {
        let m = self.short_multiplier();
        self.cylinders
            .iter()
            .map(|c| {
                let ni = c.circumference as i64;
                Rational::new(c.area as i64 * m * m, self.n as i64 * ni * ni)
            })
            .collect()
    }

    /// Moduli of the cylinders at a disc point.
    pub fn moduli_at(&self, z: DiscPoint) -> Vec<f64> {
        let l = chart_len(self.n, z, self.direction.a as f64, self.direction.b as f64);
        self.cylinders
            .iter()
            .map(|c| {
                let ni = c.circumference as f64;
                c.area as f64 / (self.n as f64 * ni * ni * l * l)
            })
            .collect()
    }

    /// `(m_H, m'_H)`: smallest and largest cylinder modulus on the level-`ε` horocycle.
    pub fn moduli_range(&self, eps: f64) -> (f64, f64) {
        let c = self.modulus_coefficients();
        let lo = c.iter().min().copied().unwrap_or_else(Rational::zero);
        let hi = c.iter().max().copied().unwrap_or_else(Rational::zero);
        (to_f64(lo) / eps, to_f64(hi) / eps)
    }

    /// Point on the boundary of the level-`ε` horodisc, as the image of
    /// `t + i·m²/(nε)` under the inverse conjugator.
    pub fn horocycle_point(&self, eps: f64, t: f64) -> DiscPoint {
        let m = self.short_multiplier() as f64;
        let height = m * m / (self.n as f64 * eps);
        self.conjugator.inverse().act_disc(DiscPoint::new(t, height))
    }
}

pub(crate) fn to_f64(r: Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// How a list of cusp classes was obtained.
#[derive(Clone, Debug, Serialize)]
pub struct CuspCertificate {
    /// True when the list is provably complete (full Veech group of an origami).
    pub complete: bool,
    pub method: String,
    /// Word-ball radius used for subgroup searches.
    pub radius: Option<usize>,
}

/// Cusp classes of `g` acting on the disc of `s`.
///
/// For the full Veech group the classes are the `T`-cycles of the coset
/// action; for other subgroups they come from parabolic elements of the
/// radius-`radius` word ball, merged under the ball's action on directions.
pub fn cusp_classes(
    s: &Origami,
    g: &FuchsianSubgroup,
    radius: usize,
) -> Result<(Vec<ParabolicClass>, CuspCertificate), VeechError> {
    if g.full_veech {
        let vg = veech_group(s, DEFAULT_ORBIT_CAP)?;
        if g.index == Some(vg.index) {
            let mut out = Vec::new();
            for cyc in vg.t_cycles().iter() {
                let a = vg.transversal[cyc[0]];
                let w = a.inverse().apply(Holonomy::new(1, 0));
                out.push(ParabolicClass::build(s, w, Some(cyc.len() as i64))?);
            }
            let cert = CuspCertificate { complete: true, method: "coset T-cycles".into(), radius: None };
            return Ok((out, cert));
        }
    }
    g.check_stabilizes(s)?;
    let ball = group_ball(g, radius, DEFAULT_BALL_CAP)?;
    let mut widths: BTreeMap<Holonomy, i64> = BTreeMap::new();
    for e in &ball {
        if e.matrix.classify() != ElementKind::Parabolic {
            continue;
        }
        let w = parabolic_direction(&e.matrix);
        let c = IntMatrix::sending_to_horizontal(w);
        let k = c.mul(&e.matrix).mul(&c.inverse()).q.abs();
        let entry = widths.entry(w).or_insert(k);
        *entry = (*entry).min(k);
    }
    let dirs: Vec<Holonomy> = widths.keys().copied().collect();
    let pos: HashMap<Holonomy, usize> = dirs.iter().enumerate().map(|(i, d)| (*d, i)).collect();
    let mut parent: Vec<usize> = (0..dirs.len()).collect();
    for e in &ball {
        for (i, d) in dirs.iter().enumerate() {
            if let Some(&j) = pos.get(&e.matrix.apply(*d).up_to_sign()) {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, (Holonomy, i64)> = BTreeMap::new();
    for (i, d) in dirs.iter().enumerate() {
        let r = root(&mut parent, i);
        let k = widths[d];
        let entry = classes.entry(r).or_insert((*d, k));
        if (d.norm_sq(), *d) < (entry.0.norm_sq(), entry.0) {
            entry.0 = *d;
        }
        entry.1 = entry.1.min(k);
    }
    let mut reps: Vec<(Holonomy, i64)> = classes.into_values().collect();
    reps.sort_by_key(|(d, _)| (d.norm_sq(), *d));
    let mut out = Vec::new();
    for (d, k) in reps {
        out.push(ParabolicClass::build(s, d, Some(k))?);
    }
    let cert = CuspCertificate {
        complete: false,
        method: "parabolic elements of word ball".into(),
        radius: Some(radius),
    };
    Ok((out, cert))
}

fn root(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Primitive direction fixed by a parabolic element.
pub(crate) fn parabolic_direction(m: &IntMatrix) -> Holonomy {
    let m = if m.trace() < 0 { m.neg() } else { *m };
    let w = if m.q != 0 || m.p != 1 {
        Holonomy::new(m.q, 1 - m.p)
    } else {
        Holonomy::new(1 - m.s, m.r)
    };
    let w = if w.is_zero() { Holonomy::new(1, 0) } else { w };
    w.primitive().expect("nonzero").0.up_to_sign()
}

/// Group-level constants derived from the cusp classes.
#[derive(Clone, Debug, Serialize)]
pub struct ParabolicConstants {
    #[serde(serialize_with = "ser_rational")]
    pub rho: Rational,
    /// Smallest horocycle modulus `m_Γ` at level `ε_Γ`.
    pub m_min: f64,
    /// Largest horocycle modulus `m'_Γ` at level `ε_Γ`.
    pub m_max: f64,
    /// `m_Γ·ε_Γ` and `m'_Γ·ε_Γ`, exact.
    #[serde(serialize_with = "ser_rational")]
    pub m_min_coefficient: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub m_max_coefficient: Rational,
    pub eps_gamma: f64,
    pub eps_zero: f64,
}

/// `ρ_Γ`, `m_Γ`, `m'_Γ` over a list of classes.
pub fn parabolic_constants(
    classes: &[ParabolicClass],
    eps_gamma: f64,
    eps_zero: f64,
) -> Result<ParabolicConstants, VeechError> {
    if classes.is_empty() {
        return Err(VeechError::EmptyClassList);
    }
    let rho = classes.iter().map(|c| c.rho).max().expect("non-empty");
    let coeffs: Vec<Rational> = classes.iter().flat_map(|c| c.modulus_coefficients()).collect();
    let lo = *coeffs.iter().min().expect("classes have cylinders");
    let hi = *coeffs.iter().max().expect("classes have cylinders");
    Ok(ParabolicConstants {
        rho,
        m_min: to_f64(lo) / eps_gamma,
        m_max: to_f64(hi) / eps_gamma,
        m_min_coefficient: lo,
        m_max_coefficient: hi,
        eps_gamma,
        eps_zero,
    })
}
