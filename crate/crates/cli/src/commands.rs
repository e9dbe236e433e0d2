use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use teichcore::coarse::{
    choose_epsilon, compute_w, distance_formula_rhs, pvt_spectrum, sample_thick_pairs, systole_qi_experiment,
    undistortion_experiment, EpsilonChoice, Grid,
};
use teichcore::disc::{
    electrified_distance, hyp_distance, nielsen_core, overlap_bound, segment_max_height, truncated_distance,
    CorePath, HoroFamily, PathPiece,
};
use teichcore::flat::{DiscPoint, Origami};
use teichcore::veech::{
    cusp_classes, parabolic_constants, veech_group, CuspCertificate, FuchsianSubgroup, IntMatrix,
    DEFAULT_ORBIT_CAP,
};

use crate::{to_value, CliError, Common, Kind, Output};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// JSON object or one-line cycle notation; the file stem labels the latter.
pub fn load_origami(path: &Path) -> Result<Origami, CliError> {
    let text = read(path)?;
    let text = text.trim();
    if text.starts_with('{') {
        Ok(Origami::from_json(text)?)
    } else {
        let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or("origami");
        Ok(Origami::from_cycle_notation(text, label)?)
    }
}

/// The group, its horodisc family at the chosen `ε_Γ`, and their certificates.
struct Setting {
    surface: Origami,
    group: FuchsianSubgroup,
    family: HoroFamily,
    epsilon: EpsilonChoice,
    cusps: CuspCertificate,
}

impl Setting {
    fn load(c: &Common, path: &Path) -> Result<Self, CliError> {
        let surface = load_origami(path)?;
        let (group, family, cusps) = match &c.subgroup {
            Some(file) => {
                let label = file.file_stem().and_then(|s| s.to_str()).unwrap_or("subgroup");
                let g = FuchsianSubgroup::from_json(label, &read(file)?)?;
                g.check_stabilizes(&surface)?;
                let (classes, cert) = cusp_classes(&surface, &g, c.word_radius)?;
                let fam = HoroFamily::subgroup(&surface, &g, classes, c.eps0, c.eps0, c.word_radius, c.min_size)?;
                (g, fam, cert)
            }
            None => {
                let g = veech_group(&surface, DEFAULT_ORBIT_CAP)?.as_subgroup(surface.label());
                let (_, cert) = cusp_classes(&surface, &g, 0)?;
                (g, HoroFamily::lattice(&surface, c.eps0, c.eps0)?, cert)
            }
        };
        let epsilon = choose_epsilon(&family, c.eps0, c.enum_radius)?;
        let family = family.with_eps_gamma(epsilon.eps_gamma);
        Ok(Self { surface, group, family, epsilon, cusps })
    }

    fn certificates(&self) -> Value {
        json!({
            "family": self.family.certificate,
            "cusps": self.cusps,
            "epsilon": self.epsilon,
        })
    }
}

pub fn analyze(c: &Common, path: &Path) -> Result<Output, CliError> {
    let s = load_origami(path)?;
    let vg = veech_group(&s, DEFAULT_ORBIT_CAP)?;
    let (classes, cusp_cert) = cusp_classes(&s, &vg.as_subgroup(s.label()), 0)?;
    let fam = HoroFamily::lattice(&s, c.eps0, c.eps0)?;
    let epsilon = choose_epsilon(&fam, c.eps0, c.enum_radius)?;
    let constants = parabolic_constants(&classes, epsilon.eps_gamma, c.eps0)?;
    let mut csv = String::from("class,direction_a,direction_b,cylinder,area,circumference,height,squares\n");
    for (i, cl) in classes.iter().enumerate() {
        for (j, cy) in cl.cylinders.iter().enumerate() {
            let squares: Vec<String> = cy.squares.iter().map(|q| (q + 1).to_string()).collect();
            csv.push_str(&format!(
                "{i},{},{},{j},{},{},{},{}\n",
                cl.direction.a,
                cl.direction.b,
                cy.area,
                cy.circumference,
                cy.height(),
                squares.join(" ")
            ));
        }
    }
    let result = json!({
        "label": s.label(),
        "n": s.n(),
        "cycles": s.cycle_notation(),
        "vertices": s.vertex_data(),
        "genus": s.genus(),
        "veech_index": vg.index,
        "veech_generators": vg.generators,
        "cusp_classes": classes,
        "rho": constants.rho.to_string(),
        "constants": constants,
    });
    Ok(Output {
        command: "analyze".into(),
        parameters: json!({ "origami": path.display().to_string() }),
        certificates: json!({ "cusps": cusp_cert, "epsilon": epsilon, "orbit_cap": DEFAULT_ORBIT_CAP }),
        result,
        files: vec![("cylinders.csv".into(), csv), ("coset_graph.dot".into(), vg.to_dot())],
    })
}

pub fn constants(c: &Common, path: &Path, grid_step: f64, y_max: f64) -> Result<Output, CliError> {
    let st = Setting::load(c, path)?;
    let overlap = overlap_bound(&st.family, c.enum_radius)?;
    let moduli = parabolic_constants(&st.family.classes, st.epsilon.eps_gamma, c.eps0)?;
    // W needs a fundamental domain, which only lattice families provide.
    let w = if st.family.is_lattice() {
        Some(compute_w(&st.family, &Grid::Fundamental { step: grid_step, y_max })?)
    } else {
        None
    };
    let result = json!({
        "eps_gamma": st.epsilon.eps_gamma,
        "eps_zero": c.eps0,
        "r_gamma": overlap.r_gamma,
        "overlap": overlap,
        "w": w,
        "moduli": moduli,
    });
    Ok(Output {
        command: "constants".into(),
        parameters: json!({ "origami": path.display().to_string(), "grid_step": grid_step, "y_max": y_max }),
        certificates: st.certificates(),
        result,
        files: Vec::new(),
    })
}

fn parse_chart(text: &str) -> Result<IntMatrix, CliError> {
    let v: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Parse(format!("chart {text:?}: {e}")))?;
    let [p, q, r, s] = v[..] else {
        return Err(CliError::Parse(format!("chart needs four entries, got {text:?}")));
    };
    IntMatrix::new(p, q, r, s).map_err(|e| CliError::Parse(format!("chart: {e}")))
}

pub fn pvt(c: &Common, path: &Path, bound: f64, chart: &str) -> Result<Output, CliError> {
    let chart = parse_chart(chart)?;
    let st = Setting::load(c, path)?;
    let report = pvt_spectrum(&st.family, bound, c.enum_radius, &chart)?;
    let csv = report.to_csv();
    Ok(Output {
        command: "pvt".into(),
        parameters: json!({ "origami": path.display().to_string(), "bound": bound, "chart": chart }),
        certificates: st.certificates(),
        result: to_value(&report),
        files: vec![("spectrum.csv".into(), csv)],
    })
}

pub fn distance(c: &Common, path: &Path, kind: Kind, x: DiscPoint, y: DiscPoint) -> Result<Output, CliError> {
    let st = Setting::load(c, path)?;
    let core = nielsen_core(&st.group, c.word_radius)?;
    let (value, p) = match kind {
        Kind::Tr => truncated_distance(x, y, &st.family)?,
        Kind::El => electrified_distance(x, y, &st.family),
        Kind::Hyp => {
            let d = hyp_distance(x, y);
            (d, CorePath::new(vec![PathPiece::Geodesic { from: x, to: y, length: d }]))
        }
    };
    let rhs = distance_formula_rhs(&st.surface, &st.family, x, y, c.cutoff)?;
    let (lo, hi) = p.pieces.iter().fold((x.x.min(y.x), x.x.max(y.x)), |(lo, hi), q| {
        (lo.min(q.from().x).min(q.to().x), hi.max(q.from().x).max(q.to().x))
    });
    let top = p.pieces.iter().map(|q| segment_max_height(q.from(), q.to())).fold(x.y.max(y.y), f64::max);
    let discs = st.family.candidates(lo - 1.0, hi + 1.0, x.y.min(y.y), top, st.family.eps_gamma);
    let result = json!({
        "kind": kind,
        "distance": value,
        "in_core": [core.member(x), core.member(y)],
        "path": p,
        "formula_rhs": rhs,
    });
    Ok(Output {
        command: "distance".into(),
        parameters: json!({ "origami": path.display().to_string(), "kind": kind, "from": x, "to": y }),
        certificates: json!({
            "family": st.family.certificate,
            "cusps": st.cusps,
            "epsilon": st.epsilon,
            "nielsen_core": core,
        }),
        result,
        files: vec![("path.json".into(), p.to_json()), ("path.svg".into(), p.to_svg(&discs))],
    })
}

pub fn undistortion(c: &Common, path: &Path, radius: usize, basepoint: DiscPoint) -> Result<Output, CliError> {
    let st = Setting::load(c, path)?;
    let report = undistortion_experiment(&st.group, &st.family, radius, basepoint)?;
    Ok(Output {
        command: "experiment undistortion".into(),
        parameters: json!({ "origami": path.display().to_string(), "radius": radius, "basepoint": basepoint }),
        certificates: st.certificates(),
        files: vec![("samples.csv".into(), report.to_csv()), ("scatter.svg".into(), report.to_svg())],
        result: to_value(&report),
    })
}

pub fn systole(c: &Common, path: &Path, pairs: usize, radius: usize) -> Result<Output, CliError> {
    let st = Setting::load(c, path)?;
    let sample = sample_thick_pairs(&st.group, &st.family, pairs, radius, c.seed)?;
    let report = systole_qi_experiment(&st.surface, &st.family, &sample)?;
    Ok(Output {
        command: "experiment systole".into(),
        parameters: json!({ "origami": path.display().to_string(), "pairs": pairs, "radius": radius }),
        certificates: st.certificates(),
        files: vec![("samples.csv".into(), report.to_csv()), ("scatter.svg".into(), report.to_svg())],
        result: to_value(&report),
    })
}
