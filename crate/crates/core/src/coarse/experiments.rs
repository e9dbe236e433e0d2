use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::hempel::hempel_estimate;
use super::qi::{QIReport, QISample};
use super::CoarseError;
use crate::disc::{electrified_distance, truncated_distance, HoroFamily};
use crate::flat::{DiscPoint, Origami};
use crate::veech::{group_ball, FuchsianSubgroup, DEFAULT_BALL_CAP};

/// Word length against truncated distance of the orbit of `basepoint`.
pub fn undistortion_experiment(
    g: &FuchsianSubgroup,
    fam: &HoroFamily,
    radius: usize,
    basepoint: DiscPoint,
) -> Result<QIReport, CoarseError> {
    if fam.strictly_inside(basepoint, fam.eps_gamma).is_some() {
        return Err(CoarseError::BasepointInHoroball);
    }
    let ball = group_ball(g, radius, DEFAULT_BALL_CAP)?;
    let samples: Vec<QISample> = ball
        .par_iter()
        .map(|e| {
            let (d, _) = truncated_distance(basepoint, e.matrix.act_disc(basepoint), fam)?;
            Ok(QISample { input: e.word_length as f64, output: d, witness: e.word.clone(), radius: e.word_length })
        })
        .collect::<Result<_, CoarseError>>()?;
    // Largest displacement of a generator bounds each sample along its word.
    let step = samples.iter().filter(|s| s.radius == 1).map(|s| s.output).fold(0.0, f64::max);
    let bounded = samples.iter().all(|s| s.output <= step * s.input + 1e-9);
    let mut report = QIReport::new(samples, true);
    report.checks.insert("displacement_bound".into(), bounded);
    Ok(report)
}

/// Electrified distance against the Hempel estimate on the given pairs.
///
/// Only the upper inequality is fitted, since the Hempel estimate bounds the
/// curve-graph distance from above.
pub fn systole_qi_experiment(
    s: &Origami,
    fam: &HoroFamily,
    pairs: &[(DiscPoint, DiscPoint)],
) -> Result<QIReport, CoarseError> {
    let samples: Vec<QISample> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let (d, _) = electrified_distance(x, y, fam);
            let h = hempel_estimate(s, x, y)?;
            Ok(QISample {
                input: d,
                output: h.value,
                witness: format!("({}, {}) -> ({}, {})", x.x, x.y, y.x, y.y),
                radius: 0,
            })
        })
        .collect::<Result<_, CoarseError>>()?;
    Ok(QIReport::new(samples, false))
}

/// Pairs of points outside every horodisc at level `ε_Γ`: a point near the
/// standard fundamental domain and a group translate of another such point.
///
/// The translating element has a uniformly random word length in `0..=radius`,
/// so that pair distances spread over the whole range.
pub fn sample_thick_pairs(
    g: &FuchsianSubgroup,
    fam: &HoroFamily,
    count: usize,
    radius: usize,
    seed: u64,
) -> Result<Vec<(DiscPoint, DiscPoint)>, CoarseError> {
    let ball = group_ball(g, radius, DEFAULT_BALL_CAP)?;
    let mut by_length: Vec<Vec<usize>> = vec![Vec::new(); radius + 1];
    for (i, e) in ball.iter().enumerate() {
        by_length[e.word_length].push(i);
    }
    by_length.retain(|v| !v.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point = |rng: &mut ChaCha8Rng| loop {
        let z = DiscPoint::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..2.0));
        if fam.strictly_inside(z, fam.eps_gamma).is_none() {
            return z;
        }
    };
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        if tries > 1000 * count.max(1) {
            return Err(CoarseError::InvalidParameter("thick part too small to sample".into()));
        }
        let x = point(&mut rng);
        let shell = &by_length[rng.gen_range(0..by_length.len())];
        let e = &ball[shell[rng.gen_range(0..shell.len())]];
        let y = e.matrix.act_disc(point(&mut rng));
        if fam.strictly_inside(y, fam.eps_gamma).is_none() {
            out.push((x, y));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_zero_is_identity() {
        let fam = HoroFamily::lattice(&Origami::torus(), 0.5, 0.5).unwrap();
        let r = undistortion_experiment(&FuchsianSubgroup::modular(), &fam, 0, DiscPoint::I).unwrap();
        assert_eq!(r.samples.len(), 1);
        assert_eq!(r.samples[0].output, 0.0);
        assert_eq!(r.k, 1.0);
    }

    #[test]
    fn basepoint_inside_is_rejected() {
        let fam = HoroFamily::lattice(&Origami::torus(), 0.5, 0.5).unwrap();
        let r = undistortion_experiment(&FuchsianSubgroup::modular(), &fam, 1, DiscPoint::new(0.0, 5.0));
        assert_eq!(r.unwrap_err(), CoarseError::BasepointInHoroball);
    }

    #[test]
    fn sampling_is_deterministic_and_thick() {
        let fam = HoroFamily::lattice(&Origami::torus(), 0.5, 0.5).unwrap();
        let g = FuchsianSubgroup::modular();
        let a = sample_thick_pairs(&g, &fam, 10, 4, 7).unwrap();
        let b = sample_thick_pairs(&g, &fam, 10, 4, 7).unwrap();
        assert_eq!(a, b);
        for (x, y) in a {
            assert!(fam.strictly_inside(x, 0.5).is_none() && fam.strictly_inside(y, 0.5).is_none());
        }
    }
}
