//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Runs without the libtest harness so the lines always reach the terminal.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teichcore::coarse::{
    choose_epsilon, compute_w, pvt_spectrum, sample_thick_pairs, spearman, systole_qi_experiment,
    twisting_interval, undistortion_experiment, Grid,
};
use teichcore::disc::{
    electrified_distance, horoball_gap, hyp_distance, lens_corners, overlap_bound, truncated_distance, HoroFamily,
    Horodisc,
};
use teichcore::flat::{cylinder_decomposition, DiscPoint, Holonomy, Origami};
use teichcore::veech::{veech_group, FuchsianSubgroup, IntMatrix, DEFAULT_ORBIT_CAP};
use teichcore::Rational;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn origamis() -> Vec<Origami> {
    vec![Origami::torus(), Origami::l_shape()]
}

/// Family at the level chosen by `choose_epsilon` with `ε_0 = 0.5`.
fn family(s: &Origami) -> HoroFamily {
    let fam = HoroFamily::lattice(s, 0.5, 0.5).unwrap();
    let eps = choose_epsilon(&fam, 0.5, 12).unwrap().eps_gamma;
    fam.with_eps_gamma(eps)
}

fn group(s: &Origami) -> FuchsianSubgroup {
    veech_group(s, DEFAULT_ORBIT_CAP).unwrap().as_subgroup(s.label())
}

fn random_direction(rng: &mut ChaCha8Rng, m: i64) -> Holonomy {
    loop {
        let h = Holonomy::new(rng.gen_range(-m..=m), rng.gen_range(0..=m));
        if h.b == 0 && h.a <= 0 {
            continue;
        }
        if h.is_primitive() {
            return h;
        }
    }
}

/// Point at arclength `u` along the geodesic from cusp `q` (u → −∞) to cusp `p` (u → +∞).
fn on_geodesic(p: Option<f64>, q: Option<f64>, u: f64) -> DiscPoint {
    match (p, q) {
        (None, Some(q)) => DiscPoint::new(q, u.exp()),
        (Some(p), None) => DiscPoint::new(p, (-u).exp()),
        (Some(p), Some(q)) => {
            let (c, r) = ((p + q) / 2.0, (p - q) / 2.0);
            // cos θ = tanh u, so u → ∞ approaches c + r = p.
            DiscPoint::new(c + r * u.tanh(), r.abs() / u.cosh())
        }
        (None, None) => unreachable!(),
    }
}

/// Boundary crossing of `h` along the geodesic, by bisection on `l² ≤ ε`.
/// `toward_h` says whether `h` sits at the `u → +∞` end.
fn crossing(h: &Horodisc, p: Option<f64>, q: Option<f64>, toward_h: bool) -> f64 {
    let (mut lo, mut hi) = (-60.0f64, 60.0f64);
    let inside = |u: f64| h.length_sq(on_geodesic(p, q, u)) <= h.level;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if inside(mid) == toward_h {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn numeric_gap(u: &Horodisc, v: &Horodisc) -> f64 {
    let (p, q) = (u.cusp(), v.cusp());
    let a = crossing(u, p, q, true);
    let b = crossing(v, p, q, false);
    (a - b).max(0.0)
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut count = 0;
    for s in origamis() {
        let fam = family(&s);
        while count < 60 * (1 + (s.n() > 1) as usize) {
            let (d1, d2) = (random_direction(&mut rng, 12), random_direction(&mut rng, 12));
            if d1 == d2 {
                continue;
            }
            let u = fam.horodisc_at(d1, fam.eps_gamma).unwrap();
            let v = fam.horodisc_at(d2, fam.eps_gamma).unwrap();
            let err = (horoball_gap(&u, &v).unwrap() - numeric_gap(&u, &v)).abs();
            worst = worst.max(err);
            count += 1;
        }
    }
    outcome(worst <= 1e-9, format!("{count} pairs, max |formula − numeric| = {worst:.2e}"))
}

fn criterion_2() -> Outcome {
    let mut worst = f64::INFINITY;
    let mut pairs = 0;
    for s in origamis() {
        let fam = family(&s);
        let hols = fam.cusp_holonomies(12);
        for (i, &(ci, a)) in hols.iter().enumerate() {
            for &(cj, b) in &hols[i + 1..] {
                let u = Horodisc::new(a, fam.eps_gamma, fam.n, ci);
                let v = Horodisc::new(b, fam.eps_gamma, fam.n, cj);
                worst = worst.min(horoball_gap(&u, &v).unwrap());
                pairs += 1;
            }
        }
    }
    outcome(worst >= 1.0 - 1e-9, format!("{pairs} pairs, min gap = {worst:.6}"))
}

fn criterion_3() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for s in origamis() {
        let fam = family(&s);
        let a = overlap_bound(&fam, 12).unwrap();
        let b = overlap_bound(&fam, 14).unwrap();
        let mut ok = a.r_gamma.is_finite() && (a.r_gamma - b.r_gamma).abs() <= 1e-6;
        for p in &a.pairs {
            ok &= p.diameter.is_finite() && p.diameter <= a.r_gamma;
            // Independent check: the lens corners lie on both boundary horocycles.
            let u = Horodisc::new(p.h, fam.eps_zero, fam.n, 0);
            let v = Horodisc::new(p.k, fam.eps_zero, fam.n, 0);
            if let Some((x, y)) = lens_corners(&u, &v) {
                for z in [x, y] {
                    ok &= (u.length_sq(z) / u.level - 1.0).abs() < 1e-9;
                    ok &= (v.length_sq(z) / v.level - 1.0).abs() < 1e-9;
                }
                ok &= (hyp_distance(x, y) - p.diameter).abs() < 1e-9;
            }
        }
        pass &= ok;
        detail.push(format!("{}: R = {:.9} ({} overlaps, t = {:.3})", s.label(), a.r_gamma, a.pairs.len(), a.t));
    }
    outcome(pass, detail.join("; "))
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> IntMatrix {
    let mut m = IntMatrix::IDENTITY;
    for _ in 0..6 {
        m = m.mul(&IntMatrix::t_pow(rng.gen_range(-3..=3))).mul(&IntMatrix::S);
    }
    m
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let torus = pvt_spectrum(&family(&Origami::torus()), 10.0, 12, &random_unimodular(&mut rng)).unwrap();
    let expect: Vec<Rational> = (0..=10).map(Rational::from_integer).collect();
    let t_ok = torus.values == expect && torus.invariant;
    let chart = random_unimodular(&mut rng);
    let l = pvt_spectrum(&family(&Origami::l_shape()), 5.0, 12, &chart).unwrap();
    let third = Rational::new(1, 3);
    let gap = l.values.windows(2).map(|w| w[1] - w[0]).min().unwrap();
    let l_ok = gap >= third && l.invariant;
    outcome(
        t_ok && l_ok,
        format!("torus {} values, L-origami {} values with min gap {}, chart {}", torus.values.len(), l.values.len(), gap, chart),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut pass = true;
    let mut checked = 0;
    for s in origamis() {
        let fam = family(&s);
        for _ in 0..25 {
            let d = random_direction(&mut rng, 6);
            let u = fam.horodisc_at(d, fam.eps_gamma).unwrap();
            let t0 = rng.gen_range(-5.0..5.0);
            let sw = rng.gen_range(0.0..20.0);
            let x = u.denormalize(DiscPoint::new(t0, 1.0));
            let y = u.denormalize(DiscPoint::new(t0 + sw, 1.0));
            let iv = twisting_interval(&s, &fam, &u, x, y).unwrap();
            pass &= (iv.s - sw).abs() < 1e-6 * (1.0 + sw);
            pass &= iv.counts.iter().all(|&c| iv.contains(c as f64));
            checked += 1;
        }
    }
    outcome(pass, format!("{checked} horocycle pairs"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pass = true;
    let mut done = 0;
    let mut shared = 0;
    let mut worst = 0.0f64;
    for s in origamis() {
        let fam = family(&s);
        let mut k = 0;
        while k < 100 {
            let x = DiscPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.05..4.0));
            let y = DiscPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.05..4.0));
            if fam.strictly_inside(x, fam.eps_gamma).is_some() || fam.strictly_inside(y, fam.eps_gamma).is_some() {
                continue;
            }
            let h = hyp_distance(x, y);
            let (el, _) = electrified_distance(x, y, &fam);
            let (tr, _) = truncated_distance(x, y, &fam).unwrap();
            worst = worst.max(el - h).max(h - tr);
            pass &= el <= h + 1e-9 && h <= tr + 1e-9;
            k += 1;
        }
        done += k;
        // Pairs inside one horodisc.
        for _ in 0..20 {
            let u = fam.horodisc_at(random_direction(&mut rng, 6), fam.eps_gamma).unwrap();
            let x = u.denormalize(DiscPoint::new(rng.gen_range(-50.0..50.0), rng.gen_range(1.0..100.0)));
            let y = u.denormalize(DiscPoint::new(rng.gen_range(-50.0..50.0), rng.gen_range(1.0..100.0)));
            pass &= electrified_distance(x, y, &fam).0 <= 1.0 + 1e-9;
            shared += 1;
        }
    }
    outcome(pass, format!("{done} pairs (max violation {worst:.2e}), {shared} shared-horodisc pairs"))
}

/// Euler characteristic from the commutator cycles, computed here from scratch.
fn euler_char(s: &Origami) -> i64 {
    let n = s.n();
    let (h, v) = (s.h(), s.v());
    let mut hinv = vec![0; n];
    let mut vinv = vec![0; n];
    for i in 0..n {
        hinv[h[i]] = i;
        vinv[v[i]] = i;
    }
    let c: Vec<usize> = (0..n).map(|i| h[v[hinv[vinv[i]]]]).collect();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for i in 0..n {
        if !seen[i] {
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = c[j];
            }
        }
    }
    cycles as i64 - n as i64
}

fn random_origami(rng: &mut ChaCha8Rng, n: usize) -> Origami {
    loop {
        let mut h: Vec<usize> = (0..n).collect();
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            h.swap(i, rng.gen_range(0..=i));
            v.swap(i, rng.gen_range(0..=i));
        }
        if let Ok(o) = Origami::from_perms(h, v, "random") {
            return o;
        }
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut surfaces = origamis();
    for n in 2..=6 {
        for _ in 0..6 {
            surfaces.push(random_origami(&mut rng, n));
        }
    }
    let mut pass = true;
    for s in &surfaces {
        let vd = s.vertex_data();
        let lhs: i64 = vd.cone_angles.iter().map(|&k| k as i64 - 1).sum();
        pass &= lhs == 2 * vd.genus as i64 - 2;
        pass &= -euler_char(s) == 2 * vd.genus as i64 - 2;
        for _ in 0..20 {
            let d = random_direction(&mut rng, 9);
            let area: usize = cylinder_decomposition(s, d).unwrap().iter().map(|c| c.area).sum();
            pass &= area == s.n();
        }
    }
    outcome(pass, format!("{} surfaces × 20 directions", surfaces.len()))
}

fn criterion_8() -> Outcome {
    let fam = family(&Origami::torus());
    let r = compute_w(&fam, &Grid::Fundamental { step: 0.02, y_max: 2.0 }).unwrap();
    let target = 0.75f64.powf(0.25);
    outcome(
        (r.w - target).abs() <= 0.005,
        format!("W = {:.5} at ({:.3}, {:.3}), target {:.5}, {} samples", r.w, r.argmin.x, r.argmin.y, target, r.samples),
    )
}

fn criterion_9() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for s in origamis() {
        let fam = family(&s);
        let g = group(&s);
        let k4 = undistortion_experiment(&g, &fam, 4, DiscPoint::I).unwrap();
        let k6 = undistortion_experiment(&g, &fam, 6, DiscPoint::I).unwrap();
        let change = (k6.k - k4.k).abs() / k4.k;
        pass &= k6.k.is_finite() && k6.certifies(k6.k) && change < 0.10;
        detail.push(format!("{}: K4 = {:.4}, K6 = {:.4} ({} samples, change {:.1}%)", s.label(), k4.k, k6.k, k6.samples.len(), 100.0 * change));
    }
    outcome(pass, detail.join("; "))
}

fn criterion_10() -> Outcome {
    let s = Origami::torus();
    let fam = family(&s);
    let g = FuchsianSubgroup::modular();
    let pairs = sample_thick_pairs(&g, &fam, 50, 8, 10).unwrap();
    let r = systole_qi_experiment(&s, &fam, &pairs).unwrap();
    let xs: Vec<f64> = r.samples.iter().map(|p| p.input).collect();
    let ys: Vec<f64> = r.samples.iter().map(|p| p.output).collect();
    let rho = spearman(&xs, &ys).unwrap_or(f64::NAN);
    let one_sided = r.samples.iter().all(|p| p.output <= r.k * p.input + r.k + 1e-9);
    outcome(rho >= 0.8 && one_sided, format!("Spearman = {rho:.4}, K = {:.4} (upper bound only)", r.k))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("wedge-distance formula", criterion_1),
        ("horodisc separation", criterion_2),
        ("overlap bound", criterion_3),
        ("spectrum discreteness", criterion_4),
        ("twisting vs winding", criterion_5),
        ("metric ordering", criterion_6),
        ("Gauss-Bonnet and area conservation", criterion_7),
        ("W on the torus", criterion_8),
        ("undistortion trend", criterion_9),
        ("systole map trend", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name}: {} [{:.2}s]", i + 1, o.detail, t.elapsed().as_secs_f64());
        failed += !o.pass as usize;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
