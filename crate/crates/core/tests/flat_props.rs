use std::collections::BTreeMap;

use num_integer::Integer;
use proptest::prelude::*;
use teichcore::flat::{
    cylinder_decomposition, enumerate_saddle_connections, intersection_number, length_at, systole, Corner,
    DiscPoint, Holonomy, Origami, DEFAULT_SADDLE_CAP,
};
use teichcore::flat::{length_sq_exact, mobius_exact};
use teichcore::veech::IntMatrix;
use teichcore::Rational;

fn origami(max_n: usize) -> impl Strategy<Value = Origami> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let id: Vec<usize> = (0..n).collect();
            (Just(id.clone()).prop_shuffle(), Just(id).prop_shuffle())
        })
        .prop_filter_map("connected", |(h, v)| Origami::from_perms(h, v, "random").ok())
}

fn direction(m: i64) -> impl Strategy<Value = Holonomy> {
    (-m..=m, 0..=m).prop_filter_map("primitive upper half-plane", |(a, b)| {
        let h = Holonomy::new(a, b);
        (h.is_primitive() && (b > 0 || a > 0)).then_some(h)
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(p, q)| Rational::new(p, q))
}

/// Saddle connections by unfolding: walk the segment from each singular corner
/// sector through the square tiling until the first singular lattice point.
fn brute_force_saddles(s: &Origami, radius: i64) -> BTreeMap<Holonomy, usize> {
    let mut out = BTreeMap::new();
    for a in -radius..=radius {
        for b in 0..=radius {
            if (b == 0 && a <= 0) || a * a + b * b > radius * radius {
                continue;
            }
            for sq in 0..s.n() {
                if let Some(h) = trace(s, sq, a, b) {
                    *out.entry(h.up_to_sign()).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

/// The ray of holonomy `(a, b)` leaving the sector of `sq` at its lower-left
/// corner (angles `[0, π/2)`) or lower-right corner (angles `[π/2, π)`).
fn trace(s: &Origami, start: usize, a: i64, b: i64) -> Option<Holonomy> {
    let leftward = a <= 0;
    let start_corner = if leftward { Corner::LowerRight } else { Corner::LowerLeft };
    if !s.is_singular_vertex(s.vertex_of(start, start_corner)) {
        return None;
    }
    let g = a.gcd(&b);
    let (p, q) = (a / g, b / g);
    // Walk one primitive step at a time; each step crosses |p| vertical and q
    // horizontal grid lines, at most one lattice point at its end.
    let mut sq = start;
    for k in 1..=g {
        // Positions inside the unit cell grid relative to the step start.
        let mut events: Vec<(Rational, bool)> = Vec::new();
        for i in 1..p.abs() {
            events.push((Rational::new(i, p.abs()), true));
        }
        for j in 1..q {
            events.push((Rational::new(j, q), false));
        }
        events.sort();
        for (_, vertical) in events {
            sq = match (vertical, leftward) {
                (true, false) => s.right(sq),
                (true, true) => s.left(sq),
                (false, _) => s.up(sq),
            };
        }
        // Lattice point at the end of the step.
        let corner = match (p, q) {
            (_, 0) => Corner::LowerRight,
            (0, _) => Corner::UpperRight,
            _ if leftward => Corner::UpperLeft,
            _ => Corner::UpperRight,
        };
        if s.is_singular_vertex(s.vertex_of(sq, corner)) {
            return (k == g).then_some(Holonomy::new(a, b));
        }
        sq = match (p, q) {
            (_, 0) => s.right(sq),
            (0, _) => s.up(sq),
            _ if leftward => s.up(s.left(sq)),
            _ => s.up(s.right(sq)),
        };
    }
    None
}

#[test]
fn saddle_enumeration_matches_unfolding_oracle() {
    let samples = [
        Origami::torus(),
        Origami::l_shape(),
        Origami::from_cycle_notation("h=(1 2 3) v=(1)(2 3)", "a").unwrap(),
        Origami::from_cycle_notation("h=(1 2)(3 4) v=(1 3)(2 4)", "b").unwrap(),
        Origami::from_cycle_notation("h=(1 2 3 4) v=(1 2)(3)(4)", "c").unwrap(),
        Origami::from_cycle_notation("h=(1 2 3) v=(1 2 3)", "d").unwrap(),
    ];
    for s in samples {
        for bound in [1.0, 2.5, 5.0] {
            let radius = (bound * (s.n() as f64).sqrt()).ceil() as i64;
            let mut got: BTreeMap<Holonomy, usize> = BTreeMap::new();
            for c in enumerate_saddle_connections(&s, bound, DEFAULT_SADDLE_CAP).unwrap() {
                *got.entry(c.holonomy.up_to_sign()).or_insert(0) += 1;
            }
            let want: BTreeMap<Holonomy, usize> = brute_force_saddles(&s, radius)
                .into_iter()
                .filter(|(h, _)| h.norm() / (s.n() as f64).sqrt() <= bound + 1e-12)
                .collect();
            assert_eq!(got, want, "{} at bound {bound}", s.cycle_notation());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn gauss_bonnet(s in origami(6)) {
        let d = s.vertex_data();
        let excess: i64 = d.cone_angles.iter().map(|&k| k as i64 - 1).sum();
        prop_assert_eq!(excess, 2 * d.genus as i64 - 2);
        // Euler characteristic from the cell structure: V − 2n + n.
        prop_assert_eq!(s.vertex_count() as i64 - s.n() as i64, 2 - 2 * d.genus as i64);
    }

    #[test]
    fn cylinder_areas_sum_to_n(s in origami(6), w in direction(7)) {
        let cyls = cylinder_decomposition(&s, w).unwrap();
        prop_assert_eq!(cyls.iter().map(|c| c.area).sum::<usize>(), s.n());
        let mut squares: Vec<usize> = cyls.iter().flat_map(|c| c.squares.iter().copied()).collect();
        squares.sort_unstable();
        squares.dedup();
        // Every square meets some cylinder.
        prop_assert_eq!(squares.len(), s.n());
        for c in &cyls {
            prop_assert_eq!(c.area % c.circumference, 0);
        }
    }

    #[test]
    fn chart_length_is_equivariant(x in rational(), y in (1i64..30, 1i64..10), a in -9i64..9, b in -9i64..9, n in 1usize..6) {
        prop_assume!(a != 0 || b != 0);
        let y = Rational::new(y.0, y.1);
        let w = Holonomy::new(a, b);
        for m in [IntMatrix::S, IntMatrix::T, IntMatrix::T.inverse()] {
            let (x2, y2) = mobius_exact(m.p, m.q, m.r, m.s, x, y);
            prop_assert_eq!(length_sq_exact(n, x2, y2, m.apply(w)), length_sq_exact(n, x, y, w));
        }
    }

    #[test]
    fn systole_is_no_longer_than_any_core(s in origami(4), x in -1.0f64..1.0, y in 0.3f64..3.0) {
        let z = DiscPoint::new(x, y);
        let sys = systole(&s, z);
        prop_assert!(!sys.cylinders.is_empty());
        for w in [Holonomy::new(1, 0), Holonomy::new(0, 1), Holonomy::new(1, 1), Holonomy::new(2, 1), Holonomy::new(1, -2)] {
            for c in cylinder_decomposition(&s, w).unwrap() {
                let l = length_at(s.n(), z, c.core_holonomy()).unwrap().length;
                prop_assert!(sys.length <= l + 1e-9);
            }
        }
        // Systoles range over cylinder cores, so the cores of every periodic
        // direction up to this size bound it from above.
        for a in -3i64..=3 {
            for b in 1i64..=3 {
                let w = Holonomy::new(a, b);
                if w.is_primitive() {
                    for c in cylinder_decomposition(&s, w).unwrap() {
                        prop_assert!(sys.length <= length_at(s.n(), z, c.core_holonomy()).unwrap().length + 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn intersection_is_symmetric_and_parallel_cores_are_disjoint(s in origami(5), u in direction(4), v in direction(4)) {
        let cu = cylinder_decomposition(&s, u).unwrap();
        let cv = cylinder_decomposition(&s, v).unwrap();
        for p in &cu {
            for q in &cv {
                let i = intersection_number(&s, &p.core, &q.core).unwrap();
                prop_assert_eq!(i, intersection_number(&s, &q.core, &p.core).unwrap());
                if u == v {
                    prop_assert_eq!(i, 0);
                }
            }
        }
        // Crossing the cylinders of `v` uses up the transverse measure of each `u` core.
        if u != v {
            for p in &cu {
                let weighted: u64 = cv.iter().map(|q| q.height() as u64 * intersection_number(&s, &p.core, &q.core).unwrap()).sum();
                prop_assert_eq!(weighted as i64, p.circumference as i64 * u.wedge(&v).abs());
            }
        }
    }
}
