use annulus_core::geometry::cap_fraction;
use annulus_core::{
    build_graph, chromatic_number, clique_volume_bound, is_proper, max_clique, max_independent_set,
    sweep_color, verify_token_invariants, AdjacencyGraph, AnnulusInstance, Budget, BuildOptions,
    Point,
};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = AnnulusInstance> {
    (1usize..=3, 1usize..=25, 0.0f64..1.0, 0.1f64..1.0).prop_flat_map(|(d, n, a, span)| {
        let r1 = a;
        let r2 = a + span;
        prop::collection::vec(prop::collection::vec(-3.0f64..3.0, d), n).prop_map(move |pts| {
            let pts = pts.into_iter().map(|c| Point::new(c).unwrap()).collect();
            AnnulusInstance::float(d, r1, r2, pts).unwrap()
        })
    })
}

fn graph() -> impl Strategy<Value = AdjacencyGraph> {
    (1usize..=12).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = AdjacencyGraph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

/// Rotation in the plane of the first two axes plus a shift.
fn rigid(p: &Point, angle: f64, shift: &[f64]) -> Point {
    let mut c = p.coords().to_vec();
    if c.len() >= 2 {
        let (x, y) = (c[0], c[1]);
        c[0] = angle.cos() * x - angle.sin() * y;
        c[1] = angle.sin() * x + angle.cos() * y;
    } else if angle > std::f64::consts::PI {
        c[0] = -c[0];
    }
    Point::new(c.iter().zip(shift).map(|(a, b)| a + b).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rigid_motions_keep_the_graph(
        inst in instance(),
        angle in 0.0f64..std::f64::consts::TAU,
        shift in prop::collection::vec(-5.0f64..5.0, 3),
    ) {
        let opts = BuildOptions::default();
        // skip configurations that sit on a radius
        prop_assume!(inst.boundary_pairs(1e-6).is_empty());
        let moved: Vec<Point> = inst.points().iter().map(|p| rigid(p, angle, &shift)).collect();
        let other = AnnulusInstance::float(inst.dim(), inst.r1(), inst.r2(), moved).unwrap();
        prop_assert_eq!(build_graph(&inst, opts).unwrap(), build_graph(&other, opts).unwrap());
    }

    #[test]
    fn sweep_is_proper_with_valid_tokens(inst in instance()) {
        let g = build_graph(&inst, BuildOptions::default()).unwrap();
        let col = sweep_color(&inst);
        prop_assert!(is_proper(&g, &col.colors).unwrap());
        let report = verify_token_invariants(&inst, &col);
        prop_assert!(report.ok, "{:?}", report.violations);
    }

    #[test]
    fn clique_within_volume_bound(inst in instance()) {
        prop_assume!(inst.r1() > 0.05);
        let g = build_graph(&inst, BuildOptions::default()).unwrap();
        let w = max_clique(&g, Budget::CLIQUE).unwrap().value as u128;
        prop_assert!(w <= clique_volume_bound(inst.dim(), inst.r1(), inst.r2()).unwrap());
    }

    #[test]
    fn chromatic_sandwich(g in graph()) {
        let w = max_clique(&g, Budget::CLIQUE).unwrap();
        let a = max_independent_set(&g, Budget::CLIQUE).unwrap();
        let c = chromatic_number(&g, Budget::CHROMATIC).unwrap();
        prop_assert!(c.value >= w.value);
        prop_assert!(c.value * a.value >= g.n());
        prop_assert!(is_proper(&g, &c.witness).unwrap());
        prop_assert_eq!(c.witness.iter().max().copied().unwrap_or(0), c.value);
        for (i, &u) in w.witness.iter().enumerate() {
            for &v in &w.witness[i + 1..] {
                prop_assert!(g.has_edge(u, v));
            }
        }
        for (i, &u) in a.witness.iter().enumerate() {
            for &v in &a.witness[i + 1..] {
                prop_assert!(!g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn cap_fraction_is_monotone(d in 2usize..40, a in 0.0f64..3.1, b in 0.0f64..3.1) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (f_lo, f_hi) = (cap_fraction(d, lo).unwrap(), cap_fraction(d, hi).unwrap());
        prop_assert!(f_lo <= f_hi + 1e-12);
        prop_assert!((0.0..=1.0).contains(&f_lo) && f_hi <= 1.0);
    }
}
