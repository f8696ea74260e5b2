//! The property battery behind `annulus verify`.
//!
//! Every check is seeded from [`VerifyConfig::seed`] and reports a pass flag
//! plus a short detail string; nothing time-dependent enters the summary, so
//! identical configurations give byte-identical output.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};

use annulus_core::bounds::{analysis_domain_end, analysis_grid_max};
use annulus_core::geometry::sampling::{rng_for_stream, unit_sphere};
use annulus_core::geometry::{
    cap_fraction, covering_number_witness, greedy_ball_packing, greedy_spherical_code,
    n_gamma_witness, EXPLICIT_RADIUS,
};
use annulus_core::probe::{
    embed_search, embedding_model, forbidden_config_residual, forbidden_model, EmbedProblem,
    ForbiddenKind, PenaltyModel, FEASIBILITY_TOLERANCE,
};
use annulus_core::rational::parse_rational;
use annulus_core::{
    build_graph, chromatic_number, clique_volume_bound, colors_in_ball, gen_cycle_1d,
    gen_easy_lemma_instance, gen_lattice, gen_sphere_net, gen_uniform_box, is_proper, kl_exponent,
    max_clique, max_independent_set, ratio_exponent, sweep_chi_bound, sweep_color_on,
    verify_token_invariants, AdjacencyGraph, AnnulusInstance, Budget, BuildOptions, LatticeSpec,
    Point, SphereNetSpec,
};
use rand::Rng;
use serde::Serialize;

use crate::args::Group;
use crate::report::{TOOL, VERSION};

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Float-mode boundary tolerance used by every check that builds graphs.
    pub tolerance: f64,
    pub only: Option<Group>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub group: &'static str,
    pub name: &'static str,
    /// The property the check asserts.
    pub property: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub mode: String,
    pub only: Option<&'static str>,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckOutcome>,
}

type CheckFn = fn(&VerifyConfig) -> Result<String, String>;

struct Check {
    group: Group,
    name: &'static str,
    property: &'static str,
    run: CheckFn,
}

const CHECKS: &[Check] = &[
    Check {
        group: Group::Geometry,
        name: "cap-monotone",
        property: "cap_fraction(d, pi) = 1 and cap_fraction is strictly increasing in theta",
        run: cap_monotone,
    },
    Check {
        group: Group::Geometry,
        name: "cap-closed-forms",
        property: "cap_fraction(3, t) = (1 - cos t)/2 and cap_fraction(2, t) = t/pi to 1e-10",
        run: cap_closed_forms,
    },
    Check {
        group: Group::Geometry,
        name: "packing-witnesses",
        property: "greedy packings and spherical codes meet their separation; packings number at most ((R+r)/r)^d",
        run: packing_witnesses,
    },
    Check {
        group: Group::Geometry,
        name: "covering-witness",
        property: "covering centres leave no uncovered point among 1e5 random probes",
        run: covering_witness,
    },
    Check {
        group: Group::Geometry,
        name: "far-apart-witness",
        property: "far-apart witnesses have norms <= gamma and pairwise distances > 1",
        run: far_apart_witness,
    },
    Check {
        group: Group::Graph,
        name: "float-matches-exact",
        property: "float adjacency with the configured tolerance equals exact rational adjacency on lattice instances",
        run: float_matches_exact,
    },
    Check {
        group: Group::Graph,
        name: "rigid-motion",
        property: "adjacency is unchanged by random rotations and translations away from boundary pairs",
        run: rigid_motion,
    },
    Check {
        group: Group::Graph,
        name: "clique-volume",
        property: "omega <= floor((2 r2/r1 + 1)^d) when r1 > 0",
        run: clique_volume,
    },
    Check {
        group: Group::Graph,
        name: "chromatic-sandwich",
        property: "chi >= omega and chi >= n / alpha",
        run: chromatic_sandwich,
    },
    Check {
        group: Group::Graph,
        name: "oracle-equivalence",
        property: "exact omega, chi and alpha equal exhaustive enumeration on 9-vertex graphs",
        run: oracle_equivalence,
    },
    Check {
        group: Group::Sweep,
        name: "proper-with-tokens",
        property: "sweep colouring is proper and satisfies every token invariant",
        run: proper_with_tokens,
    },
    Check {
        group: Group::Sweep,
        name: "token-packing",
        property: "at most 7^d colours appear within r1 of any vertex",
        run: token_packing,
    },
    Check {
        group: Group::Sweep,
        name: "bound-chain",
        property: "max colour <= nu(2 + r1/r2, d) * 7^d * omega",
        run: bound_chain,
    },
    Check {
        group: Group::Sweep,
        name: "unit-disc",
        property: "on unit-disc graphs in the plane the sweep uses at most 3 omega - 2 colours",
        run: unit_disc,
    },
    Check {
        group: Group::Generators,
        name: "cycle-ratio",
        property: "line cycle instances have omega = 2, chi = 3 and no triangle below x = 2",
        run: cycle_ratio,
    },
    Check {
        group: Group::Generators,
        name: "lattice-exact",
        property: "lattice instances use exact arithmetic and have no boundary-ambiguous pair",
        run: lattice_exact,
    },
    Check {
        group: Group::Generators,
        name: "boundary-margin",
        property: "generated float instances keep every pair 10 tolerances away from the radii (sphere diameters excepted)",
        run: boundary_margin,
    },
    Check {
        group: Group::Generators,
        name: "net-coverage",
        property: "every random probe on the sphere is within eps of a greedy net point",
        run: net_coverage,
    },
    Check {
        group: Group::Bounds,
        name: "analysis-maximum",
        property: "sin(t) exp(kl(2t)) < 0.997 on a 1e-4 grid, maximised at the right endpoint",
        run: analysis_maximum,
    },
    Check {
        group: Group::Bounds,
        name: "kl-decreasing",
        property: "kl_exponent decreases strictly on (0, pi/2]",
        run: kl_decreasing,
    },
    Check {
        group: Group::Bounds,
        name: "ratio-growth",
        property: "ratio_exponent(1.2, delta) > ln 1.003 for every delta <= 1e-4",
        run: ratio_growth,
    },
    Check {
        group: Group::Probe,
        name: "embedding-round-trip",
        property: "feasible embeddings induce exactly the input graph",
        run: embedding_round_trip,
    },
    Check {
        group: Group::Probe,
        name: "restart-determinism",
        property: "equal seeds give equal restart statistics",
        run: restart_determinism,
    },
    Check {
        group: Group::Probe,
        name: "bipartite-floor",
        property: "the bipartite configuration on a line keeps residual >= 0.09 in every restart; the relaxed one is feasible",
        run: bipartite_floor,
    },
    Check {
        group: Group::Probe,
        name: "penalty-gradient",
        property: "penalty gradients match central differences to 1e-6 relative error",
        run: penalty_gradient,
    },
];

pub fn verify_suite(config: &VerifyConfig) -> VerifySummary {
    let checks: Vec<CheckOutcome> = CHECKS
        .iter()
        .filter(|c| config.only.is_none_or(|g| g == c.group))
        .map(|c| {
            let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)(config)))
                .unwrap_or_else(|_| Err("check panicked".into()));
            let (pass, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome {
                group: c.group.name(),
                name: c.name,
                property: c.property,
                pass,
                detail,
            }
        })
        .collect();
    let passed = checks.iter().filter(|c| c.pass).count();
    VerifySummary {
        tool: TOOL,
        version: VERSION,
        command: "verify",
        seed: config.seed,
        mode: format!("float(tolerance={:e}) and exact-integer", config.tolerance),
        only: config.only.map(Group::name),
        passed,
        failed: checks.len() - passed,
        checks,
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn graph_of(inst: &AnnulusInstance) -> Result<AdjacencyGraph, String> {
    build_graph(inst, BuildOptions::default()).map_err(err)
}

fn omega(g: &AdjacencyGraph) -> Result<usize, String> {
    Ok(max_clique(g, Budget::CLIQUE).map_err(err)?.value)
}

/// Seeded random instances with the configured tolerance; `unit_disc`
/// forces `r1 = 0` in the plane.
fn random_instances(
    cfg: &VerifyConfig,
    stream: u64,
    d: usize,
    count: usize,
    unit_disc: bool,
) -> Result<Vec<AnnulusInstance>, String> {
    let mut rng = rng_for_stream(cfg.seed, 1000 + stream);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=40);
            let r1 = if unit_disc {
                0.0
            } else {
                [0.0, 0.25, 0.5, 0.75, 1.0][rng.random_range(0..5)]
            };
            let density = rng.random_range(0.5..3.0);
            let side = (n as f64 / density).powf(1.0 / d as f64);
            gen_uniform_box(d, n, r1, 1.0, side, rng.random())
                .map(|i| i.with_tolerance(cfg.tolerance))
                .map_err(err)
        })
        .collect()
}

fn mixed_instances(cfg: &VerifyConfig, stream: u64) -> Result<Vec<AnnulusInstance>, String> {
    let mut all = Vec::new();
    for d in 1..=3 {
        all.extend(random_instances(cfg, stream + d as u64, d, 30, false)?);
    }
    Ok(all)
}

fn cap_monotone(_: &VerifyConfig) -> Result<String, String> {
    for d in [2, 3, 5, 10, 100, 1000] {
        let full = cap_fraction(d, PI).map_err(err)?;
        if (full - 1.0).abs() > 1e-12 {
            return Err(format!("cap_fraction({d}, pi) = {full}"));
        }
        let mut prev = 0.0;
        for k in 1..=200 {
            let v = cap_fraction(d, PI * k as f64 / 200.0).map_err(err)?;
            // tiny caps in high dimension underflow to 0 together
            if v < prev || (v == prev && v > 0.0 && v < 1.0) {
                return Err(format!("d={d}: not increasing at step {k}"));
            }
            prev = v;
        }
    }
    Ok("6 dimensions, 200-point grids".into())
}

fn cap_closed_forms(cfg: &VerifyConfig) -> Result<String, String> {
    let mut rng = rng_for_stream(cfg.seed, 2000);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let t: f64 = rng.random_range(0.0..PI);
        let e3 = (cap_fraction(3, t).map_err(err)? - (1.0 - t.cos()) / 2.0).abs();
        let e2 = (cap_fraction(2, t).map_err(err)? - t / PI).abs();
        worst = worst.max(e2).max(e3);
    }
    if worst > 1e-10 {
        return Err(format!("worst error {worst:e}"));
    }
    Ok(format!("100 angles, worst error {worst:.1e}"))
}

fn packing_witnesses(cfg: &VerifyConfig) -> Result<String, String> {
    for (big, small, d) in [(3.0, 1.0, 2), (2.5, 0.5, 3), (4.0, 1.0, 4)] {
        let w = greedy_ball_packing(big, small, d, cfg.seed).map_err(err)?;
        w.validate().map_err(err)?;
        let cap = ((big + small) / small).powi(d as i32);
        if w.count() as f64 > cap {
            return Err(format!("{} balls exceed volume bound {cap}", w.count()));
        }
    }
    for (d, angle) in [(2, PI / 3.0), (3, PI / 4.0), (5, 1.0)] {
        greedy_spherical_code(d, angle, cfg.seed)
            .map_err(err)?
            .validate()
            .map_err(err)?;
    }
    Ok("3 packings and 3 spherical codes valid".into())
}

fn covering_witness(_: &VerifyConfig) -> Result<String, String> {
    let mut counts = Vec::new();
    for (t, d) in [(2.0, 2), (3.0, 2), (2.5, 3)] {
        let w = covering_number_witness(t, d, 0.5).map_err(err)?;
        counts.push(w.count());
    }
    Ok(format!("witness sizes {counts:?}, zero misses"))
}

fn far_apart_witness(_: &VerifyConfig) -> Result<String, String> {
    for d in 2..=8 {
        let pts = n_gamma_witness(d, EXPLICIT_RADIUS).map_err(err)?;
        for (i, p) in pts.iter().enumerate() {
            if p.norm() > EXPLICIT_RADIUS + 1e-12 {
                return Err(format!("d={d}: norm {}", p.norm()));
            }
            for q in &pts[i + 1..] {
                let dist = annulus_core::dist(p, q).map_err(err)?;
                if dist <= 1.0 {
                    return Err(format!("d={d}: distance {dist}"));
                }
            }
        }
    }
    Ok("d = 2..8".into())
}

fn float_matches_exact(cfg: &VerifyConfig) -> Result<String, String> {
    let mut compared = 0;
    for (d, x, eps, n) in [
        (1, 1.5, "1/2", 6.0),
        (2, 1.5, "1/2", 3.0),
        (2, 2.0, "1/3", 2.0),
        (3, 1.2, "1/2", 1.5),
    ] {
        let spec = LatticeSpec {
            d,
            x,
            eps: parse_rational(eps).map_err(err)?,
            n,
        };
        let exact = gen_lattice(&spec).map_err(err)?;
        let float = AnnulusInstance::float(d, exact.r1(), exact.r2(), exact.points().to_vec())
            .map_err(err)?
            .with_tolerance(cfg.tolerance);
        if graph_of(&exact)? != graph_of(&float)? {
            return Err(format!(
                "d={d} x={x} eps={eps}: float and exact graphs differ"
            ));
        }
        compared += exact.n();
    }
    Ok(format!("4 lattices, {compared} points"))
}

fn rotate(p: &Point, angle: f64, axes: (usize, usize), shift: &[f64]) -> Point {
    let mut c = p.coords().to_vec();
    if c.len() >= 2 {
        let (a, b) = axes;
        let (x, y) = (c[a], c[b]);
        c[a] = angle.cos() * x - angle.sin() * y;
        c[b] = angle.sin() * x + angle.cos() * y;
    } else {
        c[0] = -c[0];
    }
    Point::new(c.iter().zip(shift).map(|(v, s)| v + s).collect()).expect("finite")
}

fn rigid_motion(cfg: &VerifyConfig) -> Result<String, String> {
    let mut rng = rng_for_stream(cfg.seed, 2001);
    let mut used = 0;
    for inst in mixed_instances(cfg, 10)? {
        if !inst.boundary_pairs(1e-6 + cfg.tolerance).is_empty() {
            continue;
        }
        let d = inst.dim();
        let angle = rng.random_range(0.0..2.0 * PI);
        let axes = (0, d.saturating_sub(1));
        let shift: Vec<f64> = (0..d).map(|_| rng.random_range(-10.0..10.0)).collect();
        let moved = inst
            .points()
            .iter()
            .map(|p| rotate(p, angle, axes, &shift))
            .collect();
        let other = AnnulusInstance::float(d, inst.r1(), inst.r2(), moved)
            .map_err(err)?
            .with_tolerance(cfg.tolerance);
        if graph_of(&inst)? != graph_of(&other)? {
            return Err(format!("graph changed under a rigid motion in d={d}"));
        }
        used += 1;
    }
    Ok(format!("{used} instances"))
}

fn clique_volume(cfg: &VerifyConfig) -> Result<String, String> {
    let mut checked = 0;
    for inst in mixed_instances(cfg, 20)? {
        if inst.r1() == 0.0 {
            continue;
        }
        let w = omega(&graph_of(&inst)?)? as u128;
        let bound = clique_volume_bound(inst.dim(), inst.r1(), inst.r2()).map_err(err)?;
        if w > bound {
            return Err(format!("omega {w} > {bound}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} instances"))
}

fn chromatic_sandwich(cfg: &VerifyConfig) -> Result<String, String> {
    let mut count = 0;
    for inst in mixed_instances(cfg, 30)? {
        let g = graph_of(&inst)?;
        let w = omega(&g)?;
        let c = chromatic_number(&g, Budget::CHROMATIC).map_err(err)?;
        let a = max_independent_set(&g, Budget::CLIQUE).map_err(err)?;
        if c.value < w || c.value * a.value < g.n() || !is_proper(&g, &c.witness).map_err(err)? {
            return Err(format!(
                "chi={} omega={w} alpha={} n={}",
                c.value,
                a.value,
                g.n()
            ));
        }
        count += 1;
    }
    Ok(format!("{count} instances"))
}

/// Exhaustive `(omega, chi, alpha)` over vertex subsets.
fn enumerate(n: usize, adj: &[u32]) -> (usize, usize, usize) {
    let full = 1u32 << n;
    let independent: Vec<bool> = (0..full)
        .map(|s| (0..n).all(|v| s & (1 << v) == 0 || adj[v] & s == 0))
        .collect();
    let clique = |s: u32| (0..n).all(|v| s & (1 << v) == 0 || (adj[v] | 1 << v) & s == s);
    let omega = (0..full)
        .filter(|&s| clique(s))
        .map(u32::count_ones)
        .max()
        .unwrap_or(0);
    let alpha = (0..full)
        .filter(|&s| independent[s as usize])
        .map(u32::count_ones)
        .max()
        .unwrap_or(0);
    let mut chi = vec![usize::MAX; full as usize];
    chi[0] = 0;
    for s in 1..full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut sub = rest;
        loop {
            let part = sub | low;
            if independent[part as usize] {
                chi[s as usize] = chi[s as usize].min(chi[(s ^ part) as usize] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    (omega as usize, chi[(full - 1) as usize], alpha as usize)
}

fn oracle_equivalence(cfg: &VerifyConfig) -> Result<String, String> {
    let mut rng = rng_for_stream(cfg.seed, 2002);
    let n = 9;
    for k in 0..200 {
        let p: f64 = rng.random_range(0.1..0.9);
        let mut g = AdjacencyGraph::empty(n);
        let mut adj = vec![0u32; n];
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < p {
                    g.add_edge(u, v);
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
            }
        }
        let got = (
            omega(&g)?,
            chromatic_number(&g, Budget::CHROMATIC).map_err(err)?.value,
            max_independent_set(&g, Budget::CLIQUE).map_err(err)?.value,
        );
        let want = enumerate(n, &adj);
        if got != want {
            return Err(format!("graph {k}: solvers {got:?}, enumeration {want:?}"));
        }
    }
    Ok("200 graphs, 0 mismatches".into())
}

fn proper_with_tokens(cfg: &VerifyConfig) -> Result<String, String> {
    let all = mixed_instances(cfg, 40)?;
    for inst in &all {
        let g = graph_of(inst)?;
        let col = sweep_color_on(inst, &g);
        if !is_proper(&g, &col.colors).map_err(err)? {
            return Err("improper sweep colouring".into());
        }
        let report = verify_token_invariants(inst, &col);
        if !report.ok {
            return Err(format!("token violations: {:?}", report.violations));
        }
    }
    Ok(format!("{} instances", all.len()))
}

fn token_packing(cfg: &VerifyConfig) -> Result<String, String> {
    let mut worst = 0;
    for inst in mixed_instances(cfg, 40)? {
        let col = sweep_color_on(&inst, &graph_of(&inst)?);
        let cap = 7usize.pow(inst.dim() as u32);
        for v in 0..inst.n() {
            let c = colors_in_ball(&inst, &col, v, inst.r1()).map_err(err)?;
            if c > cap {
                return Err(format!("{c} colours near vertex {v}, cap {cap}"));
            }
            worst = worst.max(c);
        }
    }
    Ok(format!("at most {worst} colours near a vertex"))
}

fn bound_chain(cfg: &VerifyConfig) -> Result<String, String> {
    let mut count = 0;
    for inst in mixed_instances(cfg, 40)? {
        let g = graph_of(&inst)?;
        let k = sweep_color_on(&inst, &g).max_color() as u128;
        let per_omega = sweep_chi_bound(inst.dim(), inst.r1(), inst.r2())
            .map_err(err)?
            .sweep_bound;
        let bound = per_omega * omega(&g)? as u128;
        if k > bound {
            return Err(format!("{k} colours > {bound}"));
        }
        count += 1;
    }
    Ok(format!("{count} instances"))
}

fn unit_disc(cfg: &VerifyConfig) -> Result<String, String> {
    let all = random_instances(cfg, 50, 2, 100, true)?;
    for inst in &all {
        let g = graph_of(inst)?;
        let col = sweep_color_on(inst, &g);
        let w = omega(&g)?;
        if !is_proper(&g, &col.colors).map_err(err)? || col.max_color() > 3 * w - 2 {
            return Err(format!("{} colours with omega {w}", col.max_color()));
        }
    }
    Ok(format!("{} instances", all.len()))
}

fn cycle_ratio(_: &VerifyConfig) -> Result<String, String> {
    let xs: Vec<f64> = (21..=39)
        .map(|k| k as f64 * 0.05)
        .chain([2.0, 3.0])
        .collect();
    for &x in &xs {
        let g = graph_of(&gen_cycle_1d(x).map_err(err)?)?;
        let chi = chromatic_number(&g, Budget::CHROMATIC).map_err(err)?.value;
        let w = omega(&g)?;
        if (w, chi) != (2, 3) || (x < 2.0 && g.has_triangle()) {
            return Err(format!("x={x}: omega={w} chi={chi}"));
        }
    }
    Ok(format!("{} values of x", xs.len()))
}

fn lattice_exact(_: &VerifyConfig) -> Result<String, String> {
    for (d, x, eps, n) in [
        (1, 1.5, "1/2", 6.0),
        (2, 1.1, "1/10", 1.0),
        (3, 2.0, "1/2", 2.0),
    ] {
        let spec = LatticeSpec {
            d,
            x,
            eps: parse_rational(eps).map_err(err)?,
            n,
        };
        let inst = gen_lattice(&spec).map_err(err)?;
        if !inst.is_exact() || !inst.boundary_pairs(1.0).is_empty() {
            return Err(format!("d={d}: lattice is not exact"));
        }
        let strict = BuildOptions {
            strict_boundaries: true,
        };
        build_graph(&inst, strict).map_err(err)?;
    }
    Ok("3 lattices".into())
}

fn boundary_margin(cfg: &VerifyConfig) -> Result<String, String> {
    // (instance, whether r2 is the diameter of the point set's sphere)
    let mut instances = Vec::new();
    for d in 2..=6 {
        instances.push((gen_easy_lemma_instance(d).map_err(err)?, false));
    }
    for d in [2, 3] {
        let spec = SphereNetSpec::greedy(d, 1.5, PI / 8.0, cfg.seed);
        instances.push((gen_sphere_net(&spec).map_err(err)?, true));
    }
    let margin = 10.0 * cfg.tolerance;
    for (inst, diameter) in instances {
        let inst = inst.with_tolerance(cfg.tolerance);
        let hit = inst
            .boundary_pairs(margin)
            .into_iter()
            .find(|&(_, _, _, r)| !(diameter && r == inst.r2()));
        if let Some((u, v, dist, r)) = hit {
            return Err(format!(
                "pair ({u}, {v}) at {dist} within {margin:e} of radius {r}"
            ));
        }
    }
    Ok("easy-lemma d=2..6 and two sphere nets".into())
}

fn net_coverage(cfg: &VerifyConfig) -> Result<String, String> {
    let eps = PI / 8.0;
    for d in [2, 3, 4] {
        let inst = gen_sphere_net(&SphereNetSpec::greedy(d, 1.5, eps, cfg.seed)).map_err(err)?;
        let mut rng = rng_for_stream(cfg.seed, 2003 + d as u64);
        for _ in 0..20_000 {
            let q = unit_sphere(&mut rng, d);
            let covered = inst.points().iter().any(|p| {
                let dot: f64 = p.coords().iter().zip(&q).map(|(a, b)| a * b).sum();
                dot.clamp(-1.0, 1.0).acos() <= eps + 1e-9
            });
            if !covered {
                return Err(format!("d={d}: probe {q:?} uncovered"));
            }
        }
    }
    Ok("d = 2, 3, 4 with 2e4 probes each".into())
}

fn analysis_maximum(_: &VerifyConfig) -> Result<String, String> {
    let (arg, max) = analysis_grid_max(0.01, 1e-4).map_err(err)?;
    if arg != analysis_domain_end() || !(max < 0.997) {
        return Err(format!("maximum {max} at {arg}"));
    }
    Ok(format!("maximum {max:.6} at {arg:.6}"))
}

fn kl_decreasing(_: &VerifyConfig) -> Result<String, String> {
    let mut prev = f64::INFINITY;
    for k in 1..=1000 {
        let v = kl_exponent(PI / 2.0 * k as f64 / 1000.0).map_err(err)?;
        if v >= prev {
            return Err(format!("not decreasing at step {k}"));
        }
        prev = v;
    }
    Ok("1000-point grid".into())
}

fn ratio_growth(_: &VerifyConfig) -> Result<String, String> {
    let target = 1.003f64.ln();
    let mut low = f64::INFINITY;
    for k in 1..=100 {
        let delta = 1e-4 * k as f64 / 100.0;
        let v = ratio_exponent(1.2, delta).map_err(err)?;
        low = low.min(v);
    }
    if low <= target {
        return Err(format!("exponent {low} <= {target}"));
    }
    Ok(format!("smallest exponent {low:.6}"))
}

fn embedding_round_trip(cfg: &VerifyConfig) -> Result<String, String> {
    let cases = [
        (AdjacencyGraph::cycle(5), 1, 1.0, 2.0),
        (AdjacencyGraph::cycle(6), 2, 1.0, 1.5),
        (AdjacencyGraph::complete(3), 2, 0.5, 1.0),
    ];
    let mut feasible = 0;
    for (graph, d, r1, r2) in cases {
        let p = EmbedProblem {
            graph,
            d,
            r1,
            r2,
            margin: 0.1,
            restarts: 8,
            max_iters: 3000,
            seed: cfg.seed,
        };
        let r = embed_search(&p).map_err(err)?;
        if r.residual < FEASIBILITY_TOLERANCE {
            if r.verified != Some(true) {
                return Err(format!(
                    "d={d}: feasible embedding does not reproduce the graph"
                ));
            }
            feasible += 1;
        }
    }
    if feasible == 0 {
        return Err("no feasible embedding found".into());
    }
    Ok(format!("{feasible} of 3 embeddings found and verified"))
}

fn restart_determinism(cfg: &VerifyConfig) -> Result<String, String> {
    let kind = ForbiddenKind::three_points(2, 3);
    let a = forbidden_config_residual(&kind, 0.1, 8, 1000, cfg.seed).map_err(err)?;
    let b = forbidden_config_residual(&kind, 0.1, 8, 1000, cfg.seed).map_err(err)?;
    if a != b {
        return Err("restart statistics differ".into());
    }
    Ok("8 restarts reproduced".into())
}

fn bipartite_floor(cfg: &VerifyConfig) -> Result<String, String> {
    let r = forbidden_config_residual(&ForbiddenKind::bipartite(1), 0.1, 100, 3000, cfg.seed)
        .map_err(err)?;
    let low = r
        .restart_stats
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if low < 0.09 {
        return Err(format!("restart residual {low}"));
    }
    let relaxed = ForbiddenKind::BipartiteSphericity {
        d: 1,
        cross_limit: 2.0,
    };
    let c = forbidden_config_residual(&relaxed, 0.1, 20, 3000, cfg.seed).map_err(err)?;
    if c.residual >= FEASIBILITY_TOLERANCE {
        return Err(format!("relaxed residual {}", c.residual));
    }
    Ok(format!("floor {low:.5} over 100 restarts"))
}

fn gradient_error(model: &PenaltyModel, x: &[f64]) -> f64 {
    let g = model.gradient(x);
    let h = 1e-5;
    let mut worst = 0.0f64;
    for k in 0..x.len() {
        let (mut up, mut down) = (x.to_vec(), x.to_vec());
        up[k] += h;
        down[k] -= h;
        let fd = (model.value(&up) - model.value(&down)) / (2.0 * h);
        worst = worst.max((fd - g[k]).abs() / g[k].abs().max(fd.abs()).max(1.0));
    }
    worst
}

fn penalty_gradient(cfg: &VerifyConfig) -> Result<String, String> {
    let models = [
        forbidden_model(&ForbiddenKind::bipartite(2), 0.1).map_err(err)?,
        forbidden_model(&ForbiddenKind::three_points(3, 4), 0.1).map_err(err)?,
        (embedding_model(&AdjacencyGraph::cycle(7), 2, 1.0, 1.5), 7),
    ];
    let mut rng = rng_for_stream(cfg.seed, 2004);
    let mut worst = 0.0f64;
    let mut checked = 0;
    while checked < 30 {
        let (model, n) = &models[checked % models.len()];
        let x: Vec<f64> = (0..n * model.dim)
            .map(|_| rng.random_range(-1.5..1.5))
            .collect();
        if model.kink_clearance(&x) < 1e-3 {
            continue;
        }
        worst = worst.max(gradient_error(model, &x));
        checked += 1;
    }
    if worst > 1e-6 {
        return Err(format!("relative error {worst:e}"));
    }
    Ok(format!("30 points, worst relative error {worst:.1e}"))
}
