use std::fs;
use std::path::Path;

use annulus_core::bounds::{
    analysis_domain_end, analysis_function, analysis_grid_max, ASYMPTOTIC_NOTE,
};
use annulus_core::probe::{embed_search, forbidden_config_residual, EmbedProblem, ForbiddenKind};
use annulus_core::rational::parse_rational;
use annulus_core::{
    bound_report, build_graph, chromatic_number, clique_volume_bound, gen_cycle_1d,
    gen_easy_lemma_instance, gen_lattice, gen_sphere_net, gen_uniform_box, is_proper, kl_exponent,
    max_clique, max_independent_set, ratio_exponent, sweep_chi_bound, sweep_color_on,
    verify_token_invariants, AdjacencyGraph, AnnulusInstance, Budget, BuildOptions, LatticeSpec,
    SphereNetSpec, SweepColoring, TokenReport,
};
use serde::Serialize;
use serde_json::Value;

use crate::args::{
    BoundsCmd, Cli, ColorCmd, Command, ExactQuantity, ForbiddenArg, Format, GenCmd, GlobalOpts,
    NetKind, ProbeCmd,
};
use crate::report::{emit, to_csv, to_json, Report};
use crate::{verify, CliError, EXIT_FAILURE, EXIT_OK};

const FLOAT_MODE: &str = "float";

pub fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    if let Some(t) = g.tolerance {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!(
                "--tolerance {t} must be finite and >= 0"
            )));
        }
    }
    if g.format == Format::Csv && !matches!(cli.command, Command::Bounds(_)) {
        return Err(CliError::Usage(
            "--format csv is only available for `bounds`".into(),
        ));
    }
    match &cli.command {
        Command::Gen(cmd) => generate(g, cmd),
        Command::Color(ColorCmd::Sweep { input }) => color_sweep(g, input),
        Command::Exact { quantity, input } => exact(g, *quantity, input),
        Command::Bounds(cmd) => bounds(g, cmd),
        Command::Probe(cmd) => probe(g, cmd),
        Command::Verify { only } => {
            let config = verify::VerifyConfig {
                seed: g.seed,
                tolerance: g
                    .tolerance
                    .unwrap_or(annulus_core::graph::DEFAULT_TOLERANCE),
                only: *only,
            };
            let summary = verify::verify_suite(&config);
            emit(&to_json(&summary)?, g.output.as_deref())?;
            Ok(if summary.failed == 0 {
                EXIT_OK
            } else {
                EXIT_FAILURE
            })
        }
    }
}

fn build_options(g: &GlobalOpts) -> BuildOptions {
    BuildOptions {
        strict_boundaries: g.strict_boundaries,
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed JSON in {}: {e}", path.display())))
}

fn apply_tolerance(g: &GlobalOpts, inst: AnnulusInstance) -> AnnulusInstance {
    match g.tolerance {
        Some(t) if !inst.is_exact() => inst.with_tolerance(t),
        _ => inst,
    }
}

fn load_instance(g: &GlobalOpts, path: &Path) -> Result<AnnulusInstance, CliError> {
    let inst: AnnulusInstance = serde_json::from_value(read_json(path)?)
        .map_err(|e| CliError::Usage(format!("malformed instance {}: {e}", path.display())))?;
    Ok(apply_tolerance(g, inst))
}

/// A graph from graph JSON (`{n, edges}`) or from an instance; the second
/// value is the instance's arithmetic mode.
fn load_graph(g: &GlobalOpts, path: &Path) -> Result<(AdjacencyGraph, String), CliError> {
    let value = read_json(path)?;
    if value.get("edges").is_some() {
        let graph = serde_json::from_value(value)
            .map_err(|e| CliError::Usage(format!("malformed graph {}: {e}", path.display())))?;
        return Ok((graph, "graph".into()));
    }
    let inst: AnnulusInstance = serde_json::from_value(value)
        .map_err(|e| CliError::Usage(format!("malformed instance {}: {e}", path.display())))?;
    let inst = apply_tolerance(g, inst);
    Ok((build_graph(&inst, build_options(g))?, inst.mode().label()))
}

fn budget(g: &GlobalOpts, base: Budget) -> Budget {
    Budget {
        max_nodes: g.budget,
        ..base
    }
}

fn generate(g: &GlobalOpts, cmd: &GenCmd) -> Result<i32, CliError> {
    let inst = match cmd {
        GenCmd::Lattice { d, x, eps, n } => gen_lattice(&LatticeSpec {
            d: *d,
            x: *x,
            eps: parse_rational(eps)?,
            n: *n,
        })?,
        GenCmd::Cycle1d { x } => gen_cycle_1d(*x)?,
        GenCmd::Sphere {
            d,
            x,
            method,
            eps,
            lambda,
            probes,
        } => {
            let mut spec = match method {
                NetKind::Greedy => SphereNetSpec::greedy(*d, *x, *eps, g.seed),
                NetKind::Poisson => SphereNetSpec::poisson(*d, *x, *lambda, g.seed),
            };
            spec.probes = *probes;
            gen_sphere_net(&spec)?
        }
        GenCmd::EasyLemma { d } => gen_easy_lemma_instance(*d)?,
        GenCmd::Uniform { d, n, r1, r2, side } => gen_uniform_box(*d, *n, *r1, *r2, *side, g.seed)?,
    };
    let inst = apply_tolerance(g, inst);
    if g.strict_boundaries {
        build_graph(&inst, build_options(g))?;
    }
    emit(&to_json(&inst)?, g.output.as_deref())?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SweepResult {
    n: usize,
    colors_used: usize,
    proper: bool,
    token_invariants: TokenReport,
    coloring: SweepColoring,
}

fn color_sweep(g: &GlobalOpts, input: &Path) -> Result<i32, CliError> {
    let inst = load_instance(g, input)?;
    let graph = build_graph(&inst, build_options(g))?;
    let coloring = sweep_color_on(&inst, &graph);
    let proper = is_proper(&graph, &coloring.colors)?;
    let token_invariants = verify_token_invariants(&inst, &coloring);
    let ok = proper && token_invariants.ok;
    let result = SweepResult {
        n: inst.n(),
        colors_used: coloring.max_color(),
        proper,
        token_invariants,
        coloring,
    };
    let report = Report::new(
        "color sweep",
        g.seed,
        inst.mode().label(),
        "sweep-hyperplane colouring: batches of uncoloured vertices within r1/2 of a token get the smallest free colour",
        result,
    );
    emit(&report.to_json()?, g.output.as_deref())?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}

#[derive(Serialize)]
struct ExactResult {
    n: usize,
    edges: usize,
    value: usize,
    witness: Vec<usize>,
}

fn exact(g: &GlobalOpts, quantity: ExactQuantity, input: &Path) -> Result<i32, CliError> {
    let (graph, mode) = load_graph(g, input)?;
    let (command, description, value, witness) = match quantity {
        ExactQuantity::Omega => {
            let r = max_clique(&graph, budget(g, Budget::CLIQUE))?;
            (
                "exact omega",
                "clique number omega(G), branch and bound with colouring bound",
                r.value,
                r.witness,
            )
        }
        ExactQuantity::Chi => {
            let r = chromatic_number(&graph, budget(g, Budget::CHROMATIC))?;
            (
                "exact chi",
                "chromatic number chi(G), iterative deepening DSATUR; witness lists colours",
                r.value,
                r.witness,
            )
        }
        ExactQuantity::Alpha => {
            let r = max_independent_set(&graph, budget(g, Budget::CLIQUE))?;
            (
                "exact alpha",
                "independence number alpha(G), clique number of the complement",
                r.value,
                r.witness,
            )
        }
    };
    let result = ExactResult {
        n: graph.n(),
        edges: graph.edge_count(),
        value,
        witness,
    };
    let report = Report::new(command, g.seed, mode, description, result);
    emit(&report.to_json()?, g.output.as_deref())?;
    Ok(EXIT_OK)
}

fn grid(from: f64, to: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if steps == 0 || !(from.is_finite() && to.is_finite() && from <= to) {
        return Err(CliError::Usage(format!(
            "bad grid [{from}, {to}] with {steps} steps"
        )));
    }
    Ok((0..=steps)
        .map(|i| from + (to - from) * i as f64 / steps as f64)
        .collect())
}

fn bounds(g: &GlobalOpts, cmd: &BoundsCmd) -> Result<i32, CliError> {
    let out = g.output.as_deref();
    let seed = g.seed;
    let mode = || FLOAT_MODE.to_string();
    let csv = g.format == Format::Csv;
    let text = match cmd {
        BoundsCmd::Sweep { d, r1, r2 } => {
            no_csv(csv, "sweep")?;
            let q = "sweep bound nu(T,d) * 7^d with T = 2 + r1/r2; chi <= bound * omega";
            Report::new(
                "bounds sweep",
                seed,
                mode(),
                q,
                sweep_chi_bound(*d, *r1, *r2)?,
            )
            .to_json()?
        }
        BoundsCmd::Ratio {
            x,
            delta,
            to,
            steps,
        } => {
            let q = "ratio exponent -ln sin(asin(1/x) + delta) - kl(2 asin(1/x)), asymptotic";
            if csv {
                let mut rows = Vec::new();
                for xv in grid(*x, *to, *steps)? {
                    rows.push(vec![xv, ratio_exponent(xv, *delta)?]);
                }
                to_csv("bounds ratio", seed, q, &["x", "ratio_exponent"], &rows)
            } else {
                #[derive(Serialize)]
                struct R {
                    x: f64,
                    delta: f64,
                    exponent: f64,
                    growth_per_dimension: f64,
                    note: &'static str,
                }
                let e = ratio_exponent(*x, *delta)?;
                let r = R {
                    x: *x,
                    delta: *delta,
                    exponent: e,
                    growth_per_dimension: e.exp(),
                    note: ASYMPTOTIC_NOTE,
                };
                Report::new("bounds ratio", seed, mode(), q, r).to_json()?
            }
        }
        BoundsCmd::Kl { phi, from, steps } => {
            let q = "spherical-code exponent A ln A - B ln B, A,B = (1 +- sin phi)/(2 sin phi), asymptotic";
            if csv {
                let mut rows = Vec::new();
                for p in grid(*from, *phi, *steps)? {
                    rows.push(vec![p, kl_exponent(p)?]);
                }
                to_csv("bounds kl", seed, q, &["phi", "kl_exponent"], &rows)
            } else {
                #[derive(Serialize)]
                struct R {
                    phi: f64,
                    kl_exponent: f64,
                    note: &'static str,
                }
                let r = R {
                    phi: *phi,
                    kl_exponent: kl_exponent(*phi)?,
                    note: ASYMPTOTIC_NOTE,
                };
                Report::new("bounds kl", seed, mode(), q, r).to_json()?
            }
        }
        BoundsCmd::Analysis { lo, step } => {
            let q = "grid maximum of sin(t) exp(kl(2t)) on [lo, asin(1/1.2)]";
            if csv {
                let end = analysis_domain_end();
                let count = ((end - lo) / step).floor() as usize;
                let mut rows = Vec::new();
                for t in (0..=count)
                    .map(|i| lo + step * i as f64)
                    .filter(|&t| t < end)
                {
                    rows.push(vec![t, analysis_function(t)?]);
                }
                rows.push(vec![end, analysis_function(end)?]);
                to_csv(
                    "bounds analysis",
                    seed,
                    q,
                    &["theta", "analysis_function"],
                    &rows,
                )
            } else {
                #[derive(Serialize)]
                struct R {
                    lo: f64,
                    hi: f64,
                    step: f64,
                    argmax: f64,
                    max: f64,
                }
                let (argmax, max) = analysis_grid_max(*lo, *step)?;
                let r = R {
                    lo: *lo,
                    hi: analysis_domain_end(),
                    step: *step,
                    argmax,
                    max,
                };
                Report::new("bounds analysis", seed, mode(), q, r).to_json()?
            }
        }
        BoundsCmd::CliqueVolume { d, r1, r2 } => {
            no_csv(csv, "clique-volume")?;
            #[derive(Serialize)]
            struct R {
                d: usize,
                r1: f64,
                r2: f64,
                bound: u128,
            }
            let r = R {
                d: *d,
                r1: *r1,
                r2: *r2,
                bound: clique_volume_bound(*d, *r1, *r2)?,
            };
            let q = "clique volume bound floor((2 r2/r1 + 1)^d)";
            Report::new("bounds clique-volume", seed, mode(), q, r).to_json()?
        }
        BoundsCmd::Report { d, r1, r2, delta } => {
            no_csv(csv, "report")?;
            let q = "all bound quantities for (d, r1, r2)";
            Report::new(
                "bounds report",
                seed,
                mode(),
                q,
                bound_report(*d, *r1, *r2, *delta)?,
            )
            .to_json()?
        }
    };
    emit(&text, out)?;
    Ok(EXIT_OK)
}

fn no_csv(csv: bool, what: &str) -> Result<(), CliError> {
    if csv {
        Err(CliError::Usage(format!("`bounds {what}` has no CSV grid")))
    } else {
        Ok(())
    }
}

fn probe(g: &GlobalOpts, cmd: &ProbeCmd) -> Result<i32, CliError> {
    match cmd {
        ProbeCmd::Embed {
            input,
            d,
            r1,
            r2,
            restarts,
            iters,
        } => {
            let (graph, _) = load_graph(g, input)?;
            let problem = EmbedProblem {
                graph,
                d: *d,
                r1: *r1,
                r2: *r2,
                margin: annulus_core::probe::DEFAULT_MARGIN,
                restarts: *restarts,
                max_iters: *iters,
                seed: g.seed,
            };
            let result = embed_search(&problem)?;
            let failed = result.verified == Some(false);
            let q = "largest constraint violation of the best annulus embedding found (multi-start squared-hinge descent)";
            emit(
                &Report::new("probe embed", g.seed, FLOAT_MODE.into(), q, result).to_json()?,
                g.output.as_deref(),
            )?;
            Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
        }
        ProbeCmd::Forbidden {
            kind,
            d,
            count,
            gamma,
            cross_limit,
            margin,
            restarts,
            iters,
        } => {
            let kind = match kind {
                ForbiddenArg::Bipartite => ForbiddenKind::BipartiteSphericity {
                    d: *d,
                    cross_limit: *cross_limit,
                },
                ForbiddenArg::ThreePoints => ForbiddenKind::ThreePoints {
                    d: *d,
                    count: *count,
                    gamma: *gamma,
                },
            };
            #[derive(Serialize)]
            struct R {
                kind: ForbiddenKind,
                margin: f64,
                restarts: usize,
                max_iters: usize,
                #[serde(flatten)]
                result: annulus_core::EmbedResult,
            }
            let result = forbidden_config_residual(&kind, *margin, *restarts, *iters, g.seed)?;
            let r = R {
                kind,
                margin: *margin,
                restarts: *restarts,
                max_iters: *iters,
                result,
            };
            let q =
                "smallest violation found for a point configuration with separations >= 1 + margin";
            emit(
                &Report::new("probe forbidden", g.seed, FLOAT_MODE.into(), q, r).to_json()?,
                g.output.as_deref(),
            )?;
            Ok(EXIT_OK)
        }
    }
}
