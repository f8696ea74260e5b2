use super::adjacency::AdjacencyGraph;
use super::instance::AnnulusInstance;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Reject float instances with a pair within tolerance of a radius
    /// instead of deciding it silently.
    pub strict_boundaries: bool,
}

/// The annulus graph of an instance: `u ~ v` iff `|p_u - p_v|` lies in the
/// closed interval `[r1, r2]` under the instance's arithmetic mode.
pub fn build_graph(inst: &AnnulusInstance, opts: BuildOptions) -> Result<AdjacencyGraph> {
    let n = inst.n();
    let mut g = AdjacencyGraph::empty(n);
    let margin = inst.tolerance();
    for u in 0..n {
        for v in u + 1..n {
            if opts.strict_boundaries {
                if let Some(radius) = inst.boundary_radius(u, v, margin) {
                    return Err(Error::BoundaryAmbiguity {
                        u,
                        v,
                        distance: inst.distance(u, v),
                        radius,
                    });
                }
            }
            if inst.is_adjacent(u, v) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn line(r1: f64, r2: f64, xs: &[f64]) -> AnnulusInstance {
        AnnulusInstance::float(
            1,
            r1,
            r2,
            xs.iter().map(|&x| Point::from(vec![x])).collect(),
        )
        .unwrap()
    }

    #[test]
    fn pentagon_on_a_line() {
        let inst = line(1.0, 2.0, &[0.0, 2.0, 4.0, 2.99, 1.01]);
        let g = build_graph(&inst, BuildOptions::default()).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(g, AdjacencyGraph::cycle(5));
    }

    #[test]
    fn single_point() {
        let g = build_graph(&line(1.0, 2.0, &[3.0]), BuildOptions::default()).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn unit_disc_example() {
        let pts = [[0.0, 0.0], [0.5, 0.0], [2.0, 0.0]]
            .iter()
            .map(|c| Point::from(c.to_vec()))
            .collect();
        let inst = AnnulusInstance::float(2, 0.0, 1.0, pts).unwrap();
        let g = build_graph(&inst, BuildOptions::default()).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn strict_boundaries_flag() {
        let inst = line(1.0, 2.0, &[0.0, 2.0 + 1e-10, 10.0]);
        let lenient = build_graph(&inst, BuildOptions::default()).unwrap();
        assert!(lenient.has_edge(0, 1));
        let strict = build_graph(
            &inst,
            BuildOptions {
                strict_boundaries: true,
            },
        );
        assert!(matches!(
            strict,
            Err(Error::BoundaryAmbiguity { u: 0, v: 1, .. })
        ));
    }

    #[test]
    fn coincident_points_are_not_boundary_pairs_for_unit_discs() {
        let inst = line(0.0, 1.0, &[0.0, 0.0]);
        let g = build_graph(
            &inst,
            BuildOptions {
                strict_boundaries: true,
            },
        )
        .unwrap();
        assert!(g.has_edge(0, 1));
        // with a positive inner radius they are simply non-adjacent
        let g = build_graph(&line(1.0, 2.0, &[0.0, 0.0]), BuildOptions::default()).unwrap();
        assert!(!g.has_edge(0, 1));
    }
}
