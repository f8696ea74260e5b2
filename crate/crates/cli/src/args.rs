use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "annulus",
    version,
    about = "Construct, colour and analyse annulus graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Seed for every stochastic step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Boundary tolerance of float-mode adjacency (overrides the instance).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Reject pairs within tolerance of a radius instead of deciding them.
    #[arg(long, global = true)]
    pub strict_boundaries: bool,
    /// Write the report here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Branch-and-bound node budget of the exact solvers.
    #[arg(
        long,
        global = true,
        env = "ANNULUS_BUDGET",
        default_value_t = 50_000_000
    )]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance and print its JSON.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Colour an instance.
    #[command(subcommand)]
    Color(ColorCmd),
    /// Exact clique, chromatic or independence number.
    Exact {
        #[arg(value_enum)]
        quantity: ExactQuantity,
        /// Instance or graph JSON.
        input: PathBuf,
    },
    /// Evaluate bound formulas.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Numeric embedding probes.
    #[command(subcommand)]
    Probe(ProbeCmd),
    /// Run the property battery.
    Verify {
        /// Restrict to one group of checks.
        #[arg(long, value_enum)]
        only: Option<Group>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCmd {
    /// Lattice `eps Z^d` in `B(0, n)` with radii `(1, x)`, exact arithmetic.
    Lattice {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        x: f64,
        /// Rational `p/q` or decimal.
        #[arg(long)]
        eps: String,
        #[arg(long)]
        n: f64,
    },
    /// Points on a line whose graph is a cycle with clique number 2.
    Cycle1d {
        #[arg(long)]
        x: f64,
    },
    /// Points on the unit sphere with radii `(2/x, 2)`.
    Sphere {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        x: f64,
        #[arg(long, value_enum, default_value_t = NetKind::Greedy)]
        method: NetKind,
        /// Net radius (greedy).
        #[arg(long, default_value_t = std::f64::consts::PI / 16.0)]
        eps: f64,
        /// Intensity per unit sphere measure (poisson).
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 100_000)]
        probes: usize,
    },
    /// Far-apart points inside a ball of radius 0.99, radii `(1, 2)`.
    EasyLemma {
        #[arg(long)]
        d: usize,
    },
    /// Uniform points in a cube.
    Uniform {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r1: f64,
        #[arg(long)]
        r2: f64,
        #[arg(long)]
        side: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NetKind {
    Greedy,
    Poisson,
}

#[derive(Debug, Subcommand)]
pub enum ColorCmd {
    /// Sweep-hyperplane colouring.
    Sweep { input: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactQuantity {
    Omega,
    Chi,
    Alpha,
}

#[derive(Debug, Subcommand)]
pub enum BoundsCmd {
    /// Sweep-colouring bound `nu * 7^d` per unit of clique number.
    Sweep {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r1: f64,
        #[arg(long)]
        r2: f64,
    },
    /// Per-dimension exponent of the sphere-net chromatic ratio.
    Ratio {
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 1e-4)]
        delta: f64,
        /// CSV grid end in `x` (from `--x`).
        #[arg(long, default_value_t = 3.0)]
        to: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// Spherical-code exponent at angle `phi`.
    Kl {
        #[arg(long)]
        phi: f64,
        /// CSV grid start in `phi` (the grid ends at `--phi`).
        #[arg(long, default_value_t = 0.01)]
        from: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// Grid maximum of `sin(t) exp(kl(2t))`.
    Analysis {
        #[arg(long, default_value_t = 0.01)]
        lo: f64,
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
    },
    /// Volume bound on the clique number.
    CliqueVolume {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r1: f64,
        #[arg(long)]
        r2: f64,
    },
    /// Every quantity for one `(d, r1, r2)`.
    Report {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r1: f64,
        #[arg(long)]
        r2: f64,
        #[arg(long, default_value_t = 1e-4)]
        delta: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ProbeCmd {
    /// Search for an annulus embedding of a graph.
    Embed {
        /// Instance or graph JSON.
        input: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r1: f64,
        #[arg(long)]
        r2: f64,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 3000)]
        iters: usize,
    },
    /// Minimise the violation of a configuration that cannot exist.
    Forbidden {
        #[arg(long, value_enum)]
        kind: ForbiddenArg,
        #[arg(long)]
        d: usize,
        /// Number of points in the lens (three-points).
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0.99)]
        gamma: f64,
        /// Upper bound on cross distances (bipartite).
        #[arg(long, default_value_t = 1.0)]
        cross_limit: f64,
        #[arg(long, default_value_t = 0.1)]
        margin: f64,
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        #[arg(long, default_value_t = 3000)]
        iters: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ForbiddenArg {
    Bipartite,
    ThreePoints,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Group {
    Geometry,
    Graph,
    Sweep,
    Generators,
    Bounds,
    Probe,
}

impl Group {
    pub const ALL: [Group; 6] = [
        Group::Geometry,
        Group::Graph,
        Group::Sweep,
        Group::Generators,
        Group::Bounds,
        Group::Probe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Geometry => "geometry",
            Group::Graph => "graph",
            Group::Sweep => "sweep",
            Group::Generators => "generators",
            Group::Bounds => "bounds",
            Group::Probe => "probe",
        }
    }
}
