use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Exact finite-window coarse geometry.
#[derive(Debug, Parser)]
#[command(name = "coarsekit", version, about, propagate_version = true)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and inspect windows.
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Separation, asymptotic dimension and ends profiles.
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Search for embedded towers and pair families.
    #[command(subcommand)]
    Detect(DetectCmd),
    /// Bump functions separating two sets.
    #[command(subcommand)]
    Higson(HigsonCmd),
    /// Band operator identities and the finite cluster model.
    #[command(subcommand)]
    Roe(RoeCmd),
    /// Re-check the certificate embedded in a report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WindowArgs {
    /// Space spec file (JSON).
    #[arg(long)]
    pub space: PathBuf,
    /// Overrides the horizon stored in the spec file.
    #[arg(long)]
    pub horizon: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SpaceCmd {
    /// Window summary: size, depth range, basepoint.
    Build {
        #[command(flatten)]
        window: WindowArgs,
        /// Include every point with its coordinates and depth.
        #[arg(long)]
        points: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Metric check on sampled triples and the ball-size profile.
    Info {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest radius of the ball-size profile (default: min(4, horizon)).
        #[arg(long)]
        rmax: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeCmd {
    /// Separation profile s_r and its trend over depth bands.
    Profile {
        #[command(flatten)]
        window: WindowArgs,
        /// Radii, comma separated.
        #[arg(long = "r", value_delimiter = ',', required = true)]
        radii: Vec<u64>,
        /// Number of depth bands.
        #[arg(long, default_value_t = 4)]
        annuli: usize,
        /// Also write `r,point,value` rows here.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Component diameters under r-chains.
    Asdim0 {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        scales: Vec<u64>,
        #[arg(long)]
        margin: Option<u64>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Horizon-touching r-components outside the rho-ball.
    Ends {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long = "r")]
        r: u64,
        #[arg(long)]
        rho: u64,
        #[arg(long)]
        margin: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Two far-apart infinite halves, if the window shows them.
    Split {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long = "r")]
        r: u64,
        #[arg(long)]
        rho: u64,
        #[arg(long)]
        margin: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum DetectCmd {
    /// Disjoint towers of growing height.
    M2 {
        #[command(flatten)]
        window: WindowArgs,
        /// Tower height.
        #[arg(long = "J")]
        levels: u32,
        /// Number of towers.
        #[arg(long = "N")]
        towers: usize,
        #[arg(long, default_value_t = 2)]
        s0: u64,
        #[arg(long, default_value_t = 4)]
        c: u64,
        /// Search node budget.
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Disjoint pairs at distance in (r, B] for every scale r.
    M32 {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        scales: Vec<u64>,
        #[arg(long = "B")]
        bound: u64,
        #[arg(long = "N")]
        count: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum HigsonCmd {
    /// Build h with h = 1 on a subset of A and h = 0 on B.
    Build {
        #[command(flatten)]
        window: WindowArgs,
        /// JSON file `{"a": [[..], ..], "b": [[..], ..]}` of point coordinates.
        #[arg(long)]
        sets: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Pairs at distance <= r whose values differ by more than eps.
    Variation {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        sets: PathBuf,
        /// Second pair of sets; the report then also covers max(h, g).
        #[arg(long)]
        max_with: Option<PathBuf>,
        /// Rational threshold, `p` or `p/q`.
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long = "r")]
        r: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum RoeCmd {
    /// Partial isometry identities on random partial translations.
    Identities {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Largest displacement of the sampled translations.
        #[arg(long, default_value_t = 3)]
        reach: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Commutant, kernel and block checks for a cluster pattern.
    Gns {
        /// JSON file with pattern, translations, diagonals, stabilize.
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Report file produced by another subcommand.
    pub report: PathBuf,
}
