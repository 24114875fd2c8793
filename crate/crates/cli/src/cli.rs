use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use spectral_core::heat::BoundaryCondition;

use crate::fixtures::Fixture;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "spectral",
    version,
    about = "Spectral geometry experiments: flat tori, heat traces and planar domains"
)]
pub struct Cli {
    /// Output format. Each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with_all = ["format", "csv"])]
    pub json: bool,
    /// Shorthand for `--format csv`.
    #[arg(long, global = true, conflicts_with = "format")]
    pub csv: bool,
    /// Quadrature tolerance (absolute and relative) and heat-trace tail tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print a built-in fixture as JSON and exit.
    #[arg(long, value_enum)]
    pub emit: Option<Fixture>,
    /// Progress and timing on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Option<Command>,
}

impl Cli {
    pub fn format(&self, default: Format) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            self.format.unwrap_or(default)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bc {
    Dirichlet,
    Neumann,
}

impl From<Bc> for BoundaryCondition {
    fn from(bc: Bc) -> Self {
        match bc {
            Bc::Dirichlet => BoundaryCondition::Dirichlet,
            Bc::Neumann => BoundaryCondition::Neumann,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that E16 and E8+E8 give isospectral, non-isometric 16-tori.
    MilnorVerify {
        /// Also compare the truncated spectra up to this squared dual norm.
        #[arg(long)]
        cutoff: Option<String>,
    },
    /// List the Laplace spectrum of a flat torus up to a squared dual norm.
    TorusSpectrum {
        lattice: PathBuf,
        #[arg(long)]
        cutoff: String,
    },
    /// Decide whether two even forms give isospectral tori.
    Isospec { a: PathBuf, b: PathBuf },
    /// Weyl counting ratio for a box.
    Weyl {
        /// Side lengths, comma separated (integers, p/q or decimals).
        #[arg(long, value_delimiter = ',', required = true)]
        sides: Vec<String>,
        #[arg(long, value_enum, default_value = "dirichlet")]
        bc: Bc,
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<String>,
    },
    /// Corner contributions to the heat trace.
    Corner(CornerArgs),
    /// Heat trace against its small-time expansion.
    HeatTrace(HeatTraceArgs),
    /// Polygon constructions, Hausdorff distance and Euler characteristics.
    Polygeom(PolygeomArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["theta", "ngon"])))]
pub struct CornerArgs {
    /// Opening angles in (pi/2, pi], e.g. `pi,0.8pi,2pi/3`.
    #[arg(long, value_delimiter = ',')]
    pub theta: Vec<String>,
    /// Corner sums of regular N-gons.
    #[arg(long, value_delimiter = ',')]
    pub ngon: Vec<u64>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("domain").required(true).args(["sides", "polygon"])))]
pub struct HeatTraceArgs {
    /// Box side lengths, comma separated.
    #[arg(long = "box", value_delimiter = ',')]
    pub sides: Vec<String>,
    /// Convex polygon file.
    #[arg(long)]
    pub polygon: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "dirichlet")]
    pub bc: Bc,
    #[arg(long, value_delimiter = ',', required = true)]
    pub t: Vec<String>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["staircase", "hausdorff", "euler"])))]
pub struct PolygeomArgs {
    /// Staircase polygon with 2^k sides and step length 1/k.
    #[arg(long)]
    pub staircase: Option<u32>,
    /// Boundary sampling spacing for the staircase Hausdorff distance.
    #[arg(long, requires = "staircase")]
    pub spacing: Option<String>,
    /// Hausdorff distance between the vertex sets of two polygon files.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub hausdorff: Vec<PathBuf>,
    /// Euler characteristic and hole count of a cell complex file.
    #[arg(long)]
    pub euler: Option<PathBuf>,
}
