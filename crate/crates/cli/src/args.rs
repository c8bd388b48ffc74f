//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};

use ptrace_core::kostka::Partition;
use ptrace_core::poisson::DEFAULT_BUDGET;
use ptrace_core::singularity::Grading;

use crate::{matrix_arg, weights_arg, Arrangement, CliError, Command, Format, Request, Result};

#[derive(Debug, Parser)]
#[command(name = "ptrace", version, about = "Poisson traces of surface singularities and related families")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV rows `(table, formula, grading, variables, exponents, value)`.
    #[arg(long, global = true)]
    pub csv: bool,
    #[arg(long, global = true, value_enum, default_value = "listed")]
    pub grading: GradingArg,
    /// Run the registered cross-checks and exit with status 4 if any fails.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Memory budget in bytes for a single weight slice.
    #[arg(long, global = true, env = "PTRACE_BUDGET")]
    pub budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GradingArg {
    Listed,
    C2,
    Paper,
}

impl From<GradingArg> for Grading {
    fn from(g: GradingArg) -> Self {
        match g {
            GradingArg::Listed => Grading::Listed,
            GradingArg::C2 => Grading::C2,
            GradingArg::Paper => Grading::Paper,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Invariants of a du Val singularity (A1..An, D4.., E6, E7, E8).
    Duval {
        label: String,
        /// Also compute HP0 by brute force.
        #[arg(long)]
        hp0: bool,
    },
    /// A quasi-homogeneous hypersurface in C^3 with its Jacobian bracket.
    Surface {
        /// Defining polynomial in x1, x2, x3; `-` reads standard input.
        #[arg(long = "f")]
        f: String,
        #[arg(long)]
        weights: String,
        #[arg(long)]
        hp0: bool,
        /// Compute HP0 in weights 0..=W instead of using the stopping rule.
        #[arg(long)]
        wmax: Option<i64>,
    },
    /// A complete intersection surface in C^n given by n-2 equations.
    CiSurface {
        /// Defining polynomial; repeat once per equation.
        #[arg(long = "f", required = true)]
        f: Vec<String>,
        #[arg(long)]
        weights: String,
        #[arg(long)]
        wmax: Option<i64>,
    },
    /// Members of the simple elliptic families E6~, E7~, E8~.
    Elliptic {
        family: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        wmax: Option<i64>,
    },
    /// Generating series over symmetric powers of a du Val surface.
    Sympow {
        label: String,
        #[arg(long, default_value_t = 5)]
        order: usize,
    },
    /// Poisson-de Rham series of the nilpotent cone of sl_n.
    Nilcone { n: u32 },
    /// HP0 of the Slodowy slice to the nilpotent orbit of Jordan type `partition`.
    Slice { partition: String },
    /// Hypertoric cone from hyperplane normals or a torus weight matrix.
    Hypertoric(HypertoricArgs),
    /// Number of i-multipartitions of 0..=n.
    Multipartition {
        n: usize,
        #[arg(long, short = 'i', default_value_t = 1)]
        i: usize,
    },
    /// Cone over a smooth plane curve of degree d.
    ConeCurve { d: u64 },
    /// Run every registered cross-check.
    Verify {
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct HypertoricArgs {
    /// Normals as a matrix, one row per ambient coordinate, e.g. `[[1,1]]`.
    #[arg(long)]
    pub normals: Option<String>,
    /// Torus weight matrix; normals are taken from its kernel.
    #[arg(long)]
    pub weights: Option<String>,
}

impl Cli {
    pub fn into_request(self) -> Result<Request> {
        let g = self.global;
        let command = match self.command {
            Sub::Duval { label, hp0 } => Command::DuVal { label, hp0 },
            Sub::Surface { f, weights, hp0, wmax } => Command::Surface {
                equation: f,
                weights: weights_arg(&weights)?,
                hp0,
                wmax,
            },
            Sub::CiSurface { f, weights, wmax } => Command::CiSurface {
                equations: f,
                weights: weights_arg(&weights)?,
                wmax,
            },
            Sub::Elliptic { family, lambda, wmax } => Command::Elliptic { family, lambda, wmax },
            Sub::Sympow { label, order } => Command::Sympow { label, order },
            Sub::Nilcone { n } => Command::Nilcone { n },
            Sub::Slice { partition } => Command::Slice {
                partition: partition.parse::<Partition>()?,
            },
            Sub::Hypertoric(h) => Command::Hypertoric {
                arrangement: match (h.normals, h.weights) {
                    (Some(n), _) => Arrangement::Normals(matrix_arg(&n)?),
                    (None, Some(w)) => Arrangement::Weights(matrix_arg(&w)?),
                    (None, None) => return Err(CliError::Usage("give --normals or --weights".into())),
                },
            },
            Sub::Multipartition { n, i } => Command::Multipartition { n, i },
            Sub::ConeCurve { d } => Command::ConeCurve { d },
            Sub::Verify { order } => Command::Verify { order },
        };
        Ok(Request {
            command,
            grading: g.grading.into(),
            format: if g.json {
                Format::Json
            } else if g.csv {
                Format::Csv
            } else {
                Format::Text
            },
            verify: g.verify,
            budget: g.budget.unwrap_or(DEFAULT_BUDGET),
        })
    }
}
