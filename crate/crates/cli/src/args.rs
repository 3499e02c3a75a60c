use clap::{Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(
    name = "clmackey",
    version,
    about = "Exact harmonic analysis on the Clifford groups CL(n)",
    long_about = "Exact harmonic analysis on the Clifford groups CL(n): characters, \
                  Kronecker products, Gelfand pairs (CL(n)xCL(n)xCL(m), diag), conjugation \
                  orbits and spherical characters.\n\n\
                  Elements are written +g{1,3} or -g{} (the identity is +g{}); irreps are \
                  written chi:{1,3}, rho, rho+ or rho-."
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Seed for every randomized sample; printed with the output.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Characters,
    Biinvariant,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// n ≤ 2, a few seconds.
    Smoke,
    /// The acceptance ranges, a few minutes.
    Desk,
    /// Every check up to its guard.
    Deep,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the irreducible characters of CL(n) on class representatives.
    Irreps {
        n: u32,
        /// Also print unitary matrices for the generators γ_1, …, γ_n.
        #[arg(long)]
        matrices: bool,
    },
    /// Multiply two elements of CL(n).
    Multiply {
        n: u32,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// List the conjugacy classes of CL(n).
    Classes { n: u32 },
    /// Decompose the Kronecker product σ⊗τ.
    Tensor { n: u32, a: String, b: String },
    /// Decompose Res σ, or Res(σ⊗τ) when two irreps are given.
    Restrict {
        n: u32,
        #[arg(num_args = 1..=2, required = true)]
        irreps: Vec<String>,
        /// Degree of the subgroup CL(m); defaults to n-1.
        #[arg(long)]
        subgroup: Option<u32>,
    },
    /// Decide whether (CL(n)xCL(n)xCL(m), diag) is a Gelfand pair.
    Gelfand {
        n: u32,
        /// Degree m of the subgroup, n or n-1; defaults to n.
        #[arg(long)]
        subgroup: Option<u32>,
        #[arg(long, value_enum, default_value_t = Method::Characters)]
        method: Method,
    },
    /// Conjugation orbits on CL(n)xCL(n).
    Orbits {
        n: u32,
        /// A single pair, e.g. "+g{1},+g{2}".
        #[arg(long, allow_hyphen_values = true)]
        pair: Option<String>,
    },
    /// Evaluate a spherical character of (CL(n)^3, diag).
    Spherical {
        n: u32,
        /// Irrep triple, e.g. "chi:{1},rho+,rho-".
        #[arg(long)]
        triple: String,
        /// Evaluation point, e.g. "+g{1},+g{1},-g{}".
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Run the reproduction checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Smoke)]
        level: Level,
        /// Run a single criterion (1-9).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=9))]
        criterion: Option<u8>,
    },
}
