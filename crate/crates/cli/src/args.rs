use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "exppoly", version, about = "Exponential polynomials, Stirling/Bernoulli tables and Gamma integrals")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, env = "EXPPOLY_FORMAT", default_value = "text")]
    pub format: Format,

    /// Override the default tolerance of every floating point check
    #[arg(long, global = true, value_parser = parse_tolerance)]
    pub tolerance: Option<f64>,

    /// Seed for randomized batteries
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of phi_n and optionally its value at a rational point
    Phi {
        n: usize,
        /// Evaluation point: integer, fraction (p/q) or decimal
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Tables of Stirling, Bernoulli or Bell numbers
    Table { kind: TableKind, n_max: usize },
    /// Run an identity battery
    Verify {
        suite: Suite,
        /// Largest index (poly, mellin)
        #[arg(long)]
        max: Option<usize>,
        /// Largest n + m (semi-orth)
        #[arg(long)]
        max_sum: Option<usize>,
        /// Largest moment order (gamma)
        #[arg(long)]
        n: Option<usize>,
    },
    /// Both sides of sum_k f(k) x^k / k! = e^x sum_n a_n phi_n(x)
    Transform {
        /// Coefficients a_0, a_1, ... of f, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        f: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
    },
    /// Gamma Fourier moment by closed form and quadrature
    GammaMoment {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: f64,
        /// Second parameter; selects the two-Gamma integral
        #[arg(long)]
        b: Option<f64>,
        /// Frequency of the one-Gamma integral
        #[arg(long, allow_hyphen_values = true, conflicts_with = "mu")]
        lambda: Option<f64>,
        /// Frequency of the two-Gamma integral
        #[arg(long, allow_hyphen_values = true, requires = "b")]
        mu: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Stirling2,
    Stirling1,
    Bernoulli,
    Bell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Poly,
    Mellin,
    SemiOrth,
    Gamma,
    All,
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
        Ok(_) => Err("tolerance must be finite and non-negative".into()),
        Err(e) => Err(e.to_string()),
    }
}
