use exppoly::exact::{bell, bernoulli, stirling1_unsigned_row, stirling2_row};
use exppoly::exp_poly::phi;
use exppoly::gamma_integrals::{moment_pair_closed, moment_pair_quad, moment_single_closed, moment_single_quad};
use exppoly::mellin::series_transform;
use exppoly::RationalPolynomial;

use crate::args::{Cli, Command, Suite, TableKind};
use crate::parse::{parse_rational, ParseRationalError};
use crate::report::{fmt_complex, fmt_float, fmt_list, Report, Row, Tolerance};
use crate::verify;

pub const PHI_MAX_COEFFS: usize = 100;
pub const PHI_MAX_EVAL: usize = 60;
pub const TABLE_MAX: usize = 200;
pub const BERNOULLI_TABLE_MAX: usize = 100;

const TRANSFORM_TOL: Tolerance = Tolerance::new(1e-10, 1e-12);
const MOMENT_TOL: Tolerance = Tolerance::new(1e-8, 1e-10);

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] exppoly::Error),
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
    #[error("{0}")]
    Range(String),
}

pub type CliResult<T> = Result<T, CliError>;

fn range(ok: bool, msg: impl FnOnce() -> String) -> CliResult<()> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Range(msg()))
    }
}

pub fn run(cli: &Cli) -> CliResult<Report> {
    if let Some(t) = cli.tolerance {
        range(t.is_finite() && t > 0.0, || format!("--tolerance must be positive, got {t}"))?;
    }
    match &cli.command {
        Command::Phi { n, at } => cmd_phi(*n, at.as_deref()),
        Command::Table { kind, n_max } => cmd_table(*kind, *n_max),
        Command::Verify { suite, max, max_sum, n } => {
            let bounds = verify::Bounds::new(*max, *max_sum, *n)?;
            cmd_verify(*suite, &bounds, cli)
        }
        Command::Transform { f, x } => cmd_transform(f, *x, cli.tolerance),
        Command::GammaMoment { n, a, b, lambda, mu } => cmd_gamma_moment(*n, *a, *b, *lambda, *mu, cli.tolerance),
    }
}

pub fn cmd_phi(n: usize, at: Option<&str>) -> CliResult<Report> {
    range(n <= PHI_MAX_COEFFS, || format!("phi supports n <= {PHI_MAX_COEFFS}"))?;
    let mut report = Report::new("phi").param("n", n);
    let p = phi(n);
    report.push(Row::value(format!("phi_{n}"), p.to_string()));
    report.push(Row::value(format!("phi_{n} coefficients"), fmt_list(p.coeffs())));
    if let Some(x) = at {
        range(n <= PHI_MAX_EVAL, || format!("phi evaluation supports n <= {PHI_MAX_EVAL}"))?;
        let x = parse_rational(x)?;
        report = report.param("at", &x);
        report.push(Row::value(format!("phi_{n}({x})"), p.eval(&x).to_string()));
    }
    Ok(report)
}

pub fn cmd_table(kind: TableKind, n_max: usize) -> CliResult<Report> {
    let (name, cap) = match kind {
        TableKind::Stirling2 => ("stirling2", TABLE_MAX),
        TableKind::Stirling1 => ("stirling1", TABLE_MAX),
        TableKind::Bell => ("bell", TABLE_MAX),
        TableKind::Bernoulli => ("bernoulli", BERNOULLI_TABLE_MAX),
    };
    range(n_max <= cap, || format!("table {name} supports n_max <= {cap}"))?;
    let mut report = Report::new("table").param("kind", name).param("n_max", n_max);
    for n in 0..=n_max {
        let row = match kind {
            TableKind::Stirling2 => Row::value(format!("S2({n},k)"), fmt_list(&stirling2_row(n))),
            TableKind::Stirling1 => Row::value(format!("S1({n},k)"), fmt_list(&stirling1_unsigned_row(n))),
            TableKind::Bell => Row::value(format!("b({n})"), bell(n).to_string()),
            TableKind::Bernoulli => Row::value(format!("B({n})"), bernoulli(n).to_string()),
        };
        report.push(row);
    }
    Ok(report)
}

pub fn cmd_verify(suite: Suite, bounds: &verify::Bounds, cli: &Cli) -> CliResult<Report> {
    let name = match suite {
        Suite::Poly => "poly",
        Suite::Mellin => "mellin",
        Suite::SemiOrth => "semi-orth",
        Suite::Gamma => "gamma",
        Suite::All => "all",
    };
    let mut report = Report::new("verify").param("suite", name).param("seed", cli.seed);
    if let Some(t) = cli.tolerance {
        report = report.param("tolerance", fmt_float(t));
    }
    let ctx = verify::Context {
        seed: cli.seed,
        tolerance: cli.tolerance,
    };
    let run_poly = matches!(suite, Suite::Poly | Suite::All);
    let run_mellin = matches!(suite, Suite::Mellin | Suite::All);
    let run_semi = matches!(suite, Suite::SemiOrth | Suite::All);
    let run_gamma = matches!(suite, Suite::Gamma | Suite::All);
    if run_poly || run_mellin {
        report = report.param("max", bounds.max);
    }
    if run_semi {
        report = report.param("max_sum", bounds.max_sum);
    }
    if run_gamma {
        report = report.param("n", bounds.n);
    }
    if run_poly {
        report.extend(verify::poly(bounds.max, &ctx));
    }
    if run_mellin {
        report.extend(verify::mellin(bounds.max, &ctx));
    }
    if run_semi {
        report.extend(verify::semi_orth(bounds.max_sum, &ctx));
    }
    if run_gamma {
        report.extend(verify::gamma(bounds.n, &ctx));
    }
    Ok(report)
}

pub fn cmd_transform(f: &[String], x: f64, tolerance: Option<f64>) -> CliResult<Report> {
    let coeffs = f.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>()?;
    let poly = RationalPolynomial::new(coeffs.clone());
    let (lhs, rhs) = series_transform(&poly, x)?;
    let mut report = Report::new("transform")
        .param("f", fmt_list(&coeffs))
        .param("x", fmt_float(x));
    report.push(Row::value("sum_k f(k) x^k / k!", fmt_float(lhs)));
    report.push(Row::value("e^x sum_n a_n phi_n(x)", fmt_float(rhs)));
    report.push(Row::float(
        "series transformation",
        "(3.13)",
        lhs,
        rhs,
        TRANSFORM_TOL.or_override(tolerance),
    ));
    Ok(report)
}

pub fn cmd_gamma_moment(
    n: usize,
    a: f64,
    b: Option<f64>,
    lambda: Option<f64>,
    mu: Option<f64>,
    tolerance: Option<f64>,
) -> CliResult<Report> {
    let tol = MOMENT_TOL.or_override(tolerance);
    let mut report = Report::new("gamma-moment").param("n", n).param("a", fmt_float(a));
    let (closed, quad, eq) = match b {
        Some(b) => {
            range(lambda.is_none(), || "--lambda applies to the one-Gamma integral; use --mu with --b".into())?;
            let mu = mu.unwrap_or(0.0);
            report = report.param("b", fmt_float(b)).param("mu", fmt_float(mu));
            (moment_pair_closed(n, a, b, mu)?, moment_pair_quad(n, a, b, mu)?, "(5.1)")
        }
        None => {
            let lambda = lambda.unwrap_or(0.0);
            report = report.param("lambda", fmt_float(lambda));
            (moment_single_closed(n, a, lambda)?, moment_single_quad(n, a, lambda)?, "(5.2)")
        }
    };
    report.push(Row::value("closed form", fmt_complex(closed.float_value)));
    report.push(Row::value("closed form exact part", closed.exact_part.to_string()));
    report.push(Row::value("closed form phase", format!("i^{}", closed.phase)));
    report.push(Row::value("closed form scale", fmt_float(closed.scale)));
    let tol = if closed.exact_part == num_traits::Zero::zero() {
        tol
    } else {
        Tolerance::new(tol.rel, 0.0)
    };
    report.push(Row::complex("quadrature vs closed form", eq, quad.value, closed.float_value, tol));
    report.push(Row::value("quadrature error estimate", fmt_float(quad.abs_error_estimate)));
    report.push(Row::value("quadrature truncation T", fmt_float(quad.truncation_t)));
    report.push(Row::value("quadrature evaluations", quad.evaluations.to_string()));
    Ok(report)
}
