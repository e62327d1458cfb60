mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bmfactor::inequality::{inequality, random_batch, random_polynomial};
use bmfactor::oracle::{rayleigh_factor_capped, DEFAULT_MAX_DEGREE};
use bmfactor::orthopoly::orthogonal_poly;
use bmfactor::table2::table2;
use bmfactor::verify::{relative_error, verify, FactorKind, VerifyConfig, DEFAULT_LAMBDAS, DEFAULT_MUS};
use bmfactor::{factor, Error, Execution, Family, OperatorSpec, Polynomial, WeightSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use render::{
    json, table_csv, table_plain, BatchOutput, ExtremalOutput, FactorOutput, Format, InequalityOutput, TableRow,
    VerifyOutput,
};

const EXIT_DOMAIN: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

/// Bernstein–Markov factors for generalized Hermite and Gegenbauer weights.
#[derive(Parser, Debug)]
#[command(name = "bmfactor", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "plain", global = true)]
    format: Format,
    /// Significant digits of floating output.
    #[arg(long, default_value_t = 10, global = true, value_parser = clap::value_parser!(u16).range(1..=17))]
    digits: u16,
    /// Run grids on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact factor from the closed forms and pencils.
    Factor {
        #[command(flatten)]
        problem: Problem,
        /// Also run the brute-force oracle and report its relative error.
        #[arg(long)]
        check: bool,
        /// Relative tolerance for --check.
        #[arg(long, default_value_t = 1e-7)]
        tolerance: f64,
    },
    /// Coefficients of an extremal polynomial.
    Extremal {
        #[command(flatten)]
        problem: Problem,
        /// Take the maximizer from the oracle eigensolve instead of the theorem.
        #[arg(long)]
        oracle: bool,
    },
    /// Closed forms and pencils against the oracle over a parameter grid.
    Verify {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambdas: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mus: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Restrict to some of the four factor operations.
        #[arg(long, value_enum, value_delimiter = ',')]
        kind: Option<Vec<KindArg>>,
        #[arg(long, default_value_t = 1e-7)]
        tolerance: f64,
    },
    /// Recompute the G pencil table (ν₂, M₃, M₄) against its golden values.
    Table2,
    /// Term breakdown of the characterization inequality.
    Inequality {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long)]
        n: usize,
        /// Evaluate at the orthogonal polynomial of degree n (the equality case).
        #[arg(long, conflicts_with_all = ["coeffs", "count"])]
        at_extremal: bool,
        /// Polynomial coefficients in ascending powers.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "count")]
        coeffs: Option<Vec<f64>>,
        /// Seed for a random polynomial of degree n (or for the batch).
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Summarize this many random polynomials instead of one.
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct WeightArgs {
    #[arg(long, alias = "family", value_enum)]
    weight: FamilyArg,
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,
    /// Ignored for the Hermite weight.
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    mu: f64,
}

impl WeightArgs {
    fn spec(&self) -> bmfactor::Result<WeightSpec> {
        WeightSpec::new(self.weight.into(), self.lambda, self.mu)
    }
}

#[derive(Args, Debug)]
struct Problem {
    #[command(flatten)]
    weight: WeightArgs,
    #[arg(long = "op", value_enum)]
    op: OpArg,
    #[arg(long)]
    n: usize,
}

impl Problem {
    fn operator(&self) -> OperatorSpec {
        let damped = self.weight.weight == FamilyArg::Gegenbauer;
        match self.op {
            OpArg::Ddx => OperatorSpec::classical(damped),
            OpArg::Dunkl => OperatorSpec::dunkl(damped),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Hermite,
    Gegenbauer,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Hermite => Family::Hermite,
            FamilyArg::Gegenbauer => Family::Gegenbauer,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OpArg {
    Ddx,
    Dunkl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    HermiteDdx,
    GegenbauerDdx,
    HermiteDunkl,
    GegenbauerDunkl,
}

impl From<KindArg> for FactorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::HermiteDdx => FactorKind::HermiteDdx,
            KindArg::GegenbauerDdx => FactorKind::GegenbauerDdx,
            KindArg::HermiteDunkl => FactorKind::HermiteDunkl,
            KindArg::GegenbauerDunkl => FactorKind::GegenbauerDunkl,
        }
    }
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::DegreeOverflow { .. } | Error::ZeroPolynomial => EXIT_DOMAIN,
            Error::Conditioning { .. } | Error::NonPolynomialTerm { .. } => EXIT_NUMERICAL,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Rendered output plus whether a verification step disagreed.
struct Report {
    text: String,
    mismatch: bool,
}

fn max_degree() -> Result<usize, Failure> {
    match std::env::var("BMFACTOR_MAX_N") {
        Ok(v) => v.trim().parse().map_err(|_| Failure {
            code: EXIT_DOMAIN,
            message: format!("BMFACTOR_MAX_N must be a non-negative integer, got {v:?}"),
        }),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), Failure> {
    if n > cap {
        return Err(Error::DegreeOverflow { degree: n, capacity: cap }.into());
    }
    Ok(())
}

fn pick(format: Format, json_text: impl FnOnce() -> String, csv: impl FnOnce() -> String, plain: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => json_text(),
        Format::Csv => csv(),
        Format::Plain => plain(),
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let digits = cli.digits as usize;
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let cap = max_degree()?;
    match &cli.command {
        Command::Factor { problem, check, tolerance } => {
            check_cap(problem.n, cap)?;
            let weight = problem.weight.spec()?;
            let op = problem.operator();
            let r = factor(problem.n, &weight, &op)?;
            let oracle = if *check {
                let o = rayleigh_factor_capped(problem.n, &weight, &op, cap)?;
                Some((o.factor, relative_error(r.factor, o.factor)))
            } else {
                None
            };
            let out = FactorOutput::new(&r, oracle, digits);
            let mismatch = oracle.is_some_and(|(_, e)| e > *tolerance);
            Ok(Report { text: pick(cli.format, || json(&out), || out.csv(), || out.plain()), mismatch })
        }
        Command::Extremal { problem, oracle } => {
            check_cap(problem.n, cap)?;
            let weight = problem.weight.spec()?;
            let op = problem.operator();
            let (source, value, poly) = if *oracle {
                let o = rayleigh_factor_capped(problem.n, &weight, &op, cap)?;
                ("oracle", o.factor, o.extremal)
            } else {
                let r = factor(problem.n, &weight, &op)?;
                ("theorem", r.factor, r.extremal)
            };
            let out = ExtremalOutput {
                n: problem.n,
                lambda: weight.lambda,
                mu: weight.mu,
                weight: weight.family.to_string(),
                operator: op.kind.to_string(),
                source: source.to_string(),
                factor: render::round_sig(value, digits),
                coeffs: poly.coeffs().iter().map(|&c| render::round_sig(c, digits)).collect(),
            };
            Ok(Report { text: pick(cli.format, || json(&out), || out.csv(), || out.plain()), mismatch: false })
        }
        Command::Verify { lambdas, mus, n_min, n_max, kind, tolerance } => {
            check_cap(*n_max, cap)?;
            if n_min > n_max || *n_min == 0 {
                return Err(Error::Domain(format!("need 1 <= n_min <= n_max, got {n_min}..{n_max}")).into());
            }
            let config = VerifyConfig {
                lambdas: lambdas.clone().unwrap_or_else(|| DEFAULT_LAMBDAS.to_vec()),
                mus: mus.clone().unwrap_or_else(|| DEFAULT_MUS.to_vec()),
                n_min: *n_min,
                n_max: *n_max,
                kinds: kind.as_ref().map_or_else(|| FactorKind::ALL.to_vec(), |k| k.iter().map(|&k| k.into()).collect()),
                tolerance: *tolerance,
                max_degree: cap,
            };
            for &l in &config.lambdas {
                WeightSpec::hermite(l)?;
            }
            for &m in &config.mus {
                WeightSpec::gegenbauer(0.0, m)?;
            }
            let summary = verify(&config, exec)?;
            let out = VerifyOutput::new(&summary, digits);
            Ok(Report { text: pick(cli.format, || json(&out), || out.csv(), || out.plain()), mismatch: !out.passed })
        }
        Command::Table2 => {
            let rows: Vec<TableRow> = table2(exec)?.iter().map(|r| TableRow::new(r, digits)).collect();
            let mismatch = rows.iter().any(|r| !r.pass);
            Ok(Report { text: pick(cli.format, || json(&rows), || table_csv(&rows), || table_plain(&rows)), mismatch })
        }
        Command::Inequality { weight, n, at_extremal, coeffs, seed, count } => {
            check_cap(*n, cap)?;
            let spec = weight.spec()?;
            if let Some(count) = count {
                let s = random_batch(&spec, *n, *count, *seed, exec)?;
                let out = BatchOutput {
                    n: *n,
                    lambda: spec.lambda,
                    mu: spec.mu,
                    weight: spec.family.to_string(),
                    seed: *seed,
                    count: s.count,
                    min_relative_gap: render::round_sig(s.min_relative_gap, digits),
                    max_identity_err: render::round_sig(s.max_identity_err, digits),
                };
                return Ok(Report { text: pick(cli.format, || json(&out), || out.csv(), || out.plain()), mismatch: false });
            }
            let p = if *at_extremal {
                orthogonal_poly(&spec, *n)
            } else if let Some(c) = coeffs {
                Polynomial::new(c.clone())
            } else {
                random_polynomial(&mut ChaCha8Rng::seed_from_u64(*seed), *n)
            };
            let r = inequality(&p, *n, &spec)?;
            let out = InequalityOutput::new(*n, &spec, p.coeffs(), &r, digits);
            Ok(Report { text: pick(cli.format, || json(&out), || out.csv(), || out.plain()), mismatch: false })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.text);
            if report.mismatch {
                ExitCode::from(EXIT_MISMATCH)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
