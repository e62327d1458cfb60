//! Exact-versus-oracle sweeps over parameter grids.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factors::{
    factor_gegenbauer_ddx, factor_gegenbauer_dunkl, factor_hermite_ddx, factor_hermite_dunkl, Branch, FactorResult,
};
use crate::oracle::{rayleigh_factor_capped, DEFAULT_MAX_DEGREE};
use crate::orthopoly::{eigenvalue_sq, gegenbauer_poly, hermite_poly, residual_gegenbauer, residual_hermite};
use crate::sweep::{self, Execution};
use crate::weight::{Family, OperatorSpec, WeightSpec};

pub const DEFAULT_LAMBDAS: [f64; 6] = [0.1, 0.4, 0.5, 1.0, 2.0, 4.5];
pub const DEFAULT_MUS: [f64; 6] = [-0.4, 0.0, 0.5, 1.0, 3.0, 4.0];
pub const DEFAULT_TOLERANCE: f64 = 1e-7;

/// One of the four factor theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    HermiteDdx,
    GegenbauerDdx,
    HermiteDunkl,
    GegenbauerDunkl,
}

impl FactorKind {
    pub const ALL: [FactorKind; 4] =
        [FactorKind::HermiteDdx, FactorKind::GegenbauerDdx, FactorKind::HermiteDunkl, FactorKind::GegenbauerDunkl];

    pub fn family(self) -> Family {
        match self {
            FactorKind::HermiteDdx | FactorKind::HermiteDunkl => Family::Hermite,
            FactorKind::GegenbauerDdx | FactorKind::GegenbauerDunkl => Family::Gegenbauer,
        }
    }

    pub fn operator(self) -> OperatorSpec {
        let damped = self.family() == Family::Gegenbauer;
        match self {
            FactorKind::HermiteDdx | FactorKind::GegenbauerDdx => OperatorSpec::classical(damped),
            FactorKind::HermiteDunkl | FactorKind::GegenbauerDunkl => OperatorSpec::dunkl(damped),
        }
    }

    /// The classical-derivative theorems need `λ > 0`.
    pub fn requires_positive_lambda(self) -> bool {
        matches!(self, FactorKind::HermiteDdx | FactorKind::GegenbauerDdx)
    }

    pub fn compute(self, n: usize, lambda: f64, mu: f64) -> Result<FactorResult> {
        match self {
            FactorKind::HermiteDdx => factor_hermite_ddx(n, lambda),
            FactorKind::GegenbauerDdx => factor_gegenbauer_ddx(n, lambda, mu),
            FactorKind::HermiteDunkl => factor_hermite_dunkl(n, lambda),
            FactorKind::GegenbauerDunkl => factor_gegenbauer_dunkl(n, lambda, mu),
        }
    }
}

impl std::fmt::Display for FactorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FactorKind::HermiteDdx => "hermite_ddx",
            FactorKind::GegenbauerDdx => "gegenbauer_ddx",
            FactorKind::HermiteDunkl => "hermite_dunkl",
            FactorKind::GegenbauerDunkl => "gegenbauer_dunkl",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub lambdas: Vec<f64>,
    pub mus: Vec<f64>,
    pub n_min: usize,
    pub n_max: usize,
    pub kinds: Vec<FactorKind>,
    pub tolerance: f64,
    pub max_degree: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            lambdas: DEFAULT_LAMBDAS.to_vec(),
            mus: DEFAULT_MUS.to_vec(),
            n_min: 1,
            n_max: 12,
            kinds: FactorKind::ALL.to_vec(),
            tolerance: DEFAULT_TOLERANCE,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub kind: FactorKind,
    pub lambda: f64,
    pub mu: f64,
    pub n: usize,
}

/// Grid points in canonical order. Hermite points carry `mu = 0` and appear once per `λ`.
pub fn grid_points(config: &VerifyConfig) -> Vec<GridPoint> {
    let mut points = Vec::new();
    for &kind in &config.kinds {
        for &lambda in &config.lambdas {
            if kind.requires_positive_lambda() && !(lambda > 0.0) {
                continue;
            }
            let mus: &[f64] = if kind.family() == Family::Hermite { &[0.0] } else { &config.mus };
            for &mu in mus {
                for n in config.n_min.max(1)..=config.n_max {
                    points.push(GridPoint { kind, lambda, mu, n });
                }
            }
        }
    }
    points
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRecord {
    pub kind: FactorKind,
    pub lambda: f64,
    pub mu: f64,
    pub n: usize,
    pub theorem_value: f64,
    pub oracle_value: f64,
    pub rel_err: f64,
    pub branch: Branch,
    pub condition: f64,
}

pub fn relative_error(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        value.abs()
    } else {
        ((value - reference) / reference).abs()
    }
}

pub fn evaluate_point(point: &GridPoint, max_degree: usize) -> Result<GridRecord> {
    let theorem = point.kind.compute(point.n, point.lambda, point.mu)?;
    let weight = WeightSpec::new(point.kind.family(), point.lambda, point.mu)?;
    let oracle = rayleigh_factor_capped(point.n, &weight, &point.kind.operator(), max_degree)?;
    Ok(GridRecord {
        kind: point.kind,
        lambda: point.lambda,
        mu: point.mu,
        n: point.n,
        theorem_value: theorem.factor,
        oracle_value: oracle.factor,
        rel_err: relative_error(theorem.factor, oracle.factor),
        branch: theorem.branch,
        condition: oracle.condition,
    })
}

/// Evaluates every grid point; records come back in canonical grid order.
pub fn run_grid(config: &VerifyConfig, exec: Execution) -> Result<Vec<GridRecord>> {
    let points = grid_points(config);
    sweep::map(exec, &points, |p| evaluate_point(p, config.max_degree))
        .into_iter()
        .collect()
}

/// Relative margin separating a strict bound from equality up to roundoff.
pub const BRACKET_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketStatus {
    Strict,
    /// `M_n` equals the lower bound up to roundoff (the case `n = 1`).
    LowerAttained,
    Violated,
}

/// `√(2n - 4λ/(1+2λ)) < M_n < √(2n)` for the odd-degree Hermite derivative factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BracketRecord {
    pub n: usize,
    pub lambda: f64,
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub status: BracketStatus,
}

pub fn bracket_check(n: usize, lambda: f64) -> Result<BracketRecord> {
    let nf = n as f64;
    let value = factor_hermite_ddx(n, lambda)?.factor;
    let lower = (2.0 * nf - 4.0 * lambda / (1.0 + 2.0 * lambda)).sqrt();
    let upper = (2.0 * nf).sqrt();
    let status = if value > lower * (1.0 + BRACKET_MARGIN) && value < upper * (1.0 - BRACKET_MARGIN) {
        BracketStatus::Strict
    } else if (value - lower).abs() <= BRACKET_MARGIN * lower && value < upper {
        BracketStatus::LowerAttained
    } else {
        BracketStatus::Violated
    };
    Ok(BracketRecord { n, lambda, lower, value, upper, status })
}

/// Largest `‖𝓛[P_n]‖_∞ / (max(λ_n², 1)·‖P_n‖_∞)` over the grid for both families.
pub fn max_eigen_residual(lambdas: &[f64], mus: &[f64], n_max: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for &l in lambdas {
        for n in 0..=n_max {
            let h = hermite_poly(n, l);
            let ev = eigenvalue_sq(Family::Hermite, n, l, 0.0).max(1.0);
            worst = worst.max(residual_hermite(&h, n, l).max_abs_coeff() / (ev * h.max_abs_coeff()));
            for &m in mus {
                let c = gegenbauer_poly(n, l, m);
                let ev = eigenvalue_sq(Family::Gegenbauer, n, l, m).max(1.0);
                worst = worst.max(residual_gegenbauer(&c, n, l, m).max_abs_coeff() / (ev * c.max_abs_coeff()));
            }
        }
    }
    worst
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub records: Vec<GridRecord>,
    pub max_rel_err: f64,
    pub brackets: Vec<BracketRecord>,
    pub max_eigen_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn verify(config: &VerifyConfig, exec: Execution) -> Result<VerifySummary> {
    let records = run_grid(config, exec)?;
    let max_rel_err = records.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    let odd: Vec<(usize, f64)> = config
        .lambdas
        .iter()
        .filter(|&&l| l > 0.0)
        .flat_map(|&l| (1..=config.n_max).filter(|n| n % 2 == 1).map(move |n| (n, l)))
        .collect();
    let brackets = sweep::map(exec, &odd, |&(n, l)| bracket_check(n, l))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let max_eigen_residual = max_eigen_residual(&config.lambdas, &config.mus, config.n_max);
    let passed = max_rel_err <= config.tolerance && brackets.iter().all(|b| b.status != BracketStatus::Violated) && max_eigen_residual <= 1e-9;
    Ok(VerifySummary { records, max_rel_err, brackets, max_eigen_residual, tolerance: config.tolerance, passed })
}
