//! Output records and the three renderings (json, csv, plain).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use bmfactor::inequality::InequalityReport;
use bmfactor::table2::Table2Row;
use bmfactor::verify::{BracketRecord, GridRecord, VerifySummary};
use bmfactor::FactorResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

pub const GRID_HEADER: &str = "lambda,mu,n,theorem_value,oracle_value,rel_err,branch";

/// Rounds to `digits` significant digits; the result prints back to the same `f64`.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.max(1) - 1, x).parse().unwrap_or(x)
}

fn round_all(xs: &[f64], digits: usize) -> Vec<f64> {
    xs.iter().map(|&x| round_sig(x, digits)).collect()
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| num(v).to_string())
}

/// Shortest round-trip text; scientific outside `[1e-4, 1e16)`.
pub struct Num(f64);

fn num(x: f64) -> Num {
    Num(x)
}

impl std::fmt::Display for Num {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a = self.0.abs();
        if a != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
            write!(f, "{:e}", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorOutput {
    pub n: usize,
    pub lambda: f64,
    pub mu: f64,
    pub weight: String,
    pub operator: String,
    pub factor: f64,
    pub factor_sq: f64,
    pub branch: String,
    pub extremal_coeffs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_rel_err: Option<f64>,
}

impl FactorOutput {
    pub fn new(r: &FactorResult, oracle: Option<(f64, f64)>, digits: usize) -> Self {
        FactorOutput {
            n: r.n,
            lambda: r.weight.lambda,
            mu: r.weight.mu,
            weight: r.weight.family.to_string(),
            operator: r.operator.kind.to_string(),
            factor: round_sig(r.factor, digits),
            factor_sq: round_sig(r.factor_sq, digits),
            branch: r.branch.to_string(),
            extremal_coeffs: round_all(r.extremal.coeffs(), digits),
            oracle_factor: oracle.map(|(f, _)| round_sig(f, digits)),
            oracle_rel_err: oracle.map(|(_, e)| round_sig(e, digits)),
        }
    }

    pub fn csv(&self) -> String {
        format!(
            "{GRID_HEADER}\n{},{},{},{},{},{},{}\n",
            num(self.lambda),
            num(self.mu),
            self.n,
            num(self.factor),
            opt(self.oracle_factor),
            opt(self.oracle_rel_err),
            self.branch
        )
    }

    pub fn plain(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "weight      {} (lambda={}, mu={})", self.weight, num(self.lambda), num(self.mu));
        let _ = writeln!(s, "operator    {}", self.operator);
        let _ = writeln!(s, "n           {}", self.n);
        let _ = writeln!(s, "factor      {}", num(self.factor));
        let _ = writeln!(s, "factor_sq   {}", num(self.factor_sq));
        let _ = writeln!(s, "branch      {}", self.branch);
        let _ = writeln!(s, "extremal    {}", join(&self.extremal_coeffs));
        if let (Some(f), Some(e)) = (self.oracle_factor, self.oracle_rel_err) {
            let _ = writeln!(s, "oracle      {} (rel err {})", num(f), num(e));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalOutput {
    pub n: usize,
    pub lambda: f64,
    pub mu: f64,
    pub weight: String,
    pub operator: String,
    /// "theorem" or "oracle".
    pub source: String,
    pub factor: f64,
    /// Ascending powers, unit `L2(W)` norm.
    pub coeffs: Vec<f64>,
}

impl ExtremalOutput {
    pub fn csv(&self) -> String {
        let mut s = String::from("power,coefficient\n");
        for (k, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(s, "{k},{}", num(*c));
        }
        s
    }

    pub fn plain(&self) -> String {
        format!(
            "{} extremal, {} {} n={} lambda={} mu={}: factor {}\ncoeffs {}\n",
            self.source,
            self.weight,
            self.operator,
            self.n,
            num(self.lambda),
            num(self.mu),
            num(self.factor),
            join(&self.coeffs)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub kind: String,
    pub lambda: f64,
    pub mu: f64,
    pub n: usize,
    pub theorem_value: f64,
    pub oracle_value: f64,
    pub rel_err: f64,
    pub branch: String,
}

impl GridRow {
    fn new(r: &GridRecord, digits: usize) -> Self {
        GridRow {
            kind: r.kind.to_string(),
            lambda: r.lambda,
            mu: r.mu,
            n: r.n,
            theorem_value: round_sig(r.theorem_value, digits),
            oracle_value: round_sig(r.oracle_value, digits),
            rel_err: round_sig(r.rel_err, digits),
            branch: r.branch.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketRow {
    pub n: usize,
    pub lambda: f64,
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub status: String,
}

impl BracketRow {
    fn new(b: &BracketRecord, digits: usize) -> Self {
        let status = serde_json::to_value(b.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        BracketRow {
            n: b.n,
            lambda: b.lambda,
            lower: round_sig(b.lower, digits),
            value: round_sig(b.value, digits),
            upper: round_sig(b.upper, digits),
            status,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub passed: bool,
    pub tolerance: f64,
    pub max_rel_err: f64,
    pub max_eigen_residual: f64,
    pub records: Vec<GridRow>,
    pub brackets: Vec<BracketRow>,
}

impl VerifyOutput {
    pub fn new(s: &VerifySummary, digits: usize) -> Self {
        let mut records: Vec<GridRow> = s.records.iter().map(|r| GridRow::new(r, digits)).collect();
        records.sort_by(|a, b| {
            (a.kind.as_str(), a.lambda, a.mu, a.n)
                .partial_cmp(&(b.kind.as_str(), b.lambda, b.mu, b.n))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        VerifyOutput {
            passed: s.passed,
            tolerance: s.tolerance,
            max_rel_err: round_sig(s.max_rel_err, digits),
            max_eigen_residual: round_sig(s.max_eigen_residual, digits),
            records,
            brackets: s.brackets.iter().map(|b| BracketRow::new(b, digits)).collect(),
        }
    }

    pub fn csv(&self) -> String {
        let mut s = format!("{GRID_HEADER}\n");
        for r in &self.records {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                num(r.lambda), num(r.mu), r.n, num(r.theorem_value), num(r.oracle_value), num(r.rel_err), r.branch
            );
        }
        s
    }

    pub fn plain(&self) -> String {
        let mut s = String::new();
        let worst = self.records.iter().max_by(|a, b| a.rel_err.total_cmp(&b.rel_err));
        let _ = writeln!(s, "grid points        {}", self.records.len());
        match worst {
            Some(w) => {
                let _ = writeln!(
                    s,
                    "max rel err        {} ({} lambda={} mu={} n={})",
                    num(self.max_rel_err), w.kind, num(w.lambda), num(w.mu), w.n
                );
            }
            None => {
                let _ = writeln!(s, "max rel err        {}", num(self.max_rel_err));
            }
        }
        let _ = writeln!(s, "tolerance          {}", num(self.tolerance));
        let _ = writeln!(s, "eigen residual     {}", num(self.max_eigen_residual));
        for b in self.brackets.iter().filter(|b| b.status != "strict") {
            let _ = writeln!(s, "bracket n={} lambda={}: {} (M={}, lower={})", b.n, num(b.lambda), b.status, num(b.value), num(b.lower));
        }
        let _ = writeln!(s, "{}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub lambda: f64,
    pub mu: f64,
    pub nu2: Option<f64>,
    pub nu2_golden: Option<f64>,
    pub m3: f64,
    pub m3_golden: f64,
    pub m4: f64,
    pub m4_golden: f64,
    pub max_abs_diff: f64,
    pub pass: bool,
}

impl TableRow {
    pub fn new(r: &Table2Row, digits: usize) -> Self {
        let nu_diff = match (r.nu2, r.golden.nu2) {
            (Some(a), Some(b)) => (a - b).abs(),
            (None, None) => 0.0,
            _ => f64::INFINITY,
        };
        let max_abs_diff = nu_diff.max((r.m3 - r.golden.m3).abs()).max((r.m4 - r.golden.m4).abs());
        TableRow {
            lambda: r.lambda,
            mu: r.mu,
            nu2: r.nu2.map(|v| round_sig(v, digits)),
            nu2_golden: r.golden.nu2,
            m3: round_sig(r.m3, digits),
            m3_golden: r.golden.m3,
            m4: round_sig(r.m4, digits),
            m4_golden: r.golden.m4,
            max_abs_diff: round_sig(max_abs_diff, digits),
            pass: r.pass,
        }
    }
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut s = String::from("lambda,mu,nu2,nu2_golden,m3,m3_golden,m4,m4_golden,max_abs_diff,pass\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            num(r.lambda),
            num(r.mu),
            opt(r.nu2),
            opt(r.nu2_golden),
            num(r.m3),
            num(r.m3_golden),
            num(r.m4),
            num(r.m4_golden),
            num(r.max_abs_diff),
            r.pass
        );
    }
    s
}

pub fn table_plain(rows: &[TableRow]) -> String {
    let cell = |x: Option<f64>| x.map_or_else(|| "x".to_string(), |v| format!("{v:.4}"));
    let mut s = format!(
        "{:>6} {:>6} | {:>10} {:>10} | {:>8} {:>8} | {:>8} {:>8} | {}\n",
        "lambda", "mu", "nu2", "golden", "M3", "golden", "M4", "golden", "ok"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:>6} {:>6} | {:>10} {:>10} | {:>8.4} {:>8.4} | {:>8.4} {:>8.4} | {}",
            r.lambda,
            r.mu,
            cell(r.nu2),
            cell(r.nu2_golden),
            r.m3,
            r.m3_golden,
            r.m4,
            r.m4_golden,
            if r.pass { "yes" } else { "NO" }
        );
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityOutput {
    pub n: usize,
    pub lambda: f64,
    pub mu: f64,
    pub weight: String,
    pub coeffs: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub residual_sq: f64,
    pub equality: bool,
    pub eigenvalue_sq: f64,
    pub b: f64,
    pub dunkl_sq: f64,
    pub derivative_sq: f64,
    pub reflected: f64,
    pub norm_sq: f64,
    pub laplacian_sq: f64,
}

impl InequalityOutput {
    pub fn new(
        n: usize,
        weight: &bmfactor::WeightSpec,
        coeffs: &[f64],
        r: &InequalityReport,
        digits: usize,
    ) -> Self {
        let d = |x: f64| round_sig(x, digits);
        InequalityOutput {
            n,
            lambda: weight.lambda,
            mu: weight.mu,
            weight: weight.family.to_string(),
            coeffs: round_all(coeffs, digits),
            lhs: d(r.lhs),
            rhs: d(r.rhs),
            gap: d(r.gap),
            residual_sq: d(r.residual_sq),
            equality: r.equality,
            eigenvalue_sq: d(r.terms.eigenvalue_sq),
            b: d(r.terms.b),
            dunkl_sq: d(r.terms.dunkl_sq),
            derivative_sq: d(r.terms.derivative_sq),
            reflected: d(r.terms.reflected),
            norm_sq: d(r.terms.norm_sq),
            laplacian_sq: d(r.terms.laplacian_sq),
        }
    }

    pub fn csv(&self) -> String {
        format!(
            "lambda,mu,n,lhs,rhs,gap,residual_sq,equality\n{},{},{},{},{},{},{},{}\n",
            num(self.lambda), num(self.mu), self.n, num(self.lhs), num(self.rhs), num(self.gap), num(self.residual_sq), self.equality
        )
    }

    pub fn plain(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} lambda={} mu={} n={}", self.weight, num(self.lambda), num(self.mu), self.n);
        let _ = writeln!(s, "p            {}", join(&self.coeffs));
        let _ = writeln!(s, "lambda_n^2   {}", num(self.eigenvalue_sq));
        let _ = writeln!(s, "b            {}", num(self.b));
        let _ = writeln!(s, "|sqrtA Dp|^2 {}", num(self.dunkl_sq));
        let _ = writeln!(s, "|sqrtA p'|^2 {}", num(self.derivative_sq));
        let _ = writeln!(s, "<Ap',p'(-)>  {}", num(self.reflected));
        let _ = writeln!(s, "|p|^2        {}", num(self.norm_sq));
        let _ = writeln!(s, "|A D^2p|^2   {}", num(self.laplacian_sq));
        let _ = writeln!(s, "lhs          {}", num(self.lhs));
        let _ = writeln!(s, "rhs          {}", num(self.rhs));
        let _ = writeln!(s, "gap          {}", num(self.gap));
        let _ = writeln!(s, "|L_n p|^2    {}", num(self.residual_sq));
        let _ = writeln!(s, "equality     {}", self.equality);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchOutput {
    pub n: usize,
    pub lambda: f64,
    pub mu: f64,
    pub weight: String,
    pub seed: u64,
    pub count: usize,
    pub min_relative_gap: f64,
    pub max_identity_err: f64,
}

impl BatchOutput {
    pub fn csv(&self) -> String {
        format!(
            "lambda,mu,n,seed,count,min_relative_gap,max_identity_err\n{},{},{},{},{},{},{}\n",
            num(self.lambda), num(self.mu), self.n, self.seed, self.count, num(self.min_relative_gap), num(self.max_identity_err)
        )
    }

    pub fn plain(&self) -> String {
        format!(
            "{} lambda={} mu={} n={}: {} random polynomials (seed {}), min gap/scale {}, max |gap - |L_n p|^2| rel {}\n",
            self.weight,
            num(self.lambda),
            num(self.mu),
            self.n,
            self.count,
            self.seed,
            num(self.min_relative_gap),
            num(self.max_identity_err)
        )
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|&x| num(x).to_string()).collect::<Vec<_>>().join(" ")
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}
