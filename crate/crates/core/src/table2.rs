//! Recomputation of the golden table of `ν₂`, `M₃`, `M₄` for the Gegenbauer derivative
//! factor.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factors::{build_pencil_g, factor_gegenbauer_ddx, pencil_largest_positive_root};
use crate::sweep::{self, Execution};

/// Golden values carry four decimals.
pub const TABLE2_TOLERANCE: f64 = 1.5e-4;

/// One golden row; `nu2 = None` is the "no positive root" cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table2Golden {
    pub lambda: f64,
    pub mu: f64,
    pub nu2: Option<f64>,
    pub m3: f64,
    pub m4: f64,
}

pub fn golden_rows() -> Vec<Table2Golden> {
    let row = |lambda, mu, nu2, m3, m4| Table2Golden { lambda, mu, nu2, m3, m4 };
    let s = f64::sqrt;
    vec![
        row(0.4, -0.4, Some(7.7460), 2.7832, 4.0),
        row(0.3, -0.3, Some(7.1730), 2.6782, 4.0),
        row(0.2, -0.2, Some(6.4061), 2.5310, 4.0),
        row(0.1, -0.1, Some(5.2820), 2.2983, 4.0),
        row(4.0, 4.0, Some(28.1733), 6.0, 4.0 * s(5.0)),
        row(3.0, 3.0, Some(19.7266), 2.0 * s(7.0), 8.0),
        row(2.0, 2.0, Some(9.0000), 2.0 * s(5.0), 4.0 * s(3.0)),
        row(1.0, 1.0, None, 2.0 * s(3.0), 4.0 * s(2.0)),
        row(100.0, 99.0, Some(800.9852), 28.3017, 2.0 * s(402.0)),
        row(50.0, 49.0, Some(400.9707), 20.0243, 12.0 * s(7.0)),
        row(10.0, 9.0, Some(80.8660), 8.9926, 2.0 * s(42.0)),
        row(1.0, 0.0, Some(8.0494), 2.8371, 2.0 * s(6.0)),
        row(40.0, 30.0, Some(484.5768), 22.0131, 24.0),
        row(30.0, 20.0, Some(438.3382), 20.9365, 20.9365),
        row(20.0, 10.0, Some(403.0921), 20.0772, 20.0772),
        row(10.0, 0.0, Some(387.1007), 19.6749, 19.6749),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table2Row {
    pub lambda: f64,
    pub mu: f64,
    pub nu2: Option<f64>,
    pub m3: f64,
    pub m4: f64,
    pub golden: Table2Golden,
    /// `None` when exactly one side has no positive root.
    pub nu2_diff: Option<f64>,
    pub m3_diff: f64,
    pub m4_diff: f64,
    pub pass: bool,
}

pub fn compute_row(golden: &Table2Golden) -> Result<Table2Row> {
    let (lambda, mu) = (golden.lambda, golden.mu);
    let nu2 = pencil_largest_positive_root(&build_pencil_g(3, lambda, mu)?)?.root;
    let m3 = factor_gegenbauer_ddx(3, lambda, mu)?.factor;
    let m4 = factor_gegenbauer_ddx(4, lambda, mu)?.factor;
    let nu2_diff = match (nu2, golden.nu2) {
        (Some(a), Some(b)) => Some((a - b).abs()),
        (None, None) => Some(0.0),
        _ => None,
    };
    let m3_diff = (m3 - golden.m3).abs();
    let m4_diff = (m4 - golden.m4).abs();
    let pass = nu2_diff.is_some_and(|d| d <= TABLE2_TOLERANCE) && m3_diff <= TABLE2_TOLERANCE && m4_diff <= TABLE2_TOLERANCE;
    Ok(Table2Row { lambda, mu, nu2, m3, m4, golden: *golden, nu2_diff, m3_diff, m4_diff, pass })
}

pub fn table2(exec: Execution) -> Result<Vec<Table2Row>> {
    sweep::map(exec, &golden_rows(), compute_row).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sixteen_rows() {
        let rows = table2(Execution::Sequential).unwrap();
        assert_eq!(rows.len(), 16);
        assert_eq!(rows, table2(Execution::Parallel).unwrap());
    }

    #[test]
    fn recomputed_values_match_the_oracle() {
        // reference values from an independent quadrature-based Rayleigh maximization
        let rows = table2(Execution::Sequential).unwrap();
        let at = |l: f64, m: f64| rows.iter().find(|r| r.lambda == l && r.mu == m).unwrap();
        assert_relative_eq!(at(4.0, 4.0).nu2.unwrap(), 38.20889721, max_relative = 1e-8);
        assert_relative_eq!(at(4.0, 4.0).m3, 6.18133458177251, max_relative = 1e-9);
        assert_relative_eq!(at(4.0, 4.0).m4, 4.0 * 5f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(at(1.0, 1.0).nu2.unwrap(), 14.7220035, max_relative = 1e-8);
        assert_relative_eq!(at(0.4, -0.4).nu2.unwrap(), 6.35331926, max_relative = 1e-8);
        assert_relative_eq!(at(30.0, 20.0).m3, 14.3314246942738, max_relative = 1e-9);
    }
}
