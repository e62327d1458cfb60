//! Log-gamma, Pochhammer symbols and the closed-form moments of the two weights.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::{Family, WeightSpec};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x > 0 (Lanczos, g = 7, reflection below 1/2).
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma_unchecked(x))
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x < 0.5 {
        // Γ(x)Γ(1-x) = π / sin(πx)
        return (PI / (PI * x).sin()).ln() - ln_gamma_unchecked(1.0 - x);
    }
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + sum.ln()
}

/// Rising factorial `a (a+1) ... (a+m-1)`; one for `m = 0`.
pub fn pochhammer(a: f64, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, i| acc * (a + i as f64))
}

/// `d_{2s} = ∫_ℝ x^{2s} |x|^{2λ} e^{-x²} dx = Γ(s + λ + 1/2)`.
pub fn hermite_moment(s: usize, lambda: f64) -> f64 {
    ln_gamma_unchecked(s as f64 + lambda + 0.5).exp()
}

/// `c_{2s} = ∫_{-1}^{1} x^{2s} |x|^{2λ} (1-x²)^{μ-1/2} dx = B(s + λ + 1/2, μ + 1/2)`.
pub fn gegenbauer_moment(s: usize, lambda: f64, mu: f64) -> f64 {
    let a = s as f64 + lambda + 0.5;
    let b = mu + 0.5;
    (ln_gamma_unchecked(a) + ln_gamma_unchecked(b) - ln_gamma_unchecked(a + b)).exp()
}

/// Moments `∫ x^m W_λ(x) dx` for `m = 0..=max_order`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    pub weight: WeightSpec,
    pub values: Vec<f64>,
    /// When set, every entry has been divided by the zeroth moment.
    pub normalized: bool,
}

impl MomentTable {
    pub fn new(weight: WeightSpec, max_order: usize) -> Self {
        let values = (0..=max_order)
            .map(|m| {
                if m % 2 == 1 {
                    return 0.0;
                }
                let s = m / 2;
                match weight.family {
                    Family::Hermite => hermite_moment(s, weight.lambda),
                    Family::Gegenbauer => gegenbauer_moment(s, weight.lambda, weight.mu),
                }
            })
            .collect();
        MomentTable { weight, values, normalized: false }
    }

    /// Same table scaled so that `values[0] == 1`.
    pub fn normalized(weight: WeightSpec, max_order: usize) -> Self {
        let mut table = Self::new(weight, max_order);
        let m0 = table.values[0];
        table.values.iter_mut().for_each(|v| *v /= m0);
        table.normalized = true;
        table
    }

    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    /// Moment of order `m`; errors past capacity.
    pub fn get(&self, m: usize) -> Result<f64> {
        self.values
            .get(m)
            .copied()
            .ok_or(Error::DegreeOverflow { degree: m, capacity: self.max_order() })
    }

    /// Moment of a possibly negative order. Odd orders vanish (even weight), which
    /// includes the principal value `∫ x^{-1} W = 0`.
    pub fn get_signed(&self, m: isize) -> Result<f64> {
        if m.rem_euclid(2) == 1 {
            return Ok(0.0);
        }
        if m < 0 {
            return Err(Error::domain(format!("moment of order {m} diverges")));
        }
        self.get(m as usize)
    }
}

/// Convenience wrapper matching the table constructor.
pub fn moment_table(weight: WeightSpec, max_order: usize) -> MomentTable {
    MomentTable::new(weight, max_order)
}
