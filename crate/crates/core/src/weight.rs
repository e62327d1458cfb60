//! Weight and operator descriptors.
//!
//! | family                | interval | weight                      | A(x)   | B'(0)    | C'(0)          |
//! |-----------------------|----------|-----------------------------|--------|----------|----------------|
//! | generalized Hermite   | ℝ        | \|x\|^{2λ} e^{-x²}          | 1      | -2       | -2             |
//! | generalized Gegenbauer| [-1, 1]  | \|x\|^{2λ} (1-x²)^{μ-1/2}   | 1 - x² | -(2μ+1)  | -(2λ+2μ+1)     |

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    #[serde(alias = "generalizedhermite")]
    Hermite,
    #[serde(alias = "generalizedgegenbauer")]
    Gegenbauer,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Hermite => write!(f, "hermite"),
            Family::Gegenbauer => write!(f, "gegenbauer"),
        }
    }
}

/// A weight `W_λ` of one of the two families. `mu` is ignored for Hermite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub family: Family,
    pub lambda: f64,
    pub mu: f64,
}

impl WeightSpec {
    pub fn hermite(lambda: f64) -> Result<Self> {
        Self::new(Family::Hermite, lambda, 0.0)
    }

    pub fn gegenbauer(lambda: f64, mu: f64) -> Result<Self> {
        Self::new(Family::Gegenbauer, lambda, mu)
    }

    pub fn new(family: Family, lambda: f64, mu: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::domain(format!("lambda must be >= 0, got {lambda}")));
        }
        let mu = match family {
            Family::Hermite => 0.0,
            Family::Gegenbauer => {
                if !(mu > -0.5) || !mu.is_finite() {
                    return Err(Error::domain(format!("mu must be > -1/2, got {mu}")));
                }
                mu
            }
        };
        Ok(WeightSpec { family, lambda, mu })
    }

    pub fn coefficients(&self) -> TableCoefficients {
        TableCoefficients::for_weight(self)
    }

    /// Coefficient of x² in A(x): 0 for Hermite (A ≡ 1), 1 for Gegenbauer (A = 1 - x²).
    pub fn a_quad(&self) -> f64 {
        match self.family {
            Family::Hermite => 0.0,
            Family::Gegenbauer => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    #[serde(alias = "ddx", alias = "classicalderivative")]
    Classical,
    Dunkl,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::Classical => write!(f, "ddx"),
            OperatorKind::Dunkl => write!(f, "dunkl"),
        }
    }
}

/// The operator `D`, optionally damped by `√A(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    pub damped: bool,
}

impl OperatorSpec {
    pub const fn classical(damped: bool) -> Self {
        OperatorSpec { kind: OperatorKind::Classical, damped }
    }

    pub const fn dunkl(damped: bool) -> Self {
        OperatorSpec { kind: OperatorKind::Dunkl, damped }
    }

    /// Multiplier of `x^{k-1}` when the operator is applied to `x^k`.
    pub fn monomial_action(&self, k: usize, lambda: f64) -> f64 {
        match self.kind {
            OperatorKind::Classical => k as f64,
            OperatorKind::Dunkl => crate::dunkl::dunkl_multiplier(k, lambda),
        }
    }
}

/// Scalars describing `A`, `B`, `C` for a weight family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableCoefficients {
    /// Constant part of A(x).
    pub a_const: f64,
    /// Coefficient of x² in A(x).
    pub a_quad: f64,
    /// B(x) = B'(0)·x.
    pub b_prime0: f64,
    /// C(x) = C'(0)·x.
    pub c_prime0: f64,
}

impl TableCoefficients {
    pub fn for_weight(w: &WeightSpec) -> Self {
        match w.family {
            Family::Hermite => TableCoefficients {
                a_const: 1.0,
                a_quad: 0.0,
                b_prime0: -2.0,
                c_prime0: -2.0,
            },
            Family::Gegenbauer => TableCoefficients {
                a_const: 1.0,
                a_quad: -1.0,
                b_prime0: -(2.0 * w.mu + 1.0),
                c_prime0: -(2.0 * w.lambda + 2.0 * w.mu + 1.0),
            },
        }
    }

    pub fn b(&self, x: f64) -> f64 {
        self.b_prime0 * x
    }

    pub fn a(&self, x: f64) -> f64 {
        self.a_const + self.a_quad * x * x
    }
}
