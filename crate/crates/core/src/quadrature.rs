//! Gauss rules for the two even weights, built from the closed-form three-term
//! recurrence of their monic orthogonal polynomials.
//!
//! Integrating polynomial products at the nodes avoids the cancellation that a
//! moment expansion `Σ p_i q_j m_{i+j}` suffers once the coefficients alternate.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::weight::{Family, WeightSpec};

/// `β_k` in `x π_k = π_{k+1} + β_k π_{k-1}` for the monic orthogonal polynomials of `W`, `k ≥ 1`.
pub fn recurrence_beta(weight: &WeightSpec, k: usize) -> f64 {
    assert!(k >= 1, "beta_0 is not defined");
    let m = (k / 2) as f64;
    let l = weight.lambda;
    match weight.family {
        Family::Hermite => {
            if k % 2 == 0 {
                m
            } else {
                m + l + 0.5
            }
        }
        Family::Gegenbauer => {
            let mu = weight.mu;
            if k % 2 == 0 {
                m * (m + mu - 0.5) / ((2.0 * m + l + mu - 1.0) * (2.0 * m + l + mu))
            } else if k == 1 {
                // the common factor λ+μ cancels; it may vanish
                (l + 0.5) / (l + mu + 1.0)
            } else {
                (m + l + 0.5) * (m + l + mu) / ((2.0 * m + l + mu) * (2.0 * m + l + mu + 1.0))
            }
        }
    }
}

/// Values and derivatives of the orthonormal polynomials `p_0..=p_degree` at `x`,
/// normalized against `W / ∫W`.
pub fn orthonormal_at(weight: &WeightSpec, degree: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0; degree + 1];
    let mut d = vec![0.0; degree + 1];
    v[0] = 1.0;
    if degree == 0 {
        return (v, d);
    }
    let mut prev_root = 0.0;
    for k in 0..degree {
        let root = recurrence_beta(weight, k + 1).sqrt();
        let (vm, dm) = if k == 0 { (0.0, 0.0) } else { (v[k - 1], d[k - 1]) };
        v[k + 1] = (x * v[k] - prev_root * vm) / root;
        d[k + 1] = (v[k] + x * d[k] - prev_root * dm) / root;
        prev_root = root;
    }
    (v, d)
}

/// Monomial coefficients of the orthonormal polynomials `p_0..=p_degree`.
pub fn orthonormal_polys(weight: &WeightSpec, degree: usize) -> Vec<Polynomial> {
    let x = Polynomial::monomial(1, 1.0);
    let mut out = vec![Polynomial::constant(1.0)];
    let mut prev_root = 0.0;
    for k in 0..degree {
        let root = recurrence_beta(weight, k + 1).sqrt();
        let lower = if k == 0 { Polynomial::zero() } else { out[k - 1].scale(prev_root) };
        let next = (&(&x * &out[k]) - &lower).scale(1.0 / root);
        out.push(next);
        prev_root = root;
    }
    out
}

/// Symmetric Gauss rule with an even number of nodes, exact for polynomials of degree
/// below `2 * nodes.len()`; weights sum to the zeroth moment of `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub weight: WeightSpec,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Smallest even rule exact for degree `exact_degree`.
    pub fn exact_for(weight: &WeightSpec, exact_degree: usize) -> Result<Self> {
        let half = exact_degree / 4 + 1;
        Self::new(weight, 2 * half)
    }

    pub fn new(weight: &WeightSpec, points: usize) -> Result<Self> {
        if points == 0 || points % 2 == 1 {
            return Err(Error::domain(format!("Gauss rule needs a positive even size, got {points}")));
        }
        let jacobi = DMatrix::from_fn(points, points, |i, j| {
            if i.abs_diff(j) == 1 {
                recurrence_beta(weight, i.max(j)).sqrt()
            } else {
                0.0
            }
        });
        let mut eig = SymmetricEigen::new(jacobi).eigenvalues.as_slice().to_vec();
        eig.sort_by(f64::total_cmp);
        let mut positive: Vec<f64> =
            (0..points / 2).map(|i| 0.5 * (eig[points - 1 - i] - eig[i])).collect();
        for x in &mut positive {
            *x = newton_polish(weight, points, *x);
        }
        let mass = zeroth_moment(weight);
        let christoffel = |x: f64| {
            let (v, _) = orthonormal_at(weight, points - 1, x);
            mass / v.iter().map(|p| p * p).sum::<f64>()
        };
        let mut nodes = Vec::with_capacity(points);
        let mut weights = Vec::with_capacity(points);
        for &x in positive.iter().rev() {
            nodes.push(-x);
            weights.push(christoffel(x));
        }
        for &x in &positive {
            nodes.push(x);
            weights.push(christoffel(x));
        }
        if !nodes.iter().chain(&weights).all(|v| v.is_finite()) {
            return Err(Error::Conditioning { condition: f64::INFINITY });
        }
        Ok(GaussRule { weight: *weight, nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// `PV ∫ f(x)/x W` for `f` whose odd part over `x` is integrated exactly; the even
    /// part drops out pairwise.
    pub fn integrate_over_x(&self, f: impl Fn(f64) -> f64) -> f64 {
        let half = self.len() / 2;
        (half..self.len())
            .map(|i| {
                let x = self.nodes[i];
                self.weights[i] * (f(x) - f(-x)) / x
            })
            .sum()
    }
}

fn newton_polish(weight: &WeightSpec, points: usize, mut x: f64) -> f64 {
    for _ in 0..2 {
        let (v, d) = orthonormal_at(weight, points, x);
        let step = v[points] / d[points];
        if !step.is_finite() {
            break;
        }
        x -= step;
    }
    x
}

pub(crate) fn zeroth_moment(weight: &WeightSpec) -> f64 {
    match weight.family {
        Family::Hermite => crate::special::hermite_moment(0, weight.lambda),
        Family::Gegenbauer => crate::special::gegenbauer_moment(0, weight.lambda, weight.mu),
    }
}
