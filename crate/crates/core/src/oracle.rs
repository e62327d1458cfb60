//! Brute-force Bernstein–Markov factors: the largest generalized eigenvalue of
//! `S a = M² G a` on the full space of polynomials of degree at most `n`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quadrature::{orthonormal_at, orthonormal_polys, zeroth_moment, GaussRule};
use crate::special::{gegenbauer_moment, hermite_moment, MomentTable};
use crate::weight::{Family, OperatorKind, OperatorSpec, WeightSpec};

/// Default degree cap.
pub const DEFAULT_MAX_DEGREE: usize = 14;

/// `G_ij = ∫ x^i x^j W`, `S_ij = ∫ A (D x^i)(D x^j) W`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramPair {
    pub g: DMatrix<f64>,
    pub s: DMatrix<f64>,
}

/// Coefficient of x² in the damping factor actually applied by `op`.
fn damping_quad(weight: &WeightSpec, op: &OperatorSpec) -> f64 {
    if op.damped {
        weight.a_quad()
    } else {
        0.0
    }
}

/// `∫ x^{2s} (1 - a x²) W`. For the damped Gegenbauer weight this is the moment of
/// `W_{λ,μ+1}`, which sidesteps the cancellation in `m_{2s} - m_{2s+2}`.
fn damped_moment(weight: &WeightSpec, s: usize, a_quad: f64) -> f64 {
    match weight.family {
        Family::Gegenbauer if a_quad != 0.0 => gegenbauer_moment(s, weight.lambda, weight.mu + 1.0),
        Family::Gegenbauer => gegenbauer_moment(s, weight.lambda, weight.mu),
        Family::Hermite => hermite_moment(s, weight.lambda),
    }
}

fn assemble(n: usize, weight: &WeightSpec, op: &OperatorSpec, normalize: bool) -> GramPair {
    let a_quad = damping_quad(weight, op);
    let m0 = if normalize { zeroth_moment(weight) } else { 1.0 };
    let table = MomentTable::new(*weight, 2 * n);
    let dim = n + 1;
    let mut g = DMatrix::zeros(dim, dim);
    let mut s = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            if (i + j) % 2 == 1 {
                continue;
            }
            g[(i, j)] = table.values[i + j] / m0;
            if i == 0 || j == 0 {
                continue;
            }
            let gi = op.monomial_action(i, weight.lambda);
            let gj = op.monomial_action(j, weight.lambda);
            s[(i, j)] = gi * gj * damped_moment(weight, (i + j - 2) / 2, a_quad) / m0;
        }
    }
    GramPair { g, s }
}

/// Monomial-basis Gram pair with raw (unnormalized) moments.
pub fn gram_matrices(n: usize, weight: &WeightSpec, op: &OperatorSpec) -> Result<GramPair> {
    if n == 0 {
        return Err(Error::domain("degree must be at least 1"));
    }
    Ok(assemble(n, weight, op, false))
}

/// Outcome of the oracle eigensolve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub factor: f64,
    pub factor_sq: f64,
    /// Maximizer, scaled to unit norm in `L2(W)`.
    pub extremal: Polynomial,
    /// 2-norm condition number of the Gram matrix that was factorized.
    pub condition: f64,
}

fn check_degree(n: usize, max_degree: usize) -> Result<()> {
    if n > max_degree {
        return Err(Error::DegreeOverflow { degree: n, capacity: max_degree });
    }
    if n == 0 {
        return Err(Error::domain("degree must be at least 1"));
    }
    Ok(())
}

fn condition_number(g: &DMatrix<f64>) -> f64 {
    let eigs = SymmetricEigen::new(g.clone()).eigenvalues;
    let (lo, hi) = eigs.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v.abs())));
    if lo > 0.0 {
        hi / lo
    } else {
        f64::INFINITY
    }
}

/// Largest eigenpair of `S a = t G a` by Cholesky reduction.
fn top_eigenpair(g: &DMatrix<f64>, s: &DMatrix<f64>, condition: f64) -> Result<(f64, DVector<f64>)> {
    let chol = g.clone().cholesky().ok_or(Error::Conditioning { condition })?;
    let l = chol.l();
    let l_inv = l.clone().try_inverse().ok_or(Error::Conditioning { condition })?;
    let c = &l_inv * s * l_inv.transpose();
    let c = (&c + c.transpose()) * 0.5;
    let eig = SymmetricEigen::new(c);
    let (top, &t) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty spectrum");
    let y = eig.eigenvectors.column(top).into_owned();
    let a = l.transpose().solve_upper_triangular(&y).ok_or(Error::Conditioning { condition })?;
    Ok((t.max(0.0), a))
}

/// Unit `L2(W)` norm and positive leading coefficient.
fn normalize_extremal(p: Polynomial, weight: &WeightSpec) -> Result<Polynomial> {
    let norm_sq = InnerProduct::new(weight, 2 * p.degree().unwrap_or(0))?.norm_sq(&p, false);
    let sign = p.leading_coeff().signum();
    Ok(p.scale(sign / norm_sq.sqrt()))
}

pub fn rayleigh_factor(n: usize, weight: &WeightSpec, op: &OperatorSpec) -> Result<OracleResult> {
    rayleigh_factor_capped(n, weight, op, DEFAULT_MAX_DEGREE)
}

/// Assembles `G` and `S` in the orthonormal basis of `W` by a Gauss rule exact for every
/// entry, so `G` is the identity up to rounding regardless of `λ`, `μ` and `n`.
pub fn rayleigh_factor_capped(
    n: usize,
    weight: &WeightSpec,
    op: &OperatorSpec,
    max_degree: usize,
) -> Result<OracleResult> {
    check_degree(n, max_degree)?;
    let a_quad = damping_quad(weight, op);
    let rule = GaussRule::exact_for(weight, 2 * n + 2)?;
    let mass = zeroth_moment(weight);
    let dim = n + 1;
    let lambda = weight.lambda;
    let mut g = DMatrix::zeros(dim, dim);
    let mut s = DMatrix::zeros(dim, dim);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let (v, d) = orthonormal_at(weight, n, x);
        let dv: Vec<f64> = (0..dim)
            .map(|k| match op.kind {
                OperatorKind::Dunkl if k % 2 == 1 => d[k] + 2.0 * lambda * v[k] / x,
                _ => d[k],
            })
            .collect();
        let wg = w / mass;
        let ws = wg * (1.0 - a_quad * x * x);
        for i in 0..dim {
            for j in 0..=i {
                g[(i, j)] += wg * v[i] * v[j];
                s[(i, j)] += ws * dv[i] * dv[j];
            }
        }
    }
    for i in 0..dim {
        for j in 0..i {
            g[(j, i)] = g[(i, j)];
            s[(j, i)] = s[(i, j)];
        }
    }
    let condition = condition_number(&g);
    let (t, y) = top_eigenpair(&g, &s, condition)?;
    let basis = orthonormal_polys(weight, n);
    let extremal = basis
        .iter()
        .zip(y.iter())
        .fold(Polynomial::zero(), |acc, (b, &c)| &acc + &b.scale(c));
    Ok(OracleResult { factor: t.sqrt(), factor_sq: t, extremal: normalize_extremal(extremal, weight)?, condition })
}

/// The textbook variant: monomial basis, normalized moments, congruence by
/// `diag(1/√m_{2k})`. Accurate while the scaled Hankel matrix stays well conditioned.
pub fn rayleigh_factor_monomial(n: usize, weight: &WeightSpec, op: &OperatorSpec) -> Result<OracleResult> {
    check_degree(n, DEFAULT_MAX_DEGREE)?;
    let GramPair { g, s } = assemble(n, weight, op, true);
    let dim = n + 1;
    let d = DVector::from_iterator(dim, (0..dim).map(|k| 1.0 / g[(k, k)].sqrt()));
    let scale = |m: &DMatrix<f64>| DMatrix::from_fn(dim, dim, |i, j| d[i] * m[(i, j)] * d[j]);
    let gs = scale(&g);
    let condition = condition_number(&gs);
    let (t, a) = top_eigenpair(&gs, &scale(&s), condition)?;
    let extremal = Polynomial::new((0..dim).map(|k| a[k] * d[k]).collect());
    Ok(OracleResult { factor: t.sqrt(), factor_sq: t, extremal: normalize_extremal(extremal, weight)?, condition })
}

/// Bilinear forms against a fixed weight, evaluated with a Gauss rule that is exact for
/// the products involved.
#[derive(Debug, Clone)]
pub struct InnerProduct {
    rule: GaussRule,
    a_quad: f64,
}

impl InnerProduct {
    /// Supports products of total degree up to `max_degree` (plus the damping factor).
    pub fn new(weight: &WeightSpec, max_degree: usize) -> Result<Self> {
        Ok(InnerProduct { rule: GaussRule::exact_for(weight, max_degree + 2)?, a_quad: weight.a_quad() })
    }

    pub fn weight(&self) -> &WeightSpec {
        &self.rule.weight
    }

    fn damping(&self, x: f64, with_a: bool) -> f64 {
        if with_a {
            1.0 - self.a_quad * x * x
        } else {
            1.0
        }
    }

    /// `∫ p q W`, or `∫ A p q W` when `with_a`.
    pub fn inner(&self, p: &Polynomial, q: &Polynomial, with_a: bool) -> f64 {
        self.rule.integrate(|x| self.damping(x, with_a) * p.eval(x) * q.eval(x))
    }

    /// `∫ p q x^{-1} W` as a principal value (only the odd part of `p q` contributes).
    pub fn inner_over_x(&self, p: &Polynomial, q: &Polynomial, with_a: bool) -> f64 {
        self.rule.integrate_over_x(|x| self.damping(x, with_a) * p.eval(x) * q.eval(x))
    }

    pub fn norm_sq(&self, p: &Polynomial, with_a: bool) -> f64 {
        self.inner(p, p, with_a)
    }
}

fn total_degree(p: &Polynomial, q: &Polynomial) -> usize {
    p.degree().unwrap_or(0) + q.degree().unwrap_or(0)
}

/// `∫ p q (1 - with_a·A_quad·x²) W`.
pub fn weighted_inner(p: &Polynomial, q: &Polynomial, weight: &WeightSpec, with_a: bool) -> Result<f64> {
    Ok(InnerProduct::new(weight, total_degree(p, q))?.inner(p, q, with_a))
}

/// The same forms expanded over moments, `Σ p_i q_j m_{i+j+shift}`. Odd orders vanish
/// exactly (including the principal value `m_{-1}`), so parity cancellations are exact;
/// coefficients of alternating sign cost digits in proportion to the Hankel conditioning.
#[derive(Debug, Clone, Copy)]
pub struct MomentForm {
    weight: WeightSpec,
}

impl MomentForm {
    pub fn new(weight: &WeightSpec) -> Self {
        MomentForm { weight: *weight }
    }

    fn form(&self, p: &Polynomial, q: &Polynomial, shift: isize, with_a: bool) -> f64 {
        let a_quad = if with_a { self.weight.a_quad() } else { 0.0 };
        let mut acc = 0.0;
        for (i, &pi) in p.coeffs().iter().enumerate() {
            for (j, &qj) in q.coeffs().iter().enumerate() {
                let k = (i + j) as isize + shift;
                if k.rem_euclid(2) == 0 {
                    acc += pi * qj * damped_moment(&self.weight, (k / 2) as usize, a_quad);
                }
            }
        }
        acc
    }

    pub fn inner(&self, p: &Polynomial, q: &Polynomial, with_a: bool) -> f64 {
        self.form(p, q, 0, with_a)
    }

    pub fn inner_over_x(&self, p: &Polynomial, q: &Polynomial, with_a: bool) -> f64 {
        self.form(p, q, -1, with_a)
    }

    pub fn norm_sq(&self, p: &Polynomial, with_a: bool) -> f64 {
        self.inner(p, p, with_a)
    }
}

/// `‖√A D p‖² / ‖p‖²` (with `A ≡ 1` when the operator is undamped).
pub fn rayleigh_quotient(p: &Polynomial, weight: &WeightSpec, op: &OperatorSpec) -> Result<f64> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let c = p.coeffs();
    let dp = Polynomial::new(
        (1..c.len()).map(|k| op.monomial_action(k, weight.lambda) * c[k]).collect(),
    );
    let ip = InnerProduct::new(weight, 2 * c.len())?;
    Ok(ip.norm_sq(&dp, op.damped) / ip.norm_sq(p, false))
}
