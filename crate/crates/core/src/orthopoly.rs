//! Generalized Hermite `H_n^λ` and generalized Gegenbauer `C_n^{(μ,λ)}` polynomials
//! (monic), their eigenvalues, and the residuals of the equations they solve.

use serde::{Deserialize, Serialize};

use crate::dunkl::{dunkl_apply, dunkl_laplacian, mul_by_one_minus_x2, mul_by_x};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::weight::{Family, WeightSpec};

/// `λ_n²` for a family at fixed parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub n: usize,
    pub lambda: f64,
    pub mu: f64,
    pub value_sq: f64,
}

impl Eigenvalue {
    pub fn new(family: Family, n: usize, lambda: f64, mu: f64) -> Self {
        Eigenvalue { n, lambda, mu, value_sq: eigenvalue_sq(family, n, lambda, mu) }
    }
}

/// Gegenbauer: `n(n+2λ+2μ) + 2λμ[1-(-1)^n]`; Hermite: `2{n + λ[1-(-1)^n]}`.
pub fn eigenvalue_sq(family: Family, n: usize, lambda: f64, mu: f64) -> f64 {
    let nf = n as f64;
    let odd = if n % 2 == 1 { 2.0 } else { 0.0 };
    match family {
        Family::Gegenbauer => nf * (nf + 2.0 * lambda + 2.0 * mu) + lambda * mu * 2.0 * odd,
        Family::Hermite => 2.0 * (nf + lambda * odd),
    }
}

/// Fills `a_n = 1` and walks down in steps of two, solving the coefficient
/// recurrence for `a_k` given `a_{k+2}`. `lhs(k)` is the factor multiplying
/// `a_{k+2}`, `rhs(k)` the one multiplying `a_k`.
fn reverse_fill(n: usize, lhs: impl Fn(f64) -> f64, rhs: impl Fn(f64) -> f64) -> Polynomial {
    let mut a = vec![0.0; n + 1];
    a[n] = 1.0;
    let mut k = n;
    while k >= 2 {
        k -= 2;
        let kf = k as f64;
        a[k] = lhs(kf) * a[k + 2] / rhs(kf);
    }
    Polynomial::new(a)
}

/// Multiplier of `a_{k+2}` in both recurrences: `(k+2)(k+2λ+1)` for even `k`,
/// `(k+1)(k+2λ+2)` for odd `k`.
fn upper_factor(k: f64, n: usize, lambda: f64) -> f64 {
    if n % 2 == 0 {
        (k + 2.0) * (k + 2.0 * lambda + 1.0)
    } else {
        (k + 1.0) * (k + 2.0 * lambda + 2.0)
    }
}

/// Monic `H_n^λ`.
pub fn hermite_poly(n: usize, lambda: f64) -> Polynomial {
    let nf = n as f64;
    reverse_fill(n, |k| upper_factor(k, n, lambda), |k| 2.0 * (k - nf))
}

/// Monic `C_n^{(μ,λ)}`.
pub fn gegenbauer_poly(n: usize, lambda: f64, mu: f64) -> Polynomial {
    let nf = n as f64;
    reverse_fill(
        n,
        |k| upper_factor(k, n, lambda),
        |k| (k - nf) * (k + nf + 2.0 * lambda + 2.0 * mu),
    )
}

/// Monic orthogonal polynomial of degree `n` for a weight.
pub fn orthogonal_poly(weight: &WeightSpec, n: usize) -> Polynomial {
    match weight.family {
        Family::Hermite => hermite_poly(n, weight.lambda),
        Family::Gegenbauer => gegenbauer_poly(n, weight.lambda, weight.mu),
    }
}

/// `(1-x²) D_λ² p - (2μ+1) x D_λ p + λ_n² p`.
pub fn residual_gegenbauer(p: &Polynomial, n: usize, lambda: f64, mu: f64) -> Polynomial {
    let ev = eigenvalue_sq(Family::Gegenbauer, n, lambda, mu);
    let dp = dunkl_apply(p, lambda);
    let d2p = dunkl_laplacian(p, lambda);
    &(&mul_by_one_minus_x2(&d2p) - &mul_by_x(&dp).scale(2.0 * mu + 1.0)) + &p.scale(ev)
}

/// `D_λ² p - 2x D_λ p + λ_n² p`.
pub fn residual_hermite(p: &Polynomial, n: usize, lambda: f64) -> Polynomial {
    let ev = eigenvalue_sq(Family::Hermite, n, lambda, 0.0);
    let dp = dunkl_apply(p, lambda);
    let d2p = dunkl_laplacian(p, lambda);
    &(&d2p - &mul_by_x(&dp).scale(2.0)) + &p.scale(ev)
}

/// `L[p] = A p'' + C(x) p' + (2λ/x) p' + M² p`, split into its polynomial part and the
/// coefficient of `x^{-1}` (which is `2λ p'(0)`).
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalResidual {
    pub residual: Polynomial,
    pub pole: f64,
}

impl ClassicalResidual {
    /// The residual as a polynomial, or an error when the `x^{-1}` channel is nonzero.
    pub fn polynomial(self) -> Result<Polynomial> {
        if self.pole != 0.0 {
            return Err(Error::NonPolynomialTerm { coefficient: self.pole });
        }
        Ok(self.residual)
    }
}

pub fn residual_classical_l(p: &Polynomial, weight: &WeightSpec, m_sq: f64) -> ClassicalResidual {
    let tc = weight.coefficients();
    let lambda = weight.lambda;
    let dp = p.derivative();
    let d2p = dp.derivative();
    let a_d2p = &d2p.scale(tc.a_const) + &mul_by_x(&mul_by_x(&d2p)).scale(tc.a_quad);
    let c_dp = mul_by_x(&dp).scale(tc.c_prime0);
    // (2λ/x) p' without its x^{-1} term: coefficient k is 2λ (k+2) a_{k+2}
    let over_x = Polynomial::new(dp.coeffs().iter().skip(1).map(|&c| 2.0 * lambda * c).collect());
    let residual = &(&(&a_d2p + &c_dp) + &over_x) + &p.scale(m_sq);
    ClassicalResidual { residual, pole: 2.0 * lambda * dp.coeff(0) }
}

/// Jacobi `P_m^{(α,β)}` from its three-term recurrence.
fn jacobi(m: usize, alpha: f64, beta: f64) -> Polynomial {
    let x = Polynomial::monomial(1, 1.0);
    let mut prev = Polynomial::constant(1.0);
    if m == 0 {
        return prev;
    }
    // P_1 = (α+1) + (α+β+2)(x-1)/2
    let mut cur = &Polynomial::constant(alpha + 1.0 - (alpha + beta + 2.0) / 2.0)
        + &x.scale((alpha + beta + 2.0) / 2.0);
    for k in 2..=m {
        let kf = k as f64;
        let s = 2.0 * kf + alpha + beta;
        let c0 = 2.0 * kf * (kf + alpha + beta) * (s - 2.0);
        let c1 = (s - 1.0) * (alpha * alpha - beta * beta);
        let c2 = (s - 1.0) * s * (s - 2.0);
        let c3 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * s;
        let next = (&(&(&Polynomial::constant(c1) + &x.scale(c2)) * &cur) - &prev.scale(c3)).scale(1.0 / c0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Laguerre `L_m^κ` from its three-term recurrence.
fn laguerre(m: usize, kappa: f64) -> Polynomial {
    let mut prev = Polynomial::constant(1.0);
    if m == 0 {
        return prev;
    }
    let mut cur = Polynomial::new(vec![1.0 + kappa, -1.0]);
    for k in 2..=m {
        let kf = k as f64;
        let lin = Polynomial::new(vec![2.0 * kf - 1.0 + kappa, -1.0]);
        let next = (&(&lin * &cur) - &prev.scale(kf - 1.0 + kappa)).scale(1.0 / kf);
        prev = cur;
        cur = next;
    }
    cur
}

/// Builds the degree-`n` polynomial from its connection formula (`J_m(2x²-1)` or
/// `x J_m(2x²-1)` for Gegenbauer, `L_m(x²)` or `x L_m(x²)` for Hermite), monic-rescales it
/// and the recurrence-built polynomial (the constant prefactors of the formulas drop out),
/// and returns the largest absolute discrepancy on 41 equispaced points of `[-1, 1]`
/// (Gegenbauer) or `[-2, 2]` (Hermite).
pub fn connection_check(family: Family, n: usize, lambda: f64, mu: f64) -> f64 {
    let m = n / 2;
    let odd = n % 2 == 1;
    let x = Polynomial::monomial(1, 1.0);
    let (via_connection, direct, half_width) = match family {
        Family::Gegenbauer => {
            let arg = Polynomial::new(vec![-1.0, 0.0, 2.0]);
            let beta = if odd { lambda + 0.5 } else { lambda - 0.5 };
            let mut p = jacobi(m, mu - 0.5, beta).compose(&arg);
            if odd {
                p = &p * &x;
            }
            (p, gegenbauer_poly(n, lambda, mu), 1.0)
        }
        Family::Hermite => {
            let kappa = if odd { lambda + 0.5 } else { lambda - 0.5 };
            let mut p = laguerre(m, kappa).compose(&Polynomial::monomial(2, 1.0));
            if odd {
                p = &p * &x;
            }
            (p, hermite_poly(n, lambda), 2.0)
        }
    };
    let a = via_connection.monic();
    let b = direct.monic();
    (0..=40)
        .map(|i| -half_width + 2.0 * half_width * i as f64 / 40.0)
        .map(|t| (a.eval(t) - b.eval(t)).abs())
        .fold(0.0, f64::max)
}
