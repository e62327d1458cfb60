//! Characterization inequality for the generalized orthogonal polynomials.
//!
//! With `b = -B'(0)` (2 for Hermite, `2μ+1` for Gegenbauer), every `p` of degree at most `n`
//! satisfies
//!
//! ```text
//! (2λ_n² - b(1+2λ)) ‖√A D_λ p‖² + 2λb ‖√A p'‖²
//!     ≤ 2λb ⟨A p', p'(-·)⟩ + λ_n⁴ ‖p‖² + ‖A D_λ² p‖²
//! ```
//!
//! and the gap equals `‖A D_λ² p + B D_λ p + λ_n² p‖²`, which vanishes exactly at the
//! orthogonal polynomial of degree `n`. At `λ = 0` this is the classical
//! `(2λ_n² - b)‖√A p'‖² ≤ λ_n⁴‖p‖² + ‖A p''‖²`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dunkl::{dunkl_apply, dunkl_laplacian, mul_by_x};
use crate::error::{Error, Result};
use crate::oracle::InnerProduct;
use crate::orthopoly::eigenvalue_sq;
use crate::poly::{reflect, Polynomial};
use crate::sweep::{self, Execution};
use crate::weight::{Family, WeightSpec};

/// Relative tolerance of the equality flag.
pub const EQUALITY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityTerms {
    /// `λ_n²`.
    pub eigenvalue_sq: f64,
    /// `-B'(0)`.
    pub b: f64,
    /// `‖√A D_λ p‖²`.
    pub dunkl_sq: f64,
    /// `‖√A p'‖²`.
    pub derivative_sq: f64,
    /// `⟨A p', p'(-·)⟩`.
    pub reflected: f64,
    /// `‖p‖²`.
    pub norm_sq: f64,
    /// `‖A D_λ² p‖²`.
    pub laplacian_sq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub terms: InequalityTerms,
    /// `‖A D_λ² p + B D_λ p + λ_n² p‖²`, computed directly.
    pub residual_sq: f64,
    pub equality: bool,
}

impl InequalityReport {
    pub fn scale(&self) -> f64 {
        self.lhs.abs() + self.rhs.abs()
    }
}

/// `A q` as a polynomial.
fn times_a(q: &Polynomial, weight: &WeightSpec) -> Polynomial {
    let tc = weight.coefficients();
    &q.scale(tc.a_const) + &mul_by_x(&mul_by_x(q)).scale(tc.a_quad)
}

pub fn inequality(p: &Polynomial, n: usize, weight: &WeightSpec) -> Result<InequalityReport> {
    if let Some(d) = p.degree() {
        if d > n {
            return Err(Error::DegreeOverflow { degree: d, capacity: n });
        }
    }
    let lambda = weight.lambda;
    let ev = eigenvalue_sq(weight.family, n, lambda, weight.mu);
    let b = -weight.coefficients().b_prime0;
    let ip = InnerProduct::new(weight, 2 * n + 2)?;

    let dp = dunkl_apply(p, lambda);
    let p1 = p.derivative();
    let a_d2p = times_a(&dunkl_laplacian(p, lambda), weight);

    let terms = InequalityTerms {
        eigenvalue_sq: ev,
        b,
        dunkl_sq: ip.norm_sq(&dp, true),
        derivative_sq: ip.norm_sq(&p1, true),
        reflected: ip.inner(&p1, &reflect(&p1), true),
        norm_sq: ip.norm_sq(p, false),
        laplacian_sq: ip.norm_sq(&a_d2p, false),
    };
    let lhs = (2.0 * ev - b * (1.0 + 2.0 * lambda)) * terms.dunkl_sq + 2.0 * lambda * b * terms.derivative_sq;
    let rhs = 2.0 * lambda * b * terms.reflected + ev * ev * terms.norm_sq + terms.laplacian_sq;
    let gap = rhs - lhs;

    let residual = &(&a_d2p - &mul_by_x(&dp).scale(b)) + &p.scale(ev);
    let residual_sq = ip.norm_sq(&residual, false);
    let equality = gap.abs() <= EQUALITY_TOLERANCE * (lhs.abs() + rhs.abs());
    Ok(InequalityReport { lhs, rhs, gap, terms, residual_sq, equality })
}

pub fn gegenbauer_inequality(p: &Polynomial, n: usize, lambda: f64, mu: f64) -> Result<InequalityReport> {
    inequality(p, n, &WeightSpec::new(Family::Gegenbauer, lambda, mu)?)
}

pub fn hermite_inequality(p: &Polynomial, n: usize, lambda: f64) -> Result<InequalityReport> {
    inequality(p, n, &WeightSpec::hermite(lambda)?)
}

/// Coefficients uniform in `[-1, 1)`.
pub fn random_polynomial(rng: &mut impl Rng, degree: usize) -> Polynomial {
    Polynomial::new((0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect())
}

/// Extremes of `inequality` over a seeded batch of random polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub count: usize,
    /// Smallest `gap / scale`; nonnegative up to rounding.
    pub min_relative_gap: f64,
    /// Largest `|gap - residual_sq| / residual_sq`.
    pub max_identity_err: f64,
}

/// `count` polynomials of degree uniform in `0..=n`. Sample `i` uses ChaCha8 stream `i` of
/// `seed`, so the summary is the same in both execution modes.
pub fn random_batch(weight: &WeightSpec, n: usize, count: usize, seed: u64, exec: Execution) -> Result<BatchSummary> {
    let indices: Vec<u64> = (0..count as u64).collect();
    let reports = sweep::map(exec, &indices, |&i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        let degree = rng.gen_range(0..=n);
        inequality(&random_polynomial(&mut rng, degree), n, weight)
    });
    let mut summary = BatchSummary { count, min_relative_gap: f64::INFINITY, max_identity_err: 0.0 };
    for r in reports {
        let r = r?;
        summary.min_relative_gap = summary.min_relative_gap.min(r.gap / r.scale());
        let err = (r.gap - r.residual_sq).abs() / r.residual_sq;
        summary.max_identity_err = summary.max_identity_err.max(err);
    }
    Ok(summary)
}
