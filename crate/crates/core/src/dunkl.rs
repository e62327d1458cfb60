//! The Dunkl operator `D_λ f = f' + λ σ(f)` with `σ(f) = (f(x) - f(-x)) / x`,
//! all acting on monomial coefficients.

use crate::poly::Polynomial;

/// `D_λ x^k = (k + λ(1 - (-1)^k)) x^{k-1}`.
pub fn dunkl_multiplier(k: usize, lambda: f64) -> f64 {
    if k % 2 == 1 {
        k as f64 + 2.0 * lambda
    } else {
        k as f64
    }
}

/// `σ(p)`: coefficient `k` of the result is `2 p_{k+1}` for even `k`, zero for odd `k`.
pub fn sigma(p: &Polynomial) -> Polynomial {
    let c = p.coeffs();
    Polynomial::new(
        (0..c.len().saturating_sub(1))
            .map(|k| if k % 2 == 0 { 2.0 * c[k + 1] } else { 0.0 })
            .collect(),
    )
}

pub fn dunkl_apply(p: &Polynomial, lambda: f64) -> Polynomial {
    let c = p.coeffs();
    Polynomial::new(
        (1..c.len())
            .map(|k| dunkl_multiplier(k, lambda) * c[k])
            .collect(),
    )
}

/// `D_λ²`, evaluated as two applications of [`dunkl_apply`].
pub fn dunkl_laplacian(p: &Polynomial, lambda: f64) -> Polynomial {
    dunkl_apply(&dunkl_apply(p, lambda), lambda)
}

pub fn mul_by_x(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return Polynomial::zero();
    }
    let mut c = Vec::with_capacity(p.coeffs().len() + 1);
    c.push(0.0);
    c.extend_from_slice(p.coeffs());
    Polynomial::new(c)
}

/// `(1 - x²) p`.
pub fn mul_by_one_minus_x2(p: &Polynomial) -> Polynomial {
    let c = p.coeffs();
    let n = c.len() + 2;
    Polynomial::new(
        (0..n)
            .map(|k| {
                let keep = c.get(k).copied().unwrap_or(0.0);
                let shifted = if k >= 2 { c.get(k - 2).copied().unwrap_or(0.0) } else { 0.0 };
                keep - shifted
            })
            .collect(),
    )
}
