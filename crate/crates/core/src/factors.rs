//! Closed forms and determinant pencils for the four Bernstein–Markov factors.
//!
//! | weight     | operator       | even n                                   | odd n                                    |
//! |------------|----------------|------------------------------------------|------------------------------------------|
//! | Hermite    | d/dx           | `2n`                                     | largest root of the F pencil             |
//! | Gegenbauer | √(1-x²) d/dx   | `max(ν_{n/2}, n(n+2λ+2μ))`               | `max(ν_{(n+1)/2}, (n-1)(n+2λ+2μ-1))`     |
//! | Hermite    | D_λ            | `2n` or `2(n+2λ-1)`                      | `2(n+2λ)`                                |
//! | Gegenbauer | √(1-x²) D_λ    | `n(n+2λ+2μ)` or `... + 2(n₀-n)`          | `λ_n²`                                   |

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::oracle::InnerProduct;
use crate::orthopoly::{eigenvalue_sq, gegenbauer_poly, hermite_poly};
use crate::poly::Polynomial;
use crate::quadrature::{orthonormal_at, orthonormal_polys, zeroth_moment, GaussRule};
use crate::special::{gegenbauer_moment, hermite_moment};
use crate::weight::{Family, OperatorKind, OperatorSpec, WeightSpec};

/// Relative tolerance under which `√ν` and the closed form count as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;
/// A root `t` counts as positive when `t·‖Q‖ > POSITIVITY_THRESHOLD·‖P‖`.
pub const POSITIVITY_THRESHOLD: f64 = 1e-10;
/// Symmetrized and unsymmetrized roots must agree to this relative tolerance.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-8;
/// Largest pencil size (m + 1) for which the unsymmetrized cross-check runs.
const CROSS_CHECK_MAX_SIZE: usize = 4;

/// The pair `(P, Q)` whose roots `det(P + tQ) = 0` are sought, on an odd basis: the
/// monomials `x, x³, …, x^{2m+1}` or the odd orthonormal polynomials of the weight. Either
/// basis spans the same space, so the roots agree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pencil {
    pub p_raw: Matrix,
    pub q_raw: Matrix,
    pub p: Matrix,
    pub q: Matrix,
    pub basis: Vec<Polynomial>,
}

impl Pencil {
    fn from_raw(p_raw: Matrix, q_raw: Matrix, basis: Vec<Polynomial>) -> Self {
        let sym = |a: &Matrix| -> Matrix {
            let n = a.len();
            (0..n).map(|i| (0..n).map(|j| 0.5 * (a[i][j] + a[j][i])).collect()).collect()
        };
        let p = sym(&p_raw);
        let q = sym(&q_raw);
        Pencil { p_raw, q_raw, p, q, basis }
    }

    pub fn size(&self) -> usize {
        self.p.len()
    }

    /// Largest `|P_ij - P_ji|` relative to `‖P‖`.
    pub fn asymmetry(&self) -> f64 {
        let n = self.size();
        let worst = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (self.p_raw[i][j] - self.p_raw[j][i]).abs())
            .fold(0.0, f64::max);
        worst / linalg::frobenius(&self.p_raw).max(f64::MIN_POSITIVE)
    }

    /// `‖(P + tQ) v‖ / ((‖P‖ + |t|‖Q‖)‖v‖)` on the unsymmetrized matrices.
    pub fn residual(&self, t: f64, v: &[f64]) -> f64 {
        let n = self.size();
        let r: f64 = (0..n)
            .map(|i| (0..n).map(|j| (self.p_raw[i][j] + t * self.q_raw[i][j]) * v[j]).sum::<f64>())
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt();
        let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let scale = linalg::frobenius(&self.p_raw) + t.abs() * linalg::frobenius(&self.q_raw);
        r / (scale * vn)
    }

    /// `Σ v_j b_j` over the pencil's basis.
    pub fn polynomial_from(&self, v: &[f64]) -> Polynomial {
        self.basis.iter().zip(v).fold(Polynomial::zero(), |acc, (b, &c)| &acc + &b.scale(c))
    }
}

/// Monomial pencil `P_ij = (2j+1)(2j+2λ)m_{2i+2j} - κ_j m_{2i+2j+2}`, `Q_ij = m_{2i+2j+2}`,
/// with normalized moments.
///
/// Both pencils have `m_{2s+2}/m_{2s}` rational in `s`, and substituting it collapses `P` to
/// `-(2i+1)(2j+1) a_{2i+2j}` with `a` the moments of `A W`. That form is used here: the literal
/// difference cancels almost completely once `λ` is a few units.
fn build_pencil(size: usize, weight: WeightSpec) -> Result<Pencil> {
    let m0 = zeroth_moment(&weight);
    let (lambda, mu) = (weight.lambda, weight.mu);
    let moment = |s: usize| -> f64 {
        match weight.family {
            Family::Hermite => hermite_moment(s, lambda),
            Family::Gegenbauer => gegenbauer_moment(s, lambda, mu),
        }
    };
    let damped = |s: usize| -> f64 {
        match weight.family {
            Family::Hermite => hermite_moment(s, lambda),
            Family::Gegenbauer => gegenbauer_moment(s, lambda, mu + 1.0),
        }
    };
    let mut p = linalg::zeros(size);
    let mut q = linalg::zeros(size);
    for i in 0..size {
        for j in 0..size {
            let odd = ((2 * i + 1) * (2 * j + 1)) as f64;
            p[i][j] = -odd * damped(i + j) / m0;
            q[i][j] = moment(i + j + 1) / m0;
        }
    }
    let basis = (0..size).map(|j| Polynomial::monomial(2 * j + 1, 1.0)).collect();
    Ok(Pencil::from_raw(p, q, basis))
}

/// The same pencil on the odd orthonormal polynomials `p_1, p_3, …` of `W`: `Q` is the
/// identity and `-P_ij = ∫ A p'_{2i+1} p'_{2j+1} W`, both by an exact Gauss rule.
fn build_orthonormal_pencil(size: usize, weight: WeightSpec) -> Result<Pencil> {
    let degree = 2 * size - 1;
    let a_quad = weight.a_quad();
    let rule = GaussRule::exact_for(&weight, 2 * degree + 2)?;
    let mass = zeroth_moment(&weight);
    let mut p = linalg::zeros(size);
    let mut q = linalg::zeros(size);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let (v, d) = orthonormal_at(&weight, degree, x);
        let wq = w / mass;
        let wp = wq * (1.0 - a_quad * x * x);
        for i in 0..size {
            for j in 0..size {
                q[i][j] += wq * v[2 * i + 1] * v[2 * j + 1];
                p[i][j] -= wp * d[2 * i + 1] * d[2 * j + 1];
            }
        }
    }
    let all = orthonormal_polys(&weight, degree);
    let basis = (0..size).map(|j| all[2 * j + 1].clone()).collect();
    Ok(Pencil::from_raw(p, q, basis))
}

fn check_f(n: usize, lambda: f64) -> Result<WeightSpec> {
    if n % 2 == 0 {
        return Err(Error::domain(format!("F pencil needs odd n, got {n}")));
    }
    if !(lambda > 0.0) {
        return Err(Error::domain(format!("F pencil needs lambda > 0, got {lambda}")));
    }
    WeightSpec::hermite(lambda)
}

fn check_g(n: usize, lambda: f64, mu: f64) -> Result<WeightSpec> {
    if n == 0 {
        return Err(Error::domain("G pencil needs n >= 1"));
    }
    if !(lambda > 0.0) {
        return Err(Error::domain(format!("G pencil needs lambda > 0, got {lambda}")));
    }
    WeightSpec::gegenbauer(lambda, mu)
}

/// The `F_{(n+1)/2}` pencil for odd `n` (Hermite weight, `κ_j = 4j+2`), monomial basis.
pub fn build_pencil_f(n: usize, lambda: f64) -> Result<Pencil> {
    build_pencil((n + 1) / 2, check_f(n, lambda)?)
}

/// The `G_{m+1}` pencil (Gegenbauer weight, `κ_j = (2j+1)(2j+2λ+2μ+1)`), monomial basis;
/// `m = (n-2)/2` for even and `(n-1)/2` for odd `n`.
pub fn build_pencil_g(n: usize, lambda: f64, mu: f64) -> Result<Pencil> {
    build_pencil((n + 1) / 2, check_g(n, lambda, mu)?)
}

/// `build_pencil_f` on the orthonormal basis; the monomial Hankel form loses digits in
/// proportion to its condition number, which passes 10^10 for large `λ` near `n = 11`.
pub fn orthonormal_pencil_f(n: usize, lambda: f64) -> Result<Pencil> {
    build_orthonormal_pencil((n + 1) / 2, check_f(n, lambda)?)
}

/// `build_pencil_g` on the orthonormal basis.
pub fn orthonormal_pencil_g(n: usize, lambda: f64, mu: f64) -> Result<Pencil> {
    build_orthonormal_pencil((n + 1) / 2, check_g(n, lambda, mu)?)
}

/// Comparison of the symmetric-definite solve against the raw, unsymmetrized pencil.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub unsymmetrized_root: Option<f64>,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PencilRoot {
    /// Largest strictly positive root, if any.
    pub root: Option<f64>,
    /// All roots, ascending.
    pub roots: Vec<f64>,
    /// Null vector of `P + tQ` at `root`, in the pencil's basis.
    pub eigenvector: Option<Vec<f64>>,
    /// Condition number of the diagonally scaled `Q`.
    pub condition: f64,
    pub cross_check: Option<CrossCheck>,
}

fn largest_positive(roots: impl Iterator<Item = f64>, p_norm: f64, q_norm: f64) -> Option<f64> {
    roots
        .filter(|&t| t * q_norm > POSITIVITY_THRESHOLD * p_norm)
        .max_by(f64::total_cmp)
}

fn unsymmetrized_root(p_raw: &Matrix, q_raw: &Matrix, d: &[f64]) -> Result<Option<f64>> {
    let n = p_raw.len();
    let ps = DMatrix::from_fn(n, n, |i, j| d[i] * p_raw[i][j] * d[j]);
    let qs = DMatrix::from_fn(n, n, |i, j| d[i] * q_raw[i][j] * d[j]);
    let q_inv = qs.clone().try_inverse().ok_or(Error::Conditioning { condition: f64::INFINITY })?;
    let m = q_inv * (-&ps);
    let eigs = m.complex_eigenvalues();
    let real = eigs.iter().filter(|z| z.im.abs() <= 1e-8 * z.re.abs().max(1.0)).map(|z| z.re);
    Ok(largest_positive(real, ps.norm(), qs.norm()))
}

/// Roots of `det(P + tQ)`, i.e. eigenvalues of `(-P) v = t Q v`, by Cholesky reduction of a
/// diagonally scaled `Q` and Jacobi on the reduced symmetric matrix.
pub fn pencil_largest_positive_root(pencil: &Pencil) -> Result<PencilRoot> {
    let n = pencil.size();
    let d: Vec<f64> = (0..n).map(|i| 1.0 / pencil.q[i][i].sqrt()).collect();
    let scale = |a: &Matrix| -> Matrix { (0..n).map(|i| (0..n).map(|j| d[i] * a[i][j] * d[j]).collect()).collect() };
    let qs = scale(&pencil.q);
    let neg_ps: Matrix = scale(&pencil.p).into_iter().map(|r| r.into_iter().map(|v| -v).collect()).collect();

    let (q_eigs, _) = linalg::jacobi_eigen(&qs);
    let lo = q_eigs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = q_eigs.iter().cloned().fold(0.0, |a: f64, b| a.max(b.abs()));
    let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };

    let l = linalg::cholesky(&qs).ok_or(Error::Conditioning { condition })?;
    let c = linalg::congruence_inverse(&l, &neg_ps);
    let (values, vectors) = linalg::jacobi_eigen(&c);

    let p_norm = linalg::frobenius(&neg_ps);
    let q_norm = linalg::frobenius(&qs);
    let top = values
        .iter()
        .enumerate()
        .filter(|(_, &t)| t * q_norm > POSITIVITY_THRESHOLD * p_norm)
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k);
    let mut root = top.map(|k| values[k]);
    let eigenvector = top.map(|k| {
        let z = linalg::backward_sub_transposed(&l, &vectors[k]);
        z.iter().zip(&d).map(|(zi, di)| zi * di).collect::<Vec<f64>>()
    });

    let cross_check = if n <= CROSS_CHECK_MAX_SIZE {
        let other = unsymmetrized_root(&pencil.p_raw, &pencil.q_raw, &d)?;
        let agrees = match (root, other) {
            (Some(a), Some(b)) => (a - b).abs() <= CROSS_CHECK_TOLERANCE * a.abs().max(b.abs()),
            (None, None) => true,
            _ => false,
        };
        if !agrees {
            root = other;
        }
        Some(CrossCheck { unsymmetrized_root: other, agrees })
    } else {
        None
    };

    let mut roots = values;
    roots.sort_by(f64::total_cmp);
    Ok(PencilRoot { root, roots, eigenvector, condition, cross_check })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    EvenClosedForm,
    OddPencilRoot,
    DunklClosedForm,
    MaxOfBoth,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Branch::EvenClosedForm => "even_closed_form",
            Branch::OddPencilRoot => "odd_pencil_root",
            Branch::DunklClosedForm => "dunkl_closed_form",
            Branch::MaxOfBoth => "max_of_both",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorResult {
    pub n: usize,
    pub weight: WeightSpec,
    pub operator: OperatorSpec,
    pub factor: f64,
    pub factor_sq: f64,
    pub branch: Branch,
    pub extremal: Polynomial,
}

impl FactorResult {
    fn new(n: usize, weight: WeightSpec, operator: OperatorSpec, factor_sq: f64, branch: Branch, extremal: Polynomial) -> Self {
        FactorResult { n, weight, operator, factor: factor_sq.sqrt(), factor_sq, branch, extremal }
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("degree must be at least 1"));
    }
    Ok(())
}

/// Pencil root and its eigenvector polynomial, scaled to unit `L2(W)` norm.
fn pencil_extremal(pencil: &Pencil, weight: &WeightSpec) -> Result<(f64, Option<Polynomial>)> {
    let pr = pencil_largest_positive_root(pencil)?;
    let Some(nu) = pr.root else {
        return Ok((0.0, None));
    };
    let v = pr.eigenvector.expect("eigenvector accompanies a root");
    let p = pencil.polynomial_from(&v);
    let ip = InnerProduct::new(weight, 2 * p.degree().unwrap_or(0))?;
    let norm = ip.norm_sq(&p, false).sqrt();
    let sign = p.leading_coeff().signum();
    Ok((nu, Some(p.scale(sign / norm))))
}

/// `M_n(L2(|x|^{2λ} e^{-x²}), d/dx)`, `λ > 0`.
pub fn factor_hermite_ddx(n: usize, lambda: f64) -> Result<FactorResult> {
    check_degree(n)?;
    if !(lambda > 0.0) {
        return Err(Error::domain(format!("lambda must be > 0, got {lambda}")));
    }
    let weight = WeightSpec::hermite(lambda)?;
    let op = OperatorSpec::classical(false);
    if n % 2 == 0 {
        return Ok(FactorResult::new(n, weight, op, 2.0 * n as f64, Branch::EvenClosedForm, hermite_poly(n, lambda)));
    }
    let (nu, p) = pencil_extremal(&orthonormal_pencil_f(n, lambda)?, &weight)?;
    let p = p.ok_or_else(|| Error::Conditioning { condition: f64::NAN })?;
    Ok(FactorResult::new(n, weight, op, nu, Branch::OddPencilRoot, p))
}

/// `M_n(L2(|x|^{2λ}(1-x²)^{μ-1/2}), √(1-x²) d/dx)`, `λ > 0`.
pub fn factor_gegenbauer_ddx(n: usize, lambda: f64, mu: f64) -> Result<FactorResult> {
    check_degree(n)?;
    if !(lambda > 0.0) {
        return Err(Error::domain(format!("lambda must be > 0, got {lambda}")));
    }
    let weight = WeightSpec::gegenbauer(lambda, mu)?;
    let op = OperatorSpec::classical(true);
    let even = n - n % 2;
    let ef = even as f64;
    let closed_sq = ef * (ef + 2.0 * lambda + 2.0 * mu);
    let (nu, odd_p) = pencil_extremal(&orthonormal_pencil_g(n, lambda, mu)?, &weight)?;
    let closed_p = || gegenbauer_poly(even, lambda, mu);
    let tied = (nu - closed_sq).abs() <= TIE_TOLERANCE * nu.max(closed_sq);
    let result = match odd_p {
        Some(_) if tied => FactorResult::new(n, weight, op, closed_sq, Branch::MaxOfBoth, closed_p()),
        Some(p) if nu > closed_sq => FactorResult::new(n, weight, op, nu, Branch::OddPencilRoot, p),
        _ => FactorResult::new(n, weight, op, closed_sq, Branch::EvenClosedForm, closed_p()),
    };
    Ok(result)
}

/// `M_n(L2(|x|^{2λ} e^{-x²}), D_λ)`, `λ ≥ 0`.
pub fn factor_hermite_dunkl(n: usize, lambda: f64) -> Result<FactorResult> {
    check_degree(n)?;
    let weight = WeightSpec::hermite(lambda)?;
    let op = OperatorSpec::dunkl(false);
    let nf = n as f64;
    let (sq, p) = if n % 2 == 1 {
        (2.0 * (nf + 2.0 * lambda), hermite_poly(n, lambda))
    } else if lambda <= 0.5 {
        (2.0 * nf, hermite_poly(n, lambda))
    } else {
        (2.0 * (nf + 2.0 * lambda - 1.0), hermite_poly(n - 1, lambda))
    };
    Ok(FactorResult::new(n, weight, op, sq, Branch::DunklClosedForm, p))
}

/// `n₀ = (λ - 1/2)(2μ - 1)`.
pub fn dunkl_threshold(lambda: f64, mu: f64) -> f64 {
    (lambda - 0.5) * (2.0 * mu - 1.0)
}

/// `M_n(L2(|x|^{2λ}(1-x²)^{μ-1/2}), √(1-x²) D_λ)`, `λ ≥ 0`.
pub fn factor_gegenbauer_dunkl(n: usize, lambda: f64, mu: f64) -> Result<FactorResult> {
    check_degree(n)?;
    let weight = WeightSpec::gegenbauer(lambda, mu)?;
    let op = OperatorSpec::dunkl(true);
    let nf = n as f64;
    let closed = nf * (nf + 2.0 * lambda + 2.0 * mu);
    let n0 = dunkl_threshold(lambda, mu);
    let (sq, p) = if n % 2 == 1 {
        (eigenvalue_sq(Family::Gegenbauer, n, lambda, mu), gegenbauer_poly(n, lambda, mu))
    } else if (2.0 * lambda - 1.0) * (2.0 * mu - 1.0) <= 4.0 || nf >= n0 {
        (closed, gegenbauer_poly(n, lambda, mu))
    } else {
        (closed + 2.0 * (n0 - nf), gegenbauer_poly(n - 1, lambda, mu))
    };
    Ok(FactorResult::new(n, weight, op, sq, Branch::DunklClosedForm, p))
}

/// Dispatches on weight family and operator kind. The Gegenbauer factors are only
/// defined for the damped operator.
pub fn factor(n: usize, weight: &WeightSpec, op: &OperatorSpec) -> Result<FactorResult> {
    if weight.family == Family::Gegenbauer && !op.damped {
        return Err(Error::domain("Gegenbauer factors require the damped operator"));
    }
    let mut r = match (weight.family, op.kind) {
        (Family::Hermite, OperatorKind::Classical) => factor_hermite_ddx(n, weight.lambda)?,
        (Family::Hermite, OperatorKind::Dunkl) => factor_hermite_dunkl(n, weight.lambda)?,
        (Family::Gegenbauer, OperatorKind::Classical) => factor_gegenbauer_ddx(n, weight.lambda, weight.mu)?,
        (Family::Gegenbauer, OperatorKind::Dunkl) => factor_gegenbauer_dunkl(n, weight.lambda, weight.mu)?,
    };
    r.operator = *op;
    Ok(r)
}
