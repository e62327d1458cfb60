//! Small dense symmetric kernels for the pencil solver: Cholesky and cyclic Jacobi.
//! Matrices are row-major `Vec<Vec<f64>>`; sizes here never exceed a few dozen.

pub type Matrix = Vec<Vec<f64>>;

pub fn zeros(n: usize) -> Matrix {
    vec![vec![0.0; n]; n]
}

pub fn frobenius(a: &Matrix) -> f64 {
    a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// Lower-triangular `L` with `a = L Lᵀ`, or `None` on a non-positive pivot.
pub fn cholesky(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut l = zeros(n);
    for j in 0..n {
        let mut d = a[j][j];
        for k in 0..j {
            d -= l[j][k] * l[j][k];
        }
        if !(d > 0.0) {
            return None;
        }
        let djj = d.sqrt();
        l[j][j] = djj;
        for i in j + 1..n {
            let mut s = a[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            l[i][j] = s / djj;
        }
    }
    Some(l)
}

/// Solves `L x = b` for lower-triangular `L`.
pub fn forward_sub(l: &Matrix, b: &[f64]) -> Vec<f64> {
    let n = l.len();
    let mut x = vec![0.0; n];
    for i in 0..n {
        let s: f64 = (0..i).map(|k| l[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / l[i][i];
    }
    x
}

/// Solves `Lᵀ x = b` for lower-triangular `L`.
pub fn backward_sub_transposed(l: &Matrix, b: &[f64]) -> Vec<f64> {
    let n = l.len();
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| l[k][i] * x[k]).sum();
        x[i] = (b[i] - s) / l[i][i];
    }
    x
}

/// `L⁻¹ A L⁻ᵀ`, symmetrized against roundoff.
pub fn congruence_inverse(l: &Matrix, a: &Matrix) -> Matrix {
    let n = l.len();
    // columns of L⁻¹ A
    let cols: Vec<Vec<f64>> = (0..n)
        .map(|j| forward_sub(l, &(0..n).map(|i| a[i][j]).collect::<Vec<_>>()))
        .collect();
    let y = transpose(&cols);
    // (L⁻¹ (L⁻¹ A)ᵀ)ᵀ = L⁻¹ A L⁻ᵀ
    let rows: Vec<Vec<f64>> = (0..n).map(|i| forward_sub(l, &y[i])).collect();
    let c = transpose(&rows);
    (0..n).map(|i| (0..n).map(|j| 0.5 * (c[i][j] + c[j][i])).collect()).collect()
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues and the matching unit eigenvectors (as columns, i.e. `vectors[k]`
/// is the vector for `values[k]`).
pub fn jacobi_eigen(a: &Matrix) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut a = a.clone();
    let mut v = zeros(n);
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let scale = frobenius(&a).max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i][i]).collect();
    let vectors = (0..n).map(|k| (0..n).map(|i| v[i][k]).collect()).collect();
    (values, vectors)
}
