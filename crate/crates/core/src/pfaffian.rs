//! Pfaffians of real antisymmetric matrices.

use crate::linalg::Mat;

/// Pfaffian; recursive expansion up to dimension 8, Householder
/// skew-tridiagonalization above.
pub fn pfaffian(a: &Mat) -> f64 {
    if a.nrows() <= 8 {
        pfaffian_recursive(a)
    } else {
        pfaffian_householder(a)
    }
}

/// Expansion along the first row. Exponential cost; intended for small
/// matrices and as a reference for [`pfaffian_householder`].
pub fn pfaffian_recursive(a: &Mat) -> f64 {
    let idx: Vec<usize> = (0..a.nrows()).collect();
    expand(a, &idx)
}

fn expand(a: &Mat, idx: &[usize]) -> f64 {
    let n = idx.len();
    if n == 0 {
        return 1.0;
    }
    if n % 2 == 1 {
        return 0.0;
    }
    let first = idx[0];
    let mut total = 0.0;
    for j in 1..n {
        let entry = a[(first, idx[j])];
        if entry == 0.0 {
            continue;
        }
        let rest: Vec<usize> = idx[1..]
            .iter()
            .enumerate()
            .filter(|&(k, _)| k + 1 != j)
            .map(|(_, &v)| v)
            .collect();
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * entry * expand(a, &rest);
    }
    total
}

/// Householder reduction `T = Q A Qᵀ` to skew-tridiagonal form, then
/// `Pf(A) = det(Q) · T₀₁ T₂₃ ⋯`.
pub fn pfaffian_householder(a: &Mat) -> f64 {
    let n = a.nrows();
    if n % 2 == 1 {
        return 0.0;
    }
    let mut t = a.clone();
    let mut det_q = 1.0;
    for k in 0..n.saturating_sub(2) {
        let x: Vec<f64> = (k + 1..n).map(|r| t[(r, k)]).collect();
        let tail: f64 = x[1..].iter().map(|v| v * v).sum();
        if tail == 0.0 {
            continue;
        }
        let norm = (x[0] * x[0] + tail).sqrt();
        let alpha = if x[0] > 0.0 { -norm } else { norm };
        let mut v = x.clone();
        v[0] -= alpha;
        let vn: f64 = v.iter().map(|e| e * e).sum::<f64>().sqrt();
        for e in &mut v {
            *e /= vn;
        }
        // H = I - 2vvᵀ on indices k+1..n; apply T <- H T H.
        let m = n - k - 1;
        let mut hm = Mat::identity(n, n);
        for i in 0..m {
            for j in 0..m {
                hm[(k + 1 + i, k + 1 + j)] -= 2.0 * v[i] * v[j];
            }
        }
        t = &hm * &t * &hm;
        det_q = -det_q;
    }
    let mut pf = det_q;
    for i in (0..n).step_by(2) {
        pf *= t[(i, i + 1)];
    }
    pf
}
