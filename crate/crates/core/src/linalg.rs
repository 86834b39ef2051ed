//! Dense real linear algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

pub type Mat = DMatrix<f64>;
pub type CMat = DMatrix<Complex64>;

/// Largest absolute entry; zero for empty matrices.
pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

pub fn cmax_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.norm()))
}

pub fn antisym_residual(m: &Mat) -> f64 {
    max_abs(&(m + m.transpose()))
}

pub fn orth_residual(m: &Mat) -> f64 {
    let n = m.ncols();
    max_abs(&(m.transpose() * m - Mat::identity(n, n)))
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    a * b - b * a
}

pub fn anticommutator(a: &Mat, b: &Mat) -> Mat {
    a * b + b * a
}

/// Projects onto the antisymmetric part, removing rounding asymmetry.
pub fn antisymmetrize(m: &Mat) -> Mat {
    (m - m.transpose()) * 0.5
}

pub fn symmetrize(m: &Mat) -> Mat {
    (m + m.transpose()) * 0.5
}

/// Eigen-decomposition of a symmetric matrix with ascending eigenvalues.
pub fn sym_eigen(m: &Mat) -> (Vec<f64>, Mat) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), Mat::zeros(0, 0));
    }
    let e = symmetrize(m).symmetric_eigen();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| e.eigenvalues[i].total_cmp(&e.eigenvalues[j]));
    let vals = idx.iter().map(|&i| e.eigenvalues[i]).collect();
    let vecs = Mat::from_fn(n, n, |r, c| e.eigenvectors[(r, idx[c])]);
    (vals, vecs)
}

/// Applies a scalar function to a symmetric matrix through its spectrum.
pub fn sym_fn(m: &Mat, f: impl Fn(f64) -> f64) -> Mat {
    let (vals, vecs) = sym_eigen(m);
    let d = DVector::from_iterator(vals.len(), vals.into_iter().map(f));
    &vecs * Mat::from_diagonal(&d) * vecs.transpose()
}

/// Orthonormalizes `vectors` in order with two Gram–Schmidt passes,
/// dropping any vector whose residual norm falls below `tol`.
pub fn gram_schmidt(vectors: &[DVector<f64>], tol: f64) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let p = b.dot(&w);
                w.axpy(-p, b, 1.0);
            }
        }
        let n = w.norm();
        if n > tol {
            basis.push(w / n);
        }
    }
    basis
}

/// Orthonormal basis of the column span of `m`, in column order.
pub fn column_basis(m: &Mat, tol: f64) -> Mat {
    let cols: Vec<DVector<f64>> = m.column_iter().map(|c| c.into_owned()).collect();
    from_columns(m.nrows(), &gram_schmidt(&cols, tol))
}

pub fn from_columns(nrows: usize, cols: &[DVector<f64>]) -> Mat {
    if cols.is_empty() {
        return Mat::zeros(nrows, 0);
    }
    Mat::from_columns(cols)
}

/// Orthonormal basis of the (numerical) null space of `m`: right singular
/// vectors whose singular value is below `tol` relative to the largest one
/// (absolute when `m` is tiny).
pub fn null_space(m: &Mat, tol: f64) -> Mat {
    let n = m.ncols();
    if n == 0 {
        return Mat::zeros(0, 0);
    }
    // Pad to at least n rows so the SVD returns a full set of right vectors.
    let padded = if m.nrows() < n {
        let mut p = Mat::zeros(n, n);
        p.view_mut((0, 0), m.shape()).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let scale = svd.singular_values.max().max(1.0);
    let cols: Vec<DVector<f64>> = (0..n)
        .filter(|&i| svd.singular_values[i] <= tol * scale)
        .map(|i| v_t.row(i).transpose())
        .collect();
    from_columns(n, &cols)
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    Mat::from_fn(ar * br, ac * bc, |r, c| a[(r / br, c / bc)] * b[(r % br, c % bc)])
}

/// Block-diagonal direct sum.
pub fn direct_sum(blocks: &[Mat]) -> Mat {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = Mat::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), b.shape()).copy_from(b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

/// Smallest singular value; zero for empty input is not meaningful, so
/// empty matrices report `f64::INFINITY`.
pub fn min_singular(m: &Mat) -> f64 {
    if m.nrows() == 0 {
        return f64::INFINITY;
    }
    let g = m.transpose() * m;
    let (vals, _) = sym_eigen(&g);
    vals[0].max(0.0).sqrt()
}

/// Spectral norm (largest singular value).
pub fn spectral_norm(m: &Mat) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let g = m.transpose() * m;
    let (vals, _) = sym_eigen(&g);
    vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Principal logarithm of a special orthogonal matrix without eigenvalue −1.
///
/// `W` is normal, so its symmetric part `S = cos Θ` and antisymmetric part
/// `A = sin Θ · J` commute and `log W = A · g(S)` with
/// `g(c) = arccos(c)/√(1−c²)`. The result has spectrum in `(−iπ, iπ)`.
pub fn orthogonal_log(w: &Mat, tol: f64) -> Result<Mat> {
    let s = symmetrize(w);
    let a = antisymmetrize(w);
    let (vals, _) = sym_eigen(&s);
    if let Some(&lo) = vals.first() {
        if lo < -1.0 + 1e-6 {
            return Err(Error::Numerical(format!(
                "orthogonal logarithm undefined: eigenvalue near -1 (cos = {lo:.3e})"
            )));
        }
    }
    let g = sym_fn(&s, |c| {
        let c = c.clamp(-1.0, 1.0);
        let x = 1.0 - c;
        if x < 1e-8 {
            1.0 + x / 3.0
        } else {
            c.acos() / (1.0 - c * c).sqrt()
        }
    });
    let l = antisymmetrize(&(&a * g));
    let check = antisym_exp(&l, 1.0);
    let res = max_abs(&(check - w));
    if res > tol.max(1e-8) {
        return Err(Error::Numerical(format!(
            "orthogonal logarithm failed round trip (residual {res:.3e})"
        )));
    }
    Ok(l)
}

/// `exp(t·L)` for antisymmetric `L`, via `cos(tΘ) + L·sin(tΘ)/Θ` with
/// `Θ = √(−L²)`.
pub fn antisym_exp(l: &Mat, t: f64) -> Mat {
    let theta2 = -(l * l);
    let c = sym_fn(&theta2, |x| (t * x.max(0.0).sqrt()).cos());
    let s = sym_fn(&theta2, |x| {
        let th = x.max(0.0).sqrt();
        if th < 1e-8 {
            t
        } else {
            (t * th).sin() / th
        }
    });
    c + l * s
}

/// Standard 2×2 symplectic unit `[[0,1],[-1,0]]`.
pub fn eps2() -> Mat {
    Mat::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])
}

pub fn sigma_x() -> Mat {
    Mat::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

pub fn sigma_z() -> Mat {
    Mat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
}

pub fn random_gaussian<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> Mat {
    Mat::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

pub fn random_antisymmetric<R: Rng>(n: usize, rng: &mut R) -> Mat {
    antisymmetrize(&random_gaussian(n, n, rng))
}

/// Haar-ish random orthogonal matrix (Gram–Schmidt of a Gaussian matrix).
pub fn random_orthogonal<R: Rng>(n: usize, rng: &mut R) -> Mat {
    loop {
        let g = random_gaussian(n, n, rng);
        let q = column_basis(&g, 1e-6);
        if q.ncols() == n {
            return q;
        }
    }
}

/// Real matrix to complex.
pub fn complexify(m: &Mat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}
