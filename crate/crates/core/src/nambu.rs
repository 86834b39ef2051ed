//! Real Nambu (Majorana) representation of quadratic hamiltonians.
//!
//! Mode `j` (0-based) contributes the Majorana operators
//! `c_{2j} = a_j + a_j†` and `c_{2j+1} = i(a_j − a_j†)`, which form the fixed
//! orthonormal basis of `W_R`. A quadratic operator `X` acts on `W_R` by
//! `i[X, c_l] = Σ_k M_{kl} c_k`; for hamiltonians this `M` is real
//! antisymmetric and is what [`NambuHamiltonian`] stores.

use num_complex::Complex64;

use crate::linalg::{antisym_residual, antisymmetrize, cmax_abs, max_abs, min_singular, sym_fn, CMat, Mat};
use crate::{Error, Result};

/// Fock-space coefficients of
/// `H = Σ_ij ½A_ij(a_i†a_j − a_j a_i†) + B_ij a_i a_j + B̄_ij a_j† a_i†`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockQuadratic {
    a: CMat,
    b: CMat,
}

impl FockQuadratic {
    /// Validates that `a` is hermitian and `b` antisymmetric within `tol`.
    pub fn new(a: CMat, b: CMat, tol: f64) -> Result<Self> {
        let n = a.nrows();
        if n == 0 || a.ncols() != n || b.shape() != (n, n) {
            return Err(Error::Validation(format!(
                "A and B must be square of equal positive size, got {:?} and {:?}",
                a.shape(),
                b.shape()
            )));
        }
        let herm = cmax_abs(&(&a - a.adjoint()));
        if herm > tol {
            return Err(Error::Validation(format!("A is not hermitian (residual {herm:.3e})")));
        }
        let anti = cmax_abs(&(&b + b.transpose()));
        if anti > tol {
            return Err(Error::Validation(format!(
                "B is not antisymmetric (residual {anti:.3e})"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn modes(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &CMat {
        &self.a
    }

    pub fn b(&self) -> &CMat {
        &self.b
    }
}

/// Real antisymmetric matrix of `iH` on `W_R` in the Majorana basis.
#[derive(Debug, Clone, PartialEq)]
pub struct NambuHamiltonian {
    matrix: Mat,
}

impl NambuHamiltonian {
    pub fn new(matrix: Mat, tol: f64) -> Result<Self> {
        let n = matrix.nrows();
        if n == 0 || n % 2 == 1 || matrix.ncols() != n {
            return Err(Error::Validation(format!(
                "Nambu matrix must be square of even positive size, got {:?}",
                matrix.shape()
            )));
        }
        let res = antisym_residual(&matrix);
        if res > tol {
            return Err(Error::Validation(format!(
                "Nambu matrix is not antisymmetric (residual {res:.3e})"
            )));
        }
        Ok(Self {
            matrix: antisymmetrize(&matrix),
        })
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn into_matrix(self) -> Mat {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Maps Fock coefficients to the Nambu matrix.
///
/// With `a = U c` and `a† = V c`, the hamiltonian is `cᵀQc` up to a
/// constant, and `i[cᵀQc, c_m] = Σ_k 2i(Q − Qᵀ)_{km} c_k`.
pub fn fock_to_nambu(fq: &FockQuadratic) -> NambuHamiltonian {
    let n = fq.modes();
    let half = Complex64::new(0.5, 0.0);
    let mut u = CMat::zeros(n, 2 * n);
    let mut v = CMat::zeros(n, 2 * n);
    for j in 0..n {
        u[(j, 2 * j)] = half;
        u[(j, 2 * j + 1)] = Complex64::new(0.0, -0.5);
        v[(j, 2 * j)] = half;
        v[(j, 2 * j + 1)] = Complex64::new(0.0, 0.5);
    }
    let vau = v.transpose() * &fq.a * &u;
    let q = (&vau - vau.transpose()) * half
        + u.transpose() * &fq.b * &u
        + v.transpose() * fq.b.conjugate().transpose() * &v;
    let m = (&q - q.transpose()) * Complex64::new(0.0, 2.0);
    let real = m.map(|z| z.re);
    NambuHamiltonian {
        matrix: antisymmetrize(&real),
    }
}

/// Householder reflection `I − 2·w0·w0ᵀ` in the hyperplane orthogonal to `w0`.
pub fn build_reflection(w0: &[f64], tol: f64) -> Result<Mat> {
    let norm = w0.iter().map(|x| x * x).sum::<f64>().sqrt();
    if w0.is_empty() || (norm - 1.0).abs() > tol {
        return Err(Error::Validation(format!(
            "reflection vector must have unit length, got {norm:.6}"
        )));
    }
    let n = w0.len();
    Ok(Mat::from_fn(n, n, |i, j| {
        let d = if i == j { 1.0 } else { 0.0 };
        d - 2.0 * w0[i] * w0[j]
    }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    pub gapped: bool,
    pub gap: f64,
}

/// `gap` is the smallest `|μ|` over eigenvalues `iμ`, i.e. the smallest
/// singular value of the antisymmetric matrix.
pub fn check_gap(h: &Mat, tol: f64) -> GapReport {
    let gap = min_singular(h);
    GapReport { gapped: gap > tol, gap }
}

/// Spectral flattening `h·(−h²)^{−1/2}`.
pub fn flatten(h: &NambuHamiltonian, tol: f64) -> Result<NambuHamiltonian> {
    Ok(NambuHamiltonian {
        matrix: flatten_matrix(h.matrix(), tol)?,
    })
}

/// Flattening of a bare antisymmetric matrix; used on block hamiltonians.
///
/// `−h² = hᵀh` is positive definite for gapped `h`; every rotation plane of
/// `h` is an eigenspace of it, so the inverse square root rescales each
/// plane's speed to one.
pub fn flatten_matrix(h: &Mat, tol: f64) -> Result<Mat> {
    let report = check_gap(h, tol);
    if !report.gapped {
        return Err(Error::Gapless { gap: report.gap, tol });
    }
    let inv_sqrt = sym_fn(&(h.transpose() * h), |x| 1.0 / x.sqrt());
    let flat = antisymmetrize(&(h * inv_sqrt));
    let n = h.nrows();
    let res = max_abs(&(&flat * &flat + Mat::identity(n, n)));
    if res > (tol * 1e3).max(1e-9) {
        return Err(Error::Flattening(format!(
            "flattened matrix squares to -I only up to {res:.3e}"
        )));
    }
    Ok(flat)
}

/// Point `t ∈ [0, 1]` of the straight-line flattening homotopy
/// `(1 − t)·h + t·h̃`, which stays gapped because `h` and `h̃` share
/// rotation planes.
pub fn flatten_path_point(h: &Mat, flat: &Mat, t: f64) -> Mat {
    h * (1.0 - t) + flat * t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eps2, random_antisymmetric, random_orthogonal};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex64;

    /// Jordan–Wigner annihilators on the 2^n-dimensional Fock space.
    fn annihilators(n: usize) -> Vec<CMat> {
        let dim = 1usize << n;
        (0..n)
            .map(|j| {
                let mut a = CMat::zeros(dim, dim);
                for s in 0..dim {
                    if s & (1 << j) != 0 {
                        let parity = (s & ((1 << j) - 1)).count_ones();
                        let sign = if parity % 2 == 0 { 1.0 } else { -1.0 };
                        a[(s ^ (1 << j), s)] = C::new(sign, 0.0);
                    }
                }
                a
            })
            .collect()
    }

    /// Nambu matrix computed directly from Fock-space commutators.
    fn dense_oracle(a: &CMat, b: &CMat) -> Mat {
        let n = a.nrows();
        let dim = 1usize << n;
        let ops = annihilators(n);
        let dag: Vec<CMat> = ops.iter().map(|x| x.adjoint()).collect();
        let mut h = CMat::zeros(dim, dim);
        for i in 0..n {
            for j in 0..n {
                h += (&dag[i] * &ops[j] - &ops[j] * &dag[i]) * (a[(i, j)] * 0.5);
                h += &ops[i] * &ops[j] * b[(i, j)];
                h += &dag[j] * &dag[i] * b[(i, j)].conj();
            }
        }
        let mut majorana = Vec::new();
        for j in 0..n {
            majorana.push(&ops[j] + &dag[j]);
            majorana.push((&ops[j] - &dag[j]) * C::new(0.0, 1.0));
        }
        Mat::from_fn(2 * n, 2 * n, |k, l| {
            let comm = (&h * &majorana[l] - &majorana[l] * &h) * C::new(0.0, 1.0);
            let coeff = (&majorana[k] * comm).trace() / dim as f64;
            assert!(coeff.im.abs() < 1e-12);
            coeff.re
        })
    }

    fn random_fock(n: usize, rng: &mut ChaCha8Rng) -> (CMat, CMat) {
        let g = CMat::from_fn(n, n, |_, _| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let a = (&g + g.adjoint()) * C::new(0.5, 0.0);
        let k = CMat::from_fn(n, n, |_, _| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let b = (&k - k.transpose()) * C::new(0.5, 0.0);
        (a, b)
    }

    #[test]
    fn zero_hamiltonian_maps_to_zero() {
        let fq = FockQuadratic::new(CMat::zeros(3, 3), CMat::zeros(3, 3), 1e-9).unwrap();
        assert_eq!(max_abs(fock_to_nambu(&fq).matrix()), 0.0);
    }

    #[test]
    fn single_mode_energy() {
        let eps = 1.7;
        let fq = FockQuadratic::new(CMat::from_element(1, 1, C::new(eps, 0.0)), CMat::zeros(1, 1), 1e-9).unwrap();
        let m = fock_to_nambu(&fq).into_matrix();
        assert!(max_abs(&(&m - eps2() * eps)) < 1e-14);
        let oracle = dense_oracle(fq.a(), fq.b());
        assert!(max_abs(&(m - oracle)) < 1e-12);
    }

    #[test]
    fn pairing_matches_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (a, mut b) = random_fock(2, &mut rng);
        b[(0, 1)] = C::new(0.8, -0.3);
        b[(1, 0)] = -b[(0, 1)];
        let fq = FockQuadratic::new(a.clone(), b.clone(), 1e-9).unwrap();
        let m = fock_to_nambu(&fq).into_matrix();
        assert!(max_abs(&(m - dense_oracle(&a, &b))) < 1e-12);
    }

    #[test]
    fn random_inputs_match_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=4 {
            let (a, b) = random_fock(n, &mut rng);
            let fq = FockQuadratic::new(a.clone(), b.clone(), 1e-9).unwrap();
            let m = fock_to_nambu(&fq).into_matrix();
            assert!(antisym_residual(&m) < 1e-12);
            assert!(max_abs(&(m - dense_oracle(&a, &b))) < 1e-10, "n={n}");
        }
    }

    #[test]
    fn rejects_non_hermitian_a() {
        let a = CMat::from_row_slice(
            2,
            2,
            &[C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0)],
        );
        assert!(matches!(
            FockQuadratic::new(a, CMat::zeros(2, 2), 1e-9),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn rejects_symmetric_b() {
        let b = CMat::from_element(2, 2, C::new(1.0, 0.0));
        assert!(matches!(
            FockQuadratic::new(CMat::zeros(2, 2), b, 1e-9),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn reflection_examples() {
        let r = build_reflection(&[1.0, 0.0], 1e-9).unwrap();
        assert_eq!(r, Mat::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, 1.0]));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let r = build_reflection(&[s, s], 1e-9).unwrap();
        let expect = Mat::from_row_slice(2, 2, &[0.0, -1.0, -1.0, 0.0]);
        assert!(max_abs(&(&r - expect)) < 1e-15);
        assert!(max_abs(&(&r * &r - Mat::identity(2, 2))) < 1e-15);
        assert!((r.determinant() + 1.0).abs() < 1e-15);
        assert!(build_reflection(&[1.0, 1.0], 1e-9).is_err());
    }

    #[test]
    fn gap_examples() {
        let zero = check_gap(&Mat::zeros(2, 2), 1e-9);
        assert!(!zero.gapped);
        assert_eq!(zero.gap, 0.0);
        let g = check_gap(&(eps2() * 2.0), 1e-9);
        assert!(g.gapped);
        assert!((g.gap - 2.0).abs() < 1e-14);
    }

    #[test]
    fn flatten_examples() {
        let unit = flatten_matrix(&eps2(), 1e-9).unwrap();
        assert!(max_abs(&(unit - eps2())) < 1e-15);
        let scaled = flatten_matrix(&(eps2() * 3.0), 1e-9).unwrap();
        assert!(max_abs(&(scaled - eps2())) < 1e-15);
        let two_speeds = crate::linalg::direct_sum(&[eps2() * 2.0, eps2() * 5.0]);
        let flat = flatten_matrix(&two_speeds, 1e-9).unwrap();
        let expect = crate::linalg::direct_sum(&[eps2(), eps2()]);
        assert!(max_abs(&(flat - expect)) < 1e-14);
    }

    #[test]
    fn flatten_rejects_gapless() {
        let h = NambuHamiltonian::new(Mat::zeros(2, 2), 1e-9).unwrap();
        assert!(matches!(flatten(&h, 1e-9), Err(Error::Gapless { .. })));
    }

    #[test]
    fn flattened_gap_is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = random_antisymmetric(8, &mut rng);
        let flat = flatten_matrix(&h, 1e-9).unwrap();
        assert!((check_gap(&flat, 1e-9).gap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn flatten_respects_commutant() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let q = random_orthogonal(4, &mut rng);
        let h = &q * crate::linalg::direct_sum(&[eps2() * 0.5, eps2() * 3.0]) * q.transpose();
        let c = &q * crate::linalg::direct_sum(&[Mat::identity(2, 2), Mat::identity(2, 2) * -1.0]) * q.transpose();
        let flat = flatten_matrix(&h, 1e-9).unwrap();
        assert!(max_abs(&crate::linalg::commutator(&c, &h)) < 1e-12);
        assert!(max_abs(&crate::linalg::commutator(&c, &flat)) < 1e-12);
    }
}
