//! Odd elements `s ∈ G1`: orbit pairing of blocks and the factorization
//! `s|W_λ = ξ ⊗_F φ`.
//!
//! With copies `X_i` of `W_λ` and `X'_j` of `W_λ'`, the maps
//! `η_ij = X'_jᵀ S X_i` are twisted intertwiners `R_λ → R_λ'`, all equal
//! to one `ξ` up to commutant factors: `η_ij = ξ ψ_ij`. On the
//! multiplicity space, `φ(X) = S X ξ⁻¹` and it satisfies
//! `φ(X·f̂) = φ(X)·β(f̂)` with `β(f̂) = ξ f̂ ξ⁻¹`.

use num_complex::Complex64;

use crate::group::{GroupAction, Parity};
use crate::isotypic::{DivisionAlgebra, IsotypicBlock};
use crate::linalg::{max_abs, null_space, Mat};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linearity {
    FLinear,
    CAntilinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaKind {
    Identity,
    Conjugation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiSquare {
    Plus,
    Minus,
    NotApplicable,
}

impl PhiSquare {
    pub fn as_i8(self) -> Option<i8> {
        match self {
            PhiSquare::Plus => Some(1),
            PhiSquare::Minus => Some(-1),
            PhiSquare::NotApplicable => None,
        }
    }
}

/// Extra facts about the element used for the factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CosetAnnotations {
    /// The element commutes with every group matrix.
    pub is_time_reversal: bool,
    /// Sign of `S²` on `W_R` when it is `±I`.
    pub nambu_s_sq_sign: Option<i8>,
    /// Sign of `ξ²` when it is a real multiple of the identity.
    pub xi_sq_sign: Option<i8>,
}

#[derive(Debug, Clone)]
pub struct CosetFactorization {
    /// Block index of `λ`.
    pub block: usize,
    /// Block index of `λ' = σ(λ)`.
    pub partner: usize,
    /// Group element `s` that was factorized.
    pub element: usize,
    /// `ξ: R_λ → R_λ'` (`d × d`).
    pub xi: Mat,
    /// `φ: E_λ → E_λ'` in the two `E` bases.
    pub phi: Mat,
    /// Coordinates of `β(f̂_b)` in the partner commutant basis (columns).
    pub beta: Mat,
    pub linearity: Linearity,
    pub beta_kind: BetaKind,
    pub phi_sq_sign: PhiSquare,
    pub annotations: CosetAnnotations,
}

/// Partner block index of every block under the odd coset.
///
/// Verifies that every `s ∈ G1` maps each `W_λ` onto one `W_λ'` and that
/// the pairing does not depend on `s`.
pub fn coset_orbits(act: &GroupAction, blocks: &[IsotypicBlock], tol: f64) -> Result<Vec<usize>> {
    let odd = act.odd_elements();
    if odd.is_empty() {
        return Err(Error::Precondition("the odd coset G1 is empty".into()));
    }
    let mut partner: Option<Vec<usize>> = None;
    for &s in &odd {
        let m = act.matrix(s);
        let mut this = Vec::with_capacity(blocks.len());
        for b in blocks {
            let image = m * &b.projector * m.transpose();
            let hit = blocks
                .iter()
                .position(|c| max_abs(&(&image - &c.projector)) < tol)
                .ok_or_else(|| {
                    Error::Numerical(format!(
                        "element {s} does not map block {} onto a single block",
                        b.lambda
                    ))
                })?;
            this.push(hit);
        }
        match &partner {
            None => partner = Some(this),
            Some(p) if *p != this => {
                return Err(Error::Numerical(format!(
                    "block pairing depends on the odd element (element {s})"
                )))
            }
            _ => {}
        }
    }
    Ok(partner.expect("odd coset is nonempty"))
}

/// Runs the factorization of `s` on block `b` (mapping to block `p`).
pub fn factorize(
    act: &GroupAction,
    blocks: &[IsotypicBlock],
    b: usize,
    p: usize,
    s: usize,
    tol: f64,
) -> Result<CosetFactorization> {
    if act.parity(s) != Parity::Odd {
        return Err(Error::Precondition(format!("element {s} is not in the odd coset")));
    }
    let src = &blocks[b];
    let dst = &blocks[p];
    if src.algebra != dst.algebra || src.real_degree != dst.real_degree || src.multiplicity != dst.multiplicity {
        return Err(Error::Numerical(format!(
            "blocks {} and {} paired by the odd coset have different structure",
            src.lambda, dst.lambda
        )));
    }
    let sm = act.matrix(s);
    let d = src.real_degree;
    let mult = src.multiplicity;
    // η_ij = X'_jᵀ S X_i
    let eta: Vec<Vec<Mat>> = src
        .copies
        .iter()
        .map(|xi| dst.copies.iter().map(|xj| xj.transpose() * sm * xi).collect())
        .collect();
    let (mut bi, mut bj, mut best) = (0, 0, 0.0);
    for (i, row) in eta.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let n = e.norm();
            if n > best {
                (bi, bj, best) = (i, j, n);
            }
        }
    }
    if best < 1e-8 {
        return Err(Error::Numerical(format!(
            "all maps eta vanish for block {}",
            src.lambda
        )));
    }
    let mut xi = &eta[bi][bj] / (best / (d as f64).sqrt());
    let schur = max_abs(&(xi.transpose() * &xi - Mat::identity(d, d)));
    if schur > tol {
        return Err(Error::Numerical(format!(
            "selected eta is not a scaled isometry (residual {schur:.3e})"
        )));
    }

    if b == p && src.algebra == DivisionAlgebra::Quaternion {
        xi = &xi * absorb_inner_automorphism(&xi, &src.commutant, tol)?;
    }

    let xi_inv = xi.transpose();
    // ψ_ij = ξ⁻¹ η_ij must lie in the commutant of R_λ.
    for row in &eta {
        for e in row {
            let psi = &xi_inv * e;
            for r in &src.irrep_model {
                let res = max_abs(&(&psi * r - r * &psi));
                if res > tol {
                    return Err(Error::Numerical(format!(
                        "psi is not an intertwiner for block {} (residual {res:.3e})",
                        src.lambda
                    )));
                }
            }
        }
    }

    let dim_f = src.algebra.real_dim();
    let beta = Mat::from_fn(dim_f, dim_f, |a, c| {
        let img = &xi * &src.commutant[c] * &xi_inv;
        dst.commutant[a].dot(&img) / d as f64
    });
    for c in 0..dim_f {
        let img = &xi * &src.commutant[c] * &xi_inv;
        let mut recon = Mat::zeros(d, d);
        for a in 0..dim_f {
            recon += &dst.commutant[a] * beta[(a, c)];
        }
        let res = max_abs(&(img - recon));
        if res > tol {
            return Err(Error::Numerical(format!(
                "beta does not map the commutant onto the partner commutant (residual {res:.3e})"
            )));
        }
    }

    // φ(X_c f̂_b) = Σ_j X'_j ξ ψ_cj f̂_b ξ⁻¹
    let mut phi = Mat::zeros(dst.dim_e(), src.dim_e());
    for (c, eta_c) in eta.iter().enumerate().take(mult) {
        for (fb, f) in src.commutant.iter().enumerate() {
            let mut image = Mat::zeros(act.dim(), d);
            for (j, xj) in dst.copies.iter().enumerate() {
                let psi = &xi_inv * &eta_c[j];
                image += xj * &xi * psi * f * &xi_inv;
            }
            let direct = sm * &src.e_basis[c * dim_f + fb] * &xi_inv;
            let res = max_abs(&(&image - &direct));
            if res > tol {
                return Err(Error::Numerical(format!(
                    "assembled phi disagrees with the direct action (residual {res:.3e})"
                )));
            }
            phi.set_column(c * dim_f + fb, &dst.e_coords(&image));
        }
    }

    let cf = CosetFactorization {
        block: b,
        partner: p,
        element: s,
        linearity: Linearity::FLinear,
        beta_kind: BetaKind::Identity,
        phi_sq_sign: PhiSquare::NotApplicable,
        annotations: annotations(act, s, &xi, b == p),
        xi,
        phi,
        beta,
    };
    let cf = classify_beta(cf, src.algebra);
    verify_reconstruction(act, blocks, &cf, tol)?;
    Ok(cf)
}

fn classify_beta(mut cf: CosetFactorization, algebra: DivisionAlgebra) -> CosetFactorization {
    if algebra == DivisionAlgebra::Complex && cf.beta[(1, 1)] < 0.0 {
        cf.linearity = Linearity::CAntilinear;
        cf.beta_kind = BetaKind::Conjugation;
    }
    cf
}

/// Unit quaternion `q̂` with `(ξq̂) f̂ (ξq̂)⁻¹ = f̂` for all `f`, normalized
/// to `|q| = 1` with first nonzero coordinate positive.
fn absorb_inner_automorphism(xi: &Mat, commutant: &[Mat], tol: f64) -> Result<Mat> {
    let d = xi.nrows();
    // unknown q̂ = Σ a_b f̂_b; equations ξ q̂ f̂ - f̂ ξ q̂ = 0 for f = î, ĵ
    let mut system = Mat::zeros(2 * d * d, 4);
    for (g, f) in commutant[1..3].iter().enumerate() {
        for (b, fb) in commutant.iter().enumerate() {
            let m = xi * fb * f - f * xi * fb;
            system
                .view_mut((g * d * d, b), (d * d, 1))
                .copy_from_slice(m.as_slice());
        }
    }
    let ns = null_space(&system, 1e-6);
    if ns.ncols() != 1 {
        return Err(Error::Numerical(format!(
            "inner automorphism solve has {} solutions instead of one",
            ns.ncols()
        )));
    }
    let mut a: Vec<f64> = ns.column(0).iter().copied().collect();
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let first = a.iter().copied().find(|x| x.abs() > 1e-8).unwrap_or(1.0);
    let sign = if first < 0.0 { -1.0 } else { 1.0 };
    for x in &mut a {
        *x *= sign / norm;
    }
    let mut q = Mat::zeros(d, d);
    for (fb, c) in commutant.iter().zip(&a) {
        q += fb * *c;
    }
    let res = max_abs(&(q.transpose() * &q - Mat::identity(d, d)));
    if res > tol {
        return Err(Error::Numerical(format!(
            "absorbing quaternion is not a unit (residual {res:.3e})"
        )));
    }
    Ok(q)
}

fn annotations(act: &GroupAction, s: usize, xi: &Mat, fixed: bool) -> CosetAnnotations {
    let sm = act.matrix(s);
    let n = act.dim();
    let central = act.matrices().iter().all(|m| max_abs(&(m * sm - sm * m)) < 1e-8);
    let sq = sm * sm;
    let nambu = scalar_sign(&sq, &Mat::identity(n, n));
    let xi_sq = if fixed {
        scalar_sign(&(xi * xi), &Mat::identity(xi.nrows(), xi.nrows()))
    } else {
        None
    };
    CosetAnnotations {
        is_time_reversal: central,
        nambu_s_sq_sign: nambu,
        xi_sq_sign: xi_sq,
    }
}

/// Sign of `c` when `m = c·id` with `c ≠ 0`.
fn scalar_sign(m: &Mat, id: &Mat) -> Option<i8> {
    let c = m.trace() / id.trace();
    if c.abs() < 1e-8 || max_abs(&(m - id * c)) > 1e-8 * c.abs().max(1.0) {
        return None;
    }
    Some(if c > 0.0 { 1 } else { -1 })
}

/// Checks `S|W_λ = Σ_c φ(X_c)·ξ·X_cᵀ`.
fn verify_reconstruction(act: &GroupAction, blocks: &[IsotypicBlock], cf: &CosetFactorization, tol: f64) -> Result<()> {
    let res = reconstruction_residual(act, blocks, cf);
    if res > tol {
        return Err(Error::Numerical(format!(
            "xi (x) phi does not reproduce s on block {} (residual {res:.3e})",
            blocks[cf.block].lambda
        )));
    }
    Ok(())
}

/// `‖S P_λ − Σ_c φ(X_c) ξ X_cᵀ‖_max`.
pub fn reconstruction_residual(act: &GroupAction, blocks: &[IsotypicBlock], cf: &CosetFactorization) -> f64 {
    let src = &blocks[cf.block];
    let dst = &blocks[cf.partner];
    let dim_f = src.algebra.real_dim();
    let mut recon = Mat::zeros(act.dim(), act.dim());
    for (c, x) in src.copies.iter().enumerate() {
        let image = dst.e_vector(&cf.phi.column(c * dim_f).into_owned());
        recon += image * &cf.xi * x.transpose();
    }
    max_abs(&(act.matrix(cf.element) * &src.projector - recon))
}

/// Matrices `L_f: X ↦ X·f̂` on `E_λ` for each commutant basis element.
pub fn left_multiplications(block: &IsotypicBlock) -> Vec<Mat> {
    block.commutant.iter().map(|f| block.e_operator(|x| x * f)).collect()
}

/// Rescales `ξ` and `φ` so that `φ² = ±1`, preserving `ξ ⊗ φ`.
///
/// For `C`-linear `φ` the complex scalar `φ²` is absorbed completely,
/// forcing the sign to `+1`. Transposed pairs get `NotApplicable`.
pub fn normalize_phi_sign(mut cf: CosetFactorization, block: &IsotypicBlock, tol: f64) -> Result<CosetFactorization> {
    if cf.block != cf.partner {
        cf.phi_sq_sign = PhiSquare::NotApplicable;
        return Ok(cf);
    }
    let ls = left_multiplications(block);
    let n = block.dim_e();
    let sq = &cf.phi * &cf.phi;
    let coeffs: Vec<f64> = ls.iter().map(|l| l.dot(&sq) / n as f64).collect();
    let mut recon = Mat::zeros(n, n);
    for (l, c) in ls.iter().zip(&coeffs) {
        recon += l * *c;
    }
    let scale = coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
    let res = max_abs(&(&sq - recon));
    if scale < 1e-10 || res > tol * scale.max(1.0) {
        return Err(Error::Numerical(format!(
            "phi squared is not a scalar of the division algebra (residual {res:.3e})"
        )));
    }
    // β(f_φ) = f_φ: the scalar is fixed by the automorphism.
    let dim_f = coeffs.len();
    let fixed: Vec<f64> = (0..dim_f)
        .map(|a| (0..dim_f).map(|c| cf.beta[(a, c)] * coeffs[c]).sum())
        .collect();
    let drift = fixed
        .iter()
        .zip(&coeffs)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    if drift > tol * scale.max(1.0) {
        return Err(Error::Numerical(format!(
            "phi squared is not fixed by beta (residual {drift:.3e})"
        )));
    }
    let complex_linear = block.algebra == DivisionAlgebra::Complex && cf.linearity == Linearity::FLinear;
    if complex_linear {
        let z = Complex64::new(coeffs[0], coeffs[1]);
        let w = (-0.5 * z.ln()).exp();
        let lw = &ls[0] * w.re + &ls[1] * w.im;
        cf.phi = lw * &cf.phi;
        let w_inv = w.inv();
        let w_inv_hat = &block.commutant[0] * w_inv.re + &block.commutant[1] * w_inv.im;
        cf.xi = &cf.xi * w_inv_hat;
        cf.phi_sq_sign = PhiSquare::Plus;
    } else {
        let imag = coeffs[1..].iter().map(|c| c.abs()).fold(0.0, f64::max);
        if imag > tol * scale.max(1.0) {
            return Err(Error::Numerical(format!(
                "phi squared has an imaginary part {imag:.3e} where a real scalar is required"
            )));
        }
        let c = coeffs[0];
        let r = c.abs().sqrt();
        cf.phi /= r;
        cf.xi *= r;
        cf.phi_sq_sign = if c > 0.0 { PhiSquare::Plus } else { PhiSquare::Minus };
    }
    let sq = &cf.phi * &cf.phi;
    let sign = cf.phi_sq_sign.as_i8().unwrap_or(1) as f64;
    let res = max_abs(&(sq - Mat::identity(n, n) * sign));
    if res > tol {
        return Err(Error::Numerical(format!(
            "normalized phi squared differs from +-1 (residual {res:.3e})"
        )));
    }
    Ok(cf)
}
