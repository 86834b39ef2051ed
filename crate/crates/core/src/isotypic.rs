//! Real isotypic decomposition `W_R = ⊕ R_λ ⊗_F E_λ` under the even
//! subgroup `G0`.
//!
//! Each block stores a concrete irreducible model `R_λ` and `mult`
//! isometric intertwiners `X_c: R_λ → W_R` spanning `W_λ`. The
//! multiplicity space `E_λ = Hom_{G0}(R_λ, W_R)` gets the orthonormal real
//! basis `e_(c,b) = X_c·f̂_b`, where `f̂_b` runs over the commutant basis
//! `[1, î, ĵ, ĵî]` (truncated to `dim F`), with inner product
//! `⟨X, Y⟩ = tr(XᵀY)/d_λ`. The left `F`-action on `E` is `X ↦ X·f̂`.

use nalgebra::DVector;
use rand::Rng;

use crate::group::{character_table, real_irrep_types, CharacterTable, FiniteGroup, GroupAction, RealIrrepType};
use crate::linalg::{column_basis, gram_schmidt, max_abs, random_gaussian, sym_eigen, symmetrize, Mat};
use crate::{Error, Result, Settings};

pub use crate::group::DivisionAlgebra;

/// The unitary subgroup `G0` with its character data.
#[derive(Debug, Clone)]
pub struct EvenPart {
    /// Indices of the `G0` elements in the full group.
    pub elements: Vec<usize>,
    pub group: FiniteGroup,
    pub table: CharacterTable,
    pub types: Vec<RealIrrepType>,
}

impl EvenPart {
    pub fn new(act: &GroupAction) -> Result<Self> {
        let elements = act.even_elements();
        let group = act.group().subgroup(&elements)?;
        let table = character_table(&group)?;
        let types = real_irrep_types(&table)?;
        Ok(Self {
            elements,
            group,
            table,
            types,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `G0` matrices in subgroup order.
    pub fn matrices<'a>(&'a self, act: &'a GroupAction) -> impl Iterator<Item = &'a Mat> + 'a {
        self.elements.iter().map(move |&g| act.matrix(g))
    }
}

/// Isotypic projectors `P_λ = (d/|G0|) Σ_g χ_λ(g) ρ(g)` for every real type
/// of nonzero multiplicity, paired with the type id.
pub fn isotypic_projectors(act: &GroupAction, even: &EvenPart) -> Vec<(usize, Mat)> {
    let n = act.dim();
    let order = even.order() as f64;
    let mut out = Vec::new();
    for ty in &even.types {
        let mut p = Mat::zeros(n, n);
        for (sub, m) in even.matrices(act).enumerate() {
            let w = ty.character_sum(&even.table, sub);
            if w != 0.0 {
                p += m * w;
            }
        }
        p *= ty.complex_degree as f64 / order;
        let p = symmetrize(&p);
        if p.trace().round() as usize > 0 {
            out.push((ty.id, p));
        }
    }
    out
}

/// One isotypic component together with its multiplicity-space data.
#[derive(Debug, Clone)]
pub struct IsotypicBlock {
    pub lambda: usize,
    pub algebra: DivisionAlgebra,
    /// Real dimension `d_λ` of the irreducible model.
    pub real_degree: usize,
    pub multiplicity: usize,
    pub projector: Mat,
    /// `R_λ(g)` for each `G0` element, in subgroup order.
    pub irrep_model: Vec<Mat>,
    /// Isometric intertwiners `X_c`, `ρ(g)X_c = X_c R_λ(g)`.
    pub copies: Vec<Mat>,
    /// Orthonormal commutant basis `[1, î, ĵ, ĵî]` of `R_λ` (truncated).
    pub commutant: Vec<Mat>,
    /// Basis `e_(c,b) = X_c·f̂_b` of `E_λ`, index `c·dim F + b`.
    pub e_basis: Vec<Mat>,
    /// Matrices of `X ↦ X·î` and `X ↦ X·ĵ` on `E_λ`.
    pub f_gens: Vec<Mat>,
}

impl IsotypicBlock {
    /// Real dimension of `E_λ`.
    pub fn dim_e(&self) -> usize {
        self.e_basis.len()
    }

    /// Dimension of `E_λ` over its division algebra.
    pub fn dim_e_over_f(&self) -> usize {
        self.multiplicity
    }

    /// Orthonormal `2N × (d_λ·mult)` basis of `W_λ`.
    pub fn block_basis(&self) -> Mat {
        let n = self.projector.nrows();
        let mut out = Mat::zeros(n, self.real_degree * self.multiplicity);
        for (c, x) in self.copies.iter().enumerate() {
            out.view_mut((0, c * self.real_degree), x.shape()).copy_from(x);
        }
        out
    }

    pub fn inner(&self, x: &Mat, y: &Mat) -> f64 {
        x.dot(y) / self.real_degree as f64
    }

    /// Coordinates of an intertwiner `R_λ → W_R` in the `E` basis.
    pub fn e_coords(&self, x: &Mat) -> DVector<f64> {
        DVector::from_iterator(self.dim_e(), self.e_basis.iter().map(|e| self.inner(e, x)))
    }

    /// Intertwiner with the given `E` coordinates.
    pub fn e_vector(&self, coords: &DVector<f64>) -> Mat {
        let mut out = Mat::zeros(self.projector.nrows(), self.real_degree);
        for (e, &c) in self.e_basis.iter().zip(coords.iter()) {
            out += e * c;
        }
        out
    }

    /// Matrix on `E_λ` of a real-linear map on intertwiners.
    pub fn e_operator(&self, f: impl Fn(&Mat) -> Mat) -> Mat {
        let n = self.dim_e();
        let mut out = Mat::zeros(n, n);
        for (b, e) in self.e_basis.iter().enumerate() {
            out.set_column(b, &self.e_coords(&f(e)));
        }
        out
    }

    /// The operator `1 ⊗_F a` on `W_R` for an `F`-linear `a` on `E_λ`.
    pub fn embed(&self, a: &Mat) -> Mat {
        let n = self.projector.nrows();
        let dim_f = self.algebra.real_dim();
        let mut out = Mat::zeros(n, n);
        for (c, x) in self.copies.iter().enumerate() {
            let image = self.e_vector(&a.column(c * dim_f).into_owned());
            out += image * x.transpose();
        }
        out
    }
}

/// Builds the block of real type `ty`; `projector` must be its `P_λ`.
pub fn build_block(
    act: &GroupAction,
    even: &EvenPart,
    ty: &RealIrrepType,
    projector: &Mat,
    settings: &Settings,
) -> Result<IsotypicBlock> {
    let check_tol = settings.internal_tol().max(1e-8);
    let basis = column_basis(projector, 1e-6);
    let rank = basis.ncols();
    let d = ty.real_degree;
    if rank == 0 || !rank.is_multiple_of(d) {
        return Err(Error::Numerical(format!(
            "isotypic block {} has rank {rank}, not a positive multiple of {d}",
            ty.id
        )));
    }
    let mult = rank / d;
    let mats: Vec<&Mat> = even.matrices(act).collect();
    let (irrep_model, copies) = if d == 1 && ty.algebra == DivisionAlgebra::Real {
        let model = (0..mats.len())
            .map(|sub| Mat::from_element(1, 1, ty.character_sum(&even.table, sub)))
            .collect();
        let copies = (0..mult).map(|c| basis.columns(c, 1).into_owned()).collect();
        (model, copies)
    } else {
        split_copies(&mats, &basis, d, mult, ty.id, settings)?
    };
    let commutant = commutant_basis(&irrep_model, ty.algebra, check_tol)?;
    let dim_f = commutant.len();
    let mut e_basis = Vec::with_capacity(mult * dim_f);
    for x in &copies {
        for f in &commutant {
            e_basis.push(x * f);
        }
    }
    let mut block = IsotypicBlock {
        lambda: ty.id,
        algebra: ty.algebra,
        real_degree: d,
        multiplicity: mult,
        projector: projector.clone(),
        irrep_model,
        copies,
        commutant,
        e_basis,
        f_gens: Vec::new(),
    };
    let gens: Vec<Mat> = block.commutant[1..dim_f.min(3)].to_vec();
    block.f_gens = gens.iter().map(|f| block.e_operator(|x| x * f)).collect();
    verify_block(&block, &mats, check_tol)?;
    Ok(block)
}

/// Finds one irreducible subspace per copy by diagonalizing a group-averaged
/// random symmetric matrix, then aligns every copy to the first one with
/// averaged intertwiners.
fn split_copies(
    mats: &[&Mat],
    basis: &Mat,
    d: usize,
    mult: usize,
    lambda: usize,
    settings: &Settings,
) -> Result<(Vec<Mat>, Vec<Mat>)> {
    let rank = basis.ncols();
    let restricted: Vec<Mat> = mats.iter().map(|m| basis.transpose() * *m * basis).collect();
    let mut rng = settings.rng(0x6973_6f00 + lambda as u64);
    for _attempt in 0..24 {
        let s = symmetrize(&random_gaussian(rank, rank, &mut rng));
        let mut avg = Mat::zeros(rank, rank);
        for r in &restricted {
            avg += r * &s * r.transpose();
        }
        avg /= restricted.len() as f64;
        let (vals, vecs) = sym_eigen(&avg);
        let spread = vals.last().unwrap() - vals[0];
        let scale = spread.max(1e-3);
        let mut ok = true;
        for c in 0..mult {
            let lo = vals[c * d];
            let hi = vals[c * d + d - 1];
            if hi - lo > 1e-8 * scale.max(1.0) {
                ok = false;
            }
            if c + 1 < mult && vals[(c + 1) * d] - hi < 1e-5 * scale {
                ok = false;
            }
        }
        if !ok {
            continue;
        }
        let x0 = basis * vecs.columns(0, d);
        let model: Vec<Mat> = mats.iter().map(|m| x0.transpose() * *m * &x0).collect();
        let mut copies = vec![x0.clone()];
        for c in 1..mult {
            let yc = basis * vecs.columns(c * d, d);
            let mut found = None;
            for _ in 0..8 {
                let z = random_gaussian(d, d, &mut rng);
                let y = &yc * z;
                let mut t = Mat::zeros(basis.nrows(), d);
                for (m, r) in mats.iter().zip(&model) {
                    t += *m * &y * r.transpose();
                }
                t /= mats.len() as f64;
                let norm2 = t.norm_squared() / d as f64;
                if norm2 > 1e-6 {
                    found = Some(t / norm2.sqrt());
                    break;
                }
            }
            copies.push(
                found
                    .ok_or_else(|| Error::Numerical(format!("no intertwiner found for copy {c} of block {lambda}")))?,
            );
        }
        return Ok((model, copies));
    }
    Err(Error::Numerical(format!(
        "could not split block {lambda} into irreducible copies"
    )))
}

/// Orthonormal basis of the commutant of an orthogonal representation,
/// obtained by group-averaging elementary matrices.
pub fn commutant_raw(model: &[Mat], tol: f64) -> Vec<Mat> {
    let d = model[0].nrows();
    let avg = |x: &Mat| {
        let mut out = Mat::zeros(d, d);
        for r in model {
            out += r * x * r.transpose();
        }
        out / model.len() as f64
    };
    let mut candidates = vec![DVector::from_column_slice(Mat::identity(d, d).as_slice())];
    for a in 0..d {
        for b in 0..d {
            let mut e = Mat::zeros(d, d);
            e[(a, b)] = 1.0;
            candidates.push(DVector::from_column_slice(avg(&e).as_slice()));
        }
    }
    let scale = (d as f64).sqrt();
    gram_schmidt(&candidates, tol.max(1e-7))
        .into_iter()
        .map(|v| Mat::from_column_slice(d, d, (v * scale).as_slice()))
        .collect()
}

/// Canonical commutant basis `[1, î, ĵ, ĵî]` with `î² = ĵ² = −1`.
fn commutant_basis(model: &[Mat], algebra: DivisionAlgebra, tol: f64) -> Result<Vec<Mat>> {
    let raw = commutant_raw(model, tol);
    let dim = raw.len();
    if ![1, 2, 4].contains(&dim) {
        return Err(Error::Numerical(format!(
            "commutant dimension {dim} is not 1, 2 or 4; tolerance too loose or tight"
        )));
    }
    if dim != algebra.real_dim() {
        return Err(Error::Numerical(format!(
            "commutant dimension {dim} does not match the {algebra} type predicted by the character table"
        )));
    }
    let d = model[0].nrows();
    let id = Mat::identity(d, d);
    let mut basis = vec![id.clone()];
    if dim >= 2 {
        basis.push(raw[1].clone());
    }
    if dim == 4 {
        basis.push(raw[2].clone());
        basis.push(&raw[2] * &raw[1]);
    }
    for f in &basis[1..] {
        let r = max_abs(&(f * f + &id));
        if r > tol {
            return Err(Error::Numerical(format!(
                "commutant generator does not square to -1 (residual {r:.3e})"
            )));
        }
    }
    Ok(basis)
}

fn verify_block(block: &IsotypicBlock, mats: &[&Mat], tol: f64) -> Result<()> {
    let n = block.projector.nrows();
    let mut recon = Mat::zeros(n, n);
    for x in &block.copies {
        recon += x * x.transpose();
        for (m, r) in mats.iter().zip(&block.irrep_model) {
            let res = max_abs(&(*m * x - x * r));
            if res > tol {
                return Err(Error::Numerical(format!(
                    "copy of block {} is not an intertwiner (residual {res:.3e})",
                    block.lambda
                )));
            }
        }
    }
    let res = max_abs(&(recon - &block.projector));
    if res > tol {
        return Err(Error::Numerical(format!(
            "copies of block {} do not reconstruct its projector (residual {res:.3e})",
            block.lambda
        )));
    }
    for (a, ea) in block.e_basis.iter().enumerate() {
        for (b, eb) in block.e_basis.iter().enumerate() {
            let expect = if a == b { 1.0 } else { 0.0 };
            if (block.inner(ea, eb) - expect).abs() > tol {
                return Err(Error::Numerical(format!(
                    "E basis of block {} is not orthonormal",
                    block.lambda
                )));
            }
        }
    }
    Ok(())
}

/// All blocks of nonzero multiplicity, ordered by real type id.
pub fn build_blocks(act: &GroupAction, even: &EvenPart, settings: &Settings) -> Result<Vec<IsotypicBlock>> {
    isotypic_projectors(act, even)
        .iter()
        .map(|(id, p)| build_block(act, even, &even.types[*id], p, settings))
        .collect()
}

/// `h_λ` on `E_λ` for one block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockHamiltonian {
    pub lambda: usize,
    pub h: Mat,
}

/// Checks that `h` commutes with every `G0` matrix.
pub fn check_even_symmetry(h: &Mat, act: &GroupAction, tol: f64) -> Result<()> {
    for g in act.even_elements() {
        let m = act.matrix(g);
        let res = max_abs(&(m * h - h * m));
        if res > tol {
            return Err(Error::Symmetry {
                what: format!("hamiltonian does not commute with unitary group element {g}"),
                residual: res,
            });
        }
    }
    Ok(())
}

/// Block hamiltonians `h_λ = (X ↦ hX)` on every multiplicity space.
pub fn decompose_hamiltonian(
    h: &Mat,
    act: &GroupAction,
    blocks: &[IsotypicBlock],
    tol: f64,
) -> Result<Vec<BlockHamiltonian>> {
    check_even_symmetry(h, act, tol)?;
    Ok(blocks
        .iter()
        .map(|b| BlockHamiltonian {
            lambda: b.lambda,
            h: b.e_operator(|x| h * x),
        })
        .collect())
}

/// Inverse of [`decompose_hamiltonian`].
pub fn reassemble(blocks: &[IsotypicBlock], parts: &[BlockHamiltonian]) -> Mat {
    let n = blocks[0].projector.nrows();
    let mut out = Mat::zeros(n, n);
    for (b, p) in blocks.iter().zip(parts) {
        out += b.embed(&p.h);
    }
    out
}

/// Group average `(1/|G0|) Σ ρ(g) a ρ(g)ᵀ`, projecting onto `G0`-equivariant maps.
pub fn average_even(a: &Mat, act: &GroupAction) -> Mat {
    let evens = act.even_elements();
    let mut out = Mat::zeros(a.nrows(), a.ncols());
    for &g in &evens {
        let m = act.matrix(g);
        out += m * a * m.transpose();
    }
    out / evens.len() as f64
}

/// Random `G0`-equivariant orthogonal change of basis inside every block,
/// used to test basis independence.
pub fn random_equivariant_rotation<R: Rng>(blocks: &[IsotypicBlock], rng: &mut R) -> Mat {
    let n = blocks[0].projector.nrows();
    let mut out = Mat::zeros(n, n);
    for b in blocks {
        let dim = b.dim_e();
        // Average a random generator over the F-action to make it F-linear.
        let raw = crate::linalg::random_antisymmetric(dim, rng);
        let mut lin = raw.clone();
        let extra: Vec<Mat> = match b.algebra {
            DivisionAlgebra::Real => vec![],
            DivisionAlgebra::Complex => vec![b.f_gens[0].clone()],
            DivisionAlgebra::Quaternion => vec![b.f_gens[0].clone(), b.f_gens[1].clone(), &b.f_gens[1] * &b.f_gens[0]],
        };
        for f in &extra {
            lin += f * &raw * f.transpose();
        }
        lin /= (extra.len() + 1) as f64;
        let u = crate::linalg::antisym_exp(&lin, 1.0);
        out += b.embed(&u);
    }
    out
}
