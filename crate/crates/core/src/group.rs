//! Finite groups, orthogonal actions on `W_R`, complex character tables and
//! real irreducible types.

use std::fmt;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{max_abs, orth_residual, CMat, Mat};
use crate::{Error, Result};

/// Tolerance for identifying two group elements given as matrices.
const MATCH_TOL: f64 = 1e-6;
/// Tolerance for the character-table orthogonality relations.
const CHAR_TOL: f64 = 1e-6;

/// A finite group given by its multiplication table, `mult[a][b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    pub fn from_table(mult: Vec<Vec<usize>>) -> Result<Self> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::Validation("group must have at least one element".into()));
        }
        for (a, row) in mult.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "multiplication table row {a} has length {}, expected {n}",
                    row.len()
                )));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n {
                    return Err(Error::Validation(format!("table entry {x} out of range in row {a}")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Validation(format!(
                        "row {a} is not a permutation (not a Latin square)"
                    )));
                }
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for row in &mult {
                if std::mem::replace(&mut seen[row[b]], true) {
                    return Err(Error::Validation(format!(
                        "column {b} is not a permutation (not a Latin square)"
                    )));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mult[e][x] == x && mult[x][e] == x))
            .ok_or_else(|| Error::Validation("multiplication table has no identity".into()))?;
        let assoc = |a: usize, b: usize, c: usize| mult[mult[a][b]][c] == mult[a][mult[b][c]];
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::Validation(format!("associativity fails on ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x0061_7373_6f63);
            for _ in 0..10_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(Error::Validation(format!("associativity fails on ({a}, {b}, {c})")));
                }
            }
        }
        let inv = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| mult[g][h] == identity)
                    .expect("Latin square has inverses")
            })
            .collect();
        Ok(Self { mult, inv, identity })
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    /// Conjugacy classes: the identity class first, the rest ordered by their
    /// smallest element index. Elements inside a class are sorted.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        let starts = std::iter::once(self.identity).chain(0..n);
        for g in starts {
            if assigned[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|h| self.mul(self.mul(h, g), self.inv(h))).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                assigned[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Subgroup on the given elements, re-indexed in the order given.
    pub fn subgroup(&self, elements: &[usize]) -> Result<FiniteGroup> {
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &g) in elements.iter().enumerate() {
            pos[g] = i;
        }
        let mut mult = Vec::with_capacity(elements.len());
        for &a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for &b in elements {
                let p = pos[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(Error::Validation(
                        "element subset is not closed under multiplication".into(),
                    ));
                }
                row.push(p);
            }
            mult.push(row);
        }
        FiniteGroup::from_table(mult)
    }

    /// Relabels elements: new index `perm[g]` stands for old element `g`.
    pub fn relabel(&self, perm: &[usize]) -> Result<FiniteGroup> {
        let n = self.order();
        let mut mult = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                mult[perm[a]][perm[b]] = perm[self.mul(a, b)];
            }
        }
        FiniteGroup::from_table(mult)
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(mult).expect("cyclic table is valid")
    }

    /// Dihedral group of order `2n`; element `r^a s^f` has index `a + n·f`.
    pub fn dihedral(n: usize) -> FiniteGroup {
        let idx = |a: usize, f: usize| a % n + n * f;
        let mult = (0..2 * n)
            .map(|x| {
                let (a, f) = (x % n, x / n);
                (0..2 * n)
                    .map(|y| {
                        let (b, g) = (y % n, y / n);
                        // r^a s^f r^b s^g = r^(a ± b) s^(f+g)
                        let e = if f == 0 { a + b } else { a + n - b };
                        idx(e, (f + g) % 2)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(mult).expect("dihedral table is valid")
    }

    /// Quaternion group with elements ±1, ±i, ±j, ±k, indexed
    /// `[1, i, j, k, -1, -i, -j, -k]`.
    pub fn quaternion() -> FiniteGroup {
        // unit products e_a e_b = sign · e_c for a, b in {1, i, j, k}
        let unit = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let mult = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (c, neg) = unit(x % 4, y % 4);
                        let neg = neg ^ (x >= 4) ^ (y >= 4);
                        c + if neg { 4 } else { 0 }
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(mult).expect("quaternion table is valid")
    }

    /// Symmetric group on `n` letters, elements in lexicographic order of
    /// their permutation images; composition `(ab)(x) = a(b(x))`.
    pub fn symmetric(n: usize) -> FiniteGroup {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("permutation listed");
        let mult = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&(0..n).map(|x| a[b[x]]).collect()))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(mult).expect("symmetric table is valid")
    }

    /// Direct product; element `(a, b)` has index `a·|H| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let m = h.order();
        let n = g.order() * m;
        let mult = (0..n)
            .map(|x| (0..n).map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m)).collect())
            .collect();
        FiniteGroup::from_table(mult).expect("product table is valid")
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Whether an element is unitary (`G0`) or antiunitary/chiral (`G1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn compose(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Orthogonal action of a finite group on `W_R` with a `Z₂` grading.
#[derive(Debug, Clone)]
pub struct GroupAction {
    group: FiniteGroup,
    matrices: Vec<Mat>,
    parity: Vec<Parity>,
}

impl GroupAction {
    pub fn new(group: FiniteGroup, matrices: Vec<Mat>, parity: Vec<Parity>, tol: f64) -> Result<Self> {
        let n = group.order();
        if matrices.len() != n || parity.len() != n {
            return Err(Error::Validation(format!(
                "expected {n} matrices and parity flags, got {} and {}",
                matrices.len(),
                parity.len()
            )));
        }
        let dim = matrices[0].nrows();
        if dim == 0 || dim % 2 == 1 {
            return Err(Error::Validation(format!(
                "action dimension must be even and positive, got {dim}"
            )));
        }
        for (g, m) in matrices.iter().enumerate() {
            if m.shape() != (dim, dim) {
                return Err(Error::Validation(format!(
                    "matrix of element {g} has shape {:?}, expected ({dim}, {dim})",
                    m.shape()
                )));
            }
            let r = orth_residual(m);
            if r > tol {
                return Err(Error::Validation(format!(
                    "matrix of element {g} is not orthogonal (residual {r:.3e})"
                )));
            }
        }
        let id = group.identity();
        let r = max_abs(&(&matrices[id] - Mat::identity(dim, dim)));
        if r > tol || parity[id] != Parity::Even {
            return Err(Error::Validation(
                "identity element must act trivially with even parity".into(),
            ));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = group.mul(a, b);
                if parity[ab] != parity[a].compose(parity[b]) {
                    return Err(Error::Validation(format!("parity is not a homomorphism on ({a}, {b})")));
                }
                let r = max_abs(&(&matrices[a] * &matrices[b] - &matrices[ab]));
                if r > tol.max(1e3 * f64::EPSILON * dim as f64) {
                    return Err(Error::Validation(format!(
                        "matrices are not a representation: rho({a})rho({b}) != rho({ab}) (residual {r:.3e})"
                    )));
                }
            }
        }
        Ok(Self {
            group,
            matrices,
            parity,
        })
    }

    /// Closure of the generators under multiplication.
    ///
    /// Errors when the same matrix arises with both parities or the closure
    /// exceeds `max_order` elements.
    pub fn generate(generators: &[(Mat, Parity)], tol: f64, max_order: usize) -> Result<Self> {
        let dim = generators
            .first()
            .map(|(m, _)| m.nrows())
            .ok_or_else(|| Error::Validation("at least one generator is required".into()))?;
        let mut elems: Vec<(Mat, Parity)> = vec![(Mat::identity(dim, dim), Parity::Even)];
        let find = |elems: &[(Mat, Parity)], m: &Mat| elems.iter().position(|(x, _)| max_abs(&(x - m)) < MATCH_TOL);
        let mut frontier = 0;
        while frontier < elems.len() {
            for (gm, gp) in generators {
                if gm.shape() != (dim, dim) {
                    return Err(Error::Validation("generators must share one square shape".into()));
                }
                let prod = &elems[frontier].0 * gm;
                let par = elems[frontier].1.compose(*gp);
                match find(&elems, &prod) {
                    Some(i) if elems[i].1 != par => {
                        return Err(Error::Validation(
                            "generators produce the same matrix with both parities".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        if elems.len() >= max_order {
                            return Err(Error::Validation(format!(
                                "generated group exceeds {max_order} elements"
                            )));
                        }
                        elems.push((prod, par));
                    }
                }
            }
            frontier += 1;
        }
        let n = elems.len();
        let mut mult = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let prod = &elems[a].0 * &elems[b].0;
                mult[a][b] = find(&elems, &prod).ok_or_else(|| {
                    Error::Validation("generated set is not closed; matrices may not be orthogonal".into())
                })?;
            }
        }
        let group = FiniteGroup::from_table(mult)?;
        let (matrices, parity) = elems.into_iter().unzip();
        Self::new(group, matrices, parity, tol.max(MATCH_TOL))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].nrows()
    }

    pub fn matrix(&self, g: usize) -> &Mat {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.matrices
    }

    pub fn parity(&self, g: usize) -> Parity {
        self.parity[g]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn even_elements(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| self.parity[g] == Parity::Even)
            .collect()
    }

    pub fn odd_elements(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| self.parity[g] == Parity::Odd)
            .collect()
    }

    /// Conjugates every matrix by the orthogonal `q`: `ρ(g) ↦ q ρ(g) qᵀ`.
    pub fn conjugated(&self, q: &Mat) -> GroupAction {
        GroupAction {
            group: self.group.clone(),
            matrices: self.matrices.iter().map(|m| q * m * q.transpose()).collect(),
            parity: self.parity.clone(),
        }
    }

    /// Same group and grading with every matrix mapped by `f`.
    pub fn clone_with(&self, f: impl Fn(&Mat) -> Mat) -> GroupAction {
        GroupAction {
            group: self.group.clone(),
            matrices: self.matrices.iter().map(f).collect(),
            parity: self.parity.clone(),
        }
    }

    /// Direct sum of two actions of the same group.
    pub fn direct_sum(&self, other: &GroupAction) -> Result<GroupAction> {
        if self.group != other.group || self.parity != other.parity {
            return Err(Error::Validation(
                "direct sum needs identical groups and parities".into(),
            ));
        }
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| crate::linalg::direct_sum(&[a.clone(), b.clone()]))
            .collect();
        Ok(GroupAction {
            group: self.group.clone(),
            matrices,
            parity: self.parity.clone(),
        })
    }
}

/// Complex irreducible character table of a finite group.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    order: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    square_class: Vec<usize>,
    chars: Vec<Vec<Complex64>>,
    degrees: Vec<usize>,
}

impl CharacterTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn num_irreps(&self) -> usize {
        self.chars.len()
    }

    pub fn degree(&self, irrep: usize) -> usize {
        self.degrees[irrep]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Character values per class for one irrep.
    pub fn row(&self, irrep: usize) -> &[Complex64] {
        &self.chars[irrep]
    }

    /// `χ(g)` for a group element.
    pub fn value(&self, irrep: usize, g: usize) -> Complex64 {
        self.chars[irrep][self.class_of[g]]
    }

    /// Frobenius–Schur indicator `(1/|G|) Σ_g χ(g²)`.
    pub fn frobenius_schur(&self, irrep: usize) -> Result<i32> {
        let row = &self.chars[irrep];
        let sum: Complex64 = self
            .classes
            .iter()
            .enumerate()
            .map(|(c, cl)| row[self.square_class[c]] * cl.len() as f64)
            .sum();
        let nu = sum / self.order as f64;
        let rounded = nu.re.round();
        let residual = (nu - Complex64::new(rounded, 0.0)).norm();
        if residual >= CHAR_TOL || rounded.abs() > 1.0 {
            return Err(Error::Numerical(format!(
                "Frobenius-Schur indicator of irrep {irrep} is not integral: {nu:.6}"
            )));
        }
        Ok(rounded as i32)
    }

    /// Index of the irrep whose character is the complex conjugate.
    pub fn conjugate(&self, irrep: usize) -> usize {
        let target: Vec<Complex64> = self.chars[irrep].iter().map(|z| z.conj()).collect();
        (0..self.chars.len())
            .min_by(|&a, &b| {
                let da = dist(&self.chars[a], &target);
                let db = dist(&self.chars[b], &target);
                da.total_cmp(&db)
            })
            .expect("table is nonempty")
    }
}

fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Class-sum eigenvector (Burnside–Dixon) computation of the character table.
///
/// The class-sum structure constants `c_jkl` give commuting matrices
/// `(M_j)_{kl}`; their common eigenvectors are the central characters
/// `ω_χ(K_l) = |C_l| χ(g_l) / χ(1)`. A seeded random combination of the
/// `M_j` separates them.
pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable> {
    let n = group.order();
    let classes = group.conjugacy_classes();
    let r = classes.len();
    let mut class_of = vec![0; n];
    for (c, cl) in classes.iter().enumerate() {
        for &g in cl {
            class_of[g] = c;
        }
    }
    let square_class: Vec<usize> = classes.iter().map(|cl| class_of[group.mul(cl[0], cl[0])]).collect();
    // consts[j][k][l] = #{(x, y) ∈ C_j × C_k : xy = rep(C_l)}
    let mut consts = vec![vec![vec![0.0_f64; r]; r]; r];
    for j in 0..r {
        for k in 0..r {
            for &x in &classes[j] {
                for &y in &classes[k] {
                    let z = group.mul(x, y);
                    let l = class_of[z];
                    if classes[l][0] == z {
                        consts[j][k][l] += 1.0;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6368_6172);
    let mut last_err = None;
    for _attempt in 0..32 {
        let weights: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let a = Mat::from_fn(r, r, |k, l| (0..r).map(|j| weights[j] * consts[j][k][l]).sum());
        match table_from_combination(&a, &classes, n) {
            Ok(chars) => {
                let mut rows: Vec<(usize, Vec<Complex64>)> = chars;
                rows.sort_by(|(da, ca), (db, cb)| {
                    da.cmp(db).then_with(|| {
                        let ka = sort_key(ca);
                        let kb = sort_key(cb);
                        kb.cmp(&ka)
                    })
                });
                let degrees = rows.iter().map(|(d, _)| *d).collect();
                let chars = rows.into_iter().map(|(_, c)| c).collect();
                let table = CharacterTable {
                    order: n,
                    classes,
                    class_of,
                    square_class,
                    chars,
                    degrees,
                };
                validate_table(&table)?;
                return Ok(table);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Numerical("character table computation failed".into())))
}

fn sort_key(chars: &[Complex64]) -> Vec<(i64, i64)> {
    chars
        .iter()
        .map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64))
        .collect()
}

fn table_from_combination(a: &Mat, classes: &[Vec<usize>], order: usize) -> Result<Vec<(usize, Vec<Complex64>)>> {
    let r = a.nrows();
    let eig: Vec<Complex64> = a.complex_eigenvalues().iter().copied().collect();
    let scale = eig.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for i in 0..r {
        for j in 0..i {
            if (eig[i] - eig[j]).norm() < 1e-6 * scale {
                return Err(Error::Numerical("class-sum eigenvalues are not separated".into()));
            }
        }
    }
    let ac = crate::linalg::complexify(a);
    let mut out = Vec::with_capacity(r);
    for &lam in &eig {
        let shifted = &ac - CMat::identity(r, r) * lam;
        let w = complex_null_vector(&shifted)?;
        if w[0].norm() < 1e-8 {
            return Err(Error::Numerical(
                "central character vanishes on the identity class".into(),
            ));
        }
        let w = &w / w[0];
        let norm: f64 = (0..r).map(|l| w[l].norm_sqr() / classes[l].len() as f64).sum();
        let d = (order as f64 / norm).sqrt();
        let deg = d.round();
        if (d - deg).abs() > 1e-4 || deg < 1.0 {
            return Err(Error::Numerical(format!("irrep degree {d:.6} is not integral")));
        }
        let chars = (0..r).map(|l| w[l] * deg / classes[l].len() as f64).collect();
        out.push((deg as usize, chars));
    }
    Ok(out)
}

fn complex_null_vector(m: &CMat) -> Result<DVector<Complex64>> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.ok_or_else(|| Error::Numerical("SVD failed".into()))?;
    let (idx, &smin) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| Error::Numerical("empty SVD".into()))?;
    let smax = svd.singular_values.iter().copied().fold(1.0, f64::max);
    if smin > 1e-6 * smax {
        return Err(Error::Numerical("class-sum eigenvector not found".into()));
    }
    Ok(vt.row(idx).transpose().map(|z| z.conj()))
}

fn validate_table(t: &CharacterTable) -> Result<()> {
    let r = t.chars.len();
    if r != t.classes.len() {
        return Err(Error::Numerical(
            "number of irreps differs from number of classes".into(),
        ));
    }
    let sum_sq: usize = t.degrees.iter().map(|d| d * d).sum();
    if sum_sq != t.order {
        return Err(Error::Numerical(format!(
            "sum of squared degrees {sum_sq} differs from group order {}",
            t.order
        )));
    }
    for a in 0..r {
        for b in 0..r {
            let ip: Complex64 = t
                .classes
                .iter()
                .enumerate()
                .map(|(c, cl)| t.chars[a][c] * t.chars[b][c].conj() * cl.len() as f64)
                .sum::<Complex64>()
                / t.order as f64;
            let expect = if a == b { 1.0 } else { 0.0 };
            if (ip - Complex64::new(expect, 0.0)).norm() > CHAR_TOL {
                return Err(Error::Numerical(format!(
                    "character orthogonality fails for ({a}, {b}): {ip:.6}"
                )));
            }
        }
    }
    Ok(())
}

/// Division algebra of intertwiners of a real irreducible representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisionAlgebra {
    Real,
    Complex,
    Quaternion,
}

impl DivisionAlgebra {
    pub fn real_dim(self) -> usize {
        match self {
            DivisionAlgebra::Real => 1,
            DivisionAlgebra::Complex => 2,
            DivisionAlgebra::Quaternion => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            DivisionAlgebra::Real => "R",
            DivisionAlgebra::Complex => "C",
            DivisionAlgebra::Quaternion => "H",
        }
    }
}

impl fmt::Display for DivisionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A real irreducible type assembled from one or two complex irreps.
#[derive(Debug, Clone, PartialEq)]
pub struct RealIrrepType {
    pub id: usize,
    /// Real dimension of the irreducible real representation.
    pub real_degree: usize,
    /// Degree of each complex constituent.
    pub complex_degree: usize,
    pub algebra: DivisionAlgebra,
    pub constituents: Vec<usize>,
}

impl RealIrrepType {
    /// Sum of the constituent characters at `g`; real for every type.
    pub fn character_sum(&self, table: &CharacterTable, g: usize) -> f64 {
        self.constituents.iter().map(|&c| table.value(c, g).re).sum()
    }
}

/// Real irreducible types: `ν = +1` gives `R`, `ν = −1` gives `H`, and
/// conjugate pairs with `ν = 0` merge into one `C` type.
pub fn real_irrep_types(table: &CharacterTable) -> Result<Vec<RealIrrepType>> {
    let r = table.num_irreps();
    let mut used = vec![false; r];
    let mut out = Vec::new();
    for a in 0..r {
        if used[a] {
            continue;
        }
        let d = table.degree(a);
        let nu = table.frobenius_schur(a)?;
        let (algebra, real_degree, constituents) = match nu {
            1 => (DivisionAlgebra::Real, d, vec![a]),
            -1 => (DivisionAlgebra::Quaternion, 2 * d, vec![a]),
            _ => {
                let b = table.conjugate(a);
                if b == a || used[b] {
                    return Err(Error::Numerical(format!(
                        "complex irrep {a} has no distinct conjugate partner"
                    )));
                }
                used[b] = true;
                (DivisionAlgebra::Complex, 2 * d, vec![a, b])
            }
        };
        used[a] = true;
        out.push(RealIrrepType {
            id: out.len(),
            real_degree,
            complex_degree: d,
            algebra,
            constituents,
        });
    }
    Ok(out)
}
