//! Cartan labels per block orbit, classifying spaces, `π₀` invariants,
//! connectivity decisions and explicit gapped paths.

use std::fmt;

use crate::analysis::SymmetryAnalysis;
use crate::clifford::CliffordExtension;
use crate::coset::{left_multiplications, CosetFactorization, Linearity, PhiSquare};
use crate::isotypic::{BlockHamiltonian, DivisionAlgebra, IsotypicBlock};
use crate::linalg::{
    antisym_exp, antisymmetrize, column_basis, max_abs, orthogonal_log, random_antisymmetric, sym_eigen, Mat,
};
use crate::nambu::{check_gap, flatten_matrix};
use crate::pfaffian::pfaffian;
use crate::{Error, Result};

/// The ten Altland–Zirnbauer symmetry classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cartan {
    AI,
    BDI,
    D,
    DIII,
    AII,
    CII,
    C,
    CI,
    A,
    AIII,
}

impl Cartan {
    pub const ALL: [Cartan; 10] = [
        Cartan::AI,
        Cartan::BDI,
        Cartan::D,
        Cartan::DIII,
        Cartan::AII,
        Cartan::CII,
        Cartan::C,
        Cartan::CI,
        Cartan::A,
        Cartan::AIII,
    ];

    pub fn is_complex(self) -> bool {
        matches!(self, Cartan::A | Cartan::AIII)
    }

    /// Row index in the real (0–7) or complex (0–1) table.
    pub fn class_index_n(self) -> u32 {
        match self {
            Cartan::AI | Cartan::A => 0,
            Cartan::BDI | Cartan::AIII => 1,
            Cartan::D => 2,
            Cartan::DIII => 3,
            Cartan::AII => 4,
            Cartan::CII => 5,
            Cartan::C => 6,
            Cartan::CI => 7,
        }
    }

    pub fn algebra(self) -> DivisionAlgebra {
        match self {
            Cartan::BDI | Cartan::D | Cartan::DIII => DivisionAlgebra::Real,
            Cartan::AI | Cartan::AII | Cartan::A | Cartan::AIII => DivisionAlgebra::Complex,
            Cartan::CII | Cartan::C | Cartan::CI => DivisionAlgebra::Quaternion,
        }
    }

    /// Required sign of `φ²`, if the class has an odd generator with a sign.
    pub fn phi_sq_sign(self) -> Option<i8> {
        match self {
            Cartan::AI | Cartan::BDI | Cartan::CII | Cartan::AIII => Some(1),
            Cartan::DIII | Cartan::AII | Cartan::CI => Some(-1),
            Cartan::D | Cartan::C | Cartan::A => None,
        }
    }

    /// Clifford extension describing the flattened block hamiltonians.
    pub fn extension(self) -> CliffordExtension {
        match self {
            Cartan::AI => CliffordExtension::positive(1, 1),
            Cartan::BDI => CliffordExtension::negative(0, 1),
            Cartan::D => CliffordExtension::negative(0, 0),
            Cartan::DIII => CliffordExtension::negative(1, 0),
            Cartan::AII => CliffordExtension::negative(2, 0),
            Cartan::CII => CliffordExtension::positive(3, 0),
            Cartan::C => CliffordExtension::positive(2, 0),
            Cartan::CI => CliffordExtension::positive(2, 1),
            Cartan::A => CliffordExtension::complex(0),
            Cartan::AIII => CliffordExtension::complex(1),
        }
    }

    /// Number of path components of the finite-`k` classifying space.
    pub fn component_count(self, k: usize) -> usize {
        match self {
            Cartan::D | Cartan::BDI => 2,
            Cartan::A | Cartan::AI | Cartan::AII => k + 1,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Cartan::AI => "AI",
            Cartan::BDI => "BDI",
            Cartan::D => "D",
            Cartan::DIII => "DIII",
            Cartan::AII => "AII",
            Cartan::CII => "CII",
            Cartan::C => "C",
            Cartan::CI => "CI",
            Cartan::A => "A",
            Cartan::AIII => "AIII",
        }
    }
}

impl fmt::Display for Cartan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Cartan {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Cartan::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown Cartan label {s:?}")))
    }
}

/// Table lookup from the division algebra and the odd-coset data.
///
/// `phi` is `None` when there is no odd element acting on the orbit
/// (empty `G1` or a transposed pair).
pub fn lookup_cartan(algebra: DivisionAlgebra, phi: Option<(Linearity, PhiSquare)>) -> Result<Cartan> {
    use DivisionAlgebra::*;
    use Linearity::*;
    use PhiSquare::*;
    Ok(match (algebra, phi) {
        (Real, None) => Cartan::D,
        (Complex, None) => Cartan::A,
        (Quaternion, None) => Cartan::C,
        (Real, Some((FLinear, Plus))) => Cartan::BDI,
        (Real, Some((FLinear, Minus))) => Cartan::DIII,
        (Quaternion, Some((FLinear, Plus))) => Cartan::CII,
        (Quaternion, Some((FLinear, Minus))) => Cartan::CI,
        (Complex, Some((CAntilinear, Plus))) => Cartan::AI,
        (Complex, Some((CAntilinear, Minus))) => Cartan::AII,
        (Complex, Some((FLinear, Plus))) => Cartan::AIII,
        (f, Some((lin, sign))) => {
            return Err(Error::Classification(format!(
                "no table row for F={f} with {lin:?} phi and phi^2 {sign:?}"
            )))
        }
    })
}

/// Class data of one block orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassAssignment {
    /// Irreducible-type ids of the orbit, representative first.
    pub orbit: Vec<usize>,
    pub algebra: DivisionAlgebra,
    pub cartan: Cartan,
    pub class_index_n: u32,
    pub extension: CliffordExtension,
    pub ktheory_index: u32,
    pub k: usize,
    pub space: String,
    pub phi_sq_sign: Option<i8>,
    pub linearity: Option<Linearity>,
}

/// Classifies the orbit of `block`. `cf` is the normalized factorization for
/// an orbit fixed by `G1`; pass `None` for an empty `G1` or a transposed pair
/// (then `partner` names the other block's type id).
pub fn assign_class(
    block: &IsotypicBlock,
    cf: Option<&CosetFactorization>,
    partner: Option<usize>,
) -> Result<ClassAssignment> {
    let phi = match cf {
        Some(cf) if cf.block == cf.partner => {
            if cf.phi_sq_sign == PhiSquare::NotApplicable {
                return Err(Error::Classification("factorization was not normalized".into()));
            }
            Some((cf.linearity, cf.phi_sq_sign))
        }
        Some(_) => {
            return Err(Error::Classification(
                "transposed orbits are classified without a factorization".into(),
            ))
        }
        None => None,
    };
    let cartan = lookup_cartan(block.algebra, phi)?;
    let (space, k) = classifying_space(cartan, block.dim_e())?;
    let extension = cartan.extension();
    let mut orbit = vec![block.lambda];
    orbit.extend(partner);
    Ok(ClassAssignment {
        orbit,
        algebra: block.algebra,
        cartan,
        class_index_n: cartan.class_index_n(),
        extension,
        ktheory_index: extension.ktheory_index(),
        k,
        space,
        phi_sq_sign: phi.and_then(|(_, s)| s.as_i8()),
        linearity: phi.map(|(l, _)| l),
    })
}

/// Classifying-space label and `k` for a block with `dim_ℝ E = dim_e`.
pub fn classifying_space(cartan: Cartan, dim_e: usize) -> Result<(String, usize)> {
    let (unit, what) = match cartan {
        Cartan::BDI | Cartan::D => (2, "dim_R E"),
        Cartan::DIII => (4, "dim_R E"),
        Cartan::AI | Cartan::A => (2, "dim_R E"),
        Cartan::AIII | Cartan::AII => (4, "dim_R E"),
        Cartan::CII => (8, "dim_R E"),
        Cartan::C | Cartan::CI => (4, "dim_R E"),
    };
    if dim_e == 0 || !dim_e.is_multiple_of(unit) {
        return Err(Error::Dimension(format!(
            "class {cartan} needs {what} divisible by {unit}, got {dim_e}"
        )));
    }
    let k = dim_e / unit;
    let grass = |g: &str| format!("union_{{m=0..{k}}} {g}({k})/({g}(m)x{g}({k}-m))");
    let space = match cartan {
        Cartan::BDI => format!("O({k})"),
        Cartan::AIII => format!("U({k})"),
        Cartan::CII => format!("Sp({k})"),
        Cartan::AI => grass("O"),
        Cartan::A => grass("U"),
        Cartan::AII => grass("Sp"),
        Cartan::D => format!("O({})/U({k})", 2 * k),
        Cartan::C => format!("Sp({k})/U({k})"),
        Cartan::CI => format!("U({k})/O({k})"),
        Cartan::DIII => format!("U({})/Sp({k})", 2 * k),
    };
    Ok((space, k))
}

/// Component label of a flattened block hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pi0Value {
    Trivial,
    Sign(i8),
    Splitting(usize),
}

impl fmt::Display for Pi0Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pi0Value::Trivial => f.write_str("trivial"),
            Pi0Value::Sign(s) => write!(f, "sign {s:+}"),
            Pi0Value::Splitting(m) => write!(f, "m={m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pi0Invariant {
    pub cartan: Cartan,
    pub value: Pi0Value,
}

/// `π₀` label of the flattened block hamiltonian `h` of the orbit
/// representative. Checks `h² = −1`, `F`-linearity and, for orbits fixed
/// by `G1`, anticommutation with `φ`.
pub fn pi0_invariant(
    ca: &ClassAssignment,
    h: &BlockHamiltonian,
    block: &IsotypicBlock,
    cf: Option<&CosetFactorization>,
    tol: f64,
) -> Result<Pi0Invariant> {
    let h = &h.h;
    let n = block.dim_e();
    if h.nrows() != n || h.ncols() != n {
        return Err(Error::Dimension(format!(
            "block hamiltonian is {}x{}, block has dim E = {n}",
            h.nrows(),
            h.ncols()
        )));
    }
    let sq = max_abs(&(h * h + Mat::identity(n, n)));
    if sq > tol {
        return Err(Error::Flattening(format!(
            "block {} hamiltonian squares to -1 only up to {sq:.3e}",
            block.lambda
        )));
    }
    let ls = left_multiplications(block);
    for (a, l) in ls.iter().enumerate() {
        let res = max_abs(&(l * h - h * l));
        if res > tol {
            return Err(Error::Symmetry {
                what: format!(
                    "block {} hamiltonian is not linear over commutant element {a}",
                    block.lambda
                ),
                residual: res,
            });
        }
    }
    let fixed_cf = cf.filter(|cf| cf.block == cf.partner);
    if let Some(cf) = fixed_cf {
        let res = max_abs(&(&cf.phi * h + h * &cf.phi));
        if res > tol {
            return Err(Error::Symmetry {
                what: format!("block {} hamiltonian does not anticommute with phi", block.lambda),
                residual: res,
            });
        }
    }
    let value = match ca.cartan {
        Cartan::D => Pi0Value::Sign(if pfaffian(h) > 0.0 { 1 } else { -1 }),
        Cartan::BDI => {
            let cf = fixed_cf.ok_or_else(|| Error::Classification("BDI orbit without phi".into()))?;
            let id = Mat::identity(n, n);
            let plus = column_basis(&((&id + &cf.phi) * 0.5), 1e-6);
            let minus = column_basis(&((&id - &cf.phi) * 0.5), 1e-6);
            if plus.ncols() != minus.ncols() {
                return Err(Error::Classification(format!(
                    "phi eigenspaces have dimensions {} and {}",
                    plus.ncols(),
                    minus.ncols()
                )));
            }
            let map = minus.transpose() * h * plus;
            Pi0Value::Sign(if map.determinant() > 0.0 { 1 } else { -1 })
        }
        Cartan::A | Cartan::AI | Cartan::AII => {
            // Z = −L_î h̃ is a symmetric involution commuting with F.
            let z = -(&ls[1] * h);
            let (vals, _) = sym_eigen(&crate::linalg::symmetrize(&z));
            let plus = vals.iter().filter(|&&v| v > 0.0).count();
            let per = n / ca.k;
            if plus % per != 0 {
                return Err(Error::Numerical(format!(
                    "splitting eigenspace dimension {plus} is not a multiple of {per}"
                )));
            }
            Pi0Value::Splitting(plus / per)
        }
        _ => Pi0Value::Trivial,
    };
    Ok(Pi0Invariant {
        cartan: ca.cartan,
        value,
    })
}

/// Per-orbit comparison entry.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitComparison {
    pub orbit: Vec<usize>,
    pub cartan: Cartan,
    pub first: Pi0Value,
    pub second: Pi0Value,
}

impl OrbitComparison {
    pub fn agrees(&self) -> bool {
        self.first == self.second
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub certificate: Vec<OrbitComparison>,
}

/// Decides whether two symmetric gapped hamiltonians lie in the same
/// gapped symmetric component.
pub fn homotopy_equivalent(an: &SymmetryAnalysis, h1: &Mat, h2: &Mat) -> Result<Equivalence> {
    let c1 = an.classify(h1)?;
    let c2 = an.classify(h2)?;
    let certificate: Vec<OrbitComparison> = c1
        .orbits
        .iter()
        .zip(&c2.orbits)
        .map(|(a, b)| OrbitComparison {
            orbit: a.assignment.orbit.clone(),
            cartan: a.assignment.cartan,
            first: a.pi0.value,
            second: b.pi0.value,
        })
        .collect();
    Ok(Equivalence {
        equivalent: certificate.iter().all(OrbitComparison::agrees),
        certificate,
    })
}

enum Segment {
    Linear(Mat, Mat),
    Conjugation { base: Mat, generator: Mat },
    Geodesic { base: Mat, log: Mat },
}

impl Segment {
    fn at(&self, t: f64) -> Mat {
        match self {
            Segment::Linear(a, b) => a * (1.0 - t) + b * t,
            Segment::Conjugation { base, generator } => {
                let u = antisym_exp(generator, t);
                &u * base * u.transpose()
            }
            Segment::Geodesic { base, log } => base * antisym_exp(log, t),
        }
    }
}

/// Path of `steps + 1` gapped symmetric hamiltonians from `h1` to `h2`.
///
/// Both ends are flattened linearly; between the flattened matrices the
/// path is `J₁ exp(t log(−J₁J₂))`, preceded by a symmetric conjugation when
/// `−J₁J₂` has eigenvalue `−1`.
pub fn build_path(an: &SymmetryAnalysis, h1: &Mat, h2: &Mat, steps: usize) -> Result<Vec<Mat>> {
    if steps == 0 {
        return Err(Error::Validation("a path needs at least one step".into()));
    }
    let eq = homotopy_equivalent(an, h1, h2)?;
    if !eq.equivalent {
        return Err(Error::Precondition(
            "hamiltonians are not homotopy equivalent; no path exists".into(),
        ));
    }
    let tol = an.settings.tol;
    let flat1 = flatten_matrix(h1, tol)?;
    let flat2 = flatten_matrix(h2, tol)?;
    let mut segments = Vec::new();
    if h1 != &flat1 {
        segments.push(Segment::Linear(h1.clone(), flat1.clone()));
    }
    if max_abs(&(&flat1 - &flat2)) > 1e-14 {
        segments.extend(middle_segments(an, &flat1, &flat2)?);
    }
    if h2 != &flat2 {
        segments.push(Segment::Linear(flat2.clone(), h2.clone()));
    }
    let mut path = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let sample = if i == 0 {
            h1.clone()
        } else if i == steps {
            h2.clone()
        } else if segments.is_empty() {
            h1.clone()
        } else {
            let tau = i as f64 / steps as f64 * segments.len() as f64;
            let idx = (tau.floor() as usize).min(segments.len() - 1);
            antisymmetrize(&segments[idx].at(tau - idx as f64))
        };
        check_sample(an, &sample, i)?;
        path.push(sample);
    }
    Ok(path)
}

fn middle_segments(an: &SymmetryAnalysis, j1: &Mat, j2: &Mat) -> Result<Vec<Segment>> {
    let log_tol = an.settings.internal_tol();
    if let Ok(log) = orthogonal_log(&-(j1 * j2), log_tol) {
        return Ok(vec![Segment::Geodesic { base: j1.clone(), log }]);
    }
    let mut rng = an.settings.rng(0x5041_5448);
    let n = j1.nrows();
    for attempt in 0..32 {
        let raw = random_antisymmetric(n, &mut rng);
        let mut y = Mat::zeros(n, n);
        for m in an.action.matrices() {
            y += m * &raw * m.transpose();
        }
        let norm = y.norm();
        if norm < 1e-12 {
            continue;
        }
        y *= (0.5 + 0.25 * attempt as f64) / norm;
        let u = antisym_exp(&y, 1.0);
        let mid = antisymmetrize(&(&u * j1 * u.transpose()));
        if let Ok(log) = orthogonal_log(&-(&mid * j2), log_tol) {
            return Ok(vec![
                Segment::Conjugation {
                    base: j1.clone(),
                    generator: y,
                },
                Segment::Geodesic { base: mid, log },
            ]);
        }
    }
    Err(Error::PathConstruction(
        "could not move the flattened hamiltonians off the logarithm cut".into(),
    ))
}

fn check_sample(an: &SymmetryAnalysis, h: &Mat, i: usize) -> Result<()> {
    let gap = check_gap(h, an.settings.tol);
    if !gap.gapped {
        return Err(Error::PathConstruction(format!("sample {i} has gap {:.3e}", gap.gap)));
    }
    let res = an.symmetry_residual(h);
    if res > 1e-8 {
        return Err(Error::PathConstruction(format!(
            "sample {i} violates the symmetry constraints by {res:.3e}"
        )));
    }
    Ok(())
}
