//! Mass terms of Dirac hamiltonians `Σ γ^α k_α + iM` in the Majorana basis.
//!
//! The `d` matrices `γ^α` extend the Clifford algebra of each block orbit;
//! the number of inequivalent mass terms depends on the residue of `n − d`.

use std::fmt;

use crate::analysis::SymmetryAnalysis;
use crate::azclass::Cartan;
use crate::clifford::CliffordExtension;
use crate::group::{GroupAction, Parity};
use crate::isotypic::decompose_hamiltonian;
use crate::linalg::{antisym_residual, max_abs, min_singular, Mat};
use crate::nambu::flatten_matrix;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct DiracSystem {
    pub gammas: Vec<Mat>,
    pub mass: Mat,
    pub action: GroupAction,
}

impl DiracSystem {
    pub fn new(gammas: Vec<Mat>, mass: Mat, action: GroupAction) -> Self {
        Self { gammas, mass, action }
    }

    pub fn d(&self) -> usize {
        self.gammas.len()
    }
}

/// Result of [`validate_gamma`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaReport {
    /// Largest `‖γ^α γ^β + γ^β γ^α − 2δ^{αβ}‖_max`.
    pub clifford_residual: f64,
    /// Largest violation of `γ` symmetry, `G0` commutation and `G1` anticommutation.
    pub symmetry_residual: f64,
    pub valid: bool,
}

/// Clifford relations of the `γ`'s and their symmetry constraints.
pub fn validate_gamma(ds: &DiracSystem, tol: f64) -> GammaReport {
    let n = ds.action.dim();
    let id = Mat::identity(n, n);
    let mut cliff = 0.0f64;
    let mut sym = 0.0f64;
    for (a, ga) in ds.gammas.iter().enumerate() {
        if ga.shape() != (n, n) {
            return GammaReport {
                clifford_residual: f64::INFINITY,
                symmetry_residual: f64::INFINITY,
                valid: false,
            };
        }
        sym = sym.max(max_abs(&(ga - ga.transpose())));
        for gb in &ds.gammas[a..] {
            let target = if std::ptr::eq(ga, gb) {
                &id * 2.0
            } else {
                Mat::zeros(n, n)
            };
            cliff = cliff.max(max_abs(&(ga * gb + gb * ga - target)));
        }
        for (g, m) in ds.action.matrices().iter().enumerate() {
            let r = match ds.action.parity(g) {
                Parity::Even => max_abs(&(m * ga - ga * m)),
                Parity::Odd => max_abs(&(m * ga + ga * m)),
            };
            sym = sym.max(r);
        }
    }
    GammaReport {
        clifford_residual: cliff,
        symmetry_residual: sym,
        valid: cliff < tol && sym < tol,
    }
}

/// Mass-term count of one block orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitMass {
    pub orbit: Vec<usize>,
    pub cartan: Cartan,
    pub class_index_n: u32,
    pub d: usize,
    pub extension: CliffordExtension,
    /// `n − d` mod 8 (real) or mod 2 (complex).
    pub n_minus_d_mod: u32,
    pub case: MassCase,
    pub count: usize,
    /// Only meaningful in case 3.
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MassCase {
    /// All masses equivalent.
    Connected,
    /// Two classes, labelled by a sign.
    TwoComponents,
    /// `k + 1` classes, labelled by a splitting index.
    Grassmannian,
}

impl MassCase {
    pub fn number(self) -> u8 {
        match self {
            MassCase::Connected => 1,
            MassCase::TwoComponents => 2,
            MassCase::Grassmannian => 3,
        }
    }

    /// Case for a residue of `n − d`.
    pub fn from_residue(residue: u32, complex: bool) -> MassCase {
        if complex {
            return if residue % 2 == 1 {
                MassCase::Connected
            } else {
                MassCase::Grassmannian
            };
        }
        match residue % 8 {
            1 | 2 => MassCase::TwoComponents,
            0 | 4 => MassCase::Grassmannian,
            _ => MassCase::Connected,
        }
    }
}

impl fmt::Display for MassCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MassClassification {
    pub orbits: Vec<OrbitMass>,
    pub total: usize,
}

/// Extension describing mass terms of a class-`cartan` block with `d` gammas.
pub fn dirac_extension(cartan: Cartan, d: usize) -> CliffordExtension {
    let d = d as u32;
    match cartan {
        Cartan::AI => CliffordExtension::positive(d + 1, 1),
        Cartan::BDI => CliffordExtension::negative(0, d + 1),
        Cartan::D => CliffordExtension::negative(0, d),
        Cartan::DIII => CliffordExtension::negative(1, d),
        Cartan::AII => CliffordExtension::negative(2, d),
        Cartan::CII => CliffordExtension::positive(d + 3, 0),
        Cartan::C => CliffordExtension::positive(d + 2, 0),
        Cartan::CI => CliffordExtension::positive(d + 2, 1),
        Cartan::A => CliffordExtension::complex(d),
        Cartan::AIII => CliffordExtension::complex(d + 1),
    }
}

/// Counts inequivalent mass terms per block orbit.
pub fn classify_mass(ds: &DiracSystem, an: &SymmetryAnalysis) -> Result<MassClassification> {
    let tol = an.settings.tol;
    let report = validate_gamma(ds, tol);
    if !report.valid {
        return Err(Error::Symmetry {
            what: "gamma matrices violate the Clifford relations or symmetry constraints".into(),
            residual: report.clifford_residual.max(report.symmetry_residual),
        });
    }
    let m = &ds.mass;
    let n = ds.action.dim();
    if m.shape() != (n, n) {
        return Err(Error::Validation(format!(
            "mass is {}x{}, expected {n}x{n}",
            m.nrows(),
            m.ncols()
        )));
    }
    let r = antisym_residual(m);
    if r > tol {
        return Err(Error::Validation(format!(
            "mass is not antisymmetric (residual {r:.3e})"
        )));
    }
    an.check_symmetric(m)?;
    for (a, g) in ds.gammas.iter().enumerate() {
        let r = max_abs(&(g * m + m * g));
        if r > tol * m.norm().max(1.0) {
            return Err(Error::Precondition(format!(
                "mass does not anticommute with gamma {a} (residual {r:.3e}); deform it to an anticommuting mass first"
            )));
        }
    }
    let gap = min_singular(m);
    if gap <= tol {
        return Err(Error::Gapless { gap, tol });
    }
    let flat = flatten_matrix(m, tol)?;
    let parts = decompose_hamiltonian(&flat, &ds.action, &an.blocks, an.settings.internal_tol().max(1e-8))?;
    for (b, p) in an.blocks.iter().zip(&parts) {
        let k = p.h.nrows();
        let r = max_abs(&(&p.h * &p.h + Mat::identity(k, k)));
        if r > an.settings.internal_tol().max(1e-8) {
            return Err(Error::Flattening(format!(
                "flattened mass on block {} squares to -1 only up to {r:.3e}",
                b.lambda
            )));
        }
    }
    let d = ds.d();
    let orbits = an
        .orbits
        .iter()
        .map(|o| {
            let ca = &o.assignment;
            let complex = ca.cartan.is_complex();
            let modulus = if complex { 2 } else { 8 };
            let residue = (ca.class_index_n as i64 - d as i64).rem_euclid(modulus) as u32;
            let extension = dirac_extension(ca.cartan, d);
            debug_assert_eq!(extension.ktheory_index(), residue);
            let case = MassCase::from_residue(residue, complex);
            let (count, k) = match case {
                MassCase::Connected => (1, None),
                MassCase::TwoComponents => (2, None),
                MassCase::Grassmannian => {
                    let dim_e = an.blocks[o.representative()].dim_e();
                    let module = extension.from.irreducible_module_dim();
                    if !dim_e.is_multiple_of(module) {
                        return Err(Error::Dimension(format!(
                            "dim_R E = {dim_e} is not a multiple of the {} module dimension {module}",
                            extension.from
                        )));
                    }
                    (dim_e / module + 1, Some(dim_e / module))
                }
            };
            Ok(OrbitMass {
                orbit: ca.orbit.clone(),
                cartan: ca.cartan,
                class_index_n: ca.class_index_n,
                d,
                extension,
                n_minus_d_mod: residue,
                case,
                count,
                k,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = orbits.iter().map(|o| o.count).product();
    Ok(MassClassification { orbits, total })
}

/// True iff both systems have the same case and count formula on every
/// orbit, as expected when their dimensions differ by a period.
pub fn periodicity_check(base: &MassClassification, shifted: &MassClassification) -> Result<bool> {
    if base.orbits.len() != shifted.orbits.len() {
        return Err(Error::Validation(format!(
            "systems have {} and {} block orbits",
            base.orbits.len(),
            shifted.orbits.len()
        )));
    }
    Ok(base
        .orbits
        .iter()
        .zip(&shifted.orbits)
        .all(|(a, b)| a.cartan == b.cartan && a.case == b.case))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eps2, sigma_x, sigma_z};

    fn trivial_action() -> GroupAction {
        GroupAction::generate(&[(Mat::identity(2, 2), Parity::Even)], 1e-12, 4).unwrap()
    }

    #[test]
    fn gamma_validation_examples() {
        let act = trivial_action();
        let ok = DiracSystem::new(vec![sigma_z(), sigma_x()], eps2(), act.clone());
        assert!(validate_gamma(&ok, 1e-12).valid);
        let none = DiracSystem::new(vec![], eps2(), act.clone());
        assert!(validate_gamma(&none, 1e-12).valid);
        let bad = DiracSystem::new(vec![Mat::identity(2, 2), Mat::identity(2, 2)], eps2(), act);
        let rep = validate_gamma(&bad, 1e-12);
        assert!(!rep.valid);
        assert_eq!(rep.clifford_residual, 2.0);
    }

    #[test]
    fn residue_table_is_total() {
        let cases: Vec<u8> = (0..8).map(|r| MassCase::from_residue(r, false).number()).collect();
        assert_eq!(cases, vec![3, 2, 2, 1, 3, 1, 1, 1]);
        assert_eq!(MassCase::from_residue(0, true), MassCase::Grassmannian);
        assert_eq!(MassCase::from_residue(1, true), MassCase::Connected);
    }

    #[test]
    fn dirac_rows_have_matching_index() {
        for c in Cartan::ALL {
            for d in 0..12 {
                let m = if c.is_complex() { 2 } else { 8 };
                let want = (c.class_index_n() as i64 - d as i64).rem_euclid(m) as u32;
                assert_eq!(dirac_extension(c, d).ktheory_index(), want, "{c} d={d}");
            }
        }
    }

    #[test]
    fn mass_preconditions() {
        let act = GroupAction::generate(&[(Mat::identity(4, 4), Parity::Even)], 1e-12, 4).unwrap();
        let an = SymmetryAnalysis::new(act.clone(), Default::default()).unwrap();
        let gamma = crate::linalg::kron(&sigma_z(), &Mat::identity(2, 2));
        let commuting = crate::linalg::kron(&Mat::identity(2, 2), &eps2());
        let ds = DiracSystem::new(vec![gamma.clone()], commuting, act.clone());
        assert!(matches!(classify_mass(&ds, &an), Err(Error::Precondition(_))));
        let ds = DiracSystem::new(vec![gamma], Mat::zeros(4, 4), act);
        assert!(matches!(classify_mass(&ds, &an), Err(Error::Gapless { .. })));
    }
}
