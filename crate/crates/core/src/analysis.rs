//! One-stop analysis of a group action: blocks, orbits, factorizations and
//! class assignments, reused for every hamiltonian with that symmetry.

use crate::azclass::{assign_class, pi0_invariant, ClassAssignment, Pi0Invariant};
use crate::coset::{coset_orbits, factorize, normalize_phi_sign, CosetFactorization};
use crate::group::GroupAction;
use crate::isotypic::{build_blocks, decompose_hamiltonian, BlockHamiltonian, EvenPart, IsotypicBlock};
use crate::linalg::{antisym_residual, eps2, kron, max_abs, Mat};
use crate::nambu::{check_gap, flatten_matrix};
use crate::{Error, Result, Settings};

/// How the odd coset acts on a block orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    /// `G1` is empty.
    Unpaired,
    /// `G1` maps the block to itself.
    Fixed,
    /// `G1` swaps the representative with another block.
    Transposed,
}

#[derive(Debug, Clone)]
pub struct Orbit {
    pub kind: OrbitKind,
    /// Block indices, representative first.
    pub blocks: Vec<usize>,
    /// Normalized factorization on the representative (fixed orbits), or the
    /// raw factorization from the representative to its partner.
    pub factorization: Option<CosetFactorization>,
    pub assignment: ClassAssignment,
}

impl Orbit {
    pub fn representative(&self) -> usize {
        self.blocks[0]
    }
}

/// Whole-action facts reported alongside the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ActionFlags {
    /// Some odd element commutes with every group matrix.
    pub time_reversal: bool,
    /// The standard complex structure `J` is one of the even matrices.
    pub normal_system: bool,
}

#[derive(Debug, Clone)]
pub struct SymmetryAnalysis {
    pub settings: Settings,
    pub action: GroupAction,
    pub even: EvenPart,
    pub blocks: Vec<IsotypicBlock>,
    pub orbits: Vec<Orbit>,
    pub flags: ActionFlags,
}

/// Result of classifying one hamiltonian.
#[derive(Debug, Clone)]
pub struct Classification {
    pub gap: f64,
    pub orbits: Vec<OrbitReport>,
}

#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub assignment: ClassAssignment,
    pub pi0: Pi0Invariant,
}

impl Classification {
    /// Product of the component counts of all orbit classifying spaces.
    pub fn component_count(&self) -> usize {
        self.orbits
            .iter()
            .map(|o| o.assignment.cartan.component_count(o.assignment.k))
            .product()
    }
}

impl SymmetryAnalysis {
    pub fn new(action: GroupAction, settings: Settings) -> Result<Self> {
        let tol = settings.internal_tol().max(1e-8);
        let even = EvenPart::new(&action)?;
        let blocks = build_blocks(&action, &even, &settings)?;
        let odd = action.odd_elements();
        let partner = if odd.is_empty() {
            None
        } else {
            Some(coset_orbits(&action, &blocks, tol)?)
        };
        let mut orbits = Vec::new();
        for b in 0..blocks.len() {
            let orbit = match &partner {
                None => Orbit {
                    kind: OrbitKind::Unpaired,
                    blocks: vec![b],
                    factorization: None,
                    assignment: assign_class(&blocks[b], None, None)?,
                },
                Some(p) if p[b] == b => {
                    let cf = factorize(&action, &blocks, b, b, odd[0], tol)?;
                    let cf = normalize_phi_sign(cf, &blocks[b], tol)?;
                    let assignment = assign_class(&blocks[b], Some(&cf), None)?;
                    Orbit {
                        kind: OrbitKind::Fixed,
                        blocks: vec![b],
                        factorization: Some(cf),
                        assignment,
                    }
                }
                Some(p) if p[b] > b => {
                    let cf = factorize(&action, &blocks, b, p[b], odd[0], tol)?;
                    let assignment = assign_class(&blocks[b], None, Some(blocks[p[b]].lambda))?;
                    Orbit {
                        kind: OrbitKind::Transposed,
                        blocks: vec![b, p[b]],
                        factorization: Some(cf),
                        assignment,
                    }
                }
                Some(_) => continue,
            };
            orbits.push(orbit);
        }
        let flags = ActionFlags {
            time_reversal: orbits
                .iter()
                .filter_map(|o| o.factorization.as_ref())
                .any(|cf| cf.annotations.is_time_reversal)
                || odd.iter().any(|&s| {
                    let sm = action.matrix(s);
                    action.matrices().iter().all(|m| max_abs(&(m * sm - sm * m)) < 1e-8)
                }),
            normal_system: {
                let n = action.dim();
                let j = kron(&Mat::identity(n / 2, n / 2), &eps2());
                action
                    .even_elements()
                    .iter()
                    .any(|&g| max_abs(&(action.matrix(g) - &j)) < 1e-8 || max_abs(&(action.matrix(g) + &j)) < 1e-8)
            },
        };
        Ok(Self {
            settings,
            action,
            even,
            blocks,
            orbits,
            flags,
        })
    }

    /// Largest violation of `[ρ(g), h] = 0` on `G0`, `{ρ(s), h} = 0` on `G1`
    /// and of antisymmetry.
    pub fn symmetry_residual(&self, h: &Mat) -> f64 {
        let mut worst = antisym_residual(h);
        for (g, m) in self.action.matrices().iter().enumerate() {
            let r = match self.action.parity(g) {
                crate::group::Parity::Even => max_abs(&(m * h - h * m)),
                crate::group::Parity::Odd => max_abs(&(m * h + h * m)),
            };
            worst = worst.max(r);
        }
        worst
    }

    /// Checks shape, antisymmetry and every symmetry constraint.
    pub fn check_symmetric(&self, h: &Mat) -> Result<()> {
        let n = self.action.dim();
        if h.shape() != (n, n) {
            return Err(Error::Validation(format!(
                "hamiltonian is {}x{} but the action is {n}-dimensional",
                h.nrows(),
                h.ncols()
            )));
        }
        let tol = self.settings.tol;
        let r = antisym_residual(h);
        if r > tol {
            return Err(Error::Validation(format!(
                "hamiltonian is not antisymmetric (residual {r:.3e})"
            )));
        }
        for (g, m) in self.action.matrices().iter().enumerate() {
            let (res, what) = match self.action.parity(g) {
                crate::group::Parity::Even => (max_abs(&(m * h - h * m)), "commute with unitary"),
                crate::group::Parity::Odd => (max_abs(&(m * h + h * m)), "anticommute with odd"),
            };
            if res > tol * h.norm().max(1.0) {
                return Err(Error::Symmetry {
                    what: format!("hamiltonian does not {what} group element {g}"),
                    residual: res,
                });
            }
        }
        Ok(())
    }

    /// Flattened block hamiltonians of `h` for every block.
    pub fn flat_blocks(&self, h: &Mat) -> Result<Vec<BlockHamiltonian>> {
        let flat = flatten_matrix(h, self.settings.tol)?;
        decompose_hamiltonian(
            &flat,
            &self.action,
            &self.blocks,
            self.settings.internal_tol().max(1e-8),
        )
    }

    /// Class and `π₀` label of every orbit for the hamiltonian `h`.
    pub fn classify(&self, h: &Mat) -> Result<Classification> {
        self.check_symmetric(h)?;
        let gap = check_gap(h, self.settings.tol);
        if !gap.gapped {
            return Err(Error::Gapless {
                gap: gap.gap,
                tol: self.settings.tol,
            });
        }
        let parts = self.flat_blocks(h)?;
        let check_tol = self.settings.internal_tol().max(1e-8);
        let orbits = self
            .orbits
            .iter()
            .map(|o| {
                let rep = o.representative();
                let cf = o.factorization.as_ref().filter(|_| o.kind == OrbitKind::Fixed);
                let pi0 = pi0_invariant(&o.assignment, &parts[rep], &self.blocks[rep], cf, check_tol)?;
                Ok(OrbitReport {
                    assignment: o.assignment.clone(),
                    pi0,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Classification { gap: gap.gap, orbits })
    }

    /// For each transposed orbit, `‖h̃_λ' + φ h̃_λ φ⁻¹‖_max`.
    pub fn partner_residuals(&self, h: &Mat) -> Result<Vec<f64>> {
        let parts = self.flat_blocks(h)?;
        Ok(self
            .orbits
            .iter()
            .filter(|o| o.kind == OrbitKind::Transposed)
            .map(|o| {
                let cf = o
                    .factorization
                    .as_ref()
                    .expect("transposed orbits carry a factorization");
                let phi = &cf.phi;
                let phi_inv = phi.clone().try_inverse().unwrap_or_else(|| phi.transpose());
                let clone = -(phi * &parts[o.blocks[0]].h * phi_inv);
                max_abs(&(&parts[o.blocks[1]].h - clone))
            })
            .collect())
    }
}
