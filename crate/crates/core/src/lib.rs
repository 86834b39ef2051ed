//! Classification of symmetry-constrained quadratic fermion hamiltonians
//! into the ten Altland–Zirnbauer classes.
//!
//! The pipeline works entirely in the real Nambu (Majorana) space `W_R`:
//!
//! 1. [`nambu`] turns Fock-space coefficients into the real antisymmetric
//!    matrix of `iH`, checks the gap and flattens the spectrum.
//! 2. [`group`] holds finite groups, their orthogonal actions and complex
//!    character tables, and derives the real irreducible types.
//! 3. [`isotypic`] splits `W_R` into isotypic blocks `R ⊗_F E` and extracts
//!    the block hamiltonians acting on the multiplicity spaces `E`.
//! 4. [`coset`] factorizes the odd (antiunitary / chiral) elements as
//!    `ξ ⊗ φ` on every block.
//! 5. [`azclass`] reads off the Cartan label, the Clifford extension, the
//!    classifying space and the `π₀` invariant per block orbit, compares
//!    hamiltonians and builds explicit gapped paths.
//! 6. [`dirac`] counts inequivalent mass terms of Dirac hamiltonians.
//!
//! [`analysis::SymmetryAnalysis`] bundles steps 2–5 for one group action.

pub mod analysis;
pub mod azclass;
pub mod clifford;
pub mod coset;
pub mod dirac;
mod error;
pub mod fixtures;
pub mod group;
pub mod isotypic;
pub mod linalg;
pub mod nambu;
pub mod pfaffian;

pub use analysis::SymmetryAnalysis;
pub use error::{Error, Result};

/// Numerical settings shared by every stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    /// Absolute tolerance for matrix identity checks and the gap threshold.
    pub tol: f64,
    /// Seed for every randomized subroutine.
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Self { tol: 1e-9, seed: 0 }
    }
}

impl Settings {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }

    /// Threshold for internal consistency checks on derived quantities,
    /// which accumulate more rounding than raw input checks.
    pub fn internal_tol(&self) -> f64 {
        (self.tol * 1e3).clamp(1e-10, 1e-4)
    }

    pub(crate) fn rng(&self, salt: u64) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}
