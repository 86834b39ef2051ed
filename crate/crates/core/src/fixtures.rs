//! Hand-built symmetric systems used by tests, benchmarks and the CLI
//! examples: one per Cartan label, random actions, number-conserving
//! systems and Dirac systems.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::azclass::Cartan;
use crate::clifford::pauli_generators;
use crate::dirac::DiracSystem;
use crate::group::{GroupAction, Parity};
use crate::linalg::{
    direct_sum, eps2, kron, random_antisymmetric, random_gaussian, random_orthogonal, sigma_x, sigma_z, Mat,
};

const GEN_TOL: f64 = 1e-9;

fn id(n: usize) -> Mat {
    Mat::identity(n, n)
}

fn generate(gens: &[(Mat, Parity)]) -> GroupAction {
    GroupAction::generate(gens, GEN_TOL, 64).expect("fixture generators close into a group")
}

fn from_rows(n: usize, rows: &[&[f64]]) -> Mat {
    Mat::from_fn(n, n, |r, c| rows[r][c])
}

/// Left multiplication by `i` or `j` on `ℍ = ℝ⁴` (basis `1, i, j, k`).
pub fn quat_left(unit: char) -> Mat {
    match unit {
        'i' => from_rows(
            4,
            &[
                &[0., -1., 0., 0.],
                &[1., 0., 0., 0.],
                &[0., 0., 0., -1.],
                &[0., 0., 1., 0.],
            ],
        ),
        'j' => from_rows(
            4,
            &[
                &[0., 0., -1., 0.],
                &[0., 0., 0., 1.],
                &[1., 0., 0., 0.],
                &[0., -1., 0., 0.],
            ],
        ),
        _ => panic!("unit must be 'i' or 'j'"),
    }
}

/// Right multiplication by `i` or `j` on `ℍ = ℝ⁴`.
pub fn quat_right(unit: char) -> Mat {
    match unit {
        'i' => from_rows(
            4,
            &[
                &[0., -1., 0., 0.],
                &[1., 0., 0., 0.],
                &[0., 0., 0., 1.],
                &[0., 0., -1., 0.],
            ],
        ),
        'j' => from_rows(
            4,
            &[
                &[0., 0., -1., 0.],
                &[0., 0., 0., -1.],
                &[1., 0., 0., 0.],
                &[0., 1., 0., 0.],
            ],
        ),
        _ => panic!("unit must be 'i' or 'j'"),
    }
}

/// `Q8` acting by left multiplication on `mult` copies of `ℍ`.
pub fn quaternion_left(mult: usize) -> GroupAction {
    generate(&[
        (kron(&quat_left('i'), &id(mult)), Parity::Even),
        (kron(&quat_left('j'), &id(mult)), Parity::Even),
    ])
}

/// A symmetric gapped hamiltonian with its action and expected class.
#[derive(Debug, Clone)]
pub struct ClassFixture {
    pub cartan: Cartan,
    pub action: GroupAction,
    pub hamiltonian: Mat,
}

/// Smallest fixture of each class, all with `k = 1` except CI (`k = 2`).
pub fn class_fixture(cartan: Cartan) -> ClassFixture {
    let j4 = kron(&id(2), &eps2());
    let (gens, hamiltonian) = match cartan {
        Cartan::D => (vec![(id(2), Parity::Even)], eps2()),
        Cartan::A => (vec![(eps2(), Parity::Even)], eps2()),
        Cartan::C => (
            vec![(quat_left('i'), Parity::Even), (quat_left('j'), Parity::Even)],
            quat_right('i'),
        ),
        Cartan::BDI => (vec![(sigma_z(), Parity::Odd)], eps2()),
        Cartan::DIII => (vec![(kron(&eps2(), &id(2)), Parity::Odd)], kron(&sigma_z(), &eps2())),
        Cartan::AI => (vec![(eps2(), Parity::Even), (sigma_z(), Parity::Odd)], eps2()),
        Cartan::AII => (
            vec![(j4.clone(), Parity::Even), (kron(&eps2(), &sigma_z()), Parity::Odd)],
            j4,
        ),
        Cartan::AIII => (
            vec![(j4, Parity::Even), (kron(&sigma_z(), &id(2)), Parity::Odd)],
            kron(&sigma_x(), &eps2()),
        ),
        Cartan::CII => (
            vec![
                (kron(&quat_left('i'), &id(2)), Parity::Even),
                (kron(&quat_left('j'), &id(2)), Parity::Even),
                (kron(&id(4), &sigma_z()), Parity::Odd),
            ],
            kron(&quat_right('i'), &sigma_x()),
        ),
        Cartan::CI => (
            vec![
                (kron(&quat_left('i'), &id(2)), Parity::Even),
                (kron(&quat_left('j'), &id(2)), Parity::Even),
                (kron(&id(4), &eps2()), Parity::Odd),
            ],
            kron(&quat_right('i'), &sigma_z()),
        ),
    };
    ClassFixture {
        cartan,
        action: generate(&gens),
        hamiltonian,
    }
}

/// `(1/|G|) Σ ±ρ(g) a ρ(g)ᵀ` with `−` on odd elements: a hamiltonian that
/// commutes with `G0` and anticommutes with `G1`.
pub fn symmetrize_hamiltonian(a: &Mat, act: &GroupAction) -> Mat {
    let mut out = Mat::zeros(a.nrows(), a.ncols());
    for (g, m) in act.matrices().iter().enumerate() {
        let term = m * a * m.transpose();
        match act.parity(g) {
            Parity::Even => out += term,
            Parity::Odd => out -= term,
        }
    }
    out / act.matrices().len() as f64
}

/// Random symmetric hamiltonian for `act`.
pub fn random_hamiltonian<R: Rng>(act: &GroupAction, rng: &mut R) -> Mat {
    symmetrize_hamiltonian(&random_antisymmetric(act.dim(), rng), act)
}

fn rotation(theta: f64) -> Mat {
    let (s, c) = theta.sin_cos();
    from_rows(2, &[&[c, -s], &[s, c]])
}

/// One irreducible representation given by its generator images, plus the
/// character values on the generators when it is one-dimensional.
struct Family {
    irreps: Vec<Vec<Mat>>,
    characters: Vec<Vec<f64>>,
}

fn scalar(x: f64) -> Mat {
    Mat::from_element(1, 1, x)
}

fn random_family<R: Rng>(rng: &mut R) -> Family {
    let pick = rng.gen_range(0..5);
    match pick {
        0 => {
            let n = rng.gen_range(2..=8);
            let mut irreps = vec![vec![scalar(1.0)]];
            let mut characters = vec![vec![1.0]];
            if n % 2 == 0 {
                irreps.push(vec![scalar(-1.0)]);
                characters.push(vec![-1.0]);
            }
            for j in 1..=(n - 1) / 2 {
                irreps.push(vec![rotation(std::f64::consts::TAU * j as f64 / n as f64)]);
            }
            Family { irreps, characters }
        }
        1 => {
            let n = rng.gen_range(3..=6);
            let mut characters = vec![vec![1.0, 1.0], vec![1.0, -1.0]];
            if n % 2 == 0 {
                characters.push(vec![-1.0, 1.0]);
                characters.push(vec![-1.0, -1.0]);
            }
            let mut irreps: Vec<Vec<Mat>> = characters
                .iter()
                .map(|c| c.iter().map(|&x| scalar(x)).collect())
                .collect();
            for j in 1..=(n - 1) / 2 {
                irreps.push(vec![rotation(std::f64::consts::TAU * j as f64 / n as f64), sigma_z()]);
            }
            Family { irreps, characters }
        }
        2 => {
            let characters = vec![vec![1.0, 1.0], vec![-1.0, 1.0], vec![1.0, -1.0], vec![-1.0, -1.0]];
            let mut irreps: Vec<Vec<Mat>> = characters
                .iter()
                .map(|c| c.iter().map(|&x| scalar(x)).collect())
                .collect();
            irreps.push(vec![quat_left('i'), quat_left('j')]);
            Family { irreps, characters }
        }
        3 => {
            // S4 generated by the transposition (01) and the 4-cycle.
            let perm = |p: [usize; 4]| Mat::from_fn(4, 4, |r, c| if p[c] == r { 1.0 } else { 0.0 });
            let t = perm([1, 0, 2, 3]);
            let c = perm([1, 2, 3, 0]);
            let characters = vec![vec![1.0, 1.0], vec![-1.0, -1.0]];
            let irreps = vec![
                vec![scalar(1.0), scalar(1.0)],
                vec![scalar(-1.0), scalar(-1.0)],
                vec![t.clone(), c.clone()],
                vec![-t, -c],
            ];
            Family { irreps, characters }
        }
        _ => {
            // C3 × C3 with independent rotations.
            let r = rotation(std::f64::consts::TAU / 3.0);
            Family {
                irreps: vec![
                    vec![scalar(1.0), scalar(1.0)],
                    vec![r.clone(), id(2)],
                    vec![id(2), r.clone()],
                    vec![r.clone(), r.clone()],
                    vec![r.clone(), r.transpose()],
                ],
                characters: vec![vec![1.0, 1.0]],
            }
        }
    }
}

/// Random finite group action on `ℝ^{2m} ≤ ℝ^{max_dim}`.
///
/// A random representation `ρ` on `V` is doubled to `V ⊗ ℝ²`, with
/// `ρ(g) ⊗ I` on even and `ρ(g) ⊗ σz` on odd elements; the grading comes
/// from a random one-dimensional character (possibly trivial, giving an
/// empty `G1`). The result is rotated by a random orthogonal matrix.
pub fn random_action<R: Rng>(rng: &mut R, max_dim: usize) -> GroupAction {
    let half = (max_dim / 2).max(1);
    loop {
        let fam = random_family(rng);
        let ngen = fam.irreps[0].len();
        let mut chosen: Vec<&Vec<Mat>> = Vec::new();
        let mut dim = 0;
        let target = rng.gen_range(1..=half);
        for _ in 0..16 {
            let irr = fam.irreps.choose(rng).expect("families are nonempty");
            if dim + irr[0].nrows() <= target {
                dim += irr[0].nrows();
                chosen.push(irr);
            }
        }
        if chosen.is_empty() {
            continue;
        }
        let chi = fam
            .characters
            .choose(rng)
            .expect("every family has the trivial character")
            .clone();
        let q = random_orthogonal(2 * dim, rng);
        let gens: Vec<(Mat, Parity)> = (0..ngen)
            .map(|g| {
                let rho = direct_sum(&chosen.iter().map(|irr| irr[g].clone()).collect::<Vec<_>>());
                let (grade, parity) = if chi[g] < 0.0 {
                    (sigma_z(), Parity::Odd)
                } else {
                    (id(2), Parity::Even)
                };
                let m = kron(&rho, &grade);
                (&q * m * q.transpose(), parity)
            })
            .collect();
        if let Ok(act) = GroupAction::generate(&gens, GEN_TOL, 64) {
            return act;
        }
    }
}

/// Realification of a complex matrix on `ℂ^N ≅ ℝ^{2N}` with coordinates
/// `(Re z_j, Im z_j)` per mode.
pub fn realify(re: &Mat, im: &Mat) -> Mat {
    kron(re, &id(2)) + kron(im, &eps2().transpose())
}

/// Time reversal attached to a number-conserving fixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeReversal {
    None,
    /// `T = K`, `T² = +1`.
    Spinless,
    /// `T = (I ⊗ iσy) K`, `T² = −1`.
    Spinful,
}

#[derive(Debug, Clone)]
pub struct NormalFixture {
    pub action: GroupAction,
    pub hamiltonian: Mat,
    pub time_reversal: TimeReversal,
}

/// Random number-conserving system: `G0` contains the complex structure
/// `J` and a random finite unitary symmetry (a mode permutation, possibly
/// with phases); the hamiltonian is the realification of `iA` for a
/// random symmetric hermitian `A`.
pub fn normal_fixture<R: Rng>(rng: &mut R, tr: TimeReversal) -> NormalFixture {
    let orbitals = rng.gen_range(1..=4usize);
    let spin = if tr == TimeReversal::Spinful { 2 } else { 1 };
    let n = orbitals * spin;
    // orbital permutation (a random cycle structure) with a phase of order 4
    // on the first orbital when no time reversal constrains the phases
    let mut perm: Vec<usize> = (0..orbitals).collect();
    perm.shuffle(rng);
    let mut u_re = Mat::from_fn(orbitals, orbitals, |r, c| if perm[c] == r { 1.0 } else { 0.0 });
    let mut u_im = Mat::zeros(orbitals, orbitals);
    if tr == TimeReversal::None && rng.gen_bool(0.5) {
        let col = perm.iter().position(|&p| p == 0).expect("permutation hits 0");
        u_re[(0, col)] = 0.0;
        u_im[(0, col)] = 1.0;
    }
    let u_re = kron(&u_re, &id(spin));
    let u_im = kron(&u_im, &id(spin));
    let j = realify(&Mat::zeros(n, n), &id(n));
    let mut gens = vec![(j, Parity::Even), (realify(&u_re, &u_im), Parity::Even)];
    let conj = kron(&id(n), &sigma_z());
    let ut = match tr {
        TimeReversal::None => None,
        TimeReversal::Spinless => Some(id(n)),
        TimeReversal::Spinful => Some(kron(&id(orbitals), &eps2())),
    };
    if let Some(ut) = &ut {
        gens.push((realify(ut, &Mat::zeros(n, n)) * &conj, Parity::Odd));
    }
    let action = generate(&gens);
    // Hermitian A = A_re + i A_im with A_re symmetric and A_im antisymmetric;
    // h = R(iA) = R(−A_im + i A_re). Averaging h over the action enforces
    // every symmetry at once.
    let g = random_gaussian(n, n, rng);
    let a_re = (&g + g.transpose()) * 0.5;
    let a_im = random_antisymmetric(n, rng) * 0.5;
    let h0 = realify(&(-&a_im), &a_re);
    let hamiltonian = symmetrize_hamiltonian(&h0, &action);
    NormalFixture {
        action,
        hamiltonian,
        time_reversal: tr,
    }
}

/// Class D on `ℝ²` with `γ` chosen from `σz, σx` (`d ≤ 2`) and mass `ε`.
pub fn dirac_class_d(d: usize) -> DiracSystem {
    assert!(d <= 2, "class D fixture supports d <= 2");
    let gammas = [sigma_z(), sigma_x()][..d].to_vec();
    DiracSystem::new(gammas, eps2(), class_fixture(Cartan::D).action)
}

/// Class BDI on `ℝ²` with `φ = σz`, `γ = σx` and mass `ε` (`d = 1`).
pub fn dirac_class_bdi() -> DiracSystem {
    DiracSystem::new(vec![sigma_x()], eps2(), class_fixture(Cartan::BDI).action)
}

/// Class CI with `d = 3` on `ℍ ⊗ ℝ⁴`, `dim_ℍ E = 4`.
pub fn dirac_class_ci() -> DiracSystem {
    let g = pauli_generators(2, 3, 2).expect("C^{2,3} has a Pauli representation on R^4");
    let action = generate(&[
        (kron(&quat_left('i'), &id(4)), Parity::Even),
        (kron(&quat_left('j'), &id(4)), Parity::Even),
        (kron(&id(4), &g[0]), Parity::Odd),
    ]);
    let gammas = g[2..].iter().map(|x| kron(&id(4), x)).collect();
    DiracSystem::new(gammas, kron(&id(4), &g[1]), action)
}

/// Class A with `J = I ⊗ ε` on `ℝ⁴`, `γ = σz ⊗ I`, mass `σx ⊗ ε` (`d = 1`).
pub fn dirac_class_a() -> DiracSystem {
    DiracSystem::new(
        vec![kron(&sigma_z(), &id(2))],
        kron(&sigma_x(), &eps2()),
        class_fixture(Cartan::A).action.clone_with(|m| kron(&id(2), m)),
    )
}

/// Tensors a Dirac system with an auxiliary Clifford module to add
/// `extra` gammas without changing any block class: new gammas are
/// `I ⊗ Γ_b`, while odd elements, old gammas and the mass pick up the
/// chirality `Z` that anticommutes with every `Γ_b`.
fn augment(ds: &DiracSystem, extra: &[Mat], z: &Mat) -> DiracSystem {
    let n = ds.action.dim();
    let aux = z.nrows();
    let mats: Vec<Mat> = ds
        .action
        .matrices()
        .iter()
        .enumerate()
        .map(|(g, m)| match ds.action.parity(g) {
            Parity::Even => kron(m, &id(aux)),
            Parity::Odd => kron(m, z),
        })
        .collect();
    let action = GroupAction::new(ds.action.group().clone(), mats, ds.action.parities().to_vec(), GEN_TOL)
        .expect("augmented matrices still represent the group");
    let mut gammas: Vec<Mat> = ds.gammas.iter().map(|g| kron(g, z)).collect();
    gammas.extend(extra.iter().map(|x| kron(&id(n), x)));
    DiracSystem::new(gammas, kron(&ds.mass, z), action)
}

/// Adds eight gammas through a `C^{0,9}` module on `ℝ^16`.
pub fn augment_by_eight(ds: &DiracSystem) -> DiracSystem {
    let g = pauli_generators(0, 9, 4).expect("C^{0,9} has a Pauli representation on R^16");
    augment(ds, &g[..8], &g[8])
}

/// Adds two gammas `σx ⊗ I`, `σz ⊗ I` on `ℝ⁴` with chirality `ε ⊗ ε`.
pub fn augment_by_two(ds: &DiracSystem) -> DiracSystem {
    augment(
        ds,
        &[kron(&sigma_x(), &id(2)), kron(&sigma_z(), &id(2))],
        &kron(&eps2(), &eps2()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn quaternion_matrices() {
        let (li, lj, ri, rj) = (quat_left('i'), quat_left('j'), quat_right('i'), quat_right('j'));
        assert_eq!(&li * &li, -id(4));
        assert_eq!(&lj * &lj, -id(4));
        assert_eq!(&li * &lj, -(&lj * &li));
        for l in [&li, &lj] {
            for r in [&ri, &rj] {
                assert_eq!(l * r, r * l);
            }
        }
        assert_eq!(&ri * &rj, -(&rj * &ri));
        assert_eq!(quaternion_left(2).group().order(), 8);
    }

    #[test]
    fn class_fixtures_are_symmetric_and_flat() {
        for c in Cartan::ALL {
            let f = class_fixture(c);
            let h = &f.hamiltonian;
            let n = h.nrows();
            assert_eq!(f.action.dim(), n, "{c}");
            assert!(max_abs(&(h * h + id(n))) < 1e-14, "{c}");
            assert!(max_abs(&(symmetrize_hamiltonian(h, &f.action) - h)) < 1e-14, "{c}");
        }
    }

    #[test]
    fn random_actions_fit() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        for _ in 0..20 {
            let act = random_action(&mut rng, 16);
            assert!(act.dim() <= 16 && act.dim() % 2 == 0);
            assert!(act.group().order() <= 48);
        }
    }

    #[test]
    fn normal_fixtures_are_symmetric() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(4);
        for tr in [TimeReversal::None, TimeReversal::Spinless, TimeReversal::Spinful] {
            let f = normal_fixture(&mut rng, tr);
            let h = &f.hamiltonian;
            assert!(max_abs(&(symmetrize_hamiltonian(h, &f.action) - h)) < 1e-12);
            assert!(max_abs(&(h + h.transpose())) < 1e-12);
        }
    }

    #[test]
    fn dirac_fixtures_are_valid() {
        for ds in [
            dirac_class_d(1),
            dirac_class_bdi(),
            dirac_class_ci(),
            dirac_class_a(),
            augment_by_eight(&dirac_class_d(1)),
            augment_by_two(&dirac_class_a()),
        ] {
            let rep = crate::dirac::validate_gamma(&ds, 1e-12);
            assert!(rep.valid, "{rep:?}");
            for g in &ds.gammas {
                assert!(max_abs(&(g * &ds.mass + &ds.mass * g)) < 1e-12);
            }
        }
    }
}
