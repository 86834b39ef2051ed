use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tenfold::azclass::{build_path, Cartan};
use tenfold::fixtures::{class_fixture, random_action, random_hamiltonian};
use tenfold::isotypic::{decompose_hamiltonian, reassemble};
use tenfold::linalg::{antisym_exp, max_abs, random_antisymmetric, Mat};
use tenfold::nambu::{check_gap, flatten_matrix, fock_to_nambu, FockQuadratic};
use tenfold::pfaffian::{pfaffian_householder, pfaffian_recursive};
use tenfold::{Settings, SymmetryAnalysis};

fn class_strategy() -> impl Strategy<Value = Cartan> {
    prop::sample::select(Cartan::ALL.to_vec())
}

#[test]
fn degenerate_spectrum_regressions() {
    // Seeds whose hamiltonians once exposed an inaccurate symmetric eigensolver.
    for seed in [4423029212105457230u64, 7140403362001884344] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let act = random_action(&mut rng, 12);
        let an = SymmetryAnalysis::new(
            act,
            Settings {
                seed,
                ..Settings::default()
            },
        )
        .unwrap();
        let h = random_hamiltonian(&an.action, &mut rng);
        let m = h.transpose() * &h;
        let (vals, vecs) = tenfold::linalg::sym_eigen(&m);
        let d = Mat::from_diagonal(&nalgebra::DVector::from_vec(vals));
        assert!(max_abs(&(&vecs * d * vecs.transpose() - &m)) < 1e-12);
        if check_gap(&h, 1e-6).gapped {
            flatten_matrix(&h, 1e-9).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn eigen_reconstructs_degenerate_spectra(seed in any::<u64>(), n in 2usize..12, distinct in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = tenfold::linalg::random_orthogonal(n, &mut rng);
        let diag = nalgebra::DVector::from_fn(n, |i, _| (i % distinct) as f64 + 0.5);
        let m = &q * Mat::from_diagonal(&diag) * q.transpose();
        let (vals, vecs) = tenfold::linalg::sym_eigen(&m);
        let d = Mat::from_diagonal(&nalgebra::DVector::from_vec(vals));
        prop_assert!(max_abs(&(&vecs * d * vecs.transpose() - &m)) < 1e-12);
    }

    #[test]
    fn nambu_matrix_is_real_antisymmetric(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = |rng: &mut ChaCha8Rng| tenfold::linalg::random_gaussian(n, n, rng);
        let (ar, ai) = (g(&mut rng), g(&mut rng));
        let a = DMatrix::from_fn(n, n, |r, c| Complex64::new(ar[(r, c)] + ar[(c, r)], ai[(r, c)] - ai[(c, r)]));
        let (br, bi) = (g(&mut rng), g(&mut rng));
        let b = DMatrix::from_fn(n, n, |r, c| Complex64::new(br[(r, c)] - br[(c, r)], bi[(r, c)] - bi[(c, r)]));
        let h = fock_to_nambu(&FockQuadratic::new(a, b, 1e-12).unwrap());
        prop_assert_eq!(h.dim(), 2 * n);
        prop_assert!(max_abs(&(h.matrix() + h.matrix().transpose())) < 1e-12);
    }

    #[test]
    fn flattening_squares_to_minus_one(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_antisymmetric(2 * n, &mut rng);
        prop_assume!(check_gap(&h, 1e-6).gapped);
        let f = flatten_matrix(&h, 1e-9).unwrap();
        prop_assert!(max_abs(&(&f * &f + Mat::identity(2 * n, 2 * n))) < 1e-9);
        prop_assert!(max_abs(&(&f * &h - &h * &f)) < 1e-8 * h.norm().max(1.0));
    }

    #[test]
    fn pfaffian_methods_agree(seed in any::<u64>(), half in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_antisymmetric(2 * half, &mut rng);
        let (r, h) = (pfaffian_recursive(&a), pfaffian_householder(&a));
        prop_assert!((r - h).abs() < 1e-9 * r.abs().max(1.0));
    }

    #[test]
    fn blocks_reassemble(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let act = random_action(&mut rng, 12);
        let an = SymmetryAnalysis::new(act, Settings { seed, ..Settings::default() }).unwrap();
        let h = random_hamiltonian(&an.action, &mut rng);
        let parts = decompose_hamiltonian(&h, &an.action, &an.blocks, 1e-8).unwrap();
        prop_assert!(max_abs(&(reassemble(&an.blocks, &parts) - &h)) < 1e-8);
        let n = h.nrows();
        let mut total = Mat::zeros(n, n);
        for b in &an.blocks {
            prop_assert!(max_abs(&(&b.projector * &b.projector - &b.projector)) < 1e-9);
            total += &b.projector;
        }
        prop_assert!(max_abs(&(total - Mat::identity(n, n))) < 1e-9);
    }

    #[test]
    fn transposed_partners_follow_the_clone_formula(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let act = random_action(&mut rng, 12);
        let an = SymmetryAnalysis::new(act, Settings::default()).unwrap();
        let h = random_hamiltonian(&an.action, &mut rng);
        prop_assume!(check_gap(&h, 1e-6).gapped);
        for r in an.partner_residuals(&h).unwrap() {
            prop_assert!(r < 1e-8);
        }
    }

    #[test]
    fn pi0_is_constant_along_paths(c in class_strategy(), seed in any::<u64>(), t in 0.1f64..3.0) {
        let f = class_fixture(c);
        let an = SymmetryAnalysis::new(f.action, Settings::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = f.hamiltonian.nrows();
        let raw = random_antisymmetric(n, &mut rng);
        let y = an.action.matrices().iter().fold(Mat::zeros(n, n), |acc, m| acc + m * &raw * m.transpose());
        let u = antisym_exp(&y, t / y.norm().max(1e-12));
        let h2 = &u * &f.hamiltonian * u.transpose();
        let path = build_path(&an, &f.hamiltonian, &h2, 16).unwrap();
        let first = an.classify(&path[0]).unwrap();
        for p in &path {
            let cls = an.classify(p).unwrap();
            prop_assert_eq!(cls.orbits[0].pi0, first.orbits[0].pi0);
        }
    }

    #[test]
    fn class_is_basis_independent(c in class_strategy(), seed in any::<u64>()) {
        let f = class_fixture(c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = tenfold::linalg::random_orthogonal(f.action.dim(), &mut rng);
        let an = SymmetryAnalysis::new(f.action.conjugated(&q), Settings { seed, ..Settings::default() }).unwrap();
        prop_assert_eq!(an.orbits[0].assignment.cartan, c);
    }
}
