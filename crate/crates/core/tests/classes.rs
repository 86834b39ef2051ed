use tenfold::azclass::{build_path, homotopy_equivalent, Cartan, Pi0Value};
use tenfold::fixtures::class_fixture;
use tenfold::isotypic::DivisionAlgebra;
use tenfold::linalg::{eps2, kron, max_abs, Mat};
use tenfold::{Error, Settings, SymmetryAnalysis};

fn analysis(c: Cartan) -> (SymmetryAnalysis, Mat) {
    let f = class_fixture(c);
    (
        SymmetryAnalysis::new(f.action, Settings::default()).unwrap(),
        f.hamiltonian,
    )
}

#[test]
fn every_fixture_lands_in_its_row() {
    let expected = [
        (Cartan::AI, DivisionAlgebra::Complex, Some(1), "C^{1,1} -> C^{1,2}"),
        (Cartan::BDI, DivisionAlgebra::Real, Some(1), "C^{0,1} -> C^{1,1}"),
        (Cartan::D, DivisionAlgebra::Real, None, "C^{0,0} -> C^{1,0}"),
        (Cartan::DIII, DivisionAlgebra::Real, Some(-1), "C^{1,0} -> C^{2,0}"),
        (Cartan::AII, DivisionAlgebra::Complex, Some(-1), "C^{2,0} -> C^{3,0}"),
        (Cartan::CII, DivisionAlgebra::Quaternion, Some(1), "C^{3,0} -> C^{3,1}"),
        (Cartan::C, DivisionAlgebra::Quaternion, None, "C^{2,0} -> C^{2,1}"),
        (Cartan::CI, DivisionAlgebra::Quaternion, Some(-1), "C^{2,1} -> C^{2,2}"),
        (Cartan::A, DivisionAlgebra::Complex, None, "C^{0}_C -> C^{1}_C"),
        (Cartan::AIII, DivisionAlgebra::Complex, Some(1), "C^{1}_C -> C^{2}_C"),
    ];
    for (c, f, sign, ext) in expected {
        let (an, h) = analysis(c);
        let cls = an.classify(&h).unwrap();
        assert_eq!(cls.orbits.len(), 1, "{c}");
        let a = &cls.orbits[0].assignment;
        assert_eq!(a.cartan, c);
        assert_eq!(a.algebra, f, "{c}");
        assert_eq!(a.phi_sq_sign, sign, "{c}");
        assert_eq!(a.extension.to_string(), ext, "{c}");
        assert_eq!(a.ktheory_index, a.class_index_n, "{c}");
        assert!((cls.gap - 1.0).abs() < 1e-12);
    }
}

#[test]
fn pfaffian_sign_examples() {
    let (an, h) = analysis(Cartan::D);
    let plus = an.classify(&h).unwrap();
    let minus = an.classify(&(-h)).unwrap();
    assert_eq!(plus.orbits[0].pi0.value, Pi0Value::Sign(1));
    assert_eq!(minus.orbits[0].pi0.value, Pi0Value::Sign(-1));
}

#[test]
fn bdi_sign_example() {
    let (an, _) = analysis(Cartan::BDI);
    let h = Mat::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
    let a = an.classify(&h).unwrap().orbits[0].pi0.value;
    let b = an.classify(&(-h)).unwrap().orbits[0].pi0.value;
    assert!(matches!(a, Pi0Value::Sign(_)));
    assert_ne!(a, b);
}

#[test]
fn splitting_index_in_class_a() {
    // J = I ⊗ ε on R^4 makes C^2; h = J is i everywhere, h = diag(J, −J) splits.
    let j = kron(&Mat::identity(2, 2), &eps2());
    let act = tenfold::group::GroupAction::generate(&[(j.clone(), tenfold::group::Parity::Even)], 1e-9, 8).unwrap();
    let an = SymmetryAnalysis::new(act, Settings::default()).unwrap();
    let all = an.classify(&j).unwrap().orbits[0].pi0.value;
    let split = kron(&tenfold::linalg::sigma_z(), &eps2());
    let half = an.classify(&split).unwrap().orbits[0].pi0.value;
    let none = an.classify(&(-&j)).unwrap().orbits[0].pi0.value;
    assert_eq!(an.orbits[0].assignment.k, 2);
    let ms: Vec<_> = [all, half, none].into_iter().collect();
    assert!(ms.contains(&Pi0Value::Splitting(1)));
    assert_eq!(half, Pi0Value::Splitting(1));
    assert_ne!(all, none);
    assert!(matches!(all, Pi0Value::Splitting(0) | Pi0Value::Splitting(2)));
    // h̃ = î on all of E gives m = k.
    let b = &an.blocks[0];
    let i_hat = b.embed(&tenfold::coset::left_multiplications(b)[1]);
    assert_eq!(an.classify(&i_hat).unwrap().orbits[0].pi0.value, Pi0Value::Splitting(2));
    assert_eq!(
        an.classify(&(-i_hat)).unwrap().orbits[0].pi0.value,
        Pi0Value::Splitting(0)
    );
}

#[test]
fn trivial_group_flattening_path() {
    let (an, _) = analysis(Cartan::D);
    let h1 = eps2() * 2.0;
    let h2 = eps2();
    let path = build_path(&an, &h1, &h2, 64).unwrap();
    assert_eq!(path.len(), 65);
    assert_eq!(path[0], h1);
    assert_eq!(path[64], h2);
    assert!(max_abs(&(&path[32] - eps2() * 1.5)) < 1e-12);
}

#[test]
fn constant_path_for_identical_inputs() {
    for c in Cartan::ALL {
        let (an, h) = analysis(c);
        let path = build_path(&an, &h, &h, 8).unwrap();
        assert!(path.iter().all(|p| p == &h), "{c}");
    }
}

#[test]
fn opposite_pfaffians_are_not_equivalent() {
    let (an, h) = analysis(Cartan::D);
    let eq = homotopy_equivalent(&an, &h, &(-&h)).unwrap();
    assert!(!eq.equivalent);
    assert_eq!(eq.certificate[0].first, Pi0Value::Sign(1));
    assert_eq!(eq.certificate[0].second, Pi0Value::Sign(-1));
    assert!(matches!(build_path(&an, &h, &(-&h), 8), Err(Error::Precondition(_))));
}

#[test]
fn class_d_k2_path_through_the_cut() {
    // ε ⊕ ε and −ε ⊕ −ε share a Pfaffian sign but −J₁J₂ = −I.
    let act =
        tenfold::group::GroupAction::generate(&[(Mat::identity(4, 4), tenfold::group::Parity::Even)], 1e-9, 4).unwrap();
    let an = SymmetryAnalysis::new(act, Settings::default()).unwrap();
    let j1 = kron(&Mat::identity(2, 2), &eps2());
    let j2 = -&j1;
    let path = build_path(&an, &j1, &j2, 64).unwrap();
    assert_eq!(path.len(), 65);
    for p in &path {
        assert!(tenfold::nambu::check_gap(p, 1e-9).gap > 1e-9);
        assert_eq!(an.classify(p).unwrap().orbits[0].pi0.value, Pi0Value::Sign(1));
    }
}

#[test]
fn equivalent_pairs_get_valid_paths() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(9);
    for c in Cartan::ALL {
        let (an, h) = analysis(c);
        // A symmetric rotation of the fixture stays in its component.
        let mut y = tenfold::linalg::random_antisymmetric(h.nrows(), &mut rng);
        y = an
            .action
            .matrices()
            .iter()
            .map(|m| m * &y * m.transpose())
            .fold(Mat::zeros(h.nrows(), h.nrows()), |a, b| a + b);
        let u = tenfold::linalg::antisym_exp(&y, 0.7 / y.norm().max(1e-12));
        let h2 = &u * &h * u.transpose() * 1.7;
        let path = build_path(&an, &h, &h2, 64).unwrap();
        assert_eq!(path[0], h);
        assert_eq!(path[64], h2);
        for p in &path {
            assert!(an.symmetry_residual(p) < 1e-8, "{c}");
            assert!(tenfold::nambu::check_gap(p, 1e-9).gapped, "{c}");
        }
    }
}

#[test]
fn assignment_survives_a_basis_rotation() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
    for c in Cartan::ALL {
        let f = class_fixture(c);
        let q = tenfold::linalg::random_orthogonal(f.action.dim(), &mut rng);
        let rotated = f.action.conjugated(&q);
        let an = SymmetryAnalysis::new(rotated, Settings::default()).unwrap();
        let h = &q * &f.hamiltonian * q.transpose();
        let cls = an.classify(&h).unwrap();
        assert_eq!(cls.orbits[0].assignment.cartan, c);
    }
}
