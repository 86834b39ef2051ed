use tenfold::azclass::Cartan;
use tenfold::dirac::{classify_mass, periodicity_check, DiracSystem, MassCase};
use tenfold::fixtures::{
    augment_by_eight, augment_by_two, class_fixture, dirac_class_a, dirac_class_bdi, dirac_class_ci, dirac_class_d,
};
use tenfold::{Settings, SymmetryAnalysis};

fn run(ds: &DiracSystem) -> tenfold::dirac::MassClassification {
    let an = SymmetryAnalysis::new(ds.action.clone(), Settings::default()).unwrap();
    classify_mass(ds, &an).unwrap()
}

#[test]
fn class_d_in_one_dimension_has_two_masses() {
    let m = run(&dirac_class_d(1));
    assert_eq!(m.orbits[0].n_minus_d_mod, 1);
    assert_eq!(m.orbits[0].case, MassCase::TwoComponents);
    assert_eq!(m.total, 2);
}

#[test]
fn class_ci_in_three_dimensions() {
    let ds = dirac_class_ci();
    let an = SymmetryAnalysis::new(ds.action.clone(), Settings::default()).unwrap();
    assert_eq!(an.orbits.len(), 1);
    assert_eq!(an.orbits[0].assignment.cartan, Cartan::CI);
    assert_eq!(an.blocks[0].dim_e_over_f(), 4);
    let m = classify_mass(&ds, &an).unwrap();
    let o = &m.orbits[0];
    assert_eq!(o.extension.to_string(), "C^{5,1} -> C^{5,2}");
    assert_eq!(o.n_minus_d_mod, 4);
    assert_eq!(o.case, MassCase::Grassmannian);
    assert_eq!(o.k, Some(1));
    assert_eq!(o.count, 2);
}

#[test]
fn zero_dimensions_reproduce_component_counts() {
    for c in Cartan::ALL {
        let f = class_fixture(c);
        let ds = DiracSystem::new(vec![], f.hamiltonian.clone(), f.action.clone());
        let an = SymmetryAnalysis::new(f.action, Settings::default()).unwrap();
        let mass = classify_mass(&ds, &an).unwrap();
        let cls = an.classify(&f.hamiltonian).unwrap();
        assert_eq!(mass.total, cls.component_count(), "{c}");
    }
}

#[test]
fn real_period_eight() {
    for base in [dirac_class_d(1), dirac_class_bdi()] {
        let shifted = augment_by_eight(&base);
        assert_eq!(shifted.d(), base.d() + 8);
        assert!(periodicity_check(&run(&base), &run(&shifted)).unwrap());
    }
}

#[test]
fn complex_period_two() {
    let base = dirac_class_a();
    let shifted = augment_by_two(&base);
    assert!(periodicity_check(&run(&base), &run(&shifted)).unwrap());
}

#[test]
fn shift_by_one_breaks_the_case() {
    assert!(!periodicity_check(&run(&dirac_class_d(1)), &run(&dirac_class_d(2))).unwrap());
}

#[test]
fn bdi_line_has_two_masses() {
    let m = run(&dirac_class_bdi());
    assert_eq!(m.orbits[0].case, MassCase::Grassmannian);
    assert_eq!(m.orbits[0].k, Some(1));
    assert_eq!(m.total, 2);
}
