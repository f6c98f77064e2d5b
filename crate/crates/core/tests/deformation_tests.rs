mod common;

use antiflex::bimodule::regular_bimodule;
use antiflex::corpus::{af2, pairs};
use antiflex::deformation::{
    are_equivalent_deformations, difference_is_coboundary, is_closed_2cochain,
    is_nijenhuis_structure, is_valid_deformation, nijenhuis_structure_powers,
    trivial_deformation_from, InfinitesimalDeformation,
};
use antiflex::exactla::{add_vectors, sub_vectors};
use antiflex::structmaps::LinearOperator;
use antiflex::Error;
use common::*;
use proptest::prelude::*;

fn pair_and_structure() -> impl Strategy<Value = (usize, u64)> {
    (0..pairs().len(), any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn routes_agree((i, seed) in pair_and_structure()) {
        let m = &pairs()[i].bimodule;
        let mut r = rng(seed);
        let n = random_operator(&mut r, m.base().dim(), m.base().dim(), 1);
        let s = random_operator(&mut r, m.mdim(), m.mdim(), 1);
        prop_assert!(is_nijenhuis_structure(m, &n, &s).unwrap().routes_agree());
    }

    #[test]
    fn scalar_structures_are_nijenhuis((i, seed) in pair_and_structure()) {
        let m = &pairs()[i].bimodule;
        let c = small(&mut rng(seed), 3);
        let n = LinearOperator::scalar(m.base().dim(), c.clone());
        let s = LinearOperator::scalar(m.mdim(), c);
        prop_assert!(is_nijenhuis_structure(m, &n, &s).unwrap().holds());
    }
}

fn structures(m: &antiflex::Bimodule) -> Vec<(LinearOperator, LinearOperator)> {
    let (d, k) = (m.base().dim(), m.mdim());
    let ss = all_operators(k, k, &[-1, 0, 1]);
    let mut out = Vec::new();
    for n in all_operators(d, d, &[-1, 0, 1]) {
        for s in &ss {
            if is_nijenhuis_structure(m, &n, s).unwrap().holds() {
                out.push((n.clone(), s.clone()));
            }
        }
    }
    out
}

#[test]
fn trivial_deformations() {
    for p in pairs().into_iter().filter(|p| p.bimodule.base().dim() <= 2) {
        let m = &p.bimodule;
        let a = m.base();
        let zero = InfinitesimalDeformation::zero(m);
        for (n, s) in structures(m).into_iter().step_by(7) {
            let (d, identities) = trivial_deformation_from(m, &n, &s).unwrap();
            assert!(identities.holds(), "{}", p.name);
            assert!(is_valid_deformation(m, &d).unwrap().holds());
            assert!(is_closed_2cochain(m, &d).unwrap().holds);
            assert!(difference_is_coboundary(m, &d, &zero).unwrap());
            // ω(a, b) = N(a)b + aN(b) − N(ab) on basis pairs.
            for x in 0..a.dim() {
                for y in 0..a.dim() {
                    let (ex, ey) = (a.basis(x), a.basis(y));
                    let want = sub_vectors(
                        &add_vectors(&a.multiply(&n.apply(&ex), &ey), &a.multiply(&ex, &n.apply(&ey))),
                        &n.apply(&a.multiply(&ex, &ey)),
                    );
                    let idx = (x * a.dim() + y) * a.dim();
                    assert_eq!(&d.omega.entries()[idx..idx + a.dim()], want.as_slice());
                }
            }
        }
    }
}

#[test]
fn equivalence_to_itself() {
    let m = regular_bimodule(&af2()).unwrap();
    let d = InfinitesimalDeformation::of_structure(&m);
    let (zn, zs) = (LinearOperator::zero(2, 2), LinearOperator::zero(2, 2));
    assert!(are_equivalent_deformations(&m, &d, &d, &zn, &zs).unwrap().holds());
    assert!(is_valid_deformation(&m, &d).unwrap().holds());
    let zero = InfinitesimalDeformation::zero(&m);
    assert!(!are_equivalent_deformations(&m, &d, &zero, &zn, &zs).unwrap().holds());
}

#[test]
fn square_variant_disagrees_somewhere() {
    let m = regular_bimodule(&af2()).unwrap();
    let all = structures(&m);
    let disagree = all
        .iter()
        .filter(|(n, s)| !is_nijenhuis_structure(&m, n, s).unwrap().variant_agrees())
        .count();
    assert!(!all.is_empty());
    assert!(disagree > 0 && disagree < all.len());
}

#[test]
fn powers_of_structures() {
    for p in pairs().into_iter().filter(|p| p.bimodule.base().dim() <= 2) {
        let m = &p.bimodule;
        for (n, s) in structures(m).into_iter().step_by(5) {
            for i in 0..=3 {
                assert!(nijenhuis_structure_powers(m, &n, &s, i, 3).unwrap().holds());
            }
            assert!(matches!(
                nijenhuis_structure_powers(m, &n, &s, 4, 3),
                Err(Error::DegreeCap { .. })
            ));
        }
    }
    let m = regular_bimodule(&af2()).unwrap();
    let bad = LinearOperator::from_i64(&[&[0, 1], &[1, 0]]);
    assert!(matches!(
        trivial_deformation_from(&m, &bad, &bad),
        Err(Error::Precondition(_))
    ));
}
