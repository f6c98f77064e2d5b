mod common;

use antiflex::algebra::{classify, semidirect_product, Algebra};
use antiflex::bimodule::{
    dual_bimodule_candidate, induced_bimodule_on_a, lie_representation, regular_bimodule,
    tilde_bimodule, Bimodule,
};
use antiflex::corpus::{a2, af2, assoc2, field_bad_line, pairs};
use antiflex::deformation::is_nijenhuis_structure;
use antiflex::exactla::Matrix;
use antiflex::structmaps::{is_nijenhuis, LinearOperator};
use antiflex::Error;
use common::*;

#[test]
fn corpus_pairs_are_bimodules() {
    for p in pairs() {
        assert!(p.bimodule.validate().holds(), "{}", p.name);
        assert!(classify(&semidirect_product(&p.bimodule).unwrap()).is_anti_flexible());
    }
    assert!(!field_bad_line().validate().holds());
    assert!(matches!(
        semidirect_product(&field_bad_line()),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn action_shapes_are_enforced() {
    let a = Algebra::field();
    let r = Bimodule::with_dim(a.clone(), 2, vec![Matrix::identity(1)], vec![Matrix::identity(2)]);
    assert!(matches!(r, Err(Error::Shape(_))));
    let r = Bimodule::with_dim(a, 1, vec![], vec![]);
    assert!(matches!(r, Err(Error::Shape(_))));
}

#[test]
fn induced_bimodules_and_lie_representations() {
    for p in pairs() {
        let rho = lie_representation(&p.bimodule).unwrap();
        assert!(rho.validate().holds, "{}", p.name);
        for t in &p.rota_baxter {
            assert!(induced_bimodule_on_a(&p.bimodule, t).unwrap().validate().holds());
        }
    }
    let not_rb = LinearOperator::identity(2);
    let m = regular_bimodule(&a2()).unwrap();
    assert!(induced_bimodule_on_a(&m, &not_rb).is_err());
}

fn nijenhuis_operators(a: &Algebra) -> Vec<LinearOperator> {
    all_operators(a.dim(), a.dim(), &[-1, 0, 1])
        .into_iter()
        .filter(|n| is_nijenhuis(a, n).unwrap().holds)
        .collect()
}

/// Counts of `(N, Nᵀ)` that are Nijenhuis structures on the transpose dual.
#[test]
fn coadjoint_pairs() {
    let cases = [
        (a2(), 9, 9),
        (af2(), 15, 3),
        (assoc2(), 81, 9),
        (Algebra::field(), 3, 3),
    ];
    for (a, nijenhuis, on_dual) in cases {
        let m = regular_bimodule(&a).unwrap();
        let dual = dual_bimodule_candidate(&m).unwrap();
        assert!(dual.is_valid());
        let ns = nijenhuis_operators(&a);
        assert_eq!(ns.len(), nijenhuis);
        let hits = ns
            .iter()
            .filter(|n| {
                let s = LinearOperator::new(n.matrix().transpose());
                is_nijenhuis_structure(&dual.bimodule, n, &s).unwrap().holds()
            })
            .count();
        assert_eq!(hits, on_dual);
        for n in &ns {
            assert!(is_nijenhuis_structure(&m, n, n).unwrap().holds());
        }
    }
}

#[test]
fn tilde_bimodule_requires_a_structure() {
    let m = regular_bimodule(&af2()).unwrap();
    let n = LinearOperator::from_i64(&[&[1, 0], &[0, 0]]);
    let tilde = tilde_bimodule(&m, &n, &n).unwrap();
    assert_eq!(tilde.mdim(), 2);
    let bad = LinearOperator::from_i64(&[&[0, 1], &[1, 0]]);
    assert!(!is_nijenhuis(&af2(), &bad).unwrap().holds);
    assert!(tilde_bimodule(&m, &bad, &bad).is_err());
}
