mod common;

use antiflex::algebra::{classify, Algebra};
use antiflex::bimodule::Bimodule;
use antiflex::corpus::pairs;
use antiflex::glie::{
    ambient_structure, circbar, graded_bracket, insertion, mc_check_algebra_bimodule,
    rb_mc_equivalence, symmetry_group, symmetry_group_order, twisted_mc_check, Cochain,
    MultilinearMap,
};
use antiflex::structmaps::LinearOperator;
use common::*;
use proptest::prelude::*;

fn map(seed: u64, arity: usize, dim: usize) -> MultilinearMap {
    MultilinearMap::new(random_tensor(&mut rng(seed), arity, dim, dim, 2)).unwrap()
}

fn sign(m: i64, n: i64) -> i64 {
    if (m * n).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_is_graded_antisymmetric(p in 1usize..=3, r in 1usize..=3, seed in any::<u64>()) {
        let (f, g) = (map(seed, p, 2), map(seed ^ 1, r, 2));
        let fg = graded_bracket(&f, &g).unwrap();
        let gf = graded_bracket(&g, &f).unwrap();
        let s = sign(f.degree(), g.degree());
        prop_assert!(fg.add(&gf.scale(&antiflex::exactla::q(s))).is_zero());
    }

    #[test]
    fn bracket_satisfies_graded_jacobi(
        arities in prop::sample::select(vec![(1, 1, 1), (1, 2, 2), (2, 2, 2), (2, 1, 3), (3, 2, 1), (2, 2, 3)]),
        seed in any::<u64>(),
    ) {
        let (a, b, c) = arities;
        let (f, g, h) = (map(seed, a, 2), map(seed ^ 1, b, 2), map(seed ^ 2, c, 2));
        let br = |x: &MultilinearMap, y: &MultilinearMap| graded_bracket(x, y).unwrap();
        let lhs = br(&f, &br(&g, &h));
        let s = antiflex::exactla::q(sign(f.degree(), g.degree()));
        let rhs = br(&br(&f, &g), &h).add(&br(&g, &br(&f, &h)).scale(&s));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn maurer_cartan_matches_semidirect_classification(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = Algebra::from_table(random_tensor(&mut r, 2, 2, 2, 1)).unwrap();
        let l = (0..2).map(|_| random_matrix(&mut r, 1, 1, 1)).collect();
        let rr = (0..2).map(|_| random_matrix(&mut r, 1, 1, 1)).collect();
        let m = Bimodule::with_dim(a, 1, l, rr).unwrap();
        let pi = ambient_structure(&m);
        let ambient = Algebra::from_table(pi.tensor().clone()).unwrap();
        let mc = mc_check_algebra_bimodule(&m).unwrap().holds;
        prop_assert_eq!(mc, classify(&ambient).is_anti_flexible());
        prop_assert_eq!(mc, m.validate().holds() && classify(m.base()).is_anti_flexible());
    }

    #[test]
    fn rota_baxter_iff_maurer_cartan(i in 0..pairs().len(), seed in any::<u64>()) {
        let m = &pairs()[i].bimodule;
        let t = random_operator(&mut rng(seed), m.base().dim(), m.mdim(), 1);
        let (mc, rb) = rb_mc_equivalence(m, &t).unwrap();
        prop_assert_eq!(mc.holds, rb.holds);
    }

    #[test]
    fn twisted_maurer_cartan(i in 0..pairs().len(), seed in any::<u64>()) {
        let p = &pairs()[i];
        let m = &p.bimodule;
        let t2 = random_operator(&mut rng(seed), m.base().dim(), m.mdim(), 1);
        for t in &p.rota_baxter {
            let (sum, twisted) = twisted_mc_check(m, t, &t2).unwrap();
            prop_assert_eq!(sum.holds, twisted.holds);
            let back = t.scale(&antiflex::exactla::q(-1));
            prop_assert!(twisted_mc_check(m, t, &back).unwrap().1.holds);
        }
    }
}

#[test]
fn symmetry_groups() {
    let orders: Vec<u64> = (0..=5).map(symmetry_group_order).collect();
    assert_eq!(orders, [1, 1, 1, 2, 24, 120]);
    for n in 0..=5 {
        assert_eq!(symmetry_group(n).len() as u64, symmetry_group_order(n));
    }
}

#[test]
fn low_arity_uses_plain_insertion() {
    for (p, r) in [(1, 1), (1, 3), (3, 1), (0, 2), (2, 0)] {
        let (f, g) = (map(7, p, 2), map(8, r, 2));
        assert_eq!(circbar(&f, &g).unwrap(), insertion(&f, &g).unwrap());
    }
}

#[test]
fn operator_cochains_round_trip() {
    let t = LinearOperator::from_i64(&[&[1, 2, 3], &[4, 5, 6]]);
    let c = Cochain::from_operator(&t);
    assert_eq!((c.degree(), c.mdim(), c.adim()), (1, 3, 2));
    assert_eq!(c.to_operator().unwrap(), t);
    assert!(Cochain::zero(2, 3, 2).to_operator().is_err());
}

#[test]
fn arity_cap_is_enforced() {
    let (f, g) = (map(1, 4, 2), map(2, 4, 2));
    assert!(matches!(circbar(&f, &g), Err(antiflex::Error::DegreeCap { .. })));
}
