use antiflex::exactla::{frac, parse_rational, q, render_rational, Matrix, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| frac(n, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| Matrix::from_vec(rows, cols, v.into_iter().map(q).collect()).unwrap())
}

fn det2(m: &Matrix) -> Rational {
    &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)]
}

proptest! {
    #[test]
    fn rationals_round_trip(x in rational()) {
        prop_assert_eq!(parse_rational(&render_rational(&x)).unwrap(), x);
    }

    #[test]
    fn rank_plus_nullity(m in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))) {
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn solve_recovers_a_preimage(m in matrix(3, 4), x in prop::collection::vec(-3i64..=3, 4)) {
        let x: Vec<Rational> = x.into_iter().map(q).collect();
        let b = m.apply(&x);
        let y = m.solve(&b).expect("b lies in the column space");
        prop_assert_eq!(m.apply(&y), b);
    }

    #[test]
    fn two_by_two_rank_matches_determinant(m in matrix(2, 2)) {
        prop_assert_eq!(m.rank() == 2, det2(&m) != q(0));
        prop_assert_eq!(m.is_invertible(), det2(&m) != q(0));
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(3, 3)) {
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(m.matmul(&inv), Matrix::identity(3));
            prop_assert_eq!(inv.matmul(&m), Matrix::identity(3));
        } else {
            prop_assert!(m.rank() < 3);
        }
    }

    #[test]
    fn rref_is_idempotent(m in matrix(3, 3)) {
        let (r, pivots) = m.rref();
        let (rr, pivots2) = r.rref();
        prop_assert_eq!(r, rr);
        prop_assert_eq!(pivots, pivots2);
    }
}

#[test]
fn zero_denominator_is_rejected() {
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
    assert_eq!(parse_rational(" -6/4 ").unwrap(), frac(-3, 2));
    assert_eq!(render_rational(&frac(4, 2)), "2");
}
