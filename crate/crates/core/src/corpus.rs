//! Small named examples shared by tests, the CLI and the Python bindings.

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::exactla::Matrix;
use crate::structmaps::LinearOperator;

/// `e₁·e₁ = e₂`, all other products zero. Associative and commutative.
pub fn a2() -> Algebra {
    Algebra::from_products(2, &[(0, 0, 1, 1)])
}

/// `e₁·e₁ = e₂`, `e₁·e₂ = e₁`. Not anti-flexible.
pub fn na2() -> Algebra {
    Algebra::from_products(2, &[(0, 0, 1, 1), (0, 1, 0, 1)])
}

/// `e₁·e₁ = e₁`, `e₁·e₂ = e₂`, `e₂·e₂ = e₂`, `e₂·e₁ = 0`.
/// Anti-flexible, not associative, not commutative.
pub fn af2() -> Algebra {
    Algebra::from_products(2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 1, 1, 1)])
}

/// `T(e₂) = e₁`: a Rota-Baxter operator for the regular bimodule of [`af2`].
pub fn af2_rb() -> LinearOperator {
    LinearOperator::from_i64(&[&[0, 1], &[0, 0]])
}

/// A non-scalar Nijenhuis operator on [`af2`].
pub fn af2_nijenhuis() -> LinearOperator {
    LinearOperator::from_i64(&[&[1, 0], &[0, 0]])
}

/// The field acting on a line by `l = id`, `r = 0`.
pub fn field_left_line() -> Bimodule {
    Bimodule::new(
        Algebra::field(),
        vec![Matrix::identity(1)],
        vec![Matrix::zeros(1, 1)],
    )
    .expect("1x1 actions")
}

/// `l = 2·id`, `r = 0` over the field: violates the bimodule axioms.
pub fn field_bad_line() -> Bimodule {
    Bimodule::new(
        Algebra::field(),
        vec![Matrix::from_i64(&[&[2]])],
        vec![Matrix::zeros(1, 1)],
    )
    .expect("1x1 actions")
}

/// `e₁·e₁ = e₁`, `e₁·e₂ = e₂`. Associative, not commutative.
pub fn assoc2() -> Algebra {
    Algebra::from_products(2, &[(0, 0, 0, 1), (0, 1, 1, 1)])
}

/// `diag(2, 1)`: an invertible Rota-Baxter operator for the regular
/// bimodule of [`a2`].
pub fn a2_rb() -> LinearOperator {
    LinearOperator::from_i64(&[&[2, 0], &[0, 1]])
}

/// The one-dimensional zero algebra acting by zero on a line.
pub fn zero_line() -> Bimodule {
    Bimodule::zero(Algebra::zero(1), 1)
}

/// A named bimodule with Rota-Baxter operators known for it.
#[derive(Clone, Debug)]
pub struct CorpusPair {
    pub name: &'static str,
    pub bimodule: Bimodule,
    pub rota_baxter: Vec<LinearOperator>,
}

fn regular(a: &Algebra) -> Bimodule {
    crate::bimodule::regular_bimodule(a).expect("anti-flexible corpus algebra")
}

/// Anti-flexible algebras with genuine bimodules.
pub fn pairs() -> Vec<CorpusPair> {
    let op = LinearOperator::from_i64;
    vec![
        CorpusPair {
            name: "a2-regular",
            bimodule: regular(&a2()),
            rota_baxter: vec![a2_rb(), op(&[&[0, 0], &[1, 0]])],
        },
        CorpusPair {
            name: "af2-regular",
            bimodule: regular(&af2()),
            rota_baxter: vec![af2_rb(), op(&[&[0, -2], &[0, 0]])],
        },
        CorpusPair {
            name: "assoc2-regular",
            bimodule: regular(&assoc2()),
            rota_baxter: vec![op(&[&[0, 1], &[0, 0]]), op(&[&[1, 1], &[-1, -1]])],
        },
        CorpusPair {
            name: "field-left-line",
            bimodule: field_left_line(),
            rota_baxter: vec![op(&[&[1]]), op(&[&[-2]])],
        },
        CorpusPair {
            name: "zero-line",
            bimodule: zero_line(),
            rota_baxter: vec![op(&[&[1]])],
        },
        CorpusPair {
            name: "field-regular",
            bimodule: regular(&Algebra::field()),
            rota_baxter: vec![op(&[&[0]])],
        },
    ]
}

/// Bimodule data that fails: a non-anti-flexible algebra with its regular
/// actions, and an anti-flexible algebra with bad actions.
pub fn negative_pairs() -> Vec<(&'static str, Bimodule)> {
    vec![
        ("na2-regular", crate::bimodule::regular_actions(&na2())),
        ("field-bad-line", field_bad_line()),
    ]
}
