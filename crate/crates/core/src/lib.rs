//! Exact computations with anti-flexible algebras, their bimodules and the
//! operators on them: Rota-Baxter and Nijenhuis operators, the graded Lie
//! bracket whose Maurer-Cartan elements they are, the associated cochain
//! complexes, first-order deformations and ON-structures.
//!
//! All scalars are exact rationals; every identity is checked on basis
//! tuples, which is complete because the identities are multilinear.

pub mod algebra;
pub mod bimodule;
pub mod cli;
pub mod cohomology;
pub mod corpus;
pub mod deformation;
pub mod error;
pub mod exactla;
pub mod glie;
pub mod onstruct;
pub mod structmaps;
pub mod verdict;

pub use algebra::{classify, Algebra, Classification, LieAlgebra};
pub use bimodule::{Bimodule, LieRepresentation};
pub use error::{Error, Result};
pub use exactla::{CoeffTensor, Matrix, Rational, Vector};
pub use glie::{Cochain, MultilinearMap};
pub use structmaps::{LinearOperator, PreAntiFlexibleAlgebra};
pub use verdict::{Check, Verdict, Witness};
