//! Bounded exhaustive enumeration of small algebras and operators.
//!
//! Candidates are visited in lexicographic order of their coefficient
//! indices into the grid, so results are deterministic. Predicates are
//! conjunctions such as `anti-flexible AND NOT associative`.

use std::str::FromStr;

use serde_json::Value;

use crate::algebra::{classify, Algebra};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::exactla::{q, CoeffTensor, Matrix, Rational};
use crate::structmaps::{is_nijenhuis, is_rota_baxter, LinearOperator};

use super::document::{algebra_json, matrix_json};

pub const CANDIDATE_CEILING: u128 = 10_000_000;

pub fn default_grid() -> Vec<Rational> {
    vec![q(-1), q(0), q(1)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    AntiFlexible,
    Flexible,
    Associative,
    Commutative,
    RotaBaxter,
    Nijenhuis,
    Scalar,
    Invertible,
    Zero,
}

impl Atom {
    fn for_algebras(self) -> bool {
        matches!(
            self,
            Atom::AntiFlexible | Atom::Flexible | Atom::Associative | Atom::Commutative
        )
    }
}

impl FromStr for Atom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "anti-flexible" => Atom::AntiFlexible,
            "flexible" => Atom::Flexible,
            "associative" => Atom::Associative,
            "commutative" => Atom::Commutative,
            "rota-baxter" => Atom::RotaBaxter,
            "nijenhuis" => Atom::Nijenhuis,
            "scalar" => Atom::Scalar,
            "invertible" => Atom::Invertible,
            "zero" => Atom::Zero,
            _ => return Err(Error::Usage(format!("unknown predicate {s:?}"))),
        })
    }
}

/// A conjunction of possibly negated atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    pub literals: Vec<(bool, Atom)>,
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut literals = Vec::new();
        for part in s.split(" AND ") {
            let words: Vec<&str> = part.split_whitespace().collect();
            let lit = match words.as_slice() {
                ["NOT", atom] => (false, atom.parse()?),
                [atom] => (true, atom.parse()?),
                _ => return Err(Error::Usage(format!("cannot read predicate {part:?}"))),
            };
            literals.push(lit);
        }
        Ok(Self { literals })
    }
}

impl Predicate {
    fn only_algebra_atoms(&self) -> bool {
        self.literals.iter().all(|(_, a)| a.for_algebras())
    }

    fn mentions(&self, atom: Atom) -> bool {
        self.literals.iter().any(|(_, a)| *a == atom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub dim: usize,
    pub grid: Vec<Rational>,
    pub predicate: Predicate,
    pub limit: usize,
}

fn candidate_count(grid: usize, slots: usize) -> u128 {
    (grid as u128).saturating_pow(slots as u32)
}

fn check_bound(grid: usize, slots: usize) -> Result<u128> {
    let candidates = candidate_count(grid, slots);
    if candidates > CANDIDATE_CEILING {
        return Err(Error::SearchBound {
            candidates,
            ceiling: CANDIDATE_CEILING,
        });
    }
    Ok(candidates)
}

/// Odometer over `slots` digits in base `base`, most significant first.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn enumerate<F>(slots: usize, grid: &[Rational], mut visit: F, progress: &mut dyn FnMut(u128, u128))
where
    F: FnMut(&[Rational]) -> bool,
{
    let total = candidate_count(grid.len(), slots);
    let mut digits = vec![0usize; slots];
    let mut values: Vec<Rational> = vec![grid[0].clone(); slots];
    let mut seen: u128 = 0;
    loop {
        for (v, d) in values.iter_mut().zip(&digits) {
            *v = grid[*d].clone();
        }
        seen += 1;
        if seen.is_multiple_of(1 << 16) {
            progress(seen, total);
        }
        if !visit(&values) || !advance(&mut digits, grid.len()) {
            break;
        }
    }
    progress(seen, total);
}

pub fn algebra_satisfies(a: &Algebra, p: &Predicate) -> Result<bool> {
    let c = classify(a);
    for (positive, atom) in &p.literals {
        let value = match atom {
            Atom::AntiFlexible => c.is_anti_flexible(),
            Atom::Flexible => c.is_flexible(),
            Atom::Associative => c.is_associative(),
            Atom::Commutative => a.is_commutative(),
            other => {
                return Err(Error::Usage(format!(
                    "{other:?} is not a predicate on algebras"
                )))
            }
        };
        if value != *positive {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Operator predicates; `rota-baxter` refers to `m`, `nijenhuis` to its
/// base algebra.
pub fn operator_satisfies(m: &Bimodule, t: &LinearOperator, p: &Predicate) -> Result<bool> {
    for (positive, atom) in &p.literals {
        let value = match atom {
            Atom::RotaBaxter => is_rota_baxter(m, t)?.holds,
            Atom::Nijenhuis => is_nijenhuis(m.base(), t)?.holds,
            Atom::Scalar => t.is_scalar(),
            Atom::Invertible => t.is_invertible(),
            Atom::Zero => t.is_zero(),
            other => {
                return Err(Error::Usage(format!(
                    "{other:?} is not a predicate on operators"
                )))
            }
        };
        if value != *positive {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All algebras of dimension `spec.dim` with structure constants in the
/// grid that satisfy the predicate, up to `spec.limit`.
pub fn search_algebras(
    spec: &SearchSpec,
    progress: &mut dyn FnMut(u128, u128),
) -> Result<Vec<Algebra>> {
    if !spec.predicate.only_algebra_atoms() {
        return Err(Error::Usage("algebra search takes algebra predicates".into()));
    }
    if spec.grid.is_empty() || spec.dim == 0 {
        return Err(Error::Usage("empty grid or zero dimension".into()));
    }
    let d = spec.dim;
    check_bound(spec.grid.len(), d * d * d)?;
    let mut hits = Vec::new();
    let mut failure = None;
    enumerate(
        d * d * d,
        &spec.grid,
        |values| {
            if hits.len() >= spec.limit {
                return false;
            }
            let table = CoeffTensor::from_vec(2, d, d, values.to_vec()).expect("slot count");
            let a = Algebra::from_table(table).expect("square table");
            match algebra_satisfies(&a, &spec.predicate) {
                Ok(true) => hits.push(a),
                Ok(false) => {}
                Err(e) => {
                    failure = Some(e);
                    return false;
                }
            }
            true
        },
        progress,
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(hits),
    }
}

/// Operators with entries in the grid. They map `M → A` when the predicate
/// mentions `rota-baxter`, and `A → A` otherwise.
pub fn search_operators(
    m: &Bimodule,
    grid: &[Rational],
    predicate: &Predicate,
    limit: usize,
    progress: &mut dyn FnMut(u128, u128),
) -> Result<Vec<LinearOperator>> {
    if grid.is_empty() {
        return Err(Error::Usage("empty grid".into()));
    }
    let d = m.base().dim();
    let cols = if predicate.mentions(Atom::RotaBaxter) {
        m.mdim()
    } else {
        d
    };
    if predicate.mentions(Atom::RotaBaxter) && predicate.mentions(Atom::Nijenhuis) && cols != d {
        return Err(Error::Usage(
            "rota-baxter and nijenhuis together need dim M = dim A".into(),
        ));
    }
    check_bound(grid.len(), d * cols)?;
    let mut hits = Vec::new();
    let mut failure = None;
    enumerate(
        d * cols,
        grid,
        |values| {
            if hits.len() >= limit {
                return false;
            }
            let t = LinearOperator::new(Matrix::from_vec(d, cols, values.to_vec()).expect("slots"));
            match operator_satisfies(m, &t, predicate) {
                Ok(true) => hits.push(t),
                Ok(false) => {}
                Err(e) => {
                    failure = Some(e);
                    return false;
                }
            }
            true
        },
        progress,
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(hits),
    }
}

/// The full algebra section, so a hit can be pasted into a document.
pub fn algebra_hit_json(a: &Algebra) -> Value {
    algebra_json(a)
}

pub fn operator_hit_json(t: &LinearOperator) -> Value {
    matrix_json(t.matrix())
}
