//! Finite-dimensional algebras given by structure constants, the identity
//! predicates (anti-flexible, flexible, associative) and the algebra-level
//! constructions: tensor products, direct sums, semidirect products,
//! Nijenhuis-deformed products and the commutator Lie algebra.

use num_traits::{One, Zero};

use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::exactla::{
    axpy, sub_vectors, tuples, unit_vector, zero_vector, CoeffTensor, Matrix, Rational, Vector,
};
use crate::structmaps::LinearOperator;
use crate::verdict::Check;

/// `eᵢ·eⱼ = Σₖ c_{ij}^k eₖ`, stored as an arity-2 [`CoeffTensor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    labels: Vec<String>,
    table: CoeffTensor,
}

pub fn default_labels(prefix: &str, dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("{prefix}{i}")).collect()
}

impl Algebra {
    pub fn new(labels: Vec<String>, table: CoeffTensor) -> Result<Self> {
        let dim = labels.len();
        if table.arity() != 2 || table.in_dim() != dim || table.out_dim() != dim {
            return Err(Error::Shape(format!(
                "structure constants must be a {dim}-dimensional arity-2 tensor"
            )));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::Shape(format!("duplicate basis label {a:?}")));
            }
        }
        Ok(Self { labels, table })
    }

    pub fn from_table(table: CoeffTensor) -> Result<Self> {
        Self::new(default_labels("e", table.in_dim()), table)
    }

    /// Builds an algebra from sparse `(i, j, k, c)` entries meaning
    /// `eᵢ·eⱼ` has coefficient `c` on `eₖ` (zero-based).
    pub fn from_products(dim: usize, products: &[(usize, usize, usize, i64)]) -> Self {
        let mut table = CoeffTensor::square(2, dim);
        for &(i, j, k, c) in products {
            let v = table.get(&[i, j], k) + crate::exactla::q(c);
            table.set(&[i, j], k, v);
        }
        Self::from_table(table).expect("well-formed product table")
    }

    /// Zero multiplication in dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        Self::from_table(CoeffTensor::square(2, dim)).expect("zero table")
    }

    /// The ground field as a 1-dimensional algebra, `e·e = e`.
    pub fn field() -> Self {
        Self::from_products(1, &[(0, 0, 0, 1)])
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &CoeffTensor {
        &self.table
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::Shape("label count differs from dimension".into()));
        }
        self.labels = labels;
        Self::new(self.labels, self.table)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        self.table.image(&[i, j])
    }

    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let d = self.dim();
        let mut out = zero_vector(d);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                axpy(&mut out, &(xi * yj), self.basis_product(i, j));
            }
        }
        out
    }

    pub fn associator(&self, a: &[Rational], b: &[Rational], c: &[Rational]) -> Vector {
        let ab_c = self.multiply(&self.multiply(a, b), c);
        let a_bc = self.multiply(a, &self.multiply(b, c));
        sub_vectors(&ab_c, &a_bc)
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_multiplication(&self, a: &[Rational]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d)
            .map(|j| self.multiply(a, &unit_vector(d, j)))
            .collect();
        Matrix::from_columns(d, &cols)
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_multiplication(&self, a: &[Rational]) -> Matrix {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d)
            .map(|j| self.multiply(&unit_vector(d, j), a))
            .collect();
        Matrix::from_columns(d, &cols)
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }

    /// Associator of every basis triple.
    pub fn associator_tensor(&self) -> CoeffTensor {
        let d = self.dim();
        let mut t = CoeffTensor::square(3, d);
        for triple in tuples(3, d) {
            let v = self.associator(
                &self.basis(triple[0]),
                &self.basis(triple[1]),
                &self.basis(triple[2]),
            );
            let flat = t.flatten(&triple);
            t.image_at_mut(flat).clone_from_slice(&v);
        }
        t
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn scale(&self, s: &Rational) -> Algebra {
        Algebra {
            labels: self.labels.clone(),
            table: self.table.scale(s),
        }
    }
}

/// Result of [`classify`]; every flag comes with a witness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub anti_flexible: Check,
    pub flexible: Check,
    pub associative: Check,
}

impl Classification {
    pub fn is_anti_flexible(&self) -> bool {
        self.anti_flexible.holds
    }
    pub fn is_flexible(&self) -> bool {
        self.flexible.holds
    }
    pub fn is_associative(&self) -> bool {
        self.associative.holds
    }
}

/// Evaluates all three identities from one associator tensor. Bilinearity
/// makes the basis-triple check complete; flexibility is tested in its
/// linearized form `(a,b,c) + (c,b,a) = 0`.
pub fn classify(a: &Algebra) -> Classification {
    let assoc = a.associator_tensor();
    let d = a.dim();
    let triples = || tuples(3, d);
    let anti = Check::from_residuals(
        "anti-flexible",
        triples().map(|t| {
            let rev = [t[2], t[1], t[0]];
            let r = sub_vectors(assoc.image(&t), assoc.image(&rev));
            (t, r)
        }),
    );
    let flex = Check::from_residuals(
        "flexible",
        triples().map(|t| {
            let rev = [t[2], t[1], t[0]];
            let r = crate::exactla::add_vectors(assoc.image(&t), assoc.image(&rev));
            (t, r)
        }),
    );
    let associative = Check::from_residuals(
        "associative",
        triples().map(|t| {
            let r = assoc.image(&t).to_vec();
            (t, r)
        }),
    );
    Classification {
        anti_flexible: anti,
        flexible: flex,
        associative,
    }
}

pub fn multiply(a: &Algebra, x: &[Rational], y: &[Rational]) -> Vector {
    a.multiply(x, y)
}

pub fn associator(a: &Algebra, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
    a.associator(x, y, z)
}

/// `A ⊗ B` with `(a₁⊗b₁)(a₂⊗b₂) = a₁a₂ ⊗ b₁b₂`; basis `eᵢ⊗fⱼ` flattened as
/// `i·dim(B) + j`. The associator is `(a₁,a₂,a₃) ⊗ b₁b₂b₃`, so the result is
/// anti-flexible when `A` is and `B` is also commutative, or when `A` is
/// associative; a non-commutative `B` can break it.
pub fn tensor_with_associative(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    let cb = classify(b);
    if !cb.is_associative() {
        return Err(Error::Precondition(
            "second tensor factor must be associative".into(),
        ));
    }
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    let mut table = CoeffTensor::square(2, n);
    for (i1, j1, i2, j2) in (0..da).flat_map(|i1| {
        (0..db)
            .flat_map(move |j1| (0..da).flat_map(move |i2| (0..db).map(move |j2| (i1, j1, i2, j2))))
    }) {
        let pa = a.basis_product(i1, i2);
        let pb = b.basis_product(j1, j2);
        for (ka, ca) in pa.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (kb, cb) in pb.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let (x, y, k) = (i1 * db + j1, i2 * db + j2, ka * db + kb);
                let v = table.get(&[x, y], k) + ca * cb;
                table.set(&[x, y], k, v);
            }
        }
    }
    let labels = a
        .labels()
        .iter()
        .flat_map(|la| b.labels().iter().map(move |lb| format!("{la}⊗{lb}")))
        .collect();
    Algebra::new(labels, table)
}

/// Componentwise product on `A ⊕ B`.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Algebra {
    let (da, db) = (a.dim(), b.dim());
    let n = da + db;
    let mut table = CoeffTensor::square(2, n);
    for i in 0..da {
        for j in 0..da {
            for (k, c) in a.basis_product(i, j).iter().enumerate() {
                table.set(&[i, j], k, c.clone());
            }
        }
    }
    for i in 0..db {
        for j in 0..db {
            for (k, c) in b.basis_product(i, j).iter().enumerate() {
                table.set(&[da + i, da + j], da + k, c.clone());
            }
        }
    }
    let mut labels: Vec<String> = a.labels().to_vec();
    for l in b.labels() {
        let mut candidate = l.clone();
        while labels.contains(&candidate) {
            candidate.push('\'');
        }
        labels.push(candidate);
    }
    Algebra::new(labels, table).expect("block-diagonal table")
}

/// `A ⊕ M` with `(a,m)(b,n) = (ab, l(a)n + r(b)m)`. The first `dim(A)`
/// coordinates are the algebra part.
pub fn semidirect_product(m: &Bimodule) -> Result<Algebra> {
    let verdict = m.validate();
    if !verdict.holds() {
        return Err(Error::Precondition(format!(
            "not a bimodule: {} fails",
            verdict.first_failure().map_or("", |c| c.name.as_str())
        )));
    }
    Ok(semidirect_product_unchecked(m))
}

/// Same table as [`semidirect_product`] without validating the actions;
/// used to probe invalid data.
pub fn semidirect_product_unchecked(m: &Bimodule) -> Algebra {
    let a = m.base();
    let (d, k) = (a.dim(), m.mdim());
    let n = d + k;
    let mut table = CoeffTensor::square(2, n);
    for i in 0..d {
        for j in 0..d {
            for (o, c) in a.basis_product(i, j).iter().enumerate() {
                table.set(&[i, j], o, c.clone());
            }
        }
        for j in 0..k {
            // e_i · m_j = l(e_i) m_j ; m_j · e_i = r(e_i) m_j
            for o in 0..k {
                table.set(&[i, d + j], d + o, m.l(i)[(o, j)].clone());
                table.set(&[d + j, i], d + o, m.r(i)[(o, j)].clone());
            }
        }
    }
    let mut labels = a.labels().to_vec();
    for l in m.labels() {
        let mut candidate = l.clone();
        while labels.contains(&candidate) {
            candidate.push('\'');
        }
        labels.push(candidate);
    }
    Algebra::new(labels, table).expect("semidirect table")
}

/// `a ·_N b = N(a)·b + a·N(b) − N(a·b)`.
pub fn deformed_product(a: &Algebra, n: &LinearOperator) -> Result<Algebra> {
    let d = a.dim();
    if n.src_dim() != d || n.dst_dim() != d {
        return Err(Error::Shape(format!(
            "deforming operator must be {d}x{d}, got {}x{}",
            n.dst_dim(),
            n.src_dim()
        )));
    }
    let mut table = CoeffTensor::square(2, d);
    for i in 0..d {
        let ni = n.matrix().column(i);
        for j in 0..d {
            let nj = n.matrix().column(j);
            let ei = a.basis(i);
            let ej = a.basis(j);
            let mut v = a.multiply(&ni, &ej);
            axpy(&mut v, &Rational::one(), &a.multiply(&ei, &nj));
            let nab = n.apply(a.basis_product(i, j));
            v = sub_vectors(&v, &nab);
            let flat = table.flatten(&[i, j]);
            table.image_at_mut(flat).clone_from_slice(&v);
        }
    }
    Algebra::new(a.labels().to_vec(), table)
}

/// A Lie algebra given by its bracket structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    bracket: CoeffTensor,
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity on basis elements.
    pub fn new(bracket: CoeffTensor) -> Result<Self> {
        let lie = Self { bracket };
        for check in [lie.antisymmetry(), lie.jacobi()] {
            if !check.holds {
                return Err(Error::Precondition(format!(
                    "{} fails at {:?}",
                    check.name,
                    check.witness.map(|w| w.tuple).unwrap_or_default()
                )));
            }
        }
        Ok(lie)
    }

    pub fn dim(&self) -> usize {
        self.bracket.in_dim()
    }

    pub fn structure(&self) -> &CoeffTensor {
        &self.bracket
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.bracket.eval(&[x, y])
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    pub fn antisymmetry(&self) -> Check {
        let d = self.dim();
        Check::from_residuals(
            "antisymmetry",
            tuples(2, d).map(|t| {
                let r = crate::exactla::add_vectors(
                    self.bracket.image(&t),
                    self.bracket.image(&[t[1], t[0]]),
                );
                (t, r)
            }),
        )
    }

    pub fn jacobi(&self) -> Check {
        let d = self.dim();
        Check::from_residuals(
            "jacobi",
            tuples(3, d).map(|t| {
                let (x, y, z) = (self.basis(t[0]), self.basis(t[1]), self.basis(t[2]));
                let mut r = self.bracket(&x, &self.bracket(&y, &z));
                axpy(
                    &mut r,
                    &Rational::one(),
                    &self.bracket(&y, &self.bracket(&z, &x)),
                );
                axpy(
                    &mut r,
                    &Rational::one(),
                    &self.bracket(&z, &self.bracket(&x, &y)),
                );
                (t, r)
            }),
        )
    }
}

/// `[a,b] = a·b − b·a` on an anti-flexible algebra.
pub fn commutator_lie(a: &Algebra) -> Result<LieAlgebra> {
    let class = classify(a);
    if !class.is_anti_flexible() {
        return Err(Error::Precondition(
            "commutator Lie algebra requires an anti-flexible algebra".into(),
        ));
    }
    LieAlgebra::new(commutator_table(a))
}

pub(crate) fn commutator_table(a: &Algebra) -> CoeffTensor {
    let d = a.dim();
    let mut t = CoeffTensor::square(2, d);
    for i in 0..d {
        for j in 0..d {
            let v = sub_vectors(a.basis_product(i, j), a.basis_product(j, i));
            let flat = t.flatten(&[i, j]);
            t.image_at_mut(flat).clone_from_slice(&v);
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::exactla::q;

    #[test]
    fn multiply_examples() {
        let a1 = Algebra::field();
        assert_eq!(a1.multiply(&[q(1)], &[q(1)]), vec![q(1)]);
        let a0 = Algebra::zero(3);
        let x = vec![q(1), q(2), q(3)];
        assert_eq!(a0.multiply(&x, &x), zero_vector(3));
        let a2 = a2();
        assert_eq!(a2.multiply(&a2.basis(0), &a2.basis(0)), vec![q(0), q(1)]);
        assert_eq!(a2.multiply(&a2.basis(0), &a2.basis(1)), vec![q(0), q(0)]);
    }

    #[test]
    fn associator_examples() {
        let a2 = a2();
        let e1 = a2.basis(0);
        assert_eq!(a2.associator(&e1, &e1, &e1), vec![q(0), q(0)]);
        let na2 = na2();
        let (e1, e2) = (na2.basis(0), na2.basis(1));
        assert_eq!(na2.associator(&e1, &e1, &e2), vec![q(0), q(-1)]);
    }

    #[test]
    fn classify_examples() {
        let c = classify(&a2());
        assert!(c.is_anti_flexible() && c.is_flexible() && c.is_associative());
        let c = classify(&na2());
        assert!(!c.is_anti_flexible());
        let w = c.anti_flexible.witness.unwrap();
        assert_eq!(w.tuple, vec![0, 0, 1]);
        let c = classify(&af2());
        assert!(c.is_anti_flexible() && !c.is_associative());
    }

    #[test]
    fn dim_zero_is_vacuous() {
        let c = classify(&Algebra::zero(0));
        assert!(c.is_anti_flexible() && c.is_flexible() && c.is_associative());
    }

    #[test]
    fn tensor_examples() {
        let t = tensor_with_associative(&af2(), &Algebra::field()).unwrap();
        assert_eq!(t.table(), af2().table());
        let t = tensor_with_associative(&Algebra::zero(2), &a2()).unwrap();
        assert!(t.table().is_zero() && t.dim() == 4);
        let t = tensor_with_associative(&a2(), &a2()).unwrap();
        let mut expected = CoeffTensor::square(2, 4);
        expected.set(&[0, 0], 3, q(1));
        assert_eq!(t.table(), &expected);
        assert!(tensor_with_associative(&a2(), &na2()).is_err());
        assert!(classify(&tensor_with_associative(&af2(), &a2()).unwrap()).is_anti_flexible());
    }

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(&Algebra::field(), &Algebra::field());
        assert_eq!(s.basis_product(0, 0), &[q(1), q(0)]);
        assert_eq!(s.basis_product(1, 1), &[q(0), q(1)]);
        assert_eq!(s.basis_product(0, 1), &[q(0), q(0)]);
        let s = direct_sum(&a2(), &Algebra::field());
        assert!(classify(&s).is_anti_flexible());
        let s = direct_sum(&af2(), &Algebra::zero(1));
        assert_eq!(s.dim(), 3);
        assert!(s.basis_product(2, 2).iter().all(Zero::is_zero));
    }

    #[test]
    fn semidirect_examples() {
        let zero = Bimodule::zero(Algebra::zero(1), 1);
        assert!(semidirect_product(&zero).unwrap().table().is_zero());
        let reg = crate::bimodule::regular_bimodule(&Algebra::field()).unwrap();
        let s = semidirect_product(&reg).unwrap();
        assert_eq!(s.basis_product(0, 0), &[q(1), q(0)]);
        assert_eq!(s.basis_product(0, 1), &[q(0), q(1)]);
        assert_eq!(s.basis_product(1, 0), &[q(0), q(1)]);
        assert_eq!(s.basis_product(1, 1), &[q(0), q(0)]);
        let bad = Bimodule::new(
            Algebra::field(),
            vec![Matrix::scalar(1, q(2))],
            vec![Matrix::zeros(1, 1)],
        )
        .unwrap();
        assert!(semidirect_product(&bad).is_err());
    }

    #[test]
    fn deformed_product_examples() {
        let a = af2();
        let id = LinearOperator::identity(2);
        assert_eq!(deformed_product(&a, &id).unwrap().table(), a.table());
        let zero = LinearOperator::zero(2, 2);
        assert!(deformed_product(&a, &zero).unwrap().table().is_zero());
        let two = LinearOperator::scalar(1, q(2));
        let d = deformed_product(&Algebra::field(), &two).unwrap();
        assert_eq!(d.basis_product(0, 0), &[q(2)]);
    }

    #[test]
    fn commutator_examples() {
        assert!(commutator_lie(&a2()).unwrap().is_abelian());
        assert!(commutator_lie(&Algebra::field()).unwrap().is_abelian());
        let g = commutator_lie(&af2()).unwrap();
        assert!(g.jacobi().holds && g.antisymmetry().holds);
        assert!(commutator_lie(&na2()).is_err());
    }
}
