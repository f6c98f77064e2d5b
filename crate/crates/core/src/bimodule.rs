//! Bimodules over anti-flexible algebras and the derived actions: dual
//! candidate, the commutator representation, the actions induced on `A` by a
//! Rota-Baxter operator, and the Nijenhuis-twisted actions.

use crate::algebra::{commutator_lie, default_labels, deformed_product, Algebra, LieAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Rational};
use crate::structmaps::{require_rota_baxter, star_t_table, LinearOperator};
use crate::verdict::{Check, Verdict};

/// Left and right actions `l, r : A → gl(M)`, one matrix per basis vector
/// of the base algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    base: Algebra,
    labels: Vec<String>,
    l: Vec<Matrix>,
    r: Vec<Matrix>,
}

fn check_action_shapes(base: &Algebra, mdim: usize, l: &[Matrix], r: &[Matrix]) -> Result<()> {
    let d = base.dim();
    if l.len() != d || r.len() != d {
        return Err(Error::Shape(format!(
            "expected {d} action matrices per side, got {} and {}",
            l.len(),
            r.len()
        )));
    }
    for (side, mats) in [("l", l), ("r", r)] {
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != mdim || m.cols() != mdim {
                return Err(Error::Shape(format!(
                    "{side}[{i}] is {}x{}, module dimension is {mdim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
    }
    Ok(())
}

impl Bimodule {
    /// Shape-checked constructor. The axioms are not enforced here; see
    /// [`Bimodule::validate`].
    pub fn new(base: Algebra, l: Vec<Matrix>, r: Vec<Matrix>) -> Result<Self> {
        let mdim = l.first().or(r.first()).map_or(0, Matrix::rows);
        Self::with_dim(base, mdim, l, r)
    }

    pub fn with_dim(base: Algebra, mdim: usize, l: Vec<Matrix>, r: Vec<Matrix>) -> Result<Self> {
        check_action_shapes(&base, mdim, &l, &r)?;
        Ok(Self {
            base,
            labels: default_labels("m", mdim),
            l,
            r,
        })
    }

    pub fn zero(base: Algebra, mdim: usize) -> Self {
        let d = base.dim();
        Self {
            base,
            labels: default_labels("m", mdim),
            l: vec![Matrix::zeros(mdim, mdim); d],
            r: vec![Matrix::zeros(mdim, mdim); d],
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.mdim() {
            return Err(Error::Shape(
                "module label count differs from dimension".into(),
            ));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn mdim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn l(&self, i: usize) -> &Matrix {
        &self.l[i]
    }

    pub fn r(&self, i: usize) -> &Matrix {
        &self.r[i]
    }

    pub fn l_all(&self) -> &[Matrix] {
        &self.l
    }

    pub fn r_all(&self) -> &[Matrix] {
        &self.r
    }

    /// `l(a)` for an arbitrary vector `a`.
    pub fn left_action(&self, a: &[Rational]) -> Matrix {
        combine(&self.l, a, self.mdim())
    }

    pub fn right_action(&self, a: &[Rational]) -> Matrix {
        combine(&self.r, a, self.mdim())
    }

    /// Same actions over another algebra of equal dimension.
    pub fn rebase(&self, base: Algebra) -> Result<Bimodule> {
        let mut m = Bimodule::with_dim(base, self.mdim(), self.l.clone(), self.r.clone())?;
        m.labels = self.labels.clone();
        Ok(m)
    }

    /// Both bimodule axioms on every basis pair.
    pub fn validate(&self) -> Verdict {
        let a = &self.base;
        let d = a.dim();
        let pairs = || crate::exactla::tuples(2, d);
        let left = Check::from_residuals(
            "left-right-action",
            pairs().map(|t| {
                let (i, j) = (t[0], t[1]);
                let lab = self.left_action(a.basis_product(i, j));
                let rba = self.right_action(a.basis_product(j, i));
                let lhs = &lab - &(&self.l[i] * &self.l[j]);
                let rhs = &(&self.r[i] * &self.r[j]) - &rba;
                (t, (&lhs - &rhs).entries().to_vec())
            }),
        );
        let mixed = Check::from_residuals(
            "mixed-action",
            pairs().map(|t| {
                let (i, j) = (t[0], t[1]);
                let lhs = &(&self.l[i] * &self.r[j]) - &(&self.r[j] * &self.l[i]);
                let rhs = &(&self.l[j] * &self.r[i]) - &(&self.r[i] * &self.l[j]);
                (t, (&lhs - &rhs).entries().to_vec())
            }),
        );
        Verdict::new(vec![left, mixed])
    }
}

fn combine(mats: &[Matrix], a: &[Rational], mdim: usize) -> Matrix {
    let mut out = Matrix::zeros(mdim, mdim);
    for (m, c) in mats.iter().zip(a) {
        if !num_traits::Zero::is_zero(c) {
            out = &out + &m.scale(c);
        }
    }
    out
}

/// Checks both axioms for raw action data over `a`.
pub fn is_bimodule(a: &Algebra, l: &[Matrix], r: &[Matrix]) -> Result<Verdict> {
    let m = Bimodule::new(a.clone(), l.to_vec(), r.to_vec())?;
    Ok(m.validate())
}

/// `l(a) = a·(−)`, `r(a) = (−)·a`.
pub fn regular_bimodule(a: &Algebra) -> Result<Bimodule> {
    if !crate::algebra::classify(a).is_anti_flexible() {
        return Err(Error::Precondition(
            "regular bimodule requires an anti-flexible algebra".into(),
        ));
    }
    Ok(regular_actions(a))
}

/// Regular actions without the anti-flexibility precondition.
pub fn regular_actions(a: &Algebra) -> Bimodule {
    let d = a.dim();
    let l = (0..d).map(|i| a.left_multiplication(&a.basis(i))).collect();
    let r = (0..d)
        .map(|i| a.right_multiplication(&a.basis(i)))
        .collect();
    let mut m = Bimodule::with_dim(a.clone(), d, l, r).expect("regular shapes");
    m.labels = a.labels().to_vec();
    m
}

/// The transpose convention `l*(a) = r(a)ᵀ`, `r*(a) = l(a)ᵀ` on `M*`,
/// together with the axiom verdict for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCandidate {
    pub bimodule: Bimodule,
    pub verdict: Verdict,
}

impl DualCandidate {
    pub fn is_valid(&self) -> bool {
        self.verdict.holds()
    }

    /// The dual as a bimodule, or the failed verdict.
    pub fn into_result(self) -> std::result::Result<Bimodule, Verdict> {
        if self.verdict.holds() {
            Ok(self.bimodule)
        } else {
            Err(self.verdict)
        }
    }
}

pub fn dual_bimodule_candidate(m: &Bimodule) -> Result<DualCandidate> {
    let v = m.validate();
    if !v.holds() {
        return Err(Error::Precondition("dual requires a valid bimodule".into()));
    }
    let l = m.r.iter().map(Matrix::transpose).collect();
    let r = m.l.iter().map(Matrix::transpose).collect();
    let bimodule = Bimodule::with_dim(m.base.clone(), m.mdim(), l, r)?
        .with_labels(m.labels.iter().map(|s| format!("{s}*")).collect())?;
    let verdict = bimodule.validate();
    Ok(DualCandidate { bimodule, verdict })
}

/// A representation `ρ : g → gl(M)` by per-basis matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRepresentation {
    lie: LieAlgebra,
    rho: Vec<Matrix>,
}

impl LieRepresentation {
    pub fn new(lie: LieAlgebra, rho: Vec<Matrix>) -> Result<Self> {
        if rho.len() != lie.dim() {
            return Err(Error::Shape(
                "one matrix per Lie basis vector required".into(),
            ));
        }
        let mdim = rho.first().map_or(0, Matrix::rows);
        if rho.iter().any(|m| m.rows() != mdim || m.cols() != mdim) {
            return Err(Error::Shape(
                "representation matrices must be square of equal size".into(),
            ));
        }
        Ok(Self { lie, rho })
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn mdim(&self) -> usize {
        self.rho.first().map_or(0, Matrix::rows)
    }

    pub fn rho(&self, i: usize) -> &Matrix {
        &self.rho[i]
    }

    pub fn action(&self, x: &[Rational]) -> Matrix {
        combine(&self.rho, x, self.mdim())
    }

    pub fn is_zero(&self) -> bool {
        self.rho.iter().all(Matrix::is_zero)
    }

    /// `ρ([a,b]) = ρ(a)ρ(b) − ρ(b)ρ(a)` on basis pairs.
    pub fn validate(&self) -> Check {
        let d = self.lie.dim();
        Check::from_residuals(
            "representation",
            crate::exactla::tuples(2, d).map(|t| {
                let (i, j) = (t[0], t[1]);
                let br = self.lie.structure().image(&[i, j]).to_vec();
                let lhs = self.action(&br);
                let rhs = &(&self.rho[i] * &self.rho[j]) - &(&self.rho[j] * &self.rho[i]);
                (t, (&lhs - &rhs).entries().to_vec())
            }),
        )
    }
}

/// `(M, l − r)` over the commutator Lie algebra.
pub fn lie_representation(m: &Bimodule) -> Result<LieRepresentation> {
    if !m.validate().holds() {
        return Err(Error::Precondition(
            "representation requires a valid bimodule".into(),
        ));
    }
    let lie = commutator_lie(m.base())?;
    let rho = m.l.iter().zip(&m.r).map(|(l, r)| l - r).collect();
    LieRepresentation::new(lie, rho)
}

/// The bimodule `(A, l_T, r_T)` over `(M, ⋆_T)`:
/// `l_T(m)a = T(m)·a − T(r(a)m)`, `r_T(m)a = a·T(m) − T(l(a)m)`.
pub fn induced_bimodule_on_a(m: &Bimodule, t: &LinearOperator) -> Result<Bimodule> {
    require_rota_baxter(m, t)?;
    Ok(induced_actions_on_a(m, t))
}

pub(crate) fn induced_actions_on_a(m: &Bimodule, t: &LinearOperator) -> Bimodule {
    let a = m.base();
    let (d, k) = (a.dim(), m.mdim());
    let star = star_t_table(m, t);
    let mut lt = Vec::with_capacity(k);
    let mut rt = Vec::with_capacity(k);
    for j in 0..k {
        let tm = t.matrix().column(j);
        let mut lcols = Vec::with_capacity(d);
        let mut rcols = Vec::with_capacity(d);
        for i in 0..d {
            let ai = a.basis(i);
            let left =
                crate::exactla::sub_vectors(&a.multiply(&tm, &ai), &t.apply(&m.r(i).column(j)));
            let right =
                crate::exactla::sub_vectors(&a.multiply(&ai, &tm), &t.apply(&m.l(i).column(j)));
            lcols.push(left);
            rcols.push(right);
        }
        lt.push(Matrix::from_columns(d, &lcols));
        rt.push(Matrix::from_columns(d, &rcols));
    }
    let mut out = Bimodule::with_dim(star, d, lt, rt).expect("induced shapes");
    out.labels = a.labels().to_vec();
    out
}

/// `l̃(a) = l(Na) − l(a)S + S l(a)`, `r̃(a) = r(Na) − r(a)S + S r(a)`,
/// over the deformed algebra `(A, ·_N)`.
pub fn tilde_bimodule(m: &Bimodule, n: &LinearOperator, s: &LinearOperator) -> Result<Bimodule> {
    let ns = crate::deformation::is_nijenhuis_structure(m, n, s)?;
    if !ns.holds() {
        return Err(Error::Precondition(
            "(N, S) is not a Nijenhuis structure".into(),
        ));
    }
    tilde_actions(m, n, s)
}

pub(crate) fn tilde_actions(
    m: &Bimodule,
    n: &LinearOperator,
    s: &LinearOperator,
) -> Result<Bimodule> {
    let a = m.base();
    let d = a.dim();
    let sm = s.matrix();
    let twist = |act: &dyn Fn(&[Rational]) -> Matrix, own: &Matrix, i: usize| -> Matrix {
        let nai = n.matrix().column(i);
        let base = act(&nai);
        &(&base - &(own * sm)) + &(sm * own)
    };
    let l: Vec<Matrix> = (0..d)
        .map(|i| twist(&|v| m.left_action(v), m.l(i), i))
        .collect();
    let r: Vec<Matrix> = (0..d)
        .map(|i| twist(&|v| m.right_action(v), m.r(i), i))
        .collect();
    let deformed = deformed_product(a, n)?;
    let mut out = Bimodule::with_dim(deformed, m.mdim(), l, r)?;
    out.labels = m.labels.clone();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::exactla::q;

    #[test]
    fn zero_actions_are_bimodule() {
        for a in [Algebra::zero(2), a2(), na2(), af2()] {
            assert!(Bimodule::zero(a, 2).validate().holds());
        }
    }

    #[test]
    fn regular_matches_anti_flexibility() {
        assert!(regular_actions(&a2()).validate().holds());
        assert!(regular_actions(&af2()).validate().holds());
        let v = regular_actions(&na2()).validate();
        assert!(!v.holds());
        assert!(regular_bimodule(&na2()).is_err());
    }

    #[test]
    fn regular_examples() {
        let m = regular_bimodule(&Algebra::zero(3)).unwrap();
        assert!(m.l_all().iter().chain(m.r_all()).all(Matrix::is_zero));
        let m = regular_bimodule(&Algebra::field()).unwrap();
        assert_eq!(m.l(0), &Matrix::identity(1));
        assert_eq!(m.r(0), &Matrix::identity(1));
        let m = regular_bimodule(&a2()).unwrap();
        let expected = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        assert_eq!(m.l(0), &expected);
        assert_eq!(m.r(0), &expected);
        assert!(m.l(1).is_zero() && m.r(1).is_zero());
    }

    #[test]
    fn invalid_action_reports_pair() {
        let bad = Bimodule::new(
            Algebra::field(),
            vec![Matrix::scalar(1, q(2))],
            vec![Matrix::zeros(1, 1)],
        )
        .unwrap();
        let v = bad.validate();
        let fail = v.first_failure().unwrap();
        assert_eq!(fail.name, "left-right-action");
        // l(e·e) − l(e)l(e) = 2 − 4
        assert_eq!(fail.witness.as_ref().unwrap().residual, vec![q(-2)]);
    }

    #[test]
    fn shape_errors() {
        assert!(Bimodule::new(a2(), vec![Matrix::identity(1)], vec![Matrix::identity(1)]).is_err());
        assert!(is_bimodule(
            &Algebra::field(),
            &[Matrix::identity(2)],
            &[Matrix::identity(1)]
        )
        .is_err());
    }

    #[test]
    fn dual_candidate_examples() {
        let d = dual_bimodule_candidate(&Bimodule::zero(af2(), 2)).unwrap();
        assert!(d.is_valid());
        let d = dual_bimodule_candidate(&regular_bimodule(&a2()).unwrap()).unwrap();
        assert!(d.is_valid());
    }

    #[test]
    fn lie_representation_examples() {
        let rho = lie_representation(&regular_bimodule(&a2()).unwrap()).unwrap();
        assert!(rho.is_zero());
        let rho = lie_representation(&regular_bimodule(&af2()).unwrap()).unwrap();
        assert!(rho.validate().holds);
        assert!(!rho.is_zero());
    }

    #[test]
    fn tilde_identity_and_zero() {
        let m = regular_bimodule(&af2()).unwrap();
        let id = LinearOperator::identity(2);
        let t = tilde_bimodule(&m, &id, &id).unwrap();
        assert_eq!(t.l_all(), m.l_all());
        assert_eq!(t.r_all(), m.r_all());
        let z = LinearOperator::zero(2, 2);
        let t = tilde_bimodule(&m, &z, &z).unwrap();
        assert!(t.l_all().iter().chain(t.r_all()).all(Matrix::is_zero));
    }

    #[test]
    fn induced_zero_operator() {
        let m = regular_bimodule(&af2()).unwrap();
        let b = induced_bimodule_on_a(&m, &LinearOperator::zero(2, 2)).unwrap();
        assert!(b.l_all().iter().chain(b.r_all()).all(Matrix::is_zero));
        assert!(b.base().table().is_zero());
    }
}
