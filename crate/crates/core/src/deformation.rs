//! First-order deformations `a·_t b = a·b + tω(a,b)`, `lᵗ = l + tφ`,
//! `rᵗ = r + tψ` of a bimodule, their equivalence, and Nijenhuis structures.

use crate::algebra::{semidirect_product_unchecked, Algebra};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::exactla::{sub_vectors, tuples, CoeffTensor, Matrix, Rational, Vector};
use crate::glie::{circbar, graded_bracket, MultilinearMap};
use crate::structmaps::{expect_shape, is_nijenhuis, LinearOperator};
use crate::verdict::{Check, Verdict};

/// `(ω, φ, ψ)` with `ω : A⊗A → A` and `φ, ψ : A → gl(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitesimalDeformation {
    pub omega: CoeffTensor,
    pub phi: Vec<Matrix>,
    pub psi: Vec<Matrix>,
}

impl InfinitesimalDeformation {
    pub fn zero(m: &Bimodule) -> Self {
        let (d, k) = (m.base().dim(), m.mdim());
        Self {
            omega: CoeffTensor::square(2, d),
            phi: vec![Matrix::zeros(k, k); d],
            psi: vec![Matrix::zeros(k, k); d],
        }
    }

    /// The structure `(μ, l, r)` itself, as a generator.
    pub fn of_structure(m: &Bimodule) -> Self {
        Self {
            omega: m.base().table().clone(),
            phi: m.l_all().to_vec(),
            psi: m.r_all().to_vec(),
        }
    }

    pub fn check_shape(&self, m: &Bimodule) -> Result<()> {
        let (d, k) = (m.base().dim(), m.mdim());
        if self.omega.arity() != 2 || self.omega.in_dim() != d || self.omega.out_dim() != d {
            return Err(Error::Shape(format!(
                "omega must be a {d}-dimensional bilinear map"
            )));
        }
        if self.phi.len() != d || self.psi.len() != d {
            return Err(Error::Shape(format!("phi and psi need {d} matrices each")));
        }
        if self
            .phi
            .iter()
            .chain(&self.psi)
            .any(|x| x.rows() != k || x.cols() != k)
        {
            return Err(Error::Shape(format!(
                "phi and psi matrices must be {k}x{k}"
            )));
        }
        Ok(())
    }

    /// `δ = ω + φ + ψ` on `A ⊕ M`.
    pub fn ambient(&self, m: &Bimodule) -> Result<MultilinearMap> {
        self.check_shape(m)?;
        let base = Algebra::new(m.base().labels().to_vec(), self.omega.clone())?;
        let data = Bimodule::with_dim(base, m.mdim(), self.phi.clone(), self.psi.clone())?;
        MultilinearMap::new(semidirect_product_unchecked(&data).table().clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            omega: &self.omega + &other.omega,
            phi: self
                .phi
                .iter()
                .zip(&other.phi)
                .map(|(x, y)| x + y)
                .collect(),
            psi: self
                .psi
                .iter()
                .zip(&other.psi)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

/// A pair `N ∈ gl(A)`, `S ∈ gl(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NijenhuisStructure {
    pub n: LinearOperator,
    pub s: LinearOperator,
}

fn pi_of(m: &Bimodule) -> MultilinearMap {
    crate::glie::ambient_structure(m)
}

fn zero_check(name: &str, h: &MultilinearMap) -> Check {
    match h.tensor().first_nonzero() {
        None => Check::pass(name),
        Some((t, r)) => Check::fail(name, t, r),
    }
}

/// `(π + tδ)∘̄(π + tδ) = 0` coefficientwise in `t`; the constant term is
/// reported as well since invalid ambient data makes the question moot.
pub fn is_valid_deformation(m: &Bimodule, d: &InfinitesimalDeformation) -> Result<Verdict> {
    let pi = pi_of(m);
    let delta = d.ambient(m)?;
    let t0 = circbar(&pi, &pi)?;
    let t1 = circbar(&pi, &delta)?.add(&circbar(&delta, &pi)?);
    let t2 = circbar(&delta, &delta)?;
    Ok(Verdict::new(vec![
        zero_check("order-0", &t0),
        zero_check("order-1", &t1),
        zero_check("order-2", &t2),
    ]))
}

/// `d δ = [π, δ] = 0`.
pub fn is_closed_2cochain(m: &Bimodule, d: &InfinitesimalDeformation) -> Result<Check> {
    let delta = d.ambient(m)?;
    Ok(zero_check("closed", &graded_bracket(&pi_of(m), &delta)?))
}

fn pair_operator(m: &Bimodule, n: &LinearOperator, s: &LinearOperator) -> Result<LinearOperator> {
    let (d, k) = (m.base().dim(), m.mdim());
    expect_shape(n, d, d, "N")?;
    expect_shape(s, k, k, "S")?;
    Ok(n.direct_sum(s))
}

fn as_map(k: &LinearOperator) -> MultilinearMap {
    let dim = k.src_dim();
    let mut t = CoeffTensor::square(1, dim);
    for j in 0..dim {
        t.image_at_mut(j).clone_from_slice(&k.matrix().column(j));
    }
    MultilinearMap::new(t).expect("square operator")
}

/// `d(N + S) = [π, N ⊕ S]`.
pub fn coboundary_of_pair(
    m: &Bimodule,
    n: &LinearOperator,
    s: &LinearOperator,
) -> Result<MultilinearMap> {
    let k = pair_operator(m, n, s)?;
    graded_bracket(&pi_of(m), &as_map(&k))
}

/// The three conditions for `(Id + tN, Id + tS)` to carry the deformation
/// `D` to `D'`.
pub fn are_equivalent_deformations(
    m: &Bimodule,
    d: &InfinitesimalDeformation,
    d2: &InfinitesimalDeformation,
    n: &LinearOperator,
    s: &LinearOperator,
) -> Result<Verdict> {
    let k = pair_operator(m, n, s)?;
    let pi = pi_of(m);
    let delta = d.ambient(m)?;
    let delta2 = d2.ambient(m)?;
    let dk = coboundary_of_pair(m, n, s)?;
    let first = zero_check("difference-is-coboundary", &delta.sub(&delta2).sub(&dk));
    let dim = pi.dim();
    let kx: Vec<Vector> = (0..dim).map(|j| k.matrix().column(j)).collect();
    let basis = |i: usize| crate::exactla::unit_vector(dim, i);
    let second = Check::from_residuals(
        "quadratic-term",
        tuples(2, dim).map(|t| (t.clone(), delta2.eval(&[&kx[t[0]], &kx[t[1]]]))),
    );
    let third = Check::from_residuals(
        "intertwining",
        tuples(2, dim).map(|t| {
            let (x, y) = (basis(t[0]), basis(t[1]));
            let lhs = k.apply(delta.tensor().image(&t));
            let mut rhs = delta2.eval(&[&x, &kx[t[1]]]);
            rhs = crate::exactla::add_vectors(&rhs, &delta2.eval(&[&kx[t[0]], &y]));
            rhs = crate::exactla::add_vectors(&rhs, &pi.eval(&[&kx[t[0]], &kx[t[1]]]));
            (t, sub_vectors(&lhs, &rhs))
        }),
    );
    Ok(Verdict::new(vec![first, second, third]))
}

fn s_condition(
    name: &str,
    m: &Bimodule,
    n: &LinearOperator,
    s: &LinearOperator,
    left: bool,
) -> Check {
    let d = m.base().dim();
    let act = |v: &[Rational]| {
        if left {
            m.left_action(v)
        } else {
            m.right_action(v)
        }
    };
    let sm = s.matrix();
    Check::from_residuals(
        name,
        (0..d).map(|i| {
            let own = act(&m.base().basis(i));
            let twisted = act(&n.matrix().column(i));
            // twisted·S − S·(twisted + own·S − S·own)
            let inner = &(&twisted + &(&own * sm)) - &(sm * &own);
            let r = &(&twisted * sm) - &(sm * &inner);
            (vec![i], r.entries().to_vec())
        }),
    )
}

fn s_variant(
    name: &str,
    m: &Bimodule,
    n: &LinearOperator,
    s: &LinearOperator,
    left: bool,
) -> Check {
    let d = m.base().dim();
    let act = |v: &[Rational]| {
        if left {
            m.left_action(v)
        } else {
            m.right_action(v)
        }
    };
    let sm = s.matrix();
    let s2 = sm * sm;
    Check::from_residuals(
        name,
        (0..d).map(|i| {
            let own = act(&m.base().basis(i));
            let twisted = act(&n.matrix().column(i));
            // twisted·S − (S·twisted + own·S² − S·own·S)
            let rhs = &(&(sm * &twisted) + &(&own * &s2)) - &(&(sm * &own) * sm);
            let r = &(&twisted * sm) - &rhs;
            (vec![i], r.entries().to_vec())
        }),
    )
}

/// Verdicts for a candidate pair `(N, S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NijenhuisStructureReport {
    /// `N ⊕ S` is Nijenhuis on the semidirect product.
    pub primary: Check,
    /// `N` Nijenhuis and both compatibility conditions on `S`.
    pub secondary: Verdict,
    /// The `S²` form of the compatibility conditions, reported only.
    pub variant: Verdict,
}

impl NijenhuisStructureReport {
    pub fn holds(&self) -> bool {
        self.primary.holds
    }

    pub fn routes_agree(&self) -> bool {
        self.primary.holds == self.secondary.holds()
    }

    pub fn variant_agrees(&self) -> bool {
        self.primary.holds == (self.secondary.checks[0].holds && self.variant.holds())
    }

    pub fn to_verdict(&self) -> Verdict {
        let mut v = Verdict::new(vec![self.primary.clone()]);
        v.extend(self.secondary.clone());
        v.push(Check::from_bool("routes-agree", self.routes_agree()));
        v
    }
}

pub fn is_nijenhuis_structure(
    m: &Bimodule,
    n: &LinearOperator,
    s: &LinearOperator,
) -> Result<NijenhuisStructureReport> {
    let k = pair_operator(m, n, s)?;
    let sd = semidirect_product_unchecked(m);
    let mut primary = is_nijenhuis(&sd, &k)?;
    primary.name = "semidirect-nijenhuis".into();
    let secondary = Verdict::new(vec![
        is_nijenhuis(m.base(), n)?,
        s_condition("left-compatibility", m, n, s, true),
        s_condition("right-compatibility", m, n, s, false),
    ]);
    let variant = Verdict::new(vec![
        s_variant("left-square-variant", m, n, s, true),
        s_variant("right-square-variant", m, n, s, false),
    ]);
    Ok(NijenhuisStructureReport {
        primary,
        secondary,
        variant,
    })
}

/// `ω(a,b) = N(a)·b + a·N(b) − N(a·b)`,
/// `φ(a) = l(N(a)) + l(a)S − S l(a)`, `ψ(a) = r(N(a)) + r(a)S − S r(a)`,
/// with the six identities they satisfy.
pub fn trivial_deformation_from(
    m: &Bimodule,
    n: &LinearOperator,
    s: &LinearOperator,
) -> Result<(InfinitesimalDeformation, Verdict)> {
    let report = is_nijenhuis_structure(m, n, s)?;
    if !report.holds() {
        return Err(Error::Precondition(
            "(N, S) is not a Nijenhuis structure".into(),
        ));
    }
    let a = m.base();
    let d = a.dim();
    let omega = crate::algebra::deformed_product(a, n)?.table().clone();
    let sm = s.matrix();
    let twist = |own: &Matrix, twisted: Matrix| &(&twisted + &(own * sm)) - &(sm * own);
    let phi: Vec<Matrix> = (0..d)
        .map(|i| twist(m.l(i), m.left_action(&n.matrix().column(i))))
        .collect();
    let psi: Vec<Matrix> = (0..d)
        .map(|i| twist(m.r(i), m.right_action(&n.matrix().column(i))))
        .collect();
    let def = InfinitesimalDeformation { omega, phi, psi };
    let ledger = trivial_ledger(m, n, s, &def);
    Ok((def, ledger))
}

fn trivial_ledger(
    m: &Bimodule,
    n: &LinearOperator,
    s: &LinearOperator,
    def: &InfinitesimalDeformation,
) -> Verdict {
    let a = m.base();
    let d = a.dim();
    let sm = s.matrix();
    let nimg: Vec<Vector> = (0..d).map(|j| n.matrix().column(j)).collect();
    let omega_formula = Check::from_residuals(
        "omega-formula",
        tuples(2, d).map(|t| {
            let (x, y) = (a.basis(t[0]), a.basis(t[1]));
            let mut v = a.multiply(&nimg[t[0]], &y);
            v = crate::exactla::add_vectors(&v, &a.multiply(&x, &nimg[t[1]]));
            v = sub_vectors(&v, &n.apply(a.basis_product(t[0], t[1])));
            (t.clone(), sub_vectors(def.omega.image(&t), &v))
        }),
    );
    let omega_hom = Check::from_residuals(
        "omega-nijenhuis",
        tuples(2, d).map(|t| {
            let lhs = n.apply(def.omega.image(&t));
            (
                t.clone(),
                sub_vectors(&lhs, &a.multiply(&nimg[t[0]], &nimg[t[1]])),
            )
        }),
    );
    let mut checks = vec![omega_formula, omega_hom];
    for (side, own, gen) in [("phi", true, &def.phi), ("psi", false, &def.psi)] {
        let act = |v: &[Rational]| {
            if own {
                m.left_action(v)
            } else {
                m.right_action(v)
            }
        };
        checks.push(Check::from_residuals(
            format!("{side}-formula"),
            (0..d).map(|i| {
                let base = act(&a.basis(i));
                let expected = &(&act(&nimg[i]) + &(&base * sm)) - &(sm * &base);
                (vec![i], (&gen[i] - &expected).entries().to_vec())
            }),
        ));
        checks.push(Check::from_residuals(
            format!("{side}-intertwining"),
            (0..d).map(|i| {
                let r = &(&act(&nimg[i]) * sm) - &(sm * &gen[i]);
                (vec![i], r.entries().to_vec())
            }),
        ));
    }
    Verdict::new(checks)
}

pub const DEFAULT_STRUCTURE_POWER_CAP: usize = 3;

/// Whether `(Nⁱ, Sⁱ)` is again a Nijenhuis structure.
pub fn nijenhuis_structure_powers(
    m: &Bimodule,
    n: &LinearOperator,
    s: &LinearOperator,
    i: usize,
    cap: usize,
) -> Result<NijenhuisStructureReport> {
    if i > cap {
        return Err(Error::DegreeCap { requested: i, cap });
    }
    if !is_nijenhuis_structure(m, n, s)?.holds() {
        return Err(Error::Precondition(
            "(N, S) is not a Nijenhuis structure".into(),
        ));
    }
    is_nijenhuis_structure(m, &n.pow(i as u32), &s.pow(i as u32))
}

/// Matrix of `(N, S) ↦ d(N + S)` from `gl(A) ⊕ gl(M)` into bilinear maps
/// on `A ⊕ M`, columns indexed by the entries of `N` then `S`.
pub fn pair_coboundary_matrix(m: &Bimodule) -> Result<Matrix> {
    let (d, k) = (m.base().dim(), m.mdim());
    let mut cols = Vec::with_capacity(d * d + k * k);
    for (size, is_n) in [(d, true), (k, false)] {
        for r in 0..size {
            for c in 0..size {
                let mut e = Matrix::zeros(size, size);
                e[(r, c)] = Rational::from_integer(1.into());
                let (n, s) = if is_n {
                    (LinearOperator::new(e), LinearOperator::zero(k, k))
                } else {
                    (LinearOperator::zero(d, d), LinearOperator::new(e))
                };
                cols.push(coboundary_of_pair(m, &n, &s)?.into_tensor().into_entries());
            }
        }
    }
    let rows = cols.first().map_or((d + k).pow(3), Vec::len);
    Ok(Matrix::from_columns(rows, &cols))
}

/// Whether `δ − δ'` is `d(N + S)` for some pair, by exact solving.
pub fn difference_is_coboundary(
    m: &Bimodule,
    d: &InfinitesimalDeformation,
    d2: &InfinitesimalDeformation,
) -> Result<bool> {
    let diff = d.ambient(m)?.sub(&d2.ambient(m)?);
    let mat = pair_coboundary_matrix(m)?;
    Ok(mat.solve(diff.tensor().entries()).is_some())
}
