//! Operator-level structure: Rota-Baxter and Nijenhuis operators, graph
//! characterizations, pre-anti-flexible algebras, morphisms of Rota-Baxter
//! operators and the Lie-algebra Rota-Baxter identity.

use num_traits::Zero;

use crate::algebra::{
    classify, deformed_product, direct_sum, semidirect_product_unchecked, Algebra,
};
use crate::bimodule::{Bimodule, LieRepresentation};
use crate::error::{Error, Result};
use crate::exactla::{add_vectors, sub_vectors, tuples, CoeffTensor, Matrix, Rational, Vector};
use crate::verdict::{Check, Verdict};

/// A linear map between based spaces, `dst_dim × src_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearOperator {
    matrix: Matrix,
}

impl LinearOperator {
    pub fn new(matrix: Matrix) -> Self {
        Self { matrix }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::new(Matrix::from_i64(rows))
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Matrix::identity(n))
    }

    pub fn scalar(n: usize, value: Rational) -> Self {
        Self::new(Matrix::scalar(n, value))
    }

    pub fn zero(dst_dim: usize, src_dim: usize) -> Self {
        Self::new(Matrix::zeros(dst_dim, src_dim))
    }

    pub fn src_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn dst_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        self.matrix.apply(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearOperator) -> LinearOperator {
        Self::new(&self.matrix * &other.matrix)
    }

    pub fn add(&self, other: &LinearOperator) -> LinearOperator {
        Self::new(&self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &LinearOperator) -> LinearOperator {
        Self::new(&self.matrix - &other.matrix)
    }

    pub fn scale(&self, s: &Rational) -> LinearOperator {
        Self::new(self.matrix.scale(s))
    }

    pub fn pow(&self, k: u32) -> LinearOperator {
        Self::new(self.matrix.pow(k))
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn inverse(&self) -> Result<LinearOperator> {
        self.matrix
            .inverse()
            .map(Self::new)
            .ok_or_else(|| Error::NotInvertible(format!("{:?}", self.matrix)))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &LinearOperator) -> LinearOperator {
        let (r1, c1) = (self.dst_dim(), self.src_dim());
        let (r2, c2) = (other.dst_dim(), other.src_dim());
        let mut m = Matrix::zeros(r1 + r2, c1 + c2);
        for i in 0..r1 {
            for j in 0..c1 {
                m[(i, j)] = self.matrix[(i, j)].clone();
            }
        }
        for i in 0..r2 {
            for j in 0..c2 {
                m[(r1 + i, c1 + j)] = other.matrix[(i, j)].clone();
            }
        }
        Self::new(m)
    }

    /// Whether the matrix is `λ·I` for some `λ`.
    pub fn is_scalar(&self) -> bool {
        if !self.matrix.is_square() {
            return false;
        }
        let n = self.dst_dim();
        if n == 0 {
            return true;
        }
        let lambda = &self.matrix[(0, 0)];
        (0..n).all(|i| {
            (0..n).all(|j| {
                let x = &self.matrix[(i, j)];
                if i == j {
                    x == lambda
                } else {
                    x.is_zero()
                }
            })
        })
    }
}

pub(crate) fn expect_shape(op: &LinearOperator, dst: usize, src: usize, what: &str) -> Result<()> {
    if op.dst_dim() != dst || op.src_dim() != src {
        return Err(Error::Shape(format!(
            "{what} must be {dst}x{src}, got {}x{}",
            op.dst_dim(),
            op.src_dim()
        )));
    }
    Ok(())
}

fn rb_residuals<'a>(
    m: &'a Bimodule,
    t: &'a LinearOperator,
) -> impl Iterator<Item = (Vec<usize>, Vector)> + 'a {
    let a = m.base();
    let k = m.mdim();
    let images: Vec<Vector> = (0..k).map(|j| t.matrix().column(j)).collect();
    tuples(2, k).map(move |p| {
        let (i, j) = (p[0], p[1]);
        let (ti, tj) = (&images[i], &images[j]);
        let lhs = a.multiply(ti, tj);
        let inner = add_vectors(&m.left_action(ti).column(j), &m.right_action(tj).column(i));
        (p, sub_vectors(&lhs, &t.apply(&inner)))
    })
}

/// `T(m)·T(n) = T(l(T(m))n + r(T(n))m)` on basis pairs of `M`.
pub fn is_rota_baxter(m: &Bimodule, t: &LinearOperator) -> Result<Check> {
    expect_shape(t, m.base().dim(), m.mdim(), "T")?;
    Ok(Check::from_residuals("rota-baxter", rb_residuals(m, t)))
}

pub(crate) fn require_rota_baxter(m: &Bimodule, t: &LinearOperator) -> Result<()> {
    let c = is_rota_baxter(m, t)?;
    if c.holds {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "T is not a Rota-Baxter operator (fails at {:?})",
            c.witness.map(|w| w.tuple).unwrap_or_default()
        )))
    }
}

/// Closure of `{(T(m), m)}` under the semidirect product: the product of
/// two graph generators `(x, y)` must satisfy `x = T(y)`.
pub fn rb_graph_is_subalgebra(m: &Bimodule, t: &LinearOperator) -> Result<Check> {
    let d = m.base().dim();
    let k = m.mdim();
    expect_shape(t, d, k, "T")?;
    let sd = semidirect_product_unchecked(m);
    let gens: Vec<Vector> = (0..k)
        .map(|j| {
            let mut v = t.matrix().column(j);
            v.extend((0..k).map(|i| {
                if i == j {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            v
        })
        .collect();
    Ok(Check::from_residuals(
        "graph-subalgebra",
        tuples(2, k).map(|p| {
            let prod = sd.multiply(&gens[p[0]], &gens[p[1]]);
            let (x, y) = prod.split_at(d);
            (p, sub_vectors(x, &t.apply(y)))
        }),
    ))
}

/// `N(a)·N(b) = N(Na·b + a·Nb − N(a·b))` on basis pairs.
pub fn is_nijenhuis(a: &Algebra, n: &LinearOperator) -> Result<Check> {
    let d = a.dim();
    expect_shape(n, d, d, "N")?;
    let images: Vec<Vector> = (0..d).map(|j| n.matrix().column(j)).collect();
    Ok(Check::from_residuals(
        "nijenhuis",
        tuples(2, d).map(|p| {
            let (i, j) = (p[0], p[1]);
            let lhs = a.multiply(&images[i], &images[j]);
            let mut inner = add_vectors(
                &a.multiply(&images[i], &a.basis(j)),
                &a.multiply(&a.basis(i), &images[j]),
            );
            inner = sub_vectors(&inner, &n.apply(a.basis_product(i, j)));
            (p, sub_vectors(&lhs, &n.apply(&inner)))
        }),
    ))
}

/// Anti-flexibility of `α·μ₁ + β·μ₂` for all `α, β`, split into the
/// coefficients of `α²`, `β²` and `αβ`.
pub fn combination_anti_flexible(m1: &Algebra, m2: &Algebra) -> Verdict {
    let d = m1.dim();
    let cross = |x: &[Rational], y: &[Rational], z: &[Rational]| -> Vector {
        let mut v = m1.multiply(&m2.multiply(x, y), z);
        v = sub_vectors(&v, &m1.multiply(x, &m2.multiply(y, z)));
        v = add_vectors(&v, &m2.multiply(&m1.multiply(x, y), z));
        sub_vectors(&v, &m2.multiply(x, &m1.multiply(y, z)))
    };
    let cross_check = Check::from_residuals(
        "combination-cross-term",
        tuples(3, d).map(|t| {
            let (x, y, z) = (m1.basis(t[0]), m1.basis(t[1]), m1.basis(t[2]));
            let r = sub_vectors(&cross(&x, &y, &z), &cross(&z, &y, &x));
            (t, r)
        }),
    );
    let mut first = classify(m1).anti_flexible;
    first.name = "combination-first-square".into();
    let mut second = classify(m2).anti_flexible;
    second.name = "combination-second-square".into();
    Verdict::new(vec![first, second, cross_check])
}

fn homomorphism_check(name: &str, f: &LinearOperator, src: &Algebra, dst: &Algebra) -> Check {
    let d = src.dim();
    let images: Vec<Vector> = (0..d).map(|j| f.matrix().column(j)).collect();
    Check::from_residuals(
        name,
        tuples(2, d).map(|p| {
            let lhs = f.apply(src.basis_product(p[0], p[1]));
            let rhs = dst.multiply(&images[p[0]], &images[p[1]]);
            (p, sub_vectors(&lhs, &rhs))
        }),
    )
}

/// Whether `f` is an algebra homomorphism `src → dst`.
pub fn is_homomorphism(f: &LinearOperator, src: &Algebra, dst: &Algebra) -> Result<Check> {
    expect_shape(f, dst.dim(), src.dim(), "homomorphism")?;
    Ok(homomorphism_check("homomorphism", f, src, dst))
}

pub const DEFAULT_POWER_CAP: usize = 3;

/// The five power statements for a Nijenhuis operator with exponents `k, l`.
pub fn nijenhuis_power_suite(
    a: &Algebra,
    n: &LinearOperator,
    k: usize,
    l: usize,
    cap: usize,
) -> Result<Verdict> {
    let base = is_nijenhuis(a, n)?;
    if !base.holds {
        return Err(Error::Precondition("N is not a Nijenhuis operator".into()));
    }
    for e in [k, l] {
        if e > cap {
            return Err(Error::DegreeCap { requested: e, cap });
        }
    }
    let nk = n.pow(k as u32);
    let nl = n.pow(l as u32);
    let nkl = n.pow((k + l) as u32);
    let prod_k = deformed_product(a, &nk)?;
    let prod_l = deformed_product(a, &nl)?;
    let prod_kl = deformed_product(a, &nkl)?;
    let mut checks = Vec::new();
    let mut i = classify(&prod_k).anti_flexible;
    i.name = "power-anti-flexible".into();
    checks.push(i);
    let mut ii = is_nijenhuis(&prod_k, &nl)?;
    ii.name = "power-nijenhuis".into();
    checks.push(ii);
    let iterated = deformed_product(&prod_k, &nl)?;
    checks.push(Check::from_residuals(
        "power-iterated-product",
        tuples(2, a.dim()).map(|p| {
            (
                p.clone(),
                sub_vectors(iterated.table().image(&p), prod_kl.table().image(&p)),
            )
        }),
    ));
    let combo = combination_anti_flexible(&prod_k, &prod_l);
    checks.push(Check {
        name: "power-compatible".into(),
        holds: combo.holds(),
        witness: combo.first_failure().and_then(|c| c.witness.clone()),
    });
    checks.push(homomorphism_check(
        "power-homomorphism",
        &nl,
        &prod_kl,
        &prod_k,
    ));
    Ok(Verdict::new(checks))
}

/// `N_T = [[0, T], [0, 0]]` on `A ⊕ M`.
pub fn n_t_operator(t: &LinearOperator) -> LinearOperator {
    let (d, k) = (t.dst_dim(), t.src_dim());
    let mut m = Matrix::zeros(d + k, d + k);
    for i in 0..d {
        for j in 0..k {
            m[(i, d + j)] = t.matrix()[(i, j)].clone();
        }
    }
    LinearOperator::new(m)
}

/// `(is_rota_baxter(T), is_nijenhuis(A ⋉ M, N_T))`.
pub fn nt_nijenhuis_equivalence(m: &Bimodule, t: &LinearOperator) -> Result<(Check, Check)> {
    let rb = is_rota_baxter(m, t)?;
    let sd = semidirect_product_unchecked(m);
    let nij = is_nijenhuis(&sd, &n_t_operator(t))?;
    Ok((rb, nij))
}

/// Two products `≺, ≻` on one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreAntiFlexibleAlgebra {
    prec: CoeffTensor,
    succ: CoeffTensor,
}

impl PreAntiFlexibleAlgebra {
    pub fn new(prec: CoeffTensor, succ: CoeffTensor) -> Result<Self> {
        if prec.arity() != 2 || !prec.same_shape(&succ) || prec.in_dim() != prec.out_dim() {
            return Err(Error::Shape(
                "≺ and ≻ must be square arity-2 tensors of equal size".into(),
            ));
        }
        Ok(Self { prec, succ })
    }

    pub fn dim(&self) -> usize {
        self.prec.in_dim()
    }

    pub fn prec(&self) -> &CoeffTensor {
        &self.prec
    }

    pub fn succ(&self) -> &CoeffTensor {
        &self.succ
    }

    /// `a ∗ b = a ≺ b + a ≻ b`.
    pub fn sum(&self) -> CoeffTensor {
        &self.prec + &self.succ
    }

    pub fn validate(&self) -> Verdict {
        let d = self.dim();
        let p = |x: &[Rational], y: &[Rational]| self.prec.eval(&[x, y]);
        let s = |x: &[Rational], y: &[Rational]| self.succ.eval(&[x, y]);
        let star = |x: &[Rational], y: &[Rational]| add_vectors(&p(x, y), &s(x, y));
        let e = |i: usize| crate::exactla::unit_vector(d, i);
        let outer = Check::from_residuals(
            "pre-outer-symmetry",
            tuples(3, d).map(|t| {
                let (a, b, c) = (e(t[0]), e(t[1]), e(t[2]));
                let side = |x: &[Rational], z: &[Rational]| {
                    sub_vectors(&p(&s(x, &b), z), &s(x, &p(&b, z)))
                };
                (t.clone(), sub_vectors(&side(&a, &c), &side(&c, &a)))
            }),
        );
        let split = Check::from_residuals(
            "pre-splitting",
            tuples(3, d).map(|t| {
                let (a, b, c) = (e(t[0]), e(t[1]), e(t[2]));
                let lhs = sub_vectors(&s(&star(&a, &b), &c), &s(&a, &s(&b, &c)));
                let rhs = sub_vectors(&p(&p(&a, &b), &c), &p(&a, &star(&b, &c)));
                (t.clone(), sub_vectors(&lhs, &rhs))
            }),
        );
        Verdict::new(vec![outer, split])
    }
}

/// `m ≻ n = l(T(m))n`, `m ≺ n = r(T(n))m`.
pub fn induced_pre_anti_flexible(
    m: &Bimodule,
    t: &LinearOperator,
) -> Result<PreAntiFlexibleAlgebra> {
    require_rota_baxter(m, t)?;
    let (prec, succ) = induced_products(m, t);
    PreAntiFlexibleAlgebra::new(prec, succ)
}

fn induced_products(m: &Bimodule, t: &LinearOperator) -> (CoeffTensor, CoeffTensor) {
    let k = m.mdim();
    let mut prec = CoeffTensor::square(2, k);
    let mut succ = CoeffTensor::square(2, k);
    for i in 0..k {
        let ti = t.matrix().column(i);
        let left = m.left_action(&ti);
        let right = m.right_action(&ti);
        for j in 0..k {
            // succ(i, j) = l(T m_i) m_j ; prec(j, i) = r(T m_i) m_j
            let fs = succ.flatten(&[i, j]);
            succ.image_at_mut(fs).clone_from_slice(&left.column(j));
            let fp = prec.flatten(&[j, i]);
            prec.image_at_mut(fp).clone_from_slice(&right.column(j));
        }
    }
    (prec, succ)
}

/// `m ⋆_T n = r(T(n))m + l(T(m))n` as an algebra on `M`.
pub fn star_t_algebra(m: &Bimodule, t: &LinearOperator) -> Result<Algebra> {
    require_rota_baxter(m, t)?;
    Ok(star_t_table(m, t))
}

pub(crate) fn star_t_table(m: &Bimodule, t: &LinearOperator) -> Algebra {
    let (prec, succ) = induced_products(m, t);
    Algebra::new(m.labels().to_vec(), &prec + &succ).expect("star table shape")
}

/// Data for a morphism of Rota-Baxter operators `T → T'`.
#[derive(Clone, Copy, Debug)]
pub struct RbPair<'a> {
    pub bimodule: &'a Bimodule,
    pub operator: &'a LinearOperator,
}

fn morphism_shapes(
    src: RbPair,
    dst: RbPair,
    phi: &LinearOperator,
    psi: &LinearOperator,
) -> Result<()> {
    expect_shape(
        src.operator,
        src.bimodule.base().dim(),
        src.bimodule.mdim(),
        "T",
    )?;
    expect_shape(
        dst.operator,
        dst.bimodule.base().dim(),
        dst.bimodule.mdim(),
        "T'",
    )?;
    expect_shape(
        phi,
        dst.bimodule.base().dim(),
        src.bimodule.base().dim(),
        "phi",
    )?;
    expect_shape(psi, dst.bimodule.mdim(), src.bimodule.mdim(), "psi")
}

/// Algebra morphism, `T'ψ = φT`, and equivariance of both actions.
pub fn is_rb_morphism(
    src: RbPair,
    dst: RbPair,
    phi: &LinearOperator,
    psi: &LinearOperator,
) -> Result<Verdict> {
    morphism_shapes(src, dst, phi, psi)?;
    let (a, b) = (src.bimodule.base(), dst.bimodule.base());
    let (m, n) = (src.bimodule, dst.bimodule);
    let k = m.mdim();
    let d = a.dim();
    let mut checks = vec![homomorphism_check("algebra-morphism", phi, a, b)];
    let lhs = dst.operator.compose(psi);
    let rhs = phi.compose(src.operator);
    checks.push(Check::from_residuals(
        "intertwines-operators",
        (0..k).map(|j| {
            (
                vec![j],
                sub_vectors(&lhs.matrix().column(j), &rhs.matrix().column(j)),
            )
        }),
    ));
    for (name, left) in [("left-equivariance", true), ("right-equivariance", false)] {
        checks.push(Check::from_residuals(
            name,
            (0..d)
                .flat_map(|i| (0..k).map(move |j| vec![i, j]))
                .map(|p| {
                    let (i, j) = (p[0], p[1]);
                    let phia = phi.matrix().column(i);
                    let act_dst = if left {
                        n.left_action(&phia)
                    } else {
                        n.right_action(&phia)
                    };
                    let act_src = if left { m.l(i) } else { m.r(i) };
                    let lhs = act_dst.apply(&psi.matrix().column(j));
                    let rhs = psi.apply(&act_src.column(j));
                    (p, sub_vectors(&lhs, &rhs))
                }),
        ));
    }
    Ok(Verdict::new(checks))
}

/// Closure of the graph of `φ ⊕ ψ` in `(A ⋉ M) ⊕ (B ⋉ N)`, plus the
/// requirement that `φ ⊕ ψ` maps `Gr(T)` into `Gr(T')`.
pub fn rb_morphism_graph_check(
    src: RbPair,
    dst: RbPair,
    phi: &LinearOperator,
    psi: &LinearOperator,
) -> Result<Verdict> {
    morphism_shapes(src, dst, phi, psi)?;
    let p = semidirect_product_unchecked(src.bimodule);
    let q = semidirect_product_unchecked(dst.bimodule);
    let total = direct_sum(&p, &q);
    let f = phi.direct_sum(psi);
    let (dp, dq) = (p.dim(), q.dim());
    let gens: Vec<Vector> = (0..dp)
        .map(|i| {
            let mut v = p.basis(i);
            v.extend(f.matrix().column(i));
            v
        })
        .collect();
    let closure = Check::from_residuals(
        "graph-subalgebra",
        tuples(2, dp).map(|t| {
            let prod = total.multiply(&gens[t[0]], &gens[t[1]]);
            let (x, y) = prod.split_at(dp);
            debug_assert_eq!(y.len(), dq);
            (t, sub_vectors(y, &f.apply(x)))
        }),
    );
    let (d, k) = (src.bimodule.base().dim(), src.bimodule.mdim());
    let dd = dst.bimodule.base().dim();
    let graph_t = Check::from_residuals(
        "graph-operator",
        (0..k).map(|j| {
            let mut g = src.operator.matrix().column(j);
            g.extend((0..k).map(|i| {
                if i == j {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            let img = f.apply(&g);
            let (x, y) = img.split_at(dd);
            debug_assert_eq!(g.len(), d + k);
            (vec![j], sub_vectors(x, &dst.operator.apply(y)))
        }),
    );
    Ok(Verdict::new(vec![closure, graph_t]))
}

/// `ψ` intertwines the induced `≺` and `≻`; requires a morphism.
pub fn rb_morphism_preserves_pre_structure(
    src: RbPair,
    dst: RbPair,
    phi: &LinearOperator,
    psi: &LinearOperator,
) -> Result<Verdict> {
    let v = is_rb_morphism(src, dst, phi, psi)?;
    if !v.holds() {
        return Err(Error::Precondition(
            "(phi, psi) is not a morphism of Rota-Baxter operators".into(),
        ));
    }
    let pm = induced_pre_anti_flexible(src.bimodule, src.operator)?;
    let pn = induced_pre_anti_flexible(dst.bimodule, dst.operator)?;
    let k = src.bimodule.mdim();
    let images: Vec<Vector> = (0..k).map(|j| psi.matrix().column(j)).collect();
    let mut checks = Vec::new();
    for (name, a, b) in [
        ("preserves-prec", pm.prec(), pn.prec()),
        ("preserves-succ", pm.succ(), pn.succ()),
    ] {
        checks.push(Check::from_residuals(
            name,
            tuples(2, k).map(|t| {
                let lhs = psi.apply(a.image(&t));
                let rhs = b.eval(&[&images[t[0]], &images[t[1]]]);
                (t, sub_vectors(&lhs, &rhs))
            }),
        ));
    }
    Ok(Verdict::new(checks))
}

/// `[T(m), T(n)] = T(ρ(Tm)n − ρ(Tn)m)` on basis pairs.
pub fn is_lie_rota_baxter(rho: &LieRepresentation, t: &LinearOperator) -> Result<Check> {
    let g = rho.lie();
    let k = rho.mdim();
    expect_shape(t, g.dim(), k, "T")?;
    let images: Vec<Vector> = (0..k).map(|j| t.matrix().column(j)).collect();
    Ok(Check::from_residuals(
        "lie-rota-baxter",
        tuples(2, k).map(|p| {
            let (i, j) = (p[0], p[1]);
            let lhs = g.bracket(&images[i], &images[j]);
            let inner = sub_vectors(
                &rho.action(&images[i]).column(j),
                &rho.action(&images[j]).column(i),
            );
            (p, sub_vectors(&lhs, &t.apply(&inner)))
        }),
    ))
}
