//! The graded Lie algebra of multilinear maps on a space `V`, its
//! Maurer-Cartan elements, and the derived bracket on `C*(M, A)`.
//!
//! `∘̄` is built from the Gerstenhaber insertion
//! `(f∘g)(x₁..) = Σᵢ (−1)^{(i−1)(q−1)} f(x₁, .., g(xᵢ, .., x_{i+q−1}), ..)`.
//! Each arity `N` carries a symmetry group `G_N`: trivial for `N ≤ 2`,
//! `{id, (1 3)}` for `N = 3`, and all of `S_N` for `N ≥ 4`. These are the
//! arity components of the Koszul dual cooperad of the anti-flexible operad
//! (its dual algebras are associative with `xyz = zyx`, which collapses every
//! arity from 4 on to a single sign representation). For `f`, `g` of arity at
//! least 2,
//! `f∘̄g = Φ_N(P_p f ∘ P_q g) / (|G_p| |G_q|)`
//! where `Φ_N` is the signed sum over `G_N` and `P = Φ/|G|` the projector.
//! When either factor has arity at most 1 the plain insertion is used. On
//! bilinear factors this is exactly the four-term expansion
//! `f(g(x₁,x₂),x₃) − f(x₁,g(x₂,x₃)) − f(g(x₃,x₂),x₁) + f(x₃,g(x₂,x₁))`.

use std::ops::Range;

use num_traits::Zero;

use crate::algebra::semidirect_product_unchecked;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::exactla::{axpy, is_zero_vector, q, CoeffTensor, Rational, Vector};
use crate::structmaps::{expect_shape, is_rota_baxter, require_rota_baxter, LinearOperator};
use crate::verdict::Check;

pub const DEFAULT_MAX_ARITY: usize = 5;
pub const MAX_ARITY_CEILING: usize = 7;

/// An element of `Hom(V^{⊗k}, V)`; its degree in the graded Lie algebra is
/// `k − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearMap {
    tensor: CoeffTensor,
}

impl MultilinearMap {
    pub fn new(tensor: CoeffTensor) -> Result<Self> {
        if tensor.in_dim() != tensor.out_dim() {
            return Err(Error::Shape(
                "multilinear map must be an endomorphism tensor".into(),
            ));
        }
        Ok(Self { tensor })
    }

    pub fn zero(arity: usize, dim: usize) -> Self {
        Self {
            tensor: CoeffTensor::square(arity, dim),
        }
    }

    pub fn arity(&self) -> usize {
        self.tensor.arity()
    }

    pub fn degree(&self) -> i64 {
        self.arity() as i64 - 1
    }

    pub fn dim(&self) -> usize {
        self.tensor.in_dim()
    }

    pub fn tensor(&self) -> &CoeffTensor {
        &self.tensor
    }

    pub fn into_tensor(self) -> CoeffTensor {
        self.tensor
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    pub fn eval(&self, args: &[&[Rational]]) -> Vector {
        self.tensor.eval(args)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            tensor: &self.tensor + &other.tensor,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            tensor: &self.tensor - &other.tensor,
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            tensor: self.tensor.scale(s),
        }
    }
}

fn sign_of(parity_odd: bool) -> Rational {
    if parity_odd {
        q(-1)
    } else {
        q(1)
    }
}

/// Plain Gerstenhaber insertion `f∘g`.
pub fn insertion(f: &MultilinearMap, g: &MultilinearMap) -> Result<MultilinearMap> {
    let (p, qa, d) = (f.arity(), g.arity(), f.dim());
    if g.dim() != d {
        return Err(Error::Shape(
            "composition of maps on different spaces".into(),
        ));
    }
    if p == 0 && qa == 0 {
        return Err(Error::Shape(
            "composition of two constants is undefined".into(),
        ));
    }
    let n = p + qa - 1;
    let mut out = CoeffTensor::square(n, d);
    if p == 0 {
        return MultilinearMap::new(out);
    }
    let mut tuple = vec![0usize; p];
    for flat in 0..out.tuple_count() {
        let x = out.unflatten(flat);
        let mut acc = vec![Rational::zero(); d];
        for i in 0..p {
            let inner = g.tensor.image(&x[i..i + qa]);
            if is_zero_vector(inner) {
                continue;
            }
            let odd = (i * (qa + 1)) % 2 == 1;
            tuple[..i].copy_from_slice(&x[..i]);
            tuple[i + 1..].copy_from_slice(&x[i + qa..]);
            for (k, c) in inner.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                tuple[i] = k;
                let coeff = if odd { -c } else { c.clone() };
                axpy(&mut acc, &coeff, f.tensor.image(&tuple));
            }
        }
        out.image_at_mut(flat).clone_from_slice(&acc);
    }
    MultilinearMap::new(out)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// The symmetry group `G_n` with permutation parities.
pub fn symmetry_group(n: usize) -> Vec<(Vec<usize>, bool)> {
    match n {
        0..=2 => vec![((0..n).collect(), false)],
        3 => vec![(vec![0, 1, 2], false), (vec![2, 1, 0], true)],
        _ => {
            let all: Vec<usize> = (0..n).collect();
            permutations(&all)
                .into_iter()
                .map(|p| {
                    let odd = permutation_is_odd(&p);
                    (p, odd)
                })
                .collect()
        }
    }
}

pub fn symmetry_group_order(n: usize) -> u64 {
    match n {
        0..=2 => 1,
        3 => 2,
        _ => (1..=n as u64).product(),
    }
}

/// `Φ_n(h)(x) = Σ_{σ∈G_n} sgn(σ) h(x_{σ(1)}, .., x_{σ(n)})`.
fn symmetrize(h: &CoeffTensor) -> CoeffTensor {
    let n = h.arity();
    if n <= 2 {
        return h.clone();
    }
    let group = symmetry_group(n);
    let mut out = CoeffTensor::zeros(n, h.in_dim(), h.out_dim());
    let mut permuted = vec![0usize; n];
    for flat in 0..out.tuple_count() {
        let x = out.unflatten(flat);
        let mut acc = vec![Rational::zero(); h.out_dim()];
        for (sigma, odd) in &group {
            for (j, &s) in sigma.iter().enumerate() {
                permuted[j] = x[s];
            }
            axpy(&mut acc, &sign_of(*odd), h.image(&permuted));
        }
        out.image_at_mut(flat).clone_from_slice(&acc);
    }
    out
}

/// The projector `P_n = Φ_n / |G_n|`.
pub fn project(f: &MultilinearMap) -> MultilinearMap {
    let n = f.arity();
    if n <= 2 {
        return f.clone();
    }
    let scale = Rational::new(1.into(), (symmetry_group_order(n) as i64).into());
    MultilinearMap {
        tensor: symmetrize(&f.tensor).scale(&scale),
    }
}

fn check_cap(arity: usize, max_arity: usize) -> Result<()> {
    let cap = max_arity.min(MAX_ARITY_CEILING);
    if arity > cap {
        return Err(Error::DegreeCap {
            requested: arity,
            cap,
        });
    }
    Ok(())
}

pub fn circbar(f: &MultilinearMap, g: &MultilinearMap) -> Result<MultilinearMap> {
    circbar_capped(f, g, DEFAULT_MAX_ARITY)
}

pub fn circbar_capped(
    f: &MultilinearMap,
    g: &MultilinearMap,
    max_arity: usize,
) -> Result<MultilinearMap> {
    let (p, qa) = (f.arity(), g.arity());
    check_cap((p + qa).saturating_sub(1), max_arity)?;
    if p <= 1 || qa <= 1 {
        return insertion(f, g);
    }
    let plain = insertion(&project(f), &project(g))?;
    let norm = symmetry_group_order(p) * symmetry_group_order(qa);
    let scale = Rational::new(1.into(), (norm as i64).into());
    MultilinearMap::new(symmetrize(plain.tensor()).scale(&scale))
}

pub fn graded_bracket(f: &MultilinearMap, g: &MultilinearMap) -> Result<MultilinearMap> {
    graded_bracket_capped(f, g, DEFAULT_MAX_ARITY)
}

/// `[f, g] = f∘̄g − (−1)^{mn} g∘̄f` with `m, n` the degrees.
pub fn graded_bracket_capped(
    f: &MultilinearMap,
    g: &MultilinearMap,
    max_arity: usize,
) -> Result<MultilinearMap> {
    let fg = circbar_capped(f, g, max_arity)?;
    let gf = circbar_capped(g, f, max_arity)?;
    let odd = (f.degree() * g.degree()).rem_euclid(2) == 1;
    Ok(if odd { fg.add(&gf) } else { fg.sub(&gf) })
}

/// `π = μ + l + r` as a bilinear map on `A ⊕ M` (algebra coordinates first).
pub fn ambient_structure(m: &Bimodule) -> MultilinearMap {
    MultilinearMap::new(semidirect_product_unchecked(m).table().clone()).expect("square table")
}

/// `π∘̄π = 0` for `π = μ + l + r` assembled from raw data.
pub fn mc_check_algebra_bimodule(m: &Bimodule) -> Result<Check> {
    let pi = ambient_structure(m);
    let sq = circbar(&pi, &pi)?;
    Ok(match sq.tensor().first_nonzero() {
        None => Check::pass("maurer-cartan"),
        Some((t, r)) => Check::fail("maurer-cartan", t, r),
    })
}

/// An element of `Hom(M^{⊗n}, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    tensor: CoeffTensor,
}

impl Cochain {
    pub fn new(tensor: CoeffTensor) -> Self {
        Self { tensor }
    }

    pub fn zero(degree: usize, mdim: usize, adim: usize) -> Self {
        Self::new(CoeffTensor::zeros(degree, mdim, adim))
    }

    pub fn from_vector(a: Vector, mdim: usize) -> Self {
        let adim = a.len();
        Self::new(CoeffTensor::from_vec(0, mdim, adim, a).expect("constant cochain"))
    }

    pub fn from_operator(t: &LinearOperator) -> Self {
        let (adim, mdim) = (t.dst_dim(), t.src_dim());
        let mut c = CoeffTensor::zeros(1, mdim, adim);
        for j in 0..mdim {
            c.image_at_mut(j).clone_from_slice(&t.matrix().column(j));
        }
        Self::new(c)
    }

    pub fn to_operator(&self) -> Result<LinearOperator> {
        if self.degree() != 1 {
            return Err(Error::Shape("only degree-1 cochains are operators".into()));
        }
        let cols: Vec<Vector> = (0..self.mdim())
            .map(|j| self.tensor.image_at(j).to_vec())
            .collect();
        Ok(LinearOperator::new(crate::exactla::Matrix::from_columns(
            self.adim(),
            &cols,
        )))
    }

    pub fn degree(&self) -> usize {
        self.tensor.arity()
    }

    pub fn mdim(&self) -> usize {
        self.tensor.in_dim()
    }

    pub fn adim(&self) -> usize {
        self.tensor.out_dim()
    }

    pub fn tensor(&self) -> &CoeffTensor {
        &self.tensor
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.tensor + &other.tensor)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.tensor - &other.tensor)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.tensor.scale(s))
    }
}

/// Where the inputs and outputs of a cochain sit inside a direct sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub total: usize,
    pub src: Range<usize>,
    pub dst: Range<usize>,
}

impl Layout {
    /// `Hom(M^{⊗n}, A)` inside `A ⊕ M`.
    pub fn a_first(adim: usize, mdim: usize) -> Self {
        Self {
            total: adim + mdim,
            src: adim..adim + mdim,
            dst: 0..adim,
        }
    }

    /// `Hom(M^{⊗n}, A)` inside `M ⊕ A`.
    pub fn m_first(adim: usize, mdim: usize) -> Self {
        Self {
            total: adim + mdim,
            src: 0..mdim,
            dst: mdim..mdim + adim,
        }
    }
}

/// Extends a tensor `X^{⊗n} → Y` by zero to the ambient space.
pub fn embed(c: &CoeffTensor, layout: &Layout) -> Result<MultilinearMap> {
    if c.in_dim() != layout.src.len() || c.out_dim() != layout.dst.len() {
        return Err(Error::Shape("cochain does not fit the layout".into()));
    }
    let n = c.arity();
    let mut out = CoeffTensor::square(n, layout.total);
    let mut tuple = vec![0; n];
    for flat in 0..c.tuple_count() {
        let x = c.unflatten(flat);
        for (slot, &i) in x.iter().enumerate() {
            tuple[slot] = layout.src.start + i;
        }
        for (k, v) in c.image_at(flat).iter().enumerate() {
            if !v.is_zero() {
                out.set(&tuple, layout.dst.start + k, v.clone());
            }
        }
    }
    MultilinearMap::new(out)
}

/// Inverse of [`embed`]; any component outside the layout is a closure
/// failure.
pub fn restrict(h: &MultilinearMap, layout: &Layout) -> Result<CoeffTensor> {
    let n = h.arity();
    let mut out = CoeffTensor::zeros(n, layout.src.len(), layout.dst.len());
    for flat in 0..h.tensor().tuple_count() {
        let x = h.tensor().unflatten(flat);
        let inside = x.iter().all(|i| layout.src.contains(i));
        let img = h.tensor().image_at(flat);
        for (k, v) in img.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if inside && layout.dst.contains(&k) {
                let local: Vec<usize> = x.iter().map(|i| i - layout.src.start).collect();
                out.set(&local, k - layout.dst.start, v.clone());
            } else {
                return Err(Error::Closure(format!(
                    "input {x:?}, output coordinate {k}"
                )));
            }
        }
    }
    Ok(out)
}

fn cochain_shape(m: &Bimodule, c: &Cochain) -> Result<()> {
    if c.mdim() != m.mdim() || c.adim() != m.base().dim() {
        return Err(Error::Shape(format!(
            "cochain maps {}-dim inputs to {}-dim outputs; context is M={} A={}",
            c.mdim(),
            c.adim(),
            m.mdim(),
            m.base().dim()
        )));
    }
    Ok(())
}

/// `[[P, P']] = (−1)^m [[π, P], P']` restricted to `C^{m+n}(M, A)`.
pub fn derived_bracket(m: &Bimodule, p: &Cochain, p2: &Cochain) -> Result<Cochain> {
    derived_bracket_capped(m, p, p2, DEFAULT_MAX_ARITY)
}

pub fn derived_bracket_capped(
    m: &Bimodule,
    p: &Cochain,
    p2: &Cochain,
    max_arity: usize,
) -> Result<Cochain> {
    cochain_shape(m, p)?;
    cochain_shape(m, p2)?;
    let layout = Layout::a_first(m.base().dim(), m.mdim());
    let pi = ambient_structure(m);
    let inner = graded_bracket_capped(&pi, &embed(p.tensor(), &layout)?, max_arity)?;
    let outer = graded_bracket_capped(&inner, &embed(p2.tensor(), &layout)?, max_arity)?;
    let signed = if p.degree() % 2 == 1 {
        outer.scale(&q(-1))
    } else {
        outer
    };
    Ok(Cochain::new(restrict(&signed, &layout)?))
}

/// `([[T,T]] = 0, T is Rota-Baxter)`.
pub fn rb_mc_equivalence(m: &Bimodule, t: &LinearOperator) -> Result<(Check, Check)> {
    expect_shape(t, m.base().dim(), m.mdim(), "T")?;
    let c = Cochain::from_operator(t);
    let sq = derived_bracket(m, &c, &c)?;
    let mc = match sq.tensor().first_nonzero() {
        None => Check::pass("maurer-cartan"),
        Some((tu, r)) => Check::fail("maurer-cartan", tu, r),
    };
    Ok((mc, is_rota_baxter(m, t)?))
}

/// `d_T P = [[T, P]]`.
pub fn d_t(m: &Bimodule, t: &LinearOperator, p: &Cochain) -> Result<Cochain> {
    d_t_capped(m, t, p, DEFAULT_MAX_ARITY)
}

pub fn d_t_capped(
    m: &Bimodule,
    t: &LinearOperator,
    p: &Cochain,
    max_arity: usize,
) -> Result<Cochain> {
    require_rota_baxter(m, t)?;
    derived_bracket_capped(m, &Cochain::from_operator(t), p, max_arity)
}

/// `(T + T' is Rota-Baxter, d_T T' + ½[[T', T']] = 0)`.
pub fn twisted_mc_check(
    m: &Bimodule,
    t: &LinearOperator,
    t2: &LinearOperator,
) -> Result<(Check, Check)> {
    require_rota_baxter(m, t)?;
    expect_shape(t2, m.base().dim(), m.mdim(), "T'")?;
    let sum = is_rota_baxter(m, &t.add(t2))?;
    let c2 = Cochain::from_operator(t2);
    let dt = d_t(m, t, &c2)?;
    let half = Rational::new(1.into(), 2.into());
    let sq = derived_bracket(m, &c2, &c2)?.scale(&half);
    let total = dt.add(&sq);
    let twisted = match total.tensor().first_nonzero() {
        None => Check::pass("twisted-maurer-cartan"),
        Some((tu, r)) => Check::fail("twisted-maurer-cartan", tu, r),
    };
    let mut sum = sum;
    sum.name = "sum-rota-baxter".into();
    Ok((sum, twisted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::bimodule::regular_actions;
    use crate::corpus::*;

    fn mu(a: &Algebra) -> MultilinearMap {
        MultilinearMap::new(a.table().clone()).unwrap()
    }

    #[test]
    fn group_orders() {
        let sizes: Vec<usize> = (0..6).map(|n| symmetry_group(n).len()).collect();
        assert_eq!(sizes, vec![1, 1, 1, 2, 24, 120]);
        for n in 0..6 {
            assert_eq!(symmetry_group(n).len() as u64, symmetry_group_order(n));
        }
    }

    #[test]
    fn degree_zero_is_composition() {
        let f = CoeffTensor::from_vec(1, 2, 2, [1, 2, 3, 4].map(q).to_vec()).unwrap();
        let g = CoeffTensor::from_vec(1, 2, 2, [0, 1, -1, 5].map(q).to_vec()).unwrap();
        let (f, g) = (
            MultilinearMap::new(f).unwrap(),
            MultilinearMap::new(g).unwrap(),
        );
        let fg = circbar(&f, &g).unwrap();
        // (f∘g)(e_j) = f(g(e_j))
        for j in 0..2 {
            let gj = g.tensor().image(&[j]).to_vec();
            assert_eq!(fg.tensor().image(&[j]), f.eval(&[&gj]).as_slice());
        }
        let br = graded_bracket(&f, &g).unwrap();
        let gf = circbar(&g, &f).unwrap();
        assert_eq!(br, fg.sub(&gf));
        assert!(graded_bracket(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn four_term_pattern() {
        for a in [a2(), na2(), af2()] {
            let m = mu(&a);
            let sq = circbar(&m, &m).unwrap();
            for t in crate::exactla::tuples(3, a.dim()) {
                let (x, y, z) = (a.basis(t[0]), a.basis(t[1]), a.basis(t[2]));
                let mut expected = a.multiply(&a.multiply(&x, &y), &z);
                expected =
                    crate::exactla::sub_vectors(&expected, &a.multiply(&x, &a.multiply(&y, &z)));
                expected =
                    crate::exactla::sub_vectors(&expected, &a.multiply(&a.multiply(&z, &y), &x));
                expected =
                    crate::exactla::add_vectors(&expected, &a.multiply(&z, &a.multiply(&y, &x)));
                assert_eq!(sq.tensor().image(&t), expected.as_slice());
            }
        }
        let m = mu(&na2());
        let sq = circbar(&m, &m).unwrap();
        assert_eq!(sq.tensor().image(&[0, 0, 1]), &[q(0), q(-1)]);
    }

    #[test]
    fn mu_squared_pins_anti_flexibility() {
        for a in [a2(), na2(), af2(), Algebra::field(), Algebra::zero(2)] {
            let m = mu(&a);
            let br = graded_bracket(&m, &m).unwrap();
            assert_eq!(
                br.is_zero(),
                crate::algebra::classify(&a).is_anti_flexible()
            );
            assert_eq!(br, circbar(&m, &m).unwrap().scale(&q(2)));
        }
    }

    #[test]
    fn mc_examples() {
        assert!(
            mc_check_algebra_bimodule(&Bimodule::zero(Algebra::zero(1), 1))
                .unwrap()
                .holds
        );
        assert!(
            mc_check_algebra_bimodule(&regular_actions(&a2()))
                .unwrap()
                .holds
        );
        assert!(
            !mc_check_algebra_bimodule(&regular_actions(&na2()))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn cap_is_enforced() {
        let m = MultilinearMap::zero(4, 1);
        assert!(matches!(circbar(&m, &m), Err(Error::DegreeCap { .. })));
        assert!(circbar_capped(&m, &m, 7).is_ok());
        let big = MultilinearMap::zero(5, 1);
        assert!(matches!(
            circbar_capped(&big, &m, 9),
            Err(Error::DegreeCap {
                requested: 8,
                cap: 7
            })
        ));
    }

    #[test]
    fn derived_bracket_of_zero() {
        let m = regular_actions(&af2());
        let t = Cochain::from_operator(&af2_rb());
        let z = Cochain::zero(2, 2, 2);
        assert!(derived_bracket(&m, &t, &z).unwrap().is_zero());
    }

    #[test]
    fn rb_is_maurer_cartan() {
        let m = regular_actions(&af2());
        let (mc, rb) = rb_mc_equivalence(&m, &af2_rb()).unwrap();
        assert!(mc.holds && rb.holds);
        let m1 = regular_actions(&Algebra::field());
        let (mc, rb) = rb_mc_equivalence(&m1, &LinearOperator::identity(1)).unwrap();
        assert!(!mc.holds && !rb.holds);
    }

    #[test]
    fn embed_restrict_round_trip() {
        let c = CoeffTensor::from_vec(2, 2, 1, [1, 2, 3, 4].map(q).to_vec()).unwrap();
        for layout in [Layout::a_first(1, 2), Layout::m_first(1, 2)] {
            let e = embed(&c, &layout).unwrap();
            assert_eq!(restrict(&e, &layout).unwrap(), c);
        }
        let e = embed(&c, &Layout::a_first(1, 2)).unwrap();
        assert!(matches!(
            restrict(&e, &Layout::m_first(1, 2)),
            Err(Error::Closure(_))
        ));
    }
}
