//! ON-structures `(T, N, S)`, the deformed products `⋆ᔆ_T` and `⋆̃_T`, and
//! compatible Rota-Baxter operators.

use serde_json::{json, Value};

use crate::algebra::{deformed_product, Algebra};
use crate::bimodule::{tilde_actions, Bimodule};
use crate::deformation::is_nijenhuis_structure;
use crate::error::{Error, Result};
use crate::exactla::{q, tuples, CoeffTensor};
use crate::glie::Cochain;
use crate::structmaps::{
    expect_shape, is_nijenhuis, is_rota_baxter, require_rota_baxter, star_t_table, LinearOperator,
};
use crate::verdict::{Check, Verdict};

/// Largest power examined by [`pairwise_power_compatibility`].
pub const MAX_POWER_FAMILY: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ONStructure {
    pub t: LinearOperator,
    pub n: LinearOperator,
    pub s: LinearOperator,
}

impl ONStructure {
    /// Validates all four conditions.
    pub fn new(
        m: &Bimodule,
        t: LinearOperator,
        n: LinearOperator,
        s: LinearOperator,
    ) -> Result<Self> {
        let verdict = is_on_structure(m, &t, &n, &s)?;
        if let Some(bad) = verdict.first_failure() {
            return Err(Error::Precondition(format!(
                "not an ON-structure: {} fails",
                bad.name
            )));
        }
        Ok(Self { t, n, s })
    }

    /// The identity structure `(T, id, id)`.
    pub fn trivial(m: &Bimodule, t: LinearOperator) -> Result<Self> {
        let n = LinearOperator::identity(m.base().dim());
        let s = LinearOperator::identity(m.mdim());
        Self::new(m, t, n, s)
    }

    /// `N∘T`.
    pub fn composite(&self) -> LinearOperator {
        self.n.compose(&self.t)
    }
}

fn shapes(m: &Bimodule, t: &LinearOperator, n: &LinearOperator, s: &LinearOperator) -> Result<()> {
    let (d, k) = (m.base().dim(), m.mdim());
    expect_shape(t, d, k, "T")?;
    expect_shape(n, d, d, "N")?;
    expect_shape(s, k, k, "S")
}

fn op_tensor(op: &LinearOperator) -> CoeffTensor {
    Cochain::from_operator(op).tensor().clone()
}

fn tensor_check(name: &str, left: &CoeffTensor, right: &CoeffTensor) -> Check {
    match (left - right).first_nonzero() {
        None => Check::pass(name),
        Some((tuple, residual)) => Check::fail(name, tuple, residual),
    }
}

/// `m ⋆ᔆ_T n = S(m) ⋆_T n + m ⋆_T S(n) − S(m ⋆_T n)`.
pub fn star_s_t(m: &Bimodule, t: &LinearOperator, s: &LinearOperator) -> Result<Algebra> {
    require_rota_baxter(m, t)?;
    expect_shape(s, m.mdim(), m.mdim(), "S")?;
    deformed_product(&star_t_table(m, t), s)
}

/// `m ⋆̃_T n = l̃(T(m))n + r̃(T(n))m`.
pub fn star_tilde_t(
    m: &Bimodule,
    t: &LinearOperator,
    n: &LinearOperator,
    s: &LinearOperator,
) -> Result<Algebra> {
    shapes(m, t, n, s)?;
    Ok(star_t_table(&tilde_actions(m, n, s)?, t))
}

/// The four defining conditions, itemized.
pub fn is_on_structure(
    m: &Bimodule,
    t: &LinearOperator,
    n: &LinearOperator,
    s: &LinearOperator,
) -> Result<Verdict> {
    shapes(m, t, n, s)?;
    let rb = is_rota_baxter(m, t)?;
    let mut ns = is_nijenhuis_structure(m, n, s)?.primary;
    ns.name = "nijenhuis-structure".into();
    let nt = n.compose(t);
    let ts = t.compose(s);
    let intertwining = tensor_check("intertwining", &op_tensor(&nt), &op_tensor(&ts));
    let star_nt = star_t_table(m, &nt);
    let star_s = deformed_product(&star_t_table(m, t), s)?;
    let products = tensor_check("deformed-products", star_nt.table(), star_s.table());
    Ok(Verdict::new(vec![rb, ns, intertwining, products]))
}

fn require_on(
    m: &Bimodule,
    t: &LinearOperator,
    n: &LinearOperator,
    s: &LinearOperator,
) -> Result<()> {
    let v = is_on_structure(m, t, n, s)?;
    match v.first_failure() {
        None => Ok(()),
        Some(bad) => Err(Error::Precondition(format!(
            "not an ON-structure: {} fails",
            bad.name
        ))),
    }
}

/// `⋆ᔆ_T = ⋆̃_T` and `⋆̃_T + ⋆ᔆ_T = 2⋆_{N∘T}`.
pub fn deformed_products_check(
    m: &Bimodule,
    t: &LinearOperator,
    n: &LinearOperator,
    s: &LinearOperator,
) -> Result<Verdict> {
    require_on(m, t, n, s)?;
    let star_s = star_s_t(m, t, s)?;
    let tilde = star_tilde_t(m, t, n, s)?;
    let star_nt = star_t_table(m, &n.compose(t));
    let sum = tilde.table() + star_s.table();
    Ok(Verdict::new(vec![
        tensor_check("tilde-equals-deformed", tilde.table(), star_s.table()),
        tensor_check("averaging", &sum, &star_nt.table().scale(&q(2))),
    ]))
}

/// Whether `T₁ + T₂` is again Rota-Baxter.
pub fn are_compatible_rb(m: &Bimodule, t1: &LinearOperator, t2: &LinearOperator) -> Result<Check> {
    require_rota_baxter(m, t1)?;
    require_rota_baxter(m, t2)?;
    let mut c = is_rota_baxter(m, &t1.add(t2))?;
    c.name = "compatible".into();
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleNijenhuis {
    /// `N = T₁∘T₂⁻¹`.
    pub n: LinearOperator,
    pub compatible: bool,
    pub nijenhuis: bool,
    pub t1_invertible: bool,
    /// The implications whose hypotheses can be evaluated.
    pub directions: Verdict,
}

/// `N = T₁∘T₂⁻¹`, with both directions of the correspondence checked when
/// their hypotheses hold.
pub fn nijenhuis_from_compatible(
    m: &Bimodule,
    t1: &LinearOperator,
    t2: &LinearOperator,
) -> Result<CompatibleNijenhuis> {
    require_rota_baxter(m, t1)?;
    require_rota_baxter(m, t2)?;
    let inv = t2.inverse()?;
    let n = t1.compose(&inv);
    let compatible = is_rota_baxter(m, &t1.add(t2))?.holds;
    let nijenhuis = is_nijenhuis(m.base(), &n)?.holds;
    let t1_invertible = t1.is_invertible();
    let mut directions = Verdict::new(vec![Check::from_bool(
        "compatible-implies-nijenhuis",
        !compatible || nijenhuis,
    )]);
    if t1_invertible {
        directions.push(Check::from_bool(
            "nijenhuis-implies-compatible",
            !nijenhuis || compatible,
        ));
    }
    Ok(CompatibleNijenhuis {
        n,
        compatible,
        nijenhuis,
        t1_invertible,
        directions,
    })
}

/// (i) `T` is Rota-Baxter from `(M, l̃, r̃)` to `(A, ·_N)`; (ii) `N∘T` is
/// Rota-Baxter; (iii) `T` and `N∘T` are compatible.
pub fn deformed_rb_suite(
    m: &Bimodule,
    t: &LinearOperator,
    n: &LinearOperator,
    s: &LinearOperator,
) -> Result<Verdict> {
    require_on(m, t, n, s)?;
    let mut deformed = is_rota_baxter(&tilde_actions(m, n, s)?, t)?;
    deformed.name = "deformed-rota-baxter".into();
    let nt = n.compose(t);
    let mut composite = is_rota_baxter(m, &nt)?;
    composite.name = "composite-rota-baxter".into();
    let mut pair = is_rota_baxter(m, &t.add(&nt))?;
    pair.name = "composite-compatible".into();
    Ok(Verdict::new(vec![deformed, composite, pair]))
}

/// `(T₂, T₁∘T₂⁻¹, T₂⁻¹∘T₁)` for compatible `T₁, T₂` with `T₂` invertible.
/// Returns the triple together with its ON-structure verdict.
pub fn on_from_compatible(
    m: &Bimodule,
    t1: &LinearOperator,
    t2: &LinearOperator,
) -> Result<(ONStructure, Verdict)> {
    let compat = are_compatible_rb(m, t1, t2)?;
    if !compat.holds {
        return Err(Error::Precondition("operators are not compatible".into()));
    }
    let inv = t2.inverse()?;
    let triple = ONStructure {
        t: t2.clone(),
        n: t1.compose(&inv),
        s: inv.compose(t1),
    };
    let mut verdict = is_on_structure(m, &triple.t, &triple.n, &triple.s)?;
    verdict.push(tensor_check(
        "round-trip",
        &op_tensor(&triple.composite()),
        &op_tensor(t1),
    ));
    Ok((triple, verdict))
}

/// One entry of the power-family table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerPair {
    pub i: usize,
    pub j: usize,
    pub first_rb: bool,
    pub second_rb: bool,
    pub compatible: bool,
}

/// For `0 ≤ i < j ≤ k_max`: whether `Nⁱ∘T`, `Nʲ∘T` are Rota-Baxter and
/// compatible. Observational only.
pub fn pairwise_power_compatibility(
    m: &Bimodule,
    t: &LinearOperator,
    n: &LinearOperator,
    s: &LinearOperator,
    k_max: usize,
) -> Result<Vec<PowerPair>> {
    if k_max > MAX_POWER_FAMILY {
        return Err(Error::Precondition(format!(
            "k_max {k_max} exceeds {MAX_POWER_FAMILY}"
        )));
    }
    require_on(m, t, n, s)?;
    let family: Vec<LinearOperator> = (0..=k_max as u32).map(|k| n.pow(k).compose(t)).collect();
    let rb: Vec<bool> = family
        .iter()
        .map(|op| is_rota_baxter(m, op).map(|c| c.holds))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, j) in tuples(2, k_max + 1)
        .map(|p| (p[0], p[1]))
        .filter(|(i, j)| i < j)
    {
        let compatible = is_rota_baxter(m, &family[i].add(&family[j]))?.holds;
        out.push(PowerPair {
            i,
            j,
            first_rb: rb[i],
            second_rb: rb[j],
            compatible,
        });
    }
    Ok(out)
}

pub fn power_table_json(pairs: &[PowerPair]) -> Value {
    Value::Array(
        pairs
            .iter()
            .map(|p| {
                json!({"i": p.i, "j": p.j, "first_rb": p.first_rb, "second_rb": p.second_rb, "compatible": p.compatible})
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::regular_bimodule;
    use crate::corpus::*;

    #[test]
    fn identity_structure() {
        let m = regular_bimodule(&af2()).unwrap();
        let on = ONStructure::trivial(&m, af2_rb()).unwrap();
        assert!(deformed_products_check(&m, &on.t, &on.n, &on.s).unwrap().holds());
        assert!(deformed_rb_suite(&m, &on.t, &on.n, &on.s).unwrap().holds());
        let s = star_s_t(&m, &on.t, &on.s).unwrap();
        assert_eq!(s.table(), star_t_table(&m, &on.t).table());
    }

    #[test]
    fn zero_s_kills_product() {
        let m = regular_bimodule(&af2()).unwrap();
        let s = star_s_t(&m, &af2_rb(), &LinearOperator::zero(2, 2)).unwrap();
        assert!(s.table().is_zero());
    }

    #[test]
    fn compatible_with_multiples() {
        let m = regular_bimodule(&af2()).unwrap();
        let t = af2_rb();
        assert!(
            are_compatible_rb(&m, &t, &LinearOperator::zero(2, 2))
                .unwrap()
                .holds
        );
        assert!(are_compatible_rb(&m, &t, &t).unwrap().holds);
        assert!(are_compatible_rb(&m, &t, &t.scale(&q(-3))).unwrap().holds);
    }

    #[test]
    fn field_line_from_compatible() {
        let m = field_left_line();
        let t2 = LinearOperator::from_i64(&[&[2]]);
        let t1 = LinearOperator::from_i64(&[&[-1]]);
        let (on, v) = on_from_compatible(&m, &t1, &t2).unwrap();
        assert!(v.holds());
        assert_eq!(on.composite(), t1);
        let cn = nijenhuis_from_compatible(&m, &t1, &t2).unwrap();
        assert!(cn.directions.holds());
    }

    #[test]
    fn singular_operator_rejected() {
        let m = regular_bimodule(&af2()).unwrap();
        assert!(matches!(
            nijenhuis_from_compatible(&m, &af2_rb(), &af2_rb()),
            Err(Error::NotInvertible(_))
        ));
    }
}
