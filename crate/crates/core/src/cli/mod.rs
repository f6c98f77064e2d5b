//! Command dispatch and reports for the `antiflex` binary.
//!
//! A [`Report`] holds the asserted checks, which decide the exit status,
//! and an info payload of derived objects and unasserted observations.
//! Exit statuses: 0 when every asserted check holds, 1 when one fails,
//! 2 on input errors.

pub mod document;
pub mod search;

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::algebra::{classify, deformed_product, Algebra};
use crate::cohomology::cohomology_dims;
use crate::deformation::{
    is_closed_2cochain, is_nijenhuis_structure, is_valid_deformation, nijenhuis_structure_powers,
    trivial_deformation_from,
};
use crate::error::{Error, Result};
use crate::exactla::{render_rational, Rational};
use crate::glie::{derived_bracket, mc_check_algebra_bimodule, rb_mc_equivalence, Cochain};
use crate::onstruct::{deformed_rb_suite, is_on_structure, deformed_products_check};
use crate::structmaps::{
    induced_pre_anti_flexible, is_nijenhuis, is_rb_morphism, is_rota_baxter, nt_nijenhuis_equivalence,
    rb_graph_is_subalgebra, rb_morphism_graph_check, rb_morphism_preserves_pre_structure,
    LinearOperator, RbPair,
};
use crate::verdict::{Check, Verdict};

use document::{algebra_json, deformation_json, products_json, sparse_json, Document};
use search::{algebra_hit_json, operator_hit_json, search_algebras, search_operators, Predicate, SearchSpec};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    CheckAlgebra,
    CheckBimodule,
    CheckRb { op: String },
    CheckNijenhuis { op: String },
    CheckNijStructure { n: String, s: String, power_cap: usize },
    CheckOn { t: String, n: String, s: String },
    CheckMorphism { t: String, t2: String, phi: String, psi: String },
    McCheck { op: Option<String> },
    Cohomology { op: String, max_degree: usize },
    DeformGenerate { n: String, s: String },
    DeformVerify,
    GlieBracket { p: String, q: String },
    SearchAlgebras(SearchSpec),
    SearchOperators { grid: Vec<Rational>, predicate: Predicate, limit: usize },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckAlgebra => "check algebra",
            Command::CheckBimodule => "check bimodule",
            Command::CheckRb { .. } => "check rb",
            Command::CheckNijenhuis { .. } => "check nijenhuis",
            Command::CheckNijStructure { .. } => "check nij-structure",
            Command::CheckOn { .. } => "check on",
            Command::CheckMorphism { .. } => "check morphism",
            Command::McCheck { .. } => "mc-check",
            Command::Cohomology { .. } => "cohomology",
            Command::DeformGenerate { .. } => "deform generate",
            Command::DeformVerify => "deform verify",
            Command::GlieBracket { .. } => "glie bracket",
            Command::SearchAlgebras(_) => "search algebras",
            Command::SearchOperators { .. } => "search operators",
        }
    }

    /// Whether the command reads a document.
    pub fn needs_document(&self) -> bool {
        !matches!(self, Command::SearchAlgebras(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    pub info: Map<String, Value>,
    pub elapsed_ms: Option<u128>,
}

impl Report {
    fn new(command: &Command) -> Self {
        Self {
            command: command.name().to_string(),
            verdict: Verdict::default(),
            info: Map::new(),
            elapsed_ms: None,
        }
    }

    fn assert(&mut self, check: Check) {
        self.verdict.push(check);
    }

    fn assert_all(&mut self, v: Verdict) {
        self.verdict.extend(v);
    }

    fn note(&mut self, key: &str, value: Value) {
        self.info.insert(key.to_string(), value);
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }

    pub fn exit_code(&self) -> i32 {
        if self.holds() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), self.command.clone().into());
        obj.insert("holds".into(), self.holds().into());
        obj.insert("checks".into(), self.verdict.to_json());
        obj.insert("info".into(), Value::Object(self.info.clone()));
        if let Some(ms) = self.elapsed_ms {
            obj.insert("elapsed_ms".into(), json!(ms));
        }
        Value::Object(obj)
    }

    /// Aligned table of checks followed by the info payload.
    pub fn to_text(&self) -> String {
        let width = self
            .verdict
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(0)
            .max(5);
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "{:<width$}  result  witness", "check");
        for c in &self.verdict.checks {
            let witness = c.witness.as_ref().map_or(String::new(), |w| {
                let res: Vec<String> = w.residual.iter().map(render_rational).collect();
                format!("tuple {:?} residual [{}]", w.tuple, res.join(", "))
            });
            let result = if c.holds { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{:<width$}  {result:<6}  {witness}", c.name);
        }
        let _ = writeln!(out, "overall: {}", if self.holds() { "pass" } else { "FAIL" });
        for (k, v) in &self.info {
            let _ = writeln!(out, "{k}: {v}");
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed_ms: {ms}");
        }
        out
    }
}

fn renamed(mut c: Check, name: &str) -> Check {
    c.name = name.to_string();
    c
}

fn classification_json(a: &Algebra) -> Value {
    let c = classify(a);
    json!({
        "anti_flexible": c.is_anti_flexible(),
        "flexible": c.is_flexible(),
        "associative": c.is_associative(),
        "commutative": a.is_commutative(),
    })
}

fn operator_json(t: &LinearOperator) -> Value {
    document::matrix_json(t.matrix())
}

/// Runs one command against a parsed document.
pub fn run_check(doc: &Document, command: &Command) -> Result<Report> {
    execute(command, Some(doc), &mut |_, _| {})
}

/// Runs a command; `progress` receives `(visited, total)` during searches.
pub fn execute(
    command: &Command,
    doc: Option<&Document>,
    progress: &mut dyn FnMut(u128, u128),
) -> Result<Report> {
    let mut report = Report::new(command);
    if let Command::SearchAlgebras(spec) = command {
        let hits = search_algebras(spec, progress)?;
        report.assert(Check::from_bool("found", !hits.is_empty()));
        report.note("count", hits.len().into());
        report.note("hits", hits.iter().map(algebra_hit_json).collect());
        return Ok(report);
    }
    let doc = doc.ok_or_else(|| Error::Usage(format!("{} needs --fixture", command.name())))?;
    let a = &doc.algebra;
    match command {
        Command::CheckAlgebra => {
            let c = classify(a);
            report.assert(c.anti_flexible.clone());
            report.note("classification", classification_json(a));
        }
        Command::CheckBimodule => {
            let m = doc.bimodule()?;
            report.assert(classify(a).anti_flexible);
            report.assert_all(m.validate());
            report.note("maurer_cartan", mc_check_algebra_bimodule(&m)?.holds.into());
        }
        Command::CheckRb { op } => {
            let m = doc.bimodule()?;
            let t = doc.operator(op)?;
            let rb = is_rota_baxter(&m, &t)?;
            report.note("graph_subalgebra", rb_graph_is_subalgebra(&m, &t)?.holds.into());
            report.note("n_t_nijenhuis", nt_nijenhuis_equivalence(&m, &t)?.0.holds.into());
            if rb.holds {
                let pre = induced_pre_anti_flexible(&m, &t)?;
                report.note(
                    "pre_anti_flexible",
                    json!({
                        "prec": products_json(pre.prec(), m.labels()),
                        "succ": products_json(pre.succ(), m.labels()),
                        "axioms": pre.validate().holds(),
                    }),
                );
            }
            report.assert(rb);
        }
        Command::CheckNijenhuis { op } => {
            let n = doc.operator(op)?;
            let c = is_nijenhuis(a, &n)?;
            report.note("scalar", n.is_scalar().into());
            if c.holds {
                let def = deformed_product(a, &n)?;
                report.note("deformed_product", products_json(def.table(), def.labels()));
                report.note("deformed_classification", classification_json(&def));
            }
            report.assert(c);
        }
        Command::CheckNijStructure { n, s, power_cap } => {
            let m = doc.bimodule()?;
            let (n, s) = (doc.operator(n)?, doc.operator(s)?);
            let r = is_nijenhuis_structure(&m, &n, &s)?;
            report.note("square_variant", r.variant.holds().into());
            report.assert_all(r.to_verdict());
            if r.holds() {
                for i in 2..=*power_cap {
                    let p = nijenhuis_structure_powers(&m, &n, &s, i, *power_cap)?;
                    report.assert(renamed(p.primary, &format!("power-{i}")));
                }
            }
        }
        Command::CheckOn { t, n, s } => {
            let m = doc.bimodule()?;
            let (t, n, s) = (doc.operator(t)?, doc.operator(n)?, doc.operator(s)?);
            let v = is_on_structure(&m, &t, &n, &s)?;
            let ok = v.holds();
            report.assert_all(v);
            if ok {
                report.assert_all(deformed_products_check(&m, &t, &n, &s)?);
                report.assert_all(deformed_rb_suite(&m, &t, &n, &s)?);
                report.note("composite", operator_json(&n.compose(&t)));
            }
        }
        Command::CheckMorphism { t, t2, phi, psi } => {
            let m = doc.bimodule()?;
            let target = doc.target_bimodule()?;
            let (t, t2) = (doc.operator(t)?, doc.operator(t2)?);
            let (phi, psi) = (doc.operator(phi)?, doc.operator(psi)?);
            let src = RbPair {
                bimodule: &m,
                operator: &t,
            };
            let dst = RbPair {
                bimodule: &target,
                operator: &t2,
            };
            let v = is_rb_morphism(src, dst, &phi, &psi)?;
            let ok = v.holds();
            report.assert_all(v);
            report.note(
                "graph_check",
                rb_morphism_graph_check(src, dst, &phi, &psi)?.holds().into(),
            );
            if ok && is_rota_baxter(&m, &t)?.holds && is_rota_baxter(&target, &t2)?.holds {
                report.note(
                    "preserves_pre_structure",
                    rb_morphism_preserves_pre_structure(src, dst, &phi, &psi)?
                        .holds()
                        .into(),
                );
            }
        }
        Command::McCheck { op: None } => {
            let m = doc.bimodule()?;
            let mc = mc_check_algebra_bimodule(&m)?;
            let expected = classify(a).is_anti_flexible() && m.validate().holds();
            report.note("anti_flexible_bimodule", expected.into());
            report.assert(mc);
        }
        Command::McCheck { op: Some(op) } => {
            let m = doc.bimodule()?;
            let t = doc.operator(op)?;
            let (mc, rb) = rb_mc_equivalence(&m, &t)?;
            report.note("rota_baxter", rb.holds.into());
            report.assert(mc);
        }
        Command::Cohomology { op, max_degree } => {
            let m = doc.bimodule()?;
            let t = doc.operator(op)?;
            let r = cohomology_dims(&m, &t, *max_degree)?;
            for d in &r.degrees {
                report.assert(Check::from_bool(
                    format!("image-in-kernel-{}", d.degree),
                    d.image_in_kernel,
                ));
            }
            report.note("h", json!(r.h_dims()));
            report.note("degrees", r.to_json());
        }
        Command::DeformGenerate { n, s } => {
            let m = doc.bimodule()?;
            let (n, s) = (doc.operator(n)?, doc.operator(s)?);
            let (d, identities) = trivial_deformation_from(&m, &n, &s)?;
            report.assert_all(identities);
            report.assert_all(is_valid_deformation(&m, &d)?);
            report.assert(is_closed_2cochain(&m, &d)?);
            report.note("deformation", deformation_json(&d, a.labels()));
        }
        Command::DeformVerify => {
            let m = doc.bimodule()?;
            let d = doc
                .deformation
                .as_ref()
                .ok_or_else(|| Error::Usage("the document has no deformation section".into()))?;
            report.assert_all(is_valid_deformation(&m, d)?);
            report.assert(is_closed_2cochain(&m, d)?);
        }
        Command::GlieBracket { p, q } => {
            let m = doc.bimodule()?;
            let (p, q) = (doc.operator(p)?, doc.operator(q)?);
            let b = derived_bracket(&m, &Cochain::from_operator(&p), &Cochain::from_operator(&q))?;
            report.note("degree", b.degree().into());
            report.note("zero", b.is_zero().into());
            report.note("bracket", sparse_json(b.tensor(), m.labels(), a.labels()));
        }
        Command::SearchOperators {
            grid,
            predicate,
            limit,
        } => {
            let m = doc.bimodule()?;
            let hits = search_operators(&m, grid, predicate, *limit, progress)?;
            report.assert(Check::from_bool("found", !hits.is_empty()));
            report.note("count", hits.len().into());
            report.note("hits", hits.iter().map(operator_hit_json).collect());
        }
        Command::SearchAlgebras(_) => unreachable!("handled above"),
    }
    report.note("algebra", algebra_json(a));
    Ok(report)
}
