use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::wrap_pymodule;

fn run(code: &str) {
    Python::attach(|py| {
        let globals = PyDict::new(py);
        globals
            .set_item("af", wrap_pymodule!(pyantiflex::pyantiflex)(py))
            .unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&code, Some(&globals), None) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn classification_and_operators() {
    run(r#"
from fractions import Fraction
a = af.Algebra(2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 1, 1, 1)])
assert a.is_anti_flexible() and not a.is_associative() and not a.is_flexible()
m = af.Bimodule.regular(a)
t = af.Operator([[0, 1], [0, 0]])
assert af.is_rota_baxter(m, t)
assert af.is_rota_baxter(m, t.scale(Fraction(-3, 2)))
assert not af.is_rota_baxter(m, af.Operator.identity(2))
assert af.is_nijenhuis(a, af.Operator([[1, 0], [0, 0]]))
assert af.is_nijenhuis_structure(m, af.Operator.identity(2), af.Operator.identity(2))
assert t.apply([0, 5]) == [5, 0]
"#);
}

#[test]
fn errors_become_value_errors() {
    run(r#"
for bad in (lambda: af.Operator([["1/0"]]),
            lambda: af.Algebra(1, [(0, 0, 2, 1)]),
            lambda: af.Bimodule.regular(af.Algebra(2, [(0, 0, 0, 1), (0, 1, 0, 1), (1, 0, 1, 1)])),
            lambda: af.load_document('{"field": "R"}')):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("accepted")
"#);
}

#[test]
fn documents_and_cohomology() {
    run(r#"
text = '''{"field": "Q", "algebra": {"dim": 1, "basis": ["e"], "products": {}},
 "bimodule": {"mdim": 1, "l": [[[0]]], "r": [[[0]]]}, "operators": {"T": [[1]]}}'''
d = af.load_document(text)
assert d["algebra"].labels == ["e"]
assert af.cohomology_dims(d["bimodule"], d["operators"]["T"], 2) == [1, 1, 1]
"#);
}
