"""Smoke test for the pyantiflex extension.

Build and install first, from the repository root:

    pip install maturin --no-build-isolation
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/pyantiflex-*.whl
"""

from fractions import Fraction
from pathlib import Path

import pyantiflex as af

FIXTURES = Path(__file__).resolve().parents[2] / "core" / "tests" / "fixtures"


def main():
    af2 = af.Algebra(2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 1, 1, 1)])
    assert af2.is_anti_flexible() and not af2.is_associative()
    assert af.is_rota_baxter(af.Bimodule.regular(af2), af.Operator([[0, 1], [0, 0]]))

    a2 = af.Algebra(2, [(0, 0, 1, 1)], labels=["e1", "e2"])
    assert a2.is_associative() and a2.is_anti_flexible()
    assert a2.multiply([1, 0], [Fraction(1, 2), 0]) == [0, Fraction(1, 2)]

    m = af.Bimodule.regular(a2)
    assert m.mdim == 2 and m.is_valid()
    t = af.Operator([[2, 0], [0, 1]])
    assert af.is_rota_baxter(m, t)
    assert not af.is_rota_baxter(m, af.Operator.identity(2))
    assert af.is_on_structure(m, t, af.Operator.identity(2), af.Operator.identity(2))
    assert af.star_t(m, t).is_anti_flexible()
    assert t.inverse().rows() == [[Fraction(1, 2), 0], [0, 1]]

    doc = af.load_document((FIXTURES / "zero_line.json").read_text())
    dims = af.cohomology_dims(doc["bimodule"], doc["operators"]["T"], 2)
    assert dims == [1, 1, 1], dims

    try:
        af.Operator([["1/0"]])
    except ValueError:
        pass
    else:
        raise AssertionError("zero denominator accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
