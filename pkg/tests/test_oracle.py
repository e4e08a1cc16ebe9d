import random
from fractions import Fraction

import pytest

from bihom.catalog import get_entry
from bihom.errors import NotNumeric, PoleAtPoint
from bihom.oracle import (
    NumericAlgebra,
    check,
    confirm_report,
    mat_inverse,
    mat_mul,
    numeric_algebra,
    oracle_verify,
    random_point,
)
from bihom.axioms import verify_bihom_poisson

import strategies as st


def zero_doc(n=2):
    eye = [["1" if i == j else "0" for j in range(n)] for i in range(n)]
    return {"dimension": n, "parameters": [], "kind": "poisson", "mu": [], "bracket": [], "alpha": eye, "beta": eye}


def test_zero_algebra_passes():
    r = oracle_verify(zero_doc())
    assert r.passed and r.label == "BiHom-Poisson" and len(r.checks) == 7


def test_alg1_instance_passes():
    doc = st.instantiate(get_entry("alg1").document, {"c11_1": 1, "c22_2": 1, "d11_1": 1, "d21_1": 1})
    assert oracle_verify(doc).passed


def test_dim1_leibniz_failure():
    doc = dict(zero_doc(1), mu=[[1, 1, 1, "1"]], bracket=[[1, 1, 1, "1"]])
    r = oracle_verify(doc)
    assert [c.name for c in r.failures()] == ["bihom_skew_symmetry", "bihom_jacobi", "bihom_leibniz"]
    assert r.get("bihom_leibniz").residual == (-1,)


def test_strict_mode_rejects_parameters():
    with pytest.raises(NotNumeric):
        oracle_verify(get_entry("alg1").document)


def test_word_maps_and_inverse():
    N = NumericAlgebra(2, [[2, 1], [0, 1]], [[3, 0], [0, 1]])
    assert mat_mul(N.map("A"), N.map("a")) == [[1, 0], [0, 1]]
    assert N.map("ab") == mat_mul([[2, 1], [0, 1]], [[3, 0], [0, 1]])
    inv = mat_inverse([[Fraction(1, 2), 3], [4, 5]])
    assert mat_mul(inv, [[Fraction(1, 2), 3], [4, 5]]) == [[1, 0], [0, 1]]


def test_random_point_respects_assumptions():
    doc = get_entry("alg6").document
    rng = random.Random(0)
    for _ in range(50):
        p = random_point(doc, rng)
        assert p["b11"] != 0


def test_random_point_gives_up_on_forced_pole():
    doc = dict(zero_doc(1), parameters=["t"], mu=[[1, 1, 1, "1/(t-t)"]])
    with pytest.raises(PoleAtPoint):
        random_point(doc, random.Random(0), tries=5)


def test_confirm_report_records_points():
    doc = get_entry("ex2_11").document
    report = verify_bihom_poisson(get_entry("ex2_11").algebra)
    assert confirm_report(doc, report, random.Random(3))
    for c in report.failures():
        assert c.oracle_confirmed and len(c.oracle) == 3
        assert all(o["verdict"] == "FAIL" for o in c.oracle)


def test_confirm_report_detects_disagreement():
    doc = zero_doc()
    report = oracle_verify(doc)
    report.checks[1].passed = False  # pretend the symbolic side failed
    assert not confirm_report(doc, report, random.Random(0))
    assert report.checks[1].oracle_confirmed is False


def test_point_instantiation():
    doc = get_entry("alg6").document
    N = numeric_algebra(doc, {"c21_1": 3, "d21_1": 0, "b11": 2})
    assert N.mu[1][1][1] == Fraction(3, 2)
    assert check(N, "bihom_associativity").passed
