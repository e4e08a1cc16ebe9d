import json

import pytest

from bihom.axioms import verify_bihom_poisson
from bihom.catalog import get_entry
from bihom.documents import dump_algebra, load_algebra, load_representation, dump_representation
from bihom.errors import DimensionMismatch, DocumentError, ExprSyntaxError, KindMismatch, UnknownIdentifier
from bihom.linalg import BilinearMap, LinearMap
from bihom.report import dump_report, load_report
from bihom.representations import zero_representation
from bihom.scalar import var

POISSON_CHECKS = {
    "commuting_maps", "multiplicativity", "bihom_associativity", "bihom_commutativity",
    "bihom_skew_symmetry", "bihom_jacobi", "bihom_leibniz",
}


def doc2(**changes):
    d = {
        "dimension": 2,
        "parameters": [],
        "kind": "poisson",
        "mu": [],
        "bracket": [],
        "alpha": [["1", "0"], ["0", "1"]],
        "beta": [["1", "0"], ["0", "1"]],
    }
    d.update(changes)
    return d


def test_alg4_document():
    A = load_algebra(get_entry("alg4").document)
    assert A.kind == "poisson" and A.dim == 2
    assert A.mu.product(1, 1) == (0, var("c22_2"))
    assert A.bracket.product(0, 1) == (0, 1)
    assert A.bracket.product(1, 0) == (0, 0)  # unlisted means zero
    assert A.alpha == LinearMap.diagonal([var("a11"), 0])


def test_empty_lists_give_zero_algebra():
    A = load_algebra(doc2())
    assert A.mu == BilinearMap.zero(2) and A.bracket == BilinearMap.zero(2)


def test_index_out_of_range():
    with pytest.raises(DimensionMismatch):
        load_algebra(doc2(mu=[[1, 1, 3, "1"]]))


@pytest.mark.parametrize(
    "changes, error",
    [
        ({"kind": "lie"}, KindMismatch),
        ({"kind": "associative"}, KindMismatch),
        ({"kind": "weird"}, KindMismatch),
        ({"dimension": 0}, DimensionMismatch),
        ({"alpha": [["1", "0"]]}, DimensionMismatch),
        ({"parameters": ["a"], "assumptions_nonzero": ["b"]}, DocumentError),
    ],
)
def test_documented_errors(changes, error):
    with pytest.raises(error):
        load_algebra(doc2(**changes))


@pytest.mark.parametrize("text, cause", [("q", UnknownIdentifier), ("1 +", ExprSyntaxError)])
def test_parse_errors_carry_path(text, cause):
    with pytest.raises(DocumentError) as info:
        load_algebra(doc2(mu=[[1, 1, 1, text]]))
    assert info.value.path == "mu[0][3]"
    assert isinstance(info.value.cause, cause)


def test_parse_error_names_field():
    with pytest.raises(Exception) as info:
        load_algebra(doc2(beta=[["1", "x"], ["0", "1"]]))
    assert "beta" in str(info.value)


def test_catalog_documents_round_trip():
    for eid in ("alg1", "alg6", "alg13", "ex2_10", "ex2_12"):
        doc = get_entry(eid).document
        again = dump_algebra(load_algebra(doc))
        assert load_algebra(again) == load_algebra(doc)


def test_representation_round_trip():
    R = zero_representation(get_entry("alg4").algebra, 2)
    doc = dump_representation(R)
    assert load_representation(json.loads(json.dumps(doc))) == R


def test_all_pass_text():
    text = dump_report(verify_bihom_poisson(get_entry("alg1").algebra, "alg1"))
    assert "FAIL" not in text
    for name in POISSON_CHECKS:
        assert f"PASS  {name}" in text


def test_failing_jacobi_text():
    broken = doc2(
        dimension=3,
        mu=[],
        bracket=[[1, 2, 3, "1"], [2, 1, 3, "-1"], [1, 3, 1, "1"], [3, 1, 1, "-1"]],
        alpha=[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
        beta=[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    )
    text = dump_report(verify_bihom_poisson(load_algebra(broken)))
    assert "FAIL  bihom_jacobi  (x,y,z)=(e_1,e_2,e_3)" in text
    assert "residual: [0, 0, 1]" in text


def test_json_round_trip():
    r = verify_bihom_poisson(get_entry("ex2_11").algebra, "ex2_11")
    text = dump_report(r, "json")
    back = load_report(text)
    assert back.to_dict() == r.to_dict()
    assert dump_report(back, "json") == text
    assert json.loads(text)["overall"] == "FAIL"
