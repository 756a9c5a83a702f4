import json

import pytest

from ncbtt.algebra import AlgebraError, parse_algebra, validate
from ncbtt.corpus import CORPUS_NAMES, corpus_text, load


def test_point_parses_to_one_dimensional_algebra():
    a = load("point")
    assert a.dim == 1
    assert a.abar == ()
    assert a.k_max == 2


def test_cl1_parses():
    a = load("cl1")
    assert a.dim == 2
    assert a.parity(a.basis.index["x"]) == 1
    assert a.m_value((1, 1)) == {0: a.field.one}


def test_duplicate_basis_name_rejected():
    data = json.loads(corpus_text("cl1"))
    data["basis"].append({"name": "x", "parity": 0})
    with pytest.raises(AlgebraError, match="duplicated"):
        parse_algebra(data)


def test_unknown_basis_name_rejected():
    data = json.loads(corpus_text("cl1"))
    data["products"][0]["inputs"] = ["one", "nope"]
    with pytest.raises(AlgebraError, match="unknown basis name"):
        parse_algebra(data)


def test_bad_scalar_rejected():
    data = json.loads(corpus_text("cl1"))
    data["pairing"][0][2] = "1/x"
    with pytest.raises(AlgebraError, match="bad scalar"):
        parse_algebra(data)


def test_not_json_rejected():
    with pytest.raises(AlgebraError, match="not valid JSON"):
        parse_algebra("{this is not json")


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_corpus_validates(name):
    report = validate(load(name), arity_bound=4)
    assert report.ok, report.failed()


def test_rank_deficient_pairing_fails_with_witness():
    data = json.loads(corpus_text("kxk"))
    data["pairing"] = [["one", "one", "1"]]
    report = validate(parse_algebra(data))
    bad = {c.name: c for c in report.checks}
    assert not bad["pairing_nondegenerate"].passed
    assert bad["pairing_nondegenerate"].witness is not None


def test_arity3_relation_is_associativity():
    # break associativity in m2k: e*f = e makes (e*f)*e != e*(f*e)
    data = json.loads(corpus_text("m2k"))
    for prod in data["products"]:
        if prod["inputs"] == ["e", "f"]:
            prod["output"] = [["e", "1"]]
    report = validate(parse_algebra(data))
    bad = {c.name: c.passed for c in report.checks}
    assert bad["ainfty_arity_1"] and bad["ainfty_arity_2"]
    assert not bad["ainfty_arity_3"]


def test_broken_unitality_detected():
    data = json.loads(corpus_text("dualnumbers"))
    data["products"] = [p for p in data["products"] if p["inputs"] != ["x", "one"]]
    report = validate(parse_algebra(data))
    bad = {c.name: c.passed for c in report.checks}
    assert not bad["strict_unitality"]


def test_broken_cyclicity_detected():
    # kxk with a lopsided pairing stays nondegenerate but is no longer cyclic
    data = json.loads(corpus_text("kxk"))
    data["pairing"] = [["one", "one", "2"], ["w", "w", "3"]]
    report = validate(parse_algebra(data))
    bad = {c.name: c.passed for c in report.checks}
    assert bad["pairing_nondegenerate"]
    assert not bad["cyclic_m_2"]


def test_suspended_tensors_match_convention():
    a = load("kxk")
    w = a.basis.index["w"]
    # p(w) = 1, so b_2(w, w) = -m_2(w, w) = -one
    assert a.b_value((w, w)) == {0: -a.field.one}
    c = load("cl1")
    x = c.basis.index["x"]
    # p(x) = 0, so b_2(x, x) = +m_2(x, x) = one
    assert c.b_value((x, x)) == {0: c.field.one}


def test_report_serialization_shape():
    rep = validate(load("point")).to_jsonable()
    assert rep["ok"] is True
    assert {"name", "passed", "witness"} <= set(rep["checks"][0])
