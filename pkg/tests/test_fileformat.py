import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from homleib import corpus
from homleib.actions import HomAction, SplitExtension
from homleib.exactlin import GF, QQ, identity
from homleib.fileformat import (
    FormatError,
    action_to_doc,
    algebra_to_doc,
    dump_document,
    load_action,
    load_document,
    matrix_to_doc,
    morphism_to_doc,
    parse_document,
    split_to_doc,
)
from homleib.homalg import HomAlgebra, HomMorphism


def same(a, b):
    if isinstance(a, HomAlgebra):
        return a == b and a.name == b.name and tuple(a.labels) == tuple(b.labels)
    if isinstance(a, HomAction):
        return same(a.actor, b.actor) and same(a.target, b.target) and a.same_tensors(b)
    if isinstance(a, HomMorphism):
        return same(a.src, b.src) and same(a.dst, b.dst) and bool(np.all(a.m == b.m))
    if isinstance(a, SplitExtension):
        return all(same(getattr(a, k), getattr(b, k)) for k in ("M", "B", "C", "i", "pi", "s"))
    return bool(np.all(a == b))


def to_doc(x):
    if isinstance(x, HomAlgebra):
        return algebra_to_doc(x)
    if isinstance(x, HomAction):
        return action_to_doc(x)
    if isinstance(x, HomMorphism):
        return morphism_to_doc(x)
    if isinstance(x, SplitExtension):
        return split_to_doc(x)
    return matrix_to_doc(x)


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_round_trip(name):
    obj = corpus.get(name)
    text = dump_document(to_doc(obj))
    back = parse_document(text)
    assert same(obj, back)
    assert dump_document(to_doc(back)) == text


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_matches_builders(name):
    assert same(corpus.get(name), corpus.build(name))


def test_shipped_files_are_regenerated_exactly(tmp_path):
    for p in corpus.write_corpus(tmp_path):
        assert p.read_text() == corpus.corpus_path(p.stem).read_text(), p.name


ALG = {
    "format_version": 1,
    "kind": "algebra",
    "name": "NL2",
    "dim": 2,
    "basis": ["a", "b"],
    "brackets": [[0, 0, [0, 1]]],
    "alpha": [[1, 0], [0, 1]],
}


def parse(doc, **kw):
    return parse_document(json.dumps(doc), **kw)


def test_minimal_algebra():
    L = parse(ALG)
    assert L == corpus.get("NL2")


def test_fractions_in_lowest_terms():
    doc = dict(ALG, alpha=[["2/4", 0], [0, "-6/3"]])
    L = parse(doc)
    assert L.alpha[0, 0] == QQ("1/2")
    assert algebra_to_doc(L)["alpha"] == [["1/2", 0], [0, -2]]


def test_prime_field():
    doc = dict(ALG, field="GF(5)", alpha=[[6, 0], [0, "1/2"]])
    L = parse(doc)
    assert L.field == GF(5)
    assert algebra_to_doc(L)["alpha"] == [[1, 0], [0, 3]]


def test_syntax_error_location():
    with pytest.raises(FormatError) as ei:
        parse_document('{\n  "kind": "algebra",\n  "dim": 2,,\n}', source="x.json")
    assert ei.value.where == "3:12"
    assert str(ei.value).startswith("x.json:3:12")


@pytest.mark.parametrize(
    "patch,where",
    [
        ({"alpha": [[1.0, 0], [0, 1]]}, ".alpha[0][0]"),
        ({"alpha": [[True, 0], [0, 1]]}, ".alpha[0][0]"),
        ({"brackets": [[0, 2, [0, 1]]]}, ".brackets[0][1]"),
        ({"brackets": [[0, 0, [0, 1, 2]]]}, ".brackets[0][2]"),
        ({"brackets": [[0, 0, [0, 1]], [0, 0, [1, 0]]]}, ".brackets[1]"),
        ({"alpha": [[1, 0]]}, ".alpha"),
        ({"format_version": 2}, ".format_version"),
        ({"field": "R"}, ".field"),
        ({"basis": ["a", "a"]}, ".basis"),
        ({"alpha": [["1/0", 0], [0, 1]]}, ".alpha[0][0]"),
    ],
)
def test_schema_errors_are_located(patch, where):
    with pytest.raises(FormatError) as ei:
        parse(dict(ALG, **patch))
    assert ei.value.where == where


def test_missing_header():
    doc = dict(ALG)
    del doc["format_version"]
    with pytest.raises(FormatError, match="format_version"):
        parse(doc)


def test_references(tmp_path):
    (tmp_path / "nl2.json").write_text(json.dumps(ALG))
    mor = {"format_version": 1, "kind": "morphism", "src": "nl2.json", "dst": "corpus:NL2", "matrix": [[1, 0], [0, 1]]}
    (tmp_path / "id.json").write_text(json.dumps(mor))
    f = load_document(tmp_path / "id.json", "morphism")
    assert np.all(f.m == identity(2))
    bad = dict(mor, src="corpus:NOPE")
    (tmp_path / "bad.json").write_text(json.dumps(bad))
    with pytest.raises(FormatError) as ei:
        load_document(tmp_path / "bad.json")
    assert ei.value.where == ".src"
    wrong = dict(mor, src="corpus:SELF_SL2")
    (tmp_path / "wrong.json").write_text(json.dumps(wrong))
    with pytest.raises(FormatError, match="not of kind"):
        load_document(tmp_path / "wrong.json")


def test_action_overrides(tmp_path):
    doc = {"format_version": 1, "kind": "action", "lambda": [], "rho": []}
    (tmp_path / "a.json").write_text(json.dumps(doc))
    sl2 = corpus.get("SL2")
    a = load_action(tmp_path / "a.json", actor=sl2, target=sl2)
    assert a.is_zero() and a.actor is sl2


@settings(max_examples=50, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=n**3, max_size=n**3),
            st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=n * n, max_size=n * n),
        )
    )
)
def test_round_trip_random(data):
    n, cs, al = data
    c = np.array([QQ(str(x)) for x in cs], dtype=object).reshape(n, n, n)
    a = np.array([QQ(str(x)) for x in al], dtype=object).reshape(n, n)
    L = HomAlgebra(c, a, name="r")
    text = dump_document(algebra_to_doc(L))
    assert same(parse_document(text), L)
