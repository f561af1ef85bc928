import json

import pytest

from enrichcat.bimodule import change_of_base_bimodule, hom_bimodule, validate_bimodule
from enrichcat.enriched import change_of_base, validate_category
from enrichcat.errors import BackendMismatch
from enrichcat.generators import random_concrete_category, rng_from
from enrichcat.vbackend import FinVectBackend
from enrichcat.workspace import WorkspaceError, parse, parse_text, serialize, workspace_from

CANONICAL = ["finset_chain.json", "fun_small.json", "broken.json"]

MINIMAL = """{
  "format_version": 1,
  "backend": {"kind": "bool"},
  "categories": {"P": {"objects": ["a", "b"], "hom": {"a|a": true, "b|b": true, "a|b": true}}}
}
"""


@pytest.mark.parametrize("name", CANONICAL)
def test_canonical_files_round_trip(fixtures, name):
    text = (fixtures / name).read_text()
    assert serialize(parse(fixtures / name)) == text


def test_handwritten_file_reaches_a_fixed_point(fixtures):
    once = serialize(parse(fixtures / "bool_relations.json"))
    assert serialize(parse_text(once)) == once


def test_minimal_bool_file():
    ws = parse_text(MINIMAL)
    P = ws.categories["P"]
    assert P("a", "b") and not P("b", "a")
    assert validate_category(P).ok


def test_finvect_round_trip():
    C = random_concrete_category(rng_from(0), 2).category
    D = change_of_base("finset->finvect3", C)
    H = change_of_base_bimodule("finset->finvect3", hom_bimodule(C), D, D)
    ws = workspace_from(FinVectBackend(3), [D], [H])
    again = parse_text(serialize(ws))
    assert again.categories[D.name] == D
    assert again.bimodules[H.name].mod == H.mod
    assert validate_bimodule(again.bimodules[H.name]).ok
    assert serialize(again) == serialize(ws)


def test_chain_survives_round_trip(fixtures):
    ws = parse(fixtures / "finset_chain.json")
    assert [M.name for M in ws.chains["K"].mods] == ["M1", "M2"]
    assert ws.chains["K"].cats[1] is ws.bimodules["M1"].right


def error_of(text):
    with pytest.raises(WorkspaceError) as e:
        parse_text(text)
    return e.value


def test_undefined_reference_is_named_and_located():
    doc = json.loads(MINIMAL)
    doc["bimodules"] = {"M": {"left": "P", "right": "Q", "mod": {}}}
    text = json.dumps(doc, indent=2)
    e = error_of(text)
    assert "undefined category 'Q'" in str(e)
    assert e.line == text[:text.index('"Q"')].count("\n") + 1


def test_syntax_error_position():
    e = error_of('{\n  "format_version": 1,\n  "backend": \n}')
    assert (e.line, e.col) == (4, 1)


def test_structural_errors():
    assert "format_version" in str(error_of('{"backend": "bool"}'))
    assert "backend" in str(error_of('{"format_version": 1}'))
    assert "unknown field" in str(error_of('{"format_version": 1, "backend": "bool", "extra": 1}'))
    assert "duplicate key" in str(error_of('{"format_version": 1, "format_version": 1}'))
    doc = json.loads(MINIMAL)
    doc["chains"] = {"P": []}
    assert "used in both" in str(error_of(json.dumps(doc)))


def test_product_backend_rejected():
    e = error_of('{"format_version": 1, "backend": {"kind": "product", "left": "bool", "right": "bool"}}')
    assert "cannot be written" in str(e)


def test_backend_mismatch():
    doc = json.loads(MINIMAL)
    doc["categories"]["P"]["hom"]["a|b"] = ["f"]
    with pytest.raises(BackendMismatch):
        parse_text(json.dumps(doc))


def test_workspace_get():
    ws = parse_text(MINIMAL)
    with pytest.raises(WorkspaceError, match="no bimodule named 'M'"):
        ws.get("bimodules", "M")
