import copy
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordgraph import fixtures
from ordgraph.corpus import corpus
from ordgraph.presentation import (PresentationError, atoms, build, canonical_lasso, from_dict, lasso_unroll,
                                   load, validate)

from oracles import heads_of_lasso


def e1_doc():
    return json.loads(fixtures.path("e1.json").read_text())


def findings_of(doc):
    return validate(build(doc))


def test_e1_valid(e1):
    assert validate(e1) == []
    assert [a.name for a in atoms(e1, 1)] == ["g", "fg"]
    assert [a.name for a in atoms(e1, 1, "v")] == ["g"]


def test_e1_tails(e1):
    assert e1.tail_atom("g", 1) == "fg"
    assert e1.tail_atom("g", 2) == "g"
    assert e1.tail_atom("fg", 1) == "g"


def test_f_valid(F):
    assert validate(F) == []
    assert atoms(F, 1) == []


def test_missing_prepend_names_pair():
    with pytest.raises(PresentationError) as info:
        fixtures.presentation("e1-missing-prepend")
    assert [(f.check, f.subject) for f in info.value.findings] == [("totality", "(e, fg)")]


def test_shared_lasso_is_ambiguous():
    doc = e1_doc()
    doc["atoms"]["1"] += [{"name": "g2", "src": "v", "rng": "v", "prefix": [], "cycle": ["e", "f"]},
                          {"name": "fg2", "src": "v", "rng": "w", "prefix": [], "cycle": ["f", "e"]}]
    doc["prepend"]["1"] += [{"left": "f", "atom": "g2", "result": "fg2"},
                            {"left": "e", "atom": "fg2", "result": "g2"}]
    found = findings_of(doc)
    assert {f.check for f in found} == {"tails"}
    # explicit tails resolve it
    doc["tails"] = {"1": [{"atom": a, "shift": 1, "result": r}
                          for a, r in [("g", "fg"), ("fg", "g"), ("g2", "fg2"), ("fg2", "g2")]]}
    assert findings_of(doc) == []


def test_left_cancellation_failure():
    # two atoms with range w whose prepends by e collide
    doc = e1_doc()
    doc["atoms"]["1"].append({"name": "h", "src": "w", "rng": "w", "prefix": [], "cycle": ["f", "e"]})
    doc["atoms"]["1"].append({"name": "eh", "src": "w", "rng": "v", "prefix": [], "cycle": ["e", "f"]})
    doc["prepend"]["1"] += [{"left": "e", "atom": "h", "result": "g"},
                            {"left": "f", "atom": "eh", "result": "h"}]
    checks = {f.check for f in findings_of(doc)}
    assert "cancellation" in checks


def test_schema_errors():
    doc = e1_doc()
    doc["format"] = "other"
    with pytest.raises(PresentationError, match="format"):
        build(doc)
    doc = e1_doc()
    doc["edges"][0]["src"] = "nowhere"
    with pytest.raises(PresentationError, match="unknown vertex"):
        build(doc)
    doc = e1_doc()
    doc["prepend"]["1"][0]["result"] = "zz"
    with pytest.raises(PresentationError, match="unknown generator"):
        build(doc)
    with pytest.raises(PresentationError):
        load("{not json")


def test_load_forms(tmp_path):
    doc = e1_doc()
    path = tmp_path / "e1.json"
    path.write_text(json.dumps(doc))
    for src in (doc, json.dumps(doc), str(path), path):
        assert [a.name for a in atoms(load(src), 1)] == ["g", "fg"]


def test_to_dict_round_trip(e1, tower):
    for p in (e1, tower):
        again = from_dict(p.to_dict())
        assert again.to_dict() == p.to_dict()


def _rename(doc, mapping):
    def r(x):
        return mapping.get(x, x)
    out = copy.deepcopy(doc)
    out["vertices"] = [r(v) for v in out["vertices"]]
    for e in out["edges"]:
        e.update(name=r(e["name"]), src=r(e["src"]), rng=r(e["rng"]))
    for rows in out["atoms"].values():
        for a in rows:
            a.update(name=r(a["name"]), src=r(a["src"]), rng=r(a["rng"]),
                     prefix=[r(x) for x in a["prefix"]], cycle=[r(x) for x in a["cycle"]])
    for rows in out["prepend"].values():
        for row in rows:
            row.update(left=r(row["left"]), atom=r(row["atom"]), result=r(row["result"]))
    return out


@pytest.mark.parametrize("broken", [False, True])
def test_validation_stable_under_renaming(broken):
    rng = random.Random(3)
    docs = [e1_doc()] + [p.to_dict() for p in corpus(5, 6)]
    if broken:
        for d in docs:
            for rows in d["prepend"].values():
                if rows:
                    rows.pop()
    for doc in docs:
        names = list(doc["vertices"]) + [e["name"] for e in doc["edges"]] + \
            [a["name"] for rows in doc["atoms"].values() for a in rows]
        shuffled = names[:]
        rng.shuffle(shuffled)
        mapping = {a: "n_" + b for a, b in zip(names, shuffled)}
        before = [f.check for f in findings_of(doc)]
        after = [f.check for f in findings_of(_rename(doc, mapping))]
        assert sorted(before) == sorted(after)


letters = st.lists(st.sampled_from("abc"), max_size=4)


@given(letters, letters.filter(bool), letters, letters.filter(bool))
def test_lasso_equality_is_pointwise_on_bounded_window(p1, c1, p2, c2):
    # canonical forms agree exactly when long unrollings agree
    n = len(p1) + len(p2) + 4 * len(c1) * len(c2) + 8
    same_seq = heads_of_lasso(p1, c1, 3 * n) == heads_of_lasso(p2, c2, 3 * n)
    assert (canonical_lasso(p1, c1) == canonical_lasso(p2, c2)) == same_seq
    assert list(lasso_unroll(canonical_lasso(p1, c1), n)) == heads_of_lasso(p1, c1, n)
