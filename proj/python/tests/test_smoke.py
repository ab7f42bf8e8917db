import pytest

import adecodes


def test_local_homology():
    assert adecodes.local_homology("A", 3)["group"] == "Z/4"
    assert adecodes.local_homology("D", 6)["group"] == "(Z/2)^2"
    assert adecodes.local_homology("E", 8)["group"] == "0"
    with pytest.raises(adecodes.InputError):
        adecodes.local_homology("E", 9)


def test_catalog():
    assert "kummer-quartic" in adecodes.catalog_names()
    e = adecodes.catalog("three-cusp-cubic")
    assert e["K"] == "Z/3"
    assert e["K_extended"] == "(Z/3)^2"
    assert e["extended_code"].order == 9
    with pytest.raises(ValueError):
        adecodes.catalog("nope")


def test_code_round_trip_and_shortening():
    doc = {
        "points": [{"id": "x", "type": "A", "index": 5}],
        "dual_generators": [[["1/6", "1/3", "1/2", "2/3", "5/6"]]],
    }
    c = adecodes.Code(doc)
    assert c.order == 6
    assert adecodes.Code(c.to_dict()).to_dict() == c.to_dict()
    s = c.shorten("x", [3])
    assert s.labels == "2xA2"
    assert s.order == 3
    assert len(c.vectors()) == 6


def test_check_and_genealogy():
    cayley = adecodes.catalog("cayley-cubic")["code"]
    report = cayley.check()
    assert report["passed"]
    assert report["b_inequality"]["equality"]
    g = cayley.genealogy()
    assert g["nodes"] == 5
    assert g["dot"].startswith("digraph genealogy {")
    bad = adecodes.Code({"points": [{"id": "a", "type": "A", "index": 1}, {"id": "b", "type": "A", "index": 1}],
                         "degree": 3, "dual_generators": [[["1/2"], ["1/2"]]]})
    assert not bad.check()["passed"]


def test_equivalence():
    a = adecodes.catalog("kummer-quartic")["code"]
    b = adecodes.Code(a.to_dict())
    assert a.equivalent(b)
    assert not a.equivalent(adecodes.catalog("cayley-cubic")["code"])


def test_bad_document():
    with pytest.raises(ValueError, match=r"\$\.points\[0\]\.index"):
        adecodes.Code({"points": [{"id": "a", "type": "A", "index": 0}], "dual_generators": []})
