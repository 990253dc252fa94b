from fractions import Fraction as F

import pytest

from stratakit import io as sio
from stratakit.arrangement import Arrangement
from stratakit.category import validate_category
from stratakit.css import sd, validate_total_normality
from stratakit.delta import f_vector, validate_delta
from stratakit.fixtures import circle_minimal, punctured_torus
from stratakit.graphconf import validate_graph, y_graph
from stratakit.homology import chain_complex, homology
from stratakit.poset import Poset, validate_poset


def test_detect_kind():
    assert sio.detect_kind({"covers": [], "elements": []}) == "poset"
    assert sio.detect_kind({"hyperplanes": [], "n": 1}) == "arrangement"
    assert sio.detect_kind({"vertices": [], "edges": []}) == "graph"
    assert (
        sio.detect_kind(
            {"objects": [], "morphisms": [], "compose": [], "dims": {}, "closed": {}}
        )
        == "css"
    )
    assert sio.detect_kind({"objects": [], "morphisms": [], "compose": []}) == "category"
    assert sio.detect_kind({"cells": [], "faces": {}}) == "delta"
    with pytest.raises(ValueError):
        sio.detect_kind({"what": 1})


def test_schema_violation_paths():
    problems = sio.validate_payload(
        {"elements": [{"grade": 1}], "covers": [[0]]}, "poset"
    )
    assert any("/elements/0" in p for p in problems)
    assert any("/covers/0" in p for p in problems)


def test_poset_roundtrip():
    p = Poset((0, 1, 2), ((0, 1), (1, 2)), {0: 0, 1: 1, 2: 2}, {0: "bottom"})
    again = sio.load_poset(sio.dump_poset(p))
    assert again.elements == p.elements
    assert again.covers == p.covers
    assert again.grades == p.grades
    assert validate_poset(again) == []


def test_css_roundtrip_preserves_structure():
    x = punctured_torus()
    again = sio.load_css(sio.dump_css(x))
    assert validate_total_normality(again) == []
    assert f_vector(sd(again)) == f_vector(sd(x))
    assert homology(chain_complex(sd(again))) == homology(chain_complex(sd(x)))


def test_category_roundtrip_validates():
    payload = sio.dump_category(circle_minimal().cat)
    again = sio.load_category(payload)
    assert validate_category(again) == []
    assert len(again.morphisms) == 2


def test_graph_roundtrip():
    g = y_graph()
    again = sio.load_graph(sio.dump_graph(g))
    assert validate_graph(again) == []
    assert set(again.vertices) == set(g.vertices)


def test_arrangement_roundtrip_rationals():
    arr = Arrangement.from_lists(2, [([F(1, 3), F(-2)], F(5, 7))])
    again = sio.load_arrangement(sio.dump_arrangement(arr))
    assert again == arr


def test_delta_roundtrip():
    k = sd(circle_minimal())
    again = sio.load_delta(sio.dump_delta(k))
    assert validate_delta(again) == []
    assert f_vector(again) == f_vector(k)


def test_homology_report_shape():
    h = homology(chain_complex(sd(punctured_torus())))
    report = sio.dump_homology(h)
    assert report == {"betti": [1, 2], "torsion": [[], []]}
