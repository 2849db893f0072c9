import pytest

import curvkit


def test_catalog_lists_reference_metrics():
    ids = curvkit.catalog_ids()
    for name in ("gppwave", "pp-wave", "brinkmann", "robinson-trautman"):
        assert name in ids


def test_plane_wave_components():
    out = curvkit.compute("plane-wave", ["ricci", "riemann"])
    assert out["ricci"] == {"11": "2*a1 + 2*a2"}
    assert out["riemann"]["1313"] == "-2*a1"
    assert out["riemann"]["1414"] == "-2*a2"


def test_flat_metric_has_no_curvature():
    assert curvkit.compute("minkowski", "riemann") == {"riemann": {}}


def test_single_check():
    assert curvkit.run("plane-wave", {"parallel": "R"})["status"] == "holds"
    assert curvkit.run("pp-wave", {"zero": "S"})["status"] == "fails"


def test_suite_report_passes():
    report = curvkit.check("brinkmann")
    assert report["pass"]
    assert report["reduction"]["status"] == "holds"


def test_compare_matches_recorded_pairs():
    report = curvkit.compare("robinson-trautman", "pp-wave")
    assert report["pass"]
    assert report["expected"]["missing"] == []


def test_definition_round_trip():
    d = curvkit.definition("pp-wave")
    assert d["coordinates"] == ["x", "r", "x3", "x4"]


def test_expression_helpers():
    assert curvkit.normalize("x*y/x + d", ["x", "y"], ["d"]) == "y + d"
    assert curvkit.differentiate("H*x", "x", ["x", "y"], [], {"H": ["x"]}) == "x*H1 + H"
    assert curvkit.differentiate("H", "y", ["x", "y"], [], {"H": ["x"]}) == "0"


def test_errors():
    with pytest.raises(curvkit.InputError):
        curvkit.compute("no-such-metric")
    with pytest.raises(curvkit.ParseError):
        curvkit.normalize("x +* y", ["x"])
    with pytest.raises(curvkit.Error):
        curvkit.check("gppwave", suite="no-such-suite")
    with pytest.raises(curvkit.InputError):
        curvkit.run("gppwave", {"pseudosymmetric": {"lhs": 1}})
