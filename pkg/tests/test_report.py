import json
import re
from pathlib import Path

import numpy as np
import pytest

from mixedpoly import parse
from mixedpoly.polynomial import DegenerateInputError
from mixedpoly.report import (
    AnalysisReport,
    RunConfig,
    assemble_report,
    from_json,
    input_section,
    render_svg,
    to_json,
    values_of,
)

from conftest import cached_report
from oracles import EX1, EX2, dist_to_curve, ex1_param


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(tol=0)
    with pytest.raises(ValueError):
        RunConfig(value_tol=-1)
    with pytest.raises(ValueError):
        RunConfig(radii=(10.0, 10.0))
    with pytest.raises(ValueError):
        RunConfig(radii=(10.0,))
    with pytest.raises(ValueError):
        RunConfig(starts=0)
    assert RunConfig(radii=[1, 2]).radii == (1.0, 2.0)


def test_constant_input_is_degenerate():
    with pytest.raises(DegenerateInputError):
        assemble_report(parse("3 + i"))


def test_minimal_report_round_trip():
    r = AnalysisReport(input=input_section(parse("z1")))
    text = to_json(r)
    assert from_json(text) == r
    assert to_json(from_json(text)) == text
    assert json.loads(text)["schema"] == 1


def test_from_json_rejects_bad_documents():
    r = AnalysisReport(input=input_section(parse("z1")))
    doc = json.loads(to_json(r))
    with pytest.raises(ValueError):
        from_json(json.dumps({**doc, "schema": 2}))
    with pytest.raises(ValueError):
        from_json(json.dumps({**doc, "surprise": 1}))


@pytest.mark.slow
def test_example1_report_round_trip_and_content():
    r = cached_report(EX1)
    text = to_json(r)
    back = from_json(text)
    assert back == r
    assert to_json(back) == text
    geo = r.geometry
    assert [F["vertices"] for F in geo["gamma_plus"]] == [[[2, 2]]]
    assert len(geo["bad_faces"]) == 1
    assert sorted(map(tuple, geo["bad_faces"][0]["vertices"])) == [(1, 1), (2, 2)]
    assert geo["bad_faces"][0]["witness"] == [1, -1]
    s = values_of(r.s_estimate, "finite_limit")
    assert len(s) >= 64
    assert np.max(dist_to_curve(s, ex1_param)) <= 1e-2
    statuses = {c["name"]: c["status"] for c in r.checks}
    assert statuses["bound_containment"] == "pass"
    assert statuses["s_subset_kinf"] == "pass"
    assert r.seed == 0 and r.timings is None


@pytest.mark.slow
def test_example2_report_flags():
    r = cached_report(EX2)
    assert r.flags["convenient"] is True
    assert r.geometry["bad_faces"] == []
    assert r.s_estimate["finite_limit"] == []
    assert max(abs(v) for v in values_of(r.critical_values)) <= 1.5 + 1e-2


@pytest.mark.slow
def test_svg_example1():
    r = cached_report(EX1)
    svg = render_svg(r)
    assert svg == render_svg(from_json(to_json(r)))
    assert svg.startswith('<?xml version="1.0"') and svg.rstrip().endswith("</svg>")
    assert len(re.findall(r'<path class="s-cluster"', svg)) >= 64
    for label in ("critical values", "bound set", "S clusters", "K-infinity clusters"):
        assert label in svg


def test_svg_empty_report_has_legend_only():
    svg = render_svg(AnalysisReport(input=input_section(parse("z1"))))
    assert 'id="legend"' in svg
    for css in ("critical", "bound", "s-cluster", "kinf-cluster"):
        assert f'class="{css}"' not in svg
        assert f'class="legend-{css}"' in svg


def test_svg_is_byte_deterministic(tmp_path):
    from mixedpoly.report import emit_svg

    r = AnalysisReport(
        input=input_section(parse("z1")),
        s_estimate={"finite_limit": [{"center": [0.5, 0.25]}, {"center": [-1.0, 0.0]}]},
    )
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    emit_svg(r, str(a))
    emit_svg(r, str(b))
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes().count(b'class="s-cluster"') == 2


SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report.schema.json").read_text())


def validate(doc):
    jsonschema = pytest.importorskip("jsonschema")
    jsonschema.validate(doc, SCHEMA, cls=jsonschema.Draft202012Validator)


def test_schema_accepts_minimal_report():
    r = AnalysisReport(input=input_section(parse("z1")), config=RunConfig().echo())
    validate(json.loads(to_json(r)))


@pytest.mark.slow
@pytest.mark.parametrize("text", [EX1, EX2])
def test_schema_accepts_full_reports(text):
    validate(json.loads(to_json(cached_report(text))))


@pytest.mark.parametrize("command", ["faces", "badfaces", "nondeg", "bound"])
def test_schema_accepts_section_documents(capsys, command):
    from mixedpoly.cli import run

    assert run([command, EX1]) == 0
    validate(json.loads(capsys.readouterr().out))


def test_schema_rejects_wrong_version():
    jsonschema = pytest.importorskip("jsonschema")
    doc = json.loads(to_json(AnalysisReport(input=input_section(parse("z1")))))
    doc["schema"] = 2
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, SCHEMA, cls=jsonschema.Draft202012Validator)
