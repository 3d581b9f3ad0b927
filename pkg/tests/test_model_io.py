from __future__ import annotations

import copy
import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qextend.data import list_builtins, read_builtin
from qextend.errors import ParseError, UnsupportedFormatError
from qextend.extensibility import PowerLaw, system_report, what_if
from qextend.model_io import (
    PlatformDocument,
    RentReport,
    ReportFormat,
    emit_platform,
    emit_report,
    emit_series_csv,
    parse_platform,
    parse_series_csv,
    parse_thresholds,
)
from qextend.rent import StackLayer, TerminalSeries
from qextend.volume import RegimeThresholds, VolumePoint, regime_result

GOLDEN = Path(__file__).parent / "golden"
PLATFORMS = [name for name in list_builtins() if name.endswith(".platform")]


@pytest.fixture
def raw_fig2c(figure2c_text):
    return json.loads(figure2c_text)


def parse_dict(d):
    return parse_platform(json.dumps(d))


class TestParsePlatform:
    def test_figure2c(self, figure2c_text):
        doc = parse_platform(figure2c_text)
        assert doc.platform.resource_names == ["R1", "R2", "R3", "R4"]
        assert doc.platform.vq_initial == 100.0
        assert doc.platform.resource("R4").law == PowerLaw(8.0)
        assert doc.thresholds is None

    def test_saturated_resource_valid(self, raw_fig2c):
        raw_fig2c["resources"][0]["r_max"] = raw_fig2c["resources"][0]["r_initial"]
        doc = parse_dict(raw_fig2c)
        assert system_report(doc.platform).system_vq_max == 100.0

    def test_zero_x_suggests_exponential(self, raw_fig2c):
        raw_fig2c["resources"][1]["law"]["x"] = 0
        with pytest.raises(ParseError, match=r"resources\[1\]\.law\.x.*exponential"):
            parse_dict(raw_fig2c)

    def test_exponential_law(self, raw_fig2c):
        raw_fig2c["resources"][1]["law"] = {"kind": "exponential", "k": 0.25}
        assert parse_dict(raw_fig2c).platform.resource("R2").extensibility == 0.0

    def test_unknown_top_level_field(self, raw_fig2c):
        raw_fig2c["colour"] = "red"
        with pytest.raises(ParseError, match="colour: unknown field"):
            parse_dict(raw_fig2c)

    def test_syntax_error_location(self):
        text = '{\n  "name": "x",\n  "vq_initial": 1\n  "resources": []\n}'
        with pytest.raises(ParseError, match="line 4 column 3"):
            parse_platform(text)

    @pytest.mark.parametrize(
        "mutate, where",
        [
            (lambda d: d.__setitem__("schema_version", 2), "schema_version"),
            (lambda d: d.pop("name"), "name"),
            (lambda d: d.__setitem__("vq_initial", 0.5), "vq_initial"),
            (lambda d: d.__setitem__("resources", []), "resources"),
            (lambda d: d["resources"][2].__setitem__("r_max", "big"), r"resources\[2\]\.r_max"),
            (lambda d: d["resources"][2].__setitem__("r_initial", -1.0), r"resources\[2\]"),
            (lambda d: d["resources"][2].__setitem__("r_max", 0.5), r"resources\[2\]"),
            (lambda d: d["resources"][3].__setitem__("name", "R1"), "resources"),
            (lambda d: d["resources"][0]["law"].__setitem__("kind", "linear"), r"resources\[0\]\.law"),
            (lambda d: d["resources"][0]["law"].__setitem__("k", 1.0), r"resources\[0\]\.law"),
            (lambda d: d["initial_point"].__setitem__("depth", 11.5), "initial_point"),
            (lambda d: d["initial_point"].__setitem__("depth", 9), "initial_point"),
        ],
    )
    def test_single_mutations_rejected(self, raw_fig2c, mutate, where):
        mutate(raw_fig2c)
        with pytest.raises(ParseError, match=where):
            parse_dict(raw_fig2c)

    def test_nan_rejected(self):
        text = read_builtin("figure2c").replace('"vq_initial": 100.0', '"vq_initial": NaN')
        with pytest.raises(ParseError, match="NaN"):
            parse_platform(text)

    def test_thresholds(self):
        assert parse_thresholds('{"classical_sim_bound": 2, "simulation_vq": 16, "universal_vq": 25}') == (
            RegimeThresholds(2, 16, 25)
        )
        assert parse_thresholds(read_builtin("spin_qubit")) == parse_platform(read_builtin("spin_qubit")).thresholds
        with pytest.raises(ParseError):
            parse_thresholds('{"classical_sim_bound": 100, "simulation_vq": 1000, "universal_vq": 1e7}')


class TestRoundTrip:
    @pytest.mark.parametrize("name", PLATFORMS)
    def test_shipped(self, name):
        doc = parse_platform(read_builtin(name))
        text = emit_platform(doc)
        again = parse_platform(text)
        assert again == doc
        assert emit_platform(again) == text

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=1e-6, max_value=1e6),
                st.floats(min_value=1.0, max_value=1e6),
                st.one_of(st.floats(min_value=0.05, max_value=20), st.none()),
                st.floats(min_value=1e-3, max_value=5),
            ),
            min_size=1,
            max_size=6,
        ),
        st.floats(min_value=1.0, max_value=1e9),
    )
    def test_generated(self, rows, vqi):
        resources = []
        for i, (r0, factor, x, k) in enumerate(rows):
            law = {"kind": "power", "x": x} if x is not None else {"kind": "exponential", "k": k}
            resources.append({"name": f"r{i}", "r_initial": r0, "r_max": r0 * factor, "law": law})
        raw = {"schema_version": 1, "name": "gen", "vq_initial": vqi, "resources": resources}
        try:
            doc = parse_dict(raw)
        except ParseError:
            return  # r0 * factor rounded below r0
        assert parse_platform(emit_platform(doc)) == doc

    def test_json_layout(self, figure2c_text):
        text = emit_platform(parse_platform(figure2c_text))
        assert text.endswith("}\n") and "\r" not in text
        assert json.loads(text)["schema_version"] == 1


class TestSeriesCsv:
    def test_round_trip(self):
        s = TerminalSeries(StackLayer.CHIP_IO, ((1, 2.0), (10, 2.5), (100, 3.125)))
        text = emit_series_csv(s)
        assert text == "g,T\n1,2\n10,2.5\n100,3.125\n"
        assert parse_series_csv(text, StackLayer.CHIP_IO) == s

    def test_shipped(self):
        s = parse_series_csv(read_builtin("crossbar.csv"), StackLayer.DEVICE_GATES)
        assert s.points == ((4, 4.0), (16, 8.0), (64, 16.0))

    @pytest.mark.parametrize(
        "text, match",
        [
            ("g,T\n10,1\n5,2\n", "line 3: g=5 is out of order"),
            ("g,T\n10,1\n10,2\n", "line 3: duplicate g=10"),
            ("g,T\n10,x\n20,1\n", "line 2: non-numeric"),
            ("g,T\n10,1\n", "at least 2"),
            ("x,y\n1,2\n2,3\n", "line 1"),
            ("g,T\n0,1\n2,3\n", "line 2"),
            ("g,T\n1,1\n2,-3\n", "line 3"),
            ("g,T\n1,1\n2.5,3\n", "line 3"),
            ("", "line 1"),
        ],
    )
    def test_errors(self, text, match):
        with pytest.raises(ParseError, match=match):
            parse_series_csv(text, StackLayer.DEVICE_GATES)


class TestEmitReport:
    def test_golden_text(self, figure2c):
        text = emit_report(system_report(figure2c))
        assert text == (GOLDEN / "figure2c_report.txt").read_text()
        (limiter,) = [line for line in text.splitlines() if line.startswith("* R")]
        assert limiter.split()[1] == "R2"

    def test_golden_csv(self, figure2c):
        assert emit_report(system_report(figure2c), ReportFormat.CSV) == (GOLDEN / "figure2c_report.csv").read_text()

    def test_single_resource_csv(self, raw_fig2c):
        raw_fig2c["resources"] = raw_fig2c["resources"][:1]
        out = emit_report(system_report(parse_dict(raw_fig2c).platform), "csv")
        assert len(out.splitlines()) == 2
        assert "\r" not in out

    def test_deterministic(self, figure2c):
        assert emit_report(system_report(figure2c)) == emit_report(system_report(figure2c))

    def test_rent_golden(self):
        doc = parse_platform(read_builtin("spin_qubit"))
        report = RentReport.from_series(doc.architecture.series())
        assert emit_report(report) == (GOLDEN / "spin_qubit_rent.txt").read_text()

    def test_rent_single(self):
        series = parse_series_csv(read_builtin("direct_control.csv"), StackLayer.DEVICE_GATES)
        assert emit_report(RentReport.from_series([series])) == "t=2 p=1 r2=1\n"

    def test_regime(self):
        text = emit_report(regime_result(VolumePoint(60, 60)))
        assert "vq 3600" in " ".join(text.split()) and "SupremacyNisq" in text
        assert emit_report(regime_result(VolumePoint(60, 60)), "svg").startswith("<?xml")

    def test_what_if(self, figure2c):
        result = what_if(figure2c, {"R2": {"r_max": 2000.0}})
        text = emit_report(result)
        assert "== before ==" in text and "== after ==" in text
        assert text.rstrip().endswith("limiting R2 -> R2")
        rows = emit_report(result, "csv").splitlines()
        assert rows[0].startswith("scenario,") and len(rows) == 9

    @pytest.mark.parametrize("fmt", ["svg"])
    def test_svg_unsupported(self, figure2c, fmt):
        with pytest.raises(UnsupportedFormatError):
            emit_report(system_report(figure2c), fmt)

    def test_unknown_format(self, figure2c):
        with pytest.raises(Exception, match="png"):
            emit_report(system_report(figure2c), "png")


def test_document_defaults(figure2c):
    doc = PlatformDocument(figure2c)
    assert doc.schema_version == 1
    assert not doc.terminal_series and doc.architecture is None
    assert copy.deepcopy(doc) == doc
