"""Scenario parsing, the bundled catalog, report determinism, exit codes."""

import io
import json
import os
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

import pytest

from tateform.cli import main, parse_scenario, run_scenario, serialize_scenario
from tateform.errors import ParseError
from tateform.scenarios import bundled_document, bundled_names

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")


def invoke(args):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(args)
    return code, out.getvalue(), err.getvalue()


def minimal_doc(**overrides):
    doc = {
        "name": "minimal",
        "group": {"kind": "cyclic", "n": 4},
        "coefficients": {"kind": "trivial"},
        "analyses": [{"kind": "formation"}],
    }
    doc.update(overrides)
    return doc


class TestParsing:
    def test_minimal_document_is_valid(self):
        spec = parse_scenario(minimal_doc())
        assert spec.name == "minimal"
        assert spec.coefficients == {"kind": "trivial", "shift": 0}
        assert spec.options == {"engine": "auto", "window": 6,
                                "max_order": 24}
        assert spec.analyses == [{"kind": "formation"}]

    def test_unknown_analysis_names_the_field(self):
        with pytest.raises(ParseError, match=r"analyses\[0\].kind"):
            parse_scenario(minimal_doc(analyses=[{"kind": "eigenvalues"}]))

    def test_oversized_group_states_the_cap(self):
        with pytest.raises(ParseError, match="exceeds the configured cap 24"):
            parse_scenario(minimal_doc(group={"kind": "cyclic", "n": 48}))

    def test_cap_is_configurable(self):
        doc = minimal_doc(group={"kind": "cyclic", "n": 48},
                          options={"max_order": 50})
        assert parse_scenario(doc).group == {"kind": "cyclic", "n": 48}

    def test_unknown_top_level_key(self):
        with pytest.raises(ParseError, match="scenario.extra"):
            parse_scenario(minimal_doc(extra=1))

    def test_bad_table_is_a_parse_error(self):
        doc = minimal_doc(group={"kind": "table",
                                 "table": [[0, 1], [1, 1]]})
        with pytest.raises(ParseError, match="group.table"):
            parse_scenario(doc)

    def test_ffu_group_mismatch(self):
        doc = minimal_doc(
            coefficients={"kind": "finite-field-units",
                          "p": 2, "f": 1, "n": 3})
        with pytest.raises(ParseError, match="cyclic of order 3"):
            parse_scenario(doc)

    def test_inverted_range(self):
        doc = minimal_doc(analyses=[{"kind": "tate", "range": [3, -2]}])
        with pytest.raises(ParseError, match=r"analyses\[0\].range"):
            parse_scenario(doc)

    @pytest.mark.parametrize("name", bundled_names())
    def test_round_trip_identity(self, name):
        spec = parse_scenario(bundled_document(name))
        assert parse_scenario(serialize_scenario(spec)) == spec


class TestCatalog:
    def test_at_least_eight_bundled(self):
        assert len(bundled_names()) >= 8

    def test_listing_is_stable(self):
        first = invoke(["list"])
        second = invoke(["list"])
        assert first == second
        assert first[0] == 0

    def test_entries_name_their_verdict(self):
        code, out, _ = invoke(["list"])
        for name in bundled_names():
            assert name in out
        # every catalog line states what result to expect
        for line in out.splitlines()[1:]:
            assert any(token in line for token in
                       ("PASS", "FAIL", "= 0", "holds", "rejected"))

    def test_json_listing(self):
        code, out, _ = invoke(["list", "--format", "json"])
        assert code == 0
        catalog = json.loads(out)["scenarios"]
        assert [c["name"] for c in catalog] == bundled_names()


class TestGolden:
    @pytest.mark.parametrize(
        "name", ["hilbert90-f4", "unramified-cyclic-2", "cone-les-z2"])
    def test_demo_matches_golden_file(self, name):
        code, out, _ = invoke(["demo", name, "--format", "json"])
        assert code == 0
        with open(os.path.join(GOLDEN_DIR, "%s.json" % name)) as fh:
            assert out == fh.read()

    def test_three_runs_byte_identical(self):
        outs = {invoke(["demo", "s3-z", "--format", "json"])[1]
                for _ in range(3)}
        assert len(outs) == 1


class TestExitCodes:
    def test_fail_verdict_is_still_success(self):
        code, out, _ = invoke(["demo", "klein-four-z"])
        assert code == 0
        assert "FAIL (C2)" in out

    def test_missing_verb(self):
        assert invoke([])[0] == 1

    def test_unknown_demo_lists_names(self):
        code, _, err = invoke(["demo", "nope"])
        assert code == 1
        assert "unramified-cyclic-2" in err

    def test_parse_error_from_file(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(minimal_doc(
            analyses=[{"kind": "eigenvalues"}])))
        code, _, err = invoke(["run", str(p)])
        assert code == 1
        assert "analyses[0].kind" in err

    def test_invalid_json_file(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{nope")
        assert invoke(["run", str(p)])[0] == 1

    def test_missing_file(self):
        assert invoke(["run", "/does/not/exist.json"])[0] == 1

    def test_window_too_small_is_computation_error(self):
        code, _, err = invoke(
            ["demo", "hilbert90-f4", "--window", "2", "--range=-4..4"])
        assert code == 2
        assert "window" in err

    def test_periodic_engine_on_noncyclic(self):
        code, _, err = invoke(["demo", "klein-four-z",
                               "--engine", "periodic"])
        assert code == 2
        assert "cyclic" in err


class TestRunVerb:
    def test_run_equals_demo(self, tmp_path):
        p = tmp_path / "scen.json"
        p.write_text(json.dumps(bundled_document("hilbert90-f9")))
        via_file = invoke(["run", str(p), "--format", "json"])
        via_demo = invoke(["demo", "hilbert90-f9", "--format", "json"])
        assert via_file == via_demo

    def test_validate_accepts_and_echoes(self, tmp_path):
        p = tmp_path / "scen.json"
        p.write_text(json.dumps(bundled_document("s3-z")))
        code, out, _ = invoke(["validate", str(p), "--format", "json"])
        assert code == 0
        spec = parse_scenario(json.loads(out))
        assert spec.name == "s3-z"

    def test_explicit_complex_document(self):
        # two copies of Z joined by multiplication by 2, placed at [0, 1];
        # every Tate group of the cone-like complex is Z/2
        doc = {
            "name": "two-term",
            "group": {"kind": "cyclic", "n": 2},
            "coefficients": {
                "kind": "complex",
                "lo": 0,
                "terms": [
                    {"gens": 1, "action": [[[1]], [[1]]]},
                    {"gens": 1, "action": [[[1]], [[1]]]},
                ],
                "diffs": [[[2]]],
            },
            "analyses": [{"kind": "tate", "range": [-2, 2]}],
        }
        spec = parse_scenario(doc)
        report = run_scenario(spec)
        rows = report["results"][0]["rows"]
        assert all(row["invariants"] == [2] for row in rows)

    def test_flag_overrides_reach_the_report(self):
        code, out, _ = invoke(
            ["demo", "hilbert90-f4", "--format", "json", "--range", "1..1"])
        report = json.loads(out)
        assert report["results"][0]["range"] == [1, 1]
        assert report["scenario"]["analyses"][0]["range"] == [1, 1]

    def test_tensor_power_zero_is_trivial_z(self):
        doc = minimal_doc(
            coefficients={"kind": "tensor-power-shift",
                          "base": {"kind": "trivial"}, "power": 0},
            analyses=[{"kind": "tate", "range": [0, 0]}])
        report = run_scenario(parse_scenario(doc))
        assert report["results"][0]["rows"][0]["invariants"] == [4]


def test_console_script_is_wired():
    proc = subprocess.run(
        [sys.executable, "-m", "tateform", "list"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "bundled scenarios" in proc.stdout
