import json
import subprocess
import sys
from fractions import Fraction

import pytest

from novhom import (
    CosTerm,
    TorusSystem,
    TruncatedSeries,
    WeightedLattice,
    series_to_json_dict,
    system_to_json_dict,
)
from novhom.cli import main


def run_cli(args):
    return subprocess.run(
        [sys.executable, "-m", "novhom.cli", *args],
        capture_output=True,
        text=True,
    )


@pytest.fixture()
def small_system_file(tmp_path):
    system = TorusSystem(
        1,
        (0, 0),
        (CosTerm(0.05, (1, 0)), CosTerm(0.05, (0, 1))),
        steps=512,
    )
    path = tmp_path / "system.json"
    path.write_text(json.dumps(system_to_json_dict(system)))
    return path


@pytest.fixture()
def geometric_series_file(tmp_path):
    lat = WeightedLattice(1, [([1], 1)])
    series = TruncatedSeries(lat, [(1, (0,)), (-1, (1,))], 20)
    path = tmp_path / "series.json"
    path.write_text(json.dumps(series_to_json_dict(series)))
    return path


class TestExitCodes:
    def test_betti_preset_ok(self, tmp_path):
        out = tmp_path / "report.json"
        assert main(["betti", "--preset", "torus2", "--theta", "1,0", "--output", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["total"] == 0

    def test_betti_zero_theta(self, tmp_path):
        out = tmp_path / "report.json"
        assert main(["betti", "--preset", "torus2", "--theta", "0,0", "--output", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["betti"] == {"0": 1, "1": 2, "2": 1}
        assert data["total"] == 4

    def test_betti_surface_generic_theta(self, tmp_path):
        out = tmp_path / "report.json"
        assert (
            main(
                [
                    "betti",
                    "--preset",
                    "surface_g2",
                    "--theta",
                    "1,0,0,0",
                    "--output",
                    str(out),
                ]
            )
            == 0
        )
        assert json.loads(out.read_text())["total"] == 2

    def test_malformed_json_is_parse_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        assert main(["betti", "--input", str(bad)]) == 1

    def test_invalid_complex_is_exit_2(self, tmp_path):
        data = {
            "lattice": {"rank": 1, "channels": []},
            "ranks": {"0": 1, "1": 1, "2": 1},
            "boundaries": {
                "1": [[[{"coeff": "1", "monomial": [1]}, {"coeff": "-1", "monomial": [0]}]]],
                "2": [[[{"coeff": "1", "monomial": [1]}, {"coeff": "-1", "monomial": [0]}]]],
            },
        }
        path = tmp_path / "complex.json"
        path.write_text(json.dumps(data))
        assert main(["betti", "--input", str(path)]) == 2

    def test_verify_pass(self, small_system_file, tmp_path):
        out = tmp_path / "verify.json"
        code = main(
            [
                "verify",
                "--input",
                str(small_system_file),
                "--grid",
                "5",
                "--output",
                str(out),
            ]
        )
        assert code == 0
        assert json.loads(out.read_text())["verdict"] == "pass"

    def test_verify_degenerate_is_exit_4(self, tmp_path):
        system = TorusSystem(1, (0, 0), (), steps=128)
        path = tmp_path / "identity.json"
        path.write_text(json.dumps(system_to_json_dict(system)))
        assert main(["verify", "--input", str(path), "--grid", "4"]) == 4

    def test_ring_invert_and_multiply(self, geometric_series_file, tmp_path):
        inv = tmp_path / "inverse.json"
        assert (
            main(
                [
                    "ring",
                    "--op",
                    "invert",
                    "--cutoff",
                    "6",
                    "--input",
                    str(geometric_series_file),
                    "--output",
                    str(inv),
                ]
            )
            == 0
        )
        product = tmp_path / "product.json"
        assert (
            main(
                [
                    "ring",
                    "--op",
                    "multiply",
                    "--input",
                    str(geometric_series_file),
                    "--other",
                    str(inv),
                    "--output",
                    str(product),
                ]
            )
            == 0
        )
        data = json.loads(product.read_text())
        assert data["terms"] == [{"coeff": "1", "monomial": [0]}]

    def test_ring_regroup_roundtrip_identity(self, tmp_path):
        lat = WeightedLattice(2, [([1, 1], 1)])
        terms = [(Fraction(k + 1), (k, 2 - k)) for k in range(3)]
        series = TruncatedSeries(lat, terms, 15)
        src = tmp_path / "series.json"
        src.write_text(
            json.dumps(series_to_json_dict(series), sort_keys=True, indent=2) + "\n"
        )
        out = tmp_path / "roundtrip.json"
        assert (
            main(
                [
                    "ring",
                    "--op",
                    "regroup-roundtrip",
                    "--input",
                    str(src),
                    "--output",
                    str(out),
                ]
            )
            == 0
        )
        produced = json.loads(out.read_text())
        produced.pop("config")
        assert produced == json.loads(src.read_text())

    def test_ring_invert_empty_is_exit_2(self, tmp_path):
        lat = WeightedLattice(1, [([1], 1)])
        path = tmp_path / "zero.json"
        path.write_text(json.dumps(series_to_json_dict(TruncatedSeries(lat, [], 5))))
        assert main(["ring", "--op", "invert", "--input", str(path)]) == 2

    def test_orbits_lists_found_orbits(self, small_system_file, tmp_path):
        out = tmp_path / "orbits.json"
        code = main(
            [
                "orbits",
                "--input",
                str(small_system_file),
                "--grid",
                "5",
                "--output",
                str(out),
            ]
        )
        assert code == 0
        assert json.loads(out.read_text())["count"] == 4


class TestDeterminism:
    def test_betti_reports_byte_identical(self, tmp_path):
        outputs = []
        for tag in ("a", "b"):
            out = tmp_path / f"{tag}.json"
            result = run_cli(
                [
                    "betti",
                    "--preset",
                    "surface_g3",
                    "--theta",
                    "1,0,2,0,0,3",
                    "--seed",
                    "7",
                    "--output",
                    str(out),
                ]
            )
            assert result.returncode == 0
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]

    def test_verify_reports_byte_identical(self, small_system_file, tmp_path):
        outputs = []
        for tag in ("a", "b"):
            out = tmp_path / f"{tag}.json"
            result = run_cli(
                [
                    "verify",
                    "--input",
                    str(small_system_file),
                    "--grid",
                    "5",
                    "--seed",
                    "7",
                    "--output",
                    str(out),
                ]
            )
            assert result.returncode == 0
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]

    def test_threads_do_not_change_orbit_report(self, small_system_file, tmp_path):
        payloads = []
        for threads in ("1", "3"):
            out = tmp_path / f"t{threads}.json"
            result = run_cli(
                [
                    "orbits",
                    "--input",
                    str(small_system_file),
                    "--grid",
                    "5",
                    "--threads",
                    threads,
                    "--output",
                    str(out),
                ]
            )
            assert result.returncode == 0
            payloads.append(json.loads(out.read_text())["orbits"])
        assert payloads[0] == payloads[1]


def test_parse_error_reports_location(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 1,\n  broken')
    result = run_cli(["verify", "--input", str(bad)])
    assert result.returncode == 1
    assert "line 2" in result.stderr
