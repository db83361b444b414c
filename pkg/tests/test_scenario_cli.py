import json
from pathlib import Path

import pytest

from toricperiods.cli import main
from toricperiods.scenario import (
    SchemaError,
    catalog_emit,
    catalog_names,
    parse_scenario,
    report_to_json,
    run_scenario,
)


def write_scenario(tmp_path, data, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_catalog_names():
    names = catalog_names()
    assert len(names) >= 6
    for expected in ("tate", "orthant_a2", "quadric_cone", "square_cone_3d",
                     "weight_n_stack", "height_p1"):
        assert expected in names


def test_catalog_emit_overrides():
    data = catalog_emit("tate", q=5, order=4)
    assert data["curve"]["q"] == 5
    assert data["truncation"] == 4
    stack = catalog_emit("weight_n_stack", n=2)
    assert stack["isogeny"]["inclusion"] == [[2]]
    assert stack["curve"]["q"] == 3
    stack3 = catalog_emit("weight_n_stack", n=3)
    assert stack3["curve"]["q"] == 4
    with pytest.raises(KeyError):
        catalog_emit("unknown-name")


def test_parse_rejects_missing_fields():
    with pytest.raises(SchemaError) as err:
        parse_scenario({"name": "x"})
    assert "rank" in str(err.value)


def test_parse_rejects_bad_checks():
    data = catalog_emit("tate")
    data["checks"] = ["weak_duality", "nonsense"]
    with pytest.raises(SchemaError) as err:
        parse_scenario(data)
    assert "nonsense" in str(err.value)


def test_parse_requires_isogeny_for_stack_check():
    data = catalog_emit("tate")
    data["checks"] = ["stack_duality"]
    with pytest.raises(SchemaError):
        parse_scenario(data)


def test_run_scenario_reports_pass():
    sc = parse_scenario(catalog_emit("tate", order=6))
    report, ok = run_scenario(sc)
    assert ok and report["status"] == "pass"
    assert report["checks"]["weak_duality"]["status"] == "pass"


def test_non_strongly_convex_is_schema_error(tmp_path):
    data = catalog_emit("tate", order=4)
    data["rank"] = 2
    data["rays"] = [[1, 0], [-1, 0]]
    data["rho"] = [1, 1]
    data["eta"] = [1, 1]
    for c in data["characters"]:
        c["coords"] = ["formal", "formal"]
    path = write_scenario(tmp_path, data)
    code = main(["verify", str(path)])
    assert code == 2


def test_invalid_eta_fails_validation(tmp_path, capsys):
    data = catalog_emit("quadric_cone", order=4)
    data["eta"] = [0, 1]  # vanishes on the ray (1,0)
    path = write_scenario(tmp_path, data)
    code = main(["verify", str(path), "--json"])
    assert code == 1
    out = capsys.readouterr().out
    report = json.loads(out)
    fails = [e for e in report["pair"]["validation"] if not e["ok"]]
    assert any(e["condition"] == "eigenform-pole-free"
               and e["witness"] == ["1", "0"] for e in fails)


def test_verify_writes_report_beside_input(tmp_path):
    data = catalog_emit("tate", order=4)
    path = write_scenario(tmp_path, data, "mini.json")
    code = main(["verify", str(path)])
    assert code == 0
    report_path = tmp_path / "mini.report.json"
    assert report_path.exists()
    report = json.loads(report_path.read_text())
    assert report["status"] == "pass"


def test_reports_are_deterministic_across_jobs(tmp_path):
    data = catalog_emit("quadric_cone", order=6)
    path = write_scenario(tmp_path, data)
    outputs = []
    for jobs in (None, 1, 3):
        args = ["verify", str(path), "--out", str(tmp_path / f"r{jobs}.json")]
        if jobs:
            args += ["--jobs", str(jobs)]
        assert main(args) == 0
        outputs.append((tmp_path / f"r{jobs}.json").read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]


def test_rerun_byte_identical(tmp_path):
    data = catalog_emit("height_p1", order=6)
    path = write_scenario(tmp_path, data)
    main(["verify", str(path), "--out", str(tmp_path / "a.json")])
    main(["verify", str(path), "--out", str(tmp_path / "b.json")])
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_stack_scenario_wrong_q_rejected(tmp_path):
    data = catalog_emit("weight_n_stack", n=2, q=2)
    path = write_scenario(tmp_path, data)
    code = main(["verify", str(path)])
    assert code == 2


def test_series_serialization_format():
    sc = parse_scenario(catalog_emit("tate", order=2))
    report, _ = run_scenario(sc)
    row = report["checks"]["weak_duality"]["per_character"][0]
    series = row["directions"][0]["automorphic_series"]
    # [[u_exp, [[num, den, zeta_exp, z_exps], ...]], ...] with string ints.
    assert series[0][0] == "0"
    assert series[0][1][0] == ["1", "1", "0", ["1"]]


def test_cli_catalog_roundtrip(tmp_path, capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert "tate" in out and "weight_n_stack" in out
    target = tmp_path / "tate.json"
    assert main(["catalog", "emit", "tate", "--order", "4",
                 "--out", str(target)]) == 0
    assert json.loads(target.read_text())["truncation"] == 4
    assert main(["catalog", "emit", "no-such-entry"]) == 2


def test_missing_file_is_schema_error():
    assert main(["verify", "/nonexistent/path.json"]) == 2
