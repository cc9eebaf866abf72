import json

import pytest

from skms.cli import ConfigError, parse_config, run
from perv_fixtures import crossing_lines, line_sheaf

D2 = {"schema_version": 1, "group": {"torus": 1}, "weights": [[-1], [-1], [1], [1]]}
GL2 = {"schema_version": 1,
       "group": {"rank": 2, "simple_roots": [[1, -1]], "simple_coroots": [[1, -1]]},
       "weights": [[1, 0], [0, 1], [-1, 0], [0, -1]] * 2}


@pytest.fixture
def cfg(tmp_path):
    def write(data, name="config.json"):
        p = tmp_path / name
        p.write_text(json.dumps(data))
        return str(p)
    return write


@pytest.mark.parametrize("command", ["validate", "chambers", "windows", "schober", "duality",
                                     "mainprop"])
def test_commands_pass_on_d2(command, cfg, tmp_path):
    out = tmp_path / "out"
    assert run([command, "--config", cfg(D2), "--out", str(out)]) == 0
    report = json.loads((out / f"{command}.json").read_text())
    assert report["verdict"] == "pass" and report["schema_version"] == 1
    assert (out / f"{command}.txt").read_text().startswith(f"command: {command}")


def test_chambers_summary(cfg, tmp_path):
    run(["chambers", "--config", cfg(D2), "--out", str(tmp_path)])
    s = json.loads((tmp_path / "chambers.json").read_text())["skms"]
    assert s["hyperplane_classes_per_period"] == 1 and s["cell_classes"] == 2


def test_cell_references(cfg, tmp_path):
    assert run(["sod", "p:0", "p:1/2", "--config", cfg(D2), "--out", str(tmp_path)]) == 0
    assert run(["mutation", "p:0", "p:1/2", "p:-1/4", "--config", cfg(D2),
                "--out", str(tmp_path)]) == 0
    rep = json.loads((tmp_path / "mutation.json").read_text())
    assert rep["certificate"]["kind"] == "mutation_pair"


def test_bad_cell_reference(cfg, tmp_path, capsys):
    assert run(["sod", "c0", "c99", "--config", cfg(D2), "--out", str(tmp_path)]) == 2
    assert "c99" in capsys.readouterr().err
    assert run(["sod", "p:7", "p:0", "--config", cfg(D2), "--out", str(tmp_path)]) == 2


def test_gl2_mainprop_and_window_override(cfg, tmp_path):
    assert run(["mainprop", "--config", cfg(GL2), "--out", str(tmp_path)]) == 0
    assert run(["chambers", "--config", cfg(GL2), "--out", str(tmp_path),
                "--window=-1/2,5/2"]) == 0


@pytest.mark.parametrize("mutate, field", [
    (lambda d: d.pop("weights"), "weights"),
    (lambda d: d.update(weights=[[1], [-1, 2]]), "weights[1]"),
    (lambda d: d.update(weights=[[1], ["x"]]), "weights[1]"),
    (lambda d: d.update(group={"torus": 0}), "group.torus"),
    (lambda d: d.update(group={"rank": 1, "simple_roots": "no"}), "group.simple_roots"),
    (lambda d: d.update(epsilon=[1, 2]), "epsilon"),
    (lambda d: d.update(window=[["a", 1]]), "window[0][0]"),
    (lambda d: d.update(schema_version=9), "schema_version"),
    (lambda d: d.update(seed="x"), "seed"),
])
def test_config_errors_name_the_field(mutate, field):
    data = json.loads(json.dumps(D2))
    mutate(data)
    with pytest.raises(ConfigError) as exc:
        parse_config(data)
    assert str(exc.value).startswith(field)


def test_sl2_rejected(cfg, tmp_path, capsys):
    data = {"group": {"rank": 1, "simple_roots": [[2]], "simple_coroots": [[1]]},
            "weights": [[2], [-2]]}
    assert run(["chambers", "--config", cfg(data), "--out", str(tmp_path)]) == 2
    assert "invariant subspace is zero-dimensional" in capsys.readouterr().err


def test_invalid_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(["validate", "--config", str(p), "--out", str(tmp_path)]) == 2
    assert "not valid JSON" in capsys.readouterr().err


def test_validate_reports_failure(cfg, tmp_path):
    data = {"group": {"torus": 1}, "weights": [[-1], [2]]}
    assert run(["validate", "--config", cfg(data), "--out", str(tmp_path)]) == 1
    rep = json.loads((tmp_path / "validate.json").read_text())
    assert rep["diagnostics"]["quasi_symmetric"] is False


def test_perv_check(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps(line_sheaf(crossing_lines()).to_json()))
    assert run(["perv-check", str(good), "--out", str(tmp_path)]) == 0
    cc = crossing_lines()
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(line_sheaf(cc, skew_edge="c1").to_json()))
    assert run(["perv-check", str(bad), "--out", str(tmp_path)]) == 1
    assert "FAIL  t" in (tmp_path / "perv-check.txt").read_text()


def test_reports_identical_across_jobs(cfg, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    path = cfg(GL2)
    run(["schober", "--config", path, "--out", str(a), "--jobs", "1"])
    run(["schober", "--config", path, "--out", str(b), "--jobs", "3"])
    assert (a / "schober.json").read_bytes() == (b / "schober.json").read_bytes()


def test_arity_checked(cfg, tmp_path):
    assert run(["sod", "c0", "--config", cfg(D2), "--out", str(tmp_path)]) == 2
