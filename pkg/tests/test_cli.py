import json

import pytest

from irred.cli import main

GOOD = {
    "field": {"quadratic": 13, "class_number": 1},
    "curve": {"a_invariants": [[0, 0], [0, 0], [0, 0], [0, 0], [1, 0]]},
    "aux_primes": [5],
}

FAMILY = {
    "field": {"quadratic": 13, "class_number": 1},
    "family": {
        "coeff_a2": [[0, 1, [1, 0]], [1, 0, [-1, 0]]],
        "coeff_a4": [[1, 1, [-1, 0]]],
    },
    "aux_primes": [5],
}


def _write(tmp_path, doc, name="conf.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_run_writes_json_report(tmp_path):
    conf = _write(tmp_path, GOOD)
    out = str(tmp_path / "report.json")
    assert main(["run", "--config", conf, "--out", out]) == 0
    doc = json.loads(open(out, "rb").read())
    assert doc["B"]["value"] == "1684800"
    assert doc["bad_primes_beyond_baseline"] == ["31", "601"]


def test_run_stdout_and_text_format(tmp_path, capsys):
    conf = _write(tmp_path, GOOD)
    assert main(["run", "--config", conf, "--format", "text"]) == 0
    captured = capsys.readouterr().out
    assert "B = 1684800 = 2^6*3^4*5^2*13" in captured

    assert main(["run", "--config", conf]) == 0
    captured = capsys.readouterr().out
    assert json.loads(captured)["merel_bound"] == "282430599364"


def test_config_error_exits_2(tmp_path, capsys):
    conf = _write(tmp_path, dict(GOOD, aux_primes=[3, 3]))
    assert main(["run", "--config", conf]) == 2
    assert "duplicate auxiliary prime" in capsys.readouterr().err


def test_missing_config_exits_2(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "nope.json")]) == 2
    assert "cannot read config" in capsys.readouterr().err


def test_verification_failure_exits_3(tmp_path, capsys):
    doc = {"field": {
        "min_poly": [-3, -1, 1],
        "integral_basis": [[1, 0], [0, 1]],
        "automorphisms": [[0, 1], [1, 1]],
        "unit_basis": [[1, 1]],
        "class_number": 1,
    }}
    conf = _write(tmp_path, doc)
    assert main(["run", "--config", conf]) == 3
    assert "pair (2, 2)" in capsys.readouterr().err


def test_size_cap_exits_4(tmp_path, capsys):
    conf = _write(tmp_path, dict(GOOD, count_cap=2))
    assert main(["run", "--config", conf]) == 4
    assert "cap" in capsys.readouterr().err


def test_strict_partial_exits_5_with_report(tmp_path, capsys):
    conf = _write(tmp_path, FAMILY)
    out = str(tmp_path / "rep.json")
    assert main(["run", "--config", conf, "--out", out, "--strict"]) == 5
    # the report is still written before the strict exit
    doc = json.loads(open(out, "rb").read())
    assert doc["per_prime"]["5"]["partial"] is True
    assert "partial" in capsys.readouterr().err

    assert main(["run", "--config", conf, "--out", out]) == 0


def test_jobs_flag_reproduces_bytes(tmp_path):
    conf = _write(tmp_path, FAMILY)
    out1 = str(tmp_path / "r1.json")
    out8 = str(tmp_path / "r8.json")
    assert main(["run", "--config", conf, "--out", out1,
                 "--emit-pairs", "--jobs", "1"]) == 0
    assert main(["run", "--config", conf, "--out", out8,
                 "--emit-pairs", "--jobs", "8"]) == 0
    assert open(out1, "rb").read() == open(out8, "rb").read()


def test_bound_only_flag(tmp_path, capsys):
    conf = _write(tmp_path, GOOD)
    assert main(["run", "--config", conf, "--bound-only"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["per_prime"] == {}


def test_bad_jobs_argument_rejected(tmp_path):
    conf = _write(tmp_path, GOOD)
    with pytest.raises(SystemExit) as exc:
        main(["run", "--config", conf, "--jobs", "0"])
    assert exc.value.code == 2
