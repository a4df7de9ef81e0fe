import json

import pytest

from cgafactor.catalog import get
from cgafactor.cli import (EXIT_INPUT, EXIT_NOT_MOTION, EXIT_OK, EXIT_VERIFY, CommandConfig,
                           InputError, main)


@pytest.fixture
def poly_file(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(get(name).C.to_json()))
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_factor_json(capsys, poly_file):
    code, out, _ = run(capsys, "factor", poly_file("transversion-scaling"))
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["verdict"] == "finite" and data["count"] == 3
    assert len(data["factorizations"]) == 3


def test_factor_villarceau(capsys, poly_file):
    code, out, _ = run(capsys, "factor", poly_file("villarceau"), "--seed", "4")
    data = json.loads(out)
    assert code == EXIT_OK and data["verdict"] == "infinite"
    assert len(data["families"][0]["samples"]) >= 5


def test_factor_is_deterministic(capsys, poly_file):
    path = poly_file("rotation-rotation")
    _, first, _ = run(capsys, "factor", path, "--seed", "9")
    _, second, _ = run(capsys, "factor", path, "--seed", "9")
    assert first == second


def test_self_check(capsys, poly_file):
    code, out, err = run(capsys, "factor", poly_file("scaling-scaling"), "--self-check")
    assert code == EXIT_OK and "ok" in err
    json.loads(out)  # stdout stays pure data


def test_factor_text(capsys, poly_file):
    code, out, _ = run(capsys, "factor", poly_file("transversion-transversion"), "--format", "text")
    assert code == EXIT_OK and out.startswith("verdict: Finite(2)")


def test_not_a_motion_polynomial(capsys):
    code, out, err = run(capsys, "factor", '{"coeffs": [{"e123p": 1}, {}, {"s": 1}]}')
    assert code == EXIT_NOT_MOTION and out == "" and "motion polynomial" in err


def test_malformed_inputs(capsys, tmp_path):
    assert run(capsys, "factor", "not json")[0] == EXIT_INPUT
    assert run(capsys, "factor", '{"coeffs": [{"e4": 1}]}')[0] == EXIT_INPUT
    assert run(capsys, "factor", '{"c": []}')[0] == EXIT_INPUT
    assert run(capsys, "classify", "[1, 2]")[0] == EXIT_INPUT
    assert run(capsys, "factor", str(tmp_path / "missing.json"))[0] == EXIT_INPUT


def test_classify(capsys):
    assert run(capsys, "classify", '{"e12": 1}')[1].splitlines()[0] == "rotation"
    assert run(capsys, "classify", '{"e3p": 1, "e3m": 1}')[1].splitlines()[0] == "transversion"
    assert run(capsys, "classify", '{"epm": 1}')[1].splitlines()[0] == "scaling"
    code, out, _ = run(capsys, "classify", '{"epm": 1}', "--format", "json")
    assert json.loads(out) == {"type": "scaling", "quadrance": [-1.0, 0.0, 1.0],
                               "real_roots": [-1.0, 1.0]}


def test_irregular(capsys):
    assert run(capsys, "irregular", '{"e12": 1}', '{"e3p": 1}')[1].strip() == "irregular"
    code, out, _ = run(capsys, "irregular", '{"e12": 1}', '{"e12": 1, "s": 2}')
    assert out.strip() == "regular"


def test_trajectory(capsys, poly_file):
    code, out, err = run(capsys, "trajectory", poly_file("circular-translation"),
                         "--point", "0", "0", "3", "--samples", "2")
    rows = out.splitlines()
    assert code == EXIT_OK and rows[0] == "t,x,y,z" and len(rows) == 3


def test_trajectory_reports_skipped_samples(capsys, tmp_path):
    path = tmp_path / "transversion.json"
    path.write_text(json.dumps({"coeffs": [{"e3p": -1, "e3m": -1}, {"s": 1}]}))
    code, out, err = run(capsys, "trajectory", str(path), "--t-min", "-1", "--t-max", "1",
                         "--samples", "3")
    assert code == EXIT_OK and len(out.splitlines()) == 3 and "t=0.0" in err


def test_trajectory_limits_coincide(capsys, poly_file):
    _, out, _ = run(capsys, "trajectory", poly_file("circular-translation"),
                    "--point", "0", "0", "3", "--samples", "401", "--t-min", "-1000",
                    "--t-max", "1000")
    rows = [list(map(float, r.split(","))) for r in out.splitlines()[1:]]
    assert len(rows) == 401
    first, last = rows[0][1:], rows[-1][1:]
    assert max(abs(a - b) for a, b in zip(first, last)) < 1e-2


def test_verify_catalog(capsys):
    code, out, _ = run(capsys, "verify-catalog")
    assert code == EXIT_OK and out.strip().endswith("8/8 pass")


def test_verify_catalog_tight_tolerance_fails(capsys):
    code, out, _ = run(capsys, "verify-catalog", "--tolerance", "1e-18", "--format", "json")
    assert code == EXIT_VERIFY
    assert not all(r["passed"] for r in json.loads(out))


def test_config_validation(capsys):
    with pytest.raises(InputError):
        CommandConfig(tolerance=0.0)
    with pytest.raises(InputError):
        CommandConfig(samples=1)
    assert run(capsys, "trajectory", '{"coeffs": [{}, {"s": 1}]}', "--samples", "1")[0] == EXIT_INPUT
