import csv
import io
import json

import pytest

from hahnpoly.cli import main
from hahnpoly.hahn1d import Params1D, hahn_sQ
from hahnpoly.hahnmd import sQ_nu_poly
from hahnpoly.lattice import LatticeParams
from hahnpoly.poly import Poly


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_one_variable(capsys):
    code, out, _ = run(capsys, "eval", "--d", "1", "--ell", "6,8", "--N", "12", "--n", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["index"] == 2 and obj["params"] == {"ell": [6, 8], "N": 12}
    assert Poly.from_json_obj(obj["poly"]) == hahn_sQ(2, Params1D(6, 8, 12))


def test_eval_matches_library(capsys):
    code, out, _ = run(capsys, "eval", "--ell", "6,4,4", "--N", "7", "--nu", "3,3")
    assert code == 0
    poly = Poly.from_json_obj(json.loads(out)["poly"])
    assert poly == sQ_nu_poly((3, 3), LatticeParams((6, 4, 4), 7))


def test_eval_values_and_normalizations(capsys):
    code, out, _ = run(capsys, "eval", "--ell", "6,4,4", "--N", "7", "--nu", "1,0", "--values",
                       "--normalization", "hat")
    assert code == 0
    rows = json.loads(out)["values"]
    assert len(rows) == 23
    q = sQ_nu_poly((1, 0), LatticeParams((6, 4, 4), 7))
    assert all(r["value"] == str(q.eval(r["x"]) / -7) for r in rows)


@pytest.mark.parametrize("argv", [
    ["eval", "--ell", "6,4,4", "--N", "7"],
    ["eval", "--ell", "6,4,4", "--N", "7", "--nu", "3,3", "--normalization", "H"],
    ["eval", "--ell", "6,4,4"],
    ["eval", "--d", "3", "--ell", "6,4,4", "--N", "7", "--nu", "1,1"],
    ["eval", "--ell", "1,1,5", "--N", "5", "--nu", "0,0"],
    ["domain", "--ell", "6,4,4", "--N", "7", "--set", "zeros"],
    ["verify", "conjecture", "--n", "3"],
    ["verify", "poisson", "--ell", "1,2,3", "--N", "4"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("hahnpoly: error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["eval", "--ell", "a,b", "--N", "3"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["verify", "nosuch"])
    assert e.value.code == 2


def test_domain_sets(capsys):
    code, out, _ = run(capsys, "domain", "--ell", "6,4,4", "--N", "7", "--set", "V")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["x1", "x2"] and len(rows) == 24
    V = {tuple(map(int, r)) for r in rows[1:]}
    code, out, _ = run(capsys, "domain", "--ell", "6,4,4", "--N", "7", "--set", "zeros", "--nu", "3,3")
    zeros = {tuple(map(int, r)) for r in list(csv.reader(io.StringIO(out)))[1:]}
    assert code == 0 and V <= zeros


def test_verify_pass_and_fail_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "cardinality", "--ell", "6,4,4", "--N", "7", "--no-timing")
    report = json.loads(out)
    assert code == 0 and report["elapsed_ms"] == 0
    assert all(c["status"] == "pass" for c in report["checks"])
    code, out, _ = run(capsys, "verify", "factor", "--ell", "3,3,3", "--N", "4", "--failures-only")
    names = [c["name"] for c in json.loads(out)["checks"]]
    assert code == 1 and names == ["frontier-iff-as-stated ell=3,3,3 N=4"]


def test_verify_one_variable_and_conjecture(capsys):
    code, out, _ = run(capsys, "verify", "ortho", "--ell", "6,8", "--N", "12")
    assert code == 0 and json.loads(out)["checks"]
    code, out, _ = run(capsys, "verify", "conjecture", "--n", "3", "--ell1", "4", "--ell2", "4")
    assert code == 0 and json.loads(out)["params"] == {"n": 3, "ell1": 4, "ell2": 4}


def test_output_is_deterministic(capsys):
    argv = ["verify", "ortho", "--ell", "3,3,3", "--N", "4", "--no-timing"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0
