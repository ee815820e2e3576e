import io
import json
import subprocess
import sys

import pytest

from polyadic.cli import main


def run(argv):
    buf = io.StringIO()
    code = main(argv, stdout=buf)
    return code, buf.getvalue()


def run_json(argv):
    code, out = run(argv)
    return code, json.loads(out)


SCHEMA = {"verb", "system", "params", "results", "witnesses", "evidence", "pass"}


def test_verify_chain_derived():
    code, rep = run_json(["verify-chain", "--system", "derived:m=5,n=3,c=2", "--qmax", "9"])
    assert code == 0 and rep["pass"]
    assert SCHEMA <= rep.keys()
    qs = sorted({r["q"] for r in rep["results"] if r["q"] > 0})
    assert qs == [1, 3, 5, 7, 9]
    assert all(r["pass"] for r in rep["results"])


def test_enumerate_q():
    code, rep = run_json(["enumerate-q", "--n", "4", "--qmax", "7"])
    assert code == 0
    assert [(r["q"], r["ell_phi"]) for r in rep["results"]] == [(1, 1), (4, 3), (7, 5)]


def test_classify_copula():
    code, rep = run_json(["classify", "--system", "gallery:copula"])
    assert code == 0
    res = rep["results"][0]
    assert res["group"] and res["idempotent"] and res["arity"] == 3


def test_classify_failure_exit_code(tmp_path):
    path = tmp_path / "sub.json"
    path.write_text(json.dumps({"kind": "cayley", "n": 2, "m": 3,
                                "table": [[0, 2, 1], [1, 0, 2], [2, 1, 0]]}), encoding="utf-8")
    code, rep = run_json(["classify", "--system", str(path)])
    assert code == 1 and not rep["pass"]
    assert {"property": "totally_associative", "witness": [0, 0, 1]} in rep["witnesses"]


def test_usage_errors():
    assert run(["no-such-verb"])[0] == 2
    assert run(["classify"])[0] == 2
    assert run(["classify", "--system", "derived:m=5,n=3,c=9"])[0] == 2
    assert run(["classify", "--system", "missing-file.json"])[0] == 2


def test_budget_exit_code(monkeypatch):
    monkeypatch.setenv("POLYADIC_BUDGET", "100")
    code, rep = run_json(["classify", "--system", "derived:m=5,n=3,c=2"])
    assert code == 3 and "budget" in rep["error"]


def test_budget_flag():
    assert run(["verify-chain", "--system", "derived:m=7,n=5,c=1", "--budget", "10"])[0] == 3


def test_quer_and_power():
    code, rep = run_json(["quer", "--system", "derived:m=5,n=3,c=0", "--element", "2"])
    assert code == 0 and rep["results"][0]["value"] == 3
    code, rep = run_json(["power", "--system", "derived:m=5,n=3,c=2", "--element", "4",
                          "--ell", "-2"])
    assert code == 0 and rep["results"][0]["value"] == ((1 - 4) * 4 - 4) % 5


def test_numeric_output_digits():
    code, rep = run_json(["quer", "--system", "qprod:hbar=0.5", "--element", "2"])
    assert code == 0
    assert len(repr(rep["results"][0]["value"]).replace(".", "").lstrip("0")) <= 13


def test_decompose():
    code, rep = run_json(["decompose", "--system", "derived:m=5,n=3,c=2", "--e", "0", "--q", "3"])
    assert code == 0
    res = rep["results"][0]
    assert res["b_q"] == 2 and res["a"] == 3 and res["phi"] == [3, 4, 0, 1, 2]


def test_reverse(tmp_path):
    code, rep = run_json(["reverse", "--binary", "cyclic:5", "--phi", "id", "--b", "2", "--n", "3"])
    assert code == 0 and rep["results"][0]["e^<1>"] == 2
    bad = tmp_path / "phi.json"
    bad.write_text("[1, 0, 2, 3, 4, 5]", encoding="utf-8")
    code, rep = run_json(["reverse", "--binary", "s3", "--phi", str(bad), "--b", "0", "--n", "3"])
    assert code == 1 and "HypothesisFailed" in rep["error"]


def test_hom_check(tmp_path):
    src = tmp_path / "z5.json"
    src.write_text(json.dumps({"kind": "derived_modular", "m": 5, "n": 3, "c": 0}),
                   encoding="utf-8")
    mp = tmp_path / "map.json"
    mp.write_text("[0, 2, 4, 1, 3]", encoding="utf-8")
    assert run(["hom-check", "--source", str(src), "--target", str(src), "--map", str(mp)])[0] == 0
    code, rep = run_json(["hom-check", "--source", "derived:m=5,n=3,c=1",
                          "--target", "derived:m=5,n=3,c=1", "--map", str(mp)])
    assert code == 1 and rep["witnesses"]
    code, rep = run_json(["hom-check", "--source", "derived:m=5,n=3,c=2",
                          "--target", "derived:m=5,n=3,c=2", "--map", "0,1,2,3,4",
                          "--q", "3", "--e", "0"])
    assert code == 0 and rep["results"][0]["nary_ok"]


def test_gallery_check():
    code, rep = run_json(["gallery-check", "--system", "gallery:copula"])
    assert code == 0 and {r["which"] for r in rep["results"]} == {"quer", "phi"}


def test_text_format():
    code, out = run(["enumerate-q", "--n", "3", "--qmax", "5", "--format", "text"])
    assert code == 0 and out.startswith("enumerate-q: PASS")


@pytest.mark.parametrize("argv", [
    ["classify", "--system", "derived:m=4,n=3,c=1"],
    ["verify-chain", "--system", "gallery:qprod,hbar=0.9", "--qmax", "3"],
    ["decompose", "--system", "binary_center:group=s3,c=0,n=3", "--e", "3", "--q", "3"],
])
def test_json_round_trip(argv):
    code, out = run(argv)
    rep = json.loads(out)
    assert json.loads(json.dumps(rep)) == rep
    assert (code == 0) == rep["pass"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "polyadic", "enumerate-q", "--n", "3",
                           "--qmax", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verb"] == "enumerate-q"
