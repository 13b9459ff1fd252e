import json
import subprocess
import sys


def run(*args, code=0, inp=None):
    p = subprocess.run(
        [sys.executable, "-m", "minorlab.cli", *args], capture_output=True, text=True, input=inp
    )
    assert p.returncode == code, (args, p.returncode, p.stderr)
    return p.stdout


def test_roots(tmp_path):
    out = json.loads(run("roots", "--type", "A2", "--format", "json"))
    assert out["positive_roots"] == [[1, 0], [0, 1], [1, 1]]
    text = run("roots", "--type", "G2")
    assert "6 positive roots" in text


def test_weyl():
    out = json.loads(run("weyl", "--type", "A2", "--format", "json"))
    assert out["length"] == 3
    out = json.loads(run("weyl", "--type", "A2", "--word", "1,2", "--format", "json"))
    assert out["word"] == [1, 2]


def test_seed_json_and_errors():
    out = json.loads(run("seed", "--type", "A2", "--word", "1,2,1,-1,-2,-1", "--format", "json"))
    assert len(out["variables"]) == 8
    run("seed", "--type", "A2", "--word", "1,1", code=2)
    run("seed", "--type", "XX", "--word", "1", code=2)


def test_seed_text_renders_minor_labels():
    text = run("seed", "--type", "A2", "--word", "1,2,1,-1,-2,-1")
    assert "Delta(" in text and "pi_1" in text


def test_mutate_flow(tmp_path):
    seed_file = tmp_path / "seed.json"
    seed_file.write_text(run("seed", "--type", "A2", "--word", "1,2,1,-1,-2,-1", "--format", "json"))
    out = json.loads(run("mutate", "--seed-file", str(seed_file), "--sequence", "1,1", "--format", "json"))
    assert all("minor" in v for v in out["variables"].values())
    out = json.loads(run("mutate", "--seed-file", str(seed_file), "--sequence", "1", "--format", "json"))
    assert out["variables"]["1"]["laurent"].count("+") == 1  # two monomials
    run("mutate", "--seed-file", str(seed_file), "--sequence", "-1", code=2)


def test_minor_and_realize():
    out = json.loads(run("minor", "--type", "A2", "-s", "1", "--left", "", "--right", "1,2", "--format", "json"))
    assert out["label"]["s"] == 1
    gw = json.dumps([{"kind": "x", "s": 1, "t": "2"}])
    out = json.loads(run("minor", "--type", "A2", "-s", "1", "--at", gw, "--format", "json"))
    assert out["value"] == "1"
    out = json.loads(
        run("realize-minor", "--type", "A2", "-s", "1", "--left", "1", "--right", "2,1", "--format", "json")
    )
    assert out["k"] == 2


def test_verify_g2_and_determinism(tmp_path):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    run("verify", "g2", "--rng-seed", "7", "--out", str(f1))
    run("verify", "g2", "--rng-seed", "7", "--out", str(f2))
    assert f1.read_text() == f2.read_text()
    cert = json.loads(f1.read_text())
    assert cert["passed"]


def test_verify_f4_expected_obstruction():
    run("verify", "f4")  # exit 0 on reproducing the obstruction


def test_usage_errors():
    p = subprocess.run([sys.executable, "-m", "minorlab.cli", "verify", "bogus"], capture_output=True)
    assert p.returncode == 2
