import json
import subprocess
import sys

import pytest

from basilica.cli import run
from basilica.plmap import loads


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval(capsys):
    assert call(capsys, "eval", "--word", "C C C", "--angle", "5/7") == (0, "5/7\n", "")
    code, out, _ = call(capsys, "eval", "--word", "iota", "--angle", "1/3")
    assert out.strip() == "2/3"


def test_compose_invert_round_trip(capsys, tmp_path):
    f = tmp_path / "a.plmap"
    assert call(capsys, "invert", "--word", "A iota", "--out", str(f))[0] == 0
    code, out, _ = call(capsys, "compose", "--word", "A iota", "--with", str(f))
    assert code == 0
    assert loads(out).is_identity


def test_out_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("BASILICA_OUT_DIR", str(tmp_path))
    assert call(capsys, "extend", "--word", "A", "--out", "ea.plmap")[0] == 0
    assert (tmp_path / "ea.plmap").read_text().startswith("plmap v1")


def test_decompose_and_check(capsys):
    code, out, _ = call(capsys, "decompose", "--word", "A iota B^-1")
    assert code == 0 and out.strip()
    code, out, _ = call(capsys, "check", "--map", "word:iota")
    report = json.loads(out)
    assert report["member"] and report["lamination_preserving"]
    assert report["class"] == "ThompsonLikeTα"


def test_check_rejects(capsys, tmp_path):
    f = tmp_path / "r.plmap"
    f.write_text("plmap v1\n0 -> 1/4\n")
    code, out, _ = call(capsys, "check", "--map", str(f))
    report = json.loads(out)
    assert code == 0
    assert report["class"] == "ThompsonT"
    assert not report["lamination_preserving"] and not report["member"]


def test_act_and_transit(capsys):
    assert call(capsys, "act", "--word", "iota", "--address", "()")[1].strip() == "(0)"
    code, out, _ = call(capsys, "transit", "--address", "(1/2,1/4)")
    report = json.loads(out)
    assert report["report"] == "report v1"
    code, out, _ = call(capsys, "act", "--word", report["word"], "--address", "(1/2,1/4)")
    assert out.strip() == "()"


def test_approximate_report(capsys, tmp_path):
    out, rep = tmp_path / "t.plmap", tmp_path / "r.json"
    code, _, _ = call(capsys, "approximate", "--target", "word:A iota", "--level", "3",
                      "--out", str(out), "--report", str(rep), "--samples", "200", "--seed", "5")
    assert code == 0
    report = json.loads(rep.read_text())
    assert report["seed"] == 5 and report["level"] == 3
    assert len(report["steps"]) == 16


def test_lamination_and_partition(capsys):
    code, out, _ = call(capsys, "lamination", "--depth", "3")
    levels = json.loads(out)["levels"]
    assert [len(l) for l in levels] == [1, 1, 2, 4]
    code, out, _ = call(capsys, "lamination", "--depth", "6", "--format", "svg")
    assert out.count('class="leaf"') == 64
    code, out, _ = call(capsys, "partition", "--level", "1")
    assert len(out.splitlines()) == 4


def test_ray(capsys):
    code, out, _ = call(capsys, "ray", "--angle", "1/3")
    re, im = json.loads(out)["landing"]
    assert abs(re - (1 - 5 ** 0.5) / 2) < 1e-6 and abs(im) < 1e-6


def test_render(capsys, tmp_path):
    f = tmp_path / "k.svg"
    code, _, _ = call(capsys, "render", "--px", "60x40", "--iters", "40",
                      "--layers", "filled,lamination:3", "--out", str(f))
    assert code == 0 and f.read_text().startswith("<svg")


def test_errors(capsys):
    code, _, err = call(capsys, "extend", "--map", "word:iota")
    assert code == 1 and "NotThompson" in err
    code, _, err = call(capsys, "eval", "--word", "sigma", "--angle", "0")
    assert code == 2
    with pytest.raises(SystemExit):
        run(["eval", "--angle", "0"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "basilica", "eval", "--word", "iota", "--angle", "1/3"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "2/3"
