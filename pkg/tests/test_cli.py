import json

import pytest

from diffrep import config as config_mod
from diffrep.cli import main


@pytest.fixture(autouse=True)
def restore_config():
    cfg = config_mod.config
    saved = (cfg.order_cap, cfg.groebner_fallback, cfg.seed, cfg.emit)
    yield
    cfg.order_cap, cfg.groebner_fallback, cfg.seed, cfg.emit = saved


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_and_socle_round_trip(tmp_path, capsys):
    path = tmp_path / "w2.json"
    code, out, _ = run(capsys, "construct", "--kind", "Wd", "--d", "2", "-o", str(path))
    assert code == 0 and path.exists()
    code, out, _ = run(capsys, "--emit", "json", "socle", "--input", str(path))
    assert code == 0 and json.loads(out)["dim"] == 3


def test_iso_and_dual(tmp_path, capsys):
    u = tmp_path / "u.json"
    ud = tmp_path / "ud.json"
    assert run(capsys, "construct", "--kind", "Ud", "--d", "1", "-o", str(u))[0] == 0
    assert run(capsys, "dual", "--input", str(u), "-o", str(ud))[0] == 0
    code, out, _ = run(capsys, "iso", "--input", str(u), "--other", str(ud), "--emit", "json")
    assert code == 0 and json.loads(out)["isomorphic"] is True


def test_classify(tmp_path, capsys):
    p = tmp_path / "w3.json"
    run(capsys, "construct", "--kind", "Wd", "--d", "3", "-o", str(p))
    code, out, _ = run(capsys, "--emit", "json", "classify", "--input", str(p))
    assert code == 0 and json.loads(out)["tag"] == "Wd" and json.loads(out)["d"] == 3


def test_pullback_from_files(tmp_path, capsys):
    t = tmp_path / "t.json"
    run(capsys, "construct", "--kind", "Pdk", "--d", "0", "-o", str(t))
    maps = tmp_path / "maps.json"
    maps.write_text(json.dumps({"pi1": [["1"]], "pi2": [["1"]]}))
    out = tmp_path / "pb.json"
    code, _, _ = run(capsys, "construct", "--kind", "pullback", "--input", str(t), "--input", str(t),
                     "--maps", str(maps), "-o", str(out))
    assert code == 0 and len(json.loads(out.read_text())["coaction"]) == 1


def test_verify_pass_and_fail(capsys):
    assert run(capsys, "verify", "--suite", "groebner")[0] == 0
    code, out, _ = run(capsys, "--emit", "json", "verify", "--suite", "lemma-max", "--trials", "20")
    assert code == 1 and not json.loads(out)["ok"]


def test_groebner_command(capsys):
    code, out, _ = run(capsys, "groebner", "--q", "2", "--emit", "json")
    assert code == 0 and json.loads(out)["ok"]


def test_classify_gm(tmp_path, capsys):
    from diffrep.classify import GmRep
    from diffrep.diffpoly import DiffPoly, var
    x = var("x1")
    p = tmp_path / "gm.json"
    p.write_text(json.dumps(GmRep(1, [[x, x.derive()], [DiffPoly(), x]]).to_json()))
    code, out, _ = run(capsys, "--emit", "json", "classify-gm", "--input", str(p))
    assert code == 0 and json.loads(out)["components"][0]["d"] == [1]


@pytest.mark.parametrize("argv", [
    ["socle", "--input", "/nonexistent.json"],
    ["construct", "--kind", "Ud"],
    ["construct", "--kind", "Wd", "--d", "1"],
    ["groebner", "--q", "0"],
    ["--order-cap", "2", "groebner", "--q", "1"],
    ["verify", "--suite", "no-such-suite"],
    ["frobnicate"],
])
def test_input_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_malformed_json_is_an_input_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(capsys, "classify", "--input", str(p))[0] == 2
