import subprocess
import sys

import pytest

from conftest import two_state_doubler
from wahull.cli import main
from wahull.document import parse_cra, parse_report, parse_wa, parse_zset, print_cra, print_wa
from wahull.wa import equivalent_wa


@pytest.fixture
def files(tmp_path, alt, sp2):
    paths = {}
    for name, obj in {"alt": alt, "sp2": sp2}.items():
        p = tmp_path / f"{name}.json"
        p.write_text(print_wa(obj))
        paths[name] = str(p)
    p = tmp_path / "cra.json"
    p.write_text(print_cra(two_state_doubler()))
    paths["cra"] = str(p)
    p = tmp_path / "bad.json"
    p.write_text('{"kind": "wa"')
    paths["bad"] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval(capsys, files):
    assert run(capsys, "eval", files["alt"], "aa") == (0, "4\n", "")
    assert run(capsys, "eval", files["alt"], "a")[1] == "0\n"
    assert run(capsys, "eval", files["cra"], "aaaa")[1] == "16\n"
    assert run(capsys, "eval", files["alt"], "b")[0] == 3


def test_minimize_wa(capsys, files, alt):
    code, out, _ = run(capsys, "minimize-wa", files["alt"])
    assert code == 0 and equivalent_wa(parse_wa(out), alt)


def test_hull(capsys, files):
    code, out, _ = run(capsys, "hull", files["alt"], "--length-bound", "4")
    z = parse_zset(out)
    assert code == 0 and (z.length, z.dim) == (2, 1)
    code, out, _ = run(capsys, "hull", files["sp2"], "--mode", "affine", "--report")
    rep = parse_report(out)
    assert code == 0 and rep["dim"] == 1 and rep["density_check_passed"]


def test_hull_budget(capsys, files, monkeypatch):
    monkeypatch.setenv("WAHULL_STEP_CAP", "1")
    assert run(capsys, "hull", files["alt"])[0] == 2


def test_reg_min(capsys, files):
    code, out, _ = run(capsys, "reg-min", files["alt"])
    cra = parse_cra(out)
    assert code == 0 and (cra.states, cra.registers) == (2, 1)


def test_reg_min_from_cra(capsys, files):
    code, out, _ = run(capsys, "reg-min", files["cra"])
    assert code == 0 and parse_cra(out).registers == 1


def test_state_reg_min(capsys, files):
    code, out, _ = run(capsys, "state-reg-min", files["alt"], "2", "1")
    assert code == 0 and parse_cra(out).states <= 2
    assert run(capsys, "state-reg-min", files["alt"], "1", "1")[0] == 1
    assert run(capsys, "state-reg-min", files["alt"], "2", "1", "--budget", "0")[0] == 2
    assert run(capsys, "state-reg-min", files["alt"], "2", "1", "--seed", "7")[0] == 0


def test_frontier(capsys, files):
    assert run(capsys, "frontier", files["alt"]) == (0, "states,registers\n1,2\n2,1\n", "")
    assert run(capsys, "frontier", files["alt"], "--budget", "0")[0] == 2


def test_seq_check(capsys, files):
    assert run(capsys, "seq-check", files["alt"])[:2] == (0, "true\n")
    assert run(capsys, "seq-check", files["sp2"])[:2] == (1, "false\n")


def test_equiv(capsys, files):
    assert run(capsys, "equiv", files["alt"], files["alt"])[0] == 0
    assert run(capsys, "equiv", files["alt"], files["cra"])[0] == 0
    assert run(capsys, "equiv", files["alt"], files["sp2"])[0] == 1


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "lower-bound", "3")
    assert code == 0 and parse_wa(out).dim == 5
    assert run(capsys, "generate", "merge", "1")[0] == 3


def test_input_errors(capsys, files, tmp_path):
    code, _, err = run(capsys, "hull", files["bad"])
    assert code == 3 and "error" in err
    assert run(capsys, "hull", str(tmp_path / "missing.json"))[0] == 3
    assert run(capsys, "hull", files["alt"], "--mode", "weird")[0] == 3
    assert run(capsys, "nope")[0] == 3
    assert run(capsys, "state-reg-min", files["alt"])[0] == 3


def test_wrong_document_kind(capsys, files, tmp_path):
    code, out, _ = run(capsys, "hull", files["alt"])
    zpath = tmp_path / "z.json"
    zpath.write_text(out)
    assert run(capsys, "minimize-wa", str(zpath))[0] == 3


def test_help(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "frontier" in out


def test_module_entry_point_and_stdin(alt):
    proc = subprocess.run([sys.executable, "-m", "wahull", "eval", "-", "aaa"], input=print_wa(alt),
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "0\n"
