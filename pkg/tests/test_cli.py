import json
import subprocess
import sys

import pytest

from gordian import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariant_torus(capsys):
    code, out, _ = run(capsys, "invariant", "torus:7", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert (d["span"], d["det"], d["flags"]) == (7, 7, [])


def test_invariant_kqr(capsys):
    code, out, _ = run(capsys, "invariant", "kqr:3,3", "--format", "json")
    assert code == 0 and json.loads(out)["span"] == 8


def test_invariant_fixture(capsys):
    code, out, _ = run(capsys, "invariant", "pd:fixtures/8_20.pd", "--format", "json")
    d = json.loads(out)
    assert code == 0 and (d["span"], d["det"]) == (6, 9)


def test_invariant_flag_exit_code(capsys):
    code, out, _ = run(capsys, "invariant", "kqr:1,3")
    assert code == 2
    assert "flag: span: engine 7 vs expected 6" in out


def test_invariant_csv(capsys):
    code, out, _ = run(capsys, "invariant", "twist:2,3", "--format", "csv")
    head, row = out.strip().splitlines()
    assert head == "family,jones_q,span,det,tri,beta,components,writhe,flags"
    assert row.startswith('"twist:2,3",') and ",5,7,3,1,1,5," in row


def test_invariant_errors(capsys):
    code, _, err = run(capsys, "invariant", "torus(3")
    assert code == 1 and "position 5" in err
    code, _, err = run(capsys, "invariant", "pd:fixtures/10_124.pd", "--oracle-bound", "5")
    assert code == 1 and "exceeds the state-sum bound" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "torus-jones", "--max-n", "15")
    assert code == 0
    assert out.strip().splitlines()[-1] == "torus-jones: 14/14 pass, 0 flag, 0 fail"


def test_verify_tq_progression(capsys):
    code, out, _ = run(capsys, "verify", "tq-bracket", "--q", "1,3,...,7", "--format", "json")
    d = json.loads(out)[0]
    assert code == 0
    assert [r["case"] for r in d["rows"]] == ["T_1", "T_3", "T_5", "T_7"]
    assert d["fail"] == 0 and d["flag"] == 4


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "kq-span", "--format", "csv", "--max-n", "3")
    want = ["suite,case,status,detail", "kq-span,K_1,pass,4", "kq-span,K_3,pass,6"]
    assert code == 0 and out.splitlines() == want


def test_graph_beta(capsys):
    code, out, _ = run(capsys, "graph", "--move", "crossing", "--invariant", "beta", "--max", "8",
                       "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert d["structure"]["is_path"] and d["diameter"] == 7


def test_graph_h2_links(capsys):
    code, out, _ = run(capsys, "graph", "--move", "h2-links", "--invariant", "span", "--max", "12",
                       "--format", "json", "--thin-triangle-bound", "13")
    d = json.loads(out)
    assert d["structure"]["is_complete"] and d["edges"] == 78
    assert d["flags"] == 4 and code == 2
    assert d["thin_triangle_delta"] == "0"


def test_graph_files(capsys, tmp_path):
    dot, js, csv_ = tmp_path / "w.dot", tmp_path / "w.json", tmp_path / "w.csv"
    code, out, _ = run(capsys, "graph", "--move", "h2", "--invariant", "det", "--max", "21",
                       "--dot", str(dot), "--json", str(js), "--csv", str(csv_))
    assert code == 2
    assert "tooltip=" in dot.read_text()
    assert len(json.loads(js.read_text())["certificates"]) == 26
    assert csv_.read_text().startswith("value,representative")
    assert "diameter: 2" in out


def test_graph_explicit_values(capsys):
    code, out, _ = run(capsys, "graph", "--move", "crossing", "--invariant", "det",
                       "--values", "1,3,9,27,81", "--format", "csv")
    assert code == 0 and len(out.strip().splitlines()) == 11


def test_graph_bad_window(capsys):
    code, _, err = run(capsys, "graph", "--move", "crossing", "--invariant", "det",
                       "--values", "2,4")
    assert code == 1 and "odd" in err


def test_pd_export(capsys, tmp_path):
    out_file = tmp_path / "k.pd"
    assert run(capsys, "pd", "kqr:3,3", "--out", str(out_file))[0] == 0
    code, out, _ = run(capsys, "invariant", f"pd:{out_file}", "--format", "json")
    assert json.loads(out)["span"] == 8


@pytest.mark.parametrize(
    "text, want",
    [("3,5,7", (3, 5, 7)), ("1,3,...,9", (1, 3, 5, 7, 9)), ("0,4,...,8", (0, 4, 8)),
     ("9,7,...,3", (9, 7, 5, 3))],
)
def test_parse_int_list(text, want):
    assert cli.parse_int_list(text) == want


@pytest.mark.parametrize("text", ["1,...,9", "1,1,...,9", "a,b", "1,3,...,0"])
def test_parse_int_list_errors(text):
    with pytest.raises(Exception):
        cli.parse_int_list(text)


def test_byte_identical_runs():
    argv = [sys.executable, "-m", "gordian", "graph", "--move", "h2", "--invariant", "span",
            "--max", "8", "--format", "json"]
    a = subprocess.run(argv, capture_output=True, check=False)
    b = subprocess.run(argv, capture_output=True, check=False)
    assert a.stdout == b.stdout and a.stdout


def test_orientation_override_flag(capsys, tmp_path):
    hopf = tmp_path / "hopf.pd"
    hopf.write_text("X 4 1 3 2\nX 2 3 1 4\n")
    _, out, _ = run(capsys, "invariant", f"pd:{hopf}", "--format", "json")
    base = json.loads(out)
    code, out, _ = run(capsys, "invariant", f"pd:{hopf}", "--orient", "2,1", "--format", "json")
    flipped = json.loads(out)
    assert code == 0
    assert flipped["writhe"] == -base["writhe"] and abs(base["writhe"]) == 2
    assert flipped["span"] == base["span"] == 2
    code, _, err = run(capsys, "invariant", "torus:3", "--orient", "1,2")
    assert code == 1 and "pd: specs only" in err
