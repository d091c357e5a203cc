import json
import os
import subprocess
import sys

import pytest

from cihom import cli
from cihom.errors import TheoremMismatch
from conftest import map_path, ring_path, write_map

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")

CLASSIFY_KEYS = {
    "kind", "h1", "h2", "dim_R", "dim_B", "depth_R", "depth_B", "grade", "d_f",
    "d_f_via_grade", "koszul_h1_free", "koszul_h1_rank", "is_ci", "is_qci", "is_mci",
    "is_fci", "is_rci", "source_ci", "target_ci", "transfer",
}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariants_json_keys(capsys):
    code, out, _ = run(capsys, "invariants", ring_path("dual"), "--json")
    assert code == 0
    data = json.loads(out)
    assert list(data) == list(cli.INVARIANT_KEYS)
    assert data["gorenstein"] is True and data["ci_defect"] == 0
    assert data["betti"] is None


def test_invariants_with_deviations(capsys):
    code, out, _ = run(capsys, "invariants", ring_path("square_zero"), "--deviations", "5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["betti"] == [1, 2, 4, 8, 16, 32]
    assert data["deviations"] == [2, 3, 2, 3]


def test_invariants_text_output(capsys):
    code, out, _ = run(capsys, "invariants", ring_path("plane"))
    assert code == 0
    assert "regular" in out and "yes" in out
    assert "only meaningful when Cohen-Macaulay" in out


def test_char_p_label_in_text_only(capsys):
    _, out, _ = run(capsys, "invariants", ring_path("f5_dual_pair"), "--deviations", "4")
    assert "char-p" in out
    _, out, _ = run(capsys, "invariants", ring_path("f5_dual_pair"), "--deviations", "4", "--json")
    assert "char-p" not in out


@pytest.mark.parametrize("name", ["dual_to_k", "square_zero_to_k", "node_mod_x"])
def test_classify_matches_golden_json(capsys, name):
    code, out, _ = run(capsys, "classify", map_path(name), "--json")
    assert code == 0
    with open(os.path.join(GOLDEN, name + ".json")) as fh:
        assert out == fh.read()
    assert set(json.loads(out)) == CLASSIFY_KEYS


def test_classify_explain(capsys):
    code, out, _ = run(capsys, "classify", map_path("plane_mod_x"), "--explain")
    assert code == 0
    assert "H_1 Koszul        0" in out
    code, out, _ = run(capsys, "classify", map_path("dual_to_k"), "--json", "--explain")
    data = json.loads(out)
    assert data["explain"]["koszul_mu"] == [1, 1]


def test_classify_text_mentions_verdicts(capsys):
    code, out, _ = run(capsys, "classify", map_path("exact_zd_mod_x"))
    assert code == 0
    assert "fci             unknown" in out


def test_malformed_ring_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.ring"
    p.write_text("field Q\nvars x\nideal x^2 +\n")
    code, _, err = run(capsys, "invariants", str(p))
    assert code == 2
    assert "line 3, column 12" in err


def test_ill_defined_map_exits_2(tmp_path, capsys):
    path = write_map(tmp_path, "field Q\nvars x\nideal x^2\n", "field Q\nvars t\n", "images x -> t")
    code, _, err = run(capsys, "classify", path)
    assert code == 2
    assert "does not map to zero" in err


def test_missing_file_exits_2(capsys):
    code, _, _ = run(capsys, "invariants", "/nonexistent/r.ring")
    assert code == 2


def test_bad_cutoff_exits(capsys):
    assert run(capsys, "invariants", ring_path("dual"), "--deviations", "3")[0] == 2
    assert run(capsys, "invariants", ring_path("dual"), "--deviations", "11")[0] == 3


def test_step_guard_exits_3(monkeypatch, capsys):
    monkeypatch.setenv("CI_CLASSIFY_MAX_STEPS", "3")
    code, _, err = run(capsys, "invariants", ring_path("twisted_cubic"))
    assert code == 3
    assert "resource limit" in err


def test_rank_guard_exits_3(monkeypatch, capsys):
    monkeypatch.setenv("CI_CLASSIFY_MAX_RANK", "2")
    code, _, _ = run(capsys, "invariants", ring_path("square_zero"), "--deviations", "6")
    assert code == 3


def test_theorem_mismatch_exits_4(monkeypatch, capsys):
    def boom(f):
        raise TheoremMismatch("forced", {"h1": 1})

    monkeypatch.setattr(cli, "classify", boom)
    code, _, err = run(capsys, "classify", map_path("dual_to_k"))
    assert code == 4
    assert "forced" in err and "h1 = 1" in err


def test_corpus_list_and_filter(capsys):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0
    ids = out.split()
    assert all("/" in i for i in ids)
    code, out, _ = run(capsys, "corpus", "run", "--filter", "two-of-three")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert lines and all("two-of-three/" in l for l in lines)


def test_corpus_empty_filter_fails(capsys):
    code, _, err = run(capsys, "corpus", "run", "--filter", "no-such-family")
    assert code == 1
    assert "no checks matched" in err
    assert run(capsys, "corpus", "list", "--filter", "no-such-family")[0] == 1


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cihom.cli", "classify", map_path("dual_to_k"), "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["is_mci"] is True
