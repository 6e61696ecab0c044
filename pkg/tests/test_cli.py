import json
import subprocess
import sys

import pytest

from locount.cli import RunReport, case_specs, main

K24 = "a x\na y\na z\na w\nb x\nb y\nb z\nb w\n"
K23 = "S: s1 s2\nT: t1 t2 t3\n" + "".join(f"{s} {t}\n" for s in ("s1", "s2") for t in ("t1", "t2", "t3"))


@pytest.fixture
def files(tmp_path):
    (tmp_path / "host.txt").write_text(K24)
    (tmp_path / "pat.txt").write_text(K23)
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_weak_report(files, capsys):
    code, out, _ = run(capsys, "count", "--graph", str(files / "host.txt"),
                       "--pattern", str(files / "pat.txt"), "--mode", "weak")
    assert code == 0
    rep = json.loads(out)
    assert rep["copies"] == "4" and rep["embeddings"] == "48" and rep["aut"] == "12"
    assert rep["locatability"]["c"] == 1 and rep["d"] == 2
    assert set(rep["elapsed_ms"]) == {"ordering", "reps", "R", "locate_count"}


def test_count_modes_agree_on_bipartite_host(files, capsys):
    counts = {}
    for mode in ("strong", "weak", "biclique"):
        code, out, _ = run(capsys, "count", "--graph", str(files / "host.txt"),
                           "--pattern", str(files / "pat.txt"), "--mode", mode)
        assert code == 0
        counts[mode] = json.loads(out)["copies"]
    assert counts == {"strong": "4", "weak": "4", "biclique": "4"}


def test_count_table_and_threads(files, capsys):
    code, out, _ = run(capsys, "count", "--graph", str(files / "host.txt"), "--pattern",
                       str(files / "pat.txt"), "--table", "--threads", "2", "--dedup", "canonical")
    assert code == 0 and "copies" in out and "4" in out


def test_paper_literal_flag(files, capsys):
    code, out, _ = run(capsys, "count", "--graph", str(files / "host.txt"),
                       "--pattern", str(files / "pat.txt"), "--paper-literal-weak")
    assert code == 0 and json.loads(out)["embeddings"] == "288"


@pytest.mark.parametrize("pattern,code", [
    ("S: s1 s2\nT: t1 t2 t3\ns1 t1\ns1 t2\n", 5),
    ("S: s1\nT: t1 t2\ns1 s1\n", 4),
    ("s1 t1\n", 4),
])
def test_count_error_codes(files, capsys, pattern, code):
    (files / "bad.txt").write_text(pattern)
    got, out, err = run(capsys, "count", "--graph", str(files / "host.txt"),
                        "--pattern", str(files / "bad.txt"))
    assert got == code and out == "" and "error" in err


def test_missing_file(files, capsys):
    code, out, _ = run(capsys, "count", "--graph", str(files / "nope.txt"),
                       "--pattern", str(files / "pat.txt"))
    assert code == 3 and out == ""


def test_d_override_below_degeneracy(files, capsys):
    code, out, _ = run(capsys, "count", "--graph", str(files / "host.txt"),
                       "--pattern", str(files / "pat.txt"), "--d", "1")
    assert code == 2 and out == ""


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["count"])
    assert info.value.code == 2


def test_classify(files, capsys):
    code, out, _ = run(capsys, "classify", "--pattern", str(files / "pat.txt"), "--d", "2")
    rep = json.loads(out)
    assert code == 0 and rep["c"] == 1 and rep["structure_1d"] is True
    assert len(rep["witness_order"]) == 5
    code, out, _ = run(capsys, "classify", "--pattern", str(files / "pat.txt"), "--d", "1")
    assert json.loads(out)["status"] == "NotDDegenerate"


def test_classify_k26(tmp_path, capsys):
    text = "S: a b\nT: " + " ".join(f"t{i}" for i in range(6)) + "\n"
    text += "".join(f"{s} t{i}\n" for s in "ab" for i in range(6))
    (tmp_path / "k26.txt").write_text(text)
    code, out, _ = run(capsys, "classify", "--pattern", str(tmp_path / "k26.txt"), "--d", "5")
    rep = json.loads(out)
    assert rep["c"] == 1 and rep["structure_1d"] is True


def test_verify_fixture(capsys):
    code, out, _ = run(capsys, "verify", "--fixture", "k23-k24")
    assert code == 0 and "fast 48 vs oracle 48" in out
    code, out, _ = run(capsys, "verify", "--fixture", "k23-k24", "--paper-literal-weak")
    assert code == 1 and "fast 288 vs oracle 48" in out


def test_verify_small_run_and_rerun(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "5", "--cases", "12")
    assert code == 0 and "12 cases, 0 mismatches" in out
    code, out, _ = run(capsys, "verify", "--seed", "5", "--cases", "12", "--only", "7")
    assert code == 0 and "1 cases, 0 mismatches" in out


def test_case_specs_are_deterministic():
    assert case_specs(3, 20) == case_specs(3, 20)
    for spec in case_specs(3, 50):
        assert spec.host.n <= 14 and spec.s + spec.t <= 7 and spec.s < spec.t


def test_gen_and_oracle(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "host", "--n", "8", "--d", "2", "--seed", "4")
    assert code == 0 and out.strip()
    (tmp_path / "tri.txt").write_text("1 2\n2 3\n1 3\n3 4\n")
    code, _, _ = run(capsys, "gen", "reduction", "--graph", str(tmp_path / "tri.txt"),
                     "--out-host", str(tmp_path / "h.txt"), "--out-pattern", str(tmp_path / "p.txt"))
    assert code == 0
    code, out, _ = run(capsys, "count", "--graph", str(tmp_path / "h.txt"),
                       "--pattern", str(tmp_path / "p.txt"))
    assert json.loads(out)["copies"] == "1" and json.loads(out)["aut"] == "4320"
    code, out, _ = run(capsys, "oracle", "--graph", str(tmp_path / "tri.txt"), "--cliques", "3")
    assert json.loads(out)["cliques"] == "1"
    code, out, _ = run(capsys, "gen", "pattern", "--s", "2", "--t", "3", "--seed", "1",
                       "--out", str(tmp_path / "gp.txt"))
    code, out, _ = run(capsys, "oracle", "--graph", str(tmp_path / "tri.txt"),
                       "--pattern", str(tmp_path / "gp.txt"))
    assert code == 0 and "embeddings" in json.loads(out)


def test_oracle_budget_exit(tmp_path, capsys):
    (tmp_path / "k.txt").write_text("".join(f"{i} {j}\n" for i in range(6) for j in range(i + 1, 6)))
    code, out, _ = run(capsys, "oracle", "--graph", str(tmp_path / "k.txt"), "--cliques", "3",
                       "--node-limit", "2")
    assert code == 6 and out == ""


def test_bench_biclique_crosscheck(files, capsys):
    code, out, _ = run(capsys, "bench", "--pattern", str(files / "pat.txt"), "--sizes", "200,400",
                       "--d", "3", "--json")
    rows = json.loads(out)
    assert code == 0 and [r["n"] for r in rows] == [200, 400]
    assert all(r["biclique_match"] for r in rows) and rows[1]["ratio"] is not None


def test_report_revalidates():
    good = RunReport("weak", "48", "4", "12", 2)
    assert json.loads(good.to_json())["copies"] == "4"
    with pytest.raises(AssertionError):
        RunReport("weak", "47", "4", "12", 2).to_json()


def test_console_script_runs(files):
    proc = subprocess.run([sys.executable, "-m", "locount.cli", "count", "--graph",
                           str(files / "host.txt"), "--pattern", str(files / "pat.txt")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["copies"] == "4"
