import json
import subprocess
import sys

import pytest

from ttp2.benchmarks import REFERENCE, find_instance, reference_for
from ttp2.cli import check_against_reference, format_bench, main, run_bench
from ttp2.instance import gen_random_metric, gen_worst_case, serialize_instance


@pytest.fixture
def w8(tmp_path):
    p = tmp_path / "w8.txt"
    p.write_text(serialize_instance(gen_worst_case(8)))
    return p


def test_solve_human(w8, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["solve", str(w8), "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "LB         48" in text
    assert "total      60" in text
    assert "gap        25.00%" in text
    assert "ratio      1.2500 (bound 1.2500, ok)" in text
    assert (out / "w8.schedule.txt").exists()
    assert json.loads((out / "w8.schedule.json").read_text())["n"] == 8


def test_solve_is_byte_identical(w8, tmp_path, capsys):
    main(["solve", str(w8), "--out", str(tmp_path / "a"), "--format", "structured"])
    first = capsys.readouterr().out
    main(["solve", str(w8), "--out", str(tmp_path / "b"), "--format", "structured"])
    assert capsys.readouterr().out == first
    assert (tmp_path / "a/w8.schedule.txt").read_bytes() == (tmp_path / "b/w8.schedule.txt").read_bytes()


def test_solve_formats(w8, tmp_path, capsys):
    main(["solve", str(w8), "--out", str(tmp_path), "--format", "csv"])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("instance,n,lb,before,total,gap_pct")
    assert lines[1].startswith("w8,8,48,60,60,25.00")
    main(["solve", str(w8), "--out", str(tmp_path), "--format", "structured"])
    data = json.loads(capsys.readouterr().out)
    assert data["total"] == 60 and data["e1"] == 4 and data["e2"] == 8
    assert len(data["blocks"]) == 6


def test_solve_debug_and_plot(w8, tmp_path, capsys):
    assert main(["solve", str(w8), "--out", str(tmp_path), "--debug", "--plot"]) == 0
    text = capsys.readouterr().out
    assert "Left" in text and "u1 = (t" in text
    assert (tmp_path / "w8.pattern.png").stat().st_size > 0
    assert (tmp_path / "w8.extras.png").stat().st_size > 0


def test_solve_rejects_n10(tmp_path, capsys):
    p = tmp_path / "r10.txt"
    p.write_text(serialize_instance(gen_random_metric(10, 0)))
    assert main(["solve", str(p), "--out", str(tmp_path)]) == 2
    assert "0 (mod 4)" in capsys.readouterr().err


def test_solve_bad_input(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("0 1 2")
    assert main(["solve", str(p)]) == 2
    assert main(["solve", str(tmp_path / "missing.txt")]) == 2


def test_validate(table1_text, tmp_path, w8, capsys):
    p = tmp_path / "t1.txt"
    p.write_text(table1_text)
    assert main(["validate", str(p), "--instance", str(w8)]) == 0
    assert "total 60  LB 48" in capsys.readouterr().out
    broken = table1_text.replace("-t5 -t6 +t5", "+t5 -t6 +t5", 1)
    broken = broken.replace("+t1 +t2 -t1 -t2 +t3", "-t1 +t2 -t1 -t2 +t3", 1)
    p.write_text(broken)
    assert main(["validate", str(p)]) == 1
    assert "StreakBound" in capsys.readouterr().out
    p.write_text("nonsense here")
    assert main(["validate", str(p)]) == 2


def test_lowerbound(w8, capsys):
    assert main(["lowerbound", str(w8)]) == 0
    assert "LB   48" in capsys.readouterr().out
    main(["lowerbound", str(w8), "--format", "structured"])
    data = json.loads(capsys.readouterr().out)
    assert data["matching"] == [[1, 2], [3, 4], [5, 6], [7, 8]]


def test_lowerbound_warns_on_non_metric(tmp_path, capsys):
    p = tmp_path / "x.txt"
    p.write_text("0 1 10 1\n1 0 1 1\n10 1 0 1\n1 1 1 0\n")
    assert main(["lowerbound", str(p)]) == 0
    assert "triangle" in capsys.readouterr().err


def test_gen(tmp_path, capsys):
    assert main(["gen", "worstcase", "8"]) == 0
    assert capsys.readouterr().out == serialize_instance(gen_worst_case(8))
    out = tmp_path / "r.txt"
    assert main(["gen", "random", "12", "5", "--out", str(out)]) == 0
    assert out.read_text() == serialize_instance(gen_random_metric(12, 5))
    assert main(["gen", "worstcase", "10"]) == 2


def test_bench(tmp_path, capsys):
    d = tmp_path / "bench"
    d.mkdir()
    for n in (8, 12):
        (d / f"r{n}.txt").write_text(serialize_instance(gen_random_metric(n, n)))
    (d / "bad.txt").write_text("1 2 3")
    png = tmp_path / "gaps.png"
    assert main(["bench", str(d), "--format", "csv", "--plot", str(png)]) == 2
    cap = capsys.readouterr()
    lines = cap.out.splitlines()
    assert lines[0] == "instance,ILB,before,after,gap_pct,runtime_s"
    assert [l.split(",")[0] for l in lines[1:]] == ["r12", "r8"]
    assert "bad" in cap.err
    assert png.stat().st_size > 0


def test_bench_parallel_matches_serial(tmp_path):
    d = tmp_path / "bench"
    d.mkdir()
    for n in (8, 12, 16):
        (d / f"r{n}.txt").write_text(serialize_instance(gen_random_metric(n, 1)))
    strip = lambda rows: [{k: v for k, v in r.items() if k != "runtime_s"} for r in rows]
    assert strip(run_bench(d, jobs=2)) == strip(run_bench(d, jobs=1))


def test_bench_empty_dir(tmp_path, capsys):
    assert main(["bench", str(tmp_path)]) == 0
    assert capsys.readouterr().out.startswith("instance")


def test_bench_human_table():
    rows = [{"instance": "a", "ILB": 10, "before": 12, "after": 11, "gap_pct": "10.00", "runtime_s": "0.001"}]
    lines = format_bench(rows, "human").splitlines()
    assert lines[0].split() == ["instance", "ILB", "before", "after", "gap_pct", "runtime_s"]
    assert lines[1].split() == ["a", "10", "12", "11", "10.00", "0.001"]


def test_reference_table():
    assert len(REFERENCE) == 17
    assert reference_for("galaxy12").ilb == 8374
    assert reference_for("nope") is None
    row = {"instance": "NL12", "ILB": 132720, "before": 140686, "after": 140686}
    (line,) = check_against_reference([row])
    assert "ILB ok" in line and "OFF" not in line


def test_find_instance(tmp_path):
    (tmp_path / "galaxy12.txt").write_text("x")
    assert find_instance(tmp_path, "Galaxy12").name == "galaxy12.txt"
    assert find_instance(tmp_path, "NL12") is None
    assert find_instance(tmp_path / "nope", "NL12") is None


def test_entry_point(w8, tmp_path):
    r = subprocess.run([sys.executable, "-m", "ttp2.cli", "lowerbound", str(w8)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "LB   48" in r.stdout
