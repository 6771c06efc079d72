from ttp2.instance import gen_random_metric
from ttp2.plotting import plot_bench, plot_block_extras, plot_pattern
from ttp2.solver import solve

PNG = b"\x89PNG"


def test_figures(tmp_path):
    sol = solve(gen_random_metric(12, 2))
    a = plot_pattern(sol.schedule, tmp_path / "p.png", sol.timetable)
    b = plot_block_extras(sol.report, tmp_path / "e.png")
    c = plot_bench(["x", "y"], [1.5, 2.0], tmp_path / "b.png", [1.0, None])
    for p in (a, b, c):
        assert p.read_bytes()[:4] == PNG


def test_pattern_without_timetable(tmp_path):
    sol = solve(gen_random_metric(4, 0))
    assert plot_pattern(sol.schedule, tmp_path / "p.png").exists()
