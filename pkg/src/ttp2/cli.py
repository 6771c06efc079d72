"""Command-line entry point: ``ttp2 {solve,validate,bench,lowerbound,gen}``.

Exit codes: 0 success, 1 infeasible schedule or failed internal check,
2 input error (unreadable file, bad shape, unsupported size, bad usage).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .benchmarks import reference_for
from .cost import CostReport, independent_lower_bound, itinerary_cost
from .errors import ConsistencyError, TTPError
from .instance import gen_random_metric, gen_worst_case, read_instance, serialize_instance
from .model import encode_schedule, encode_structured, load_schedule, validate_schedule
from .solver import Solution, solve
from .superplan import describe_timetable

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _pct(x: Fraction) -> str:
    return f"{float(x * 100):.2f}"


def _num(x):
    return x if not isinstance(x, Fraction) else f"{x.numerator}/{x.denominator}"


def _report_fields(name: str, sol: Solution) -> dict:
    r: CostReport = sol.report
    bound = r.bound
    return {
        "instance": name,
        "n": r.n,
        "lb": r.lb,
        "before": sol.before,
        "total": r.total,
        "gap_pct": _pct(r.gap),
        "ratio": f"{float(r.ratio):.4f}",
        "bound": None if bound is None else f"{float(bound):.4f}",
        "within_bound": r.within_bound(),
    }


def format_report(name: str, sol: Solution, fmt: str) -> str:
    f = _report_fields(name, sol)
    r = sol.report
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(f), lineterminator="\n")
        w.writeheader()
        w.writerow({k: ("" if v is None else v) for k, v in f.items()})
        return buf.getvalue()
    if fmt == "structured":
        data = {k: (_num(v) if isinstance(v, Fraction) else v) for k, v in f.items()}
        data["per_team_lb"] = [_num(x) for x in r.per_team_lb]
        data["per_team_total"] = [_num(x) for x in r.per_team_total]
        if r.blocks:
            data["e1"], data["e2"] = _num(r.e1), _num(r.e2)
            data["blocks"] = [
                {"slot": b.slot, "kind": b.kind.value, "first": b.labels[0] + 1,
                 "second": b.labels[1] + 1, "extra": _num(b.extra), "bound": _num(b.bound)}
                for b in r.blocks
            ]
        return json.dumps(data, indent=1) + "\n"
    lines = [
        f"instance   {name}",
        f"teams      {r.n}",
        f"LB         {_num(r.lb)}",
        f"before     {_num(sol.before)}",
        f"total      {_num(r.total)}",
        f"gap        {f['gap_pct']}%",
    ]
    if f["bound"] is not None:
        verdict = "ok" if f["within_bound"] else "VIOLATED"
        lines.append(f"ratio      {f['ratio']} (bound {f['bound']}, {verdict})")
    else:
        lines.append(f"ratio      {f['ratio']}")
    if r.blocks:
        lines.append(f"E1 / E2    {_num(r.e1)} / {_num(r.e2)}")
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    path = Path(args.path)
    dm = read_instance(path)
    sol = solve(dm, local_search=not args.no_local_search)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = path.stem
    (out / f"{stem}.schedule.txt").write_text(encode_schedule(sol.schedule))
    (out / f"{stem}.schedule.json").write_text(encode_structured(sol.schedule))
    if args.plot:
        from .plotting import plot_block_extras, plot_pattern

        plot_pattern(sol.schedule, out / f"{stem}.pattern.png", sol.timetable)
        if sol.report.blocks:
            plot_block_extras(sol.report, out / f"{stem}.extras.png")
    if args.debug and sol.timetable is not None:
        sys.stdout.write(describe_timetable(sol.timetable))
        for k, pair in enumerate(sol.layout.teams):
            sys.stdout.write(f"u{k + 1} = (t{pair[0] + 1}, t{pair[1] + 1})\n")
    sys.stdout.write(format_report(stem, sol, args.format))
    return EXIT_OK


def cmd_validate(args) -> int:
    s = load_schedule(Path(args.path).read_text())
    problems = validate_schedule(s)
    for v in problems:
        print(v)
    if args.instance:
        dm = read_instance(args.instance)
        total, _ = itinerary_cost(s, dm)
        lb = independent_lower_bound(dm).lb
        print(f"total {_num(total)}  LB {_num(lb)}")
    if problems:
        print(f"{len(problems)} violation(s)", file=sys.stderr)
        return EXIT_FAIL
    print("feasible")
    return EXIT_OK


def cmd_lowerbound(args) -> int:
    dm = read_instance(args.path)
    lb = independent_lower_bound(dm)
    if args.format == "structured":
        print(json.dumps({
            "lb": _num(lb.lb), "d_g": _num(lb.d_g), "d_m": _num(lb.d_m),
            "matching": [[i + 1, j + 1] for i, j in lb.matching.pairs],
            "per_team_lb": [_num(x) for x in lb.per_team],
        }, indent=1))
    else:
        print(f"LB   {_num(lb.lb)}")
        print(f"D_G  {_num(lb.d_g)}")
        print(f"D_M  {_num(lb.d_m)}")
        print("M    " + " ".join(f"(t{i + 1},t{j + 1})" for i, j in lb.matching.pairs))
    if not dm.metric:
        print("warning: triangle inequality violated; ratio guarantee does not apply",
              file=sys.stderr)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "worstcase":
        dm = gen_worst_case(args.n)
    else:
        dm = gen_random_metric(args.n, args.seed)
    text = serialize_instance(dm)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


BENCH_COLUMNS = ["instance", "ILB", "before", "after", "gap_pct", "runtime_s"]


def bench_one(path: str, local_search: bool) -> dict:
    """Solve one file; never raises, errors come back in the row."""
    p = Path(path)
    try:
        dm = read_instance(p)
        t0 = time.perf_counter()
        sol = solve(dm, local_search=local_search)
        dt = time.perf_counter() - t0
    except TTPError as exc:
        return {"instance": p.stem, "error": f"{type(exc).__name__}: {exc}"}
    except OSError as exc:
        return {"instance": p.stem, "error": str(exc)}
    return {
        "instance": p.stem,
        "ILB": sol.report.lb,
        "before": sol.before,
        "after": sol.after,
        "gap_pct": _pct(sol.report.gap),
        "runtime_s": f"{dt:.3f}",
    }


def run_bench(directory: Path, local_search: bool = True, jobs: int = 1) -> list[dict]:
    files = sorted(
        str(p) for p in Path(directory).iterdir() if p.is_file() and not p.name.startswith(".")
    )
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(bench_one, files, [local_search] * len(files)))
    return [bench_one(f, local_search) for f in files]


def format_bench(rows: Sequence[dict], fmt: str) -> str:
    ok = [r for r in rows if "error" not in r]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in ok:
            w.writerow({k: _num(r[k]) if isinstance(r[k], Fraction) else r[k] for k in BENCH_COLUMNS})
        return buf.getvalue()
    table = [BENCH_COLUMNS] + [[str(_num(r[k])) for k in BENCH_COLUMNS] for r in ok]
    widths = [max(len(row[i]) for row in table) for i in range(len(BENCH_COLUMNS))]
    return "".join(
        "  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))) + "\n"
        for row in table
    )


def check_against_reference(rows: Sequence[dict]) -> list[str]:
    """Compare rows with published figures; returns one line per known instance."""
    lines = []
    for r in rows:
        ref = reference_for(r["instance"])
        if ref is None or "error" in r:
            continue
        ilb_ok = r["ILB"] == ref.ilb
        after_ok = r["after"] <= ref.previous and abs(r["after"] - ref.after) <= Fraction(ref.after, 100)
        before_ok = abs(r["before"] - ref.before) <= Fraction(ref.before, 100)
        lines.append(
            f"{r['instance']}: ILB {'ok' if ilb_ok else 'MISMATCH'} "
            f"(published {ref.ilb}); before {r['before']} vs {ref.before} "
            f"{'ok' if before_ok else 'OFF'}; after {r['after']} vs {ref.after} "
            f"(previous best {ref.previous}) {'ok' if after_ok else 'OFF'}"
        )
    return lines


def cmd_bench(args) -> int:
    rows = run_bench(Path(args.dir), local_search=not args.no_local_search, jobs=args.jobs)
    for r in rows:
        if "error" in r:
            print(f"error: {r['instance']}: {r['error']}", file=sys.stderr)
    sys.stdout.write(format_bench(rows, args.format))
    if args.check:
        for line in check_against_reference(rows):
            print(line, file=sys.stderr)
    if args.plot:
        from .plotting import plot_bench

        ok = [r for r in rows if "error" not in r]
        refs = [getattr(reference_for(r["instance"]), "gap_pct", None) for r in ok]
        plot_bench([r["instance"] for r in ok], [float(r["gap_pct"]) for r in ok], Path(args.plot), refs)
    return EXIT_INPUT if any("error" in r for r in rows) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ttp2", description="TTP-2 schedules for n divisible by 4")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="construct, improve and report a schedule")
    p.add_argument("path")
    p.add_argument("--no-local-search", action="store_true")
    p.add_argument("--out", default=".", help="directory for schedule files (default: .)")
    p.add_argument("--format", choices=["human", "csv", "structured"], default="human")
    p.add_argument("--plot", action="store_true", help="also write PNG figures to --out")
    p.add_argument("--debug", action="store_true", help="print the super-game timetable")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("validate", help="check a schedule file for feasibility")
    p.add_argument("path")
    p.add_argument("--instance", help="distance file; also print travel cost")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="solve every instance file in a directory")
    p.add_argument("dir")
    p.add_argument("--no-local-search", action="store_true")
    p.add_argument("--format", choices=["human", "csv"], default="human")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--check", action="store_true", help="compare with published figures (stderr)")
    p.add_argument("--plot", metavar="PNG", help="write a gap bar chart")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("lowerbound", help="independent lower bound of an instance")
    p.add_argument("path")
    p.add_argument("--format", choices=["human", "structured"], default="human")
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("kind", choices=["worstcase", "random"])
    p.add_argument("n", type=int)
    p.add_argument("seed", type=int, nargs="?", default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConsistencyError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except TTPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
