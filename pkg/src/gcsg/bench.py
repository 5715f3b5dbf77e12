"""Benchmark harness: timed solver runs over graph families.

Produces one CSV row per (family, n, method, repetition) and, alongside
the CSV, a timing figure per family (elapsed milliseconds against n, one
series per method). Instances are generated deterministically from the
seed, so reruns with the same config give identical value columns.
"""

import argparse
import csv
import io
import os
import random
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .errors import GcsgError, InputError
from .families import FAMILY_NAMES, family_graph, with_random_labels, with_random_weights
from .solvers import solve, solve_treedp
from .treedecomp import min_fill_decompose, width
from .valuation import IDM_KINDS, bind_valuation

CSV_HEADER = ("family", "n", "e", "width", "method", "value", "elapsed_ms", "candidates")


@dataclass
class BenchConfig:
    families: list
    sizes: list
    valuation: str = "edge_sum"
    methods: list = field(default_factory=lambda: ["treedp"])
    repetitions: int = 1
    seed: int = 0


def _instance(family, n, kind, seed, rep):
    rng = random.Random(f"{seed}:{family}:{n}:{rep}")
    g = family_graph(family, n, rng)
    if kind == "edge_sum":
        g = with_random_weights(g, rng)
    elif kind == "correlation":
        g = with_random_labels(g, rng)
    return g


def run_bench(config):
    """Run the configured matrix and return the rows as dicts."""
    if config.valuation not in IDM_KINDS + ("modularity",):
        raise InputError(f"benchmarks support built-in valuations, not {config.valuation!r}")
    rows = []
    for family in config.families:
        if family not in FAMILY_NAMES:
            raise InputError(f"unknown graph family {family!r}")
        for n in config.sizes:
            for rep in range(config.repetitions):
                g = _instance(family, n, config.valuation, config.seed, rep)
                v = bind_valuation(g, config.valuation)
                td = min_fill_decompose(g)
                w = width(td)
                for method in config.methods:
                    if method == "treedp":
                        res = solve_treedp(g, v, td)
                    else:
                        res = solve(g, v, method=method)
                    value = res.value
                    rows.append({
                        "family": family,
                        "n": n,
                        "e": len(g.edges),
                        "width": w,
                        "method": method,
                        "value": int(value) if float(value).is_integer() else value,
                        "elapsed_ms": round(res.stats["elapsed_ms"], 3),
                        "candidates": res.stats["candidates"],
                    })
    return rows


def write_csv(rows, target):
    """Write rows in the canonical column order; target is a path or stream."""
    own = isinstance(target, (str, os.PathLike))
    fh = open(target, "w", newline="") if own else target
    try:
        writer = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if own:
            fh.close()


def rows_to_csv(rows):
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def render_figures(rows, outdir):
    """One timing figure per family next to the CSV; returns written paths."""
    os.makedirs(outdir, exist_ok=True)
    paths = []
    families = sorted({r["family"] for r in rows})
    for family in families:
        fam_rows = [r for r in rows if r["family"] == family]
        methods = sorted({r["method"] for r in fam_rows})
        fig, ax = plt.subplots(figsize=(6, 4))
        for method in methods:
            pts = {}
            for r in fam_rows:
                if r["method"] == method:
                    pts.setdefault(r["n"], []).append(r["elapsed_ms"])
            ns = sorted(pts)
            means = [sum(pts[n]) / len(pts[n]) for n in ns]
            ax.plot(ns, means, marker="o", label=method)
        ax.set_xlabel("nodes")
        ax.set_ylabel("elapsed (ms)")
        ax.set_title(f"solve time, {family} family")
        if len({r["n"] for r in fam_rows}) > 1:
            ax.set_xscale("log")
            ax.set_yscale("log")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend()
        fig.tight_layout()
        path = os.path.join(outdir, f"bench_time_{family}.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)
    return paths


def _parse_list(text):
    return [part.strip() for part in text.split(",") if part.strip()]


def main(argv=None):
    p = argparse.ArgumentParser(
        prog="gcsg-bench",
        description="Benchmark the solvers over graph families; writes CSV and figures.")
    p.add_argument("--families", default="path",
                   help=f"comma-separated from: {', '.join(FAMILY_NAMES)}")
    p.add_argument("--sizes", default="8,16,32", help="comma-separated node counts")
    p.add_argument("--valuation", default="edge_sum",
                   choices=("edge_sum", "correlation", "coordination", "modularity"))
    p.add_argument("--methods", default="treedp",
                   help="comma-separated from: exhaustive, treedp, oracle")
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="bench_out", metavar="DIR",
                   help="output directory for bench.csv and figures")
    p.add_argument("--no-figures", action="store_true")
    opts = p.parse_args(argv)

    config = BenchConfig(
        families=_parse_list(opts.families),
        sizes=[int(s) for s in _parse_list(opts.sizes)],
        valuation=opts.valuation,
        methods=_parse_list(opts.methods),
        repetitions=opts.repetitions,
        seed=opts.seed,
    )
    try:
        rows = run_bench(config)
    except GcsgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    os.makedirs(opts.out, exist_ok=True)
    csv_path = os.path.join(opts.out, "bench.csv")
    write_csv(rows, csv_path)
    written = [csv_path]
    if not opts.no_figures and rows:
        written.extend(render_figures(rows, opts.out))
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
