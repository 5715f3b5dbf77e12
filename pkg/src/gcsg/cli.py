"""Command-line solver.

Exit codes: 0 success, 1 invalid input, 2 size guard tripped,
3 internal assertion failure.
"""

import argparse
import json
import sys

from .errors import GcsgError, InputError, InternalCheckError, TooLarge
from .fileio import parse_decomposition, parse_problem, serialize_result
from .solvers import solve
from .treedecomp import validate
from .valuation import bind_valuation, check_idm


def _build_parser():
    p = argparse.ArgumentParser(
        prog="gcsg",
        description="Exact coalition structure generation over graphs.")
    p.add_argument("--graph", required=True, metavar="PATH",
                   help="problem file (graph + valuation, JSON)")
    p.add_argument("--method", choices=("exhaustive", "treedp", "oracle"),
                   default="treedp")
    p.add_argument("--decomposition", default="minfill", metavar="PATH|minfill|separator",
                   help="decomposition file, or a construction strategy "
                        "(default: minfill); only used with --method treedp")
    p.add_argument("--separator", choices=("grid", "greedy"), default="greedy",
                   help="separator finder for --decomposition separator")
    p.add_argument("--split-connected", action="store_true",
                   help="split result blocks into connected components")
    p.add_argument("--check-idm", action="store_true",
                   help="run the disconnected-member independence check and exit")
    p.add_argument("--output", metavar="PATH", help="write the result document here "
                   "instead of standard output")
    p.add_argument("--stats", action="store_true",
                   help="include solver statistics in the result document")
    return p


def _emit(text, output):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run_cli(args):
    opts = _build_parser().parse_args(args)
    try:
        with open(opts.graph) as fh:
            problem = parse_problem(fh.read())
    except OSError as exc:
        print(f"error: cannot read {opts.graph}: {exc}", file=sys.stderr)
        return 1
    except GcsgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        if opts.check_idm:
            v = bind_valuation(problem.graph, problem.valuation)
            report = check_idm(problem.graph, v)
            doc = {
                "check": "idm",
                "valuation": problem.valuation.kind,
                "ok": report.ok,
                "report": report.describe(),
            }
            if not report.ok:
                doc["pair"] = list(report.pair)
                doc["context"] = sorted(report.context)
                doc["marginal_alone"] = report.lhs
                doc["marginal_with_other"] = report.rhs
            _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", opts.output)
            return 0

        td = None
        decomposition = opts.decomposition
        if opts.method == "treedp" and decomposition not in ("minfill", "separator"):
            with open(decomposition) as fh:
                td = parse_decomposition(fh.read())
            report = validate(td, problem.graph)
            if not report.ok:
                raise InputError(f"decomposition file invalid: {report.describe()}")
            decomposition = None

        result = solve(problem.graph, problem.valuation, method=opts.method,
                       td=td, decomposition=decomposition, separator=opts.separator,
                       grid=problem.grid, split=opts.split_connected)
        _emit(serialize_result(result, include_stats=opts.stats), opts.output)
        return 0
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalCheckError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except GcsgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # unexpected: report as an internal failure
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 3


def main(argv=None):
    return run_cli(argv if argv is not None else sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
