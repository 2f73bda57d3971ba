"""Command-line entry point: ``seg-eval <qrel> <ranking>``."""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .ingest import NoEvaluableQueries, ParseError, align, read_qrel, read_run
from .mapping import BIN_EXTENTS, BinConfig, ToleranceConfig
from .metrics import DEFAULT_JUDGED_CUTOFFS, DEFAULT_PRECISION_CUTOFFS, Settings, evaluate
from .report import build_rows, render

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_NO_QUERIES = 4

log = logging.getLogger("segeval")

EPILOG = """\
file formats (whitespace separated, '#' comments and blank lines ignored):
  qrel:     <query> Q0 <video> <start> <end> <relevance>
  ranking:  <query> Q0 <video> <start> <end> <rank> <score> <run_tag>
  Times are decimal seconds. Relevance > 0 counts as relevant. Results are
  ordered by descending score (ties keep file order); the rank column is
  not used for ordering.

exit codes: 0 ok, 2 usage error, 3 parse error, 4 no evaluable queries
"""


class _UsageError(Exception):
    pass


def _cutoffs(text: str) -> tuple[int, ...]:
    try:
        cuts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated integer list: {text!r}") from None
    if any(c < 1 for c in cuts) or any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise argparse.ArgumentTypeError(f"cutoffs must be positive and strictly increasing: {text!r}")
    return cuts


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0 or v == float("inf"):
        raise argparse.ArgumentTypeError(f"must be a positive number: {text!r}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="seg-eval",
        description="Evaluate a segment ranking against segment relevance judgments "
        "under overlap, binned and tolerance-to-irrelevance relevance.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("qrel", help="relevance judgments file")
    p.add_argument("ranking", help="system ranking (run) file")
    p.add_argument("--bin-size", type=_positive, default=60.0, metavar="SECONDS",
                   help="bin width for the _bin measures (default: 60)")
    p.add_argument("--bin-extent", choices=BIN_EXTENTS, default="start",
                   help="which bins a judged segment marks: the bin holding its start, "
                   "or every bin it overlaps (default: start)")
    p.add_argument("--tolerance", type=_positive, default=10.0, metavar="SECONDS",
                   help="watched window from each result start for the _tol measures (default: 10)")
    p.add_argument("--precision-cutoffs", type=_cutoffs, default=DEFAULT_PRECISION_CUTOFFS,
                   metavar="N,N,...", help="cutoffs for P_n (default: 5,10,20)")
    p.add_argument("--judged-cutoffs", type=_cutoffs, default=DEFAULT_JUDGED_CUTOFFS,
                   metavar="N,N,...", help="cutoffs for Judged_n (default: 10,20,30)")
    p.add_argument("-q", "--per-query", action="store_true",
                   help="also print one block of rows per query before the 'all' rows")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv",
                   help="output format (default: tsv)")
    p.add_argument("--strict", action="store_true",
                   help="treat warnings (dropped queries) as fatal")
    p.add_argument("-j", "--workers", type=int, default=1, metavar="N",
                   help="worker processes for per-query scoring; 0 = one per CPU (default: 1)")
    return p


def _num(x: float) -> str:
    return f"{x:g}"


def run_evaluation(args: argparse.Namespace, out=None) -> int:
    out = out or sys.stdout
    for path in (args.qrel, args.ranking):
        if not os.path.isfile(path):
            raise _UsageError(f"cannot read file: {path}")
    pool = read_qrel(args.qrel)
    runs = read_run(args.ranking)
    es = align(pool, runs)
    if args.strict and es.warnings:
        raise NoEvaluableQueries(f"strict mode: {es.warnings[0]}")

    settings = Settings(
        BinConfig(args.bin_size, args.bin_extent),
        ToleranceConfig(args.tolerance),
        args.precision_cutoffs,
        args.judged_cutoffs,
    )
    evaluation = evaluate(es, settings, workers=args.workers)
    header = {
        "bin_size": _num(args.bin_size),
        "bin_extent": args.bin_extent,
        "tolerance": _num(args.tolerance),
    }
    out.write(render(build_rows(evaluation, args.per_query), args.format, header))
    return EXIT_OK


def main(argv=None, out=None) -> int:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("seg-eval: warning: %(message)s"))
    log.addHandler(handler)
    try:
        args = build_parser().parse_args(argv)
        if args.workers < 0:
            raise _UsageError("--workers must be >= 0")
        return run_evaluation(args, out)
    except _UsageError as exc:
        print(f"seg-eval: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"seg-eval: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NoEvaluableQueries as exc:
        print(f"seg-eval: {exc}", file=sys.stderr)
        return EXIT_NO_QUERIES
    finally:
        log.removeHandler(handler)


if __name__ == "__main__":
    sys.exit(main())
