"""Command-line driver wiring ingest -> extract -> query/top/catalog/trends.

Each stage reads and writes plain files so intermediate artifacts
(corpus.csv, records.csv) stay inspectable. Diagnostics go to standard
error; data goes to standard output or the `-o` target. Exit status is
0 on success, 1 on a usage error, 2 on a data error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import TrendgramError
from .frequency import (build_table, evaluate, parse_query, write_series_csv,
                        write_series_json)
from .ingest import (DEFAULT_YEAR_RANGE, CSV_FIELDS, merge_dedup, parse_bibtex,
                     parse_csv, parse_endnote, read_corpus, write_corpus)
from .ngrams import (NGRAM_MAX, Stoplist, count_ngrams, read_records, top_ngrams,
                     write_records)
from .plotting import render_plot
from .textprep import entry_sentences
from .trends import (DEFAULT_CATALOG_LIMIT, DEFAULT_MIN_SUPPORT, DEFAULT_MIN_YEARS,
                     CatalogSpec, build_catalog, rank_trends)

STOPLIST_ENV = "TRENDGRAM_STOPLIST"

# The five demonstration queries plotted by `trendgram demo`.
DEMO_QUERIES = (
    "case study, experiment, review+survey",
    "static analysis, dynamic analysis",
    "feature location, visualization",
    "program slicing, clone detection",
    "legacy, open source",
)


@dataclass
class Config:
    """Validated knobs shared by the pipeline stages."""

    year_min: int = DEFAULT_YEAR_RANGE[0]
    year_max: int = DEFAULT_YEAR_RANGE[1]
    nmax: int = NGRAM_MAX
    stoplist_path: str | None = None
    min_support: int = DEFAULT_MIN_SUPPORT
    catalog_limit: int = DEFAULT_CATALOG_LIMIT

    def validate(self):
        if self.year_min > self.year_max:
            raise UsageError("", f"year-min {self.year_min} is greater than year-max {self.year_max}")
        if not 1 <= self.nmax <= NGRAM_MAX:
            raise UsageError("", f"nmax must be in 1..{NGRAM_MAX}, got {self.nmax}")


class UsageError(Exception):
    """Bad command line; maps to exit status 1."""

    def __init__(self, usage, message):
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(self.format_usage(), f"{self.prog}: {message}")


def build_parser():
    parser = _Parser(prog="trendgram",
                     description="N-gram trend analysis over bibliographic metadata exports.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("ingest", help="parse exports into the canonical corpus CSV")
    p.add_argument("--bibtex", action="append", default=[], metavar="FILE")
    p.add_argument("--csv", action="append", default=[], metavar="FILE")
    p.add_argument("--csv-map", action="append", default=[], metavar="FIELD=COLUMN",
                   help="column mapping for --csv files; replaces the IEEE default")
    p.add_argument("--endnote", action="append", default=[], metavar="FILE")
    p.add_argument("--year-min", type=int, default=DEFAULT_YEAR_RANGE[0])
    p.add_argument("--year-max", type=int, default=DEFAULT_YEAR_RANGE[1])
    p.add_argument("-o", "--output", required=True, metavar="FILE",
                   help="corpus CSV destination ('-' for stdout)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("extract", help="turn a corpus into n-gram records")
    p.add_argument("-i", "--input", required=True, metavar="CORPUS")
    p.add_argument("-o", "--output", required=True, metavar="RECORDS",
                   help="records CSV destination ('-' for stdout)")
    p.add_argument("--stoplist", metavar="FILE",
                   help=f"stopword list (default: ${STOPLIST_ENV} or the bundled list)")
    p.add_argument("--nmax", type=int, default=NGRAM_MAX)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("query", help="evaluate a trend query over records")
    p.add_argument("-i", "--input", required=True, metavar="RECORDS")
    p.add_argument("query", metavar="QUERY")
    p.add_argument("--from", dest="year_from", type=int, metavar="YEAR")
    p.add_argument("--to", dest="year_to", type=int, metavar="YEAR")
    p.add_argument("-o", "--output", metavar="FILE",
                   help="series file (.json for JSON, otherwise CSV; default: CSV on stdout)")
    p.add_argument("--svg", metavar="FILE", help="also render the series as an SVG plot")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("top", help="most frequent n-grams of one length")
    p.add_argument("-i", "--input", required=True, metavar="RECORDS")
    p.add_argument("-n", type=int, default=2)
    p.add_argument("-k", type=int, default=15)
    p.set_defaults(func=cmd_top)

    p = sub.add_parser("catalog", help="plot the most frequent n-grams into a directory")
    p.add_argument("-i", "--input", required=True, metavar="RECORDS")
    p.add_argument("-o", "--output", required=True, metavar="DIR")
    p.add_argument("--limit", type=int, default=DEFAULT_CATALOG_LIMIT)
    p.add_argument("--from", dest="year_from", type=int, metavar="YEAR")
    p.add_argument("--to", dest="year_to", type=int, metavar="YEAR")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("trends", help="rank rising or falling n-grams by fitted slope")
    p.add_argument("-i", "--input", required=True, metavar="RECORDS")
    p.add_argument("-n", type=int, default=2)
    p.add_argument("--direction", choices=("rising", "falling"), default="rising")
    p.add_argument("-k", type=int, default=10)
    p.add_argument("--min-support", type=int, default=DEFAULT_MIN_SUPPORT)
    p.add_argument("--min-years", type=int, default=DEFAULT_MIN_YEARS)
    p.set_defaults(func=cmd_trends)

    p = sub.add_parser("demo", help="render the five demonstration queries as SVGs")
    p.add_argument("-i", "--input", required=True, metavar="RECORDS")
    p.add_argument("-o", "--output", default=".", metavar="DIR")
    p.add_argument("--from", dest="year_from", type=int, metavar="YEAR")
    p.add_argument("--to", dest="year_to", type=int, metavar="YEAR")
    p.set_defaults(func=cmd_demo)

    return parser


def run(argv=None):
    """Parse arguments and dispatch; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # argparse -h/--help
        return int(exc.code or 0)
    except UsageError as exc:
        if exc.usage:
            sys.stderr.write(exc.usage)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (TrendgramError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


# ---------------------------------------------------------------------------
# subcommands

def cmd_ingest(args):
    config = Config(year_min=args.year_min, year_max=args.year_max)
    config.validate()
    year_range = (config.year_min, config.year_max)
    mapping = _parse_csv_map(args.csv_map) if args.csv_map else None

    if not (args.bibtex or args.csv or args.endnote):
        raise UsageError("", "at least one input file is required (--bibtex/--csv/--endnote)")

    lists = []
    ordinals = {"bibtex": 1, "csv": 1, "endnote": 1}
    for source, paths, parse in (
        ("bibtex", args.bibtex, lambda t, o: parse_bibtex(t, year_range, o)),
        ("csv", args.csv, lambda t, o: parse_csv(t, mapping, year_range, o)),
        ("endnote", args.endnote, lambda t, o: parse_endnote(t, year_range, o)),
    ):
        for path in paths:
            text = Path(path).read_text(encoding="utf-8")
            entries, diagnostics = parse(text, ordinals[source])
            ordinals[source] += len(entries)
            for diagnostic in diagnostics:
                print(f"{path}:{diagnostic.line}: {diagnostic.message}", file=sys.stderr)
            lists.append(entries)

    merged, report = merge_dedup(lists)
    write_corpus(merged, sys.stdout if args.output == "-" else args.output)
    for name in ("total_in", "incomplete_removed", "duplicates_removed", "total_out"):
        print(f"{name}: {getattr(report, name)}", file=sys.stderr)
    return 0


def _parse_csv_map(pairs):
    mapping = {}
    for pair in pairs:
        field, eq, column = pair.partition("=")
        field, column = field.strip(), column.strip()
        if not eq or not field or not column:
            raise UsageError("", f"--csv-map expects FIELD=COLUMN, got {pair!r}")
        if field not in CSV_FIELDS:
            raise UsageError("", f"--csv-map field must be one of {', '.join(CSV_FIELDS)}; got {field!r}")
        mapping[field] = column
    return mapping


def _load_stoplist(path_argument):
    path = path_argument or os.environ.get(STOPLIST_ENV)
    if path:
        return Stoplist.from_file(path)
    return Stoplist.default()


def cmd_extract(args):
    config = Config(nmax=args.nmax, stoplist_path=args.stoplist)
    config.validate()
    stoplist = _load_stoplist(config.stoplist_path)
    entries = read_corpus(args.input)
    sentences = (sentence for entry in entries for sentence in entry_sentences(entry))
    records = count_ngrams(sentences, stoplist, 1, config.nmax)
    write_records(records, sys.stdout if args.output == "-" else args.output)
    return 0


def _year_range_for(args, table):
    lo = args.year_from
    hi = args.year_to
    span = table.year_span()
    if lo is None:
        lo = span[0] if span else None
    if hi is None:
        hi = span[1] if span else None
    if lo is None or hi is None:
        raise TrendgramError("records file has no years; pass --from and --to")
    if lo > hi:
        raise UsageError("", f"--from {lo} is greater than --to {hi}")
    return lo, hi


def cmd_query(args):
    table = build_table(read_records(args.input))
    query = parse_query(args.query)
    series = evaluate(table, query, _year_range_for(args, table))
    if args.output is None or args.output == "-":
        write_series_csv(series, sys.stdout)
    elif args.output.endswith(".json"):
        write_series_json(series, args.output)
    else:
        write_series_csv(series, args.output)
    if args.svg:
        Path(args.svg).write_text(render_plot(series, args.query), encoding="utf-8")
    return 0


def cmd_top(args):
    if args.k < 1:
        raise UsageError("", "-k must be at least 1")
    if not 1 <= args.n <= NGRAM_MAX:
        raise UsageError("", f"-n must be in 1..{NGRAM_MAX}")
    records = read_records(args.input)
    for rank, (ngram, total) in enumerate(top_ngrams(records, args.n, args.k), 1):
        print(f"{rank}. {ngram} {total}")
    return 0


def cmd_catalog(args):
    if args.limit < 1:
        raise UsageError("", "--limit must be at least 1")
    table = build_table(read_records(args.input))
    if not table.counts:
        raise TrendgramError("records file has no records to catalog")
    year_range = None
    if args.year_from is not None or args.year_to is not None:
        year_range = _year_range_for(args, table)
    index = build_catalog(table, CatalogSpec(limit=args.limit, year_range=year_range),
                          args.output)
    print(f"wrote {len(index)} plots to {args.output}", file=sys.stderr)
    return 0


def cmd_trends(args):
    if args.k < 1:
        raise UsageError("", "-k must be at least 1")
    if not 1 <= args.n <= NGRAM_MAX:
        raise UsageError("", f"-n must be in 1..{NGRAM_MAX}")
    table = build_table(read_records(args.input))
    ranked = rank_trends(table, args.n, args.direction, args.k,
                         min_support=args.min_support, min_years=args.min_years)
    print("rank,ngram,slope,total_count")
    for rank, entry in enumerate(ranked, 1):
        print(f"{rank},{entry.ngram},{format(entry.slope, '.10g')},{entry.total_count}")
    return 0


def cmd_demo(args):
    table = build_table(read_records(args.input))
    year_range = _year_range_for(args, table)
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    for number, text in enumerate(DEMO_QUERIES, 1):
        query = parse_query(text)
        series = evaluate(table, query, year_range)
        slug = "-".join(query.series[0].phrases[0])
        path = out_dir / f"demo-{number}-{slug}.svg"
        path.write_text(render_plot(series, text), encoding="utf-8")
        print(f"wrote {path}", file=sys.stderr)
    return 0
