"""Per-year normalized frequencies and the trend-query language.

The frequency of an n-gram in a year is its count divided by the total
count of all n-grams of the same length in that year. A year with no
data for a length is distinguishable from a true zero: the point value
is 0.0 and its `has_data` flag is False.

Queries separate competing series with `,` and union closely related
phrases with `+`; the frequency of a union is the sum of its members'
frequencies. Phrases go through the same tokenization and article
removal as extraction did, so a query matches exactly what was stored.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import NamedTuple

from ._io import open_for_write
from .errors import QueryError
from .textprep import remove_articles, tokenize

SERIES_HEADER = ("label", "year", "frequency", "has_data")

MAX_PHRASE_TOKENS = 4


class SeriesPoint(NamedTuple):
    frequency: float
    has_data: bool


@dataclass
class FrequencyTable:
    """Aggregated records plus the per-(n, year) totals used as
    frequency denominators."""

    counts: dict[tuple[int, str, int], int]
    totals: dict[tuple[int, int], int]
    years: list[int]

    def has_data(self, n, year):
        return self.totals.get((n, year), 0) > 0

    def year_span(self):
        if not self.years:
            return None
        return self.years[0], self.years[-1]


@dataclass
class QuerySeries:
    label: str
    phrases: list[tuple[str, ...]]


@dataclass
class Query:
    series: list[QuerySeries]


@dataclass
class FrequencySeries:
    label: str
    points: dict[int, SeriesPoint]


def build_table(records):
    """Index records by (n, ngram, year) and compute per-(n, year) totals."""
    counts: dict[tuple[int, str, int], int] = {}
    totals: dict[tuple[int, int], int] = {}
    years = set()
    for record in records:
        key = (record.n, record.ngram, record.year)
        counts[key] = counts.get(key, 0) + record.count
        total_key = (record.n, record.year)
        totals[total_key] = totals.get(total_key, 0) + record.count
        years.add(record.year)
    return FrequencyTable(counts, totals, sorted(years))


def freq(table, phrase, year):
    """Count of `phrase` in `year` over the total count of all n-grams
    of the same length that year; 0.0 when absent or when the year has
    no data for that length (see `FrequencyTable.has_data`)."""
    n = len(phrase)
    total = table.totals.get((n, year), 0)
    if total == 0:
        return 0.0
    return table.counts.get((n, " ".join(phrase), year), 0) / total


def freq_list(table, phrases, year):
    """Sum of the members' frequencies; a phrase listed twice counts twice."""
    return sum(freq(table, phrase, year) for phrase in phrases)


def parse_query(text):
    """Parse `series, series, ...` where a series is `phrase+phrase+...`.

    Each phrase is tokenized and article-stripped with the extraction
    rules; the series label is the original comma-separated fragment,
    trimmed. Empty fragments and phrases longer than four tokens are
    errors.
    """
    if not text.strip():
        raise QueryError("empty query")
    series = []
    for fragment in text.split(","):
        label = fragment.strip()
        if not label:
            raise QueryError(f"empty series in query {text.strip()!r}")
        phrases = []
        for part in fragment.split("+"):
            part = part.strip()
            if not part:
                raise QueryError(f"empty phrase in series {label!r}")
            tokens = remove_articles(tokenize(part))
            if not tokens:
                raise QueryError(f"phrase {part!r} has no searchable tokens")
            if len(tokens) > MAX_PHRASE_TOKENS:
                raise QueryError(f"phrase {part!r} is longer than {MAX_PHRASE_TOKENS} tokens")
            phrases.append(tuple(tokens))
        series.append(QuerySeries(label, phrases))
    return Query(series)


def evaluate(table, query, year_range):
    """One FrequencySeries per query series over every year in the
    inclusive range, in query order."""
    lo, hi = year_range
    if lo > hi:
        raise ValueError(f"empty year range {lo}..{hi}")
    result = []
    for qs in query.series:
        points = {}
        for year in range(lo, hi + 1):
            value = freq_list(table, qs.phrases, year)
            data = any(table.has_data(len(phrase), year) for phrase in qs.phrases)
            points[year] = SeriesPoint(value, data)
        result.append(FrequencySeries(qs.label, points))
    return result


def _format_frequency(value):
    return format(value, ".10g")


def write_series_csv(series_list, dest):
    """`label,year,frequency,has_data` rows, frequencies at 10
    significant digits."""
    with open_for_write(dest) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SERIES_HEADER)
        for series in series_list:
            for year in sorted(series.points):
                point = series.points[year]
                writer.writerow([
                    series.label,
                    year,
                    _format_frequency(point.frequency),
                    "true" if point.has_data else "false",
                ])


def write_series_json(series_list, dest):
    """Same content as the CSV form, as a JSON array of series."""
    payload = [
        {
            "label": series.label,
            "points": [
                {
                    "year": year,
                    "frequency": series.points[year].frequency,
                    "has_data": series.points[year].has_data,
                }
                for year in sorted(series.points)
            ],
        }
        for series in series_list
    ]
    with open_for_write(dest) as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
