"""N-gram extraction, stopword filtering, and the records file format.

The tabular model is one record per (n, ngram, year) with an occurrence
count. An n-gram is discarded when at least half of its tokens are
stopwords; the comparison is exact integer arithmetic, so a bigram with
exactly one stopword is discarded.
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass
from importlib import resources

from ._io import open_for_read, open_for_write
from .errors import RecordsError, TrendgramError

RECORDS_HEADER = ("n", "ngram", "year", "count")

NGRAM_MAX = 4


@dataclass(frozen=True)
class NgramRecord:
    n: int
    ngram: str
    year: int
    count: int


class Stoplist:
    """A set of function words, matched against lowercase tokens."""

    def __init__(self, words):
        self.words = frozenset(word.casefold() for word in words)
        if not self.words:
            raise TrendgramError("stoplist is empty")

    def __contains__(self, token):
        return token in self.words

    def __len__(self):
        return len(self.words)

    @classmethod
    def from_text(cls, text):
        """One word per line; `#` starts a comment; blanks ignored."""
        words = []
        for line in text.splitlines():
            word = line.split("#", 1)[0].strip()
            if word:
                words.append(word)
        return cls(words)

    @classmethod
    def from_file(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    @classmethod
    def default(cls):
        """The bundled English stopword list."""
        text = resources.files("trendgram").joinpath("data/stopwords.txt").read_text("utf-8")
        return cls.from_text(text)


def ngrams_of(tokens, n_min=1, n_max=NGRAM_MAX):
    """All contiguous token windows of each length in [n_min, n_max].

    A sentence of t tokens yields max(t - n + 1, 0) windows of length n.
    """
    if not 1 <= n_min <= n_max:
        raise ValueError(f"bad n-gram bounds {n_min}..{n_max}")
    grams = []
    for n in range(n_min, n_max + 1):
        for start in range(len(tokens) - n + 1):
            grams.append(tuple(tokens[start:start + n]))
    return grams


def passes_stopword_rule(ngram, stoplist):
    """True when strictly less than half of the tokens are stopwords."""
    stop = sum(1 for token in ngram if token in stoplist)
    return 2 * stop < len(ngram)


def count_ngrams(sentences, stoplist, n_min=1, n_max=NGRAM_MAX):
    """Count surviving n-gram occurrences per (n, ngram, year).

    Repeated occurrences within one sentence all count. The result is
    sorted by (n, ngram, year) so downstream output is deterministic.
    """
    counts: Counter = Counter()
    for sentence in sentences:
        for gram in ngrams_of(sentence.tokens, n_min, n_max):
            if passes_stopword_rule(gram, stoplist):
                counts[(len(gram), " ".join(gram), sentence.year)] += 1
    return [NgramRecord(n, ngram, year, count)
            for (n, ngram, year), count in sorted(counts.items())]


def merge_records(*record_sets):
    """Sum counts across record sets; shards counted separately merge to
    the same result as counting the whole corpus."""
    counts: Counter = Counter()
    for records in record_sets:
        for record in records:
            counts[(record.n, record.ngram, record.year)] += record.count
    return [NgramRecord(n, ngram, year, count)
            for (n, ngram, year), count in sorted(counts.items())]


def write_records(records, dest):
    """Write records as `n,ngram,year,count` rows sorted by key.

    The n-gram cell is quoted only if it contains a comma or a quote
    (token rules make both impossible, but readers must accept it).
    """
    with open_for_write(dest) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RECORDS_HEADER)
        for record in sorted(records, key=lambda r: (r.n, r.ngram, r.year)):
            writer.writerow([record.n, record.ngram, record.year, record.count])


def read_records(source):
    """Read a records CSV, enforcing every record invariant.

    This file is machine-produced, so any malformed row is corruption
    and raises `RecordsError` with the offending line number.
    """
    with open_for_read(source) as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise RecordsError("records file is empty") from None
        if header != list(RECORDS_HEADER):
            raise RecordsError(f"unexpected records header: {header!r}")
        records = []
        seen = set()
        for row in reader:
            line = reader.line_num
            if len(row) != len(RECORDS_HEADER):
                raise RecordsError(f"line {line}: expected {len(RECORDS_HEADER)} columns, got {len(row)}")
            n_text, ngram, year_text, count_text = row
            try:
                n, year, count = int(n_text), int(year_text), int(count_text)
            except ValueError:
                raise RecordsError(f"line {line}: non-numeric n, year, or count") from None
            if not 1 <= n <= NGRAM_MAX:
                raise RecordsError(f"line {line}: n={n} outside 1..{NGRAM_MAX}")
            if count < 1:
                raise RecordsError(f"line {line}: count must be positive, got {count}")
            tokens = ngram.split(" ")
            if len(tokens) != n or not all(tokens):
                raise RecordsError(f"line {line}: ngram {ngram!r} is not {n} tokens")
            key = (n, ngram, year)
            if key in seen:
                raise RecordsError(f"line {line}: duplicate record for {ngram!r} in {year}")
            seen.add(key)
            records.append(NgramRecord(n, ngram, year, count))
        return records


def top_ngrams(records, n, k):
    """The k most frequent length-n n-grams summed across years.

    Sorted by total descending, ties broken lexicographically.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    totals: Counter = Counter()
    for record in records:
        if record.n == n:
            totals[record.ngram] += record.count
    ranked = sorted(totals.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]
