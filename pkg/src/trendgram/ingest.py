"""Readers for bibliographic metadata exports and the merge/dedup stage.

Three export formats are accepted: a small BibTeX subset, delimited CSV
with a configurable column mapping, and EndNote refer files. Parsing is
tolerant where the data is dirty: a broken record becomes a `Diagnostic`
and is skipped, and the remaining records are still returned. Structural
problems (a mapped CSV column that does not exist, a corrupt corpus
file) raise `IngestError` instead.

The BibTeX subset is deliberately small: `@type{key, field = {value}}`
records with braced, quoted, or bare values. There is no `@string`
expansion and no cross-referencing; TeX control words are dropped from
values rather than decoded.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass

from ._io import open_for_read, open_for_write
from .errors import IngestError

SOURCES = ("bibtex", "csv", "endnote")

CORPUS_HEADER = ("id", "source", "year", "title", "abstract", "keywords", "authors")

DEFAULT_YEAR_RANGE = (2000, 2014)

# Column names used by IEEE Xplore CSV exports. The keywords column must
# be the author-supplied one, not the automatically assigned keywords.
DEFAULT_CSV_MAPPING = {
    "title": "Document Title",
    "abstract": "Abstract",
    "keywords": "Author Keywords",
    "year": "Publication Year",
    "authors": "Authors",
}

CSV_FIELDS = ("title", "abstract", "keywords", "year", "authors")
_CSV_REQUIRED = ("title", "year")


@dataclass
class Entry:
    """One bibliographic record, uniform across source formats."""

    id: str
    title: str
    abstract: str
    keywords: list[str]
    year: int
    authors: list[str]
    source: str


@dataclass
class Diagnostic:
    """A non-fatal per-record parse problem."""

    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


@dataclass
class MergeReport:
    total_in: int
    incomplete_removed: int
    duplicates_removed: int
    total_out: int


def _make_entry(source, ordinal, title, abstract, keywords, authors, year_text,
                year_range):
    """Validate the common fields and build an Entry, or explain why not."""
    year_text = year_text.strip()
    if not year_text:
        return None, "missing year"
    try:
        year = int(year_text)
    except ValueError:
        return None, f"non-numeric year {year_text!r}"
    if year_range is not None and not year_range[0] <= year <= year_range[1]:
        return None, f"year {year} outside range {year_range[0]}-{year_range[1]}"
    if not title:
        return None, "missing title"
    entry = Entry(
        id=f"{source}:{ordinal}",
        title=title,
        abstract=abstract,
        keywords=keywords,
        year=year,
        authors=authors,
        source=source,
    )
    return entry, None


# ---------------------------------------------------------------------------
# BibTeX

_SKIPPED_RECORD_TYPES = {"string", "preamble", "comment"}
_TEX_COMMAND_RE = re.compile(r"\\[A-Za-z]+\s*")
_TEX_ESCAPE_RE = re.compile(r"\\(.)")
_AUTHOR_AND_RE = re.compile(r"\s+and\s+", re.IGNORECASE)
_KEYWORD_SEP_RE = re.compile(r"[;,]")


def parse_bibtex(text, year_range=None, start_ordinal=1):
    """Parse `@type{key, field = {value}, ...}` records into entries.

    Recognized fields: title, abstract, keywords, year, author; anything
    else is ignored. Records with unbalanced braces, a missing or
    non-numeric year, an out-of-range year, or no title produce a
    `Diagnostic` and are skipped; parsing resumes at the next record.

    Returns `(entries, diagnostics)`.
    """
    entries: list[Entry] = []
    diagnostics: list[Diagnostic] = []
    ordinal = start_ordinal
    pos = 0
    while True:
        at = text.find("@", pos)
        if at == -1:
            break
        line = text.count("\n", 0, at) + 1
        record_type, body, end = _scan_record(text, at)
        if body is None:
            diagnostics.append(Diagnostic(line, "unbalanced braces in record"))
            pos = _resync(text, at)
            continue
        pos = end
        if record_type in _SKIPPED_RECORD_TYPES:
            continue
        fields = _record_fields(body)
        entry, problem = _make_entry(
            "bibtex",
            ordinal,
            title=fields.get("title", ""),
            abstract=fields.get("abstract", ""),
            keywords=_split_on(fields.get("keywords", ""), _KEYWORD_SEP_RE),
            authors=_split_on(fields.get("author", ""), _AUTHOR_AND_RE),
            year_text=fields.get("year", ""),
            year_range=year_range,
        )
        if problem:
            key = body.partition(",")[0].strip() or "?"
            diagnostics.append(Diagnostic(line, f"record '{key}': {problem}"))
            continue
        entries.append(entry)
        ordinal += 1
    return entries, diagnostics


def _scan_record(text, at):
    """Find the extent of the record starting at `text[at] == '@'`.

    Returns `(type, body, end)`; `body` is None when the record has no
    opening brace or its braces never balance before end of input.
    """
    idx = at + 1
    type_start = idx
    while idx < len(text) and (text[idx].isalnum() or text[idx] in "_-"):
        idx += 1
    record_type = text[type_start:idx].lower()
    while idx < len(text) and text[idx].isspace():
        idx += 1
    if idx >= len(text) or text[idx] != "{":
        return record_type, None, idx
    depth = 1
    idx += 1
    body_start = idx
    while idx < len(text) and depth > 0:
        ch = text[idx]
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        idx += 1
    if depth != 0:
        return record_type, None, idx
    return record_type, text[body_start:idx - 1], idx


def _resync(text, at):
    """Skip past a broken record: resume at the next line-initial '@'."""
    nxt = text.find("\n@", at + 1)
    return len(text) if nxt == -1 else nxt + 1


def _record_fields(body):
    fields: dict[str, str] = {}
    rest = body.partition(",")[2]
    for chunk in _split_top_level(rest):
        name, eq, raw = chunk.partition("=")
        if not eq:
            continue
        fields[name.strip().lower()] = _clean_value(raw)
    return fields


def _split_top_level(text):
    """Split on commas that are outside braces and quotes."""
    chunks: list[list[str]] = [[]]
    depth = 0
    in_quotes = False
    for ch in text:
        if ch == '"' and depth == 0:
            in_quotes = not in_quotes
        elif ch == "{":
            depth += 1
        elif ch == "}":
            depth = max(depth - 1, 0)
        if ch == "," and depth == 0 and not in_quotes:
            chunks.append([])
        else:
            chunks[-1].append(ch)
    return [c for c in ("".join(chunk).strip() for chunk in chunks) if c]


def _clean_value(raw):
    """Strip value delimiters and TeX markup, collapse whitespace runs."""
    value = raw.strip()
    if len(value) >= 2 and value[0] == '"' and value[-1] == '"':
        value = value[1:-1]
    value = _TEX_COMMAND_RE.sub("", value)
    value = _TEX_ESCAPE_RE.sub(r"\1", value)
    value = value.replace("{", "").replace("}", "").replace("~", " ")
    return " ".join(value.split())


def _split_on(value, pattern):
    return [item for item in (part.strip() for part in pattern.split(value)) if item]


def _split_semicolons(value):
    return [item.strip() for item in value.split(";") if item.strip()]


# ---------------------------------------------------------------------------
# CSV

def parse_csv(text, mapping=None, year_range=None, start_ordinal=1):
    """Parse a delimited export whose header row is mapped to entry fields.

    `mapping` takes logical field names (title, abstract, keywords, year,
    authors) to header column names and defaults to the IEEE Xplore
    layout; title and year are mandatory. A mapped column missing from
    the header raises `IngestError`. Keyword and author cells are split
    on `;`. Rows with a bad year become diagnostics and are skipped.
    """
    mapping = DEFAULT_CSV_MAPPING if mapping is None else mapping
    unknown = sorted(set(mapping) - set(CSV_FIELDS))
    if unknown:
        raise IngestError(f"unknown field(s) in CSV mapping: {', '.join(unknown)}")
    for field in _CSV_REQUIRED:
        if field not in mapping:
            raise IngestError(f"CSV mapping must include '{field}'")

    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        return [], []
    positions = {}
    for field, column in mapping.items():
        if column not in header:
            raise IngestError(f"column {column!r} (mapped from '{field}') not in CSV header")
        positions[field] = header.index(column)

    def cell(row, field):
        pos = positions.get(field)
        if pos is None or pos >= len(row):
            return ""
        return row[pos].strip()

    entries: list[Entry] = []
    diagnostics: list[Diagnostic] = []
    ordinal = start_ordinal
    for row in reader:
        if not any(c.strip() for c in row):
            continue
        entry, problem = _make_entry(
            "csv",
            ordinal,
            title=cell(row, "title"),
            abstract=cell(row, "abstract"),
            keywords=_split_semicolons(cell(row, "keywords")),
            authors=_split_semicolons(cell(row, "authors")),
            year_text=cell(row, "year"),
            year_range=year_range,
        )
        if problem:
            diagnostics.append(Diagnostic(reader.line_num, f"row skipped: {problem}"))
            continue
        entries.append(entry)
        ordinal += 1
    return entries, diagnostics


# ---------------------------------------------------------------------------
# EndNote (refer format)

def parse_endnote(text, year_range=None, start_ordinal=1):
    """Parse refer-style tagged records separated by blank lines.

    Tags: %T title, %A author (repeatable), %D year, %K keywords
    (split on `;` or newline), %X abstract. Untagged lines continue the
    previous tag's value; unknown tags are ignored.
    """
    entries: list[Entry] = []
    diagnostics: list[Diagnostic] = []
    ordinal = start_ordinal
    for start_line, lines in _endnote_records(text):
        single = {"%T": "", "%D": "", "%X": ""}
        authors: list[str] = []
        keyword_lines: list[str] = []
        last = None
        for line in lines:
            if line.startswith("%") and len(line) >= 2:
                tag, value = line[:2], line[2:].strip()
                if tag == "%A":
                    authors.append(value)
                    last = ("author", len(authors) - 1)
                elif tag == "%K":
                    keyword_lines.append(value)
                    last = ("keyword", len(keyword_lines) - 1)
                elif tag in single:
                    single[tag] = value
                    last = ("single", tag)
                else:
                    last = None
                continue
            extra = line.strip()
            if not extra or last is None:
                continue
            kind, where = last
            if kind == "author":
                authors[where] += " " + extra
            elif kind == "keyword":
                keyword_lines[where] += "\n" + extra
            else:
                single[where] += " " + extra
        keywords = []
        for raw in keyword_lines:
            keywords.extend(k.strip() for k in re.split(r"[;\n]", raw) if k.strip())
        entry, problem = _make_entry(
            "endnote",
            ordinal,
            title=single["%T"],
            abstract=single["%X"],
            keywords=keywords,
            authors=[a for a in (name.strip() for name in authors) if a],
            year_text=single["%D"],
            year_range=year_range,
        )
        if problem:
            diagnostics.append(Diagnostic(start_line, f"record skipped: {problem}"))
            continue
        entries.append(entry)
        ordinal += 1
    return entries, diagnostics


def _endnote_records(text):
    records = []
    current: list[str] = []
    start = 0
    for number, line in enumerate(text.splitlines(), 1):
        if line.strip():
            if not current:
                start = number
            current.append(line)
        elif current:
            records.append((start, current))
            current = []
    if current:
        records.append((start, current))
    return records


# ---------------------------------------------------------------------------
# Filtering, merging, deduplication

def filter_incomplete(entries):
    """Keep entries with at least one author and a non-empty abstract."""
    kept = [entry for entry in entries if entry.authors and entry.abstract]
    return kept, len(entries) - len(kept)


def normalized_title(title):
    """Dedup key: casefold, drop non-alphanumerics, collapse whitespace."""
    folded = title.casefold()
    cleaned = "".join(ch for ch in folded if ch.isalnum() or ch.isspace())
    return " ".join(cleaned.split())


def _completeness(entry):
    return sum((bool(entry.abstract), bool(entry.keywords), bool(entry.authors)))


def merge_dedup(entry_lists):
    """Concatenate source lists, drop incomplete entries, deduplicate.

    Two entries are duplicates when their normalized titles and years
    are equal. The most complete record (non-empty abstract / keywords /
    authors) survives; on a tie, the one seen first. Returns
    `(entries, MergeReport)`.
    """
    pooled = [entry for entries in entry_lists for entry in entries]
    complete, incomplete_removed = filter_incomplete(pooled)
    survivors: dict[tuple[str, int], Entry] = {}
    for entry in complete:
        key = (normalized_title(entry.title), entry.year)
        current = survivors.get(key)
        if current is None or _completeness(entry) > _completeness(current):
            survivors[key] = entry
    merged = list(survivors.values())
    report = MergeReport(
        total_in=len(pooled),
        incomplete_removed=incomplete_removed,
        duplicates_removed=len(complete) - len(merged),
        total_out=len(merged),
    )
    return merged, report


# ---------------------------------------------------------------------------
# Canonical corpus file

def write_corpus(entries, dest):
    """Write entries as the canonical corpus CSV, preserving order.

    Keywords and authors are `;`-joined inside their cells, so the
    items themselves must not contain semicolons (the parsers guarantee
    this by construction).
    """
    with open_for_write(dest) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CORPUS_HEADER)
        for entry in entries:
            writer.writerow([
                entry.id,
                entry.source,
                entry.year,
                entry.title,
                entry.abstract,
                ";".join(entry.keywords),
                ";".join(entry.authors),
            ])


def read_corpus(source):
    """Read a canonical corpus CSV back into entries.

    The corpus file is machine-produced, so any malformation is fatal.
    """
    with open_for_read(source) as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestError("corpus file is empty") from None
        if header != list(CORPUS_HEADER):
            raise IngestError(f"unexpected corpus header: {header!r}")
        entries = []
        for row in reader:
            line = reader.line_num
            if len(row) != len(CORPUS_HEADER):
                raise IngestError(f"line {line}: expected {len(CORPUS_HEADER)} columns, got {len(row)}")
            entry_id, source_name, year_text, title, abstract, keywords, authors = row
            if source_name not in SOURCES:
                raise IngestError(f"line {line}: unknown source {source_name!r}")
            try:
                year = int(year_text)
            except ValueError:
                raise IngestError(f"line {line}: non-numeric year {year_text!r}") from None
            entries.append(Entry(
                id=entry_id,
                title=title,
                abstract=abstract,
                keywords=_split_semicolons(keywords),
                year=year,
                authors=_split_semicolons(authors),
                source=source_name,
            ))
        return entries
