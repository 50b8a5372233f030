"""Sentence splitting, tokenization, and article removal.

Sentences are the unit downstream n-gram windows never cross. The
splitter is rule-based: a terminator followed by whitespace ends a
sentence. It will occasionally over-split around abbreviations, which
only fragments n-grams; it never fabricates an n-gram across a real
sentence boundary, which is the failure mode that matters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_TERMINATOR_RE = re.compile(r"[.!?;:]\s+")
_TOKEN_RE = re.compile(r"[\w'-]+")

ARTICLES = frozenset({"a", "an", "the"})


@dataclass
class Sentence:
    """A tokenized fragment tied back to its entry and year."""

    tokens: list[str]
    origin: str  # "title" | "abstract" | "keyword"
    entry_id: str
    year: int


def split_sentences(text):
    """Split at `.`, `!`, `?`, `;`, `:` when followed by whitespace.

    A terminator not followed by whitespace (as in "e.g.x") does not
    split. Fragments are stripped; empty ones are dropped.
    """
    return [frag.strip() for frag in _TERMINATOR_RE.split(text) if frag.strip()]


def tokenize(sentence):
    """Casefold and split into word tokens.

    Tokens keep internal apostrophes and hyphens ("open-source" stays
    one token); leading and trailing ones are stripped, and anything
    that was pure punctuation disappears.
    """
    folded = sentence.casefold().replace("_", " ")
    tokens = []
    for raw in _TOKEN_RE.findall(folded):
        token = raw.strip("'-")
        if token:
            tokens.append(token)
    return tokens


def remove_articles(tokens):
    """Drop every "a", "an", and "the", keeping the rest in order."""
    return [token for token in tokens if token not in ARTICLES]


def entry_sentences(entry):
    """All sentences of an entry: title first, then abstract, then one
    per keyword (keywords are never split further)."""
    sentences = []
    for origin, texts in (
        ("title", split_sentences(entry.title)),
        ("abstract", split_sentences(entry.abstract)),
        ("keyword", entry.keywords),
    ):
        for text in texts:
            tokens = remove_articles(tokenize(text))
            sentences.append(Sentence(tokens, origin, entry.id, entry.year))
    return sentences
