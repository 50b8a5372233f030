"""Path-or-stream helpers for the CSV readers and writers."""

from __future__ import annotations

from contextlib import nullcontext


def open_for_read(source):
    """Return a context manager yielding a text stream for `source`.

    `source` may be a path or an already-open file-like object; the
    latter is not closed.
    """
    if hasattr(source, "read"):
        return nullcontext(source)
    return open(source, "r", encoding="utf-8", newline="")


def open_for_write(dest):
    """Writing counterpart of `open_for_read`."""
    if hasattr(dest, "write"):
        return nullcontext(dest)
    return open(dest, "w", encoding="utf-8", newline="")
