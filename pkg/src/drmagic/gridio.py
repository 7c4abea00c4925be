"""Reading and writing integer grids.

Two encodings are accepted:

* plain text: the order ``n`` on the first line, then ``n`` rows of
  whitespace-separated integers, ``0`` marking a blank;
* a JSON document ``{"kind": "magic" | "sudoku", "n": n, "cells": [[...], ...]}``.
"""

from __future__ import annotations

import json
from typing import Optional, Tuple

import numpy as np

__all__ = ["GridFormatError", "parse_grid", "load_grid", "format_grid"]


class GridFormatError(ValueError):
    pass


def _check_cells(cells, n) -> np.ndarray:
    try:
        g = np.array(cells, dtype=object)
        if g.shape != (n, n):
            raise GridFormatError(f"expected {n} rows of {n} integers")
        if not all(isinstance(v, (int, np.integer)) and not isinstance(v, bool)
                   for v in g.ravel()):
            raise GridFormatError("cells must be integers")
        g = g.astype(np.int64)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GridFormatError):
            raise
        raise GridFormatError(str(exc)) from None
    if np.any(g < 0):
        raise GridFormatError("cells must be non-negative (0 = blank)")
    return g


def parse_grid(text: str) -> Tuple[Optional[str], np.ndarray]:
    """Parse either encoding; returns ``(kind, grid)`` with ``kind`` None for text."""
    stripped = text.strip()
    if not stripped:
        raise GridFormatError("empty grid document")
    if stripped[0] == "{":
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise GridFormatError(f"bad JSON: {exc}") from None
        if not isinstance(doc, dict) or not {"n", "cells"} <= doc.keys():
            raise GridFormatError("structured grid needs fields 'n' and 'cells'")
        n = doc["n"]
        if not isinstance(n, int) or n < 1:
            raise GridFormatError("'n' must be a positive integer")
        kind = doc.get("kind")
        if kind not in (None, "magic", "sudoku"):
            raise GridFormatError(f"unknown kind {kind!r}")
        return kind, _check_cells(doc["cells"], n)

    lines = [ln.split() for ln in stripped.splitlines() if ln.strip()]
    try:
        n = int(lines[0][0])
        if len(lines[0]) != 1 or n < 1:
            raise ValueError
        rows = [[int(t) for t in ln] for ln in lines[1:]]
    except ValueError:
        raise GridFormatError("first line must be the order n, then rows of integers") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise GridFormatError(f"expected {n} rows of {n} integers")
    return None, _check_cells(rows, n)


def load_grid(path) -> Tuple[Optional[str], np.ndarray]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise GridFormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_grid(text)


def format_grid(grid, fmt: str = "text", kind: Optional[str] = None) -> str:
    g = np.asarray(grid, dtype=np.int64)
    if fmt == "text":
        return "\n".join(" ".join(str(v) for v in row) for row in g) + "\n"
    if fmt == "csv":
        return "\n".join(",".join(str(v) for v in row) for row in g) + "\n"
    if fmt == "structured":
        doc = {"kind": kind, "n": int(g.shape[0]), "cells": g.tolist()}
        return json.dumps(doc) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
