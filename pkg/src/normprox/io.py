"""Matrix CSV reading and writing with exact value round-trip.

Format: one row per line, comma-separated decimal literals, no header, LF
line endings. Numbers use the shortest decimal representation that parses
back to the identical float; zeros (either sign) print as `0`. Lines that
are blank or start with `#` are skipped on read, so files carrying a
trailing dual-report comment block stay parseable.
"""

from __future__ import annotations

import os
from typing import IO

import numpy as np

from .validation import check_matrix


def format_float(v: float) -> str:
    """Shortest decimal string round-tripping to exactly v; zeros as `0`."""
    v = float(v)
    if v == 0.0:
        return "0"
    s = repr(v)
    return s[:-2] if s.endswith(".0") else s


def write_matrix_csv(X, dest: str | os.PathLike | IO[str]) -> None:
    """Write a matrix as CSV to a path or text stream."""
    X = check_matrix(X)
    lines = [",".join(format_float(v) for v in row) for row in X]
    text = "\n".join(lines) + "\n"
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", newline="") as fh:
            fh.write(text)


def read_matrix_csv(source: str | os.PathLike | IO[str]) -> np.ndarray:
    """Read a matrix written by write_matrix_csv (or any headerless CSV).

    Rejects ragged rows and non-numeric cells with the line number.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source) as fh:
            text = fh.read()
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            row = [float(tok) for tok in stripped.split(",")]
        except ValueError:
            raise ValueError(f"line {lineno}: not a comma-separated row of numbers")
        rows.append(row)
    if not rows:
        raise ValueError("no matrix rows found")
    width = len(rows[0])
    for k, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"ragged rows: row 1 has {width} cells, row {k + 1} has {len(row)}")
    return check_matrix(np.array(rows, dtype=float))
