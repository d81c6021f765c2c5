"""Checkpoint files, reports and number formatting.

Checkpoint format (text)::

    LEWGRID 1
    nu nv time
    x1 x2 x3 y1 y2 y3        # nu * nv lines, row-major in u then v

Every float is printed with 17 significant digits, which round-trips IEEE
doubles exactly.  All writers go through a temporary file in the target
directory followed by :func:`os.replace`.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import FormatError
from .surface import ImmersionGrid

MAGIC = "LEWGRID"
VERSION = 1


def fmt(x):
    """A number with 17 significant digits (integers stay integral)."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def atomic_write_text(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --------------------------------------------------------------------------
# checkpoints
# --------------------------------------------------------------------------


def format_checkpoint(grid, time=0.0):
    lines = [f"{MAGIC} {VERSION}", f"{grid.nu} {grid.nv} {fmt(float(time))}"]
    for row in grid.values.reshape(-1, 6):
        lines.append(" ".join(fmt(c) for c in row))
    return "\n".join(lines) + "\n"


def write_checkpoint(path, grid, time=0.0):
    atomic_write_text(path, format_checkpoint(grid, time))


def parse_checkpoint(text):
    """Parse checkpoint text into ``(ImmersionGrid, time)``."""
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty checkpoint", line=1)
    head = lines[0].split()
    if len(head) != 2 or head[0] != MAGIC:
        raise FormatError(f"expected '{MAGIC} {VERSION}' header", line=1)
    try:
        version = int(head[1])
    except ValueError:
        raise FormatError(f"bad version {head[1]!r}", line=1) from None
    if version != VERSION:
        raise FormatError(f"unsupported version {version}", line=1)
    if len(lines) < 2:
        raise FormatError("missing 'nu nv time' line", line=2)
    dims = lines[1].split()
    try:
        if len(dims) != 3:
            raise ValueError
        nu, nv, time = int(dims[0]), int(dims[1]), float(dims[2])
    except ValueError:
        raise FormatError("expected 'nu nv time'", line=2) from None
    if nu <= 0 or nv <= 0:
        raise FormatError(f"grid sizes must be positive, got {nu}x{nv}", line=2)
    count = nu * nv
    values = np.empty((count, 6))
    for k in range(count):
        lineno = k + 3
        if k + 2 >= len(lines):
            raise FormatError(f"file ends after {k} of {count} value lines", line=lineno)
        parts = lines[k + 2].split()
        if len(parts) != 6:
            raise FormatError(f"expected 6 values, found {len(parts)}", line=lineno)
        try:
            values[k] = [float(p) for p in parts]
        except ValueError:
            raise FormatError("non-numeric value", line=lineno) from None
    for k in range(count + 2, len(lines)):
        if lines[k].strip():
            raise FormatError("unexpected trailing content", line=k + 1)
    try:
        grid = ImmersionGrid(values.reshape(nu, nv, 6))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return grid, time


def read_checkpoint(path):
    return parse_checkpoint(Path(path).read_text())


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------


def _json_value(obj):
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {_json_value(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json_value(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj):
    """JSON text with floats at 17 significant digits; non-finite -> null."""
    return _json_value(obj) + "\n"


def write_json(path, obj):
    atomic_write_text(path, dumps_json(obj))


def write_csv(path, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(x) for x in row])
    atomic_write_text(path, buf.getvalue())


def read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(x) for x in row] for row in reader if row]
    return header, rows


def write_field_csv(path, field):
    """A scalar grid field as ``nu`` rows of ``nv`` columns."""
    field = np.asarray(field, dtype=float)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in field:
        writer.writerow([fmt(x) for x in row])
    atomic_write_text(path, buf.getvalue())
