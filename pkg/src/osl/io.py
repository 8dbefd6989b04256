"""Reading and writing delimited point files."""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .datagen import LabeledSample
from .errors import InvalidInputError

__all__ = ["ParseError", "load_points", "parse_points", "write_points"]


class ParseError(InvalidInputError):
    """A point file could not be read; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


def _split(line: str) -> list[str]:
    if "," in line:
        return [c.strip() for c in line.split(",")]
    if ";" in line:
        return [c.strip() for c in line.split(";")]
    return line.split()


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def parse_points(text: str, labeled: bool = False, noise_label=0, source: str = "<input>"):
    """Parse delimited numeric rows.

    Columns are separated by commas, semicolons or whitespace. A single
    header line is tolerated; blank lines and lines starting with ``#`` or
    ``%`` are skipped. With ``labeled=True`` the last column holds integer
    class labels: ``noise_label`` (pass ``None`` to disable) becomes 0 and
    the other classes become 1..M in order of first appearance.

    Returns
    -------
    ndarray or LabeledSample
    """
    rows, linenos = [], []
    width = None
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        cells = _split(line)
        if not rows and not header_seen and not all(_is_number(c) for c in cells):
            header_seen = True
            continue
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ParseError(f"expected {width} columns, found {len(cells)}", lineno, source)
        try:
            values = [float(c) for c in cells]
        except ValueError:
            bad = next(c for c in cells if not _is_number(c))
            raise ParseError(f"non-numeric cell {bad!r}", lineno, source) from None
        if not all(math.isfinite(v) for v in values):
            raise ParseError("non-finite value", lineno, source)
        rows.append(values)
        linenos.append(lineno)
    if not rows:
        raise ParseError("no data rows", None, source)
    data = np.array(rows)
    if not labeled:
        return data
    if data.shape[1] < 2:
        raise ParseError("a label column needs at least one coordinate column before it", None, source)
    raw_labels = data[:, -1]
    bad = np.flatnonzero(raw_labels != np.round(raw_labels))
    if bad.size:
        raise ParseError("label column must hold integers", linenos[bad[0]], source)
    raw_labels = raw_labels.astype(np.int64)
    truth = np.zeros(len(raw_labels), dtype=np.int64)
    mapping: dict[int, int] = {}
    for i, lab in enumerate(raw_labels.tolist()):
        if noise_label is not None and lab == int(noise_label):
            continue
        truth[i] = mapping.setdefault(lab, len(mapping) + 1)
    return LabeledSample(points=data[:, :-1], truth=truth)


def load_points(path, labeled: bool = False, noise_label=0):
    """Read a point file, see :func:`parse_points`."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(exc.strerror or exc), None, str(path)) from exc
    return parse_points(text, labeled=labeled, noise_label=noise_label, source=str(path))


def write_points(fh, points, labels=None, header=True) -> None:
    """Write points (and an optional label column) as comma-separated rows."""
    points = np.asarray(points)
    dim = points.shape[1]
    if header:
        cols = [f"x{i + 1}" for i in range(dim)] + (["label"] if labels is not None else [])
        fh.write(",".join(cols) + "\n")
    for i, row in enumerate(points.tolist()):
        cells = [repr(v) for v in row]
        if labels is not None:
            cells.append(str(int(labels[i])))
        fh.write(",".join(cells) + "\n")
