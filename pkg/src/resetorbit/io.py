"""CSV and JSON writers with a fixed, locale-independent number format."""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, Sequence

from .hybridsim import HybridArc

ARC_COLUMNS = ("t", "j", "x1", "x2")


def fmt(v: float) -> str:
    """17 significant digits; non-finite values become the token ``nan``."""
    v = float(v)
    if not math.isfinite(v):
        return "nan"
    return "%.17g" % v


def write_csv(path: Path | str, header: Sequence[str], rows: Iterable[Sequence[float]], int_cols=()) -> None:
    lines = [",".join(header)]
    for row in rows:
        cells = [str(int(v)) if i in int_cols else fmt(v) for i, v in enumerate(row)]
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_csv(path: Path | str) -> tuple[list[str], list[list[float]]]:
    text = Path(path).read_text(encoding="utf-8").splitlines()
    header = text[0].split(",")
    return header, [[float(c) for c in line.split(",")] for line in text[1:] if line]


def write_arc_csv(path: Path | str, arc: HybridArc) -> None:
    write_csv(path, ARC_COLUMNS, arc.samples(), int_cols={1})


def write_json(path: Path | str, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def write_arc_json(path: Path | str, arc: HybridArc) -> None:
    write_json(path, arc.to_dict())


def read_arc_json(path: Path | str) -> HybridArc:
    return HybridArc.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
