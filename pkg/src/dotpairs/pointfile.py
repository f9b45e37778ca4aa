"""JSON point-set files: ``{"field": ..., "dim": d, "label": ..., "points": [[str, ...], ...]}``."""

from __future__ import annotations

import json
from pathlib import Path

from .geometry import PointSet
from .scalars import FieldSpec, format_scalar, parse_scalar


class PointFileError(ValueError):
    pass


def to_json(P: PointSet) -> str:
    obj = {
        "field": P.field.to_json(),
        "dim": P.dim,
        "label": P.label,
        "points": [[format_scalar(c) for c in p] for p in P.points],
    }
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def from_json(text: str) -> PointSet:
    try:
        obj = json.loads(text)
        field = FieldSpec.from_json(obj["field"])
        dim = int(obj["dim"])
        pts = []
        for row in obj["points"]:
            if not isinstance(row, list):
                raise PointFileError(f"point {row!r} is not an array")
            pts.append(tuple(parse_scalar(c, field) for c in row))
        return PointSet(field, dim, tuple(pts), str(obj.get("label", "")))
    except PointFileError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise PointFileError(str(exc)) from exc


def save(P: PointSet, path) -> None:
    Path(path).write_text(to_json(P), encoding="utf-8")


def load(path) -> PointSet:
    return from_json(Path(path).read_text(encoding="utf-8"))
