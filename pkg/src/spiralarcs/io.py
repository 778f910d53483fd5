"""Structured-text job documents and deterministic CSV emission.

One YAML schema covers every job kind.  A document is a mapping with a
`version` field (currently 1) and a `kind` field selecting the payload:

    kind: chord      c, alpha, beta [, k1, k2] [, length]
    kind: segments   start: {x, y, tau}, segments: [[k, l], ...]
    kind: model      k1, k2, length [, theta] [, grid]
    kind: oval       k: [k1, k2, k3, k4], lengths: [L1, L2, L3, L4]
                     [, parameter] [, grid] [, resolution]

Floats are emitted in their shortest exact decimal form, so every emitted
document re-parses to equal values.  CSV cells use a fixed 17-significant-
digit format (also exact for binary doubles); identical inputs therefore
produce byte-identical files.
"""

from __future__ import annotations

import csv
import io as _io
import math
from typing import List, Optional, Sequence, Tuple, Union

import yaml

from .curves import PiecewiseConstCurve
from .errors import InvalidDataError
from .geom import ChordData, G2ChordData, Pose
from .ovals import OvalSpec

__all__ = [
    "DOCUMENT_VERSION", "parse_document", "load_document", "dump_document",
    "save_document", "chord_from_document", "curve_from_document",
    "document_for_curve", "document_for_chord", "oval_from_document",
    "document_for_oval", "model_args_from_document", "format_float",
    "csv_text", "write_csv", "read_csv",
]

DOCUMENT_VERSION = 1

_SCHEMAS = {
    "chord": ({"c", "alpha", "beta"}, {"k1", "k2", "length"}),
    "segments": ({"segments"}, {"start"}),
    "model": ({"k1", "k2", "length"}, {"theta", "grid"}),
    "oval": ({"k", "lengths"}, {"parameter", "grid", "resolution"}),
}


def _as_float(doc: dict, key: str) -> float:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InvalidDataError(f"field {key!r} must be a number, got {v!r}")
    return float(v)


def parse_document(text: str) -> dict:
    """Parse and schema-check one job document. Returns the raw mapping."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise InvalidDataError(f"unparseable document: {e}") from e
    if not isinstance(doc, dict):
        raise InvalidDataError("document must be a mapping")
    if doc.get("version") != DOCUMENT_VERSION:
        raise InvalidDataError(
            f"unsupported document version {doc.get('version')!r}; "
            f"expected {DOCUMENT_VERSION}")
    kind = doc.get("kind")
    if kind not in _SCHEMAS:
        raise InvalidDataError(
            f"unknown document kind {kind!r}; expected one of "
            + ", ".join(sorted(_SCHEMAS)))
    required, optional = _SCHEMAS[kind]
    keys = set(doc) - {"version", "kind"}
    missing = required - keys
    if missing:
        raise InvalidDataError(
            f"document kind {kind!r} is missing fields: "
            + ", ".join(sorted(missing)))
    unknown = keys - required - optional
    if unknown:
        raise InvalidDataError(
            f"document kind {kind!r} has unknown fields: "
            + ", ".join(sorted(unknown)))
    return doc


def load_document(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_document(fh.read())


def dump_document(doc: dict) -> str:
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None,
                          width=79)


def save_document(doc: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_document(doc))


# ---------------------------------------------------------------------------
# document -> domain values


def chord_from_document(doc) -> Tuple[Union[ChordData, G2ChordData],
                                      Optional[float]]:
    """Chord-frame data plus the requested length (None when absent).

    Curvatures come as a pair or not at all.
    """
    if doc.get("kind") != "chord":
        raise InvalidDataError("expected a chord document")
    c = _as_float(doc, "c")
    alpha = _as_float(doc, "alpha")
    beta = _as_float(doc, "beta")
    has_k = [k for k in ("k1", "k2") if k in doc]
    if len(has_k) == 1:
        raise InvalidDataError("curvatures need both k1 and k2")
    if has_k:
        data = G2ChordData.from_values(c, alpha, beta,
                                       _as_float(doc, "k1"),
                                       _as_float(doc, "k2"))
    else:
        data = ChordData(c, alpha, beta)
    length = _as_float(doc, "length") if "length" in doc else None
    return data, length


def document_for_chord(data, length: Optional[float] = None) -> dict:
    doc = {"version": DOCUMENT_VERSION, "kind": "chord",
           "c": float(data.c), "alpha": float(data.alpha),
           "beta": float(data.beta)}
    if isinstance(data, G2ChordData):
        doc["k1"] = float(data.k1)
        doc["k2"] = float(data.k2)
    if length is not None:
        doc["length"] = float(length)
    return doc


def curve_from_document(doc) -> PiecewiseConstCurve:
    if doc.get("kind") != "segments":
        raise InvalidDataError("expected a segments document")
    raw = doc["segments"]
    if not isinstance(raw, list) or not raw:
        raise InvalidDataError("segments must be a nonempty list of [k, l]")
    segs = []
    for item in raw:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise InvalidDataError(f"bad segment entry {item!r}")
        segs.append((float(item[0]), float(item[1])))
    start = doc.get("start", {})
    if not isinstance(start, dict):
        raise InvalidDataError("start must be a mapping with x, y, tau")
    pose = Pose(float(start.get("x", 0.0)), float(start.get("y", 0.0)),
                float(start.get("tau", 0.0)))
    return PiecewiseConstCurve(tuple(segs), pose)


def document_for_curve(curve: PiecewiseConstCurve) -> dict:
    return {
        "version": DOCUMENT_VERSION,
        "kind": "segments",
        "start": {"x": float(curve.start.x), "y": float(curve.start.y),
                  "tau": float(curve.start.tau)},
        "segments": [[float(k), float(l)] for k, l in curve.segments],
    }


def oval_from_document(doc) -> Tuple[OvalSpec, dict]:
    """(spec, options) with options holding parameter/grid/resolution."""
    if doc.get("kind") != "oval":
        raise InvalidDataError("expected an oval document")
    ks = doc["k"]
    ls = doc["lengths"]
    if not (isinstance(ks, list) and len(ks) == 4
            and isinstance(ls, list) and len(ls) == 4):
        raise InvalidDataError("k and lengths must be lists of 4 numbers")
    spec = OvalSpec(*(float(v) for v in ks), *(float(v) for v in ls))
    opts = {}
    if "parameter" in doc:
        if doc["parameter"] not in ("mu", "nu"):
            raise InvalidDataError("parameter must be 'mu' or 'nu'")
        opts["parameter"] = doc["parameter"]
    if "grid" in doc:
        opts["grid"] = _as_int(doc, "grid")
    if "resolution" in doc:
        opts["resolution"] = _as_float(doc, "resolution")
    return spec, opts


def document_for_oval(spec: OvalSpec) -> dict:
    return {"version": DOCUMENT_VERSION, "kind": "oval",
            "k": [spec.k1, spec.k2, spec.k3, spec.k4],
            "lengths": [spec.L1, spec.L2, spec.L3, spec.L4]}


def _as_int(doc: dict, key: str) -> int:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise InvalidDataError(f"field {key!r} must be an integer, got {v!r}")
    return v


def model_args_from_document(doc) -> dict:
    """kwargs for the endpoint-set builders: k1, k2, L, and optionally
    theta and grid."""
    if doc.get("kind") != "model":
        raise InvalidDataError("expected a model document")
    out = {"k1": _as_float(doc, "k1"), "k2": _as_float(doc, "k2"),
           "L": _as_float(doc, "length")}
    if "theta" in doc:
        out["theta"] = _as_float(doc, "theta")
    if "grid" in doc:
        out["grid"] = _as_int(doc, "grid")
    return out


# ---------------------------------------------------------------------------
# CSV


def format_float(x: float) -> str:
    """Fixed 17-significant-digit decimal; exact for binary doubles."""
    if isinstance(x, bool):
        x = float(x)
    if not math.isfinite(x):
        return repr(float(x))
    return "%.17g" % float(x)


def csv_text(header: Sequence[str], rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(header))
    for row in rows:
        w.writerow([v if isinstance(v, str) else format_float(v)
                    for v in row])
    return buf.getvalue()


def write_csv(path, header: Sequence[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(header, rows))


def read_csv(path) -> Tuple[List[str], List[List[float]]]:
    """Header plus float rows; exact inverse of write_csv for numeric data."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InvalidDataError(f"empty CSV file {path}") from None
        rows = [[float(v) for v in row] for row in reader if row]
    return header, rows
