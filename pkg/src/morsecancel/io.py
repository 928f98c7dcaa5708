"""JSON file formats.

* complex:  ``{"facets": [[0, 1, 2], ...]}``
* matching: ``{"pairs": [[[1], [0, 1]], ...]}`` with (alpha, beta) vertex lists
* matrix:   ``{"rows": [...], "cols": [...], "entries": [[...], ...]}``;
  simplex labels are vertex lists, fixture labels are strings
* pair:     ``{"sigma0": [...], "tau0": [...]}`` or ``{"row0": "sigma_3", "col0": "eta_8"}``
"""

from __future__ import annotations

import json
from pathlib import Path

from .complex import SimplicialComplex, build_complex, make_simplex
from .gvf import DiscreteVectorField
from .matrix import IntegerMatrix


def load_json(path) -> object:
    with open(path) as fh:
        return json.load(fh)


def dump_json(obj, path=None, **kw) -> str:
    text = json.dumps(obj, **kw)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def complex_to_json(K: SimplicialComplex) -> dict:
    return {"facets": [list(s) for s in K.facets()]}


def complex_from_json(obj) -> SimplicialComplex:
    if not isinstance(obj, dict) or not isinstance(obj.get("facets"), list):
        raise ValueError('complex JSON needs a "facets" list')
    return build_complex(obj["facets"])


def matching_to_json(V: DiscreteVectorField) -> dict:
    return {"pairs": [[list(a), list(b)] for a, b in V]}


def matching_from_json(obj) -> DiscreteVectorField:
    if not isinstance(obj, dict) or not isinstance(obj.get("pairs"), list):
        raise ValueError('matching JSON needs a "pairs" list')
    pairs = []
    for p in obj["pairs"]:
        if not isinstance(p, list) or len(p) != 2:
            raise ValueError(f"bad pair {p!r}")
        pairs.append((make_simplex(p[0]), make_simplex(p[1])))
    return DiscreteVectorField(pairs)


def _label_out(label):
    return list(label) if isinstance(label, tuple) else label


def _label_in(label):
    if isinstance(label, list):
        return tuple(label)
    if isinstance(label, (str, int)):
        return label
    raise ValueError(f"bad matrix label {label!r}")


def matrix_to_json(M: IntegerMatrix) -> dict:
    return {
        "rows": [_label_out(r) for r in M.rows],
        "cols": [_label_out(c) for c in M.cols],
        "entries": M.to_lists(),
    }


def matrix_from_json(obj) -> IntegerMatrix:
    try:
        rows = [_label_in(r) for r in obj["rows"]]
        cols = [_label_in(c) for c in obj["cols"]]
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"matrix JSON needs rows, cols and entries: {exc}") from None
    for r in entries:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValueError(f"matrix entries must be integers, got {x!r}")
    return IntegerMatrix(rows, cols, entries)


def pair_from_json(obj) -> tuple:
    """(sigma0, tau0) simplices, or (row0, col0) labels for fixture mode."""
    if "sigma0" in obj and "tau0" in obj:
        return make_simplex(obj["sigma0"]), make_simplex(obj["tau0"])
    if "row0" in obj and "col0" in obj:
        return _label_in(obj["row0"]), _label_in(obj["col0"])
    raise ValueError('pair JSON needs "sigma0"/"tau0" or "row0"/"col0"')
