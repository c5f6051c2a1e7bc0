"""JSON helpers for code parameters, received words and decoding results.

Field elements are stored as base-q digit lists, constant term first.
"""
from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

import numpy as np

from .codes import IlrsCode, LilrsCode, SrsCode, SubspaceTuple
from .field import GF


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def _field(q: int, m: int, prim_poly: tuple | None, r: int) -> GF:
    return GF(q, m, list(prim_poly) if prim_poly else None, r)


def field_from_dict(d: dict) -> GF:
    poly = d.get("prim_poly")
    return _field(int(d["q"]), int(d["m"]), tuple(poly) if poly else None, int(d.get("r", 1)))


def elems_from_digits(F: GF, values) -> np.ndarray:
    """Nested lists of digit lists (or plain ints) to an integer array."""
    def conv(v):
        if isinstance(v, list) and (not v or not isinstance(v[0], list)):
            return F.from_digits(v) if v else 0
        if isinstance(v, list):
            return [conv(x) for x in v]
        return int(v)
    return np.array(conv(values), dtype=np.int64)


def elems_to_digits(F: GF, values):
    arr = np.asarray(values)
    if arr.ndim == 0:
        return F.to_digits(int(arr))
    return [elems_to_digits(F, x) for x in arr]


def code_from_dict(d: dict) -> IlrsCode:
    """ILRS code from parameters; a and beta default to the standard choice."""
    F = field_from_dict(d)
    part = tuple(d.get("n_partition") or d["n"])
    a = [F.from_digits(x) if isinstance(x, list) else int(x) for x in d["a"]] if "a" in d else None
    beta = ([F.from_digits(x) if isinstance(x, list) else int(x) for x in d["beta"]]
            if "beta" in d else None)
    return IlrsCode.build(F, part, int(d["k"]), int(d["s"]), a=a, beta=beta)


def code_params(d: dict) -> dict:
    return {"q": int(d["q"]), "m": int(d["m"]), "ell": len(d.get("n_partition") or d["n"]),
            "s": int(d["s"]), "k": int(d["k"]), "n_partition": list(d.get("n_partition") or d["n"])}


def make_code(d: dict, family: str):
    inner = code_from_dict(d)
    if family == "ilrs":
        return inner
    if family == "isrs":
        return SrsCode.from_ilrs(inner)
    if family in ("lilrs", "lilrs-complementary"):
        return LilrsCode(inner)
    raise ValueError(f"unknown family {family!r}")


def matrix_to_dict(F: GF, M, partition=None) -> dict:
    M = np.atleast_2d(np.asarray(M, dtype=np.int64))
    rows, cols = M.shape
    return {"rows": rows, "cols": cols, "partition": list(partition or [cols]),
            "entries": elems_to_digits(F, M)}


def matrix_from_dict(F: GF, d: dict) -> np.ndarray:
    M = elems_from_digits(F, d["entries"]).reshape(int(d["rows"]), int(d["cols"]))
    if sum(d.get("partition") or [M.shape[1]]) != M.shape[1]:
        raise ValueError("partition does not match the column count")
    return M


def word_from_dict(F: GF, d: dict, family: str):
    """Received word: a matrix (``{"R": ...}`` or the rows/cols/entries form)
    for sum-rank families, a subspace tuple otherwise."""
    if family in ("ilrs", "isrs"):
        return matrix_from_dict(F, d) if "entries" in d else elems_from_digits(F, d["R"])
    return SubspaceTuple.from_dict(d)


def word_to_dict(F: GF, word, partition=None) -> dict:
    if isinstance(word, SubspaceTuple):
        return word.to_dict()
    return matrix_to_dict(F, word, partition)


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
