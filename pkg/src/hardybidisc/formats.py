"""JSON and CSV exchange formats.

Floats are written with ``repr`` (shortest round-trip form) so every
export re-imports bit-exactly.  Complex values inside verdict evidence are
encoded as ``{"re": x, "im": y}``.
"""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import SymbolFormatError
from .hardyops import OperatorMatrix
from .kernelprobe import CSV_COLUMNS, ProbeRow, ProbeTable
from .symbolcalc import (
    DEFAULT_BANDWIDTH,
    Symbol1,
    Symbol2,
    conjugate,
    make_arc,
    make_tent,
    tensor,
)
from .theoremcheck import Conclusion, Evidence, Verdict


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------

def atomic_write(path, text: str) -> Path:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, allow_nan=True) + "\n"


def load_json(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SymbolFormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


# ---------------------------------------------------------------------------
# symbols
# ---------------------------------------------------------------------------

def symbol_to_dict(f: Symbol1 | Symbol2) -> dict:
    """Structural symbols keep their constructor; others are listed term by term."""
    kind = f.descriptor[0] if f.descriptor else None
    if kind == "tent":
        return {"type": "tent", "a": f.descriptor[1], "w": f.descriptor[2], "bandwidth": f.bandwidth}
    if kind == "arc":
        return {"type": "arc", "a": f.descriptor[1], "b": f.descriptor[2], "bandwidth": f.bandwidth}
    if kind == "tensor":
        return {"type": "tensor", "f1": symbol_to_dict(f.descriptor[1]),
                "f2": symbol_to_dict(f.descriptor[2])}
    if kind == "conjugate" and f.descriptor[1].descriptor:
        return {"type": "conjugate", "f": symbol_to_dict(f.descriptor[1])}
    if f.ndim == 1:
        terms = [{"m": int(m), "re": float(c.real), "im": float(c.imag)} for m, c in zip(f.freqs, f.coefs)]
    else:
        terms = [{"m1": int(m[0]), "m2": int(m[1]), "re": float(c.real), "im": float(c.imag)}
                 for m, c in zip(f.freqs, f.coefs)]
    out = {"type": "explicit", "terms": terms}
    if not f.is_exact:
        out["l2_tail"] = f.l2_tail
        out["l1_tail"] = f.l1_tail
    if f.bandwidth is not None:
        out["bandwidth"] = f.bandwidth
    return out


def _field(d: dict, key: str, kind, where: str):
    if key not in d:
        raise SymbolFormatError(f"{where}: missing field {key!r}")
    v = d[key]
    if kind is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise SymbolFormatError(f"{where}: field {key!r} must be an integer, got {v!r}")
    if kind is float and (isinstance(v, bool) or not isinstance(v, (int, float))):
        raise SymbolFormatError(f"{where}: field {key!r} must be a number, got {v!r}")
    return v


def symbol_from_dict(d: dict, where: str = "symbol"):
    if not isinstance(d, dict) or "type" not in d:
        raise SymbolFormatError(f"{where}: expected an object with a 'type' field")
    kind = d["type"]
    bw = d.get("bandwidth")
    if bw is not None and (isinstance(bw, bool) or not isinstance(bw, int) or bw < 0):
        raise SymbolFormatError(f"{where}: 'bandwidth' must be a nonnegative integer")
    if kind == "tent":
        return make_tent(float(_field(d, "a", float, where)), float(_field(d, "w", float, where)),
                         DEFAULT_BANDWIDTH if bw is None else bw)
    if kind == "arc":
        return make_arc(float(_field(d, "a", float, where)), float(_field(d, "b", float, where)),
                        DEFAULT_BANDWIDTH if bw is None else bw)
    if kind == "tensor":
        f1 = symbol_from_dict(_field(d, "f1", dict, where), f"{where}.f1")
        f2 = symbol_from_dict(_field(d, "f2", dict, where), f"{where}.f2")
        if f1.ndim != 1 or f2.ndim != 1:
            raise SymbolFormatError(f"{where}: tensor factors must be one-variable symbols")
        return tensor(f1, f2)
    if kind == "conjugate":
        return conjugate(symbol_from_dict(_field(d, "f", dict, where), f"{where}.f"))
    if kind != "explicit":
        raise SymbolFormatError(f"{where}: unknown symbol type {kind!r}")
    terms = _field(d, "terms", list, where)
    if not isinstance(terms, list):
        raise SymbolFormatError(f"{where}: 'terms' must be a list")
    two = any("m1" in t for t in terms if isinstance(t, dict))
    freqs, coefs = [], []
    for i, t in enumerate(terms):
        w = f"{where}.terms[{i}]"
        if not isinstance(t, dict):
            raise SymbolFormatError(f"{w}: expected an object")
        if two:
            freqs.append((_field(t, "m1", int, w), _field(t, "m2", int, w)))
        else:
            freqs.append(_field(t, "m", int, w))
        coefs.append(complex(_field(t, "re", float, w), _field(t, "im", float, w)))
    kw = {"l2_tail": float(d.get("l2_tail", 0.0)), "l1_tail": float(d.get("l1_tail", 0.0)),
          "bandwidth": bw}
    if two or (not terms and d.get("ndim", 2) == 2):
        return Symbol2.build(np.array(freqs, dtype=np.int64).reshape(-1, 2), coefs, **kw)
    return Symbol1.build(freqs, coefs, **kw)


def save_symbol(f, path, extra: dict | None = None) -> Path:
    d = symbol_to_dict(f)
    if d["type"] == "explicit" and not len(f.freqs):
        d["ndim"] = f.ndim
    if extra:
        d = {**extra, **d}
    return atomic_write(path, dumps(d))


def load_symbol(path):
    return symbol_from_dict(load_json(path), str(path))


def symbols_identical(f, g) -> bool:
    """Same class, frequencies, bit-identical coefficients and tails."""
    return (type(f) is type(g)
            and np.array_equal(f.freqs, g.freqs)
            and f.coefs.tobytes() == g.coefs.tobytes()
            and f.l2_tail == g.l2_tail and f.l1_tail == g.l1_tail)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def matrix_to_dict(A: OperatorMatrix) -> dict:
    E = A.entries
    return {
        "rows": A.rows.tolist(),
        "cols": A.cols.tolist(),
        "entries": [[float(c.real), float(c.imag)] for c in E.reshape(-1)],
        "shape": list(E.shape),
        "exactness": A.exactness,
        "err": float(A.err),
    }


def matrix_from_dict(d: dict) -> OperatorMatrix:
    try:
        rows = np.asarray(d["rows"], dtype=np.int64)
        cols = np.asarray(d["cols"], dtype=np.int64)
        flat = np.asarray(d["entries"], dtype=float).reshape(-1, 2)
    except (KeyError, ValueError, TypeError) as exc:
        raise SymbolFormatError(f"matrix: {exc}") from None
    if rows.ndim == 1:
        rows = rows.reshape(-1, 1)
    if cols.ndim == 1:
        cols = cols.reshape(-1, 1)
    if flat.shape[0] != rows.shape[0] * cols.shape[0]:
        raise SymbolFormatError("matrix: entry count does not match rows x cols")
    E = (flat[:, 0] + 1j * flat[:, 1]).reshape(rows.shape[0], cols.shape[0])
    exact = d.get("exactness", "exact") == "exact"
    return OperatorMatrix(E, rows, cols, exact, float(d.get("err", 0.0)))


def singular_values_csv(s, seed: int | None = None) -> str:
    buf = io.StringIO()
    if seed is not None:
        buf.write(f"# seed={seed}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("index", "sigma"))
    for i, v in enumerate(s):
        w.writerow((i, repr(float(v))))
    return buf.getvalue()


def _data_lines(text: str) -> list:
    return [line for line in text.splitlines() if line and not line.startswith("#")]


def singular_values_from_csv(text: str) -> np.ndarray:
    rows = list(csv.reader(_data_lines(text)))
    if not rows or rows[0] != ["index", "sigma"]:
        raise SymbolFormatError("singular values: header 'index,sigma' expected")
    return np.array([float(r[1]) for r in rows[1:]])


# ---------------------------------------------------------------------------
# probe tables
# ---------------------------------------------------------------------------

def probe_table_to_csv(table: ProbeTable, seed: int | None = None) -> str:
    return table.to_csv(None if seed is None else f"seed={seed}")


def probe_table_from_csv(text: str) -> ProbeTable:
    rows = list(csv.reader(_data_lines(text)))
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise SymbolFormatError("probe table: header " + ",".join(CSV_COLUMNS) + " expected")
    out = []
    for i, r in enumerate(rows[1:], start=2):
        if len(r) != len(CSV_COLUMNS):
            raise SymbolFormatError(f"probe table: row {i} has {len(r)} fields")
        v = [float(x) for x in r]
        out.append(ProbeRow(v[0], v[1], v[2], v[3], v[4], complex(v[5], v[6]), v[7]))
    return ProbeTable(tuple(out))


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

def _encode(v):
    if isinstance(v, (bool, str)) or v is None:
        return v
    if isinstance(v, (complex, np.complexfloating)):
        return {"re": float(v.real), "im": float(v.imag)}
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_encode(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _encode(x) for k, x in v.items()}
    raise TypeError(f"cannot encode {type(v).__name__}")


def _decode(v):
    if isinstance(v, dict):
        if set(v) == {"re", "im"}:
            return complex(v["re"], v["im"])
        return {k: _decode(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_decode(x) for x in v]
    return v


def verdict_to_dict(v: Verdict) -> dict:
    return {
        "conclusion": v.conclusion.value,
        "certified": bool(v.certified),
        "evidence": [{"name": e.name, "value": _encode(e.value), "err": _encode(e.err), "op": e.op}
                     for e in v.evidence],
        "notes": list(v.notes),
    }


def verdict_from_dict(d: dict) -> Verdict:
    try:
        ev = tuple(Evidence(e["name"], _decode(e["value"]), e["err"], e["op"]) for e in d["evidence"])
        return Verdict(Conclusion(d["conclusion"]), ev, bool(d["certified"]), tuple(d.get("notes", ())))
    except (KeyError, ValueError, TypeError) as exc:
        raise SymbolFormatError(f"verdict: {exc}") from None

