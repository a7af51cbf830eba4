"""JSON and CSV exports re-import losslessly; malformed input is reported."""
from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardybidisc.errors import SymbolFormatError
from hardybidisc.formats import (
    load_symbol,
    matrix_from_dict,
    matrix_to_dict,
    probe_table_from_csv,
    probe_table_to_csv,
    save_symbol,
    singular_values_csv,
    singular_values_from_csv,
    symbol_from_dict,
    symbol_to_dict,
    symbols_identical,
    verdict_from_dict,
    verdict_to_dict,
)
from hardybidisc.hardyops import TruncationBox, hankel_matrix
from hardybidisc.kernelprobe import boundary_probe
from hardybidisc.symbolcalc import (
    Symbol1,
    Symbol2,
    band_limit,
    conjugate,
    make_arc,
    make_tent,
    make_trigpoly,
    tensor,
)
from hardybidisc.theoremcheck import check_thm1, check_thm3

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
coef = st.builds(complex, finite, finite).filter(lambda c: c != 0)
poly2 = st.dictionaries(st.tuples(st.integers(-50, 50), st.integers(-50, 50)), coef,
                        min_size=1, max_size=10).map(make_trigpoly)
poly1 = st.dictionaries(st.integers(-50, 50), coef, min_size=1, max_size=10).map(make_trigpoly)


@given(st.one_of(poly1, poly2))
def test_explicit_symbol_round_trip(f):
    g = symbol_from_dict(json.loads(json.dumps(symbol_to_dict(f))))
    assert symbols_identical(f, g)


@pytest.mark.parametrize("f", [
    make_tent(0.3, 0.7, 64),
    make_arc(1.0, 2.5, 32),
    make_arc(0.0, 2 * math.pi, 8),
    tensor(make_tent(0.1, 0.2, 16), make_arc(0.0, 1.0, 8)),
    conjugate(make_tent(2.0, 0.5, 16)),
    conjugate(tensor(make_tent(0.1, 0.2, 16), make_tent(1.0, 0.5, 16))),
    band_limit(make_trigpoly({(9, 0): 1.0, (1, 1): 2.0}), 4),
], ids=["tent", "arc", "circle", "tensor", "conj", "conj-tensor", "cut"])
def test_structural_symbol_round_trip(f, tmp_path):
    save_symbol(f, tmp_path / "f.json")
    g = load_symbol(tmp_path / "f.json")
    assert symbols_identical(f, g)
    assert (f.descriptor is None) == (g.descriptor is None)


def test_empty_symbols_keep_dimension(tmp_path):
    for f in (Symbol1.build([], []), Symbol2.build(np.zeros((0, 2), int), [])):
        save_symbol(f, tmp_path / "e.json")
        assert type(load_symbol(tmp_path / "e.json")) is type(f)


@pytest.mark.parametrize("text,needle", [
    ('{"type": "tent", "a": 1.0}', "missing field 'w'"),
    ('{"type": "explicit", "terms": [{"m": 1.5, "re": 1, "im": 0}]}', "terms[0]"),
    ('{"type": "blob"}', "unknown symbol type"),
    ('{"type": "tent", "a": 0, "w": 1, "bandwidth": -3}', "bandwidth"),
    ('{"type": "tent",\n "a": 1.0,,}', "line 2"),
])
def test_malformed_symbol_files(text, needle, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(text)
    with pytest.raises(SymbolFormatError) as exc:
        load_symbol(p)
    assert needle in str(exc.value)


def test_matrix_round_trip():
    f = make_trigpoly({(-1, 2): 1.5 - 2j, (1, -1): 1 / 3})
    H = hankel_matrix(f, TruncationBox(2, 3))
    d = json.loads(json.dumps(matrix_to_dict(H)))
    G = matrix_from_dict(d)
    assert G.entries.tobytes() == H.entries.tobytes()
    assert np.array_equal(G.rows, H.rows) and np.array_equal(G.cols, H.cols)
    assert G.exactness == H.exactness
    with pytest.raises(SymbolFormatError):
        matrix_from_dict({**d, "entries": d["entries"][:-1]})


def test_singular_values_csv():
    s = np.array([3.0, 1 / 3, 1e-300, 0.0])
    text = singular_values_csv(s, seed=4)
    assert text.startswith("# seed=4\nindex,sigma\n")
    assert singular_values_from_csv(text).tobytes() == s.tobytes()
    with pytest.raises(SymbolFormatError):
        singular_values_from_csv("a,b\n1,2\n")


def test_probe_table_csv_round_trip():
    f, g = make_trigpoly({(1, 0): 1.0}), make_trigpoly({(-1, 1): 1 / 3})
    t = boundary_probe(f, g, (0.5, 0.9), 3)
    text = probe_table_to_csv(t, seed=9)
    assert text.splitlines()[0] == "# seed=9"
    assert probe_table_from_csv(text) == t
    bad = text.replace("r1,theta1", "x,theta1")
    with pytest.raises(SymbolFormatError):
        probe_table_from_csv(bad)


def test_verdict_round_trip():
    v = check_thm1(make_trigpoly({(1, 0): 1.0}), make_trigpoly({(-1, 0): 1.0}))
    assert verdict_from_dict(json.loads(json.dumps(verdict_to_dict(v)))) == v
    one = make_trigpoly({0: 1.0})
    w = check_thm3(make_trigpoly({1: 1.0}), one, make_trigpoly({-1: 1.0}), one)
    assert verdict_from_dict(json.loads(json.dumps(verdict_to_dict(w)))) == w
