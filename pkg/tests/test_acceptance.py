"""Acceptance criteria, one test per criterion.

Each test prints a ``criterion N: PASS|FAIL`` line and records it for the
terminal summary.  Criterion 8 states a factorization that does not hold
(see ``test_kernelprobe.py`` for the identity that does); it is marked as a
strict expected failure so the suite reports it honestly.
"""
from __future__ import annotations

import math
import time
from pathlib import Path

import numpy as np
import pytest
from conftest import record

from hardybidisc.cli import main
from hardybidisc.formats import (
    load_symbol,
    matrix_from_dict,
    matrix_to_dict,
    probe_table_from_csv,
    probe_table_to_csv,
    save_symbol,
    singular_values_csv,
    singular_values_from_csv,
    symbols_identical,
    verdict_from_dict,
    verdict_to_dict,
)
from hardybidisc.hardyops import (
    TruncationBox,
    dense_oracle_semicommutator,
    rank_estimate,
    rank2_commutator_identity,
    semicommutator_matrix,
    shift_identity_residual,
)
from hardybidisc.kernelprobe import (
    berezin_toeplitz,
    boundary_probe,
    hankel_kernel_norm,
    hankel_kernel_norm1,
    hankel_product,
    mobius_intertwining_residual,
)
from hardybidisc.randsym import (
    random_symbol1,
    random_symbol2,
    random_violating_pair,
    random_zero_pair,
)
from hardybidisc.symbolcalc import (
    conjugate,
    harmonic_extension,
    make_arc,
    make_tent,
    make_trigpoly,
    tensor,
)
from hardybidisc.theoremcheck import check_thm2_necessary, example_section4


def _interior_points(rng, n, rmax=0.95):
    r = rng.uniform(0.05, rmax, size=(n, 2))
    t = rng.uniform(0.0, 2 * math.pi, size=(n, 2))
    return [tuple(row) for row in r * np.exp(1j * t)]


def test_criterion_01_zero_law():
    rng = np.random.default_rng(1)
    box = TruncationBox(8, 8)
    t0 = time.perf_counter()
    worst = max(semicommutator_matrix(*random_zero_pair(rng), box).max_abs() for _ in range(50))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed <= 30.0
    record(1, ok, f"50 pairs, max |entry| {worst:.2e}, {elapsed:.1f} s")
    assert ok


def test_criterion_02_oracle_equivalence():
    rng = np.random.default_rng(2)
    box = TruncationBox(4, 4)
    worst = 0.0
    for _ in range(20):
        f, g = random_symbol2(rng), random_symbol2(rng)
        S = semicommutator_matrix(f, g, box).entries
        for route in dense_oracle_semicommutator(f, g, box):
            worst = max(worst, float(np.max(np.abs(S - route.entries))))
    ok = worst <= 1e-12
    record(2, ok, f"20 pairs, both routes, max diff {worst:.2e}")
    assert ok


def test_criterion_03_no_finite_rank():
    f = make_trigpoly({(1, 0): 1.0})
    g = make_trigpoly({(-1, 0): 1.0})
    ranks = [rank_estimate(semicommutator_matrix(f, g, TruncationBox(n, n)).entries) for n in (4, 8, 16)]
    exact = ranks == [5, 9, 17]
    rng = np.random.default_rng(3)
    growing = []
    for _ in range(10):
        p, q = random_violating_pair(rng)
        r = [rank_estimate(semicommutator_matrix(p, q, TruncationBox(n, n)).entries) for n in (4, 8, 16)]
        growing.append(r[0] < r[1] < r[2])
    ok = exact and all(growing)
    record(3, ok, f"z1/conj(z1) ranks {ranks}, {sum(growing)}/10 violating pairs strictly increasing")
    assert ok


def test_criterion_04_shift_identity():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(10):
        f, g = random_symbol2(rng), random_symbol2(rng)
        for k in range(3):
            for l in range(3):
                lhs, rhs = shift_identity_residual(f, g, k, l, 8)
                worst = max(worst, float(np.max(np.abs(lhs.entries - rhs.entries))))
    ok = worst <= 1e-12
    record(4, ok, f"10 pairs x 9 shifts, max diff {worst:.2e}")
    assert ok


def test_criterion_05_rank_two_identity():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(10):
        f1, g1 = random_symbol1(rng, 16), random_symbol1(rng, 16)
        lhs, rhs = rank2_commutator_identity(f1, g1, 16)
        worst = max(worst, (lhs - rhs).max_abs())
    ok = worst <= 1e-12
    record(5, ok, f"10 pairs, degree 16, max diff {worst:.2e}")
    assert ok


def test_criterion_06_berezin_harmonic():
    rng = np.random.default_rng(6)
    within, small, worst = True, True, 0.0
    for _ in range(5):
        g = random_symbol2(rng, degree=2)
        for z in _interior_points(rng, 10):
            b = berezin_toeplitz(g, z)
            h = harmonic_extension(g, z)
            d = abs(b.value - h.value)
            worst = max(worst, d)
            within &= d <= b.err + h.err
            small &= d <= 1e-6
    ok = within and small
    record(6, ok, f"5 symbols x 10 points, max diff {worst:.2e}, within bounds {within}")
    assert ok


def test_criterion_07_closed_form_kernel_norm():
    rng = np.random.default_rng(7)
    f = make_trigpoly({(-1, 0): 1.0})
    box = TruncationBox(64, 64)
    worst = 0.0
    for z in _interior_points(rng, 5, rmax=0.8):
        v = hankel_kernel_norm(f, z, box).value
        worst = max(worst, abs(v - math.sqrt(1 - abs(z[0]) ** 2)))
    ok = worst <= 1e-8
    record(7, ok, f"5 points, box (64,64), max diff {worst:.2e}")
    assert ok


@pytest.mark.xfail(strict=True, reason="the stated four-factor product is not an identity; "
                   "the tensor Hankel norm obeys a sum-of-products law instead")
def test_criterion_08_tensor_factorization():
    rng = np.random.default_rng(8)
    B = 256
    f1, f2 = make_tent(math.pi / 4, math.pi / 4, B), make_tent(math.pi / 4, math.pi / 4, B)
    g1, g2 = make_tent(5 * math.pi / 4, math.pi / 4, B), make_tent(5 * math.pi / 4, math.pi / 4, B)
    f, g = tensor(f1, f2), tensor(g1, g2)
    fails, worst = 0, 0.0
    for z in _interior_points(rng, 10, rmax=0.9):
        two = hankel_product(f, g, z)
        parts = [hankel_kernel_norm1(conjugate(f1), z[0]), hankel_kernel_norm1(g1, z[0]),
                 hankel_kernel_norm1(conjugate(f2), z[1]), hankel_kernel_norm1(g2, z[1])]
        prod = math.prod(p.value for p in parts)
        bound = 1e-10 + two.err + sum(p.err for p in parts)
        gap = abs(two.value - prod)
        worst = max(worst, gap / max(two.value, 1e-300))
        fails += gap > bound
    ok = fails == 0
    record(8, ok, f"{fails}/10 points outside 1e-10 + tails, max relative gap {worst:.2f}")
    assert ok


def test_criterion_09_noncompactness_signature():
    f = make_trigpoly({(1, 0): 1.0})
    g = make_trigpoly({(-1, 0): 1.0})
    table = boundary_probe(f, g, radii=(0.5, 0.9, 0.99), angles_per_shell=4)
    mixed = [row.hankel_product for row in table.rows if row.r1 == 0.5 and row.r2 in (0.9, 0.99)]
    v = check_thm2_necessary(f, g)
    at0 = v.get("condition1_value_at_0").value
    ok = (len(mixed) > 0 and min(mixed) >= 0.5 and v.certified
          and v.conclusion.value == "NonzeroNonCompactEvidence" and at0 == 1)
    record(9, ok, f"min mixed-shell value {min(mixed):.4f}, certified {v.certified}, product at 0 = {at0}")
    assert ok


def test_criterion_10_compact_nonzero_example():
    t0 = time.perf_counter()
    v = example_section4()
    elapsed = time.perf_counter() - t0
    w = v.get("commutator_witness")
    a = w.value > 10 * w.err
    b = all(np.all(np.diff(v.get(n).value) < 0) and
            all(x - y > 2 * v.get(n).err for x, y in zip(v.get(n).value, v.get(n).value[1:]))
            for n in ("probe_fg_maxima", "probe_gf_maxima"))
    c = v.get("tail@64").value < v.get("tail@16").value / 2
    r16, r64 = v.get("sigma25_ratio").value
    d = r64 < r16
    ok = a and b and c and d and elapsed <= 180.0
    record(10, ok, f"(a) {w.value / w.err:.0f}x err {a}, (b) {b}, (c) {c}, (d) {d}, {elapsed:.1f} s")
    assert ok


def test_criterion_11_mobius_convergence():
    # the pullback bandwidth grows with the box; the margin is the symbol's own degree
    f = make_trigpoly({(1, 0): 1.0, (0, -1): 0.5})
    z = (0.5, 0.0)
    r16 = mobius_intertwining_residual(f, z, TruncationBox(16, 16), 8)
    r32 = mobius_intertwining_residual(f, z, TruncationBox(32, 32), 16)
    ok = r32 <= r16 / 2
    record(11, ok, f"residual {r16:.2e} at box 16, {r32:.2e} at box 32 (pullback bandwidth = box/2)")
    assert ok


def _run(tmp: Path, *argv) -> dict:
    code = main([*argv, "--out", str(tmp), "--seed", "11"])
    assert code == 0
    return {p.name: p.read_bytes() for p in sorted(tmp.iterdir()) if p.name != "metadata.json"}


def test_criterion_12_determinism_and_round_trip(tmp_path):
    sym = tmp_path / "sym"
    sym.mkdir()
    save_symbol(make_trigpoly({(1, 0): 1.0, (0, -1): 0.5j}), sym / "f.json")
    save_symbol(make_trigpoly({(-1, 0): 1.0, (1, 1): 2.0}), sym / "g.json")
    f, g = f"--f={sym / 'f.json'}", f"--g={sym / 'g.json'}"
    runs = [
        ("suite", "zero-law", "--count", "5"),
        ("op", "semicomm", f, g, "--box", "4"),
        ("probe", "boundary", f, g, "--angles", "2"),
        ("check", "thm1", f, g),
    ]
    same = True
    for i, argv in enumerate(runs):
        a = _run(tmp_path / f"a{i}", *argv)
        b = _run(tmp_path / f"b{i}", *argv)
        same &= a == b and len(a) > 0

    # every export format re-imports losslessly
    lossless = True
    for s in (make_tent(0.3, 0.7, 64), make_arc(1.0, 2.5, 32), tensor(make_tent(0.1, 0.2, 16), make_arc(0, 1, 8)),
              conjugate(make_tent(2.0, 0.5, 16)), random_symbol2(np.random.default_rng(12)),
              random_symbol1(np.random.default_rng(13))):
        save_symbol(s, tmp_path / "s.json")
        lossless &= symbols_identical(load_symbol(tmp_path / "s.json"), s)
    A = semicommutator_matrix(*random_zero_pair(np.random.default_rng(14)), TruncationBox(3, 3))
    B = matrix_from_dict(matrix_to_dict(A))
    lossless &= A.entries.tobytes() == B.entries.tobytes() and np.array_equal(A.rows, B.rows)
    sv = np.random.default_rng(15).random(7)
    lossless &= singular_values_from_csv(singular_values_csv(sv, 15)).tobytes() == sv.tobytes()
    table = boundary_probe(make_trigpoly({(1, 0): 1.0}), make_trigpoly({(-1, 1): 1.0}), (0.5, 0.9), 2)
    lossless &= probe_table_from_csv(probe_table_to_csv(table, 16)) == table
    v = check_thm2_necessary(make_trigpoly({(1, 0): 1.0}), make_trigpoly({(-1, 0): 1.0}))
    lossless &= verdict_from_dict(verdict_to_dict(v)) == v
    ok = bool(same and lossless)
    record(12, ok, f"{len(runs)} commands byte-identical {same}, round trips lossless {lossless}")
    assert ok
