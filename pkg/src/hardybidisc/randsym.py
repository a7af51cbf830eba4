"""Seeded random symbols for test suites and the CLI."""
from __future__ import annotations

import numpy as np

from .symbolcalc import Symbol1, Symbol2, conjugate, is_analytic_in


def _coefs(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def random_symbol2(rng: np.random.Generator, degree: int = 3, density: float = 0.5,
                   lo=(None, None), hi=(None, None)) -> Symbol2:
    """Sparse trigonometric polynomial with ``|m_i| <= degree``.

    ``lo``/``hi`` optionally clamp the frequency range per axis, which is how
    analytic or co-analytic factors are produced.
    """
    r1 = range(degree * -1 if lo[0] is None else lo[0], (degree if hi[0] is None else hi[0]) + 1)
    r2 = range(degree * -1 if lo[1] is None else lo[1], (degree if hi[1] is None else hi[1]) + 1)
    freqs = np.array([(a, b) for a in r1 for b in r2], dtype=np.int64).reshape(-1, 2)
    keep = rng.random(len(freqs)) < density
    if not keep.any():
        keep[rng.integers(len(freqs))] = True
    return Symbol2.build(freqs[keep], _coefs(rng, int(keep.sum())))


def random_symbol1(rng: np.random.Generator, degree: int = 16, density: float = 0.5) -> Symbol1:
    freqs = np.arange(-degree, degree + 1)
    keep = rng.random(len(freqs)) < density
    if not keep.any():
        keep[rng.integers(len(freqs))] = True
    return Symbol1.build(freqs[keep], _coefs(rng, int(keep.sum())))


def random_zero_pair(rng: np.random.Generator, degree: int = 3):
    """Pair with ``conj(f)`` or ``g`` analytic in each variable."""
    lo_f, hi_f, lo_g = [None, None], [None, None], [None, None]
    for axis in range(2):
        if rng.random() < 0.5:
            hi_f[axis] = 0  # conj(f) analytic in this variable
        else:
            lo_g[axis] = 0  # g analytic in this variable
    f = random_symbol2(rng, degree, lo=tuple(lo_f), hi=tuple(hi_f))
    g = random_symbol2(rng, degree, lo=tuple(lo_g))
    return f, g


def random_violating_pair(rng: np.random.Generator, degree: int = 3):
    """Pair for which neither ``conj(f)`` nor ``g`` is analytic in some variable."""
    while True:
        f = random_symbol2(rng, degree)
        g = random_symbol2(rng, degree)
        fb = conjugate(f)
        bad = [not (is_analytic_in(fb, i) or is_analytic_in(g, i)) for i in (1, 2)]
        if any(bad):
            return f, g
