"""Symbols on the circle and the bitorus, stored by their Fourier coefficients.

Conventions used everywhere in the package:

* ``f_m = (2 pi)^-2 \\int\\int f(e^{i t1}, e^{i t2}) e^{-i (m1 t1 + m2 t2)} dt``,
  so that ``f = sum_m f_m e^{i m.t}``.
* In a quadrant tag the first sign refers to the ``z1`` frequency and the
  second to ``z2``.  ``P`` means ``>= 0`` and ``M`` means ``< 0``; zero
  frequencies therefore sit on the analytic side.
* The harmonic extension uses ``u(k) = z**k`` for ``k >= 0`` and
  ``conj(z)**|k|`` for ``k < 0`` in each variable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import DegenerateArcError, DivergenceError

TWO_PI = 2.0 * math.pi
DEFAULT_BANDWIDTH = 256
QUADRANTS = ("PP", "PM", "MP", "MM")
WIRTINGER = ("z1", "zbar1", "z2", "zbar2")


class Estimate(NamedTuple):
    value: complex
    err: float


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


def _keys(freqs, ndim):
    """Order-preserving int64 keys for frequency rows."""
    if ndim == 1:
        return freqs[:, 0]
    lo = freqs[:, 1].min()
    span = int(freqs[:, 1].max() - lo) + 1
    return freqs[:, 0] * span + (freqs[:, 1] - lo)


def _canonical(freqs, coefs, ndim):
    """Merge duplicate frequencies, drop exact zeros, sort lexicographically."""
    freqs = np.asarray(freqs, dtype=np.int64).reshape(-1, ndim)
    coefs = np.asarray(coefs, dtype=np.complex128).reshape(-1)
    if freqs.shape[0] != coefs.shape[0]:
        raise ValueError("frequency and coefficient counts differ")
    if freqs.shape[0]:
        key = _keys(freqs, ndim)
        if not np.all(key[1:] > key[:-1]):
            order = np.argsort(key, kind="stable")
            freqs, coefs, key = freqs[order], coefs[order], key[order]
            start = np.concatenate(([True], key[1:] != key[:-1]))
            if not start.all():
                idx = np.cumsum(start) - 1
                acc = np.zeros(int(idx[-1]) + 1, dtype=np.complex128)
                np.add.at(acc, idx, coefs)
                freqs, coefs = freqs[start], acc
        keep = coefs != 0
        freqs, coefs = freqs[keep], coefs[keep]
    return _frozen(freqs), _frozen(coefs)


def _circ_dist(theta, a):
    d = np.mod(np.asarray(theta, dtype=float) - a, TWO_PI)
    return np.minimum(d, TWO_PI - d)


@dataclass(frozen=True, eq=False)
class Symbol1:
    """A function on the unit circle.

    ``l2_tail`` bounds the l2 norm of the omitted coefficients and
    ``l1_tail`` their l1 norm (``inf`` when the series is not absolutely
    summable).  ``bandwidth`` is set for structural symbols, whose stored
    frequencies are exactly ``|n| <= bandwidth``.
    """

    freqs: np.ndarray
    coefs: np.ndarray
    descriptor: tuple | None = None
    support_arcs: tuple | None = None
    l2_tail: float = 0.0
    l1_tail: float = 0.0
    bandwidth: int | None = None

    ndim = 1

    @classmethod
    def from_terms(cls, terms, **kw) -> Symbol1:
        terms = list(terms)
        freqs = [int(m) for m, _ in terms]
        coefs = [complex(c) for _, c in terms]
        return cls.build(freqs, coefs, **kw)

    @classmethod
    def build(cls, freqs, coefs, **kw) -> Symbol1:
        fr, co = _canonical(freqs, coefs, 1)
        return cls(fr.reshape(-1), co, **kw)

    @property
    def is_exact(self) -> bool:
        return self.l2_tail == 0.0

    @cached_property
    def lookup(self) -> dict:
        return {int(m): complex(c) for m, c in zip(self.freqs, self.coefs)}

    def coeff(self, m: int) -> complex:
        return self.lookup.get(int(m), 0j)

    def dense(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients at frequencies ``lo..hi`` as a dense vector."""
        out = np.zeros(hi - lo + 1, dtype=np.complex128)
        sel = (self.freqs >= lo) & (self.freqs <= hi)
        out[self.freqs[sel] - lo] = self.coefs[sel]
        return out

    @property
    def fmin(self) -> int:
        return int(self.freqs[0]) if len(self.freqs) else 0

    @property
    def fmax(self) -> int:
        return int(self.freqs[-1]) if len(self.freqs) else 0

    @cached_property
    def l1_stored(self) -> float:
        return float(np.sum(np.abs(self.coefs)))

    @cached_property
    def l2_stored(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coefs) ** 2)))

    @property
    def sup_bound(self) -> float:
        """Upper bound for the sup norm on the circle."""
        kind = self.descriptor[0] if self.descriptor else "explicit"
        if kind in ("tent", "arc"):
            return 1.0
        if kind == "conjugate":
            return self.descriptor[1].sup_bound
        if kind == "product":
            return self.descriptor[1].sup_bound * self.descriptor[2].sup_bound
        return self.l1_stored + self.l1_tail

    def is_zero(self) -> bool:
        return len(self.coefs) == 0 and self.l2_tail == 0.0

    def torus_values(self, theta) -> np.ndarray:
        """Pointwise values at ``e^{i theta}``; closed form for structural symbols."""
        theta = np.asarray(theta, dtype=float)
        kind = self.descriptor[0] if self.descriptor else "explicit"
        if kind == "tent":
            _, a, w = self.descriptor
            return np.maximum(0.0, 1.0 - _circ_dist(theta, a) / w).astype(np.complex128)
        if kind == "arc":
            _, a, b = self.descriptor
            L = _arc_length(a, b)
            return (np.mod(theta - a, TWO_PI) <= L).astype(np.complex128)
        if kind == "conjugate":
            return np.conj(self.descriptor[1].torus_values(theta))
        if kind == "product":
            return self.descriptor[1].torus_values(theta) * self.descriptor[2].torus_values(theta)
        e = np.exp(1j * np.multiply.outer(theta, self.freqs.astype(float)))
        return e @ self.coefs


@dataclass(frozen=True, eq=False)
class Symbol2:
    """A function on the bitorus.

    Fields mirror :class:`Symbol1`; ``freqs`` has shape ``(n, 2)`` and is
    sorted lexicographically (``m1`` major).
    """

    freqs: np.ndarray
    coefs: np.ndarray
    descriptor: tuple | None = None
    l2_tail: float = 0.0
    l1_tail: float = 0.0
    bandwidth: int | None = None

    ndim = 2

    @classmethod
    def from_terms(cls, terms, **kw) -> Symbol2:
        terms = list(terms)
        freqs = [(int(m[0]), int(m[1])) for m, _ in terms]
        coefs = [complex(c) for _, c in terms]
        return cls.build(freqs, coefs, **kw)

    @classmethod
    def build(cls, freqs, coefs, **kw) -> Symbol2:
        fr, co = _canonical(freqs, coefs, 2)
        return cls(fr, co, **kw)

    @property
    def is_exact(self) -> bool:
        return self.l2_tail == 0.0

    @cached_property
    def lookup(self) -> dict:
        return {(int(m[0]), int(m[1])): complex(c) for m, c in zip(self.freqs, self.coefs)}

    def coeff(self, m) -> complex:
        return self.lookup.get((int(m[0]), int(m[1])), 0j)

    @property
    def extent(self) -> tuple[int, int, int, int]:
        """``(min m1, max m1, min m2, max m2)`` over stored frequencies."""
        if not len(self.freqs):
            return (0, 0, 0, 0)
        lo = self.freqs.min(axis=0)
        hi = self.freqs.max(axis=0)
        return (int(lo[0]), int(hi[0]), int(lo[1]), int(hi[1]))

    @cached_property
    def grid(self) -> tuple[np.ndarray, np.ndarray]:
        """Dense coefficient grid and the offset of frequency (0, 0) in it."""
        lo1, hi1, lo2, hi2 = self.extent
        g = np.zeros((hi1 - lo1 + 1, hi2 - lo2 + 1), dtype=np.complex128)
        if len(self.freqs):
            g[self.freqs[:, 0] - lo1, self.freqs[:, 1] - lo2] = self.coefs
        g.flags.writeable = False
        return g, np.array([-lo1, -lo2], dtype=np.int64)

    @cached_property
    def l1_stored(self) -> float:
        return float(np.sum(np.abs(self.coefs)))

    @cached_property
    def l2_stored(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coefs) ** 2)))

    @property
    def sup_bound(self) -> float:
        kind = self.descriptor[0] if self.descriptor else "explicit"
        if kind == "tensor":
            return self.descriptor[1].sup_bound * self.descriptor[2].sup_bound
        if kind == "conjugate":
            return self.descriptor[1].sup_bound
        if kind == "product":
            return self.descriptor[1].sup_bound * self.descriptor[2].sup_bound
        return self.l1_stored + self.l1_tail

    def is_zero(self) -> bool:
        return len(self.coefs) == 0 and self.l2_tail == 0.0

    @property
    def factors(self) -> tuple[Symbol1, Symbol1] | None:
        if self.descriptor and self.descriptor[0] == "tensor":
            return self.descriptor[1], self.descriptor[2]
        return None

    def torus_values(self, theta1, theta2) -> np.ndarray:
        """Pointwise values at ``(e^{i theta1}, e^{i theta2})`` (broadcast)."""
        t1, t2 = np.broadcast_arrays(np.asarray(theta1, float), np.asarray(theta2, float))
        kind = self.descriptor[0] if self.descriptor else "explicit"
        if kind == "tensor":
            f1, f2 = self.factors
            return f1.torus_values(t1) * f2.torus_values(t2)
        if kind == "conjugate":
            return np.conj(self.descriptor[1].torus_values(t1, t2))
        if kind == "product":
            return self.descriptor[1].torus_values(t1, t2) * self.descriptor[2].torus_values(t1, t2)
        out = np.zeros(t1.shape, dtype=np.complex128)
        m = self.freqs.astype(float)
        flat1, flat2 = t1.reshape(-1), t2.reshape(-1)
        vals = np.exp(1j * (np.multiply.outer(flat1, m[:, 0]) + np.multiply.outer(flat2, m[:, 1]))) @ self.coefs
        out.reshape(-1)[:] = vals
        return out


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _arc_length(a: float, b: float) -> float:
    L = b - a
    if 0.0 < L <= TWO_PI:
        return L
    L = math.fmod(L, TWO_PI)
    if L < 0:
        L += TWO_PI
    if L == 0.0:
        raise DegenerateArcError(f"arc [{a}, {b}] has zero length")
    return L


def make_trigpoly(terms) -> Symbol1 | Symbol2:
    """Exact trigonometric polynomial from ``(frequency, coefficient)`` pairs.

    Integer frequencies give a :class:`Symbol1`, pairs give a :class:`Symbol2`.
    A mapping from frequency to coefficient is accepted as well.
    """
    terms = list(terms.items()) if isinstance(terms, dict) else list(terms)
    if terms and np.ndim(terms[0][0]) == 1:
        return Symbol2.from_terms(terms)
    return Symbol1.from_terms(terms)


def make_tent(a: float, w: float, bandwidth: int = DEFAULT_BANDWIDTH) -> Symbol1:
    """Continuous tent of height 1 centred at angle ``a`` with half-width ``w``."""
    if not 0.0 < w < math.pi:
        raise DegenerateArcError(f"tent half-width must lie in (0, pi), got {w}")
    n = np.arange(-bandwidth, bandwidth + 1)
    nz = np.where(n == 0, 1, n).astype(float)
    c = np.exp(-1j * n * a) * (1.0 - np.cos(n * w)) / (math.pi * nz**2 * w)
    c[n == 0] = w / TWO_PI
    B = max(bandwidth, 1)
    # |c_n| <= 2 / (pi n^2 w); tails bounded by integrals of n^-4 and n^-2
    l2 = math.sqrt(8.0 / (3.0 * math.pi**2 * w**2 * B**3))
    l1 = 4.0 / (math.pi * w * B)
    return Symbol1.build(
        n, c, descriptor=("tent", float(a), float(w)),
        support_arcs=((float(a - w), float(a + w)),),
        l2_tail=l2, l1_tail=l1, bandwidth=int(bandwidth),
    )


def make_arc(a: float, b: float, bandwidth: int = DEFAULT_BANDWIDTH) -> Symbol1:
    """Indicator of the closed arc running counter-clockwise from ``a`` to ``b``."""
    L = _arc_length(a, b)
    if L >= TWO_PI:
        return Symbol1.build(
            [0], [1.0], descriptor=("arc", float(a), float(a + TWO_PI)),
            support_arcs=((float(a), float(a + TWO_PI)),), bandwidth=int(bandwidth),
        )
    n = np.arange(-bandwidth, bandwidth + 1)
    nz = np.where(n == 0, 1, n).astype(float)
    c = (np.exp(-1j * n * a) - np.exp(-1j * n * (a + L))) / (2j * math.pi * nz)
    c[n == 0] = L / TWO_PI
    B = max(bandwidth, 1)
    l2 = math.sqrt(2.0 / (math.pi**2 * B))
    return Symbol1.build(
        n, c, descriptor=("arc", float(a), float(a + L)),
        support_arcs=((float(a), float(a + L)),),
        l2_tail=l2, l1_tail=math.inf, bandwidth=int(bandwidth),
    )


def _tensor_tail(s1, t1, s2, t2):
    """Omitted mass of a product given stored norms ``s`` and tails ``t``."""
    if math.isinf(t1) or math.isinf(t2):
        if (math.isinf(t1) and s2 + t2 > 0) or (math.isinf(t2) and s1 + t1 > 0):
            return math.inf
        return 0.0
    return s1 * t2 + t1 * s2 + t1 * t2


def tensor(f1: Symbol1, f2: Symbol1) -> Symbol2:
    """The symbol ``f1(z1) f2(z2)``."""
    c = np.multiply.outer(f1.coefs, f2.coefs).reshape(-1)
    m1 = np.repeat(f1.freqs, len(f2.freqs))
    m2 = np.tile(f2.freqs, len(f1.freqs))
    freqs = np.stack([m1, m2], axis=1)
    l2sq = _tensor_tail(f1.l2_stored**2, f1.l2_tail**2, f2.l2_stored**2, f2.l2_tail**2)
    l1 = _tensor_tail(f1.l1_stored, f1.l1_tail, f2.l1_stored, f2.l1_tail)
    bw = None
    if f1.bandwidth is not None or f2.bandwidth is not None:
        bw = max(b for b in (f1.bandwidth, f2.bandwidth) if b is not None)
    return Symbol2.build(
        freqs, c, descriptor=("tensor", f1, f2),
        l2_tail=math.sqrt(l2sq), l1_tail=l1, bandwidth=bw,
    )


# ---------------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------------

def fourier_coeff(f: Symbol1 | Symbol2, m) -> complex:
    """Stored coefficient at ``m``; zero outside the stored support."""
    return f.coeff(m)


def conjugate(f):
    """Complex conjugate symbol: coefficient ``m`` becomes ``conj(f_{-m})``."""
    if isinstance(f, Symbol1):
        arcs = f.support_arcs
        if f.descriptor and f.descriptor[0] == "conjugate":
            return f.descriptor[1]
        return Symbol1.build(
            -f.freqs, np.conj(f.coefs), descriptor=_conj_descriptor(f),
            support_arcs=arcs, l2_tail=f.l2_tail, l1_tail=f.l1_tail, bandwidth=f.bandwidth,
        )
    if f.descriptor and f.descriptor[0] == "conjugate":
        return f.descriptor[1]
    return Symbol2.build(
        -f.freqs, np.conj(f.coefs), descriptor=_conj_descriptor(f),
        l2_tail=f.l2_tail, l1_tail=f.l1_tail, bandwidth=f.bandwidth,
    )


def _conj_descriptor(f):
    if f.descriptor is None:
        return None
    if f.descriptor[0] == "tensor":
        return ("tensor", conjugate(f.descriptor[1]), conjugate(f.descriptor[2]))
    return ("conjugate", f)


def _conv_sparse(fa, ca, fb, cb, ndim):
    """All pairwise sums of frequencies with their coefficient products."""
    fa = fa.reshape(-1, ndim)
    fb = fb.reshape(-1, ndim)
    freqs = (fa[:, None, :] + fb[None, :, :]).reshape(-1, ndim)
    coefs = np.multiply.outer(ca, cb).reshape(-1)
    return freqs, coefs


def _truncate_box(freqs, coefs, bandwidth):
    if bandwidth is None:
        return freqs, coefs, 0.0, 0.0
    inside = np.all(np.abs(freqs.reshape(len(coefs), -1)) <= bandwidth, axis=1)
    dropped = coefs[~inside]
    return (freqs[inside], coefs[inside],
            float(np.sqrt(np.sum(np.abs(dropped) ** 2))), float(np.sum(np.abs(dropped))))


def multiply(f, g, bandwidth: int | None = None):
    """Product symbol, truncated to frequencies in ``[-bandwidth, bandwidth]^d``.

    The tail bounds add the mass dropped by the box to the error inherited
    from the inputs' tails.
    """
    if f.ndim != g.ndim:
        raise ValueError("cannot multiply symbols of different dimension")
    if f.ndim == 2 and f.factors and g.factors:
        (f1, f2), (g1, g2) = f.factors, g.factors
        out = tensor(multiply(f1, g1, bandwidth), multiply(f2, g2, bandwidth))
        return out
    ndim = f.ndim
    if ndim == 1 and len(f.freqs) and len(g.freqs):
        co = np.convolve(f.dense(f.fmin, f.fmax), g.dense(g.fmin, g.fmax))
        fr, co = _canonical(np.arange(f.fmin + g.fmin, f.fmax + g.fmax + 1), co, 1)
    else:
        freqs, coefs = _conv_sparse(f.freqs, f.coefs, g.freqs, g.coefs, ndim)
        fr, co = _canonical(freqs, coefs, ndim)
    fr, co, drop2, drop1 = _truncate_box(fr, co, bandwidth)
    # ||fg - fs gs|| <= t_f ||g||_inf + ||fs||_inf t_g
    inherited2 = 0.0
    inherited1 = 0.0
    if f.l2_tail or g.l2_tail:
        inherited2 = f.l2_tail * g.sup_bound + f.l1_stored * g.l2_tail
    if f.l1_tail or g.l1_tail:
        inherited1 = _tensor_tail(f.l1_stored, f.l1_tail, g.l1_stored, g.l1_tail)
    cls = Symbol1 if ndim == 1 else Symbol2
    kw = dict(
        descriptor=("product", f, g) if (f.descriptor or g.descriptor) else None,
        l2_tail=inherited2 + drop2, l1_tail=inherited1 + drop1, bandwidth=bandwidth,
    )
    if ndim == 1:
        return cls(fr.reshape(-1), co, **kw)
    return cls(fr, co, **kw)


def band_limit(f, bandwidth: int):
    """Rebuild ``f`` with stored frequencies limited to ``[-bandwidth, bandwidth]^d``.

    Structural symbols are rebuilt from their closed forms at the new
    bandwidth; explicit ones are cut to the box and the cut mass moves into
    the tails.
    """
    kind = f.descriptor[0] if f.descriptor else None
    if kind == "tent":
        return make_tent(f.descriptor[1], f.descriptor[2], bandwidth)
    if kind == "arc":
        return make_arc(f.descriptor[1], f.descriptor[2], bandwidth)
    if kind == "tensor":
        return tensor(band_limit(f.descriptor[1], bandwidth), band_limit(f.descriptor[2], bandwidth))
    if kind == "conjugate":
        return conjugate(band_limit(f.descriptor[1], bandwidth))
    fr, co, drop2, drop1 = _truncate_box(f.freqs, f.coefs, bandwidth)
    if drop2 == 0.0:
        return f
    kw = dict(l2_tail=f.l2_tail + drop2, l1_tail=f.l1_tail + drop1, bandwidth=int(bandwidth))
    if f.ndim == 1:
        return Symbol1(_frozen(fr.reshape(-1)), _frozen(co), **kw)
    return Symbol2(_frozen(fr), _frozen(co), **kw)


def quadrant_part(f: Symbol2, q: str) -> Symbol2:
    """Restriction of the coefficient map to one sign quadrant."""
    if q not in QUADRANTS:
        raise ValueError(f"unknown quadrant {q!r}")
    s1 = f.freqs[:, 0] >= 0 if q[0] == "P" else f.freqs[:, 0] < 0
    s2 = f.freqs[:, 1] >= 0 if q[1] == "P" else f.freqs[:, 1] < 0
    sel = s1 & s2
    return Symbol2(
        _frozen(f.freqs[sel]), _frozen(f.coefs[sel]),
        l2_tail=f.l2_tail, l1_tail=f.l1_tail, bandwidth=f.bandwidth,
    )


def is_analytic_in(f: Symbol1 | Symbol2, axis: int = 1) -> bool:
    """No stored coefficient has a negative frequency on ``axis`` (1 or 2)."""
    if isinstance(f, Symbol1):
        return bool(np.all(f.freqs >= 0))
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    return bool(np.all(f.freqs[:, axis - 1] >= 0))


# ---------------------------------------------------------------------------
# evaluation inside the bidisc
# ---------------------------------------------------------------------------

def _powers(z: complex, k: np.ndarray) -> np.ndarray:
    """``z**k`` for ``k >= 0`` and ``conj(z)**|k|`` for ``k < 0``."""
    k = np.asarray(k)
    base = np.where(k >= 0, complex(z), complex(z).conjugate())
    return np.power(base, np.abs(k))


def _geom_all(r: float) -> float:
    return (1 + r * r) / (1 - r * r)


def _geom_tail(r: float, B: int) -> float:
    return 2.0 * r ** (2 * (B + 1)) / (1 - r * r)


def _check_point(z, boundary_ok):
    z1, z2 = complex(z[0]), complex(z[1])
    on = []
    for v in (z1, z2):
        r = abs(v)
        if r > 1.0 + 1e-12:
            raise ValueError(f"point {v} lies outside the closed disc")
        on.append(r >= 1.0)
    if any(on) and not boundary_ok:
        raise DivergenceError("boundary evaluation needs an absolutely summable tail")
    return z1, z2, on


def harmonic_extension(f: Symbol2, z) -> Estimate:
    """Poisson extension of ``f`` at ``z`` with a bound on the truncation error.

    A coordinate with ``|z_i| = 1`` is accepted only when the omitted
    coefficients are absolutely summable.
    """
    z1, z2, on = _check_point(z, math.isfinite(f.l1_tail))
    u = _powers(z1, f.freqs[:, 0]) * _powers(z2, f.freqs[:, 1])
    value = complex(np.sum(f.coefs * u))
    return Estimate(value, _extension_err(f, abs(z1), abs(z2), on))


def _extension_err(f: Symbol2, r1, r2, on, weights=None) -> float:
    if f.l2_tail == 0.0:
        return 0.0
    err = f.l1_tail if weights is None else f.l1_tail * weights[2]
    if not any(on):
        a1 = _geom_all(r1) if weights is None else weights[0]
        a2 = _geom_all(r2) if weights is None else weights[1]
        if f.bandwidth is not None and weights is None:
            mass = _geom_tail(r1, f.bandwidth) * a2 + a1 * _geom_tail(r2, f.bandwidth)
        else:
            mass = a1 * a2
        err = min(err, f.l2_tail * math.sqrt(mass))
    return float(err)


def wirtinger(f: Symbol2, z, which: str) -> Estimate:
    """Term-wise Wirtinger derivative of the harmonic extension.

    ``which`` is one of ``"z1"``, ``"zbar1"``, ``"z2"``, ``"zbar2"``.  The
    differentiated coordinate must be interior.
    """
    if which not in WIRTINGER:
        raise ValueError(f"unknown derivative {which!r}")
    axis = 0 if which.endswith("1") else 1
    bar = which.startswith("zbar")
    z1, z2, on = _check_point(z, math.isfinite(f.l1_tail))
    if on[axis]:
        raise ValueError("the differentiated coordinate must be interior")
    zz = (z1, z2)
    k = f.freqs[:, axis]
    sel = k <= -1 if bar else k >= 1
    kk = np.abs(k[sel])
    base = zz[axis].conjugate() if bar else zz[axis]
    du = kk * np.power(base, kk - 1)
    other = _powers(zz[1 - axis], f.freqs[sel, 1 - axis])
    value = complex(np.sum(f.coefs[sel] * du * other))
    r = abs(zz[axis])
    ro = abs(zz[1 - axis])
    dmass = (1 + r * r) / (1 - r * r) ** 3
    weights = (
        dmass if axis == 0 else _geom_all(ro) if not on[1 - axis] else 1.0,
        dmass if axis == 1 else _geom_all(ro) if not on[1 - axis] else 1.0,
        1.0 / (1.0 - r),
    )
    return Estimate(value, _extension_err(f, r, ro, on, weights))
