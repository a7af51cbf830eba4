"""Reproducing kernels, Berezin-type probes and Mobius pullbacks on the bidisc.

The normalized kernel ``k_z`` is a product ``k_{z1}(w1) k_{z2}(w2)`` whose
coefficients are geometric, so every quantity here is computed from the
two one-variable coefficient vectors of its truncation.  Hankel actions on
``k_z`` are assembled region by region (``m1 < 0``, and ``m1 >= 0 > m2``)
without forming a Hankel matrix; for tensor symbols they reduce to
one-variable convolutions.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .hardyops import TruncationBox, toeplitz_matrix
from .symbolcalc import Estimate, Symbol1, Symbol2, _powers, conjugate, quadrant_part

KERNEL_TAIL_TOL = 1e-6
DEFAULT_RADII = (0.5, 0.9, 0.99)
DEFAULT_ANGLES = 16
MOBIUS_OVERSAMPLE = 8


def kernel_eval(z, w) -> complex:
    """Reproducing kernel ``K_z(w) = prod_i 1 / (1 - conj(z_i) w_i)``."""
    out = 1.0 + 0j
    for zi, wi in zip(z, w):
        d = 1.0 - complex(zi).conjugate() * complex(wi)
        if d == 0:
            raise ZeroDivisionError(f"kernel pole at z_i={zi}, w_i={wi}")
        out /= d
    return out


def kernel_eval1(z: complex, w: complex) -> complex:
    d = 1.0 - complex(z).conjugate() * complex(w)
    if d == 0:
        raise ZeroDivisionError(f"kernel pole at z={z}, w={w}")
    return 1.0 / d


def _degree_for(r: float, tol: float) -> int:
    # smallest n with r^(2(n+1)) <= tol^2 / 2
    if r == 0.0:
        return 0
    return max(0, math.ceil(math.log(tol * tol / 2.0) / (2.0 * math.log(r))) - 1)


def auto_box(z, tol: float = KERNEL_TAIL_TOL) -> TruncationBox:
    """Smallest box whose normalized-kernel tail is below ``tol``."""
    return TruncationBox(_degree_for(abs(z[0]), tol), _degree_for(abs(z[1]), tol))


@dataclass(frozen=True, eq=False)
class KernelVector:
    """Truncation of ``k_z`` to a box; ``tail`` is the omitted l2 mass."""

    z: tuple
    box: TruncationBox
    k1: np.ndarray
    k2: np.ndarray
    tail: float

    @cached_property
    def coeffs(self) -> np.ndarray:
        return np.outer(self.k1, self.k2).reshape(-1)

    @property
    def stored_norm(self) -> float:
        return float(np.linalg.norm(self.k1) * np.linalg.norm(self.k2))

    @property
    def l1(self) -> float:
        """l1 norm of the full (untruncated) kernel coefficients."""
        r1, r2 = abs(self.z[0]), abs(self.z[1])
        return math.sqrt((1 + r1) / (1 - r1) * (1 + r2) / (1 - r2))


def _kernel1(z: complex, n: int) -> np.ndarray:
    r2 = abs(z) ** 2
    return math.sqrt(1.0 - r2) * np.power(complex(z).conjugate(), np.arange(n + 1))


def normalized_kernel(z, box: TruncationBox | None = None) -> KernelVector:
    """Coefficients ``sqrt(1-|z1|^2) sqrt(1-|z2|^2) conj(z1)^a conj(z2)^b`` on ``box``."""
    z = (complex(z[0]), complex(z[1]))
    if abs(z[0]) >= 1 or abs(z[1]) >= 1:
        raise ValueError("normalized kernel needs an interior point")
    box = box or auto_box(z)
    k1 = _kernel1(z[0], box.n1)
    k2 = _kernel1(z[1], box.n2)
    q1 = abs(z[0]) ** (2 * (box.n1 + 1))
    q2 = abs(z[1]) ** (2 * (box.n2 + 1))
    # 1 - (1 - q1)(1 - q2), written to avoid cancellation
    tail = math.sqrt(max(q1 + q2 - q1 * q2, 0.0))
    return KernelVector(z, box, k1, k2, tail)


# ---------------------------------------------------------------------------
# Hankel actions on k_z
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Frame:
    lo1: int
    hi1: int
    lo2: int
    hi2: int


def _frame(box: TruncationBox, *symbols: Symbol2) -> _Frame:
    lo1 = lo2 = 0
    hi1, hi2 = box.n1, box.n2
    for f in symbols:
        a, b, c, d = f.extent
        lo1, hi1 = min(lo1, a), max(hi1, box.n1 + b)
        lo2, hi2 = min(lo2, c), max(hi2, box.n2 + d)
    return _Frame(lo1, hi1, lo2, hi2)


def _negative_part(f: Symbol2, k: KernelVector, fr: _Frame):
    """``(I - P)(f k)`` split into the regions ``m1 < 0`` and ``m1 >= 0 > m2``."""
    n1, n2 = k.box.n1, k.box.n2
    A = np.zeros((-fr.lo1, fr.hi2 - fr.lo2 + 1), dtype=np.complex128)
    B = np.zeros((fr.hi1 + 1, -fr.lo2), dtype=np.complex128)
    for (j1, j2), c in zip(f.freqs.tolist(), f.coefs):
        if j1 < 0:
            top = min(-1, j1 + n1)
            if top >= j1:
                rows = np.arange(j1, top + 1)
                A[rows - fr.lo1, j2 - fr.lo2 : j2 - fr.lo2 + n2 + 1] += c * np.outer(k.k1[rows - j1], k.k2)
        if j2 < 0:
            c1 = np.arange(max(0, -j1), n1 + 1)
            top = min(-1, j2 + n2)
            if len(c1) and top >= j2:
                cols = np.arange(j2, top + 1)
                B[np.ix_(j1 + c1, cols - fr.lo2)] += c * np.outer(k.k1[c1], k.k2[cols - j2])
    return A, B


def _conv_parts(f: Symbol1, kv: np.ndarray):
    """``f * k`` as ``(values, lowest frequency)`` for a one-variable symbol."""
    if not len(f.freqs):
        return np.zeros(1, dtype=np.complex128), 0
    dense = f.dense(f.fmin, f.fmax)
    return np.convolve(dense, kv), f.fmin


def _pair1(a, b):
    """``<u_a, u_b>`` over all frequencies and over frequencies ``>= 0``."""
    (ua, la), (ub, lb) = a, b
    lo = max(la, lb)
    hi = min(la + len(ua), lb + len(ub)) - 1
    if hi < lo:
        return 0j, 0j
    xa = ua[lo - la : hi - la + 1]
    xb = ub[lo - lb : hi - lb + 1]
    full = complex(np.vdot(xb, xa))
    start = max(lo, 0)
    pos = complex(np.vdot(xb[start - lo :], xa[start - lo :])) if start <= hi else 0j
    return full, pos


def _hankel_pairing(g: Symbol2, h: Symbol2, k: KernelVector) -> complex:
    """``<H_g k, H_h k>`` for the stored parts of ``g`` and ``h``."""
    if g.factors and h.factors:
        (g1, g2), (h1, h2) = g.factors, h.factors
        f1, p1 = _pair1(_conv_parts(g1, k.k1), _conv_parts(h1, k.k1))
        f2, p2 = _pair1(_conv_parts(g2, k.k2), _conv_parts(h2, k.k2))
        return f1 * f2 - p1 * p2
    fr = _frame(k.box, g, h)
    Ag, Bg = _negative_part(g, k, fr)
    Ah, Bh = (Ag, Bg) if h is g else _negative_part(h, k, fr)
    return complex(np.vdot(Ah, Ag) + np.vdot(Bh, Bg))


def _symbol_tail_effect(f: Symbol2, k: KernelVector) -> float:
    """Bound on ``||(f - f_stored) k||_2``."""
    if f.is_exact:
        return 0.0
    return min(f.l2_tail * k.l1, f.l1_tail)


def hankel_kernel_norm(f: Symbol2, z, box: TruncationBox | None = None) -> Estimate:
    """``||H_f k_z||_2`` with a bound covering kernel and symbol truncation."""
    k = normalized_kernel(z, box)
    sq = _hankel_pairing(f, f, k).real
    value = math.sqrt(max(sq, 0.0))
    err = f.sup_bound * k.tail + _symbol_tail_effect(f, k)
    return Estimate(value, err)


def hankel_kernel_norm1(f: Symbol1, z: complex, n: int | None = None) -> Estimate:
    """One-variable ``||H_f k_z||_2``."""
    n = _degree_for(abs(z), KERNEL_TAIL_TOL) if n is None else n
    kv = _kernel1(complex(z), n)
    u, lo = _conv_parts(f, kv)
    neg = u[: max(0, -lo)]
    value = float(np.linalg.norm(neg))
    r = abs(z)
    tail = r ** (n + 1)
    err = f.sup_bound * tail
    if not f.is_exact:
        err += min(f.l2_tail * math.sqrt((1 + r) / (1 - r)), f.l1_tail)
    return Estimate(value, err)


def hankel_product(f: Symbol2, g: Symbol2, z, box: TruncationBox | None = None) -> Estimate:
    """``||H_fbar k_z|| * ||H_g k_z||`` with propagated error."""
    a, ea = hankel_kernel_norm(conjugate(f), z, box)
    b, eb = hankel_kernel_norm(g, z, box)
    return Estimate(a * b, a * eb + b * ea + ea * eb)


def berezin_semicommutator(f: Symbol2, g: Symbol2, z, box: TruncationBox | None = None,
                           fbar: Symbol2 | None = None) -> Estimate:
    """``<(T_f T_g - T_fg) k_z, k_z> = -<H_g k_z, H_fbar k_z>``."""
    fbar = conjugate(f) if fbar is None else fbar
    k = normalized_kernel(z, box)
    value = -_hankel_pairing(g, fbar, k)
    t = k.tail
    err = f.sup_bound * g.sup_bound * (2 * t + t * t)
    eg, ef = _symbol_tail_effect(g, k), _symbol_tail_effect(fbar, k)
    if eg or ef:
        ng = math.sqrt(max(_hankel_pairing(g, g, k).real, 0.0))
        nf = math.sqrt(max(_hankel_pairing(fbar, fbar, k).real, 0.0))
        err += eg * (nf + ef) + ng * ef
    return Estimate(value, err)


def _autocorr(kv: np.ndarray, j: int) -> complex:
    """``sum_c k[c] conj(k[c + j])`` over indices inside the vector."""
    n = len(kv)
    if j >= 0:
        return complex(np.vdot(kv[j:], kv[: n - j])) if j < n else 0j
    return complex(np.vdot(kv[: n + j], kv[-j:])) if -j < n else 0j


def berezin_toeplitz(g: Symbol2, z, box: TruncationBox | None = None) -> Estimate:
    """``<T_g k_z, k_z>``; equals the harmonic extension ``g(z)``."""
    k = normalized_kernel(z, box)
    s1 = {j: _autocorr(k.k1, j) for j in np.unique(g.freqs[:, 0]).tolist()}
    s2 = {j: _autocorr(k.k2, j) for j in np.unique(g.freqs[:, 1]).tolist()}
    w = np.array([s1[a] * s2[b] for a, b in g.freqs.tolist()], dtype=np.complex128)
    value = complex(np.sum(g.coefs * w)) if len(w) else 0j
    t = k.tail
    err = g.sup_bound * (2 * t + t * t) + _symbol_tail_effect(g, k)
    return Estimate(value, err)


# ---------------------------------------------------------------------------
# T_g k_z on the torus
# ---------------------------------------------------------------------------

def kernel_on_torus(z, w1, w2) -> np.ndarray:
    """Normalized kernel ``k_z(w)`` at points of the torus (broadcast)."""
    z1, z2 = complex(z[0]), complex(z[1])
    s = math.sqrt((1 - abs(z1) ** 2) * (1 - abs(z2) ** 2))
    return s / ((1 - z1.conjugate() * np.asarray(w1)) * (1 - z2.conjugate() * np.asarray(w2)))


def toeplitz_on_kernel(g: Symbol2, z, w_grid, box: TruncationBox | None = None):
    """Values of ``T_g k_z`` at torus points from the coefficient vector.

    Returns ``(values, err)``; ``err`` bounds the pointwise effect of the
    kernel truncation through l1 norms.
    """
    if not g.is_exact:
        raise ValueError("pointwise evaluation needs an exact symbol")
    k = normalized_kernel(z, box)
    n1, n2 = k.box.n1, k.box.n2
    lo1, hi1, lo2, hi2 = g.extent
    out = np.zeros((n1 + hi1 - lo1 + 1, n2 + hi2 - lo2 + 1), dtype=np.complex128)
    K = np.outer(k.k1, k.k2)
    for (j1, j2), c in zip(g.freqs.tolist(), g.coefs):
        out[j1 - lo1 : j1 - lo1 + n1 + 1, j2 - lo2 : j2 - lo2 + n2 + 1] += c * K
    # keep nonnegative frequencies only
    m1 = np.arange(lo1, lo1 + out.shape[0])
    m2 = np.arange(lo2, lo2 + out.shape[1])
    P = out[np.ix_(m1 >= 0, m2 >= 0)]
    e1 = m1[m1 >= 0]
    e2 = m2[m2 >= 0]
    w = np.asarray(w_grid, dtype=np.complex128).reshape(-1, 2)
    V1 = np.power.outer(w[:, 0], e1)
    V2 = np.power.outer(w[:, 1], e2)
    values = np.einsum("pa,ab,pb->p", V1, P, V2)
    r1, r2 = abs(k.z[0]), abs(k.z[1])
    s = math.sqrt((1 - r1 * r1) * (1 - r2 * r2))
    full = 1.0 / ((1 - r1) * (1 - r2))
    kept = (1 - r1 ** (n1 + 1)) * (1 - r2 ** (n2 + 1)) / ((1 - r1) * (1 - r2))
    err = g.l1_stored * s * max(full - kept, 0.0)
    return values, err


def toeplitz_on_kernel_quadrants(g: Symbol2, z, w_grid) -> np.ndarray:
    """Closed form of ``T_g k_z(w)``: each quadrant of ``g`` is evaluated with
    ``w_i`` in its analytic coordinates and ``z_i`` in its co-analytic ones,
    then multiplied by ``k_z(w)``."""
    w = np.asarray(w_grid, dtype=np.complex128).reshape(-1, 2)
    z1, z2 = complex(z[0]), complex(z[1])
    total = np.zeros(len(w), dtype=np.complex128)
    for q in ("PP", "PM", "MP", "MM"):
        part = quadrant_part(g, q)
        for (m1, m2), c in zip(part.freqs.tolist(), part.coefs):
            u1 = w[:, 0] ** m1 if q[0] == "P" else _powers(z1, m1)
            u2 = w[:, 1] ** m2 if q[1] == "P" else _powers(z2, m2)
            total += c * u1 * u2
    return total * kernel_on_torus(z, w[:, 0], w[:, 1])


# ---------------------------------------------------------------------------
# Mobius maps
# ---------------------------------------------------------------------------

def mobius1(z: complex, w):
    w = np.asarray(w, dtype=np.complex128)
    z = complex(z)
    return (z - w) / (1 - z.conjugate() * w)


def mobius_map(z, w) -> tuple:
    """Componentwise disc automorphism ``phi_z(w)``; an involution."""
    return (complex(mobius1(z[0], w[0])), complex(mobius1(z[1], w[1])))


def _grid_size(bandwidth: int) -> int:
    return MOBIUS_OVERSAMPLE * max(int(bandwidth), 1)


def mobius_pullback(f: Symbol2, z, bandwidth: int) -> Symbol2:
    """Fourier coefficients of ``f o phi_z`` up to ``bandwidth`` per variable.

    The boundary values are sampled on a uniform torus grid and inverted by
    FFT.  ``l2_tail`` is an estimate: twice the l2 mass the grid resolves
    beyond the kept box (covering aliasing of the same order) plus the
    input's own tail stretched by the Poisson kernel's maximum.
    """
    if bandwidth < 1:
        raise ValueError("bandwidth must be at least 1")
    z1, z2 = complex(z[0]), complex(z[1])
    M = _grid_size(bandwidth)
    theta = 2 * math.pi * np.arange(M) / M
    w = np.exp(1j * theta)
    a1 = np.angle(mobius1(z1, w))
    a2 = np.angle(mobius1(z2, w))
    vals = f.torus_values(a1[:, None], a2[None, :])
    C = np.fft.fft2(vals) / (M * M)
    k = np.fft.fftfreq(M, 1.0 / M).astype(np.int64)
    keep = np.abs(k) <= bandwidth
    K1, K2 = np.meshgrid(k, k, indexing="ij")
    inside = keep[:, None] & keep[None, :]
    outside = C[~inside]
    est = 2.0 * float(np.sqrt(np.sum(np.abs(outside) ** 2)))
    r1, r2 = abs(z1), abs(z2)
    stretch = math.sqrt((1 + r1) / (1 - r1) * (1 + r2) / (1 - r2))
    l2 = est + f.l2_tail * stretch
    l1 = 2.0 * float(np.sum(np.abs(outside))) + f.l1_tail
    freqs = np.stack([K1[inside], K2[inside]], axis=1)
    return Symbol2.build(freqs, C[inside], l2_tail=l2, l1_tail=l1, bandwidth=int(bandwidth))


def _unitary1(z: complex, n: int, tol: float = 1e-14) -> np.ndarray:
    """Columns ``phi_z^c k_z`` for ``c = 0..n`` as Fourier coefficient vectors.

    The row range grows until every column's omitted mass is below ``tol``,
    so ``U^* A U`` is computed from the full images rather than their box
    sections (``U_z`` does not preserve degree).
    """
    M = max(_grid_size(n + 1), 64)
    while True:
        w = np.exp(2j * math.pi * np.arange(M) / M)
        phi = mobius1(z, w)
        kz = math.sqrt(1 - abs(z) ** 2) / (1 - complex(z).conjugate() * w)
        cols = np.power.outer(phi, np.arange(n + 1)) * kz[:, None]
        C = np.fft.fft(cols, axis=0) / M
        # columns are analytic; aliased mass shows up in the top half
        if np.max(np.abs(C[M // 2 :])) < tol or M >= 1 << 16:
            C = C[: M // 2]
            big = np.nonzero(np.max(np.abs(C), axis=1) >= tol)[0]
            return C[: max(int(big[-1]) + 1 if len(big) else 1, n + 1)]
        M *= 2


def _toeplitz_form1(f: Symbol1, U: np.ndarray) -> np.ndarray:
    """``U^* T_f U`` for a one-variable symbol."""
    from .hardyops import toeplitz1

    D = U.shape[0] - 1
    return U.conj().T @ toeplitz1(f, D).entries @ U


def _toeplitz_form2(f: Symbol2, U1: np.ndarray, U2: np.ndarray) -> np.ndarray:
    """``U^* T_f U`` with ``U = U1 (x) U2`` for a general two-variable symbol."""
    from scipy.signal import fftconvolve

    lo1, _, lo2, _ = f.extent
    grid, _ = f.grid
    D1, D2 = U1.shape[0], U2.shape[0]
    n1, n2 = U1.shape[1], U2.shape[1]
    out = np.zeros((n1 * n2, n1 * n2), dtype=np.complex128)
    a0, b0 = max(0, -lo1), max(0, -lo2)
    for c1 in range(n1):
        for c2 in range(n2):
            X = fftconvolve(grid, np.outer(U1[:, c1], U2[:, c2]))
            # keep frequencies 0..D-1 in each variable (P, then crop)
            X = X[a0 : a0 + D1, b0 : b0 + D2] if lo1 <= 0 and lo2 <= 0 else _shifted(X, lo1, lo2, D1, D2)
            out[:, c1 * n2 + c2] = (U1.conj().T @ X @ U2.conj()).reshape(-1)
    return out


def _shifted(X, lo1, lo2, D1, D2):
    Y = np.zeros((D1, D2), dtype=np.complex128)
    i0, j0 = max(0, -lo1), max(0, -lo2)
    s1, s2 = max(0, lo1), max(0, lo2)
    h1 = min(D1 - s1, X.shape[0] - i0)
    h2 = min(D2 - s2, X.shape[1] - j0)
    if h1 > 0 and h2 > 0:
        Y[s1 : s1 + h1, s2 : s2 + h2] = X[i0 : i0 + h1, j0 : j0 + h2]
    return Y


def mobius_intertwining_residual(f: Symbol2, z, box: TruncationBox, bandwidth: int,
                                 margin: int | None = None) -> float:
    """Frobenius distance between the box compression of ``U_z^* T_f U_z`` and
    ``T_{f o phi_z}`` built from the bandwidth-limited pullback, on an inner
    block of ``box``.

    The inner block drops the last ``margin`` degrees in each variable
    (default: the largest frequency of ``f``).  What remains measures the
    pullback's truncation and quadrature error, so a convergence study
    should let ``bandwidth`` grow with the box.
    """
    if margin is None:
        margin = int(np.max(np.abs(f.freqs))) if len(f.freqs) else 0
    U1 = _unitary1(complex(z[0]), box.n1)
    U2 = _unitary1(complex(z[1]), box.n2)
    if f.factors:
        lhs = np.kron(_toeplitz_form1(f.factors[0], U1), _toeplitz_form1(f.factors[1], U2))
    else:
        lhs = _toeplitz_form2(f, U1, U2)
    rhs = toeplitz_matrix(mobius_pullback(f, z, bandwidth), box).entries
    basis = box.basis()
    inner = (basis[:, 0] <= box.n1 - margin) & (basis[:, 1] <= box.n2 - margin)
    D = (lhs - rhs)[np.ix_(inner, inner)]
    return float(np.linalg.norm(D))


# ---------------------------------------------------------------------------
# boundary probes
# ---------------------------------------------------------------------------

class ProbeRow(NamedTuple):
    r1: float
    theta1: float
    r2: float
    theta2: float
    hankel_product: float
    berezin: complex
    err: float

    @property
    def shell(self) -> float:
        """Shells are labelled by the outer radius."""
        return max(self.r1, self.r2)


CSV_COLUMNS = ("r1", "theta1", "r2", "theta2", "hankel_product", "berezin_re", "berezin_im", "err")


@dataclass(frozen=True)
class ProbeTable:
    rows: tuple = field(default_factory=tuple)

    def shell_maxima(self, mixed_only: bool = False) -> dict:
        """``{shell radius: (max hankel product, its error bound)}``."""
        out = {}
        for row in self.rows:
            if mixed_only and row.r1 == row.r2:
                continue
            best = out.get(row.shell)
            if best is None or row.hankel_product > best[0]:
                out[row.shell] = (row.hankel_product, row.err)
        return out

    def berezin_maxima(self) -> dict:
        out = {}
        for row in self.rows:
            out[row.shell] = max(out.get(row.shell, 0.0), abs(row.berezin))
        return out

    def select(self, r1=None, r2=None) -> list:
        return [row for row in self.rows
                if (r1 is None or row.r1 == r1) and (r2 is None or row.r2 == r2)]

    def to_csv(self, header_comment: str | None = None) -> str:
        buf = io.StringIO()
        if header_comment:
            buf.write(f"# {header_comment}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow([repr(float(x)) for x in (
                r.r1, r.theta1, r.r2, r.theta2, r.hankel_product,
                r.berezin.real, r.berezin.imag, r.err)])
        return buf.getvalue()


def _probe_points(radii, angles: int, fixed: float):
    thetas = [2 * math.pi * k / angles for k in range(angles)]
    pairs = []
    for r in sorted(radii):
        pairs.append((r, r))
        if r != fixed:
            pairs += [(fixed, r), (r, fixed)]
    pts = []
    for r1, r2 in dict.fromkeys(pairs):
        for t1 in thetas:
            for t2 in thetas:
                pts.append((r1, t1, r2, t2))
    return pts


def boundary_probe(f: Symbol2, g: Symbol2, radii=DEFAULT_RADII, angles_per_shell: int = DEFAULT_ANGLES,
                   box: TruncationBox | None = None, fixed_radius: float = 0.5,
                   workers: int = 1) -> ProbeTable:
    """Sample the Hankel product and the Berezin value on shells approaching the boundary.

    Each radius ``r`` contributes the points with radii ``(r, r)`` and the
    mixed ones ``(fixed_radius, r)`` and ``(r, fixed_radius)``, each on an
    ``angles_per_shell``-squared angle grid.  Rows are sorted by shell
    (outer radius), then radii, then angles.
    """
    if any(not 0.0 < r < 1.0 for r in radii):
        raise ValueError("probe radii must lie in (0, 1)")
    fbar = conjugate(f)
    pts = _probe_points(radii, angles_per_shell, fixed_radius)

    def one(p):
        r1, t1, r2, t2 = p
        z = (r1 * complex(math.cos(t1), math.sin(t1)), r2 * complex(math.cos(t2), math.sin(t2)))
        a, ea = hankel_kernel_norm(fbar, z, box)
        b, eb = hankel_kernel_norm(g, z, box)
        bz, ez = berezin_semicommutator(f, g, z, box, fbar=fbar)
        err = max(a * eb + b * ea + ea * eb, ez)
        return ProbeRow(r1, t1, r2, t2, a * b, bz, err)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(one, pts))
    else:
        rows = [one(p) for p in pts]
    rows.sort(key=lambda row: (row.shell, row.r1, row.r2, row.theta1, row.theta2))
    return ProbeTable(tuple(rows))


def probe_decay1(f: Symbol1, g: Symbol1, radii=DEFAULT_RADII, angles: int = 64) -> dict:
    """Shell maxima of ``||H_fbar k_z|| ||H_g k_z||`` on the disc.

    Returns ``{r: (max, err)}``.
    """
    fbar = conjugate(f)
    out = {}
    for r in sorted(radii):
        best = (-1.0, 0.0)
        for t in range(angles):
            z = r * complex(math.cos(2 * math.pi * t / angles), math.sin(2 * math.pi * t / angles))
            a, ea = hankel_kernel_norm1(fbar, z)
            b, eb = hankel_kernel_norm1(g, z)
            if a * b > best[0]:
                best = (a * b, a * eb + b * ea + ea * eb)
        out[r] = best
    return out


def strictly_decreasing(maxima: dict) -> bool:
    """Shell maxima decrease with room to spare for their error bounds."""
    rs = sorted(maxima)
    return all(maxima[b][0] + maxima[b][1] < maxima[a][0] - maxima[a][1] for a, b in zip(rs, rs[1:]))
