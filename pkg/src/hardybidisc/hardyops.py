"""Finite sections of Toeplitz, Hankel and semi-commutator operators.

Operators on the Hardy space of the bidisc are represented by their
compressions to a box of monomials ``z1^a1 z2^a2`` with ``0 <= a_i <= n_i``,
ordered lexicographically (``a1`` major).  Hankel operators land in a
window of frequencies outside the first quadrant.

Semi-commutator entries come from the pairing formula

    <(T_f T_g - T_fg) z^c, z^a> = - sum_{m not in Z+^2} g_{m-c} f_{a-m},

which is exact for finitely supported symbols on any box; products of
truncated Toeplitz matrices are kept only as an independent oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
from scipy.sparse.linalg import LinearOperator, svds

from . import _kernels
from .errors import WindowTooSmallError
from .symbolcalc import Symbol1, Symbol2, conjugate, multiply

RANK_TOL = 1e-8
ZERO_TOL = 1e-12
DENSE_SVD_LIMIT = 1600


@dataclass(frozen=True)
class TruncationBox:
    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise ValueError("box degrees must be nonnegative")

    @property
    def size(self) -> int:
        return (self.n1 + 1) * (self.n2 + 1)

    def basis(self) -> np.ndarray:
        a1, a2 = np.meshgrid(np.arange(self.n1 + 1), np.arange(self.n2 + 1), indexing="ij")
        return np.stack([a1.reshape(-1), a2.reshape(-1)], axis=1)

    def index(self, a1: int, a2: int) -> int:
        return a1 * (self.n2 + 1) + a2


@dataclass(frozen=True)
class NegWindow:
    """Frequencies ``lo_i <= m_i <= hi_i`` with at least one coordinate negative."""

    lo1: int
    hi1: int
    lo2: int
    hi2: int

    def indices(self) -> np.ndarray:
        m1, m2 = np.meshgrid(np.arange(self.lo1, self.hi1 + 1),
                             np.arange(self.lo2, self.hi2 + 1), indexing="ij")
        m = np.stack([m1.reshape(-1), m2.reshape(-1)], axis=1)
        return m[(m[:, 0] < 0) | (m[:, 1] < 0)]

    def contains(self, m: np.ndarray) -> np.ndarray:
        return ((m[:, 0] >= self.lo1) & (m[:, 0] <= self.hi1)
                & (m[:, 1] >= self.lo2) & (m[:, 1] <= self.hi2))

    @classmethod
    def covering(cls, box: TruncationBox, *symbols: Symbol2) -> NegWindow:
        """Smallest window holding every frequency the symbols reach from ``box``."""
        lo1 = lo2 = 0
        hi1, hi2 = box.n1, box.n2
        for f in symbols:
            if not len(f.freqs):
                continue
            a, b, c, d = f.extent
            lo1, hi1 = min(lo1, a), max(hi1, box.n1 + b)
            lo2, hi2 = min(lo2, c), max(hi2, box.n2 + d)
        return cls(lo1, hi1, lo2, hi2)

    @classmethod
    def one_sided(cls, w1: int, w2: int, box: TruncationBox) -> NegWindow:
        return cls(-w1, box.n1 + w1, -w2, box.n2 + w2)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense matrix with the frequency labels of its rows and columns.

    ``err`` bounds the modulus of every entry's deviation from the exact
    infinite-dimensional compression; it is 0 when ``exact`` is true.
    """

    entries: np.ndarray
    rows: np.ndarray
    cols: np.ndarray
    exact: bool = True
    err: float = 0.0

    def __post_init__(self):
        if self.entries.shape != (len(self.rows), len(self.cols)):
            raise ValueError("entries do not match the basis lengths")

    @property
    def shape(self):
        return self.entries.shape

    @property
    def exactness(self) -> str:
        return "exact" if self.exact else "bounded-error"

    def adjoint(self) -> OperatorMatrix:
        return OperatorMatrix(self.entries.conj().T.copy(), self.cols, self.rows, self.exact, self.err)

    def __sub__(self, other: OperatorMatrix) -> OperatorMatrix:
        return _combine(self, other, -1)

    def __add__(self, other: OperatorMatrix) -> OperatorMatrix:
        return _combine(self, other, 1)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.entries))) if self.entries.size else 0.0


def _combine(A, B, sign):
    if A.shape != B.shape or not (np.array_equal(A.rows, B.rows) and np.array_equal(A.cols, B.cols)):
        raise ValueError("operator bases differ")
    return OperatorMatrix(A.entries + sign * B.entries, A.rows, A.cols,
                          A.exact and B.exact, A.err + B.err)


def _basis1(n: int) -> np.ndarray:
    return np.arange(n + 1).reshape(-1, 1)


# ---------------------------------------------------------------------------
# two variables
# ---------------------------------------------------------------------------

def toeplitz_matrix(f: Symbol2, box: TruncationBox, row_box: TruncationBox | None = None) -> OperatorMatrix:
    """Compression of ``T_f`` with entry ``f_{a-c}``.  ``row_box`` allows a
    rectangular section (rows from ``row_box``, columns from ``box``)."""
    cols = box.basis()
    rows = (row_box or box).basis()
    grid, off = f.grid
    M = _kernels.toeplitz_fill(rows, cols, grid, off)
    return OperatorMatrix(M, rows, cols, f.is_exact, f.l2_tail)


def _check_cover(f: Symbol2, box: TruncationBox, window: NegWindow):
    if not f.is_exact or not len(f.freqs):
        return
    m = (box.basis()[:, None, :] + f.freqs[None, :, :]).reshape(-1, 2)
    m = m[(m[:, 0] < 0) | (m[:, 1] < 0)]
    if len(m) and not np.all(window.contains(m)):
        miss = m[~window.contains(m)][0]
        raise WindowTooSmallError(f"window {window} misses reachable frequency {tuple(int(x) for x in miss)}")


def hankel_matrix(f: Symbol2, box: TruncationBox, window: NegWindow | None = None) -> OperatorMatrix:
    """Section of ``H_f`` from ``box`` into a negative-frequency window."""
    if window is None:
        window = NegWindow.covering(box, f)
    _check_cover(f, box, window)
    rows = window.indices()
    grid, off = f.grid
    M = _kernels.toeplitz_fill(rows, box.basis(), grid, off)
    return OperatorMatrix(M, rows, box.basis(), f.is_exact, f.l2_tail)


def _semicomm_err(f, g) -> float:
    if f.is_exact and g.is_exact:
        return 0.0
    # |<H_g z^c, H_fbar z^a>| perturbation, Cauchy-Schwarz on l2 coefficient norms
    return g.l2_tail * (f.l2_stored + f.l2_tail) + g.l2_stored * f.l2_tail


def semicommutator_matrix(f: Symbol2, g: Symbol2, box: TruncationBox) -> OperatorMatrix:
    """Exact section of ``T_f T_g - T_fg`` via the Hankel pairing formula."""
    if f.factors and g.factors:
        return tensor_semicommutator(f, g, box).to_matrix()
    basis = box.basis()
    grid, off = f.grid
    S = _kernels.semicomm_fill(basis, g.freqs, g.coefs, grid, off)
    err = _semicomm_err(f, g)
    return OperatorMatrix(S, basis, basis, err == 0.0, err)


def dense_oracle_semicommutator(f: Symbol2, g: Symbol2, box: TruncationBox,
                                window: NegWindow | None = None):
    """Two brute-force routes for the semi-commutator section.

    Returns ``(product_route, hankel_route)``: the first forms
    ``T_f T_g - T_fg`` from Toeplitz sections on a box enlarged by the
    support of ``g``; the second forms ``-H_fbar^* H_g`` on a common window.
    """
    _, b, _, d = g.extent
    big = TruncationBox(box.n1 + max(0, b), box.n2 + max(0, d))
    Tf = toeplitz_matrix(f, big, row_box=box).entries
    Tg = toeplitz_matrix(g, box, row_box=big).entries
    Tfg = toeplitz_matrix(multiply(f, g), box).entries
    exact = f.is_exact and g.is_exact
    err = _semicomm_err(f, g)
    basis = box.basis()
    product = OperatorMatrix(Tf @ Tg - Tfg, basis, basis, exact, err)

    fbar = conjugate(f)
    if window is None:
        window = NegWindow.covering(box, g, fbar)
    Hf = hankel_matrix(fbar, box, window).entries
    Hg = hankel_matrix(g, box, window).entries
    hankel = OperatorMatrix(-(Hf.conj().T @ Hg), basis, basis, exact, err)
    return product, hankel


def commutator_matrix(f: Symbol2, g: Symbol2, box: TruncationBox) -> OperatorMatrix:
    """Section of ``T_f T_g - T_g T_f`` as a difference of semi-commutators."""
    if f.factors and g.factors:
        return tensor_commutator(f, g, box).to_matrix()
    return semicommutator_matrix(f, g, box) - semicommutator_matrix(g, f, box)


def dense_commutator(f: Symbol2, g: Symbol2, box: TruncationBox) -> OperatorMatrix:
    """``T_f T_g - T_g T_f`` from products of Toeplitz sections (oracle route)."""
    _, b1, _, d1 = g.extent
    _, b2, _, d2 = f.extent
    big = TruncationBox(box.n1 + max(0, b1, b2), box.n2 + max(0, d1, d2))
    fg = toeplitz_matrix(f, big, row_box=box).entries @ toeplitz_matrix(g, box, row_box=big).entries
    gf = toeplitz_matrix(g, big, row_box=box).entries @ toeplitz_matrix(f, box, row_box=big).entries
    basis = box.basis()
    err = 2 * _semicomm_err(f, g)
    return OperatorMatrix(fg - gf, basis, basis, err == 0.0, err)


def _slice(f: Symbol2, k1: int) -> Symbol1:
    """The coefficient of ``z1^k1`` in ``f`` as a function of ``z2``."""
    sel = f.freqs[:, 0] == k1
    return Symbol1.build(f.freqs[sel, 1], f.coefs[sel])


def shift_identity_residual(f: Symbol2, g: Symbol2, k: int, l: int, n2: int):
    """Both sides of the one-step shift identity on functions of ``z2``.

    ``lhs`` compresses ``S1*^l A S1^k - S1*^(l+1) A S1^(k+1)`` with
    ``A = H_fbar^* H_g`` to ``span{z2^b : b <= n2}``; ``rhs`` is
    ``T_{conj(p)} T_q`` where ``p`` and ``q`` are the coefficients of
    ``z1^-(l+1)`` in ``fbar`` and of ``z1^-(k+1)`` in ``g``.
    """
    box = TruncationBox(max(k, l) + 1, n2)
    A = -semicommutator_matrix(f, g, box).entries
    b = np.arange(n2 + 1)
    rows0 = [box.index(l, j) for j in b]
    cols0 = [box.index(k, j) for j in b]
    rows1 = [box.index(l + 1, j) for j in b]
    cols1 = [box.index(k + 1, j) for j in b]
    lhs = A[np.ix_(rows0, cols0)] - A[np.ix_(rows1, cols1)]
    p = _slice(conjugate(f), -(l + 1))
    q = _slice(g, -(k + 1))
    big = n2 + max(0, q.fmax)
    rhs = toeplitz1(conjugate(p), big, n2).entries @ toeplitz1(q, n2, big).entries
    basis = _basis1(n2)
    return OperatorMatrix(lhs, basis, basis), OperatorMatrix(rhs, basis, basis)


# ---------------------------------------------------------------------------
# one variable
# ---------------------------------------------------------------------------

def toeplitz1(f: Symbol1, n: int, m: int | None = None) -> OperatorMatrix:
    """Section of ``T_f`` on ``span{z^0..z^n}`` (rows up to ``m`` if given)."""
    m = n if m is None else m
    col = f.dense(0, m)
    row = f.dense(-n, 0)[::-1]
    M = sla.toeplitz(col, row)
    return OperatorMatrix(M, _basis1(m), _basis1(n), f.is_exact, f.l2_tail)


def hankel1(f: Symbol1, n: int, w: int | None = None) -> OperatorMatrix:
    """Section of ``H_f`` into frequencies ``-w..-1``."""
    if w is None:
        w = max(0, -f.fmin)
    if f.is_exact and f.fmin < -w:
        raise WindowTooSmallError(f"window {w} misses frequency {f.fmin}")
    rows = np.arange(-w, 0)
    d = rows[:, None] - np.arange(n + 1)[None, :]
    lo = min(int(d.min()) if d.size else 0, 0)
    dense = f.dense(lo, 0)
    M = np.zeros(d.shape, dtype=np.complex128)
    if d.size:
        M = dense[d - lo]
    return OperatorMatrix(M, rows.reshape(-1, 1), _basis1(n), f.is_exact, f.l2_tail)


def _negpart1(f: Symbol1, g: Symbol1, n: int) -> np.ndarray:
    """``sum_{m<0} f_{a-m} g_{m-c}`` for ``0 <= a, c <= n``."""
    fb = conjugate(f)
    w = max(0, -g.fmin, -fb.fmin)
    Hg = hankel1(g, n, w).entries
    Hf = hankel1(fb, n, w).entries
    return Hf.conj().T @ Hg


def semicommutator1(f: Symbol1, g: Symbol1, n: int) -> OperatorMatrix:
    """Section of ``T_f T_g - T_fg`` on the disc."""
    S = -_negpart1(f, g, n)
    err = _semicomm_err(f, g)
    return OperatorMatrix(S, _basis1(n), _basis1(n), err == 0.0, err)


def rank2_commutator_identity(f1: Symbol1, g1: Symbol1, n: int):
    """Both sides of ``C - S* C S = -(S* T_f e0)(S* T_gbar e0)^* + (S* T_g e0)(S* T_fbar e0)^*``.

    ``C`` is the commutator ``T_f T_g - T_g T_f``, computed on degrees up
    to ``n + 1`` from products over an enlarged intermediate basis.
    """
    reach = max(f1.fmax, g1.fmax, 0)
    big = n + 1 + reach
    Tf = toeplitz1(f1, big, n + 1).entries
    Tg = toeplitz1(g1, big, n + 1).entries
    Tf_c = toeplitz1(f1, n + 1, big).entries
    Tg_c = toeplitz1(g1, n + 1, big).entries
    C = Tf @ Tg_c - Tg @ Tf_c
    residual = C[: n + 1, : n + 1] - C[1 : n + 2, 1 : n + 2]
    a = np.arange(1, n + 2)
    fpos = np.array([f1.coeff(k) for k in a])
    gpos = np.array([g1.coeff(k) for k in a])
    fneg = np.array([f1.coeff(-k) for k in a])
    gneg = np.array([g1.coeff(-k) for k in a])
    # (S* T_gbar e0)_c = conj(g_{-(c+1)}), so its adjoint row is g_{-(c+1)}
    rank2 = -np.outer(fpos, gneg) + np.outer(gpos, fneg)
    basis = _basis1(n)
    err = 4 * _semicomm_err(f1, g1)
    return (OperatorMatrix(residual, basis, basis, err == 0.0, err),
            OperatorMatrix(rank2, basis, basis, err == 0.0, err))


# ---------------------------------------------------------------------------
# tensor symbols: sums of Kronecker products of one-variable sections
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class KronOperator:
    """``sum_t c_t (A_t kron B_t)`` on a box, never densified unless asked."""

    terms: tuple
    box: TruncationBox
    err: float = 0.0

    @property
    def shape(self):
        return (self.box.size, self.box.size)

    def matvec(self, x):
        X = np.asarray(x).reshape(self.box.n1 + 1, self.box.n2 + 1)
        out = np.zeros_like(X, dtype=np.complex128)
        for c, A, B in self.terms:
            out += c * (A @ X @ B.T)
        return out.reshape(np.shape(x))

    def rmatvec(self, y):
        Y = np.asarray(y).reshape(self.box.n1 + 1, self.box.n2 + 1)
        out = np.zeros_like(Y, dtype=np.complex128)
        for c, A, B in self.terms:
            out += np.conj(c) * (A.conj().T @ Y @ B.conj())
        return out.reshape(np.shape(y))

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.complex128)
        for c, A, B in self.terms:
            out += c * np.kron(A, B)
        return out

    def to_matrix(self) -> OperatorMatrix:
        basis = self.box.basis()
        return OperatorMatrix(self.to_dense(), basis, basis, self.err == 0.0, self.err)

    def entry_moduli(self) -> np.ndarray:
        return np.abs(self.to_dense())

    def masked(self, keep_rows: np.ndarray, keep_cols: np.ndarray) -> LinearOperator:
        """Operator ``x -> R (K (C x))`` with 0/1 masks ``R``, ``C`` as a LinearOperator."""
        r = keep_rows.astype(float)
        c = keep_cols.astype(float)
        return LinearOperator(
            self.shape, dtype=np.complex128,
            matvec=lambda x: r * self.matvec(c * np.ravel(x)),
            rmatvec=lambda y: c * self.rmatvec(r * np.ravel(y)),
        )

    def as_linear_operator(self) -> LinearOperator:
        return LinearOperator(self.shape, dtype=np.complex128,
                              matvec=lambda x: self.matvec(np.ravel(x)),
                              rmatvec=lambda y: self.rmatvec(np.ravel(y)))


def _full1(f: Symbol1, g: Symbol1, n: int) -> np.ndarray:
    return toeplitz1(multiply(f, g), n).entries


def tensor_semicommutator(f: Symbol2, g: Symbol2, box: TruncationBox) -> KronOperator:
    """Semi-commutator of tensor symbols as three Kronecker terms.

    With ``F_i = T_{f_i g_i}`` and ``N_i = sum_{m<0} f_i(a-m) g_i(m-c)`` the
    section is ``-N_1 x F_2 - F_1 x N_2 + N_1 x N_2``.
    """
    (f1, f2), (g1, g2) = f.factors, g.factors
    N1 = _negpart1(f1, g1, box.n1)
    N2 = _negpart1(f2, g2, box.n2)
    F1 = _full1(f1, g1, box.n1)
    F2 = _full1(f2, g2, box.n2)
    terms = ((-1.0, N1, F2), (-1.0, F1, N2), (1.0, N1, N2))
    return KronOperator(terms, box, _semicomm_err(f, g))


def _plus1(f: Symbol1, g: Symbol1, n: int) -> np.ndarray:
    return _full1(f, g, n) - _negpart1(f, g, n)


def tensor_commutator(f: Symbol2, g: Symbol2, box: TruncationBox) -> KronOperator:
    """``T_f T_g - T_g T_f`` for tensor symbols: ``P_1 x P_2 - Q_1 x Q_2``."""
    (f1, f2), (g1, g2) = f.factors, g.factors
    terms = (
        (1.0, _plus1(f1, g1, box.n1), _plus1(f2, g2, box.n2)),
        (-1.0, _plus1(g1, f1, box.n1), _plus1(g2, f2, box.n2)),
    )
    return KronOperator(terms, box, 2 * _semicomm_err(f, g))


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

def _as_array(A) -> np.ndarray:
    if isinstance(A, OperatorMatrix):
        return A.entries
    if isinstance(A, KronOperator):
        return A.to_dense()
    return np.asarray(A)


def singular_values(A) -> np.ndarray:
    """All singular values, descending."""
    M = _as_array(A)
    if M.size == 0:
        return np.zeros(0)
    return sla.svdvals(M)


def singular_values_eig(A) -> np.ndarray:
    """Singular values from the eigenvalues of ``A^* A`` (independent route)."""
    M = _as_array(A)
    G = M.conj().T @ M if M.shape[0] >= M.shape[1] else M @ M.conj().T
    ev = np.linalg.eigvalsh(G)[::-1]
    return np.sqrt(np.clip(ev, 0.0, None))


def rank_estimate(A, tol: float = RANK_TOL) -> int:
    """Number of singular values above ``tol`` times the largest one."""
    s = singular_values(A)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def top_singular_values(A, k: int) -> np.ndarray:
    """The ``k`` largest singular values (dense SVD for small sizes, ARPACK otherwise)."""
    if isinstance(A, (OperatorMatrix, np.ndarray)):
        M = _as_array(A)
        n = min(M.shape)
        if n <= DENSE_SVD_LIMIT:
            return singular_values(M)[:k]
        op = LinearOperator(M.shape, dtype=np.complex128, matvec=lambda x: M @ x,
                            rmatvec=lambda y: M.conj().T @ y)
    elif isinstance(A, KronOperator):
        if A.box.size <= DENSE_SVD_LIMIT:
            return singular_values(A)[:k]
        op = A.as_linear_operator()
    else:
        op = A
    n = min(op.shape)
    k = min(k, n - 1)
    v0 = np.ones(op.shape[1], dtype=np.complex128) / math.sqrt(op.shape[1])
    s = svds(op, k=k, v0=v0, return_singular_vectors=False, tol=0, solver="arpack")
    return np.sort(s)[::-1]


def operator_norm(A) -> float:
    s = top_singular_values(A, 1)
    return float(s[0]) if len(s) else 0.0
