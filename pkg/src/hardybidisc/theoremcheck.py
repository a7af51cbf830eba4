"""Checkers for the zero, non-compactness and compact-nonzero criteria.

Every checker returns a :class:`Verdict`.  ``certified`` is set only when
the checked predicate was decided in exact arithmetic (structural
analyticity, exactly collected derivative coefficients, interval checks on
stored arc endpoints).  Compactness itself is never certified: finite
sections only give graded evidence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, NamedTuple

import numpy as np
from scipy.sparse.linalg import LinearOperator

from .errors import HypothesisError
from .hardyops import (
    DENSE_SVD_LIMIT,
    ZERO_TOL,
    KronOperator,
    OperatorMatrix,
    TruncationBox,
    commutator_matrix,
    rank2_commutator_identity,
    rank_estimate,
    semicommutator_matrix,
    tensor_commutator,
    tensor_semicommutator,
    top_singular_values,
)
from .kernelprobe import boundary_probe, hankel_kernel_norm, probe_decay1, strictly_decreasing
from .symbolcalc import (
    TWO_PI,
    Symbol1,
    Symbol2,
    band_limit,
    conjugate,
    is_analytic_in,
    make_tent,
    multiply,
    tensor,
    wirtinger,
)

RANK_BOXES = (4, 8, 16)
WITNESS_MAX = 16
PROBE_RADII = (0.5, 0.9, 0.99)
SAMPLE_RADII = (0.3, 0.6, 0.9)
SAMPLE_ANGLES = 16
INDICATOR_BANDWIDTHS = (16, 32, 64)
EXAMPLE_BANDWIDTH = 1024
MIN_VANISHING_ARC = 0.1
DECAY_FACTOR = 2.0


class Conclusion(str, Enum):
    ZERO = "Zero"
    NONCOMPACT = "NonzeroNonCompactEvidence"
    COMPACT_NONZERO = "CompactNonzeroEvidence"
    INCONCLUSIVE = "Inconclusive"


class Evidence(NamedTuple):
    name: str
    value: Any
    err: float
    op: str


@dataclass(frozen=True)
class Verdict:
    conclusion: Conclusion
    evidence: tuple = ()
    certified: bool = False
    notes: tuple = field(default_factory=tuple)

    def get(self, name: str) -> Evidence:
        for e in self.evidence:
            if e.name == name:
                return e
        raise KeyError(name)

    def names(self) -> list:
        return [e.name for e in self.evidence]

    def summary(self) -> str:
        tag = ", certified" if self.certified else ""
        return f"{self.conclusion.value}{tag}"


def _exact(*symbols) -> bool:
    return all(s.is_exact for s in symbols)


# ---------------------------------------------------------------------------
# zero semi-commutators
# ---------------------------------------------------------------------------

def _zero_axes(f: Symbol2, g: Symbol2) -> list:
    """Per axis, which of ``conj(f)`` / ``g`` is analytic (``None`` if neither)."""
    fb = conjugate(f)
    out = []
    for axis in (1, 2):
        if is_analytic_in(fb, axis):
            out.append("conj(f)")
        elif is_analytic_in(g, axis):
            out.append("g")
        else:
            out.append(None)
    return out


def _semicomm(f: Symbol2, g: Symbol2, n: int):
    box = TruncationBox(n, n)
    if f.factors and g.factors:
        return tensor_semicommutator(f, g, box)
    return semicommutator_matrix(f, g, box)


def _max_entry(A) -> tuple:
    if isinstance(A, KronOperator):
        M = A.to_dense()
    else:
        M = A.entries
    return float(np.max(np.abs(M))) if M.size else 0.0, A.err


def check_thm1(f: Symbol2, g: Symbol2) -> Verdict:
    """Zero law: the semi-commutator vanishes iff on each axis ``conj(f)`` or ``g`` is analytic."""
    exact = _exact(f, g)
    if f.is_zero() or g.is_zero():
        ev = (Evidence("zero_symbol", True, 0.0, "is_zero"),)
        return Verdict(Conclusion.ZERO, ev, certified=exact)
    axes = _zero_axes(f, g)
    ev = [Evidence(f"axis{i + 1}_analytic", a or "none", 0.0, "is_analytic_in") for i, a in enumerate(axes)]
    if all(axes):
        m, e = _max_entry(_semicomm(f, g, 8))
        ev.append(Evidence("max_entry_box8", m, e, "semicommutator_matrix"))
        notes = () if exact else ("analyticity judged on stored coefficients only",)
        return Verdict(Conclusion.ZERO, tuple(ev), certified=exact, notes=notes)

    witness = None
    for n in range(WITNESS_MAX + 1):
        m, e = _max_entry(_semicomm(f, g, n))
        if m > e + ZERO_TOL:
            witness = (n, m, e)
            break
    if witness is not None:
        ev.append(Evidence("witness_box", witness[0], 0.0, "semicommutator_matrix"))
        ev.append(Evidence("witness_max_entry", witness[1], witness[2], "semicommutator_matrix"))
    ranks = [rank_estimate(_dense(_semicomm(f, g, n))) for n in RANK_BOXES]
    ev.append(Evidence("rank_sequence", ranks, 0.0, "rank_estimate"))

    if witness is None:
        return Verdict(Conclusion.INCONCLUSIVE, tuple(ev),
                       notes=(f"no entry above the error bound up to box {WITNESS_MAX}",))
    if exact:
        t2 = check_thm2_necessary(f, g)
        ev.extend(t2.evidence)
        if t2.conclusion is Conclusion.NONCOMPACT:
            return Verdict(Conclusion.NONCOMPACT, tuple(ev))
    return Verdict(Conclusion.INCONCLUSIVE, tuple(ev),
                   notes=("nonzero; compactness not decided by the zero law",))


def _dense(A) -> np.ndarray:
    return A.to_dense() if isinstance(A, KronOperator) else A.entries


# ---------------------------------------------------------------------------
# derivative conditions
# ---------------------------------------------------------------------------

def _fc(c: complex) -> tuple:
    return Fraction(c.real), Fraction(c.imag)


def _cmul(a: tuple, b: tuple) -> tuple:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def derivative_product_series(f: Symbol2, g: Symbol2, axis: int) -> dict:
    """Exact expansion of ``d f/d z_i * d g/d zbar_i`` for axis ``i``.

    The differentiated variable is interior and the other one lies on the
    circle, so the product is ``sum c[p, q, s] z_i^p conj(z_i)^q w^s`` with
    ``w`` the other coordinate.  Coefficients are exact rationals
    ``(re, im)`` built from the stored binary floats; zero entries are
    dropped.
    """
    i, o = axis - 1, 2 - axis
    fsel = [(int(m[i]), int(m[o]), c) for m, c in zip(f.freqs.tolist(), f.coefs) if m[i] >= 1]
    gsel = [(int(m[i]), int(m[o]), c) for m, c in zip(g.freqs.tolist(), g.coefs) if m[i] <= -1]
    out: dict = {}
    for a, s1, cf in fsel:
        x = _fc(cf)
        x = (x[0] * a, x[1] * a)
        for b, s2, cg in gsel:
            y = _fc(cg)
            y = (y[0] * -b, y[1] * -b)
            key = (a - 1, -b - 1, s1 + s2)
            p = _cmul(x, y)
            acc = out.get(key, (Fraction(0), Fraction(0)))
            out[key] = (acc[0] + p[0], acc[1] + p[1])
    return {k: v for k, v in out.items() if v[0] != 0 or v[1] != 0}


def _value_at_origin(series: dict) -> complex:
    """The product at ``z_i = 0`` and ``w = 1``."""
    re = sum((v[0] for (p, q, _), v in series.items() if p == 0 and q == 0), Fraction(0))
    im = sum((v[1] for (p, q, _), v in series.items() if p == 0 and q == 0), Fraction(0))
    return complex(float(re), float(im))


def _sampled_product(f: Symbol2, g: Symbol2, axis: int):
    """Max modulus of the derivative product on radius x torus grids."""
    best, best_err = 0.0, 0.0
    thetas = [TWO_PI * k / SAMPLE_ANGLES for k in range(SAMPLE_ANGLES)]
    d_in = f"z{axis}"
    d_bar = f"zbar{axis}"
    for r in SAMPLE_RADII:
        for a in thetas:
            zi = r * complex(math.cos(a), math.sin(a))
            for t in thetas:
                w = complex(math.cos(t), math.sin(t))
                z = (zi, w) if axis == 1 else (w, zi)
                x, ex = wirtinger(f, z, d_in)
                y, ey = wirtinger(g, z, d_bar)
                v = abs(x * y)
                if v > best:
                    best = v
                    best_err = abs(x) * ey + abs(y) * ex + ex * ey
    return best, best_err


def check_thm2_necessary(f: Symbol2, g: Symbol2) -> Verdict:
    """Necessary derivative conditions for a compact semi-commutator.

    Condition 1 is ``df/dz1 * dg/dzbar1 = 0`` on ``D x T``; condition 2 is
    the same with the roles of the variables swapped, on ``T x D``.  A
    failed condition is evidence of non-compactness.
    """
    ev = []
    failed = []
    if _exact(f, g):
        for axis in (1, 2):
            series = derivative_product_series(f, g, axis)
            mx = max((abs(complex(float(v[0]), float(v[1]))) for v in series.values()), default=0.0)
            ev.append(Evidence(f"condition{axis}_terms", len(series), 0.0, "derivative_product_series"))
            ev.append(Evidence(f"condition{axis}_max_coeff", mx, 0.0, "derivative_product_series"))
            ev.append(Evidence(f"condition{axis}_value_at_0", _value_at_origin(series), 0.0,
                               "derivative_product_series"))
            if series:
                failed.append(axis)
        if failed:
            return Verdict(Conclusion.NONCOMPACT, tuple(ev), certified=True,
                           notes=tuple(f"condition {a} fails identically" for a in failed))
        return Verdict(Conclusion.INCONCLUSIVE, tuple(ev), certified=True,
                       notes=("both conditions vanish identically; they are necessary, not sufficient",))
    for axis in (1, 2):
        v, e = _sampled_product(f, g, axis)
        ev.append(Evidence(f"condition{axis}_sampled_max", v, e, "wirtinger"))
        if v > 10 * e and v > ZERO_TOL:
            failed.append(axis)
    if failed:
        return Verdict(Conclusion.NONCOMPACT, tuple(ev),
                       notes=tuple(f"condition {a} fails at a sampled point" for a in failed))
    return Verdict(Conclusion.INCONCLUSIVE, tuple(ev), notes=("no sampled violation",))


# ---------------------------------------------------------------------------
# compactness indicators
# ---------------------------------------------------------------------------

class IndicatorRow(NamedTuple):
    bandwidth: int
    sigma1: float
    sigma5: float
    sigma25: float
    tail: float
    err: float


def _as_op(A):
    if isinstance(A, KronOperator):
        return A.matvec, A.rmatvec, A.shape, A.box.size
    M = A.entries
    return (lambda x: M @ x), (lambda y: M.conj().T @ y), M.shape, M.shape[0]


def _tail_compression(A, box: TruncationBox) -> float:
    """Norm of ``A - P_L A P_L`` with ``L`` the degrees ``max(a1, a2) <= N/2``."""
    basis = box.basis()
    low = (basis.max(axis=1) <= max(box.n1, box.n2) // 2).astype(float)
    if isinstance(A, OperatorMatrix) and A.entries.shape[0] <= DENSE_SVD_LIMIT:
        M = A.entries.copy()
        keep = low.astype(bool)
        M[np.ix_(keep, keep)] = 0.0
        return float(top_singular_values(M, 1)[0]) if M.size else 0.0
    mv, rmv, shape, _ = _as_op(A)
    op = LinearOperator(shape, dtype=np.complex128,
                        matvec=lambda x: mv(np.ravel(x)) - low * mv(low * np.ravel(x)),
                        rmatvec=lambda y: rmv(np.ravel(y)) - low * rmv(low * np.ravel(y)))
    if isinstance(A, KronOperator) and box.size <= DENSE_SVD_LIMIT:
        M = A.to_dense()
        keep = low.astype(bool)
        M[np.ix_(keep, keep)] = 0.0
        return float(top_singular_values(M, 1)[0])
    return float(top_singular_values(op, 1)[0])


def _sigmas(A, k: int = 25) -> np.ndarray:
    s = np.zeros(k)
    top = top_singular_values(A, k)
    s[: len(top)] = top
    return s


def compactness_indicator(f: Symbol2, g: Symbol2, bandwidths=INDICATOR_BANDWIDTHS,
                          kind: str = "semicommutator") -> list:
    """Singular values and tail compression of band-limited sections.

    At bandwidth ``N`` both symbols are limited to frequencies ``|m_i| <= N``
    and the operator is sectioned to the box ``(N, N)``.  Heuristic: a
    decaying tail compression suggests compactness, a flat one suggests the
    opposite.
    """
    if kind not in ("semicommutator", "commutator"):
        raise ValueError("kind must be 'semicommutator' or 'commutator'")
    rows = []
    for N in bandwidths:
        fN, gN = band_limit(f, N), band_limit(g, N)
        box = TruncationBox(N, N)
        if fN.factors and gN.factors:
            A = (tensor_semicommutator if kind == "semicommutator" else tensor_commutator)(fN, gN, box)
        else:
            A = (semicommutator_matrix if kind == "semicommutator" else commutator_matrix)(fN, gN, box)
        if _max_entry(A)[0] == 0.0:
            rows.append(IndicatorRow(N, 0.0, 0.0, 0.0, 0.0, A.err))
            continue
        s = _sigmas(A)
        rows.append(IndicatorRow(N, float(s[0]), float(s[4]), float(s[24]),
                                 _tail_compression(A, box), A.err))
    return rows


def tail_decays(rows: list, factor: float = DECAY_FACTOR) -> bool:
    """Tail compression at the last bandwidth is below the first one over ``factor``."""
    return rows[-1].tail < rows[0].tail / factor


# ---------------------------------------------------------------------------
# tensor symbols
# ---------------------------------------------------------------------------

def _arc_offsets(a, b):
    """Arcs as exact rationals: ``(length a, offset of b from a's start, length b, period)``."""
    P = Fraction(TWO_PI)
    la = Fraction(a[1]) - Fraction(a[0])
    lb = Fraction(b[1]) - Fraction(b[0])
    d = (Fraction(b[0]) - Fraction(a[0])) % P
    return la, d, lb, P


def arcs_disjoint(a, b) -> bool:
    """Two closed arcs meet at most in endpoints (stored endpoints taken exactly)."""
    la, d, lb, P = _arc_offsets(a, b)
    return la <= d and d + lb <= P


def supports_disjoint(f: Symbol1, g: Symbol1) -> bool | None:
    """``True``/``False`` when both supports are recorded, else ``None``."""
    if not f.support_arcs or not g.support_arcs:
        return None
    return all(arcs_disjoint(a, b) for a in f.support_arcs for b in g.support_arcs)


def common_vanishing_arc(f: Symbol1, g: Symbol1) -> float:
    """Longest arc outside both supports (``0`` when unknown)."""
    if not f.support_arcs or not g.support_arcs:
        return 0.0
    arcs = [(a % TWO_PI, (b - a)) for a, b in (*f.support_arcs, *g.support_arcs)]
    arcs.sort()
    best = 0.0
    for (s, L), (s2, _) in zip(arcs, arcs[1:] + [(arcs[0][0] + TWO_PI, 0.0)]):
        best = max(best, s2 - (s + L))
    return best


def _product_vanishes(f: Symbol1, g: Symbol1, tol: float):
    """``(certified, holds, measured)`` for ``f g = 0`` on the circle."""
    disjoint = supports_disjoint(f, g)
    if disjoint is not None:
        return True, disjoint, 0.0
    p = multiply(f, g)
    mx = float(np.max(np.abs(p.coefs))) if len(p.coefs) else 0.0
    return False, mx <= tol, mx


def _reject_zero(*fs):
    for f in fs:
        if f.is_zero() or (len(f.coefs) and float(np.max(np.abs(f.coefs))) == 0.0):
            raise HypothesisError("factors must be nonzero")
        if not len(f.coefs):
            raise HypothesisError("factors must be nonzero")


def check_thm3(f1: Symbol1, f2: Symbol1, g1: Symbol1, g2: Symbol1, box: int = 16,
               tol: float = 1e-12) -> Verdict:
    """Compact nonzero semi-commutator test for ``f = f1 f2`` and ``g = g1 g2``."""
    _reject_zero(f1, f2, g1, g2)
    f, g = tensor(f1, f2), tensor(g1, g2)
    if all(_zero_axes(f, g)):
        return check_thm1(f, g)

    ev = []
    cond1 = True
    cert1 = True
    for i, (fi, gi) in enumerate(((f1, g1), (f2, g2)), start=1):
        certified, holds, measured = _product_vanishes(fi, gi, tol)
        op = "supports_disjoint" if certified else "multiply"
        ev.append(Evidence(f"condition1_axis{i}", bool(holds), measured, op))
        cond1 &= holds
        cert1 &= certified

    decays = True
    for i, (fi, gi) in enumerate(((f1, g1), (f2, g2)), start=1):
        maxima = probe_decay1(fi, gi, PROBE_RADII)
        ok = strictly_decreasing(maxima)
        ev.append(Evidence(f"condition2_axis{i}_maxima", [maxima[r][0] for r in sorted(maxima)],
                           max(maxima[r][1] for r in maxima), "probe_decay1"))
        decays &= ok

    S = tensor_semicommutator(f, g, TruncationBox(box, box))
    m, e = _max_entry(S)
    nonzero = m > 10 * e + ZERO_TOL
    ev.append(Evidence("semicommutator_max_entry", m, e, "tensor_semicommutator"))

    if cond1 and decays and nonzero:
        notes = ("condition (1) certified by disjoint supports",) if cert1 else ()
        return Verdict(Conclusion.COMPACT_NONZERO, tuple(ev), notes=notes)
    if nonzero and not cond1:
        return Verdict(Conclusion.NONCOMPACT, tuple(ev), certified=False,
                       notes=("condition (1) fails",))
    if nonzero and not decays:
        return Verdict(Conclusion.NONCOMPACT, tuple(ev), notes=("condition (2) not observed",))
    return Verdict(Conclusion.INCONCLUSIVE, tuple(ev))


# ---------------------------------------------------------------------------
# corollaries
# ---------------------------------------------------------------------------

def _is_analytic(f: Symbol2) -> bool:
    return is_analytic_in(f, 1) and is_analytic_in(f, 2)


def check_corollary1(f: Symbol2, radii=PROBE_RADII, angles: int = 4, fixed: float = 0.5) -> Verdict:
    """The self-pairing ``T_fbar T_f - T_{fbar f} = -H_f^* H_f`` is compact iff zero."""
    if _is_analytic(f):
        ev = (Evidence("analytic", True, 0.0, "is_analytic_in"),)
        return Verdict(Conclusion.ZERO, ev, certified=f.is_exact)
    ev = [Evidence("analytic", False, 0.0, "is_analytic_in")]
    thetas = [TWO_PI * k / angles for k in range(angles)]
    for label, pick in (("mixed_r1", lambda r: (fixed, r)), ("mixed_r2", lambda r: (r, fixed))):
        vals = []
        for r in sorted(radii):
            r1, r2 = pick(r)
            lo, err = math.inf, 0.0
            for t1 in thetas:
                for t2 in thetas:
                    z = (r1 * complex(math.cos(t1), math.sin(t1)), r2 * complex(math.cos(t2), math.sin(t2)))
                    v, e = hankel_kernel_norm(f, z)
                    if v < lo:
                        lo, err = v, e
            vals.append(lo)
        # the fixed coordinate stays interior while the other one moves out
        ev.append(Evidence(f"hankel_norm_min_{label}", vals, err, "hankel_kernel_norm"))
    if f.is_exact:
        t2 = check_thm2_necessary(conjugate(f), f)
        ev.extend(t2.evidence)
    return Verdict(Conclusion.NONCOMPACT, tuple(ev),
                   notes=("Hankel operator is nonzero, hence not compact by the self-pairing law",))


def check_corollary2(f: Symbol2, g: Symbol2) -> Verdict:
    """Commutator law when one of ``f, conj(f), g, conj(g)`` is analytic."""
    fb, gb = conjugate(f), conjugate(g)
    if _is_analytic(f) or _is_analytic(gb):
        # T_g T_f = T_{gf}; the commutator is the semi-commutator of (f, g)
        inner, route = check_thm1(f, g), "thm1(f, g)"
    elif _is_analytic(fb) or _is_analytic(g):
        # T_f T_g = T_{fg}; the commutator is minus the semi-commutator of (g, f)
        inner, route = check_thm1(g, f), "thm1(g, f)"
    else:
        return Verdict(Conclusion.INCONCLUSIVE, (Evidence("hypothesis", False, 0.0, "is_analytic_in"),),
                       notes=("none of f, conj(f), g, conj(g) is analytic; see example_section4",))
    ev = (Evidence("route", route, 0.0, "check_corollary2"),) + inner.evidence
    if inner.conclusion is Conclusion.ZERO:
        return Verdict(Conclusion.ZERO, ev, certified=inner.certified)
    return Verdict(Conclusion.NONCOMPACT, ev,
                   notes=("under the hypothesis a compact commutator is zero",))


# ---------------------------------------------------------------------------
# the compact nonzero commutator example
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TentSpec:
    a: float
    w: float

    def build(self, bandwidth: int) -> Symbol1:
        return make_tent(self.a, self.w, bandwidth)


DEFAULT_TENTS = {
    "f1": TentSpec(math.pi / 4, math.pi / 4),
    "g1": TentSpec(5 * math.pi / 4, math.pi / 4),
    "f2": TentSpec(math.pi / 4, math.pi / 4),
    "g2": TentSpec(5 * math.pi / 4, math.pi / 4),
}


def _gate(f1, g1, f2, g2):
    if not supports_disjoint(f1, g1):
        raise HypothesisError("f1 and g1 must have disjoint supports")
    if not supports_disjoint(f2, g2):
        raise HypothesisError("f2 and g2 must have disjoint supports")
    if common_vanishing_arc(f1, g1) < MIN_VANISHING_ARC:
        raise HypothesisError(f"f1 and g1 need a common zero arc of length >= {MIN_VANISHING_ARC}")


def example_section4(tents: dict | None = None, bandwidth: int = EXAMPLE_BANDWIDTH,
                     bandwidths=INDICATOR_BANDWIDTHS, witness_box: int = 16,
                     rank2_degree: int = 16, probe_angles: int = 8) -> Verdict:
    """Evidence that the commutator of two tent tensors is nonzero and compact."""
    spec = dict(DEFAULT_TENTS)
    spec.update(tents or {})
    f1, g1, f2, g2 = (spec[k].build(bandwidth) for k in ("f1", "g1", "f2", "g2"))
    _gate(f1, g1, f2, g2)
    f, g = tensor(f1, f2), tensor(g1, g2)
    ev = []

    C = tensor_commutator(f, g, TruncationBox(witness_box, witness_box))
    M = C.to_dense()
    idx = int(np.argmax(np.abs(M)))
    basis = C.box.basis()
    a, c = divmod(idx, M.shape[1])
    m = float(abs(M.flat[idx]))
    ev.append(Evidence("commutator_witness", m, C.err, "tensor_commutator"))
    ev.append(Evidence("commutator_witness_index",
                       [basis[a].tolist(), basis[c].tolist()], 0.0, "tensor_commutator"))
    nonzero = m > 10 * C.err

    lhs, rhs = rank2_commutator_identity(f1, g1, rank2_degree)
    ev.append(Evidence("rank2_residual", (lhs - rhs).max_abs(), 0.0, "rank2_commutator_identity"))

    rows = compactness_indicator(f, g, bandwidths, kind="commutator")
    for row in rows:
        ev.append(Evidence(f"sigma@{row.bandwidth}", [row.sigma1, row.sigma5, row.sigma25], row.err,
                           "compactness_indicator"))
        ev.append(Evidence(f"tail@{row.bandwidth}", row.tail, row.err, "compactness_indicator"))
    ratio_first = rows[0].sigma25 / rows[0].sigma1
    ratio_last = rows[-1].sigma25 / rows[-1].sigma1
    ev.append(Evidence("sigma25_ratio", [ratio_first, ratio_last], 0.0, "compactness_indicator"))
    decaying = tail_decays(rows) and ratio_last < ratio_first

    # the commutator is the difference of the two semi-commutators
    for name, (p, q) in (("probe_fg", (f, g)), ("probe_gf", (g, f))):
        maxima = boundary_probe(p, q, PROBE_RADII, probe_angles).shell_maxima()
        ev.append(Evidence(f"{name}_maxima", [maxima[r][0] for r in sorted(maxima)],
                           max(maxima[r][1] for r in maxima), "boundary_probe"))
        decaying &= strictly_decreasing(maxima)

    pieces = []
    for name, args in (("thm3_fg", (f1, f2, g1, g2)), ("thm3_gf", (g1, g2, f1, f2))):
        v = check_thm3(*args)
        pieces.append(v.conclusion)
        ev.append(Evidence(name, v.conclusion.value, 0.0, "check_thm3"))

    if nonzero and decaying and all(p is Conclusion.COMPACT_NONZERO for p in pieces):
        return Verdict(Conclusion.COMPACT_NONZERO, tuple(ev))
    return Verdict(Conclusion.INCONCLUSIVE, tuple(ev))
