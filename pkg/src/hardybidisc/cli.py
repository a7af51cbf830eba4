"""Command-line front end.

Exit codes: 0 for every completed analysis whatever its conclusion, 1 for
inputs rejected by a checker's hypotheses, 2 for usage, parse and IO
errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import __version__
from .errors import HardyBidiscError, HypothesisError, SymbolFormatError
from .formats import (
    atomic_write,
    dumps,
    load_symbol,
    matrix_to_dict,
    probe_table_to_csv,
    save_symbol,
    singular_values_csv,
    symbol_to_dict,
    verdict_to_dict,
)
from .hardyops import (
    TruncationBox,
    commutator_matrix,
    hankel_matrix,
    semicommutator_matrix,
    singular_values,
    toeplitz_matrix,
)
from .kernelprobe import boundary_probe
from .randsym import random_zero_pair
from .symbolcalc import (
    DEFAULT_BANDWIDTH,
    QUADRANTS,
    Symbol1,
    is_analytic_in,
    make_arc,
    make_tent,
    make_trigpoly,
    quadrant_part,
    tensor,
)
from .theoremcheck import (
    INDICATOR_BANDWIDTHS,
    check_corollary1,
    check_corollary2,
    check_thm1,
    check_thm2_necessary,
    check_thm3,
    example_section4,
)


@dataclass(frozen=True)
class RunConfig:
    f: str | None = None
    g: str | None = None
    f1: str | None = None
    f2: str | None = None
    g1: str | None = None
    g2: str | None = None
    box: tuple = (8, 8)
    bandwidth: int = DEFAULT_BANDWIDTH
    bandwidths: tuple = INDICATOR_BANDWIDTHS
    radii: tuple = (0.5, 0.9, 0.99)
    angles: int = 16
    tol: float = 1e-12
    out: str = "."
    seed: int = 0
    count: int = 50

    def validate(self) -> RunConfig:
        if not self.tol > 0:
            raise SymbolFormatError("tol must be positive")
        if any(not 0.0 < r < 1.0 for r in self.radii):
            raise SymbolFormatError("radii must lie in (0, 1)")
        if self.angles < 1 or min(self.box) < 0 or self.bandwidth < 1:
            raise SymbolFormatError("angles and bandwidth must be positive, box nonnegative")
        return self


def _ints(text: str) -> tuple:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _floats(text: str) -> tuple:
    return tuple(float(x) for x in text.split(",") if x.strip())


_PARSERS = {
    "box": _ints, "bandwidths": _ints, "radii": _floats,
    "bandwidth": int, "angles": int, "seed": int, "count": int, "tol": float,
}


def _coerce(key: str, value: str):
    try:
        v = _PARSERS.get(key, str)(value)
    except ValueError:
        raise SymbolFormatError(f"bad value for {key!r}: {value!r}") from None
    if key == "box":
        if len(v) == 1:
            v = (v[0], v[0])
        if len(v) != 2:
            raise SymbolFormatError("box takes N or N1,N2")
    return v


def read_config(path) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    known = {f.name for f in fields(RunConfig)}
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SymbolFormatError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in known:
            raise SymbolFormatError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _coerce(key, value)
        except SymbolFormatError as exc:
            raise SymbolFormatError(f"{path}:{lineno}: {exc}") from None
    return out


def build_config(args) -> RunConfig:
    values = read_config(args.config) if getattr(args, "config", None) else {}
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = _coerce(f.name, v) if isinstance(v, str) and f.name in _PARSERS else v
    return replace(RunConfig(), **values).validate()


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

class Output:
    """Writes payload files and a separate metadata file with timestamps."""

    def __init__(self, cfg: RunConfig, argv):
        self.cfg = cfg
        self.dir = Path(cfg.out)
        self.argv = list(argv)
        self.files: list = []

    def json(self, name: str, payload: dict) -> Path:
        path = atomic_write(self.dir / name, dumps({"seed": self.cfg.seed, **payload}))
        self.files.append(path.name)
        return path

    def text(self, name: str, text: str) -> Path:
        path = atomic_write(self.dir / name, text)
        self.files.append(path.name)
        return path

    def finish(self):
        meta = {
            "version": __version__,
            "argv": self.argv,
            "seed": self.cfg.seed,
            "files": self.files,
            "written_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        }
        atomic_write(self.dir / "metadata.json", dumps(meta))


def _need(cfg: RunConfig, *names: str) -> list:
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise SymbolFormatError("missing symbol file(s): " + ", ".join("--" + n for n in missing))
    return [load_symbol(getattr(cfg, n)) for n in names]


def _as1(f):
    if not isinstance(f, Symbol1):
        raise SymbolFormatError("a one-variable symbol is required here")
    return f


def _as2(f):
    if isinstance(f, Symbol1):
        raise SymbolFormatError("a two-variable symbol is required here")
    return f


# ---------------------------------------------------------------------------
# symbol
# ---------------------------------------------------------------------------

def _fmt(c: complex) -> str:
    return f"{c.real!r}{c.imag:+}j" if c.imag else repr(c.real)


def describe_symbol(f, limit: int = 40) -> str:
    lines = []
    kind = f.descriptor[0] if f.descriptor else "explicit"
    lines.append(f"variables: {f.ndim}")
    lines.append(f"descriptor: {kind}")
    if f.bandwidth is not None:
        lines.append(f"bandwidth: {f.bandwidth}")
    lines.append(f"terms: {len(f.coefs)}")
    lines.append(f"exact: {f.is_exact}")
    lines.append(f"l2_tail: {f.l2_tail!r}")
    lines.append(f"l1_tail: {f.l1_tail!r}")
    if f.ndim == 1:
        lines.append(f"analytic: {is_analytic_in(f)}")
        if f.support_arcs:
            lines.append("support_arcs: " + ", ".join(f"({a!r}, {b!r})" for a, b in f.support_arcs))
    else:
        lines.append(f"analytic_in_z1: {is_analytic_in(f, 1)}")
        lines.append(f"analytic_in_z2: {is_analytic_in(f, 2)}")
        for q in QUADRANTS:
            part = quadrant_part(f, q)
            l2 = float(np.sqrt(np.sum(np.abs(part.coefs) ** 2)))
            lines.append(f"quadrant {q}: terms={len(part.coefs)} l2={l2!r}")
    lines.append("coefficients:")
    order = np.argsort(-np.abs(f.coefs), kind="stable")[:limit]
    for i in sorted(order.tolist()):
        m = f.freqs[i]
        key = str(int(m)) if f.ndim == 1 else f"({int(m[0])}, {int(m[1])})"
        lines.append(f"  {key}: {_fmt(complex(f.coefs[i]))}")
    if len(f.coefs) > limit:
        lines.append(f"  ... {len(f.coefs) - limit} smaller terms not shown")
    return "\n".join(lines)


def _parse_term(text: str):
    """``m:re[,im]`` or ``m1,m2:re[,im]``."""
    try:
        freq, coef = text.split(":")
        m = _ints(freq)
        c = _floats(coef)
    except ValueError:
        raise SymbolFormatError(f"bad term {text!r}; expected m:re,im or m1,m2:re,im") from None
    if len(m) not in (1, 2) or len(c) not in (1, 2):
        raise SymbolFormatError(f"bad term {text!r}")
    value = complex(c[0], c[1] if len(c) == 2 else 0.0)
    return (m[0] if len(m) == 1 else m), value


def cmd_symbol(args, cfg: RunConfig, out: Output) -> int:
    if args.action == "show":
        f = load_symbol(args.path)
        print(describe_symbol(f, args.limit))
        return 0
    kind = args.kind
    if kind == "tent":
        f = make_tent(args.a, args.w, cfg.bandwidth)
    elif kind == "arc":
        f = make_arc(args.a, args.b, cfg.bandwidth)
    elif kind == "trigpoly":
        f = make_trigpoly([_parse_term(t) for t in args.term or ()])
    else:
        f1, f2 = load_symbol(args.factors[0]), load_symbol(args.factors[1])
        f = tensor(f1, f2)
    path = save_symbol(f, Path(cfg.out) / args.name, extra={"seed": cfg.seed})
    out.files.append(path.name)
    d = symbol_to_dict(f)
    print(f"wrote {path} (type {d['type']})")
    return 0


# ---------------------------------------------------------------------------
# op
# ---------------------------------------------------------------------------

def cmd_op(args, cfg: RunConfig, out: Output) -> int:
    box = TruncationBox(*cfg.box)
    if args.kind in ("toeplitz", "hankel"):
        (f,) = _need(cfg, "f")
        f = _as2(f)
        A = toeplitz_matrix(f, box) if args.kind == "toeplitz" else hankel_matrix(f, box)
    else:
        f, g = (_as2(s) for s in _need(cfg, "f", "g"))
        A = commutator_matrix(f, g, box) if args.kind == "commutator" else semicommutator_matrix(f, g, box)
    s = singular_values(A)
    if args.kind != "svd":
        out.json(f"{args.kind}.json", matrix_to_dict(A))
    out.text(f"{args.kind}_sv.csv", singular_values_csv(s, cfg.seed))
    print(f"{args.kind}: shape {A.shape[0]}x{A.shape[1]}, exactness {A.exactness}, "
          f"max |entry| {A.max_abs()!r}, sigma_1 {float(s[0]) if len(s) else 0.0!r}")
    return 0


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def _print_verdict(name: str, v) -> None:
    print(f"{name}: {v.summary()}")
    for e in v.evidence:
        print(f"  {e.name} = {e.value!r} (err {e.err!r}, {e.op})")
    for n in v.notes:
        print(f"  note: {n}")


def cmd_check(args, cfg: RunConfig, out: Output) -> int:
    kind = args.kind
    if kind == "thm1":
        v = check_thm1(*(_as2(s) for s in _need(cfg, "f", "g")))
    elif kind == "thm2":
        v = check_thm2_necessary(*(_as2(s) for s in _need(cfg, "f", "g")))
    elif kind == "thm3":
        v = check_thm3(*(_as1(s) for s in _need(cfg, "f1", "f2", "g1", "g2")), box=cfg.box[0])
    elif kind == "cor1":
        (f,) = _need(cfg, "f")
        v = check_corollary1(_as2(f), radii=cfg.radii)
    elif kind == "cor2":
        v = check_corollary2(*(_as2(s) for s in _need(cfg, "f", "g")))
    else:
        v = example_section4(bandwidths=cfg.bandwidths)
    out.json(f"verdict_{kind}.json", verdict_to_dict(v))
    _print_verdict(kind, v)
    return 0


# ---------------------------------------------------------------------------
# probe
# ---------------------------------------------------------------------------

def cmd_probe(args, cfg: RunConfig, out: Output) -> int:
    f, g = (_as2(s) for s in _need(cfg, "f", "g"))
    box = TruncationBox(*cfg.box) if args.fixed_box else None
    table = boundary_probe(f, g, cfg.radii, cfg.angles, box=box)
    out.text("probe.csv", probe_table_to_csv(table, cfg.seed))
    for r, (m, e) in sorted(table.shell_maxima().items()):
        print(f"shell {r!r}: max hankel product {m!r} (err {e!r})")
    return 0


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------

def cmd_suite(args, cfg: RunConfig, out: Output) -> int:
    """Seeded random pairs obeying the zero law; records max |entry| per pair."""
    rng = np.random.default_rng(cfg.seed)
    box = TruncationBox(*cfg.box)
    lines = [f"# seed={cfg.seed}", "pair,terms_f,terms_g,max_abs"]
    worst = 0.0
    for i in range(cfg.count):
        f, g = random_zero_pair(rng)
        m = semicommutator_matrix(f, g, box).max_abs()
        worst = max(worst, m)
        lines.append(f"{i},{len(f.coefs)},{len(g.coefs)},{m!r}")
    out.text("zero_law.csv", "\n".join(lines) + "\n")
    print(f"{cfg.count} pairs on box {cfg.box}: max |entry| {worst!r}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value file; flags override it")
    p.add_argument("--out", help="output directory")
    p.add_argument("--seed", type=int)
    p.add_argument("--box", help="N or N1,N2")
    p.add_argument("--bandwidth", type=int)
    p.add_argument("--bandwidths", help="comma separated list")
    p.add_argument("--radii", help="comma separated radii in (0, 1)")
    p.add_argument("--angles", type=int)
    p.add_argument("--tol", type=float)
    for name in ("f", "g", "f1", "f2", "g1", "g2"):
        p.add_argument(f"--{name}", help=f"symbol file for {name}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hardybidisc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("symbol", help="inspect or build symbol files")
    ssub = p.add_subparsers(dest="action", required=True)
    s = ssub.add_parser("show")
    s.add_argument("path")
    s.add_argument("--limit", type=int, default=40)
    _common(s)
    b = ssub.add_parser("build")
    b.add_argument("kind", choices=("tent", "arc", "trigpoly", "tensor"))
    b.add_argument("name", help="output file name inside --out")
    b.add_argument("--a", type=float)
    b.add_argument("--w", type=float)
    b.add_argument("--b", type=float)
    b.add_argument("--term", action="append", help="m:re,im or m1,m2:re,im (repeatable)")
    b.add_argument("--factors", nargs=2, metavar=("F1", "F2"))
    _common(b)

    p = sub.add_parser("op", help="build an operator section")
    p.add_argument("kind", choices=("toeplitz", "hankel", "semicomm", "commutator", "svd"))
    _common(p)

    p = sub.add_parser("check", help="run a checker")
    p.add_argument("kind", choices=("thm1", "thm2", "thm3", "cor1", "cor2", "example4"))
    _common(p)

    p = sub.add_parser("probe", help="boundary probes")
    p.add_argument("kind", choices=("boundary",))
    p.add_argument("--fixed-box", action="store_true", help="use --box instead of auto-grown boxes")
    _common(p)

    p = sub.add_parser("suite", help="seeded random zero-law suite")
    p.add_argument("kind", choices=("zero-law",))
    p.add_argument("--count", type=int)
    _common(p)
    return parser


def _check_build_args(args) -> None:
    if args.command != "symbol" or args.action != "build":
        return
    need = {"tent": ("a", "w"), "arc": ("a", "b"), "tensor": ("factors",), "trigpoly": ()}[args.kind]
    missing = [n for n in need if getattr(args, n) is None]
    if missing:
        raise SymbolFormatError(f"symbol build {args.kind} needs " + ", ".join("--" + n for n in missing))


COMMANDS = {"symbol": cmd_symbol, "op": cmd_op, "check": cmd_check, "probe": cmd_probe, "suite": cmd_suite}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_build_args(args)
        cfg = build_config(args)
        out = Output(cfg, argv)
        code = COMMANDS[args.command](args, cfg, out)
        if out.files:
            out.finish()
        return code
    except HypothesisError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return 1
    except (HardyBidiscError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
