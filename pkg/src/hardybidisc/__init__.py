"""Toeplitz and Hankel operator sections on the Hardy space of the bidisc.

Modules:

* ``symbolcalc``: symbols stored by Fourier coefficients, with tail bounds.
* ``hardyops``: Toeplitz, Hankel, semi-commutator and commutator sections.
* ``kernelprobe``: reproducing kernels, Berezin probes, Mobius pullbacks.
* ``theoremcheck``: checkers returning structured verdicts.
* ``cli``: command-line front end.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegenerateArcError,
    DivergenceError,
    HardyBidiscError,
    HypothesisError,
    SymbolFormatError,
    WindowTooSmallError,
)

__all__ = [
    "__version__",
    "DegenerateArcError",
    "DivergenceError",
    "HardyBidiscError",
    "HypothesisError",
    "SymbolFormatError",
    "WindowTooSmallError",
]
