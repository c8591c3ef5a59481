"""Integer-combination lattice over the exponent slopes.

Every eigenvalue modulus is exp(mu*theta) with mu an integer combination of
the slopes: each tensor factor contributes at most one slope, so mu is a
nonnegative combination of total degree at most the tensor order.  Recovering
mu from numerics is a lookup into that bounded lattice.
"""

from __future__ import annotations

import bisect
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DegenerateParametersError, UnresolvedEigenvalueError
from .symbols import LinForm, ParamSymbol

__all__ = ["lattice_values", "LatticeMatcher"]


def _vectors(count: int, budget: int, signed: bool):
    """All integer vectors of length ``count`` with sum(|a_i|) <= budget."""
    if count == 0:
        yield ()
        return
    lo = -budget if signed else 0
    for head in range(lo, budget + 1):
        for tail in _vectors(count - 1, budget - abs(head), signed):
            yield (head,) + tail


def lattice_values(symbols: Sequence[ParamSymbol],
                   values: Mapping[ParamSymbol, Fraction],
                   budget: int, signed: bool = False):
    """Pairs (exact value, coefficient vector) for all bounded combinations."""
    out = []
    for vec in _vectors(len(symbols), budget, signed):
        total = Fraction(0)
        for a, s in zip(vec, symbols):
            if a:
                total += a * values[s]
        out.append((total, vec))
    return out


class LatticeMatcher:
    """Snap measured slopes onto the exponent lattice within a tolerance."""

    def __init__(self, symbols: Sequence[ParamSymbol],
                 values: Mapping[ParamSymbol, Fraction],
                 budget: int, tol: float = 1e-6):
        self.symbols = list(symbols)
        exact_sorted = sorted(lattice_values(self.symbols, values, budget))
        entries = [(float(exact), sum(vec), vec) for exact, vec in exact_sorted]
        entries.sort()
        self._keys = [e[0] for e in entries]
        self._entries = entries
        # Never let the matching window straddle two distinct lattice points.
        gaps = (float(b[0] - a[0]) for a, b in zip(exact_sorted, exact_sorted[1:])
                if b[0] != a[0])
        min_gap = min(gaps, default=1.0)
        self.tol = min(tol, min_gap / 4)

    def match(self, mu: float) -> LinForm:
        """Return the matched linear form; ambiguous or missing matches raise."""
        lo = bisect.bisect_left(self._keys, mu - self.tol)
        hi = bisect.bisect_right(self._keys, mu + self.tol)
        if lo == hi:
            raise UnresolvedEigenvalueError(
                f"slope {mu:.9g} is not on the exponent lattice (tol {self.tol})")
        candidates = sorted(self._entries[lo:hi], key=lambda e: (e[1], e[2]))
        if len({e[2] for e in candidates}) > 1:
            raise DegenerateParametersError(
                f"slope {mu:.9g} matches several lattice vectors; "
                "parameters are not generic")
        best = candidates[0]
        form = LinForm.ZERO
        for a, s in zip(best[2], self.symbols):
            if a:
                form = form + LinForm.symbol(s, a)
        return form
