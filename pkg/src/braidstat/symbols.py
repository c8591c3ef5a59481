"""Free parameters of the braid family and linear forms built from them.

The exponent coefficients live on an N x N index grid with the middle index
p = (N+1)/2 distinguished.  A symbol is one exponent slope ``m_rc^(sign)``
with 1 <= r,c <= p (never both equal to p); column indices above p are folded
back onto their mirror image, which is exactly the identification that makes
the family a braid solution, so the folded pair is literally one object here.

A :class:`LinForm` is a rational linear combination of symbols plus a rational
constant, kept separately per spectral argument so that products evaluated at
two different arguments stay exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InvalidParamSetError, MissingParameterError

__all__ = ["ParamSymbol", "LinForm", "ParamSet", "free_parameter_count"]


def free_parameter_count(n: int) -> int:
    """Number of independent exponent slopes for odd size n."""
    return (n + 3) * (n - 1) // 2


@dataclass(frozen=True, order=True)
class ParamSymbol:
    """One exponent slope m_rc^(sign); sign is +1 or -1."""

    row: int
    col: int
    sign: int

    @property
    def name(self) -> str:
        return f"m{self.row}{self.col}{'+' if self.sign > 0 else '-'}"

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, name: str, n: int) -> "ParamSymbol":
        p = (n + 1) // 2
        if len(name) < 4 or name[0] != "m" or name[-1] not in "+-":
            raise InvalidParamSetError(f"bad parameter name {name!r}")
        digits = name[1:-1]
        if len(digits) != 2 or not digits.isdigit():
            raise InvalidParamSetError(f"bad parameter name {name!r}")
        row, col = int(digits[0]), int(digits[1])
        sign = 1 if name[-1] == "+" else -1
        if col > p:
            col = 2 * p - col
        if row > p:
            raise InvalidParamSetError(f"row index out of range in {name!r}")
        if not (1 <= row <= p and 1 <= col <= p) or (row == p and col == p):
            raise InvalidParamSetError(f"{name!r} is not a free parameter for N={n}")
        return cls(row, col, sign)


def symbols_for(n: int) -> list[ParamSymbol]:
    """All free symbols for odd n, in canonical order."""
    p = (n + 1) // 2
    out = []
    for row in range(1, p + 1):
        for col in range(1, p + 1):
            if row == p and col == p:
                continue
            for sign in (1, -1):
                out.append(ParamSymbol(row, col, sign))
    return out


# LinForm keys: (symbol-or-None, arg) where arg 0 is theta and arg 1 is the
# primed spectral argument.  None stands for the constant slope.
_Key = tuple[ParamSymbol | None, int]


def _key_sort(key: _Key):
    sym, arg = key
    return (arg, 0 if sym is None else 1, sym or ParamSymbol(0, 0, 0))


class LinForm:
    """Immutable rational linear form in the exponent slopes."""

    __slots__ = ("items", "_hash")

    def __init__(self, items: Iterable[tuple[_Key, Fraction]] = ()):
        cleaned = tuple(sorted(((k, v) for k, v in items if v), key=lambda kv: _key_sort(kv[0])))
        object.__setattr__(self, "items", cleaned)
        object.__setattr__(self, "_hash", hash(cleaned))

    ZERO: "LinForm"

    @classmethod
    def symbol(cls, sym: ParamSymbol, coeff=1, arg: int = 0) -> "LinForm":
        return cls((((sym, arg), Fraction(coeff)),))

    @classmethod
    def const(cls, value, arg: int = 0) -> "LinForm":
        return cls((((None, arg), Fraction(value)),))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return isinstance(other, LinForm) and self.items == other.items

    def is_zero(self) -> bool:
        return not self.items

    def __add__(self, other: "LinForm") -> "LinForm":
        if not other.items:
            return self
        if not self.items:
            return other
        acc = dict(self.items)
        for k, v in other.items:
            acc[k] = acc.get(k, Fraction(0)) + v
        return LinForm(acc.items())

    def __neg__(self) -> "LinForm":
        return LinForm((k, -v) for k, v in self.items)

    def __sub__(self, other: "LinForm") -> "LinForm":
        return self + (-other)

    def scale(self, c) -> "LinForm":
        c = Fraction(c)
        if not c:
            return LinForm()
        return LinForm((k, c * v) for k, v in self.items)

    def spread_args(self, c0, c1) -> "LinForm":
        """Replace the single argument with c0*theta + c1*theta'.

        Only valid on single-argument forms; used to instantiate a matrix at
        shifted arguments such as theta - theta'.
        """
        acc: dict[_Key, Fraction] = {}
        c0, c1 = Fraction(c0), Fraction(c1)
        for (sym, arg), v in self.items:
            if arg != 0:
                raise ValueError("form already uses both arguments")
            if c0:
                acc[(sym, 0)] = acc.get((sym, 0), Fraction(0)) + c0 * v
            if c1:
                acc[(sym, 1)] = acc.get((sym, 1), Fraction(0)) + c1 * v
        return LinForm(acc.items())

    def slope(self, values: Mapping[str, float] | None, arg: int = 0) -> float:
        """Numeric coefficient of the given spectral argument."""
        total = 0.0
        for (sym, a), v in self.items:
            if a != arg:
                continue
            if sym is None:
                total += float(v)
            else:
                if values is None or sym.name not in values:
                    raise MissingParameterError(f"no value for {sym.name}")
                total += float(v) * float(values[sym.name])
        return total

    def eval(self, theta: float, values: Mapping[str, float] | None,
             theta_prime: float = 0.0) -> float:
        """The exponent value mu0*theta + mu1*theta'."""
        out = self.slope(values, 0) * theta
        if any(a == 1 for (_, a), _v in self.items):
            out += self.slope(values, 1) * theta_prime
        return out

    def coefficient(self, sym: ParamSymbol, arg: int = 0) -> Fraction:
        for k, v in self.items:
            if k == (sym, arg):
                return v
        return Fraction(0)

    def render(self) -> str:
        """Exponent grammar used in reports, e.g. ``m11+ + 2*m11-``."""
        if not self.items:
            return "0"
        parts = []
        for (sym, arg), v in self.items:
            base = sym.name if sym is not None else "1"
            if arg == 1:
                base += "'"
            if v == 1 and sym is not None:
                text = base
            elif sym is None:
                text = str(v)
            else:
                text = f"{v}*{base}"
            parts.append(text)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LinForm({self.render()})"


LinForm.ZERO = LinForm()


class ParamSet:
    """The exponent slopes for one braid family of odd size N.

    ``values`` maps every symbol to an exact rational, or is None for a fully
    symbolic family.  The normalization slot (the projector singled out at
    the middle index) carries coefficient 1 and has no symbol.
    """

    def __init__(self, n: int, values: Mapping[ParamSymbol, Fraction] | None = None):
        if n < 3 or n % 2 == 0:
            raise InvalidParamSetError(f"N must be odd and >= 3, got {n}")
        self.N = n
        self.p = (n + 1) // 2
        self.symbols = symbols_for(n)
        if values is not None:
            missing = [s.name for s in self.symbols if s not in values]
            extra = [s.name for s in values if s not in self.symbols]
            if missing or extra:
                raise InvalidParamSetError(
                    f"value map mismatch; missing={missing} unexpected={extra}")
            values = {s: Fraction(values[s]) for s in self.symbols}
        self.values = values

    # -- constructors ---------------------------------------------------------

    @classmethod
    def symbolic(cls, n: int) -> "ParamSet":
        return cls(n)

    @classmethod
    def from_name_map(cls, n: int, named: Mapping[str, object]) -> "ParamSet":
        values = {ParamSymbol.parse(k, n): Fraction(str(v)) for k, v in named.items()}
        return cls(n, values)

    @classmethod
    def random(cls, n: int, seed: int, r: int = 4) -> "ParamSet":
        """Distinct small rationals (|m| <= 0.6), retried until the exponent
        lattice up to total degree r has no collisions (generic values).

        The denominator is a power of two sized so that distinct lattice
        points stay separated by well over the 1e-6 matching tolerance while
        exact collisions remain rare enough for rejection sampling.
        """
        from math import comb

        syms = symbols_for(n)
        m_count = comb(len(syms) + r, r)
        denom = 1 << 12
        while 0.6 * denom * 2 * r < 8 * m_count**2:
            denom <<= 1
        spread = int(0.6 * denom)
        rng = random.Random(seed)
        for _ in range(500):
            nums = rng.sample(range(-spread, spread + 1), len(syms))
            vals = {s: Fraction(k, denom) for s, k in zip(syms, nums)}
            ps = cls(n, vals)
            if ps.is_generic(r):
                return ps
        raise InvalidParamSetError("could not draw generic parameters")

    # -- views ---------------------------------------------------------------

    @property
    def is_symbolic(self) -> bool:
        return self.values is None

    def value_map(self) -> dict[str, float]:
        if self.values is None:
            raise MissingParameterError("parameter set is symbolic")
        return {s.name: float(v) for s, v in self.values.items()}

    def exact_value(self, sym: ParamSymbol) -> Fraction:
        if self.values is None:
            raise MissingParameterError("parameter set is symbolic")
        return self.values[sym]

    def diagonal_symbols(self, sign: int = 1) -> list[ParamSymbol]:
        """The m_ii^(sign) slopes, i = 1..p-1 (the only trace contributors)."""
        return [ParamSymbol(i, i, sign) for i in range(1, self.p)]

    def is_generic(self, r: int) -> bool:
        """True when all nonnegative exponent combinations up to total degree r
        are pairwise distinct."""
        if self.values is None:
            return True
        from .lattice import lattice_values  # local import to avoid a cycle

        vals = lattice_values(self.symbols, self.values, r, signed=False)
        seen = set()
        for v, _vec in vals:
            key = v  # exact Fractions: collision is exact equality
            if key in seen:
                return False
            seen.add(key)
        return True

    def in_reference_sector(self) -> bool:
        """Check the strict ordering chain of the reference Boltzmann sector
        (N=3 only; read as a '>' between every consecutive pair).  Other
        sectors are legitimate, so callers treat False as a warning."""
        if self.values is None or self.N != 3:
            return True
        chain = [self.values[ParamSymbol(r, c, s)]
                 for (r, c) in ((1, 1), (1, 2), (2, 1))
                 for s in (1, -1)]
        return all(a > b for a, b in zip(chain, chain[1:]))

    def __repr__(self) -> str:
        tag = "symbolic" if self.values is None else "rational"
        return f"ParamSet(N={self.N}, {tag}, {len(self.symbols)} slopes)"
