"""Exact scalars of the form sum_k c_k * lambda^{n_k} * exp(mu_k * theta).

``ExpScalar`` is a finite sum of terms ``c * lambda^n * exp(mu)`` where c is
cyclotomic, n an integer power of the formal shift parameter lambda, and mu a
:class:`~braidstat.symbols.LinForm` (a rational combination of exponent
slopes times one or two spectral arguments).  Exponentials multiply by adding
forms, so products and sums close exactly; that is all the model needs, since
every matrix entry in the family is such a sum.

``RationalExp`` is a formal ratio of two ExpScalars.  Exponential sums do not
form a field, so nothing beyond monomial inverses is simplified; equality is
decided by cross-multiplication, which is exact.

>>> from fractions import Fraction
>>> from .symbols import ParamSymbol, LinForm
>>> m = LinForm.symbol(ParamSymbol(1, 1, 1))
>>> x = exp_term(Fraction(1, 2), m)
>>> (x + x).render()
'(1) * exp((m11+)*theta)'
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Mapping

from .cyclotomic import Cyc
from .errors import DivisionByZeroError, NumericDenominatorZeroError
from .symbols import LinForm

__all__ = ["ExpScalar", "RationalExp", "exp_term", "arith", "invert", "eval_numeric"]

_TermKey = tuple[int, LinForm]


def _as_cyc(c) -> Cyc:
    if isinstance(c, Cyc):
        return c
    return Cyc.rational(c)


class ExpScalar:
    """Immutable exponential sum; ``terms`` maps (lambda power, form) -> Cyc."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[_TermKey, Cyc] | None = None):
        pruned = {k: v for k, v in (terms or {}).items() if v}
        object.__setattr__(self, "terms", pruned)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls) -> "ExpScalar":
        return cls()

    @classmethod
    def one(cls) -> "ExpScalar":
        return cls({(0, LinForm.ZERO): Cyc.one()})

    @classmethod
    def rational(cls, q) -> "ExpScalar":
        return cls({(0, LinForm.ZERO): Cyc.rational(q)})

    @classmethod
    def coeff(cls, c) -> "ExpScalar":
        return cls({(0, LinForm.ZERO): _as_cyc(c)})

    @classmethod
    def lam(cls, power: int = 1) -> "ExpScalar":
        return cls({(power, LinForm.ZERO): Cyc.one()})

    @classmethod
    def exponential(cls, mu: LinForm) -> "ExpScalar":
        return cls({(0, mu): Cyc.one()})

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for k, v in other.terms.items():
            cur = acc.get(k)
            acc[k] = v if cur is None else cur + v
        return ExpScalar(acc)

    __radd__ = __add__

    def __neg__(self):
        return ExpScalar({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            c = _as_cyc(other)
            if not c:
                return ExpScalar()
            return ExpScalar({k: v * c for k, v in self.terms.items()})
        if not isinstance(other, ExpScalar):
            return NotImplemented
        acc: dict[_TermKey, Cyc] = {}
        for (n1, f1), c1 in self.terms.items():
            for (n2, f2), c2 in other.terms.items():
                key = (n1 + n2, f1 + f2)
                prod = c1 * c2
                cur = acc.get(key)
                acc[key] = prod if cur is None else cur + prod
        return ExpScalar(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExpScalar":
        if n < 0:
            raise ValueError("negative powers need invert()")
        out = ExpScalar.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExpScalar.rational(other)
        if not isinstance(other, ExpScalar):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def spread_args(self, c0, c1) -> "ExpScalar":
        """Instantiate at argument c0*theta + c1*theta' (exponents rescale)."""
        acc: dict[_TermKey, Cyc] = {}
        for (n, f), c in self.terms.items():
            key = (n, f.spread_args(c0, c1))
            cur = acc.get(key)
            acc[key] = c if cur is None else cur + c
        return ExpScalar(acc)

    # -- numerics ---------------------------------------------------------------

    def eval(self, theta: float, values: Mapping[str, float] | None = None,
             theta_prime: float = 0.0, lam: complex | None = None) -> complex:
        total = 0j
        for (n, f), c in self.terms.items():
            factor = c.evalc() * cmath.exp(f.eval(theta, values, theta_prime))
            if n:
                if lam is None:
                    raise NumericDenominatorZeroError("term uses lambda but no value given")
                factor *= lam**n
            total += factor
        return total

    # -- output -------------------------------------------------------------------

    def _ordered(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1].items))

    def render(self) -> str:
        """Interchange grammar: ``(c) * exp((mu)*theta)`` joined by '+'."""
        if not self.terms:
            return "0"
        parts = []
        for (n, f), c in self._ordered():
            bits = [f"({c.render()})"]
            if n:
                bits.append("lambda" if n == 1 else f"lambda^{n}")
            if not f.is_zero():
                theta0 = [(k, v) for k, v in f.items if k[1] == 0]
                theta1 = [(k, v) for k, v in f.items if k[1] == 1]
                if theta0:
                    bits.append(f"exp(({LinForm(theta0).render()})*theta)")
                if theta1:
                    inner = LinForm(((k[0], 0), v) for k, v in theta1)
                    bits.append(f"exp(({inner.render()})*theta')")
            parts.append(" * ".join(bits))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ExpScalar({self.render()})"


def _coerce_scalar(x):
    if isinstance(x, ExpScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExpScalar.rational(x)
    if isinstance(x, Cyc):
        return ExpScalar.coeff(x)
    return NotImplemented


class RationalExp:
    """Formal ratio of exponential sums; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: ExpScalar, den: ExpScalar | None = None):
        if den is None:
            den = ExpScalar.one()
        if den.is_zero():
            raise DivisionByZeroError("zero denominator")
        # Monomial denominators divide out exactly.
        if den.is_monomial() and den != ExpScalar.one():
            ((n, f), c), = den.terms.items()
            inv = ExpScalar({(-n, -f): c.inverse()})
            num, den = num * inv, ExpScalar.one()
        self.num = num
        self.den = den

    @classmethod
    def from_scalar(cls, x) -> "RationalExp":
        return cls(_coerce_scalar(x))

    @classmethod
    def one(cls) -> "RationalExp":
        return cls(ExpScalar.one())

    @classmethod
    def zero(cls) -> "RationalExp":
        return cls(ExpScalar.zero())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        other = _coerce_ratio(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalExp(self.num + other.num, self.den)
        return RationalExp(self.num * other.den + other.num * self.den,
                           self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalExp(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce_ratio(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_ratio(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalExp(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_ratio(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZeroError("division by zero ratio")
        return RationalExp(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        other = _coerce_ratio(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def eval(self, theta: float, values: Mapping[str, float] | None = None,
             theta_prime: float = 0.0, lam: complex | None = None,
             tol: float = 1e-300) -> complex:
        den = self.den.eval(theta, values, theta_prime, lam)
        if abs(den) <= tol:
            raise NumericDenominatorZeroError(f"denominator ~ {den}")
        return self.num.eval(theta, values, theta_prime, lam) / den

    def render(self) -> str:
        if self.den == ExpScalar.one():
            return self.num.render()
        return f"[{self.num.render()}] / [{self.den.render()}]"

    def __repr__(self) -> str:
        return f"RationalExp({self.render()})"


def _coerce_ratio(x):
    if isinstance(x, RationalExp):
        return x
    s = _coerce_scalar(x)
    if s is NotImplemented:
        return NotImplemented
    return RationalExp(s)


# ---------------------------------------------------------------------------
# operation-style entry points
# ---------------------------------------------------------------------------

def exp_term(coeff, mu: LinForm, lam_power: int = 0) -> ExpScalar:
    """Single-term scalar coeff * lambda^lam_power * exp(mu)."""
    c = _as_cyc(coeff)
    if not c:
        return ExpScalar.zero()
    return ExpScalar({(lam_power, mu): c})


def arith(lhs: ExpScalar, rhs: ExpScalar, op: str) -> ExpScalar:
    """Ring arithmetic selected by name: add | sub | mul."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")


def invert(x: ExpScalar) -> RationalExp:
    """Exact inverse: monomials invert in closed form, sums stay formal."""
    if x.is_zero():
        raise DivisionByZeroError("cannot invert zero")
    if x.is_monomial():
        ((n, f), c), = x.terms.items()
        return RationalExp(ExpScalar({(-n, -f): c.inverse()}))
    return RationalExp(ExpScalar.one(), x)


def eval_numeric(x, theta: float, values: Mapping[str, float] | None = None,
                 theta_prime: float = 0.0, lam: complex | None = None) -> complex:
    """Numeric value of an ExpScalar or RationalExp at a real point."""
    return x.eval(theta, values, theta_prime, lam)
