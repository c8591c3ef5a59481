"""Exact arithmetic in cyclotomic fields Q(zeta_L).

A :class:`Cyc` stores a vector of rational coefficients of the powers
``zeta_L^0 .. zeta_L^{phi(L)-1}``, reduced modulo the L-th cyclotomic
polynomial.  Reduction makes zero-sum identities such as
``1 + zeta_l + ... + zeta_l^{l-1} == 0`` hold structurally, which is what
the multiplet bookkeeping relies on.

Numbers of different order compare and combine through promotion into the
lcm field, so ``Cyc.zeta(3)`` and the same value written in Q(zeta_6) are
equal.  Rationals are kept in the fast L=1 representation.

>>> z = Cyc.zeta(3)
>>> (1 + z + z * z).is_zero()
True
>>> Cyc.sqrt2() * Cyc.sqrt2() == Cyc.rational(2)
True
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DivisionByZeroError

__all__ = ["Cyc", "cyclotomic_poly", "euler_phi"]


# ---------------------------------------------------------------------------
# integer / polynomial helpers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return tuple(out)


def _poly_divmod_exact(num: list[int], den: tuple[int, ...]) -> tuple[int, ...]:
    """Quotient of an exact integer polynomial division (remainder must be 0)."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quot[i - dn] = q
        for j, d in enumerate(den):
            num[i - dn + j] -= q * d
    if any(num[:dn]):
        raise ArithmeticError("nonzero remainder in cyclotomic construction")
    return tuple(quot)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant first.

    >>> cyclotomic_poly(1)
    (-1, 1)
    >>> cyclotomic_poly(4)
    (1, 0, 1)
    >>> cyclotomic_poly(12)
    (1, 0, -1, 0, 1)
    """
    if n < 1:
        raise ValueError("order must be positive")
    # x^n - 1 divided by the cyclotomic polynomials of all proper divisors.
    poly: list[int] = [-1] + [0] * (n - 1) + [1]
    current: tuple[int, ...] = tuple(poly)
    for d in range(1, n):
        if n % d == 0:
            current = _poly_divmod_exact(list(current), cyclotomic_poly(d))
    return current


def _reduce_mod(vec: list[Fraction], order: int) -> tuple[Fraction, ...]:
    """Reduce a coefficient vector modulo Phi_order, returning phi(order) coeffs."""
    phi = cyclotomic_poly(order)
    deg = len(phi) - 1
    vec = list(vec)
    for i in range(len(vec) - 1, deg - 1, -1):
        c = vec[i]
        if c:
            vec[i] = Fraction(0)
            for j in range(deg):
                vec[i - deg + j] -= c * phi[j]
    vec = vec[:deg] + [Fraction(0)] * (deg - len(vec))
    return tuple(vec[:deg])


def _poly_extended_gcd(a: list[Fraction], b: list[Fraction]):
    """Extended Euclid over Q[x]: returns (g, s, t) with s*a + t*b = g."""

    def degree(p):
        for i in range(len(p) - 1, -1, -1):
            if p[i]:
                return i
        return -1

    def shift_scale(p, k, c):
        return [Fraction(0)] * k + [ci * c for ci in p]

    def sub(p, q):
        n = max(len(p), len(q))
        p = p + [Fraction(0)] * (n - len(p))
        q = q + [Fraction(0)] * (n - len(q))
        return [x - y for x, y in zip(p, q)]

    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], [Fraction(0)]
    t0, t1 = [Fraction(0)], [Fraction(1)]
    while degree(r1) >= 0:
        d0, d1 = degree(r0), degree(r1)
        if d0 < d1:
            r0, r1, s0, s1, t0, t1 = r1, r0, s1, s0, t1, t0
            continue
        c = r0[degree(r0)] / r1[degree(r1)]
        k = d0 - d1
        r0 = sub(r0, shift_scale(r1, k, c))
        s0 = sub(s0, shift_scale(s1, k, c))
        t0 = sub(t0, shift_scale(t1, k, c))
        if degree(r0) < degree(r1):
            r0, r1, s0, s1, t0, t1 = r1, r0, s1, s0, t1, t0
    return r0, s0, t0


class Cyc:
    """An element of Q(zeta_L), immutable.

    Do not mutate ``vec``; all operations return fresh instances.  Instances
    are unhashable on purpose: equal values can live in different ambient
    fields, so only ``==`` (which promotes) is meaningful.
    """

    __slots__ = ("order", "vec")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, order: int, vec: tuple[Fraction, ...]):
        self.order = order
        self.vec = vec

    # -- constructors -------------------------------------------------------

    @classmethod
    def rational(cls, q) -> "Cyc":
        return cls(1, (Fraction(q),))

    @classmethod
    def zero(cls) -> "Cyc":
        return cls.rational(0)

    @classmethod
    def one(cls) -> "Cyc":
        return cls.rational(1)

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "Cyc":
        """The root of unity zeta_order^power."""
        if order < 1:
            raise ValueError("order must be positive")
        power %= order
        g = gcd(power, order) if power else order
        if power:
            # zeta_order^power is a primitive (order/g)-th root: demote.
            order, power = order // g, power // g
        else:
            return cls.one()
        if order == 1:
            return cls.one()
        vec = [Fraction(0)] * (power + 1)
        vec[power] = Fraction(1)
        return cls(order, _reduce_mod(vec, order))._demoted()

    @classmethod
    def sqrt2(cls) -> "Cyc":
        # zeta_8 + zeta_8^-1 = 2 cos(pi/4)
        return cls.zeta(8) + cls.zeta(8, 7)

    # -- representation management ------------------------------------------

    def _demoted(self) -> "Cyc":
        """Collapse to the rational representation when possible."""
        if self.order != 1 and not any(self.vec[1:]):
            return Cyc(1, (self.vec[0],))
        return self

    def promote(self, order: int) -> "Cyc":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("can only promote into a containing field")
        step = order // self.order
        vec = [Fraction(0)] * ((len(self.vec) - 1) * step + 1)
        for k, c in enumerate(self.vec):
            if c:
                vec[k * step] = c
        return Cyc(order, _reduce_mod(vec, order))

    @staticmethod
    def _common(a: "Cyc", b: "Cyc") -> tuple["Cyc", "Cyc"]:
        if a.order == b.order:
            return a, b
        L = a.order * b.order // gcd(a.order, b.order)
        return a.promote(L), b.promote(L)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.vec)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.order == 1 or not any(self.vec[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.vec[0]

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Cyc":
        if isinstance(x, Cyc):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyc.rational(x)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(self, other)
        return Cyc(a.order, tuple(x + y for x, y in zip(a.vec, b.vec)))._demoted()

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.order, tuple(-x for x in self.vec))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == 1 and other.order == 1:
            return Cyc(1, (self.vec[0] * other.vec[0],))
        a, b = self._common(self, other)
        out = [Fraction(0)] * (len(a.vec) + len(b.vec) - 1)
        for i, ca in enumerate(a.vec):
            if ca:
                for j, cb in enumerate(b.vec):
                    if cb:
                        out[i + j] += ca * cb
        return Cyc(a.order, _reduce_mod(out, a.order))._demoted()

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise DivisionByZeroError("cannot invert zero")
        if self.order == 1:
            return Cyc(1, (1 / self.vec[0],))
        phi = [Fraction(c) for c in cyclotomic_poly(self.order)]
        g, _, t = _poly_extended_gcd(phi, list(self.vec))
        # g is a nonzero constant: scale t so that t*self == 1 (mod Phi).
        const = next(c for c in g if c)
        inv_vec = [c / const for c in t]
        return Cyc(self.order, _reduce_mod(inv_vec, self.order))._demoted()

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyc.rational(other)
        if not isinstance(other, Cyc):
            return NotImplemented
        a, b = self._common(self, other)
        return a.vec == b.vec

    # -- output ----------------------------------------------------------------

    def evalc(self) -> complex:
        """Numeric value as a complex double."""
        if self.order == 1:
            return complex(self.vec[0])
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(complex(c) * z**k for k, c in enumerate(self.vec) if c)

    def render(self) -> str:
        """Human-readable form, e.g. ``1/2`` or ``1/2 + 1/2*zeta12^3``."""
        if self.is_rational():
            return str(self.vec[0])
        parts = []
        for k, c in enumerate(self.vec):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = f"zeta{self.order}" + (f"^{k}" if k > 1 else "")
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Cyc({self.render()})"
