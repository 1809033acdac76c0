"""Exact scalar fields: the rationals QQ and prime fields GF(p).

All arithmetic in this package is exact.  Rational scalars are
``fractions.Fraction`` values (always in lowest terms with positive
denominator); prime-field scalars are :class:`Fp` residues.  A
:class:`FieldSpec` tags every container with the field its entries live in
and knows how to parse/format scalars ("p/q" for rationals, a plain decimal
residue for GF(p)).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

_SCALAR_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Fp:
    """A residue modulo a prime p. Immutable; arithmetic never leaves the field."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        object.__setattr__(self, "v", v % p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Fp is immutable")

    def _lift(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixed prime fields: GF({self.p}) vs GF({other.p})")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o.v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Fp(self.v * pow(o.v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


Scalar = Union[Fraction, Fp]


@dataclass(frozen=True)
class FieldSpec:
    """The exact ground field: QQ when ``p`` is None, GF(p) otherwise."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"not a prime: {self.p}")

    @property
    def kind(self) -> str:
        return "rationals" if self.p is None else "prime"

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else Fp(0, self.p)

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else Fp(1, self.p)

    def of(self, x) -> Scalar:
        """Coerce an int, string, Fraction or Fp into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p is None:
            if isinstance(x, Fp):
                raise ValueError("cannot coerce a prime-field residue into QQ")
            return Fraction(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError(f"mixed prime fields: GF({self.p}) vs GF({x.p})")
            return x
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        return Fp(int(x), self.p)

    def from_fraction(self, x: Fraction) -> Scalar:
        """Reduce a rational into this field; in GF(p) the denominator must be invertible."""
        if self.p is None:
            return Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(
                f"denominator {x.denominator} not invertible in GF({self.p})"
            )
        return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)

    def parse(self, s: str) -> Scalar:
        """Parse the text form of a scalar: 'n', '-n', or 'n/m' (rationals only)."""
        s = s.strip()
        if not _SCALAR_RE.match(s):
            raise ValueError(f"not an exact scalar literal: {s!r}")
        return self.from_fraction(Fraction(s))

    def to_str(self, x: Scalar) -> str:
        return str(x)

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)
