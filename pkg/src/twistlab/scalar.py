"""Exact coefficient ring: polynomials in named formal parameters over Q(i).

A :class:`Scalar` maps parameter monomials to Gaussian rationals.  Parameter
monomials are sorted tuples of ``(name, exponent)`` pairs; Gaussian rationals
are stored as ``(re, im)`` pairs of :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Tuple, Union

ParamMonomial = Tuple[Tuple[str, int], ...]
Gauss = Tuple[Fraction, Fraction]

_ZERO = Fraction(0)
_ONE_MONO: ParamMonomial = ()


def _mono_mul(m1: ParamMonomial, m2: ParamMonomial) -> ParamMonomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for name, e in m2:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


class Scalar:
    """Element of Q(i)[p_1, p_2, ...] with value semantics."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[ParamMonomial, Gauss] | None = None):
        self._terms: Dict[ParamMonomial, Gauss] = {}
        self._hash = None
        if terms:
            for mono, (re, im) in terms.items():
                if re or im:
                    self._terms[mono] = (Fraction(re), Fraction(im))

    # -- constructors ----------------------------------------------------
    @classmethod
    def const(cls, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0) -> Scalar:
        return cls({_ONE_MONO: (Fraction(re), Fraction(im))})

    @classmethod
    def param(cls, name: str, exponent: int = 1) -> Scalar:
        if exponent == 0:
            return cls.const(1)
        return cls({((name, exponent),): (Fraction(1), _ZERO)})

    @classmethod
    def coerce(cls, value) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Rational)):
            return cls.const(Fraction(value))
        if isinstance(value, complex):
            return cls.const(Fraction(value.real), Fraction(value.imag))
        raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")

    # -- structure -------------------------------------------------------
    @property
    def terms(self) -> Dict[ParamMonomial, Gauss]:
        return dict(self._terms)

    def params(self) -> frozenset[str]:
        return frozenset(name for mono in self._terms for name, _ in mono)

    def is_constant(self) -> bool:
        return all(mono == _ONE_MONO for mono in self._terms)

    def is_real(self) -> bool:
        return all(im == 0 for _, im in self._terms.values())

    def real_part(self) -> Scalar:
        return Scalar({m: (re, _ZERO) for m, (re, _) in self._terms.items()})

    def imag_part(self) -> Scalar:
        return Scalar({m: (im, _ZERO) for m, (_, im) in self._terms.items()})

    def to_rational(self) -> Fraction:
        """Return the value as a Fraction; raises if not a real constant."""
        if not self.is_constant() or not self.is_real():
            raise ValueError(f"{self} is not a rational constant")
        return self._terms.get(_ONE_MONO, (_ZERO, _ZERO))[0]

    def conjugate(self) -> Scalar:
        return Scalar({m: (re, -im) for m, (re, im) in self._terms.items()})

    def subs(self, values: Dict[str, Scalar | int | Fraction]) -> Scalar:
        """Substitute parameters by scalars (simultaneously)."""
        vals = {k: Scalar.coerce(v) for k, v in values.items()}
        out = Scalar()
        for mono, coeff in self._terms.items():
            term = Scalar({(): coeff})
            rest = []
            for name, e in mono:
                if name in vals:
                    term = term * vals[name] ** e
                else:
                    rest.append((name, e))
            if rest:
                term = term * Scalar({tuple(rest): (Fraction(1), _ZERO)})
            out = out + term
        return out

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other) -> Scalar:
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for mono, (re, im) in other._terms.items():
            if mono in out:
                r0, i0 = out[mono]
                re, im = r0 + re, i0 + im
                if re or im:
                    out[mono] = (re, im)
                else:
                    del out[mono]
            else:
                out[mono] = (re, im)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return _raw({m: (-re, -im) for m, (re, im) in self._terms.items()})

    def __sub__(self, other) -> Scalar:
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Scalar:
        return Scalar.coerce(other) - self

    def __mul__(self, other) -> Scalar:
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            if not other:
                return Scalar()
            f = Fraction(other)
            return _raw({m: (re * f, im * f) for m, (re, im) in self._terms.items()})
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        out: Dict[ParamMonomial, list] = {}
        for m1, (a, b) in self._terms.items():
            for m2, (c, d) in other._terms.items():
                m = _mono_mul(m1, m2)
                re, im = a * c - b * d, a * d + b * c
                if m in out:
                    acc = out[m]
                    acc[0] += re
                    acc[1] += im
                else:
                    out[m] = [re, im]
        return _raw({m: (re, im) for m, (re, im) in out.items() if re or im})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Scalar:
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> Scalar:
        """Inverse of a nonzero constant (parameters are not invertible)."""
        if not self.is_constant() or not self:
            raise ZeroDivisionError(f"{self} is not an invertible constant")
        re, im = self._terms[_ONE_MONO]
        norm = re * re + im * im
        return Scalar.const(re / norm, -im / norm)

    def __truediv__(self, other) -> Scalar:
        return self * Scalar.coerce(other).inverse()

    # -- comparison ------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- display ---------------------------------------------------------
    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=_mono_key):
            re, im = self._terms[mono]
            coeff = _gauss_str(re, im)
            mono_s = "*".join(n if e == 1 else f"{n}^{e}" for n, e in mono)
            if not mono_s:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(mono_s)
            elif coeff == "-1":
                parts.append("-" + mono_s)
            else:
                parts.append(f"{coeff}*{mono_s}")
        return " + ".join(parts).replace("+ -", "- ")


def _raw(terms: Dict[ParamMonomial, Gauss]) -> Scalar:
    s = Scalar.__new__(Scalar)
    s._terms = terms
    s._hash = None
    return s


def _mono_key(mono: ParamMonomial):
    return (sum(e for _, e in mono), mono)


def _gauss_str(re: Fraction, im: Fraction) -> str:
    if not im:
        return str(re)
    if not re:
        return "I" if im == 1 else "-I" if im == -1 else f"{im}*I"
    return f"({re} + {im}*I)".replace("+ -", "- ")


ONE = Scalar.const(1)
ZERO = Scalar()
I = Scalar.const(0, 1)


def params(*names: str) -> Iterable[Scalar]:
    """Convenience: ``c1, c2 = params("c1", "c2")``."""
    return tuple(Scalar.param(n) for n in names)
