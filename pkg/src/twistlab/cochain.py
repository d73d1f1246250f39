"""2-cochains on the elementary abelian groups Z_2^n and their derived data.

Group degrees are encoded as integers ``0 <= label < 2**n``.  The bit tuple
``(a_1, ..., a_n)`` of a label has ``a_1`` as the most significant bit and
``a_n`` as the least significant one, so the coordinate ``x^k`` of the
octonionic sphere with ``k`` written in binary carries degree ``k``.  Group
addition is XOR.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, Optional, Tuple

from .scalar import ONE, Scalar

BIT_ORDER = "a1-msb"


def degree_bits(label: int, n: int) -> Tuple[int, ...]:
    """Bit tuple ``(a_1, ..., a_n)`` of ``label``; ``a_1`` is the MSB."""
    if not 0 <= label < (1 << n):
        raise ValueError(f"degree {label} out of range for Z_2^{n}")
    return tuple((label >> (n - 1 - i)) & 1 for i in range(n))


def degree_label(bits) -> int:
    label = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bits must be 0/1, got {bits!r}")
        label = (label << 1) | b
    return label


def all_degrees(n: int) -> range:
    return range(1 << n)


def span(*labels: int) -> set[int]:
    out = {0}
    for a in labels:
        out |= {x ^ a for x in out}
    return out


def linearly_independent(*labels: int) -> bool:
    """True iff the labels are linearly independent over Z_2."""
    return len(span(*labels)) == 1 << len(labels)


def det3(a: int, b: int, c: int) -> int:
    """``a . (b x c)`` over Z_2 for labels in Z_2^3."""
    a1, a2, a3 = degree_bits(a, 3)
    b1, b2, b3 = degree_bits(b, 3)
    c1, c2, c3 = degree_bits(c, 3)
    return (a1 * (b2 * c3 + b3 * c2) + a2 * (b3 * c1 + b1 * c3) + a3 * (b1 * c2 + b2 * c1)) % 2


@dataclass(frozen=True)
class Cochain2:
    """Invertible counital scalar table on ``Z_2^n x Z_2^n``."""

    n: int
    values: Dict[Tuple[int, int], Scalar]
    inverse_values: Dict[Tuple[int, int], Scalar]
    name: str = "custom"
    _numeric: Optional[Dict[Tuple[int, int], Fraction]] = field(default=None, compare=False, repr=False)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], object], name: str = "custom") -> Cochain2:
        values = {}
        inverse = {}
        for a, b in itertools.product(all_degrees(n), repeat=2):
            v = Scalar.coerce(fn(a, b))
            values[a, b] = v
            inverse[a, b] = v.inverse()
        return cls(n, values, inverse, name, _numeric_table(values))

    @classmethod
    def trivial(cls, n: int) -> Cochain2:
        return cls.from_function(n, lambda a, b: 1, name=f"trivial-{n}")

    def value(self, a: int, b: int) -> Scalar:
        return self.values[a, b]

    def inverse_value(self, a: int, b: int) -> Scalar:
        return self.inverse_values[a, b]

    __call__ = value

    @property
    def numeric(self) -> Dict[Tuple[int, int], Fraction]:
        """Values as Fractions; only for real rational cochains."""
        if self._numeric is None:
            raise ValueError(f"cochain {self.name} has non-rational values")
        return self._numeric

    def is_counital(self) -> bool:
        return all(self.values[0, a] == ONE and self.values[a, 0] == ONE for a in all_degrees(self.n))

    def to_json(self) -> dict:
        rows = []
        for (a, b), v in sorted(self.values.items()):
            rows.append([list(degree_bits(a, self.n)), list(degree_bits(b, self.n)), _json_scalar(v)])
        return {"n": self.n, "name": self.name, "values": rows}

    def fingerprint(self) -> str:
        blob = json.dumps({"bit_order": BIT_ORDER, **self.to_json()}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Cochain3:
    """Scalar table on ``(Z_2^n)^3``.

    For a coboundary, ``value`` is ``(dF)^-`` (the rebracketing factor
    ``(uv)w -> u(vw)``) and ``inverse_value`` is ``dF``.
    """

    n: int
    values: Dict[Tuple[int, int, int], Scalar]
    inverse_values: Dict[Tuple[int, int, int], Scalar]

    def value(self, a: int, b: int, c: int) -> Scalar:
        return self.values[a, b, c]

    def inverse_value(self, a: int, b: int, c: int) -> Scalar:
        return self.inverse_values[a, b, c]

    __call__ = value

    def is_trivial(self) -> bool:
        return all(v == ONE for v in self.values.values())

    def triples(self) -> Iterator[Tuple[int, int, int]]:
        return iter(sorted(self.values))


def _numeric_table(values):
    out = {}
    for k, v in values.items():
        if not (v.is_constant() and v.is_real()):
            return None
        out[k] = v.to_rational()
    return out


def _json_scalar(v: Scalar):
    if v.is_constant() and v.is_real():
        q = v.to_rational()
        return int(q) if q.denominator == 1 else str(q)
    return str(v)


def _octonion_exponent(a: Tuple[int, ...], b: Tuple[int, ...]) -> int:
    n = len(a)
    e = sum(a[i] * b[j] for i in range(n) for j in range(i, n))
    if n == 3:
        e += a[0] * a[1] * b[2] + a[0] * b[1] * a[2] + b[0] * a[1] * a[2]
    return e


def make_octonion_cochain(n: int = 3) -> Cochain2:
    """Sign cochain of the octonions (n=3), quaternions (n=2), complexes (n=1)."""
    if n not in (1, 2, 3):
        raise ValueError("n must be 1, 2 or 3")

    def sign(a: int, b: int) -> int:
        return -1 if _octonion_exponent(degree_bits(a, n), degree_bits(b, n)) % 2 else 1

    name = {1: "complex", 2: "quaternion", 3: "octonion"}[n]
    return Cochain2.from_function(n, sign, name=name)


_COBOUNDARY_CACHE: Dict[int, Tuple[Cochain2, Cochain3]] = {}


def coboundary(F: Cochain2) -> Cochain3:
    """Coboundary data of ``F`` evaluated on group degrees (memoised per cochain object)."""
    hit = _COBOUNDARY_CACHE.get(id(F))
    if hit is not None and hit[0] is F:
        return hit[1]
    result = _coboundary(F)
    _COBOUNDARY_CACHE[id(F)] = (F, result)
    return result


def _coboundary(F: Cochain2) -> Cochain3:
    G = all_degrees(F.n)
    minus = {}
    plus = {}
    f, fi = F.values, F.inverse_values
    for a, b, c in itertools.product(G, repeat=3):
        minus[a, b, c] = f[a, b] * f[a ^ b, c] * fi[a, b ^ c] * fi[b, c]
        plus[a, b, c] = f[b, c] * f[a, b ^ c] * fi[a ^ b, c] * fi[a, b]
    return Cochain3(F.n, minus, plus)


def is_cocycle(F: Cochain2) -> bool:
    return coboundary(F).is_trivial()


def braiding(F: Cochain2, a: int, b: int) -> Scalar:
    """``R(a, b) = F(b, a) F^-(a, b)``."""
    return F.value(b, a) * F.inverse_value(a, b)


def degree_star(a: int) -> int:
    # group elements of k Z_2^n are self-adjoint in the real form used here
    return a


def reality_check(F: Cochain2) -> bool:
    """``conj(F(a, b)) == F(a*, b*)`` for all pairs."""
    return all(
        F.value(a, b).conjugate() == F.value(degree_star(a), degree_star(b))
        for a, b in itertools.product(all_degrees(F.n), repeat=2)
    )
