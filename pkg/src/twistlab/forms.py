"""Tensors of coframe forms with polynomial coefficients.

A :class:`FormTensor` is a finite sum of terms ``f  w^{J_1} (x) ... (x) w^{J_r}``
where each leg ``J`` is a strictly increasing tuple of coframe indices
(``()`` for a function leg) and the coefficient ``f`` sits at the far left.
Indices double as Z_2^n degree labels: ``|w^i| = i``.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, Optional, Tuple

from .poly import Poly, QuotientRing

Leg = Tuple[int, ...]
Legs = Tuple[Leg, ...]


def sort_leg(indices: Iterable[int]) -> Tuple[int, Optional[Leg]]:
    """Sort wedge indices; returns ``(sign, leg)`` or ``(0, None)`` on repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


def leg_degree(leg: Leg) -> int:
    d = 0
    for i in leg:
        d ^= i
    return d


class FormTensor:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: QuotientRing, terms: Optional[Dict[Legs, Poly]] = None):
        self.ring = ring
        self.terms: Dict[Legs, Poly] = {}
        if terms:
            for legs, c in terms.items():
                if c:
                    self.terms[legs] = c

    @classmethod
    def basis(cls, ring: QuotientRing, *legs: Iterable[int], coeff=None) -> FormTensor:
        """``coeff * w^{legs[0]} (x) w^{legs[1]} ...``; legs are normalised."""
        sign = 1
        norm = []
        for leg in legs:
            s, l = sort_leg(leg)
            if not s:
                return cls(ring)
            sign *= s
            norm.append(l)
        c = ring.one() if coeff is None else (coeff if isinstance(coeff, Poly) else ring.const(coeff))
        return cls(ring, {tuple(norm): c.scale(sign)})

    @classmethod
    def function(cls, f: Poly) -> FormTensor:
        return cls(f.ring, {((),): f})

    # -- linear structure -----------------------------------------------
    def add_term(self, legs: Legs, c: Poly) -> None:
        """In-place accumulation (for builders)."""
        if not c:
            return
        cur = self.terms.get(legs)
        if cur is None:
            self.terms[legs] = c
        else:
            s = cur + c
            if s:
                self.terms[legs] = s
            else:
                del self.terms[legs]

    def copy(self) -> FormTensor:
        return FormTensor(self.ring, dict(self.terms))

    def __add__(self, other: FormTensor) -> FormTensor:
        out = self.copy()
        for legs, c in other.terms.items():
            out.add_term(legs, c)
        return out

    def __neg__(self) -> FormTensor:
        return FormTensor(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: FormTensor) -> FormTensor:
        return self + (-other)

    def scale(self, s) -> FormTensor:
        if not s:
            return FormTensor(self.ring)
        return FormTensor(self.ring, {k: c.scale(s) for k, c in self.terms.items()})

    def lmul(self, f: Poly) -> FormTensor:
        """Multiply by a function (classical left module action)."""
        return FormTensor(self.ring, {k: f * c for k, c in self.terms.items()})

    __rmul__ = lmul

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormTensor):
            return NotImplemented
        return self.terms == other.terms

    def __iter__(self) -> Iterator[Tuple[Legs, Poly]]:
        return iter(sorted(self.terms.items()))

    def coefficient(self, *legs: Leg) -> Poly:
        return self.terms.get(tuple(legs), self.ring.zero())

    # -- grading -------------------------------------------------------
    def homogeneous_terms(self) -> Iterator[Tuple[Legs, int, Poly]]:
        """Yield ``(legs, coefficient degree, coefficient component)``."""
        for legs, c in self.terms.items():
            for d, part in c.components().items():
                yield legs, d, part

    def components(self) -> Dict[int, FormTensor]:
        out: Dict[int, FormTensor] = {}
        for legs, d, part in self.homogeneous_terms():
            total = d
            for leg in legs:
                total ^= leg_degree(leg)
            out.setdefault(total, FormTensor(self.ring)).add_term(legs, part)
        return out

    # -- shape ---------------------------------------------------------
    def shapes(self) -> set:
        return {tuple(len(l) for l in legs) for legs in self.terms}

    def __repr__(self) -> str:
        return f"FormTensor({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for legs, c in self:
            basis = " (x) ".join("w^" + ",".join(map(str, leg)) if leg else "1" for leg in legs)
            parts.append(f"({c}) {basis}")
        return " + ".join(parts)


def wedge_legs(sign_leg_a: Leg, leg_b: Leg) -> Tuple[int, Optional[Leg]]:
    return sort_leg(sign_leg_a + leg_b)


def wedge(s: FormTensor, t: FormTensor, max_degree: int = 2) -> FormTensor:
    """Classical wedge of two single-leg forms (coefficients multiply)."""
    out = FormTensor(s.ring)
    for (ls,), cs in s.terms.items():
        for (lt,), ct in t.terms.items():
            if len(ls) + len(lt) > max_degree:
                raise ValueError(f"wedge degree {len(ls) + len(lt)} exceeds modelled range {max_degree}")
            sign, leg = sort_leg(ls + lt)
            if sign:
                out.add_term((leg,), (cs * ct).scale(sign))
    return out


def contract_adjacent_wedge(t: FormTensor, pos: int) -> FormTensor:
    """Apply ``wedge`` to legs ``pos`` and ``pos + 1`` of a tensor."""
    out = FormTensor(t.ring)
    for legs, c in t.terms.items():
        sign, leg = sort_leg(legs[pos] + legs[pos + 1])
        if sign:
            out.add_term(legs[:pos] + (leg,) + legs[pos + 2:], c.scale(sign))
    return out
