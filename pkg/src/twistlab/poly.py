"""Sparse exact polynomials in a quotient ring ``k[x_1..x_m]/(L - T)``.

The ideal is principal, so reducing every occurrence of the leading monomial
``L`` by the tail ``T`` gives a unique remainder as long as the monomials of
``T`` are smaller than ``L`` in some term order.  Coefficients are any exact
ring elements supporting ``+``, ``*`` and truth testing (``int``,
``Fraction``, :class:`~twistlab.scalar.Scalar`).
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

Exps = Tuple[int, ...]


class QuotientRing:
    """Polynomial ring modulo one relation ``lead = tail``.

    ``grading`` optionally assigns a Z_2^n label (int, XOR-additive) to each
    variable; it must make the relation homogeneous.
    """

    def __init__(
        self,
        names: Sequence[str],
        lead: Optional[Exps] = None,
        tail: Optional[Mapping[Exps, object]] = None,
        grading: Optional[Sequence[int]] = None,
    ):
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.lead = tuple(lead) if lead is not None else None
        self.tail = dict(tail or {})
        self.grading = tuple(grading) if grading is not None else None
        self._cache: Dict[Exps, Dict[Exps, object]] = {}
        if self.lead is not None and len(self.lead) != self.nvars:
            raise ValueError("lead exponent has wrong length")
        if self.grading is not None and self.lead is not None:
            d = self.monomial_degree(self.lead)
            if any(self.monomial_degree(m) != d for m in self.tail):
                raise ValueError("relation is not homogeneous for the grading")

    # -- construction ----------------------------------------------------
    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def const(self, c) -> Poly:
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, i: int) -> Poly:
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(tuple(e))

    def gens(self) -> Tuple[Poly, ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def monomial(self, exps: Exps, coeff=1) -> Poly:
        return self.from_dict({tuple(exps): coeff})

    def from_dict(self, terms: Mapping[Exps, object]) -> Poly:
        """Build a polynomial from raw terms, reducing to normal form."""
        out: Dict[Exps, object] = {}
        for m, c in terms.items():
            if c:
                _accumulate(out, self.reduce_monomial(tuple(m)), c)
        return Poly(self, out)

    # -- reduction -------------------------------------------------------
    def is_normal(self, exps: Exps) -> bool:
        return self.lead is None or any(e < l for e, l in zip(exps, self.lead))

    def reduce_monomial(self, exps: Exps) -> Dict[Exps, object]:
        """Normal form of a single monomial, memoised."""
        if self.is_normal(exps):
            return {exps: 1}
        hit = self._cache.get(exps)
        if hit is not None:
            return hit
        quotient = tuple(e - l for e, l in zip(exps, self.lead))
        out: Dict[Exps, object] = {}
        for tm, tc in self.tail.items():
            m = tuple(a + b for a, b in zip(tm, quotient))
            _accumulate(out, self.reduce_monomial(m), tc)
        self._cache[exps] = out
        return out

    # -- grading ---------------------------------------------------------
    def monomial_degree(self, exps: Exps) -> int:
        if self.grading is None:
            raise ValueError("ring has no grading")
        d = 0
        for e, g in zip(exps, self.grading):
            if e & 1:
                d ^= g
        return d

    def format_monomial(self, exps: Exps) -> str:
        parts = []
        for name, e in zip(self.names, exps):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


def _accumulate(out: Dict[Exps, object], terms: Mapping[Exps, object], scale) -> None:
    for m, c in terms.items():
        v = c * scale if scale != 1 else c
        if m in out:
            s = out[m] + v
            if s:
                out[m] = s
            else:
                del out[m]
        elif v:
            out[m] = v


class Poly:
    """Normal-form element of a :class:`QuotientRing`."""

    __slots__ = ("ring", "terms", "_components")

    def __init__(self, ring: QuotientRing, terms: Dict[Exps, object]):
        self.ring = ring
        self.terms = terms
        self._components = None

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring is not self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        out = dict(self.terms)
        _accumulate(out, other.terms, 1)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        out = dict(self.terms)
        _accumulate(out, other.terms, -1)
        return Poly(self.ring, out)

    def __rsub__(self, other) -> Poly:
        return self._coerce(other) - self

    def scale(self, c) -> Poly:
        if not c:
            return self.ring.zero()
        if c == 1:
            return self
        return Poly(self.ring, {m: v * c for m, v in self.terms.items() if v * c})

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return self.scale(other)
        if other.ring is not self.ring:
            raise ValueError("polynomials from different rings")
        ring = self.ring
        raw: Dict[Exps, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = c1 * c2
                if m in raw:
                    raw[m] = raw[m] + v
                else:
                    raw[m] = v
        out: Dict[Exps, object] = {}
        for m, c in raw.items():
            if not c:
                continue
            if ring.is_normal(m):
                if m in out:
                    s = out[m] + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
                else:
                    out[m] = c
            else:
                _accumulate(out, ring.reduce_monomial(m), c)
        return Poly(ring, out)

    def __rmul__(self, other) -> Poly:
        return self.scale(other)

    def __pow__(self, n: int) -> Poly:
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, i: int) -> Poly:
        """Partial derivative of the representative in variable ``i``."""
        raw = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                raw[tuple(e)] = c * m[i]
        return self.ring.from_dict(raw)

    def map_coefficients(self, fn) -> Poly:
        return self.ring.from_dict({m: fn(c) for m, c in self.terms.items()})

    # -- structure -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring is other.ring and self.terms == other.terms
        try:
            return self.terms == self._coerce(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def coefficients(self) -> Iterable:
        return self.terms.values()

    def components(self) -> Dict[int, Poly]:
        """Homogeneous components keyed by Z_2^n degree."""
        if self._components is None:
            parts: Dict[int, Dict[Exps, object]] = {}
            for m, c in self.terms.items():
                parts.setdefault(self.ring.monomial_degree(m), {})[m] = c
            self._components = {d: Poly(self.ring, t) for d, t in parts.items()}
        return self._components

    def is_homogeneous(self) -> bool:
        return len(self.components()) <= 1

    def degree(self) -> int:
        """Z_2^n degree of a nonzero homogeneous polynomial."""
        comps = self.components()
        if len(comps) != 1:
            raise ValueError("polynomial is not homogeneous (or is zero)")
        return next(iter(comps))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (-sum(mc[0]), tuple(-e for e in mc[0])))

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            ms = self.ring.format_monomial(m)
            cs = str(c)
            if " " in cs or "+" in cs[1:]:
                cs = f"({cs})"
            if ms == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(ms)
            elif cs == "-1":
                parts.append("-" + ms)
            else:
                parts.append(f"{cs}*{ms}")
        return " + ".join(parts).replace("+ -", "- ")

