"""Twisting the 2-sphere by a power-series cochain in ``U(sl_2)``.

The Killing vector fields ``xi_i = eps_ijk x_j d/dx_k`` of the sphere
``x_1^2 + x_2^2 + x_3^2 = r^2`` give ``x = -xi_+``, ``y = -xi_-`` and
``h = 2i xi_3``.  In the complex coordinates ``x_pm = x_1 pm i x_2`` the
relation reads ``x_+ x_- + x_3^2 = r^2``; its normal form rewrites
``x_+ x_-`` to ``r^2 - x_3^2``.

The cochain ``F = 1 + sum_n c_n (x (x) y)^n`` acts on products as

    p . q = sum_n c_n (x^n > p) (y^n > q)

and the sum is finite on polynomials because ``x`` and ``y`` lower or raise
the weight of a degree-``d`` polynomial, killing it after ``2d`` steps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from .poly import Exps, Poly, QuotientRing
from .scalar import I, ONE, Scalar

XP, XM, X3 = 0, 1, 2
NAMES = ("xp", "xm", "x3")
R2 = Scalar.param("r2")


@lru_cache(maxsize=None)
def podles_ring() -> QuotientRing:
    """``Q(i)[r2][x_+, x_-, x_3] / (x_+ x_- - r2 + x_3^2)``."""
    return QuotientRing(NAMES, (1, 1, 0), {(0, 0, 0): R2, (0, 0, 2): -ONE})


def relation_polynomial() -> Poly:
    ring = podles_ring()
    # built on raw exponents so it does not reduce to zero
    return Poly(ring, {(1, 1, 0): ONE, (0, 0, 2): ONE, (0, 0, 0): -R2})


def _gens():
    ring = podles_ring()
    return ring.var(XP), ring.var(XM), ring.var(X3)


class Sl2Action:
    """``h, x, y`` acting by derivations; tables give the images of ``x_+, x_-, x_3``."""

    def __init__(self):
        xp, xm, x3 = _gens()
        self.tables: Dict[str, Tuple[Poly, Poly, Poly]] = {
            "x": (xp.ring.zero(), x3.scale(-2 * I), xp.scale(I)),
            "y": (x3.scale(2 * I), xm.ring.zero(), xm.scale(-I)),
        }
        self.tables["h"] = tuple(self._commutator("x", "y", g) for g in (xp, xm, x3))

    def _commutator(self, a: str, b: str, p: Poly) -> Poly:
        return self.apply(a, self.apply(b, p)) - self.apply(b, self.apply(a, p))

    def apply(self, gen: str, p: Poly) -> Poly:
        """One generator as a derivation: ``sum_v (g > x_v) dp/dx_v``."""
        images = self.tables[gen]
        out = p.ring.zero()
        for v in range(3):
            dv = p.diff(v)
            if dv and images[v]:
                out = out + images[v] * dv
        return out

    def act(self, word: Iterable[str], p: Poly) -> Poly:
        """Apply the generators of ``word`` one after another, left to right."""
        for g in word:
            p = self.apply(g, p)
        return p

    def power(self, gen: str, n: int, p: Poly) -> Poly:
        for _ in range(n):
            if not p:
                break
            p = self.apply(gen, p)
        return p


@lru_cache(maxsize=None)
def sl2() -> Sl2Action:
    return Sl2Action()


def killing_field_h() -> Tuple[Poly, Poly, Poly]:
    """``2i xi_3`` on ``x_+, x_-, x_3``, derived from real coordinates.

    ``xi_3 = x_1 d/dx_2 - x_2 d/dx_1``; with ``x_1 = (x_+ + x_-)/2`` and
    ``x_2 = (x_+ - x_-)/(2i)`` this gives ``xi_3 x_pm = pm i x_pm``.
    """
    xp, xm, x3 = _gens()
    half = Scalar.const(1) / 2
    x1 = (xp + xm).scale(half)
    x2 = (xp - xm).scale(half / I)
    # d x_+ / d x_1 = 1, d x_+ / d x_2 = i ; d x_- / d x_1 = 1, d x_- / d x_2 = -i
    partials = {XP: (ONE, I), XM: (ONE, -I), X3: (Scalar(), Scalar())}
    out = []
    for v in (XP, XM, X3):
        d1, d2 = partials[v]
        out.append((x1.scale(d2) - x2.scale(d1)).scale(2 * I))
    return tuple(out)


@dataclass
class SeriesCochain:
    """``F = 1 + sum_n c_n (x (x) y)^n`` with ``c_n`` formal unless overridden."""

    overrides: Dict[int, Scalar] = field(default_factory=dict)
    trivial: bool = False

    def coefficient(self, n: int) -> Scalar:
        if n == 0:
            return ONE
        if self.trivial:
            return Scalar()
        if n in self.overrides:
            return Scalar.coerce(self.overrides[n])
        return Scalar.param(f"c{n}")

    @classmethod
    def podles(cls) -> SeriesCochain:
        """``c_2 = c_1^2``, higher ``c_n`` left formal."""
        c1 = Scalar.param("c1")
        return cls({2: c1 * c1})


def bullet_podles(Fc: SeriesCochain, p: Poly, q: Poly) -> Poly:
    """``sum_n c_n (x^n > p)(y^n > q)``, stopping once either factor dies."""
    act = sl2()
    out = p * q
    bound = 2 * min(p.total_degree(), q.total_degree())
    xp, yq = p, q
    for n in range(1, bound + 1):
        xp = act.apply("x", xp)
        yq = act.apply("y", yq)
        if not xp or not yq:
            break
        cn = Fc.coefficient(n)
        if cn:
            out = out + (xp * yq).scale(cn)
    return out


def associator(Fc: SeriesCochain, p: Poly, q: Poly, r: Poly) -> Poly:
    return bullet_podles(Fc, bullet_podles(Fc, p, q), r) - bullet_podles(Fc, p, bullet_podles(Fc, q, r))


# -- Podles relations ------------------------------------------------

def q_squared() -> Scalar:
    return ONE - 2 * Scalar.param("c1")


@dataclass
class RelationCheck:
    name: str
    residual: Poly

    @property
    def holds(self) -> bool:
        return not self.residual


def verify_podles_relations(Fc: Optional[SeriesCochain] = None) -> List[RelationCheck]:
    """Check the three Podles-type identities with denominators cleared."""
    Fc = Fc or SeriesCochain.podles()
    xp, xm, x3 = _gens()
    c1 = Scalar.param("c1")
    q2 = q_squared()
    b = lambda u, v: bullet_podles(Fc, u, v)
    r2 = xp.ring.const(R2)
    checks = [
        RelationCheck("x3.xp = q^2 xp.x3", b(x3, xp) - b(xp, x3).scale(q2)),
        RelationCheck("xm.x3 = q^2 x3.xm", b(xm, x3) - b(x3, xm).scale(q2)),
        RelationCheck("(1-c1) xp.xm = r^2 - x3.x3", b(xp, xm).scale(ONE - c1) - (r2 - b(x3, x3))),
        RelationCheck("(1-c1) xm.xp = r^2 - q^4 x3.x3", b(xm, xp).scale(ONE - c1) - (r2 - b(x3, x3).scale(q2 * q2))),
    ]
    return checks


# -- nonassociativity witness ----------------------------------------

def monomials(max_degree: int, min_degree: int = 1) -> List[Exps]:
    ring = podles_ring()
    out = []
    for d in range(min_degree, max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(3), d):
            e = tuple(combo.count(v) for v in range(3))
            if ring.is_normal(e):
                out.append(e)
    return out


def residual_parameters(p: Poly) -> List[str]:
    names = set()
    for c in p.coefficients():
        names |= c.params()
    return sorted(names)


def associator_scan(Fc: Optional[SeriesCochain], max_total_degree: int) -> Optional[dict]:
    """First ordered monomial triple (lexicographic) with nonzero associator."""
    if max_total_degree < 3:
        raise ValueError("max_total_degree must be at least 3")
    Fc = Fc if Fc is not None else SeriesCochain.podles()
    ring = podles_ring()
    mons = monomials(max_total_degree - 2)
    cache: Dict[Exps, Poly] = {}

    def mono(e: Exps) -> Poly:
        if e not in cache:
            cache[e] = ring.monomial(e, ONE)
        return cache[e]

    triples = sorted(
        (t for t in itertools.product(mons, repeat=3) if sum(map(sum, t)) <= max_total_degree),
        key=lambda t: (sum(map(sum, t)), t),
    )
    for t in triples:
        res = associator(Fc, *(mono(e) for e in t))
        if res:
            return {
                "triple": [ring.format_monomial(e) for e in t],
                "residual": str(res),
                "parameters_involved": residual_parameters(res),
            }
    return None


# -- operator identities ---------------------------------------------

# With h = 2i xi_3 and x = -xi_+, y = -xi_- the commutators close as below;
# (x, -y, -h) is then a standard sl_2 triple.
SL2_RELATIONS = (
    ("[x,y] = h", ("x", "y"), ("h",), ONE),
    ("[h,x] = -2x", ("h", "x"), ("x",), Scalar.const(-2)),
    ("[h,y] = 2y", ("h", "y"), ("y",), Scalar.const(2)),
)


def sl2_relation_failures(max_degree: int = 5) -> Dict[str, List[str]]:
    """Monomials up to ``max_degree`` on which a commutator relation fails."""
    act = sl2()
    ring = podles_ring()
    out: Dict[str, List[str]] = {}
    for name, (a, b), rhs, coeff in SL2_RELATIONS:
        bad = []
        for e in monomials(max_degree, 0):
            p = ring.monomial(e, ONE)
            lhs = act.act((b, a), p) - act.act((a, b), p)
            if lhs != act.act(rhs, p).scale(coeff):
                bad.append(ring.format_monomial(e))
        out[name] = bad
    return out


def truncation_failures(max_degree: int = 4) -> List[str]:
    """Monomials of degree ``d`` where ``x^n`` or ``y^n`` survives for ``n = 2d + 1``."""
    act = sl2()
    ring = podles_ring()
    bad = []
    for e in monomials(max_degree, 0):
        p = ring.monomial(e, ONE)
        d = sum(e)
        for g in ("x", "y"):
            if act.power(g, 2 * d + 1, p):
                bad.append(f"{g}^{2 * d + 1} > {ring.format_monomial(e)}")
    return bad
