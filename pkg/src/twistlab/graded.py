"""Z_2^n-graded coordinate algebras of spheres and their cochain twists.

The classical algebra is ``k[x_a : a in Z_2^n] / (sum_a x_a^2 - 1)``, with
``|x_a| = a``.  Normal form eliminates ``x_0^2``.  Twisting by a 2-cochain
``F`` gives the bullet product ``p . q = F(|p|, |q|) p q`` on homogeneous
parts.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Tuple

from .cochain import Cochain2, all_degrees, coboundary
from .poly import Exps, Poly, QuotientRing


@lru_cache(maxsize=None)
def sphere_ring(n: int) -> QuotientRing:
    """Coordinate ring of the unit sphere in ``k^(2^n)`` graded by Z_2^n."""
    m = 1 << n
    names = [f"x{a}" for a in range(m)]
    lead = tuple(2 if a == 0 else 0 for a in range(m))
    tail = {(0,) * m: 1}
    for a in range(1, m):
        tail[tuple(2 if b == a else 0 for b in range(m))] = -1
    return QuotientRing(names, lead, tail, grading=list(range(m)))


def normal_form(ring: QuotientRing, raw: Dict[Exps, object]) -> Poly:
    return ring.from_dict(raw)


def classical_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def degree_of(ring: QuotientRing, exps: Exps) -> int:
    return ring.monomial_degree(exps)


def _cochain_table(F: Cochain2):
    try:
        return F.numeric
    except ValueError:
        return F.values


def _inverse_table(F: Cochain2):
    try:
        return {k: 1 / v for k, v in F.numeric.items()}
    except ValueError:
        return F.inverse_values


_PHI_CACHE: Dict[int, tuple] = {}


def _phi_table(F: Cochain2):
    hit = _PHI_CACHE.get(id(F))
    if hit is not None and hit[0] is F:
        return hit[1]
    result = _phi_table_uncached(F)
    _PHI_CACHE[id(F)] = (F, result)
    return result


def _phi_table_uncached(F: Cochain2):
    phi = coboundary(F)
    try:
        num = {k: v.to_rational() for k, v in phi.values.items()}
        inv = {k: v.to_rational() for k, v in phi.inverse_values.items()}
        return num, inv
    except ValueError:
        return phi.values, phi.inverse_values


def bullet_mul(F: Cochain2, p: Poly, q: Poly) -> Poly:
    """Twisted product ``sum_{a,b} F(a, b) p_a q_b``."""
    f = _cochain_table(F)
    out = p.ring.zero()
    for a, pa in p.components().items():
        for b, qb in q.components().items():
            out = out + (pa * qb).scale(f[a, b])
    return out


def plain_associator(F: Cochain2, p: Poly, q: Poly, r: Poly) -> Poly:
    """``(p . q) . r - p . (q . r)``."""
    return bullet_mul(F, bullet_mul(F, p, q), r) - bullet_mul(F, p, bullet_mul(F, q, r))


def associator_bullet(F: Cochain2, p: Poly, q: Poly, r: Poly) -> Poly:
    """``(p . q) . r - sum (dF)^-(a, b, c) p_a . (q_b . r_c)``; zero iff the law holds."""
    phi, _ = _phi_table(F)
    lhs = bullet_mul(F, bullet_mul(F, p, q), r)
    rhs = p.ring.zero()
    for a, pa in p.components().items():
        for b, qb in q.components().items():
            for c, rc in r.components().items():
                rhs = rhs + bullet_mul(F, pa, bullet_mul(F, qb, rc)).scale(phi[a, b, c])
    return lhs - rhs


def commutator_defect(F: Cochain2, p: Poly, q: Poly) -> Poly:
    """``q . p - sum R(a, b) p_a . q_b`` with ``R(a, b) = F(b, a) F^-(a, b)``."""
    f = _cochain_table(F)
    fi = _inverse_table(F)
    out = bullet_mul(F, q, p)
    for a, pa in p.components().items():
        for b, qb in q.components().items():
            out = out - bullet_mul(F, pa, qb).scale(f[b, a] * fi[a, b])
    return out


def bullet_mul_stepwise(F: Cochain2, p: Poly, q: Poly) -> Poly:
    """Bullet product computed one generator at a time.

    Each monomial of ``q`` is rewritten as a left-nested bullet word of
    generators; ``p`` is multiplied into the word step by step, rebracketing
    ``P . (W . y) = dF(|P|, |W|, |y|) (P . W) . y``.  Only the cochain values
    on single generators and the coboundary are used.
    """
    ring = p.ring
    f = _cochain_table(F)
    fi = _inverse_table(F)
    _, dF = _phi_table(F)
    grading = ring.grading
    out = ring.zero()
    for pm, pc in p.terms.items():
        P = ring.monomial(pm, pc)
        dP = ring.monomial_degree(pm)
        for qm, qc in q.terms.items():
            word = [i for i, e in enumerate(qm) for _ in range(e)]
            if not word:
                out = out + P.scale(qc)
                continue
            # classical monomial -> left-nested bullet word
            scale = qc
            acc = 0
            for i in word:
                scale = scale * fi[acc, grading[i]]
                acc ^= grading[i]
            out = out + _mul_word(ring, f, dF, P, dP, word).scale(scale)
    return out


def _mul_word(ring, f, dF, P: Poly, dP: int, word: List[int]) -> Poly:
    y = word[-1]
    dy = ring.grading[y]
    if len(word) == 1:
        return (P * ring.var(y)).scale(f[dP, dy])
    head = word[:-1]
    dW = 0
    for i in head:
        dW ^= ring.grading[i]
    inner = _mul_word(ring, f, dF, P, dP, head)
    return (inner * ring.var(y)).scale(f[dP ^ dW, dy] * dF[dP, dW, dy])


def twist_module_action(F: Cochain2, a: Poly, v, act: Callable = None):
    """``a >^F v = sum F(|a_c|, |v_d|) a_c > v_d``.

    ``v`` must provide ``components()`` (degree -> part) and its parts a
    ``scale`` method; ``act`` is the classical action (default ``a * v``).
    """
    act = act or (lambda x, y: x * y)
    f = _cochain_table(F)
    out = None
    for c, ac in a.components().items():
        for d, vd in v.components().items():
            term = act(ac, vd).scale(f[c, d])
            out = term if out is None else out + term
    return out if out is not None else act(a.ring.zero(), v)


def twist_right_action(F: Cochain2, v, a: Poly, act: Callable = None):
    """``v <^F a = sum F(|v_d|, |a_c|) v_d < a_c``."""
    act = act or (lambda x, y: y * x)
    f = _cochain_table(F)
    out = None
    for d, vd in v.components().items():
        for c, ac in a.components().items():
            term = act(vd, ac).scale(f[d, c])
            out = term if out is None else out + term
    return out if out is not None else act(v, a.ring.zero())


def monomials(ring: QuotientRing, max_degree: int, min_degree: int = 0) -> List[Exps]:
    """Normal-form monomials with total degree in ``[min_degree, max_degree]``."""
    out = []
    for d in range(min_degree, max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(ring.nvars), d):
            e = [0] * ring.nvars
            for i in combo:
                e[i] += 1
            e = tuple(e)
            if ring.is_normal(e):
                out.append(e)
    return out


def monomial_triples(ring: QuotientRing, max_total: int, min_degree: int = 1) -> Iterator[Tuple[Exps, Exps, Exps]]:
    """Ordered triples of normal monomials (each of degree >= min_degree) with total degree <= max_total."""
    by_deg: Dict[int, List[Exps]] = {}
    for m in monomials(ring, max_total, min_degree):
        by_deg.setdefault(sum(m), []).append(m)
    for d1, d2, d3 in itertools.product(range(min_degree, max_total + 1), repeat=3):
        if d1 + d2 + d3 > max_total:
            continue
        for m1 in by_deg.get(d1, []):
            for m2 in by_deg.get(d2, []):
                for m3 in by_deg.get(d3, []):
                    yield m1, m2, m3


# -- the finite twisted group algebra k Z_2^n (octonions for n = 3) ---------

def group_algebra_bullet(F: Cochain2, u: Dict[int, object], v: Dict[int, object]) -> Dict[int, object]:
    """``e_a . e_b = F(a, b) e_{a+b}`` extended bilinearly."""
    f = _cochain_table(F)
    out: Dict[int, object] = {}
    for a, ca in u.items():
        for b, cb in v.items():
            k = a ^ b
            out[k] = out.get(k, 0) + ca * cb * f[a, b]
    return {k: c for k, c in out.items() if c}


def monomial_pairs(ring: QuotientRing, max_total: int, min_degree: int = 0) -> Iterator[Tuple[Exps, Exps]]:
    mons = monomials(ring, max_total, min_degree)
    for m1 in mons:
        for m2 in mons:
            if sum(m1) + sum(m2) <= max_total:
                yield m1, m2


def basis_element(a: int) -> Dict[int, object]:
    return {a: 1}


def multiplication_table(F: Cochain2) -> List[List[Tuple[int, int]]]:
    """Signed table: entry ``[a][b] = (sign, a ^ b)``."""
    f = _cochain_table(F)
    G = all_degrees(F.n)
    return [[(int(f[a, b]), a ^ b) for b in G] for a in G]
