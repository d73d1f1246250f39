"""Riemannian structures on the sphere calculus, classical and cochain-twisted.

Every tensor is a :class:`~twistlab.forms.FormTensor` whose coefficient sits
on the first leg.  For twisted tensors the underlying vectors are the same;
what changes is the meaning of a representative, fixed by a bracketing
tree.  Trees are nested pairs of leg positions, e.g. ``((0, 1), 2)``.

The twist functor sends a classical word to the twisted one with the factor

    c_T(d) = prod_{nodes (L, R) of T} F^-(|L|, |R|)

and the associator of the twisted category is the ratio of two such
factors.  All twisted maps below are written with the twisted formulas
(``F``-scaled wedge, braided flip, twisted Leibniz rule, associators
inserted as prescribed); with the trivial cochain they reduce to the
classical ones, so a single implementation serves both.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .calculus import SphereCalculus
from .cochain import Cochain2, coboundary, make_octonion_cochain
from .forms import FormTensor, Legs, leg_degree, sort_leg
from .poly import Poly

Tree = object  # int leaf or (Tree, Tree)

LEFT3 = ((0, 1), 2)
RIGHT3 = (0, (1, 2))


def left_tree(k: int) -> Tree:
    """Left-nested bracketing of ``k`` legs."""
    tree: Tree = 0
    for i in range(1, k):
        tree = (tree, i)
    return tree


def right_tree(k: int) -> Tree:
    tree: Tree = k - 1
    for i in range(k - 2, -1, -1):
        tree = (i, tree)
    return tree


def _term_degrees(legs: Legs, coeff_degree: int) -> List[int]:
    degs = [leg_degree(leg) for leg in legs]
    degs[0] ^= coeff_degree
    return degs


class TwistContext:
    """Cochain ``F`` with its coboundary and braiding as rational tables."""

    def __init__(self, F: Cochain2):
        self.F = F
        self.n = F.n
        self.f: Dict[Tuple[int, int], Fraction] = F.numeric
        self.fi = {k: 1 / v for k, v in self.f.items()}
        phi = coboundary(F)
        # phi_minus: (uv)w -> u(vw); phi_plus: the inverse direction
        self.phi_minus = {k: v.to_rational() for k, v in phi.values.items()}
        self.phi_plus = {k: v.to_rational() for k, v in phi.inverse_values.items()}
        self.R = {(a, b): self.f[b, a] * self.fi[a, b] for (a, b) in self.f}

    @classmethod
    def trivial(cls, n: int) -> TwistContext:
        return cls(Cochain2.trivial(n))

    @classmethod
    def octonion_family(cls, n: int = 3) -> TwistContext:
        return cls(make_octonion_cochain(n))

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.f.values())

    def consistency(self) -> bool:
        G = range(1 << self.n)
        counital = all(self.phi_minus[0, a, b] == 1 and self.phi_minus[a, 0, b] == 1 and self.phi_minus[a, b, 0] == 1
                       for a in G for b in G)
        return counital and all(self.R[a, a] == 1 for a in G)

    # -- bracketing factors --------------------------------------------
    def tree_factor(self, tree: Tree, degs: Sequence[int]) -> Fraction:
        """``c_T`` evaluated on leg degrees."""
        return self._tree(tree, degs)[1]

    def _tree(self, tree, degs):
        if isinstance(tree, int):
            return degs[tree], Fraction(1)
        dl, fl = self._tree(tree[0], degs)
        dr, fr = self._tree(tree[1], degs)
        return dl ^ dr, fl * fr * self.fi[dl, dr]

    def move_factor(self, tree: Tree, degs: Sequence[int], coeff_degree: int, pos: int) -> Fraction:
        """Scalar for moving a coefficient of degree ``coeff_degree`` from leg ``pos`` to leg 0.

        ``degs`` are the leg degrees with the coefficient still on ``pos``.
        Both sides represent the same element because ``c_T`` is defined on
        the balanced tensor product and classically coefficients move freely.
        """
        if pos == 0 or coeff_degree == 0:
            return Fraction(1)
        after = list(degs)
        after[pos] ^= coeff_degree
        after[0] ^= coeff_degree
        return self.tree_factor(tree, after) / self.tree_factor(tree, degs)

    # -- twist maps ----------------------------------------------------
    def twist_tensor(self, t: FormTensor, tree: Optional[Tree] = None, inverse: bool = False) -> FormTensor:
        """``c``: classical word -> twisted representative (left-nested by default)."""
        out = FormTensor(t.ring)
        for legs, e, part in t.homogeneous_terms():
            tr = tree if tree is not None else left_tree(len(legs))
            fac = self.tree_factor(tr, _term_degrees(legs, e))
            out.add_term(legs, part.scale(1 / fac if inverse else fac))
        return out

    def untwist_tensor(self, t: FormTensor, tree: Optional[Tree] = None) -> FormTensor:
        return self.twist_tensor(t, tree, inverse=True)

    def apply_associator(self, t: FormTensor, spans: Sequence[int], offset: int = 0, inverse: bool = False) -> FormTensor:
        """``Phi`` on three consecutive leg groups starting at ``offset``.

        ``spans`` gives the number of legs in each group; the coefficient
        degree counts towards leg 0.  ``inverse`` applies ``Phi^{-1}``.
        """
        a, b, c = spans
        table = self.phi_plus if inverse else self.phi_minus
        out = FormTensor(t.ring)
        for legs, e, part in t.homogeneous_terms():
            degs = _term_degrees(legs, e)
            groups = []
            start = offset
            for s in (a, b, c):
                d = 0
                for x in degs[start:start + s]:
                    d ^= x
                groups.append(d)
                start += s
            out.add_term(legs, part.scale(table[tuple(groups)]))
        return out

    def wedge_F(self, s: FormTensor, t: FormTensor, max_degree: int = 2) -> FormTensor:
        """``s ^F t = F(|s|, |t|) s ^ t`` on single-leg forms."""
        out = FormTensor(s.ring)
        for (ls,), es, ps in s.homogeneous_terms():
            for (lt,), et, pt in t.homogeneous_terms():
                if len(ls) + len(lt) > max_degree:
                    raise ValueError(f"wedge degree {len(ls) + len(lt)} exceeds modelled range {max_degree}")
                sign, leg = sort_leg(ls + lt)
                if not sign:
                    continue
                # the product of the coefficients has degree es ^ et
                fac = self.f[es ^ leg_degree(ls), et ^ leg_degree(lt)] * sign
                out.add_term((leg,), (ps * pt).scale(fac))
        return out

    def wedge_legs(self, t: FormTensor, pos: int = 0) -> FormTensor:
        """``wedge^F`` on legs ``pos, pos + 1`` of a tensor bracketed so they pair first."""
        out = FormTensor(t.ring)
        for legs, e, part in t.homogeneous_terms():
            degs = _term_degrees(legs, e)
            sign, leg = sort_leg(legs[pos] + legs[pos + 1])
            if sign:
                out.add_term(legs[:pos] + (leg,) + legs[pos + 2:], part.scale(self.f[degs[pos], degs[pos + 1]] * sign))
        return out

    def sigma_F(self, t: FormTensor) -> FormTensor:
        """Braided flip on 2-leg tensors; the coefficient is moved back to the front."""
        out = FormTensor(t.ring)
        for legs, e, part in t.homogeneous_terms():
            d0, d1 = _term_degrees(legs, e)
            fac = self.f[d0, d1] * self.fi[d1, d0]
            swapped = [leg_degree(legs[1]), d0]
            fac *= self.move_factor((0, 1), swapped, e, 1)
            out.add_term((legs[1], legs[0]), part.scale(fac))
        return out

    def act_left(self, f: Poly, t: FormTensor, tree: Optional[Tree] = None) -> FormTensor:
        """``f >^F t`` for a tensor with coefficient on leg 0.

        One leg: ``F(|f|, |t|) f t``.  Two legs: ``Phi^{-1}`` then act on the
        first leg, ``dF(|f|, |xi|, |w|) F(|f|, |xi|) (f xi) (x) w``.
        """
        out = FormTensor(t.ring)
        for cf, fpart in f.components().items():
            for legs, e, part in t.homogeneous_terms():
                degs = _term_degrees(legs, e)
                if len(legs) == 1:
                    fac = self.f[cf, degs[0]]
                elif len(legs) == 2:
                    fac = self.phi_plus[cf, degs[0], degs[1]] * self.f[cf, degs[0]]
                else:
                    raise ValueError("act_left supports one or two legs")
                out.add_term(legs, (fpart * part).scale(fac))
        return out

    def braiding(self, a: int, b: int) -> Fraction:
        return self.R[a, b]


@dataclass
class Connection:
    """Left connection given on the coframe: ``i -> nabla w^i`` (classical, 2 legs)."""

    values: Dict[int, FormTensor]

    @classmethod
    def levi_civita(cls, calc: SphereCalculus) -> Connection:
        vals = {}
        for i in calc.indices:
            t = FormTensor(calc.ring)
            for j, k in itertools.product(calc.indices, repeat=2):
                c = calc.c(i, j, k)
                if c:
                    t.add_term(((j,), (k,)), -c)
            vals[i] = t
        return cls(vals)

    @classmethod
    def zero(cls, calc: SphereCalculus) -> Connection:
        return cls({i: FormTensor(calc.ring) for i in calc.indices})


class Geometry:
    """Metric, connection and curvature data in the category twisted by ``ctx``.

    With ``TwistContext.trivial`` this is classical geometry.
    """

    def __init__(
        self,
        calc: SphereCalculus,
        ctx: Optional[TwistContext] = None,
        connection: Optional[Connection] = None,
        metric: Optional[Dict[Tuple[int, int], Fraction]] = None,
    ):
        self.calc = calc
        self.ring = calc.ring
        self.ctx = ctx or TwistContext.trivial(calc.n)
        self.base_connection = connection or Connection.levi_civita(calc)
        self.metric = metric if metric is not None else {(i, i): Fraction(1) for i in calc.indices}
        self._nabla = {i: self.ctx.twist_tensor(t) for i, t in self.base_connection.values.items()}
        self._curv: Dict[int, FormTensor] = {}

    # -- metric --------------------------------------------------------
    def classical_metric(self) -> FormTensor:
        g = FormTensor(self.ring)
        for (i, j), v in self.metric.items():
            if v:
                g.add_term(((i,), (j,)), self.ring.const(v))
        return g

    def metric_tensor(self) -> FormTensor:
        """``g^F = c(g)``."""
        return self.ctx.twist_tensor(self.classical_metric())

    def pairing(self, t: FormTensor) -> Poly:
        """``<,>^F`` on 2-leg tensors: ``F(|u|, |v|) <u, v>`` with ``<w^i, w^j> = delta_ij``."""
        ctx = self.ctx
        out = self.ring.zero()
        for (a, b), e, part in t.homogeneous_terms():
            if len(a) != 1 or len(b) != 1:
                raise ValueError("pairing needs two 1-form legs")
            if a == b:
                out = out + part.scale(ctx.f[leg_degree(a) ^ e, leg_degree(b)])
        return out

    # -- connection ----------------------------------------------------
    def nabla_coframe(self, i: int) -> FormTensor:
        """``nabla^F w^i = c(nabla w^i)``."""
        return self._nabla[i]

    def nabla(self, v: FormTensor) -> FormTensor:
        """Connection on 1-forms via the twisted Leibniz rule.

        ``f w^i = F^-(|f|, i) f . w^i`` and
        ``nabla^F(f . w^i) = df (x) w^i + f >^F nabla^F w^i``.
        """
        ctx, calc = self.ctx, self.calc
        out = FormTensor(self.ring)
        for (leg,), e, part in v.homogeneous_terms():
            if len(leg) != 1:
                raise ValueError("nabla acts on 1-forms")
            (i,) = leg
            pre = ctx.fi[e, i]
            df = calc.exterior_d(FormTensor.function(part))
            for (k,), dk in df.terms.items():
                out.add_term((k, leg), dk.scale(pre))
            out = out + ctx.act_left(part, self._nabla[i]).scale(pre)
        return out

    def torsion(self, v: FormTensor) -> FormTensor:
        """``d - wedge^F nabla^F`` on a 1-form."""
        return self.calc.exterior_d(v) - self.ctx.wedge_legs(self.nabla(v))

    def _front_nabla(self, t: FormTensor) -> FormTensor:
        """``nabla^F`` on the first leg of a 2-leg tensor: ``((a, b), w)``, left-nested."""
        out = FormTensor(self.ring)
        for legs, coeff in t.terms.items():
            v = FormTensor(self.ring, {(legs[0],): coeff})
            for (l0, l1), c in self.nabla(v).terms.items():
                out.add_term((l0, l1) + legs[1:], c)
        return out

    def _back_nabla_left(self, t: FormTensor) -> FormTensor:
        """``Phi^{-1} (id (x) nabla^F)`` on 2-leg ``u (x) w^k``, returned left-nested.

        The coefficient produced on the middle leg is moved to the front.
        """
        ctx = self.ctx
        out = FormTensor(self.ring)
        for legs, e, part in t.homogeneous_terms():
            (k,) = legs[1]
            du = leg_degree(legs[0]) ^ e
            for (a, b), ce, cpart in self._nabla[k].homogeneous_terms():
                degs = [du, leg_degree(a) ^ ce, leg_degree(b)]
                fac = ctx.phi_plus[tuple(degs)]
                fac *= ctx.move_factor(LEFT3, degs, ce, 1)
                out.add_term((legs[0], a, b), (part * cpart).scale(fac))
        return out

    def nabla_tensor(self, t: FormTensor) -> FormTensor:
        """``nabla^F`` on ``Omega^1 (x) Omega^1``, output bracketed ``(form, (v, w))``.

        ``Phi(nabla^F (x) id) + Phi(sigma^F (x) id) Phi^{-1} (id (x) nabla^F)``.
        """
        ctx = self.ctx
        first = ctx.apply_associator(self._front_nabla(t), (1, 1, 1))
        second = FormTensor(self.ring)
        for legs, e, part in self._back_nabla_left(t).homogeneous_terms():
            d0, d1, d2 = _term_degrees(legs, e)
            # sigma^F on the first two legs, then bring the coefficient forward
            fac = ctx.f[d0, d1] * ctx.fi[d1, d0]
            swapped = [leg_degree(legs[1]), d0, d2]
            fac *= ctx.move_factor(LEFT3, swapped, e, 1)
            after = [leg_degree(legs[1]) ^ e, leg_degree(legs[0]), d2]
            fac *= ctx.phi_minus[tuple(after)]
            second.add_term((legs[1], legs[0], legs[2]), part.scale(fac))
        return first + second

    def nabla_metric(self) -> FormTensor:
        return self.nabla_tensor(self.metric_tensor())

    # -- curvature -----------------------------------------------------
    def curvature(self, i: int) -> FormTensor:
        """``(d (x) id - (wedge^F (x) id) Phi^{-1} (id (x) nabla^F)) nabla^F w^i``; legs (2-form, 1-form)."""
        if i not in self._curv:
            calc, ctx = self.calc, self.ctx
            src = self._nabla[i]
            out = FormTensor(self.ring)
            for (a, b), c in src.terms.items():
                dxi = calc.exterior_d(FormTensor(self.ring, {(a,): c}))
                for (l,), dc in dxi.terms.items():
                    out.add_term((l, b), dc)
            out = out - ctx.wedge_legs(self._back_nabla_left(src))
            self._curv[i] = out
        return self._curv[i]

    def curvature_closed_form(self, i: int) -> FormTensor:
        """``-(c^i_{mj} c^j_{nk} - c^i_{jk} c^j_{mn} + d_m c^i_{nk}) w^m w^n (x) w^k`` (classical)."""
        calc = self.calc
        idx = calc.indices
        out = FormTensor(self.ring)
        for m, n_, k in itertools.product(idx, repeat=3):
            sign, leg = sort_leg((m, n_))
            if not sign:
                continue
            coeff = calc.invariant_derivative(m, calc.c(i, n_, k))
            for j in idx:
                coeff = coeff + calc.c(i, m, j) * calc.c(j, n_, k) - calc.c(i, j, k) * calc.c(j, m, n_)
            out.add_term((leg, (k,)), coeff.scale(-sign))
        return out

    # -- lift and Ricci ------------------------------------------------
    def lift(self, zeta: FormTensor) -> FormTensor:
        """``i^F`` on 2-forms: basis ``1/2 (F^-(m,n) w^m (x) w^n - F^-(n,m) w^n (x) w^m)``, extended as a module map."""
        ctx = self.ctx
        half = Fraction(1, 2)
        out = FormTensor(self.ring)
        for (leg,), e, part in zeta.homogeneous_terms():
            if len(leg) != 2:
                raise ValueError("lift acts on 2-forms")
            m, n_ = leg
            basis = FormTensor(self.ring)
            basis.add_term(((m,), (n_,)), self.ring.const(half * ctx.fi[m, n_]))
            basis.add_term(((n_,), (m,)), self.ring.const(-half * ctx.fi[n_, m]))
            out = out + ctx.act_left(part, basis).scale(ctx.fi[e, m ^ n_])
        return out

    def wedge_after_lift(self, zeta: FormTensor) -> FormTensor:
        return self.ctx.wedge_legs(self.lift(zeta))

    def ricci(self) -> FormTensor:
        """``((<,>^F (x) id) Phi^{-1} (id (x) i^F) (x) id) Phi^{-1} (id (x) R^F) g^F``."""
        ctx = self.ctx
        g = self.metric_tensor()
        out = FormTensor(self.ring)
        for legs, e, part in g.homogeneous_terms():
            (i,) = legs[1]
            du = leg_degree(legs[0]) ^ e
            for (zeta, w), ce, cpart in self.curvature(i).homogeneous_terms():
                dz = leg_degree(zeta)
                dw = leg_degree(w)
                # Phi^{-1}: (u, (zeta, w)) -> ((u, zeta), w); move zeta's coefficient to the front
                degs = [du, dz ^ ce, dw]
                fac = ctx.phi_plus[tuple(degs)] * ctx.move_factor(LEFT3, degs, ce, 1)
                d0 = du ^ ce
                coeff = (part * cpart).scale(fac)
                # (id (x) i^F) (x) id on (u, zeta): zeta is coefficient-free now
                m, n_ = zeta
                for (p, q), lift_fac in (((m, n_), Fraction(1, 2) * ctx.fi[m, n_]), ((n_, m), -Fraction(1, 2) * ctx.fi[n_, m])):
                    if (p,) != legs[0]:
                        continue
                    # Phi^{-1} on (u, (w^p, w^q)) inside the first factor
                    f2 = lift_fac * ctx.phi_plus[d0, p, q]
                    # <u, w^p>^F = F(|u|, p), then scalar >^F w^q
                    f2 *= ctx.f[d0, p]
                    f2 *= ctx.f[d0 ^ p, q]
                    out.add_term(((q,), w), coeff.scale(f2))
        return out

    def ricci_scalar(self) -> Poly:
        return self.pairing(self.ricci())

    def cotorsion(self) -> FormTensor:
        """``(wedge^F nabla^F (x) id - (wedge^F (x) id) Phi^{-1} (id (x) nabla^F)) g^F``."""
        g = self.metric_tensor()
        first = self.ctx.wedge_legs(self._front_nabla(g))
        second = self.ctx.wedge_legs(self._back_nabla_left(g))
        return first - second

    def metric_symmetry(self) -> FormTensor:
        """``wedge^F(g^F)``; zero for a quantum-symmetric metric."""
        return self.ctx.wedge_legs(self.metric_tensor())
