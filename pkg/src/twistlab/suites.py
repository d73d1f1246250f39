"""Verification suites: named groups of exact checks with JSON/text reports."""

from __future__ import annotations

import hashlib
import itertools
import json
import time
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from . import graded, podles
from .calculus import SphereCalculus, sphere_calculus
from .cochain import (
    BIT_ORDER,
    all_degrees,
    braiding,
    coboundary,
    is_cocycle,
    linearly_independent,
    make_octonion_cochain,
    reality_check,
)
from .forms import FormTensor
from .riemann import RIGHT3, Geometry, TwistContext

SUITES = ("cochains", "octonions", "s7-classical", "s7-twisted", "s3", "s1", "podles")


@dataclass
class Outcome:
    ok: bool
    residual: Optional[str] = None
    lhs_hash: Optional[str] = None
    rhs_hash: Optional[str] = None


@dataclass
class CheckRecord:
    name: str
    status: str
    ms: float
    residual: Optional[str] = None
    lhs_hash: Optional[str] = None
    rhs_hash: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self, timings: bool = True) -> dict:
        out = {"name": self.name, "status": self.status}
        if timings:
            out["ms"] = self.ms
        for key in ("residual", "lhs_hash", "rhs_hash"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out


@dataclass
class SuiteReport:
    suite: str
    fingerprint: dict
    checks: List[CheckRecord] = field(default_factory=list)
    total_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "fingerprint": self.fingerprint,
            "passed": self.passed,
            "checks": [c.to_json(timings) for c in sorted(self.checks, key=lambda c: c.name)],
        }
        if timings:
            out["total_ms"] = self.total_ms
        return out

    def dumps(self, timings: bool = True) -> str:
        return json.dumps(self.to_json(timings), sort_keys=True, indent=2)

    def to_text(self, timings: bool = True) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for c in sorted(self.checks, key=lambda c: c.name):
            t = f"  ({c.ms:.1f} ms)" if timings else ""
            lines.append(f"  [{c.status}] {c.name}{t}")
            if c.residual is not None:
                lines.append(f"         residual: {c.residual}")
        if timings:
            lines.append(f"total {self.total_ms:.1f} ms")
        return "\n".join(lines)


# -- outcome helpers ---------------------------------------------------

def digest(obj) -> str:
    return hashlib.sha256(str(obj).encode()).hexdigest()[:12]


def compare(lhs, rhs, residual: Optional[Callable] = None) -> Outcome:
    """Exact equality with hashes of both sides; residual on mismatch."""
    ok = lhs == rhs
    res = None
    if not ok:
        res = str(residual(lhs, rhs) if residual else lhs - rhs)
    return Outcome(ok, res, digest(lhs), digest(rhs))


def is_zero(value) -> Outcome:
    return Outcome(not value, None if not value else str(value))


def failures(items: List[str], limit: int = 5) -> Outcome:
    """Pass iff ``items`` (descriptions of failing cases) is empty."""
    if not items:
        return Outcome(True)
    shown = "; ".join(items[:limit])
    more = f" (+{len(items) - limit} more)" if len(items) > limit else ""
    return Outcome(False, shown + more)


Check = Tuple[str, Callable[[], Outcome]]


def run_checks(suite: str, fingerprint: dict, checks: List[Check]) -> SuiteReport:
    report = SuiteReport(suite, fingerprint)
    start = time.perf_counter()
    for name, fn in checks:
        t0 = time.perf_counter()
        try:
            out = fn()
        except Exception as exc:  # a crashing check is a failed check
            out = Outcome(False, f"{type(exc).__name__}: {exc}")
        ms = round((time.perf_counter() - t0) * 1000, 3)
        report.checks.append(
            CheckRecord(name, "pass" if out.ok else "fail", ms, out.residual, out.lhs_hash, out.rhs_hash)
        )
    report.total_ms = round((time.perf_counter() - start) * 1000, 3)
    return report


def fingerprint_for(F) -> dict:
    return {"bit_order": BIT_ORDER, "cochain": F.name, "cochain_hash": F.fingerprint()}


# -- cochains ----------------------------------------------------------

def _cochain_checks() -> List[Check]:
    quat, octo = make_octonion_cochain(2), make_octonion_cochain(3)

    def braiding_independence(F):
        bad = []
        for a, b in itertools.product(all_degrees(F.n), repeat=2):
            expect = -1 if linearly_independent(a, b) else 1
            if braiding(F, a, b) != expect:
                bad.append(f"R({a},{b})")
        return failures(bad)

    return [
        ("quaternion cochain is a cocycle", lambda: Outcome(is_cocycle(quat))),
        ("octonion cochain is not a cocycle", lambda: Outcome(not is_cocycle(octo))),
        ("complex cochain is a cocycle", lambda: Outcome(is_cocycle(make_octonion_cochain(1)))),
        ("reality condition for n=1,2,3", lambda: failures([f"n={n}" for n in (1, 2, 3) if not reality_check(make_octonion_cochain(n))])),
        ("counitality for n=1,2,3", lambda: failures([f"n={n}" for n in (1, 2, 3) if not make_octonion_cochain(n).is_counital()])),
        ("braiding R(a,b) = -1 iff independent (octonion)", lambda: braiding_independence(octo)),
        ("braiding R(a,b) = -1 iff independent (quaternion)", lambda: braiding_independence(quat)),
    ]


# -- octonions ---------------------------------------------------------

def _octonion_checks() -> List[Check]:
    F = make_octonion_cochain(3)
    e = graded.basis_element
    mul = lambda u, v: graded.group_algebra_bullet(F, u, v)
    G = list(all_degrees(3))

    def table_matches():
        bad = []
        for a, b in itertools.product(G, repeat=2):
            if mul(e(a), e(b)) != {a ^ b: F.numeric[a, b]}:
                bad.append(f"e{a}.e{b}")
        return failures(bad)

    def alternativity():
        bad = []
        for a, b in itertools.product(G, repeat=2):
            x, y = e(a), e(b)
            if mul(mul(x, y), x) != mul(x, mul(y, x)):
                bad.append(f"flexible e{a},e{b}")
            if mul(mul(x, x), y) != mul(x, mul(x, y)):
                bad.append(f"left e{a},e{b}")
            if mul(mul(y, x), x) != mul(y, mul(x, x)):
                bad.append(f"right e{a},e{b}")
        return failures(bad)

    def associator_signs():
        phi = coboundary(F)
        bad = []
        count = 0
        for a, b, c in itertools.product(G, repeat=3):
            indep = linearly_independent(a, b, c)
            count += indep
            if phi.value(a, b, c) != (-1 if indep else 1):
                bad.append(f"phi({a},{b},{c})")
        if count != 168:
            bad.append(f"{count} independent triples, expected 168")
        return failures(bad)

    def nonassociative_product():
        bad = []
        phi = coboundary(F)
        for a, b, c in itertools.product(G, repeat=3):
            lhs = mul(mul(e(a), e(b)), e(c))
            rhs = {k: v * phi.value(a, b, c).to_rational() for k, v in mul(e(a), mul(e(b), e(c))).items()}
            if lhs != rhs:
                bad.append(f"({a},{b},{c})")
        return failures(bad)

    checks: List[Check] = [
        ("multiplication table e_a.e_b = F(a,b) e_(a+b)", table_matches),
        ("alternativity over all 64 basis pairs", alternativity),
        ("phi = -1 exactly on the 168 independent triples", associator_signs),
        ("(e_a.e_b).e_c = phi(a,b,c) e_a.(e_b.e_c)", nonassociative_product),
        ("e_0 is a two-sided unit", lambda: failures([f"e{a}" for a in G if mul(e(0), e(a)) != e(a) or mul(e(a), e(0)) != e(a)])),
    ]
    for a in G[1:]:
        checks.append((f"e_{a}.e_{a} = -e_0", lambda a=a: Outcome(mul(e(a), e(a)) == {0: -1})))
    return checks


# -- spheres -----------------------------------------------------------

@lru_cache(maxsize=None)
def geometries(n: int) -> Tuple[Geometry, Geometry]:
    calc = sphere_calculus(n)
    return Geometry(calc, TwistContext.trivial(n)), Geometry(calc, TwistContext.octonion_family(n))


def _einstein(geo: Geometry, lam: int) -> Outcome:
    return compare(geo.ricci(), geo.metric_tensor().scale(lam))


def _calculus_checks(calc: SphereCalculus, killing: int) -> List[Check]:
    idx = calc.indices
    ring = calc.ring

    def antisymmetry():
        c = calc.structure_functions()
        bad = [f"c{ijk}" for ijk in c
               if c[ijk] + c[ijk[1], ijk[0], ijk[2]] or c[ijk] + c[ijk[0], ijk[2], ijk[1]]]
        return failures(bad)

    def killing_form():
        bad = []
        for i, j in itertools.product(idx, repeat=2):
            val = calc.killing(i, j)
            if val != ring.const(killing if i == j else 0):
                bad.append(f"K({i},{j}) = {val}")
        return failures(bad)

    def degrees():
        bad = []
        for (i, j, k), p in calc.structure_functions().items():
            comps = p.components()
            if p and (set(comps) != {i ^ j ^ k} or p.total_degree() > 2):
                bad.append(f"c{(i, j, k)}")
        return failures(bad)

    return [
        ("d^2 = 0 on all generators", lambda: failures([f"x{b}" for b in range(calc.m) if calc.d_of_dx(b)])),
        ("Maurer-Cartan dw^i = -c^i_jk w^j w^k", lambda: failures([f"w{i}" for i in idx if calc.d_coframe(i) != calc.d_omega_direct(i)])),
        ("c_ijk totally antisymmetric", antisymmetry),
        (f"Killing c^m_in c^n_jm = {killing} delta_ij", killing_form),
        ("c^i_jk homogeneous of degree i+j+k, at most quadratic", degrees),
        ("w^0 = sum x_a dx_a vanishes on the coframe", lambda: is_zero(calc.omega0_on_coframe())),
        ("dx_b round trip through the coframe", lambda: failures(
            [f"dx{b}" for b in range(calc.m) if calc.dx_roundtrip(b).coeffs != {b: ring.one()}])),
    ]


def _geometry_checks(geo: Geometry, einstein: int, scalar: int) -> List[Check]:
    calc = geo.calc
    idx = calc.indices
    checks = [
        ("torsion = 0", lambda: failures([f"w{i}" for i in idx if geo.torsion(calc.coframe(i))])),
        ("nabla g = 0", lambda: is_zero(geo.nabla_metric())),
        ("cotorsion = 0", lambda: is_zero(geo.cotorsion())),
        ("wedge(g) = 0", lambda: is_zero(geo.metric_symmetry())),
        (f"Ricci = {einstein} g", lambda: _einstein(geo, einstein)),
        (f"Ricci scalar = {scalar}", lambda: compare(geo.ricci_scalar(), calc.ring.const(scalar))),
        ("wedge o lift = id on 2-forms", lambda: failures([
            f"w{m}w{n}" for m, n in itertools.combinations(idx, 2)
            if geo.wedge_after_lift(FormTensor.basis(calc.ring, (m, n))) != FormTensor.basis(calc.ring, (m, n))])),
    ]
    return checks


def _s7_classical_checks() -> List[Check]:
    calc = sphere_calculus(3)
    cl, _ = geometries(3)
    checks = _calculus_checks(calc, -6)
    checks += _geometry_checks(cl, -3, -21)
    checks.append(("curvature matches closed form", lambda: failures(
        [f"R(w{i})" for i in calc.indices if cl.curvature(i) != cl.curvature_closed_form(i)])))
    checks.append(("sum_i d_i c^i_nk = 0", lambda: _divergence(calc)))
    return checks


def _divergence(calc: SphereCalculus) -> Outcome:
    bad = []
    for n_, k in itertools.product(calc.indices, repeat=2):
        s = calc.ring.zero()
        for i in calc.indices:
            s = s + calc.invariant_derivative(i, calc.c(i, n_, k))
        if s:
            bad.append(f"({n_},{k})")
    return failures(bad)


def _bullet_checks(n: int, max_total: int) -> List[Check]:
    """Altercommutativity and phi-associativity of the twisted coordinate algebra."""
    F = make_octonion_cochain(n)
    ring = graded.sphere_ring(n)
    mono = ring.monomial

    def altercommutative():
        bad = [f"{a},{b}" for a, b in graded.monomial_pairs(ring, max_total)
               if graded.commutator_defect(F, mono(a), mono(b))]
        return failures(bad)

    def phi_associative():
        bad = [str(t) for t in graded.monomial_triples(ring, max_total, 0)
               if graded.associator_bullet(F, *(mono(m) for m in t))]
        return failures(bad)

    def relation():
        b = lambda p, q: graded.bullet_mul(F, p, q)
        x = ring.gens()
        lhs = b(x[0], x[0])
        for xi in x[1:]:
            lhs = lhs - b(xi, xi)
        return compare(lhs, ring.one())

    return [
        (f"altercommutativity on monomial pairs of degree <= {max_total}", altercommutative),
        (f"phi-associativity on monomial triples of degree <= {max_total}", phi_associative),
        ("1 = x0.x0 - sum_i xi.xi", relation),
    ]


def _s7_twisted_checks() -> List[Check]:
    calc = sphere_calculus(3)
    cl, tw = geometries(3)
    ctx = tw.ctx
    idx = calc.indices
    F = ctx.F
    ring = calc.ring

    def oracle():
        bad = []
        for a, b in graded.monomial_pairs(ring, 3):
            p, q = ring.monomial(a), ring.monomial(b)
            if graded.bullet_mul(F, p, q) != graded.bullet_mul_stepwise(F, p, q):
                bad.append(f"{ring.format_monomial(a)} . {ring.format_monomial(b)}")
        return failures(bad)

    def torsion_unchanged():
        return failures([f"w{i}" for i in idx if tw.torsion(calc.coframe(i)) != cl.torsion(calc.coframe(i))])

    def connection_display():
        bad = []
        for i, j, k in itertools.product(idx, repeat=3):
            if tw.nabla_coframe(i).coefficient((j,), (k,)) != calc.c(i, j, k).scale(calc.f[i, k]):
                bad.append(f"({i},{j},{k})")
        return failures(bad)

    def twisted_metric():
        expect = FormTensor(ring)
        for i in idx:
            expect.add_term(((i,), (i,)), ring.const(-1))
        return compare(tw.metric_tensor(), expect)

    def lift_display():
        bad = []
        for i, j in itertools.permutations(idx, 2):
            zeta = tw.ctx.wedge_F(calc.coframe(i), calc.coframe(j))
            expect = FormTensor(ring)
            expect.add_term(((i,), (j,)), ring.const(Fraction(1, 2)))
            expect.add_term(((j,), (i,)), ring.const(Fraction(1, 2)))
            if tw.lift(zeta) != expect:
                bad.append(f"({i},{j})")
        return failures(bad)

    checks = _bullet_checks(3, 3)
    checks.append(("bullet agrees with stepwise oracle on pairs of degree <= 3", oracle))
    checks += _geometry_checks(tw, -3, -21)
    checks += [
        ("twisted torsion equals classical torsion", torsion_unchanged),
        ("twisted connection coefficients F(i,k) c^i_jk", connection_display),
        ("g^F = -sum w^i (x) w^i", twisted_metric),
        ("i^F(w^i ^F w^j) = (w^i(x)w^j + w^j(x)w^i)/2", lift_display),
        ("Ricci scalar unchanged by twist", lambda: compare(tw.ricci_scalar(), cl.ricci_scalar())),
        ("naturality: nabla^F c = c nabla", lambda: failures(
            [f"w{i}" for i in idx if tw.nabla(calc.coframe(i)) != ctx.twist_tensor(cl.nabla(calc.coframe(i)))]
            + [s for s in _sample_nabla_naturality(calc, cl, tw)])),
        ("naturality: R^F = c R", lambda: failures(
            [f"w{i}" for i in idx if tw.curvature(i) != ctx.twist_tensor(cl.curvature(i))])),
        ("naturality: i^F = c i", lambda: failures(
            [f"w{m}w{n}" for m, n in itertools.combinations(idx, 2)
             if tw.lift(FormTensor.basis(ring, (m, n), coeff=calc.x(m))) != ctx.twist_tensor(cl.lift(FormTensor.basis(ring, (m, n), coeff=calc.x(m))))])),
        ("naturality: Ricci^F(g^F) = c Ricci(g)", lambda: compare(tw.ricci(), ctx.twist_tensor(cl.ricci()))),
        ("naturality: nabla^F g^F = c nabla g", lambda: compare(tw.nabla_metric(), ctx.twist_tensor(cl.nabla_metric(), RIGHT3))),
    ]
    return checks


def _sample_nabla_naturality(calc, cl, tw) -> List[str]:
    """Coefficient-carrying 1-forms ``x_a x_b w^i`` exercise the twisted Leibniz rule."""
    bad = []
    ctx = tw.ctx
    for a, b, i in itertools.product(range(calc.m), range(calc.m), calc.indices):
        if (a + b + i) % 5:
            continue
        v = FormTensor.basis(calc.ring, (i,), coeff=calc.x(a) * calc.x(b))
        if tw.nabla(v) != ctx.twist_tensor(cl.nabla(v)):
            bad.append(f"x{a}x{b}w{i}")
    return bad


def _s3_checks() -> List[Check]:
    F = make_octonion_cochain(2)
    ring = graded.sphere_ring(2)
    x = ring.gens()
    b = lambda p, q: graded.bullet_mul(F, p, q)
    calc = sphere_calculus(2)
    cl, tw = geometries(2)

    def anticommutators():
        bad = []
        for i, j in ((1, 2), (2, 3), (3, 1)):
            s = b(x[i], x[j]) + b(x[j], x[i])
            if s:
                bad.append(f"{{x{i},x{j}}} = {s}")
        return failures(bad)

    def relation():
        lhs = b(x[0], x[0])
        for xi in x[1:]:
            lhs = lhs - b(xi, xi)
        return compare(lhs, ring.one())

    def associative():
        bad = [str(t) for t in graded.monomial_triples(ring, 4, 0)
               if graded.plain_associator(F, *(ring.monomial(m) for m in t))]
        return failures(bad)

    checks: List[Check] = [
        ("quaternionic anticommutators {xi,xj} = 0", anticommutators),
        ("1 = x0.x0 - x1.x1 - x2.x2 - x3.x3", relation),
        ("k(S3)_F associative on monomial triples of degree <= 4", associative),
        ("twisted Ricci^F = -1 g^F", lambda: _einstein(tw, -1)),
    ]
    checks += _calculus_checks(calc, -2)
    checks += _geometry_checks(cl, -1, -3)
    return checks


def _s1_checks() -> List[Check]:
    F = make_octonion_cochain(1)
    ring = graded.sphere_ring(1)
    calc = sphere_calculus(1)
    cl, tw = geometries(1)
    x = ring.gens()

    def commutative():
        return failures([f"{p},{q}" for p, q in graded.monomial_pairs(ring, 6)
                         if graded.bullet_mul(F, ring.monomial(p), ring.monomial(q)) != graded.bullet_mul(F, ring.monomial(q), ring.monomial(p))])

    def associative():
        return failures([str(t) for t in graded.monomial_triples(ring, 6, 0)
                         if graded.plain_associator(F, *(ring.monomial(m) for m in t))])

    return [
        ("commutative on monomial pairs of degree <= 6", commutative),
        ("associative on monomial triples of degree <= 6", associative),
        ("relation 1 = x0.x0 - x1.x1", lambda: compare(graded.bullet_mul(F, x[0], x[0]) - graded.bullet_mul(F, x[1], x[1]), ring.one())),
        ("structure functions vanish (flat circle)", lambda: failures([str(k) for k, v in calc.structure_functions().items() if v])),
        ("Ricci = 0", lambda: is_zero(cl.ricci())),
        ("twisted Ricci = 0", lambda: is_zero(tw.ricci())),
    ]


# -- Podles ------------------------------------------------------------

def _podles_checks() -> List[Check]:
    ring = podles.podles_ring()
    xp, xm, x3 = ring.gens()
    generic = podles.SeriesCochain()
    c1, c2 = podles.Scalar.param("c1"), podles.Scalar.param("c2")
    b = lambda p, q: podles.bullet_podles(generic, p, q)
    r2 = podles.R2

    def relations_ok():
        return failures([f"{c.name}: {c.residual}" for c in podles.verify_podles_relations() if not c.holds])

    def generic_fails():
        *first, third = podles.verify_podles_relations(generic)
        bad = [c.name for c in first if not c.holds]
        if third.holds:
            bad.append("identity (iii) holds for generic c2")
        return failures(bad)

    def witness():
        w = podles.associator_scan(None, 3)
        return Outcome(w is not None, None if w else "no nonzero associator up to degree 3")

    def trivial_associative():
        w = podles.associator_scan(podles.SeriesCochain(trivial=True), 4)
        return Outcome(w is None, json.dumps(w, sort_keys=True) if w else None)

    def sl2_relations():
        fails = podles.sl2_relation_failures(5)
        return failures([f"{k}: {v[:3]}" for k, v in fails.items() if v])

    def h_is_killing_field():
        return compare(tuple(map(str, podles.sl2().tables["h"])), tuple(map(str, podles.killing_field_h())), residual=lambda a, b: f"{a} vs {b}")

    def annihilates_relation():
        rel = podles.relation_polynomial()
        return failures([g for g in "hxy" if podles.sl2().apply(g, rel)])

    sc = lambda s: ring.const(s)
    return [
        ("sl2 commutators on monomials of degree <= 5", sl2_relations),
        ("h = [x,y] equals 2i xi_3", h_is_killing_field),
        ("action annihilates the sphere relation", annihilates_relation),
        ("truncation: x^n, y^n vanish for n > 2d (degree <= 4)", lambda: failures(podles.truncation_failures(4))),
        ("x3.x3 = x3^2 + c1 xp xm", lambda: compare(b(x3, x3), x3 * x3 + (xp * xm).scale(c1))),
        ("xp.xp = xp^2", lambda: compare(b(xp, xp), xp * xp)),
        ("xp.xm = xp xm", lambda: compare(b(xp, xm), xp * xm)),
        ("xm.xp = xm xp + 4c1 x3^2 + 4c2 xp xm", lambda: compare(b(xm, xp), xm * xp + (x3 * x3).scale(4 * c1) + (xp * xm).scale(4 * c2))),
        ("x3.xp = (1-2c1) xp x3", lambda: compare(b(x3, xp), (xp * x3).scale(1 - 2 * c1))),
        ("Podles identities (i)-(iii) with c2 = c1^2", relations_ok),
        ("(iii) fails for generic c2, (i)-(ii) hold", generic_fails),
        ("nonassociativity witness at degree <= 3", witness),
        ("trivial cochain is associative (degree <= 4)", trivial_associative),
        ("counitality: p.1 = p = 1.p", lambda: failures([
            str(p) for p in (xp, xm, x3, xp * x3, sc(r2)) if b(p, ring.one()) != p or b(ring.one(), p) != p])),
    ]


_BUILDERS: Dict[str, Tuple[Callable[[], List[Check]], Callable[[], object]]] = {
    "cochains": (_cochain_checks, lambda: make_octonion_cochain(3)),
    "octonions": (_octonion_checks, lambda: make_octonion_cochain(3)),
    "s7-classical": (_s7_classical_checks, lambda: make_octonion_cochain(3)),
    "s7-twisted": (_s7_twisted_checks, lambda: make_octonion_cochain(3)),
    "s3": (_s3_checks, lambda: make_octonion_cochain(2)),
    "s1": (_s1_checks, lambda: make_octonion_cochain(1)),
    "podles": (_podles_checks, None),
}


def run_suite(name: str) -> SuiteReport:
    if name not in _BUILDERS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    build, cochain = _BUILDERS[name]
    fp = fingerprint_for(cochain()) if cochain else {"bit_order": BIT_ORDER, "cochain": "series f(x (x) y)"}
    return run_checks(name, fp, build())
