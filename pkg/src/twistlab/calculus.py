"""Parallelized differential calculus on the spheres ``S^(2^n - 1)``.

The cotangent module is modelled as the free module on the coframe
``w^1 .. w^(m-1)`` (``m = 2^n``), with

    w^i  = sum_a F(a, i) x_a dx_{a+i}
    d_i  = -sum_a F(a, i) x_{a+i} d/dx_a
    df   = sum_i (d_i f) w^i
    dw^i = -sum_{j,k} c^i_{jk} w^j w^k

where ``F`` is the sign cochain of the normed division algebra of dimension
``m`` (octonions for ``S^7``).  The coordinate differentials ``dx_a`` are
derived, not basis elements.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, Optional, Tuple

from .cochain import BIT_ORDER, Cochain2, coboundary, make_octonion_cochain
from .forms import FormTensor, sort_leg, wedge
from .graded import sphere_ring
from .poly import Poly

log = logging.getLogger(__name__)

StructureTable = Dict[Tuple[int, int, int], Poly]

CACHE_ENV = "TWISTLAB_CACHE"


class DxForm:
    """1-form written on the coordinate differentials: ``b -> coefficient of dx_b``."""

    def __init__(self, ring, coeffs: Optional[Dict[int, Poly]] = None):
        self.ring = ring
        self.coeffs = {b: c for b, c in (coeffs or {}).items() if c}

    def __add__(self, other: DxForm) -> DxForm:
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            out[b] = out[b] + c if b in out else c
        return DxForm(self.ring, out)

    def lmul(self, f: Poly) -> DxForm:
        return DxForm(self.ring, {b: f * c for b, c in self.coeffs.items()})

    def scale(self, s) -> DxForm:
        return DxForm(self.ring, {b: c.scale(s) for b, c in self.coeffs.items()})

    def components(self) -> Dict[int, DxForm]:
        out: Dict[int, DxForm] = {}
        for b, c in self.coeffs.items():
            for d, part in c.components().items():
                out.setdefault(d ^ b, DxForm(self.ring)).coeffs[b] = part
        return out

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, DxForm) and self.coeffs == other.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c}) dx{b}" for b, c in sorted(self.coeffs.items()))


class SphereCalculus:
    """Coframe calculus on the unit sphere in ``k^(2^n)``."""

    def __init__(self, n: int = 3, cochain: Optional[Cochain2] = None):
        self.n = n
        self.m = 1 << n
        self.F = cochain or make_octonion_cochain(n)
        if self.F.n != n:
            raise ValueError("cochain rank does not match sphere")
        self.ring = sphere_ring(n)
        self.indices = tuple(range(1, self.m))
        self.f = self.F.numeric
        phi = coboundary(self.F)
        self.phi = {k: v.to_rational() for k, v in phi.values.items()}
        self._c: Optional[StructureTable] = None

    # -- coordinates ---------------------------------------------------
    def x(self, a: int) -> Poly:
        return self.ring.var(a)

    def invariant_derivative(self, i: int, f: Poly) -> Poly:
        """``d_i f = -sum_a F(a, i) x_{a+i} df/dx_a``."""
        self._check_index(i)
        out = self.ring.zero()
        for a in range(self.m):
            da = f.diff(a)
            if da:
                out = out - (self.x(a ^ i) * da).scale(self.f[a, i])
        return out

    def maurer_cartan_form(self, i: int) -> DxForm:
        """``w^i`` on the ``dx`` basis; ``i = 0`` gives ``sum_a x_a dx_a``."""
        if not 0 <= i < self.m:
            raise ValueError(f"coframe index {i} out of range")
        return DxForm(self.ring, {a ^ i: self.x(a).scale(self.f[a, i]) for a in range(self.m)})

    def coframe(self, i: int) -> FormTensor:
        self._check_index(i)
        return FormTensor.basis(self.ring, (i,))

    def dx_on_coframe(self, b: int) -> FormTensor:
        """``dx_b = sum_i (d_i x_b) w^i = -sum_i F(b, i) x_{b+i} w^i``."""
        return self.exterior_d(FormTensor.function(self.x(b)))

    def dx_to_coframe(self, form: DxForm) -> FormTensor:
        out = FormTensor(self.ring)
        for b, c in form.coeffs.items():
            out = out + self.dx_on_coframe(b).lmul(c)
        return out

    def coframe_to_dx(self, t: FormTensor) -> DxForm:
        """Re-express a 1-form on the ``dx`` basis."""
        out = DxForm(self.ring)
        for (leg,), c in t.terms.items():
            if len(leg) != 1:
                raise ValueError("coframe_to_dx expects a 1-form")
            out = out + self.maurer_cartan_form(leg[0]).lmul(c)
        return out

    def omega0_on_coframe(self) -> FormTensor:
        """``w^0 = sum_a x_a dx_a`` expanded on the coframe; zero on the sphere."""
        return self.dx_to_coframe(self.maurer_cartan_form(0))

    def dx_roundtrip(self, b: int) -> DxForm:
        """``dx_b`` sent to the coframe and back, with the ``x_b w^0`` ambiguity restored."""
        back = self.coframe_to_dx(self.dx_on_coframe(b))
        return back + self.maurer_cartan_form(0).lmul(self.x(b))

    # -- structure functions --------------------------------------------
    def structure_functions(self) -> StructureTable:
        if self._c is None:
            self._c = load_or_compute_structure(self)
        return self._c

    def compute_structure_functions(self) -> StructureTable:
        """``c^i_{jk} = -F(i,j) F(i+j,k) sum_a phi(a,i,j) phi(a,i+j,k) F(a,i+j+k) x_a x_{a+i+j+k}``."""
        f, phi = self.f, self.phi
        table: StructureTable = {}
        for i, j, k in itertools.product(self.indices, repeat=3):
            s = i ^ j ^ k
            raw: Dict[Tuple[int, ...], Fraction] = {}
            for a in range(self.m):
                e = [0] * self.m
                e[a] += 1
                e[a ^ s] += 1
                e = tuple(e)
                raw[e] = raw.get(e, 0) + phi[a, i, j] * phi[a, i ^ j, k] * f[a, s]
            pref = -f[i, j] * f[i ^ j, k]
            table[i, j, k] = self.ring.from_dict(raw).scale(pref)
        return table

    def c(self, i: int, j: int, k: int) -> Poly:
        return self.structure_functions()[i, j, k]

    def killing(self, i: int, j: int) -> Poly:
        """``c^m_{in} c^n_{jm}`` summed over ``m, n``."""
        out = self.ring.zero()
        for m_, n_ in itertools.product(self.indices, repeat=2):
            out = out + self.c(m_, i, n_) * self.c(n_, j, m_)
        return out

    # -- exterior algebra -----------------------------------------------
    def d_coframe(self, i: int) -> FormTensor:
        """``dw^i = -sum_{j,k} c^i_{jk} w^j w^k``."""
        out = FormTensor(self.ring)
        for j, k in itertools.product(self.indices, repeat=2):
            sign, leg = sort_leg((j, k))
            if sign:
                out.add_term((leg,), self.c(i, j, k).scale(-sign))
        return out

    def exterior_d(self, t: FormTensor) -> FormTensor:
        """``d`` on functions and 1-forms (single-leg tensors)."""
        out = FormTensor(self.ring)
        for legs, coeff in t.terms.items():
            if len(legs) != 1:
                raise ValueError("exterior_d acts on single-leg forms")
            (leg,) = legs
            if len(leg) >= 2:
                raise ValueError("exterior_d on 2-forms needs 3-forms, outside the modelled range")
            for i in self.indices:
                di = self.invariant_derivative(i, coeff)
                if di:
                    sign, new = sort_leg((i,) + leg)
                    if sign:
                        out.add_term((new,), di.scale(sign))
            if leg:
                out = out + self.d_coframe(leg[0]).lmul(coeff)
        return out

    def d_of_dx(self, b: int) -> FormTensor:
        return self.exterior_d(self.dx_on_coframe(b))

    def d_omega_direct(self, i: int) -> FormTensor:
        """``dw^i = sum_a F(a, i) dx_a ^ dx_{a+i}`` with ``dx`` expanded on the coframe."""
        out = FormTensor(self.ring)
        for a in range(self.m):
            out = out + wedge(self.dx_on_coframe(a), self.dx_on_coframe(a ^ i)).scale(self.f[a, i])
        return out

    def wedge(self, s: FormTensor, t: FormTensor) -> FormTensor:
        return wedge(s, t)

    def sphere_relation(self) -> Poly:
        return sum((self.x(a) * self.x(a) for a in range(self.m)), self.ring.zero()) - 1

    def _check_index(self, i: int) -> None:
        if i not in self.indices:
            raise ValueError(f"coframe index {i} out of range 1..{self.m - 1}")


@lru_cache(maxsize=None)
def sphere_calculus(n: int = 3) -> SphereCalculus:
    """Shared octonion-family calculus (structure table computed once)."""
    return SphereCalculus(n)


# -- disk cache --------------------------------------------------------

def cache_dir() -> Optional[Path]:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root)


def structure_fingerprint(calc: SphereCalculus) -> str:
    return f"{BIT_ORDER}-n{calc.n}-{calc.F.fingerprint()}"


def structure_to_json(calc: SphereCalculus, table: StructureTable) -> dict:
    entries = {}
    for (i, j, k), p in sorted(table.items()):
        entries[f"{i},{j},{k}"] = [[list(e), str(c)] for e, c in sorted(p.terms.items())]
    return {"fingerprint": structure_fingerprint(calc), "n": calc.n, "entries": entries}


def structure_from_json(calc: SphereCalculus, blob: dict) -> StructureTable:
    if blob.get("fingerprint") != structure_fingerprint(calc):
        raise ValueError("fingerprint mismatch")
    table: StructureTable = {}
    for key, terms in blob["entries"].items():
        i, j, k = (int(s) for s in key.split(","))
        table[i, j, k] = calc.ring.from_dict({tuple(e): Fraction(c) for e, c in terms})
    if set(table) != set(itertools.product(calc.indices, repeat=3)):
        raise ValueError("incomplete table")
    return table


def cache_path(calc: SphereCalculus) -> Optional[Path]:
    root = cache_dir()
    if root is None:
        return None
    return root / f"structure-{structure_fingerprint(calc)}.json"


def load_or_compute_structure(calc: SphereCalculus) -> StructureTable:
    path = cache_path(calc)
    if path is not None and path.exists():
        try:
            return structure_from_json(calc, json.loads(path.read_text()))
        except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
            log.warning("discarding unreadable structure cache %s: %s", path, exc)
    table = calc.compute_structure_functions()
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(structure_to_json(calc, table), sort_keys=True))
    return table
