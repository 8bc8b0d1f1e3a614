"""Ideals and submodules of graded free modules, and their arithmetic."""

from __future__ import annotations

import threading
from functools import reduce as _fold

from .errors import NotHomogeneousError, RingMismatchError, ZeroDivisorInputError
from .groebner import (
    EliminationOrder,
    GroebnerBasis,
    TopOrder,
    buchberger_raw,
    syzygy_vectors,
)
from .ring import (
    FreeModuleElement,
    GradedFreeModule,
    Polynomial,
    PolynomialRing,
    monomials_of_degree,
    poly_to_vec,
    vec_mul_poly,
)


def _check_homogeneous(vec, shifts):
    if vec and len({sum(e) + shifts[c] for (c, e) in vec}) != 1:
        raise NotHomogeneousError("generators must be homogeneous")


class SubmoduleHandle:
    """A graded submodule of a free module, given by homogeneous generators.

    The reduced Groebner basis (term-over-position grevlex) is computed lazily
    and at most once; equality of submodules is equality of these bases.
    """

    def __init__(self, ambient: GradedFreeModule, gens=(), check=True):
        self.ambient = ambient
        vecs = []
        for g in gens:
            if isinstance(g, FreeModuleElement):
                if g.module != ambient:
                    raise RingMismatchError("generator in a different free module")
                v = g.terms
            elif isinstance(g, Polynomial):
                if ambient.rank != 1 or g.ring != ambient.ring:
                    raise RingMismatchError("polynomial generator for a non-ideal")
                v = poly_to_vec(g)
            else:
                v = g
            if v:
                if check:
                    _check_homogeneous(v, ambient.shifts)
                vecs.append(v)
        self.vecs = vecs
        self._gb = None
        self._lock = threading.Lock()

    # basic properties
    @property
    def ring(self) -> PolynomialRing:
        return self.ambient.ring

    @property
    def field(self):
        return self.ambient.ring.field

    def _like(self, vecs):
        return type(self)._from_vecs(self.ambient, vecs)

    @classmethod
    def _from_vecs(cls, ambient, vecs):
        obj = cls.__new__(cls)
        SubmoduleHandle.__init__(obj, ambient, vecs, check=False)
        return obj

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    order = TopOrder(self.ambient.shifts)
                    self._gb = GroebnerBasis(
                        self.ambient, buchberger_raw(self.vecs, order, self.field), order
                    )
        return self._gb

    @property
    def generators(self):
        return [FreeModuleElement(self.ambient, v) for v in self.vecs]

    def generator_degrees(self):
        sh = self.ambient.shifts
        return [sum(e) + sh[c] for v in self.vecs for (c, e) in [next(iter(v))]]

    def is_zero(self) -> bool:
        return not self.gb.vecs

    def is_whole(self) -> bool:
        zero = self.ring.zero_exps()
        leads = set(self.gb.leading_terms())
        return all((j, zero) in leads for j in range(self.ambient.rank))

    def contains(self, x) -> bool:
        if isinstance(x, SubmoduleHandle):
            return all(self.contains(v) for v in x.vecs)
        if isinstance(x, FreeModuleElement):
            x = x.terms
        elif isinstance(x, Polynomial):
            x = poly_to_vec(x)
        return not self.gb.reducers.reduce(x)

    def __contains__(self, x):
        return self.contains(x)

    def issubset(self, other) -> bool:
        self._same_ambient(other)
        return other.contains(self)

    def reduce(self, x):
        if isinstance(x, FreeModuleElement):
            return FreeModuleElement(self.ambient, self.gb.reducers.reduce(x.terms))
        if isinstance(x, Polynomial):
            rem = self.gb.reducers.reduce(poly_to_vec(x))
            return Polynomial(self.ring, {e: c for (_, e), c in rem.items()})
        return self.gb.reducers.reduce(x)

    def canonical(self):
        return self.gb.canonical()

    def __eq__(self, other):
        if not isinstance(other, SubmoduleHandle):
            return NotImplemented
        return self.ambient == other.ambient and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.ambient, self.canonical()))

    def _same_ambient(self, other):
        if self.ambient != other.ambient:
            raise RingMismatchError(f"{self.ambient} vs {other.ambient}")

    # arithmetic
    def __add__(self, other):
        self._same_ambient(other)
        return self._like(self.vecs + other.vecs)

    def scaled(self, ideal: IdealHandle):
        """The submodule I*M."""
        if ideal.ring != self.ring:
            raise RingMismatchError("ideal and module over different rings")
        mod = self.field.modulus
        out = []
        for f in ideal.vecs:
            poly = {e: c for (_, e), c in f.items()}
            for v in self.vecs:
                out.append(vec_mul_poly(v, poly, mod))
        return self._like(out)

    def minimal_generators(self):
        """A minimal homogeneous generating set (raw vectors), lowest degrees first."""
        sh = self.ambient.shifts
        kept = []
        gb = None
        order = TopOrder(sh)
        for v in sorted(self.gb.vecs, key=lambda v: min(sum(e) + sh[c] for (c, e) in v)):
            if gb is not None and not gb.reducers.reduce(v):
                continue
            kept.append(v)
            gb = GroebnerBasis(self.ambient, buchberger_raw(kept, order, self.field), order)
        return kept

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.display_generators()) + ">"

    def display_generators(self):
        return [FreeModuleElement(self.ambient, v) for v in self.gb.vecs]

    def __repr__(self):
        return f"{type(self).__name__}{self}"


class IdealHandle(SubmoduleHandle):
    """A homogeneous ideal of a polynomial ring."""

    def __init__(self, ring: PolynomialRing, gens=()):
        gens = [ring(g) if isinstance(g, (str, int)) else g for g in gens]
        super().__init__(GradedFreeModule(ring, (0,)), gens)

    @classmethod
    def _from_vecs(cls, ambient, vecs):
        obj = cls.__new__(cls)
        SubmoduleHandle.__init__(obj, ambient, vecs, check=False)
        return obj

    @property
    def polynomials(self):
        return [Polynomial(self.ring, {e: c for (_, e), c in v.items()}) for v in self.vecs]

    def display_generators(self):
        return [Polynomial(self.ring, {e: c for (_, e), c in v.items()}) for v in self.gb.vecs]

    def groebner_polynomials(self):
        return self.display_generators()

    def __mul__(self, other):
        return combine("product", self, other)

    def is_unit(self) -> bool:
        return self.is_whole()

    def contains_power_of_maximal(self, t: int) -> bool:
        """True iff every degree-t monomial lies in the ideal."""
        red = self.gb.reducers
        one = self.field.one
        return all(not red.reduce({(0, e): one}) for e in monomials_of_degree(self.ring.nvars, t))


def maximal_ideal(ring) -> IdealHandle:
    return IdealHandle(ring, ring.gens())


def unit_ideal(ring) -> IdealHandle:
    return IdealHandle(ring, [ring(1)])


def zero_ideal(ring) -> IdealHandle:
    return IdealHandle(ring, [])


def whole_module(ambient) -> SubmoduleHandle:
    return SubmoduleHandle(ambient, [ambient.basis(j) for j in range(ambient.rank)])


def combine(kind: str, a: IdealHandle, b: IdealHandle) -> IdealHandle:
    """Sum (concatenated generators) or product (pairwise products) of ideals."""
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    if kind == "sum":
        return a + b
    if kind == "product":
        return b.scaled(a)
    raise ValueError(f"unknown combination {kind!r}")


def intersect(a: SubmoduleHandle, b: SubmoduleHandle) -> SubmoduleHandle:
    """A ∩ B as the t-free part of t*A + (1-t)*B under a block order eliminating t."""
    a._same_ambient(b)
    if not a.vecs or not b.vecs:
        return a._like([])
    field = a.field
    mod = field.modulus
    gens = []
    for v in a.vecs:
        gens.append({(c, e + (1,)): x for (c, e), x in v.items()})
    for v in b.vecs:
        w = {}
        for (c, e), x in v.items():
            w[(c, e + (0,))] = x
            w[(c, e + (1,))] = (-x) % mod if mod else -x
        gens.append(w)
    order = EliminationOrder(TopOrder(a.ambient.shifts), 1)
    gb = buchberger_raw(gens, order, field, rank_one=a.ambient.rank == 1)
    out = []
    for g in gb:
        if all(e[-1] == 0 for (_, e) in g):
            out.append({(c, e[:-1]): x for (c, e), x in g.items()})
    return a._like(out)


def intersect_all(items):
    return _fold(intersect, items)


def colon_element(a: SubmoduleHandle, b) -> SubmoduleHandle:
    """(A : b) = {v : b v ∈ A} via syzygies of (gens of A, b e_1, ..., b e_l)."""
    if isinstance(b, IdealHandle):
        raise TypeError("use colon() for ideals")
    if isinstance(b, dict):
        b = Polynomial(a.ring, {e: c for (_, e), c in b.items()})
    if b.ring != a.ring:
        raise RingMismatchError("colon by a polynomial of another ring")
    if b.is_zero():
        raise ZeroDivisorInputError("colon by zero")
    if not b.is_homogeneous():
        raise NotHomogeneousError("colon by a non-homogeneous element")
    amb = a.ambient
    l = amb.rank
    s = len(a.vecs)
    mod = a.field.modulus
    gens = list(a.vecs)
    for k in range(l):
        gens.append(vec_mul_poly({(k, a.ring.zero_exps()): a.field.one}, b.terms, mod))
    syz, _ = syzygy_vectors(gens, amb)
    out = []
    for z in syz:
        v = {(c - s, e): x for (c, e), x in z.items() if c >= s}
        if v:
            out.append(v)
    return a._like(out)


def colon(a: SubmoduleHandle, b: IdealHandle) -> SubmoduleHandle:
    """(A : B) as the intersection of (A : g) over the generators g of B."""
    if b.ring != a.ring:
        raise RingMismatchError("colon by an ideal of another ring")
    polys = [p for p in b.polynomials if not p.is_zero()]
    if not polys:
        raise ZeroDivisorInputError("colon by the zero ideal")
    return intersect_all([colon_element(a, p) for p in polys])


def annihilator(a: SubmoduleHandle, f) -> IdealHandle:
    """The ideal {g : g f ∈ A} for an element f of the ambient free module."""
    if isinstance(f, FreeModuleElement):
        f = f.terms
    elif isinstance(f, Polynomial):
        f = poly_to_vec(f)
    ring = a.ring
    if not f:
        return unit_ideal(ring)
    s = len(a.vecs)
    syz, _ = syzygy_vectors(list(a.vecs) + [f], a.ambient)
    gens = []
    for z in syz:
        g = {(0, e): x for (c, e), x in z.items() if c == s}
        if g:
            gens.append(g)
    return IdealHandle._from_vecs(GradedFreeModule(ring, (0,)), gens)


def saturate(a: SubmoduleHandle, b: IdealHandle, max_steps: int = 1000) -> SubmoduleHandle:
    """(A : B^∞), iterating colons until the Groebner basis stabilizes."""
    current = a
    for _ in range(max_steps):
        nxt = colon(current, b)
        if nxt == current:
            return current
        current = nxt
    raise RuntimeError("saturation did not stabilize")  # pragma: no cover
